#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "grouplat/inverse_graph.hpp"
#include "grouplat/words.hpp"

namespace grouplat {

using State = std::uint32_t;

/// Deterministic automaton over X ∪ X⁻¹ describing a rational subset of the
/// free group. Every element of the subset must have its reduced spelling
/// accepted. Acceptors derived from folded graphs are closed under free
/// reduction; user-supplied acceptors must accept only reduced words
/// (checked by validate()).
class ReducedAcceptor {
 public:
  static constexpr State kNone = 0xffffffffu;

  ReducedAcceptor(AlphabetPtr alphabet, std::size_t states, State initial);

  void set_accepting(State s, bool accepting = true);
  /// Throws NondeterministicInput if (from, l) already leads elsewhere.
  void add_transition(State from, Letter l, State to);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return states_; }
  State initial() const noexcept { return initial_; }
  bool accepting(State s) const { return accepting_.at(s); }
  std::size_t letter_count() const noexcept { return 2 * alphabet_->rank(); }
  State target(State s, Letter l) const { return transitions_[s * letter_count() + l.code()]; }

  bool accepts(const Word& w) const;

  /// True for acceptors built from inverse graphs, whose language is closed
  /// under free reduction.
  bool reduction_closed() const noexcept { return reduction_closed_; }
  void mark_reduction_closed() noexcept { reduction_closed_ = true; }

  /// Throws NonReducedLanguage if the acceptor is not reduction-closed and
  /// some accepted word contains a factor x x⁻¹.
  void validate() const;

 private:
  AlphabetPtr alphabet_;
  std::size_t states_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<State> transitions_;
  bool reduction_closed_ = false;
};

ReducedAcceptor subgroup_to_acceptor(const FoldedGraph& h);
ReducedAcceptor coset_to_acceptor(const FoldedGraph& h, const Word& g);

/// Reachable part of A × B from (initial, initial), with breadth-first
/// spanning-tree words.
struct ProductComponent {
  struct Node {
    State left;
    State right;
    std::size_t parent;  // index into nodes; self for the root
    Letter via;          // letter on the tree edge from parent
    std::size_t depth;
  };
  std::vector<Node> nodes;

  /// Spanning-tree word from the root to node i.
  std::vector<Letter> tree_word(std::size_t i) const;
  std::optional<std::size_t> find(State left, State right) const;

  std::vector<std::size_t> index;  // left * right_states + right -> node or npos
  std::size_t right_states = 0;
};

ProductComponent build_product(const ReducedAcceptor& a, const ReducedAcceptor& b);

/// For each state, the length of a shortest path to an accepting state
/// (SIZE_MAX if none) and the first letter of the BFS-first such path.
struct CompletionTable {
  std::vector<std::size_t> distance;
  std::vector<Letter> next;

  std::vector<Letter> completion(const ReducedAcceptor& a, State from) const;
};
CompletionTable completion_table(const ReducedAcceptor& a);

struct PairDistance {
  Word left;
  Word right;
  std::size_t distance;
};

/// r ∈ L(A), s ∈ L(B) minimizing |r⁻¹s|.
PairDistance rational_distance(const ReducedAcceptor& a, const ReducedAcceptor& b);

/// h ∈ H, k ∈ K, (h, k) ≠ (ε, ε), minimizing |h⁻¹k|.
PairDistance subgroup_distance(const FoldedGraph& h, const FoldedGraph& k);

}  // namespace grouplat
