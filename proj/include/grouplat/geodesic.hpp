#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "grouplat/inverse_graph.hpp"
#include "grouplat/slp.hpp"
#include "grouplat/words.hpp"

namespace grouplat {

/// Edge label μ: a letter code, or kEpsilon for the empty word.
using MuLabel = std::int32_t;
inline constexpr MuLabel kEpsilon = -1;

/// μ(e₁)μ(e₂) if it freely reduces to length ≤ 1.
std::optional<MuLabel> compose_mu(MuLabel a, MuLabel b) noexcept;
inline MuLabel invert_mu(MuLabel m) noexcept { return m == kEpsilon ? kEpsilon : (m ^ 1); }

struct BouquetEdge {
  Vertex origin;
  Vertex target;
  MuLabel mu;
  SlpRef nu;
  std::uint32_t inverse;  // index of the inverse edge (itself for ε-loops)
  /// For edges added by completion: the consecutive pair it bypasses.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> parents;
};

/// Multigraph with letter labels μ and factorization labels ν (SLP refs over
/// the alphabet h1..hm). Vertex 0 is the root.
class BouquetGraph {
 public:
  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const AlphabetPtr& factor_alphabet() const noexcept { return factor_alphabet_; }
  const std::vector<Word>& generators() const noexcept { return generators_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  const std::vector<BouquetEdge>& edges() const noexcept { return edges_; }
  const SlpArena& arena() const noexcept { return arena_; }
  std::size_t rank() const noexcept { return alphabet_->rank(); }

  /// Edges leaving v.
  const std::vector<std::uint32_t>& out(Vertex v) const { return out_[v]; }
  /// Edges leaving v with label μ.
  const std::vector<std::uint32_t>& out(Vertex v, MuLabel mu) const {
    return by_label_[v * label_slots() + static_cast<std::size_t>(mu + 1)];
  }
  bool has_edge(Vertex origin, Vertex target, MuLabel mu) const;

  std::size_t initial_edge_count() const noexcept { return initial_edges_; }
  std::size_t added_edge_count() const noexcept { return edges_.size() - initial_edges_; }
  bool is_completed() const noexcept { return completed_; }

 private:
  friend BouquetGraph bouquet(std::span<const Word> generators);
  friend BouquetGraph complete(const BouquetGraph& g);

  BouquetGraph() = default;
  std::size_t label_slots() const noexcept { return 2 * alphabet_->rank() + 1; }
  std::uint64_t key(Vertex o, Vertex t, MuLabel mu) const noexcept;
  std::uint32_t push_edge(Vertex o, Vertex t, MuLabel mu, SlpRef nu);
  void link_inverse(std::uint32_t a, std::uint32_t b);

  AlphabetPtr alphabet_;
  AlphabetPtr factor_alphabet_;
  std::vector<Word> generators_;
  std::size_t vertex_count_ = 0;
  std::vector<BouquetEdge> edges_;
  SlpArena arena_;
  std::vector<std::vector<std::uint32_t>> out_;
  std::vector<std::vector<std::uint32_t>> by_label_;
  std::unordered_set<std::uint64_t> keys_;
  std::size_t initial_edges_ = 0;
  bool completed_ = false;
};

/// Loops spelling each generator, merged at the root, with ε-loops at every
/// vertex. Throws TrivialGenerator if some generator reduces to ε.
BouquetGraph bouquet(std::span<const Word> generators);

/// Adds least-ν bypass edges until no potential bypass remains.
BouquetGraph complete(const BouquetGraph& g);

/// Word over h1..hm.
struct Factorization {
  AlphabetPtr alphabet;
  std::vector<Letter> symbols;

  std::size_t length() const noexcept { return symbols.size(); }
  std::string format() const { return format_word(Word(alphabet, symbols)); }
};

/// γ: substitutes the generator words and freely reduces.
Word evaluate(const Factorization& u, std::span<const Word> generators);
Word evaluate(std::span<const Letter> symbols, std::span<const Word> generators);

inline constexpr std::uint64_t kDefaultExpandBudget = 1'000'000;

/// Per-step record of the dynamic program, for inspection in tests.
struct GeodesicTrace {
  struct Slot {
    std::uint64_t kept;
    std::optional<std::uint64_t> best_discarded;
  };
  /// steps[j][v]: the surviving entry at vertex v after letter j, if any.
  std::vector<std::vector<std::optional<Slot>>> steps;
};

/// Minimal factorization length of w over the completed graph's generators.
/// Throws NotInSubgroup if w ∉ H.
std::uint64_t geodesic_length(const BouquetGraph& completed, const Word& w,
                              GeodesicTrace* trace = nullptr);

/// Shortest factorization of w. Throws NotInSubgroup if w ∉ H, and
/// BudgetExceeded (carrying the exact length) if it is longer than budget.
Factorization geodesic(const BouquetGraph& completed, const Word& w,
                       std::uint64_t budget = kDefaultExpandBudget,
                       GeodesicTrace* trace = nullptr);
Factorization geodesic(std::span<const Word> generators, const Word& w,
                       std::uint64_t budget = kDefaultExpandBudget);

std::string export_bouquet_dot(const BouquetGraph& g, const std::string& name = "G");

}  // namespace grouplat
