#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grouplat/words.hpp"

namespace grouplat {

using Vertex = std::uint32_t;

/// Edge stored in positive orientation: from --x--> to, with the inverse
/// edge to --x⁻¹--> from implied.
struct GraphEdge {
  Vertex from;
  Vertex to;
  std::uint32_t generator;

  auto operator<=>(const GraphEdge&) const = default;
};

/// Labeled multigraph closed under edge inversion, with a base vertex.
/// Not necessarily deterministic.
struct LabeledGraph {
  AlphabetPtr alphabet;
  std::size_t vertex_count = 1;
  std::vector<GraphEdge> edges;
  Vertex base = 0;

  explicit LabeledGraph(AlphabetPtr a) : alphabet(std::move(a)) {}

  Vertex add_vertex() { return static_cast<Vertex>(vertex_count++); }
  void add_edge(Vertex from, Letter label, Vertex to);

  /// Adds a path spelling w starting at `start`, through fresh vertices.
  /// Returns the terminal vertex (`start` itself if w is empty).
  Vertex attach_path(Vertex start, const Word& w);
};

/// Deterministic inverse automaton (Stallings graph). Vertices are numbered
/// canonically: breadth-first from the base, exploring letters in order, so
/// the base is always vertex 0.
class FoldedGraph {
 public:
  static constexpr Vertex kNone = 0xffffffffu;

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  /// Number of positive edges (each inverse pair counted once).
  std::size_t edge_count() const noexcept { return edge_count_; }
  Vertex base() const noexcept { return 0; }
  std::size_t letter_count() const noexcept { return 2 * alphabet_->rank(); }

  /// Target of the edge labeled l at v, or kNone.
  Vertex target(Vertex v, Letter l) const {
    return transitions_[v * letter_count() + l.code()];
  }

  /// Follows w from v; kNone if some letter has no edge.
  Vertex trace(Vertex v, const Word& w) const;

  bool is_trivial() const noexcept { return edge_count_ == 0; }

  LabeledGraph to_labeled() const;

  /// Byte string identifying the based labeled graph up to isomorphism.
  std::string canonical_form() const;

 private:
  friend struct FoldAccess;

  AlphabetPtr alphabet_;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<Vertex> transitions_;
};

struct FoldResult {
  FoldedGraph graph;
  /// image[v] = vertex of the folded graph that input vertex v maps to, or
  /// FoldedGraph::kNone if it is not connected to the base.
  std::vector<Vertex> image;
};

/// One loop at the base per nontrivial generator (generators are reduced
/// first; trivial ones are skipped).
LabeledGraph wedge(std::span<const Word> generators, const AlphabetPtr& alphabet);

/// Stallings folding via union-find. Edges are inserted in the order given
/// by `order` (indices into g.edges), or in storage order if empty.
FoldResult fold_with_image(const LabeledGraph& g, std::span<const std::size_t> order = {});
FoldedGraph fold(const LabeledGraph& g);

/// Folded Stallings graph of ⟨generators⟩.
FoldedGraph stallings_graph(std::span<const Word> generators, const AlphabetPtr& alphabet);

bool contains(const FoldedGraph& h, const Word& w);

/// Graph of the coset Hg: the folded graph with a g-path attached at the
/// base, together with the image of the path's terminus.
struct CosetGraph {
  FoldedGraph graph;
  Vertex terminus;
};
CosetGraph coset_graph(const FoldedGraph& h, const Word& g);

/// Shortest (then BFS-first) reduced label of a path between two vertices.
/// Returns nullopt if `to` is unreachable.
std::optional<Word> shortest_path_label(const FoldedGraph& g, Vertex from, Vertex to);

/// Shortest element of the coset Hg.
Word shortest_coset_rep(const FoldedGraph& h, const Word& g);

struct ClosestResult {
  Word element;
  std::size_t distance;
};

/// h ∈ H minimizing |h⁻¹g|.
ClosestResult closest_element(const FoldedGraph& h, const Word& g);

/// Shortest nontrivial element of H; nullopt iff H is trivial.
std::optional<Word> shortest_element(const FoldedGraph& h);

/// Shortest nonempty reduced label of a loop at `v`.
std::optional<Word> shortest_reduced_loop(const FoldedGraph& g, Vertex v);

std::string export_dot(const LabeledGraph& g, const std::string& name = "G");

}  // namespace grouplat
