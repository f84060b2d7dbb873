#include "grouplat/inverse_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "grouplat/error.hpp"

namespace grouplat {

void LabeledGraph::add_edge(Vertex from, Letter label, Vertex to) {
  if (from >= vertex_count || to >= vertex_count) {
    throw std::out_of_range("edge endpoint out of range");
  }
  if (label.is_inverse()) {
    edges.push_back({to, from, static_cast<std::uint32_t>(label.generator())});
  } else {
    edges.push_back({from, to, static_cast<std::uint32_t>(label.generator())});
  }
}

Vertex LabeledGraph::attach_path(Vertex start, const Word& w) {
  Vertex cur = start;
  for (Letter l : w) {
    Vertex next = add_vertex();
    add_edge(cur, l, next);
    cur = next;
  }
  return cur;
}

Vertex FoldedGraph::trace(Vertex v, const Word& w) const {
  for (Letter l : w) {
    if (v == kNone) return kNone;
    v = target(v, l);
  }
  return v;
}

LabeledGraph FoldedGraph::to_labeled() const {
  LabeledGraph g(alphabet_);
  g.vertex_count = vertex_count_;
  g.base = 0;
  for (Vertex v = 0; v < vertex_count_; ++v) {
    for (std::size_t gen = 0; gen < alphabet_->rank(); ++gen) {
      Vertex t = target(v, Letter(gen, false));
      if (t != kNone) g.edges.push_back({v, t, static_cast<std::uint32_t>(gen)});
    }
  }
  return g;
}

std::string FoldedGraph::canonical_form() const {
  std::ostringstream out;
  out << "rank=" << alphabet_->rank() << ";n=" << vertex_count_ << ';';
  for (Vertex v = 0; v < vertex_count_; ++v) {
    for (std::size_t gen = 0; gen < alphabet_->rank(); ++gen) {
      Vertex t = target(v, Letter(gen, false));
      if (t != kNone) out << v << '-' << gen << '>' << t << ';';
    }
  }
  return out.str();
}

struct FoldAccess {
  static FoldedGraph make(AlphabetPtr alphabet, std::size_t n, std::vector<Vertex> transitions) {
    FoldedGraph g;
    g.alphabet_ = std::move(alphabet);
    g.vertex_count_ = n;
    g.transitions_ = std::move(transitions);
    std::size_t letters = g.letter_count();
    for (Vertex v = 0; v < n; ++v) {
      for (std::size_t x = 0; x < letters; x += 2) {
        if (g.transitions_[v * letters + x] != FoldedGraph::kNone) ++g.edge_count_;
      }
    }
    return g;
  }
};

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Returns (root, absorbed).
  std::pair<Vertex, Vertex> unite(Vertex a, Vertex b) {
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return {a, b};
  }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
};

class Folder {
 public:
  Folder(std::size_t n, std::size_t letters)
      : letters_(letters), uf_(n), out_(n * letters, FoldedGraph::kNone) {}

  void link(Vertex u, Letter x, Vertex v) {
    set_or_merge(u, x.code(), v);
    set_or_merge(v, x.inverse().code(), u);
    drain();
  }

  Vertex find(Vertex v) { return uf_.find(v); }
  Vertex slot(Vertex rep, std::size_t x) const { return out_[rep * letters_ + x]; }

 private:
  void set_or_merge(Vertex u, std::size_t x, Vertex v) {
    u = uf_.find(u);
    Vertex& s = out_[u * letters_ + x];
    if (s == FoldedGraph::kNone) {
      s = v;
    } else if (uf_.find(s) != uf_.find(v)) {
      pending_.emplace_back(s, v);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = uf_.find(a);
      b = uf_.find(b);
      if (a == b) continue;
      auto [root, absorbed] = uf_.unite(a, b);
      for (std::size_t x = 0; x < letters_; ++x) {
        Vertex t = out_[absorbed * letters_ + x];
        if (t == FoldedGraph::kNone) continue;
        out_[absorbed * letters_ + x] = FoldedGraph::kNone;
        set_or_merge(root, x, t);
      }
    }
  }

  std::size_t letters_;
  UnionFind uf_;
  std::vector<Vertex> out_;
  std::vector<std::pair<Vertex, Vertex>> pending_;
};

}  // namespace

LabeledGraph wedge(std::span<const Word> generators, const AlphabetPtr& alphabet) {
  LabeledGraph g(alphabet);
  for (const Word& gen : generators) {
    if (gen.alphabet() != alphabet) {
      throw Error(ErrorKind::AlphabetMismatch, "generator over a different alphabet");
    }
    Word r = reduce(gen);
    if (r.empty()) continue;
    Vertex cur = g.base;
    for (std::size_t i = 0; i < r.size(); ++i) {
      Vertex next = (i + 1 == r.size()) ? g.base : g.add_vertex();
      g.add_edge(cur, r[i], next);
      cur = next;
    }
  }
  return g;
}

FoldResult fold_with_image(const LabeledGraph& g, std::span<const std::size_t> order) {
  const std::size_t letters = 2 * g.alphabet->rank();
  Folder folder(g.vertex_count, letters);
  auto insert = [&](const GraphEdge& e) {
    folder.link(e.from, Letter(e.generator, false), e.to);
  };
  if (order.empty()) {
    for (const GraphEdge& e : g.edges) insert(e);
  } else {
    if (order.size() != g.edges.size()) {
      throw Error(ErrorKind::InvalidArgument, "fold order must be a permutation of the edges");
    }
    for (std::size_t i : order) insert(g.edges.at(i));
  }

  // Canonical breadth-first renumbering from the base.
  std::vector<Vertex> number(g.vertex_count, FoldedGraph::kNone);
  std::vector<Vertex> queue;
  Vertex root = folder.find(g.base);
  number[root] = 0;
  queue.push_back(root);
  std::vector<Vertex> transitions;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex rep = queue[head];
    transitions.resize((head + 1) * letters, FoldedGraph::kNone);
    for (std::size_t x = 0; x < letters; ++x) {
      Vertex t = folder.slot(rep, x);
      if (t == FoldedGraph::kNone) continue;
      t = folder.find(t);
      if (number[t] == FoldedGraph::kNone) {
        number[t] = static_cast<Vertex>(queue.size());
        queue.push_back(t);
      }
      transitions[head * letters + x] = number[t];
    }
  }

  FoldResult result{FoldAccess::make(g.alphabet, queue.size(), std::move(transitions)), {}};
  result.image.resize(g.vertex_count);
  for (Vertex v = 0; v < g.vertex_count; ++v) result.image[v] = number[folder.find(v)];
  return result;
}

FoldedGraph fold(const LabeledGraph& g) { return fold_with_image(g).graph; }

FoldedGraph stallings_graph(std::span<const Word> generators, const AlphabetPtr& alphabet) {
  return fold(wedge(generators, alphabet));
}

bool contains(const FoldedGraph& h, const Word& w) {
  if (w.alphabet() != h.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "word and subgroup over different alphabets");
  }
  return h.trace(h.base(), reduce(w)) == h.base();
}

CosetGraph coset_graph(const FoldedGraph& h, const Word& g) {
  if (g.alphabet() != h.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "word and subgroup over different alphabets");
  }
  LabeledGraph labeled = h.to_labeled();
  Vertex terminus = labeled.attach_path(labeled.base, reduce(g));
  FoldResult folded = fold_with_image(labeled);
  return {std::move(folded.graph), folded.image[terminus]};
}

std::optional<Word> shortest_path_label(const FoldedGraph& g, Vertex from, Vertex to) {
  const std::size_t letters = g.letter_count();
  std::vector<Vertex> parent(g.vertex_count(), FoldedGraph::kNone);
  std::vector<std::uint32_t> via(g.vertex_count(), 0);
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<Vertex> queue{from};
  seen[from] = true;
  while (!queue.empty() && !seen[to]) {
    Vertex v = queue.front();
    queue.pop_front();
    for (std::uint32_t x = 0; x < letters; ++x) {
      Vertex t = g.target(v, Letter::from_code(x));
      if (t == FoldedGraph::kNone || seen[t]) continue;
      seen[t] = true;
      parent[t] = v;
      via[t] = x;
      queue.push_back(t);
    }
  }
  if (!seen[to]) return std::nullopt;
  std::vector<Letter> label;
  for (Vertex v = to; v != from; v = parent[v]) label.push_back(Letter::from_code(via[v]));
  std::reverse(label.begin(), label.end());
  Word w(g.alphabet(), std::move(label));
  if (!w.is_reduced()) {
    throw std::logic_error("breadth-first path label in a folded graph is not reduced");
  }
  return w;
}

Word shortest_coset_rep(const FoldedGraph& h, const Word& g) {
  CosetGraph coset = coset_graph(h, g);
  auto label = shortest_path_label(coset.graph, coset.graph.base(), coset.terminus);
  if (!label) throw std::logic_error("coset terminus unreachable from base");
  return *std::move(label);
}

ClosestResult closest_element(const FoldedGraph& h, const Word& g) {
  Word reduced = reduce(g);
  Word rep = shortest_coset_rep(h, reduced);
  std::size_t distance = rep.size();
  Word element = concat_reduce(reduced, invert(rep));
  return {std::move(element), distance};
}

std::optional<Word> shortest_reduced_loop(const FoldedGraph& g, Vertex v) {
  const std::size_t letters = g.letter_count();
  const std::size_t width = letters + 1;  // slot 0: no previous letter
  const std::size_t states = g.vertex_count() * width;
  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(states, kUnseen);
  std::deque<std::size_t> queue;
  std::size_t start = v * width;
  parent[start] = start;
  queue.push_back(start);

  auto rebuild = [&](std::size_t state, std::vector<Letter>& out) {
    while (state != start) {
      out.push_back(Letter::from_code(static_cast<std::uint32_t>(state % width - 1)));
      state = parent[state];
    }
    std::reverse(out.begin(), out.end());
  };

  while (!queue.empty()) {
    std::size_t state = queue.front();
    queue.pop_front();
    Vertex u = static_cast<Vertex>(state / width);
    std::size_t last = state % width;
    for (std::uint32_t x = 0; x < letters; ++x) {
      if (last != 0 && x == ((last - 1) ^ 1u)) continue;
      Vertex t = g.target(u, Letter::from_code(x));
      if (t == FoldedGraph::kNone) continue;
      if (t == v) {
        std::vector<Letter> label;
        rebuild(state, label);
        label.push_back(Letter::from_code(x));
        return Word(g.alphabet(), std::move(label));
      }
      std::size_t next = t * width + x + 1;
      if (parent[next] != kUnseen) continue;
      parent[next] = state;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::optional<Word> shortest_element(const FoldedGraph& h) {
  return shortest_reduced_loop(h, h.base());
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const LabeledGraph& g, const std::string& name) {
  std::vector<GraphEdge> edges = g.edges;
  std::sort(edges.begin(), edges.end());
  std::ostringstream out;
  out << "digraph \"" << dot_escape(name) << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.vertex_count; ++v) {
    out << "  " << v;
    if (v == g.base) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const GraphEdge& e : edges) {
    out << "  " << e.from << " -> " << e.to << " [label=\""
        << dot_escape(g.alphabet->name(e.generator)) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace grouplat
