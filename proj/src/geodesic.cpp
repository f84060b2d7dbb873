#include "grouplat/geodesic.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "grouplat/error.hpp"

namespace grouplat {

std::optional<MuLabel> compose_mu(MuLabel a, MuLabel b) noexcept {
  if (a == kEpsilon) return b;
  if (b == kEpsilon) return a;
  if (b == (a ^ 1)) return kEpsilon;
  return std::nullopt;
}

std::uint64_t BouquetGraph::key(Vertex o, Vertex t, MuLabel mu) const noexcept {
  return ((static_cast<std::uint64_t>(o) * vertex_count_) + t) * label_slots() +
         static_cast<std::uint64_t>(mu + 1);
}

bool BouquetGraph::has_edge(Vertex origin, Vertex target, MuLabel mu) const {
  return keys_.contains(key(origin, target, mu));
}

std::uint32_t BouquetGraph::push_edge(Vertex o, Vertex t, MuLabel mu, SlpRef nu) {
  auto id = static_cast<std::uint32_t>(edges_.size());
  edges_.push_back({o, t, mu, nu, id, std::nullopt});
  out_[o].push_back(id);
  by_label_[o * label_slots() + static_cast<std::size_t>(mu + 1)].push_back(id);
  keys_.insert(key(o, t, mu));
  return id;
}

void BouquetGraph::link_inverse(std::uint32_t a, std::uint32_t b) {
  edges_[a].inverse = b;
  edges_[b].inverse = a;
}

BouquetGraph bouquet(std::span<const Word> generators) {
  if (generators.empty()) {
    throw Error(ErrorKind::InvalidArgument, "bouquet needs at least one generator");
  }
  BouquetGraph g;
  g.alphabet_ = generators.front().alphabet();
  g.factor_alphabet_ = Alphabet::numbered("h", generators.size());
  std::size_t n = 1;
  for (const Word& h : generators) {
    if (h.alphabet() != g.alphabet_) {
      throw Error(ErrorKind::AlphabetMismatch, "generators over different alphabets");
    }
    Word r = reduce(h);
    if (r.empty()) throw Error(ErrorKind::TrivialGenerator, "generator reduces to the identity");
    n += r.size() - 1;
    g.generators_.push_back(std::move(r));
  }
  g.vertex_count_ = n;
  g.out_.resize(n);
  g.by_label_.resize(n * g.label_slots());

  for (Vertex v = 0; v < n; ++v) {
    std::uint32_t loop = g.push_edge(v, v, kEpsilon, g.arena_.empty());
    g.link_inverse(loop, loop);
  }
  Vertex next_vertex = 1;
  for (std::size_t i = 0; i < g.generators_.size(); ++i) {
    const Word& h = g.generators_[i];
    SlpRef symbol = g.arena_.terminal(Letter(i, false));
    Vertex prev = 0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      bool closing = j + 1 == h.size();
      Vertex to = closing ? 0 : next_vertex++;
      SlpRef nu = closing ? symbol : g.arena_.empty();
      auto mu = static_cast<MuLabel>(h[j].code());
      std::uint32_t fwd = g.push_edge(prev, to, mu, nu);
      std::uint32_t back = g.push_edge(to, prev, invert_mu(mu), g.arena_.invert(nu));
      g.link_inverse(fwd, back);
      prev = to;
    }
  }
  g.initial_edges_ = g.edges_.size();
  return g;
}

namespace {

struct Candidate {
  std::uint64_t cost;
  Vertex origin;
  Vertex target;
  MuLabel mu;
  std::uint32_t first;
  std::uint32_t second;

  auto tie() const { return std::tie(cost, origin, target, mu, first, second); }
  bool operator>(const Candidate& o) const { return tie() > o.tie(); }
};

}  // namespace

BouquetGraph complete(const BouquetGraph& input) {
  BouquetGraph g = input;
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;

  auto consider = [&](std::uint32_t a, std::uint32_t b) {
    const BouquetEdge& e1 = g.edges_[a];
    const BouquetEdge& e2 = g.edges_[b];
    auto mu = compose_mu(e1.mu, e2.mu);
    if (!mu || g.has_edge(e1.origin, e2.target, *mu)) return;
    std::uint64_t c1 = g.arena_.length(e1.nu);
    std::uint64_t c2 = g.arena_.length(e2.nu);
    std::uint64_t cost = c1 + c2 < c1 ? std::numeric_limits<std::uint64_t>::max() : c1 + c2;
    queue.push({cost, e1.origin, e2.target, *mu, a, b});
  };
  auto pairs_with = [&](std::uint32_t e) {
    for (std::uint32_t next : g.out_[g.edges_[e].target]) consider(e, next);
    for (std::uint32_t out : g.out_[g.edges_[e].origin]) consider(g.edges_[out].inverse, e);
  };

  for (std::uint32_t e = 0; e < g.edges_.size(); ++e) {
    for (std::uint32_t next : g.out_[g.edges_[e].target]) consider(e, next);
  }

  while (!queue.empty()) {
    Candidate c = queue.top();
    queue.pop();
    if (g.has_edge(c.origin, c.target, c.mu)) continue;
    SlpRef nu = g.arena_.concat(g.edges_[c.first].nu, g.edges_[c.second].nu);
    std::uint32_t fwd = g.push_edge(c.origin, c.target, c.mu, nu);
    std::uint32_t back = g.push_edge(c.target, c.origin, invert_mu(c.mu), g.arena_.invert(nu));
    g.link_inverse(fwd, back);
    g.edges_[fwd].parents = std::make_pair(c.first, c.second);
    g.edges_[back].parents =
        std::make_pair(g.edges_[c.second].inverse, g.edges_[c.first].inverse);
    pairs_with(fwd);
    pairs_with(back);
  }

  std::size_t bound = g.vertex_count_ * g.vertex_count_ * g.label_slots();
  if (g.edges_.size() - g.initial_edges_ > bound) {
    throw std::logic_error("completion added more edges than distinct (origin, target, label) triples");
  }
  g.completed_ = true;
  return g;
}

Word evaluate(std::span<const Letter> symbols, std::span<const Word> generators) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "no generators");
  std::vector<Letter> out;
  for (Letter s : symbols) {
    const Word& h = generators[s.generator()];
    if (s.is_inverse()) {
      for (auto it = h.letters().rbegin(); it != h.letters().rend(); ++it) out.push_back(it->inverse());
    } else {
      out.insert(out.end(), h.begin(), h.end());
    }
  }
  return Word(generators.front().alphabet(), reduce_letters(out));
}

Word evaluate(const Factorization& u, std::span<const Word> generators) {
  return evaluate(u.symbols, generators);
}

namespace {

struct DpResult {
  SlpArena arena;
  SlpRef answer;
  std::uint64_t length;
};

DpResult run_dp(const BouquetGraph& g, const Word& w, GeodesicTrace* trace) {
  if (!g.is_completed()) throw Error(ErrorKind::InvalidArgument, "graph has not been completed");
  if (w.alphabet() != g.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "word and subgroup over different alphabets");
  }
  Word reduced = reduce(w);
  DpResult result{g.arena().fork(), {}, 0};
  SlpArena& arena = result.arena;
  constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

  struct Entry {
    SlpRef u;
    std::uint64_t length;
  };
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<Entry>> frontier(n);
  frontier[0] = Entry{arena.empty(), 0};
  if (trace) trace->steps.clear();

  for (Letter x : reduced) {
    std::vector<std::uint64_t> best(n, kUnset);
    std::vector<std::uint64_t> discarded(n, kUnset);
    std::vector<std::pair<Vertex, std::uint32_t>> source(n);
    for (Vertex v = 0; v < n; ++v) {
      if (!frontier[v]) continue;
      for (std::uint32_t e : g.out(v, static_cast<MuLabel>(x.code()))) {
        const BouquetEdge& edge = g.edges()[e];
        std::uint64_t len = frontier[v]->length + arena.length(edge.nu);
        Vertex t = edge.target;
        if (len < best[t]) {
          discarded[t] = std::min(discarded[t], best[t]);
          best[t] = len;
          source[t] = {v, e};
        } else {
          discarded[t] = std::min(discarded[t], len);
        }
      }
    }
    std::vector<std::optional<Entry>> next(n);
    bool any = false;
    for (Vertex t = 0; t < n; ++t) {
      if (best[t] == kUnset) continue;
      auto [v, e] = source[t];
      next[t] = Entry{arena.concat(frontier[v]->u, g.edges()[e].nu), best[t]};
      any = true;
    }
    if (trace) {
      std::vector<std::optional<GeodesicTrace::Slot>> step(n);
      for (Vertex t = 0; t < n; ++t) {
        if (!next[t]) continue;
        step[t] = GeodesicTrace::Slot{
            best[t], discarded[t] == kUnset ? std::nullopt : std::optional(discarded[t])};
      }
      trace->steps.push_back(std::move(step));
    }
    frontier = std::move(next);
    if (!any) break;
  }
  if (!frontier[0]) {
    throw Error(ErrorKind::NotInSubgroup, "'" + format_word(reduced) + "' is not in the subgroup");
  }
  result.answer = frontier[0]->u;
  result.length = frontier[0]->length;
  return result;
}

}  // namespace

std::uint64_t geodesic_length(const BouquetGraph& completed, const Word& w, GeodesicTrace* trace) {
  return run_dp(completed, w, trace).length;
}

Factorization geodesic(const BouquetGraph& completed, const Word& w, std::uint64_t budget,
                       GeodesicTrace* trace) {
  DpResult dp = run_dp(completed, w, trace);
  if (dp.length > budget) {
    throw BudgetExceeded(dp.length, budget,
                         "geodesic has " + std::to_string(dp.length) +
                             " factors, more than the expansion budget " + std::to_string(budget));
  }
  Factorization u{completed.factor_alphabet(), dp.arena.expand(dp.answer, budget)};
  if (evaluate(u, completed.generators()) != reduce(w)) {
    throw std::logic_error("geodesic factorization does not evaluate to the input word");
  }
  return u;
}

Factorization geodesic(std::span<const Word> generators, const Word& w, std::uint64_t budget) {
  BouquetGraph completed = complete(bouquet(generators));
  return geodesic(completed, w, budget);
}

std::string export_bouquet_dot(const BouquetGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "  " << v;
    if (v == 0) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (std::uint32_t id = 0; id < g.edges().size(); ++id) {
    const BouquetEdge& e = g.edges()[id];
    // One arc per inverse pair: the positive letter, or the lower-id ε edge.
    if (e.mu == kEpsilon) {
      if (e.inverse < id || (e.inverse == id && g.arena().length(e.nu) == 0)) continue;
    } else if ((e.mu & 1) != 0) {
      continue;
    }
    std::string mu = e.mu == kEpsilon
                         ? std::string("ε")
                         : g.alphabet()->name(static_cast<std::size_t>(e.mu) >> 1);
    out << "  " << e.origin << " -> " << e.target << " [label=\"" << mu << " / "
        << g.arena().length(e.nu) << "\"";
    if (e.parents) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace grouplat
