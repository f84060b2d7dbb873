#include "grouplat/oracles.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "grouplat/error.hpp"

namespace grouplat {

namespace {

const AlphabetPtr& alphabet_of(std::span<const Word> gens, const Word& fallback) {
  return gens.empty() ? fallback.alphabet() : gens.front().alphabet();
}

// Reduced labels of paths from `from` to `to` of length ≤ n.
std::vector<std::vector<Letter>> paths_within(const FoldedGraph& g, Vertex from, Vertex to,
                                              std::size_t n) {
  std::vector<std::vector<Letter>> out;
  std::vector<Letter> w;
  auto walk = [&](auto&& self, Vertex v) -> void {
    if (v == to) out.push_back(w);
    if (w.size() == n) return;
    for (std::uint32_t c = 0; c < g.letter_count(); ++c) {
      Letter l = Letter::from_code(c);
      if (!w.empty() && w.back() == l.inverse()) continue;
      Vertex t = g.target(v, l);
      if (t == FoldedGraph::kNone) continue;
      w.push_back(l);
      self(self, t);
      w.pop_back();
    }
  };
  walk(walk, from);
  return out;
}

std::size_t min_pair_distance(const std::vector<std::vector<Letter>>& left,
                              const std::vector<std::vector<Letter>>& right, bool skip_trivial,
                              const SearchBudget& budget) {
  std::set<std::vector<Letter>> right_set(right.begin(), right.end());
  for (const auto& r : left) {
    if ((!skip_trivial || !r.empty()) && right_set.contains(r)) return 0;
  }
  if (left.size() * right.size() > budget.max_candidates) {
    throw BudgetExceeded(left.size() * right.size(), budget.max_candidates,
                         "too many candidate pairs");
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<Letter> buf;
  for (const auto& r : left) {
    for (const auto& s : right) {
      if (skip_trivial && r.empty() && s.empty()) continue;
      buf.clear();
      for (auto it = r.rbegin(); it != r.rend(); ++it) buf.push_back(it->inverse());
      buf.insert(buf.end(), s.begin(), s.end());
      best = std::min(best, reduce_letters(buf).size());
    }
  }
  return best;
}

}  // namespace

std::size_t oracle_closest_free(std::span<const Word> gens, const Word& g,
                                const SearchBudget& budget) {
  Word target = reduce(g);
  if (target.size() > budget.max_word_length) {
    throw BudgetExceeded(target.size(), budget.max_word_length, "|g| exceeds the word budget");
  }
  FoldedGraph h = stallings_graph(gens, g.alphabet());
  Word g_inv = invert(target);
  std::optional<std::size_t> found;
  for_each_reduced_word(g.alphabet(), target.size(), [&](const Word& u) {
    if (contains(h, concat(u, g_inv))) {
      found = u.size();
      return false;
    }
    return true;
  });
  if (!found) throw std::logic_error("g itself was not found in Hg");
  return *found;
}

std::optional<std::size_t> oracle_shortest_free(std::span<const Word> gens,
                                                const SearchBudget& budget) {
  if (gens.empty()) return std::nullopt;
  FoldedGraph h = stallings_graph(gens, gens.front().alphabet());
  std::optional<std::size_t> found;
  for_each_reduced_word(gens.front().alphabet(), budget.max_word_length, [&](const Word& u) {
    if (!u.empty() && contains(h, u)) {
      found = u.size();
      return false;
    }
    return true;
  });
  return found;
}

std::size_t oracle_distance_free(std::span<const Word> gens1, std::span<const Word> gens2,
                                 const SearchBudget& budget) {
  if (gens1.empty() && gens2.empty()) {
    throw Error(ErrorKind::BothTrivial, "both subgroups are trivial");
  }
  const AlphabetPtr& a = gens1.empty() ? gens2.front().alphabet() : gens1.front().alphabet();
  FoldedGraph h = stallings_graph(gens1, a);
  FoldedGraph k = stallings_graph(gens2, a);
  if (h.is_trivial() && k.is_trivial()) {
    throw Error(ErrorKind::BothTrivial, "both subgroups are trivial");
  }
  auto left = paths_within(h, h.base(), h.base(), budget.max_word_length);
  auto right = paths_within(k, k.base(), k.base(), budget.max_word_length);
  return min_pair_distance(left, right, true, budget);
}

std::optional<std::size_t> oracle_coset_distance(std::span<const Word> gens1, const Word& g1,
                                                 std::span<const Word> gens2, const Word& g2,
                                                 const SearchBudget& budget) {
  CosetGraph c1 = coset_graph(stallings_graph(gens1, alphabet_of(gens1, g1)), g1);
  CosetGraph c2 = coset_graph(stallings_graph(gens2, alphabet_of(gens2, g2)), g2);
  auto left = paths_within(c1.graph, c1.graph.base(), c1.terminus, budget.max_word_length);
  auto right = paths_within(c2.graph, c2.graph.base(), c2.terminus, budget.max_word_length);
  if (left.empty() || right.empty()) return std::nullopt;
  return min_pair_distance(left, right, false, budget);
}

namespace {

std::vector<std::vector<Letter>> accepted_within(const ReducedAcceptor& a, std::size_t n) {
  std::vector<std::vector<Letter>> out;
  std::vector<Letter> w;
  auto walk = [&](auto&& self, State s) -> void {
    if (a.accepting(s)) out.push_back(w);
    if (w.size() == n) return;
    for (std::uint32_t c = 0; c < a.letter_count(); ++c) {
      Letter l = Letter::from_code(c);
      if (!w.empty() && w.back() == l.inverse()) continue;
      State t = a.target(s, l);
      if (t == ReducedAcceptor::kNone) continue;
      w.push_back(l);
      self(self, t);
      w.pop_back();
    }
  };
  walk(walk, a.initial());
  return out;
}

}  // namespace

std::optional<std::size_t> oracle_rational_distance(const ReducedAcceptor& a,
                                                    const ReducedAcceptor& b,
                                                    const SearchBudget& budget) {
  auto left = accepted_within(a, budget.max_word_length);
  auto right = accepted_within(b, budget.max_word_length);
  if (left.empty() || right.empty()) return std::nullopt;
  return min_pair_distance(left, right, false, budget);
}

std::optional<std::size_t> oracle_geodesic(std::span<const Word> gens, const Word& w,
                                           const SearchBudget& budget) {
  std::vector<Letter> target = reduce(w).letters();
  if (target.empty()) return 0;
  std::vector<std::vector<Letter>> steps;
  for (const Word& h : gens) {
    steps.push_back(reduce(h).letters());
    steps.push_back(invert(reduce(h)).letters());
  }
  std::set<std::vector<Letter>> seen{{}};
  std::vector<std::vector<Letter>> frontier{{}};
  std::vector<Letter> buf;
  for (std::size_t k = 1; k <= budget.max_factorization_length; ++k) {
    std::vector<std::vector<Letter>> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        buf = x;
        buf.insert(buf.end(), s.begin(), s.end());
        std::vector<Letter> y = reduce_letters(buf);
        if (y == target) return k;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (seen.size() > budget.max_candidates) {
      throw BudgetExceeded(seen.size(), budget.max_candidates, "too many subgroup elements");
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::set<MalcevVector> oracle_nilpotent_subgroup(const NilpotentPresentation& p,
                                                 std::span<const MalcevVector> gens,
                                                 const SearchBudget& budget) {
  std::vector<MalcevVector> steps;
  for (const MalcevVector& g : gens) {
    for (int e : {-2, -1, 1, 2}) steps.push_back(power(p, g, e));
  }
  std::set<MalcevVector> seen{p.identity()};
  std::vector<MalcevVector> frontier{p.identity()};
  for (std::size_t k = 0; k < budget.max_factorization_length; ++k) {
    std::vector<MalcevVector> next;
    for (const MalcevVector& x : frontier) {
      for (const MalcevVector& s : steps) {
        MalcevVector y = multiply(p, x, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    if (seen.size() > budget.max_candidates) {
      throw BudgetExceeded(seen.size(), budget.max_candidates, "too many subgroup elements");
    }
    frontier = std::move(next);
  }
  return seen;
}

MalcevVector oracle_collect(const NilpotentPresentation& p, const Word& w) {
  std::vector<bool> central(p.basis_size(), false);
  for (const CommutationRule& rule : p.rules()) {
    for (const Power& f : rule.tail) central[f.symbol] = true;
  }
  for (const CommutationRule& rule : p.rules()) {
    if (central[rule.i] || central[rule.j]) {
      throw Error(ErrorKind::InvalidArgument, "rewriting oracle needs central tails");
    }
  }
  if (w.alphabet()->rank() != p.generator_count()) {
    throw Error(ErrorKind::AlphabetMismatch, "word alphabet rank differs from the generator count");
  }

  struct Sym {
    std::size_t symbol;
    int sign;
  };
  std::vector<Sym> seq;
  for (Letter l : w) seq.push_back({l.generator(), l.sign()});

  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t t = 0; t + 1 < seq.size(); ++t) {
      Sym a = seq[t];
      Sym b = seq[t + 1];
      if (a.symbol == b.symbol && a.sign == -b.sign) {
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(t),
                  seq.begin() + static_cast<std::ptrdiff_t>(t) + 2);
        changed = true;
        break;
      }
      if (a.symbol > b.symbol) {
        // y_j^a y_i^b = y_i^b y_j^a t^(ab) when t is central.
        std::vector<Sym> replacement{b, a};
        for (const Power& f : p.tail(a.symbol, b.symbol)) {
          Integer count = f.exponent * a.sign * b.sign;
          int sign = count < 0 ? -1 : 1;
          for (Integer c = 0; c < abs(count); ++c) replacement.push_back({f.symbol, sign});
        }
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(t),
                  seq.begin() + static_cast<std::ptrdiff_t>(t) + 2);
        seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(t), replacement.begin(),
                   replacement.end());
        changed = true;
        break;
      }
    }
  }
  MalcevVector out = p.identity();
  for (const Sym& s : seq) out[s.symbol] += s.sign;
  return out;
}

std::set<MalcevVector> oracle_subgroup_box(const NilpotentPresentation& p,
                                           std::span<const Word> gens, const Integer& bound) {
  std::vector<MalcevVector> steps;
  for (const Word& h : gens) {
    MalcevVector v = collect(p, h);
    steps.push_back(v);
    steps.push_back(inverse(p, v));
  }
  auto inside = [&](const MalcevVector& v) {
    return std::all_of(v.begin(), v.end(), [&](const Integer& x) { return abs(x) <= bound; });
  };
  std::set<MalcevVector> seen{p.identity()};
  std::vector<MalcevVector> queue{p.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const MalcevVector& s : steps) {
      MalcevVector y = multiply(p, queue[head], s);
      if (inside(y) && seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen;
}

namespace {

constexpr int kBoxMargin = 4;

Integer max_coordinate(const std::vector<MalcevVector>& vs) {
  Integer m = 0;
  for (const MalcevVector& v : vs) {
    for (const Integer& x : v) m = std::max(m, Integer(abs(x)));
  }
  return m;
}

}  // namespace

std::size_t oracle_closest_nilpotent(const NilpotentPresentation& p, std::span<const Word> gens,
                                     const Word& g) {
  MalcevVector base = collect(p, g);
  std::vector<BallEntry> b = ball(p, g.size());
  std::vector<MalcevVector> targets;
  for (const BallEntry& e : b) targets.push_back(multiply(p, base, e.element));
  std::set<MalcevVector> members = oracle_subgroup_box(p, gens, max_coordinate(targets) + kBoxMargin);
  for (std::size_t t = 0; t < b.size(); ++t) {
    if (members.contains(targets[t])) return b[t].depth;
  }
  throw std::logic_error("no member of H within |g| of g");
}

std::optional<std::size_t> oracle_shortest_nilpotent(const NilpotentPresentation& p,
                                                     std::span<const Word> gens) {
  std::size_t total = 0;
  for (const Word& h : gens) total += h.size();
  std::vector<BallEntry> b = ball(p, total);
  std::vector<MalcevVector> targets;
  for (const BallEntry& e : b) targets.push_back(e.element);
  std::set<MalcevVector> members = oracle_subgroup_box(p, gens, max_coordinate(targets) + kBoxMargin);
  for (const BallEntry& e : b) {
    if (e.depth > 0 && members.contains(e.element)) return e.depth;
  }
  return std::nullopt;
}

}  // namespace grouplat
