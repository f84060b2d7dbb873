#include "grouplat/nilpotent.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "grouplat/error.hpp"

namespace grouplat {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidPresentation, what);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

bool is_identity(const MalcevVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

std::size_t pivot(const MalcevVector& v) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) return k;
  }
  return v.size();
}

std::string format_malcev(const MalcevVector& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out << ',';
    out << v[k];
  }
  out << ']';
  return out.str();
}

NilpotentPresentation NilpotentPresentation::make(std::size_t basis, std::size_t generators,
                                                  std::vector<CommutationRule> rules,
                                                  std::vector<std::string> symbol_names) {
  if (generators == 0) invalid("presentation needs at least one generator");
  if (generators > basis) invalid("more generators than basis symbols");
  NilpotentPresentation p;
  p.m_ = basis;
  p.r_ = generators;
  p.alphabet_ = Alphabet::numbered("x", generators);
  if (symbol_names.empty()) {
    for (std::size_t k = 0; k < basis; ++k) {
      symbol_names.push_back((k < generators ? "x" : "y") + std::to_string(k + 1));
    }
  } else if (symbol_names.size() != basis) {
    invalid("symbol name count differs from basis size");
  }
  p.names_ = std::move(symbol_names);
  p.tails_.assign(basis, std::vector<std::vector<Power>>(basis));
  std::vector<std::vector<bool>> seen(basis, std::vector<bool>(basis, false));
  for (CommutationRule& rule : rules) {
    if (rule.j >= basis || rule.i >= rule.j) invalid("rule needs i < j < basis size");
    if (seen[rule.j][rule.i]) invalid("repeated rule for one pair");
    seen[rule.j][rule.i] = true;
    std::vector<Power> tail;
    for (Power& f : rule.tail) {
      if (f.symbol >= basis) invalid("tail symbol out of range");
      if (f.symbol <= rule.j) invalid("tail symbol must come after both rule symbols");
      if (f.exponent != 0) tail.push_back(f);
    }
    rule.tail = tail;
    p.tails_[rule.j][rule.i] = std::move(tail);
  }
  std::sort(rules.begin(), rules.end(), [](const CommutationRule& a, const CommutationRule& b) {
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  });
  p.rules_ = std::move(rules);
  p.build_conjugations();
  p.check_consistency();
  return p;
}

const std::vector<Power>& NilpotentPresentation::tail(std::size_t j, std::size_t i) const {
  return tails_.at(j).at(i);
}

MalcevVector NilpotentPresentation::basis_vector(std::size_t k) const {
  MalcevVector v(m_);
  v.at(k) = 1;
  return v;
}

MalcevVector NilpotentPresentation::collect_tail(const std::vector<Power>& tail) const {
  MalcevVector acc = identity();
  for (const Power& f : tail) acc = multiply_symbol(std::move(acc), f.symbol, f.exponent);
  return acc;
}

MalcevVector NilpotentPresentation::apply(std::size_t i, const Images& phi,
                                          const MalcevVector& v) const {
  MalcevVector acc = identity();
  for (std::size_t k = i + 1; k < m_; ++k) {
    if (v[k] != 0) acc = multiply(*this, acc, power(*this, phi[k], v[k]));
  }
  return acc;
}

NilpotentPresentation::Images NilpotentPresentation::compose(std::size_t i, const Images& outer,
                                                             const Images& inner) const {
  Images out(m_);
  for (std::size_t j = i + 1; j < m_; ++j) out[j] = apply(i, outer, inner[j]);
  return out;
}

NilpotentPresentation::Images NilpotentPresentation::conjugation_power(std::size_t i,
                                                                       Integer n) const {
  if (n == 1) return conj_[i];
  if (n == -1) return conj_inv_[i];
  Images base = n > 0 ? conj_[i] : conj_inv_[i];
  if (n < 0) n = -n;
  Images result(m_);
  for (std::size_t j = i + 1; j < m_; ++j) result[j] = basis_vector(j);
  while (n > 0) {
    if ((n & 1) != 0) result = compose(i, result, base);
    n >>= 1;
    if (n > 0) base = compose(i, base, base);
  }
  return result;
}

MalcevVector NilpotentPresentation::multiply_symbol(MalcevVector alpha, std::size_t i,
                                                    const Integer& n) const {
  if (n == 0) return alpha;
  // α·y_iⁿ = y₁^α₁⋯y_i^(α_i+n) · φⁿ(y_{i+1}^α_{i+1}⋯), φ = conjugation by y_i.
  bool moves = false;
  for (std::size_t j = i + 1; j < m_ && !moves; ++j) {
    moves = alpha[j] != 0 && !tails_[j][i].empty();
  }
  alpha[i] += n;
  if (!moves) return alpha;
  Images phi = conjugation_power(i, n);
  MalcevVector suffix = identity();
  for (std::size_t j = i + 1; j < m_; ++j) {
    if (alpha[j] == 0) continue;
    MalcevVector factor = tails_[j][i].empty() ? basis_vector(j) : phi[j];
    suffix = multiply(*this, suffix, power(*this, factor, alpha[j]));
  }
  for (std::size_t j = i + 1; j < m_; ++j) alpha[j] = suffix[j];
  return alpha;
}

void NilpotentPresentation::build_conjugations() {
  conj_.assign(m_, Images(m_));
  conj_inv_.assign(m_, Images(m_));
  for (std::size_t i = m_; i-- > 0;) {
    for (std::size_t j = m_; j-- > i + 1;) {
      const std::vector<Power>& t = tails_[j][i];
      conj_[i][j] = multiply(*this, basis_vector(j), collect_tail(t));
      // y_i y_j y_i⁻¹ = y_j · φ⁻¹(t)⁻¹
      MalcevVector pre = apply(i, conj_inv_[i], collect_tail(t));
      conj_inv_[i][j] = multiply(*this, basis_vector(j), inverse(*this, pre));
    }
  }
}

void NilpotentPresentation::check_consistency() const {
  for (std::size_t i = 0; i < m_; ++i) {
    for (std::size_t j = i + 1; j < m_; ++j) {
      if (apply(i, conj_inv_[i], conj_[i][j]) != basis_vector(j) ||
          apply(i, conj_[i], conj_inv_[i][j]) != basis_vector(j)) {
        invalid("conjugation by " + names_[i] + " is not invertible on " + names_[j]);
      }
      for (std::size_t k = j + 1; k < m_; ++k) {
        // Conjugation by y_i must respect y_k y_j = y_j y_k t_kj.
        MalcevVector lhs = multiply(*this, conj_[i][k], conj_[i][j]);
        MalcevVector rhs = multiply(*this, multiply(*this, conj_[i][j], conj_[i][k]),
                                    apply(i, conj_[i], collect_tail(tails_[k][j])));
        if (lhs != rhs) {
          invalid("inconsistent rules for " + names_[i] + ", " + names_[j] + ", " + names_[k]);
        }
      }
    }
  }
}

NilpotentPresentation free_nilpotent_class2(std::size_t r) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "rank must be at least 1");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < r; ++k) names.push_back("x" + std::to_string(k + 1));
  std::vector<CommutationRule> rules;
  std::size_t next = r;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      names.push_back("c" + std::to_string(i + 1) + std::to_string(j + 1));
      rules.push_back({j, i, {{next++, 1}}});
    }
  }
  std::size_t m = names.size();
  return NilpotentPresentation::make(m, r, std::move(rules), std::move(names));
}

MalcevVector collect(const NilpotentPresentation& p, const Word& w) {
  if (w.alphabet()->rank() != p.generator_count()) {
    throw Error(ErrorKind::AlphabetMismatch, "word alphabet rank differs from the generator count");
  }
  MalcevVector acc = p.identity();
  for (Letter l : w) acc = p.multiply_symbol(std::move(acc), l.generator(), l.sign());
  return acc;
}

MalcevVector multiply(const NilpotentPresentation& p, const MalcevVector& u,
                      const MalcevVector& v) {
  if (u.size() != p.basis_size() || v.size() != p.basis_size()) {
    throw Error(ErrorKind::LengthMismatch, "Malcev vector length differs from the basis size");
  }
  MalcevVector acc = u;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] != 0) acc = p.multiply_symbol(std::move(acc), k, v[k]);
  }
  return acc;
}

MalcevVector inverse(const NilpotentPresentation& p, const MalcevVector& u) {
  MalcevVector acc = p.identity();
  for (std::size_t k = u.size(); k-- > 0;) {
    if (u[k] != 0) acc = p.multiply_symbol(std::move(acc), k, -u[k]);
  }
  return acc;
}

MalcevVector power(const NilpotentPresentation& p, const MalcevVector& u, const Integer& n) {
  if (n == 0) return p.identity();
  std::size_t k = pivot(u);
  if (k == u.size()) return u;
  // A single basis symbol needs no collection.
  bool single = std::all_of(u.begin() + static_cast<std::ptrdiff_t>(k) + 1, u.end(),
                            [](const Integer& x) { return x == 0; });
  if (single) {
    MalcevVector out = u;
    out[k] *= n;
    return out;
  }
  MalcevVector base = n > 0 ? u : inverse(p, u);
  Integer e = n > 0 ? n : Integer(-n);
  MalcevVector result = p.identity();
  while (e > 0) {
    if ((e & 1) != 0) result = multiply(p, result, base);
    e >>= 1;
    if (e > 0) base = multiply(p, base, base);
  }
  return result;
}

MalcevVector product_of_powers(const NilpotentPresentation& p, std::span<const MalcevVector> gs,
                               std::span<const Integer> ks) {
  if (gs.size() != ks.size()) {
    throw Error(ErrorKind::LengthMismatch, "need one exponent per element");
  }
  MalcevVector acc = p.identity();
  for (std::size_t t = 0; t < gs.size(); ++t) {
    if (ks[t] != 0) acc = multiply(p, acc, power(p, gs[t], ks[t]));
  }
  return acc;
}

namespace {

struct Row {
  MalcevVector v;
  std::size_t node;
};

class FullFormBuilder {
 public:
  FullFormBuilder(const NilpotentPresentation& p, CoordinateMatrix& a) : p_(p), a_(a) {}

  std::size_t record(std::vector<std::pair<std::size_t, Integer>> factors) {
    a_.provenance.push_back({std::move(factors)});
    return a_.provenance.size() - 1;
  }

  Row combine(const std::vector<std::pair<const Row*, Integer>>& parts) {
    MalcevVector v = p_.identity();
    std::vector<std::pair<std::size_t, Integer>> factors;
    for (const auto& [row, e] : parts) {
      if (e == 0) continue;
      v = multiply(p_, v, power(p_, row->v, e));
      factors.emplace_back(row->node, e);
    }
    return {std::move(v), record(std::move(factors))};
  }

  static void prune(std::vector<Row>& rows) {
    std::set<MalcevVector> seen;
    std::vector<Row> kept;
    for (Row& r : rows) {
      if (is_identity(r.v) || !seen.insert(r.v).second) continue;
      kept.push_back(std::move(r));
    }
    rows = std::move(kept);
  }

  std::vector<Row> triangularize(std::vector<Row> active) {
    std::vector<Row> fixed;
    const std::size_t m = p_.basis_size();
    prune(active);
    while (!active.empty()) {
      std::size_t pi = m;
      for (const Row& r : active) pi = std::min(pi, pivot(r.v));

      // d = gcd of the column, as an explicit combination of the rows.
      std::vector<std::size_t> hit;
      for (std::size_t t = 0; t < active.size(); ++t) {
        if (active[t].v[pi] != 0) hit.push_back(t);
      }
      Integer d = active[hit[0]].v[pi];
      std::vector<Integer> coeff{1};
      for (std::size_t t = 1; t < hit.size(); ++t) {
        Integer a = d, b = active[hit[t]].v[pi];
        Integer x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b != 0) {
          Integer q = a / b;
          Integer r = a - q * b;
          a = b;
          b = r;
          Integer x2 = x0 - q * x1;
          x0 = x1;
          x1 = x2;
          Integer y2 = y0 - q * y1;
          y0 = y1;
          y1 = y2;
        }
        for (Integer& c : coeff) c *= x0;
        coeff.push_back(y0);
        d = a;
      }
      if (d < 0) {
        d = -d;
        for (Integer& c : coeff) c = -c;
      }
      std::vector<std::pair<const Row*, Integer>> parts;
      for (std::size_t t = 0; t < hit.size(); ++t) parts.emplace_back(&active[hit[t]], coeff[t]);
      Row lead = combine(parts);
      if (lead.v[pi] != d || pivot(lead.v) != pi) {
        throw std::logic_error("gcd row has the wrong pivot");
      }

      for (std::size_t t : hit) {
        Integer q = active[t].v[pi] / d;
        active[t] = combine({{&active[t], 1}, {&lead, -q}});
      }
      prune(active);

      std::size_t rest = active.size();
      Integer span = static_cast<long long>(m - pi);
      for (std::size_t t = 0; t < rest; ++t) {
        for (Integer l = 1; l <= span; ++l) {
          for (const Integer& e : {l, Integer(-l)}) {
            active.push_back(combine({{&lead, -e}, {&active[t], 1}, {&lead, e}}));
          }
        }
      }
      prune(active);
      fixed.push_back(std::move(lead));
    }
    return fixed;
  }

 private:
  const NilpotentPresentation& p_;
  CoordinateMatrix& a_;
};

std::optional<std::vector<Integer>> sift(const NilpotentPresentation& p,
                                         const CoordinateMatrix& a, std::size_t start,
                                         MalcevVector x) {
  std::vector<Integer> exps(a.size());
  for (std::size_t l = start; l < a.size(); ++l) {
    std::size_t c = pivot(x);
    if (c == x.size()) return exps;
    if (c < a.pivots[l]) return std::nullopt;
    if (c > a.pivots[l]) continue;
    const Integer& lead = a.rows[l][c];
    if (x[c] % lead != 0) return std::nullopt;
    Integer q = x[c] / lead;
    exps[l] = q;
    x = multiply(p, power(p, a.rows[l], -q), x);
  }
  if (!is_identity(x)) return std::nullopt;
  return exps;
}

void set_rows(CoordinateMatrix& a, std::vector<Row> rows) {
  a.rows.clear();
  a.pivots.clear();
  a.origin.clear();
  for (Row& r : rows) {
    a.pivots.push_back(pivot(r.v));
    a.rows.push_back(std::move(r.v));
    a.origin.push_back(r.node);
  }
}

std::vector<Row> closure_failures(const NilpotentPresentation& p, const CoordinateMatrix& a,
                                  FullFormBuilder& builder) {
  std::vector<Row> missing;
  for (std::size_t k = a.size(); k-- > 0;) {
    Row hk{a.rows[k], a.origin[k]};
    for (std::size_t j = k + 1; j < a.size(); ++j) {
      Row hj{a.rows[j], a.origin[j]};
      for (int e : {1, -1}) {
        MalcevVector c = multiply(p, multiply(p, power(p, hk.v, -e), hj.v), power(p, hk.v, e));
        if (!sift(p, a, k + 1, c)) missing.push_back(builder.combine({{&hk, -e}, {&hj, 1}, {&hk, e}}));
      }
    }
    if (!missing.empty()) return missing;
  }
  return missing;
}

}  // namespace

CoordinateMatrix full_form(const NilpotentPresentation& p, std::span<const MalcevVector> rows) {
  CoordinateMatrix a;
  a.input_count = rows.size();
  std::vector<Row> start;
  for (const MalcevVector& v : rows) {
    if (v.size() != p.basis_size()) {
      throw Error(ErrorKind::LengthMismatch, "Malcev vector length differs from the basis size");
    }
    a.provenance.push_back({});
    start.push_back({v, a.provenance.size() - 1});
  }
  FullFormBuilder builder(p, a);
  set_rows(a, builder.triangularize(std::move(start)));

  for (int round = 0;; ++round) {
    std::vector<Row> missing = closure_failures(p, a, builder);
    if (missing.empty()) break;
    if (round == 64) throw std::logic_error("full form closure did not stabilize");
    std::vector<Row> again;
    for (std::size_t t = 0; t < a.size(); ++t) again.push_back({a.rows[t], a.origin[t]});
    for (Row& r : missing) again.push_back(std::move(r));
    set_rows(a, builder.triangularize(std::move(again)));
  }

  // Reduce entries above each pivot into [0, pivot entry).
  for (std::size_t l = 0; l < a.size(); ++l) {
    std::size_t c = a.pivots[l];
    const Integer lead = a.rows[l][c];
    for (std::size_t i = 0; i < l; ++i) {
      Integer q = floor_div(a.rows[i][c], lead);
      if (q == 0) continue;
      Row ri{a.rows[i], a.origin[i]};
      Row rl{a.rows[l], a.origin[l]};
      Row reduced = builder.combine({{&ri, 1}, {&rl, -q}});
      a.rows[i] = std::move(reduced.v);
      a.origin[i] = reduced.node;
    }
  }

  for (std::size_t l = 0; l < a.size(); ++l) {
    if (is_identity(a.rows[l]) || pivot(a.rows[l]) != a.pivots[l] || a.rows[l][a.pivots[l]] <= 0 ||
        (l > 0 && a.pivots[l] <= a.pivots[l - 1])) {
      throw std::logic_error("full form is not triangular");
    }
  }
  return a;
}

MalcevVector reconstruct(const NilpotentPresentation& p, std::span<const MalcevVector> inputs,
                         const CoordinateMatrix& a, std::size_t node) {
  if (inputs.size() != a.input_count) {
    throw Error(ErrorKind::LengthMismatch, "input row count differs from the recorded one");
  }
  std::map<std::size_t, MalcevVector> memo;
  auto eval = [&](auto&& self, std::size_t n) -> MalcevVector {
    if (n < a.input_count) return inputs[n];
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    MalcevVector v = p.identity();
    for (const auto& [child, e] : a.provenance.at(n).factors) {
      v = multiply(p, v, power(p, self(self, child), e));
    }
    memo.emplace(n, v);
    return v;
  };
  return eval(eval, node);
}

bool is_full(const NilpotentPresentation& p, const CoordinateMatrix& a) {
  for (std::size_t l = 0; l < a.size(); ++l) {
    if (is_identity(a.rows[l]) || pivot(a.rows[l]) != a.pivots[l]) return false;
    if (l > 0 && a.pivots[l] <= a.pivots[l - 1]) return false;
  }
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = k + 1; j < a.size(); ++j) {
      for (int e : {1, -1}) {
        MalcevVector c =
            multiply(p, multiply(p, power(p, a.rows[k], -e), a.rows[j]), power(p, a.rows[k], e));
        if (!sift(p, a, k + 1, c)) return false;
      }
    }
  }
  return true;
}

std::optional<std::vector<Integer>> membership(const NilpotentPresentation& p,
                                               const CoordinateMatrix& a, const MalcevVector& h) {
  if (h.size() != p.basis_size()) {
    throw Error(ErrorKind::LengthMismatch, "Malcev vector length differs from the basis size");
  }
  auto exps = sift(p, a, 0, h);
  if (exps && product_of_powers(p, a.rows, *exps) != h) {
    throw std::logic_error("membership factorization does not reproduce the element");
  }
  return exps;
}

std::vector<BallEntry> ball(const NilpotentPresentation& p, std::size_t n) {
  std::vector<BallEntry> out;
  std::set<MalcevVector> seen;
  out.push_back({p.identity(), Word(p.alphabet()), 0});
  seen.insert(p.identity());
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].depth == n) continue;
    for (std::uint32_t code = 0; code < 2 * p.generator_count(); ++code) {
      Letter l = Letter::from_code(code);
      MalcevVector next = p.multiply_symbol(out[head].element, l.generator(), l.sign());
      if (!seen.insert(next).second) continue;
      Word w = out[head].word;
      w.push_back(l);
      out.push_back({std::move(next), std::move(w), out[head].depth + 1});
    }
  }
  return out;
}

namespace {

CoordinateMatrix subgroup_form(const NilpotentPresentation& p, std::span<const Word> subgroup) {
  std::vector<MalcevVector> rows;
  for (const Word& h : subgroup) rows.push_back(collect(p, h));
  return full_form(p, rows);
}

Word rebase(const Word& w, const AlphabetPtr& alphabet) {
  return Word(alphabet, w.letters());
}

}  // namespace

NilpotentClosest closest_element_nilpotent(const NilpotentPresentation& p,
                                           std::span<const Word> subgroup, const Word& g) {
  CoordinateMatrix a = subgroup_form(p, subgroup);
  MalcevVector base = collect(p, g);
  for (const BallEntry& b : ball(p, g.size())) {
    if (membership(p, a, multiply(p, base, b.element))) {
      return {reduce(concat(g, rebase(b.word, g.alphabet()))), b.depth};
    }
  }
  throw std::logic_error("no element of H within |g| of g");
}

std::optional<NilpotentClosest> shortest_element_nilpotent(const NilpotentPresentation& p,
                                                           std::span<const Word> subgroup) {
  std::size_t total = 0;
  bool nontrivial = false;
  for (const Word& h : subgroup) {
    total += h.size();
    nontrivial = nontrivial || !is_identity(collect(p, h));
  }
  if (!nontrivial) return std::nullopt;
  CoordinateMatrix a = subgroup_form(p, subgroup);
  for (const BallEntry& b : ball(p, total)) {
    if (b.depth == 0) continue;
    if (membership(p, a, b.element)) {
      return NilpotentClosest{rebase(b.word, subgroup.front().alphabet()), b.depth};
    }
  }
  throw std::logic_error("no nontrivial element of H within the total generator length");
}

}  // namespace grouplat
