#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "grouplat/inverse_graph.hpp"
#include "grouplat/nilpotent.hpp"
#include "grouplat/rational.hpp"
#include "grouplat/words.hpp"

// Exhaustive reference implementations. They are deliberately naive and share
// nothing with the solvers beyond free reduction, folding-based membership
// and Malcev multiplication.

namespace grouplat {

struct SearchBudget {
  std::size_t max_word_length = 6;
  std::size_t max_factorization_length = 5;
  std::size_t max_candidates = 5'000'000;
};

/// Calls visit(word) for every reduced word of length ≤ n, shortest first,
/// in letter order within each length. Stops early if visit returns false.
template <class Visit>
void for_each_reduced_word(const AlphabetPtr& alphabet, std::size_t n, Visit&& visit);

/// d(g, H), by testing every reduced u with |u| ≤ |g| for u ∈ Hg.
/// Throws BudgetExceeded if |g| > max_word_length.
std::size_t oracle_closest_free(std::span<const Word> gens, const Word& g,
                                const SearchBudget& budget);

/// Length of a shortest nontrivial element of H within max_word_length.
std::optional<std::size_t> oracle_shortest_free(std::span<const Word> gens,
                                                const SearchBudget& budget);

/// min |h⁻¹k| over h ∈ H, k ∈ K of length ≤ max_word_length, (h, k) ≠ (ε, ε).
/// Throws BudgetExceeded if the pair count exceeds max_candidates.
std::size_t oracle_distance_free(std::span<const Word> gens1, std::span<const Word> gens2,
                                 const SearchBudget& budget);

/// min |r⁻¹s| over r ∈ H₁g₁, s ∈ H₂g₂ of length ≤ max_word_length; nullopt
/// if a coset has no element that short.
std::optional<std::size_t> oracle_coset_distance(std::span<const Word> gens1, const Word& g1,
                                                 std::span<const Word> gens2, const Word& g2,
                                                 const SearchBudget& budget);

/// min |r⁻¹s| over accepted words of length ≤ max_word_length; nullopt if
/// either acceptor accepts nothing that short.
std::optional<std::size_t> oracle_rational_distance(const ReducedAcceptor& a,
                                                    const ReducedAcceptor& b,
                                                    const SearchBudget& budget);

/// Least number of factors h_j^±1 whose product reduces to w, searching up to
/// max_factorization_length.
std::optional<std::size_t> oracle_geodesic(std::span<const Word> gens, const Word& w,
                                           const SearchBudget& budget);

/// Products of at most max_factorization_length factors g^e, e ∈ [−2, 2].
/// Throws BudgetExceeded if more than max_candidates elements appear.
std::set<MalcevVector> oracle_nilpotent_subgroup(const NilpotentPresentation& p,
                                                 std::span<const MalcevVector> gens,
                                                 const SearchBudget& budget);

/// Collection by literal rewriting of adjacent out-of-order symbols. Only for
/// presentations whose tails are central (no rule mentions a tail symbol).
MalcevVector oracle_collect(const NilpotentPresentation& p, const Word& w);

/// Elements of H reachable from the identity by multiplying with generators
/// and their inverses without leaving the box |coordinate| ≤ bound.
std::set<MalcevVector> oracle_subgroup_box(const NilpotentPresentation& p,
                                           std::span<const Word> gens, const Integer& bound);

/// Brute-force d(g, H) in a nilpotent group: smallest depth of b ∈ ball(|g|)
/// with g·b in the box-bounded closure of H.
std::size_t oracle_closest_nilpotent(const NilpotentPresentation& p, std::span<const Word> gens,
                                     const Word& g);

/// Brute-force shortest nontrivial element length, or nullopt if H is trivial.
std::optional<std::size_t> oracle_shortest_nilpotent(const NilpotentPresentation& p,
                                                     std::span<const Word> gens);

template <class Visit>
void for_each_reduced_word(const AlphabetPtr& alphabet, std::size_t n, Visit&& visit) {
  const auto letters = static_cast<std::uint32_t>(2 * alphabet->rank());
  std::vector<Letter> w;
  bool stopped = false;
  auto extend = [&](auto&& self, std::size_t len) -> void {
    if (stopped) return;
    if (w.size() == len) {
      stopped = !visit(Word(alphabet, w));
      return;
    }
    for (std::uint32_t c = 0; c < letters && !stopped; ++c) {
      Letter l = Letter::from_code(c);
      if (!w.empty() && w.back() == l.inverse()) continue;
      w.push_back(l);
      self(self, len);
      w.pop_back();
    }
  };
  for (std::size_t len = 0; len <= n && !stopped; ++len) extend(extend, len);
}

}  // namespace grouplat
