#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "grouplat/words.hpp"

namespace grouplat {

using Integer = boost::multiprecision::cpp_int;

/// Malcev exponent [α₁,…,α_m] of y₁^α₁⋯y_m^α_m.
using MalcevVector = std::vector<Integer>;

/// Basis symbol with exponent, as used in tails.
struct Power {
  std::size_t symbol;
  Integer exponent;
};

/// y_j·y_i = y_i·y_j·tail for j > i. Pairs without a rule commute.
struct CommutationRule {
  std::size_t j;
  std::size_t i;
  std::vector<Power> tail;
};

/// Torsion-free polycyclic presentation on a Malcev basis y₁..y_m whose first
/// r symbols are the group generators x₁..x_r. Indices are 0-based.
class NilpotentPresentation {
 public:
  /// Throws InvalidPresentation if a tail mentions a symbol ≤ j, a rule is
  /// repeated or out of range, or the rules are inconsistent.
  static NilpotentPresentation make(std::size_t basis, std::size_t generators,
                                    std::vector<CommutationRule> rules,
                                    std::vector<std::string> symbol_names = {});

  std::size_t basis_size() const noexcept { return m_; }
  std::size_t generator_count() const noexcept { return r_; }
  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::string& symbol_name(std::size_t k) const { return names_.at(k); }
  const std::vector<CommutationRule>& rules() const noexcept { return rules_; }
  /// Tail of y_j·y_i (empty if they commute).
  const std::vector<Power>& tail(std::size_t j, std::size_t i) const;

  MalcevVector identity() const { return MalcevVector(m_); }
  MalcevVector basis_vector(std::size_t k) const;

  /// α·y_i^n.
  MalcevVector multiply_symbol(MalcevVector alpha, std::size_t i, const Integer& n) const;

 private:
  NilpotentPresentation() = default;

  using Images = std::vector<MalcevVector>;  // image of y_j for every j

  Images conjugation_power(std::size_t i, Integer n) const;
  Images compose(std::size_t i, const Images& outer, const Images& inner) const;
  MalcevVector apply(std::size_t i, const Images& phi, const MalcevVector& v) const;
  MalcevVector collect_tail(const std::vector<Power>& tail) const;
  void build_conjugations();
  void check_consistency() const;

  std::size_t m_ = 0;
  std::size_t r_ = 0;
  AlphabetPtr alphabet_;
  std::vector<std::string> names_;
  std::vector<CommutationRule> rules_;
  std::vector<std::vector<std::vector<Power>>> tails_;
  // conj_[i][j] = y_i⁻¹ y_j y_i, conj_inv_[i][j] = y_i y_j y_i⁻¹ (j > i).
  std::vector<Images> conj_;
  std::vector<Images> conj_inv_;
};

/// N_{r,2}: basis x₁..x_r then c_ij = [x_j, x_i] for i < j in lexicographic
/// order, with x_j x_i = x_i x_j c_ij and every c_ij central.
NilpotentPresentation free_nilpotent_class2(std::size_t r);

/// Malcev form of a word over x₁..x_r. The word's alphabet must have rank r.
MalcevVector collect(const NilpotentPresentation& p, const Word& w);
MalcevVector multiply(const NilpotentPresentation& p, const MalcevVector& u, const MalcevVector& v);
MalcevVector power(const NilpotentPresentation& p, const MalcevVector& u, const Integer& n);
MalcevVector inverse(const NilpotentPresentation& p, const MalcevVector& u);
/// g₁^k₁⋯g_n^k_n. Throws LengthMismatch.
MalcevVector product_of_powers(const NilpotentPresentation& p, std::span<const MalcevVector> gs,
                               std::span<const Integer> ks);

bool is_identity(const MalcevVector& v);
/// Index of the first nonzero entry, or v.size().
std::size_t pivot(const MalcevVector& v);

/// Every row the full form ever held is a product of powers of earlier ones;
/// node k < input count is input row k.
struct RowOrigin {
  std::vector<std::pair<std::size_t, Integer>> factors;
};

struct CoordinateMatrix {
  std::vector<MalcevVector> rows;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> origin;   // provenance node of each row
  std::vector<RowOrigin> provenance;
  std::size_t input_count = 0;

  std::size_t size() const noexcept { return rows.size(); }
};

/// Triangular full form generating the same subgroup as `rows`. Pivot entries
/// are positive and entries above a pivot lie in [0, pivot entry).
CoordinateMatrix full_form(const NilpotentPresentation& p, std::span<const MalcevVector> rows);

/// Replays the recorded operations for provenance node `node`.
MalcevVector reconstruct(const NilpotentPresentation& p, std::span<const MalcevVector> inputs,
                         const CoordinateMatrix& a, std::size_t node);

/// Triangular form plus closure: each conjugate of a later row by an earlier
/// row (or its inverse) lies in the span of the rows after the earlier one.
bool is_full(const NilpotentPresentation& p, const CoordinateMatrix& a);

/// Exponents l with h = h₁^l₁⋯h_s^l_s over the full-form rows, or nullopt.
std::optional<std::vector<Integer>> membership(const NilpotentPresentation& p,
                                               const CoordinateMatrix& a, const MalcevVector& h);

struct BallEntry {
  MalcevVector element;
  Word word;
  std::size_t depth;
};

/// All elements of word length ≤ n in breadth-first order, generators tried
/// in the order x₁, x₁⁻¹, x₂, …
std::vector<BallEntry> ball(const NilpotentPresentation& p, std::size_t n);

struct NilpotentClosest {
  Word element;
  std::size_t distance;
};

/// h = g·b for the first b of ball(|g|) with g·b ∈ H.
NilpotentClosest closest_element_nilpotent(const NilpotentPresentation& p,
                                           std::span<const Word> subgroup, const Word& g);

/// First nontrivial member of ball(N), N = total length of the generator
/// words; nullopt iff every generator is trivial in the group.
std::optional<NilpotentClosest> shortest_element_nilpotent(const NilpotentPresentation& p,
                                                           std::span<const Word> subgroup);

std::string format_malcev(const MalcevVector& v);

}  // namespace grouplat
