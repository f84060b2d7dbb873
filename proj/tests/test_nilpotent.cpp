#include <doctest.h>

#include <set>

#include "grouplat/error.hpp"
#include "grouplat/nilpotent.hpp"
#include "grouplat/oracles.hpp"
#include "support.hpp"

using namespace grouplat;
using grouplat::test::kind_of;

namespace {

MalcevVector v(std::initializer_list<long> xs) {
  MalcevVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Word xw(const NilpotentPresentation& p, const std::string& text) {
  return parse_word(text, p.alphabet());
}

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

/// y₁, y₂ generate; y₃ = [y₂, y₁], y₄ = [y₃, y₁]. Class 3, tails not all central.
NilpotentPresentation filiform() {
  return NilpotentPresentation::make(
      4, 2, {{1, 0, {{2, 1}}}, {2, 0, {{3, 1}}}}, {"x1", "x2", "c", "d"});
}

void check_triangular(const CoordinateMatrix& a) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK_FALSE(is_identity(a.rows[k]));
    CHECK(a.pivots[k] == pivot(a.rows[k]));
    CHECK(a.rows[k][a.pivots[k]] > 0);
    if (k > 0) CHECK(a.pivots[k - 1] < a.pivots[k]);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(a.rows[j][a.pivots[k]] >= 0);
      CHECK(a.rows[j][a.pivots[k]] < a.rows[k][a.pivots[k]]);
    }
  }
}

}  // namespace

TEST_SUITE("nilpotent") {

TEST_CASE("free class-2 presentations") {
  CHECK(free_nilpotent_class2(2).basis_size() == 3);
  CHECK(free_nilpotent_class2(3).basis_size() == 6);
  CHECK(free_nilpotent_class2(3).symbol_name(3) == "c12");
  CHECK(free_nilpotent_class2(3).symbol_name(5) == "c23");
  CHECK(kind_of([] { free_nilpotent_class2(0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("collect examples") {
  auto p = free_nilpotent_class2(2);
  CHECK(collect(p, xw(p, "x2 x1")) == v({1, 1, 1}));
  CHECK(collect(p, xw(p, "x1^-1 x2^-1 x1 x2")) == v({0, 0, -1}));
  CHECK(collect(p, xw(p, "x1 x2 x1 x2")) == v({2, 2, 1}));
  CHECK(collect(p, xw(p, "")) == v({0, 0, 0}));
  CHECK(kind_of([&] { collect(p, parse_word("a", Alphabet::make({"a"}))); }) ==
        ErrorKind::AlphabetMismatch);
}

TEST_CASE("multiply and power examples") {
  auto p = free_nilpotent_class2(2);
  CHECK(multiply(p, v({1, 0, 0}), v({0, 1, 0})) == v({1, 1, 0}));
  CHECK(multiply(p, v({0, 1, 0}), v({1, 0, 0})) == v({1, 1, 1}));
  CHECK(multiply(p, v({1, 1, 0}), v({1, 1, 0})) == v({2, 2, 1}));
  CHECK(power(p, v({1, 0, 0}), 5) == v({5, 0, 0}));
  CHECK(power(p, v({1, 1, 0}), -1) == v({-1, -1, 1}));
  CHECK(power(p, v({3, -2, 7}), 0) == v({0, 0, 0}));
  CHECK(inverse(p, v({1, 1, 0})) == v({-1, -1, 1}));
  CHECK(power(p, v({1, 1, 0}), Integer(1) << 80)[2] ==
        (Integer(1) << 80) * ((Integer(1) << 80) - 1) / 2);
}

TEST_CASE("product of powers examples") {
  auto p = free_nilpotent_class2(2);
  std::vector<MalcevVector> one{v({1, 0, 0})};
  CHECK(product_of_powers(p, one, ints({2})) == v({2, 0, 0}));
  std::vector<MalcevVector> two{v({1, 0, 0}), v({0, 1, 0})};
  CHECK(product_of_powers(p, two, ints({1, 1})) == v({1, 1, 0}));
  std::vector<MalcevVector> sq{v({2, 0, 0}), v({0, 1, 0})};
  CHECK(product_of_powers(p, sq, ints({-1, 2})) == v({-2, 2, 0}));
  CHECK(kind_of([&] { product_of_powers(p, sq, ints({1})); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("full form examples") {
  auto p = free_nilpotent_class2(2);
  std::vector<MalcevVector> rows{v({2, 0, 0}), v({0, 1, 0})};
  CoordinateMatrix a = full_form(p, rows);
  REQUIRE(a.size() == 3);
  CHECK(a.rows[0] == v({2, 0, 0}));
  CHECK(a.rows[1] == v({0, 1, 0}));
  CHECK(a.rows[2] == v({0, 0, 2}));
  CHECK(is_full(p, a));

  std::vector<MalcevVector> single{v({1, 0, 0})};
  CoordinateMatrix b = full_form(p, single);
  REQUIRE(b.size() == 1);
  CHECK(b.rows[0] == v({1, 0, 0}));

  CHECK(full_form(p, std::vector<MalcevVector>{}).size() == 0);
  std::vector<MalcevVector> zero{v({0, 0, 0})};
  CHECK(full_form(p, zero).size() == 0);

  std::vector<MalcevVector> gcd{v({4, 1, 0}), v({6, 0, 3})};
  CoordinateMatrix c = full_form(p, gcd);
  check_triangular(c);
  CHECK(c.rows[0][0] == 2);
  CHECK(is_full(p, c));
}

TEST_CASE("membership examples") {
  auto p = free_nilpotent_class2(2);
  std::vector<MalcevVector> rows{v({2, 0, 0}), v({0, 1, 0})};
  CoordinateMatrix a = full_form(p, rows);
  CHECK_FALSE(membership(p, a, v({0, 0, 1})));
  auto two = membership(p, a, v({0, 0, 2}));
  REQUIRE(two);
  CHECK(product_of_powers(p, a.rows, *two) == v({0, 0, 2}));
  for (const auto& r : rows) CHECK(membership(p, a, r));
  CHECK(membership(p, a, p.identity()));
  CHECK_FALSE(membership(p, a, v({1, 0, 0})));
}

TEST_CASE("full form keeps the subgroup and its history") {
  std::mt19937 rng(61);
  for (int t = 0; t < 100; ++t) {
    auto p = free_nilpotent_class2(test::uniform(rng, 2, 3));
    std::vector<MalcevVector> rows;
    for (std::size_t k = test::uniform(rng, 1, 3); k > 0; --k) {
      rows.push_back(collect(p, test::random_word(rng, p.alphabet(), test::uniform(rng, 1, 6))));
    }
    CoordinateMatrix a = full_form(p, rows);
    check_triangular(a);
    CHECK(is_full(p, a));
    for (const auto& r : rows) {
      auto e = membership(p, a, r);
      REQUIRE(e);
      CHECK(product_of_powers(p, a.rows, *e) == r);
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(reconstruct(p, rows, a, a.origin[k]) == a.rows[k]);
    }
    for (int k = 0; k < 5; ++k) {
      MalcevVector h = p.identity();
      for (std::size_t j = test::uniform(rng, 0, 4); j > 0; --j) {
        const auto& g = rows[test::uniform(rng, 0, rows.size() - 1)];
        h = multiply(p, h, test::uniform(rng, 0, 1) ? g : inverse(p, g));
      }
      CHECK(membership(p, a, h));
    }
  }
}

TEST_CASE("Heisenberg parity") {
  auto p = free_nilpotent_class2(2);
  std::vector<MalcevVector> rows{v({2, 0, 0}), v({0, 1, 0})};
  CoordinateMatrix a = full_form(p, rows);
  for (long x = -3; x <= 3; ++x) {
    for (long y = -2; y <= 2; ++y) {
      for (long z = -4; z <= 4; ++z) {
        bool even = x % 2 == 0 && z % 2 == 0;
        CHECK(membership(p, a, v({x, y, z})).has_value() == even);
      }
    }
  }
  SearchBudget b;
  b.max_factorization_length = 4;
  for (const auto& e : oracle_nilpotent_subgroup(p, rows, b)) {
    CHECK(e[0] % 2 == 0);
    CHECK(e[2] % 2 == 0);
  }
}

TEST_CASE("random words: collection is a homomorphism") {
  std::mt19937 rng(62);
  for (int t = 0; t < 300; ++t) {
    auto p = free_nilpotent_class2(test::uniform(rng, 1, 3));
    Word u = test::random_word(rng, p.alphabet(), test::uniform(rng, 0, 12));
    Word x = test::random_word(rng, p.alphabet(), test::uniform(rng, 0, 12));
    CHECK(multiply(p, collect(p, u), collect(p, x)) == collect(p, concat(u, x)));
    CHECK(is_identity(collect(p, concat(u, invert(u)))));
    CHECK(collect(p, u) == oracle_collect(p, u));
    MalcevVector g = collect(p, u);
    MalcevVector acc = p.identity();
    for (int n = 0; n <= 6; ++n) {
      CHECK(power(p, g, n) == acc);
      CHECK(power(p, g, -n) == inverse(p, acc));
      acc = multiply(p, acc, g);
    }
  }
}

TEST_CASE("user presentations") {
  auto p = filiform();
  CHECK(collect(p, parse_word("x2 x1", p.alphabet())) == v({1, 1, 1, 0}));
  CHECK(multiply(p, v({0, 0, 1, 0}), v({1, 0, 0, 0})) == v({1, 0, 1, 1}));
  CHECK(multiply(p, v({0, 1, 0, 0}), v({2, 0, 0, 0})) == v({2, 1, 2, 1}));
  CHECK(kind_of([&] { oracle_collect(p, parse_word("x1", p.alphabet())); }) == ErrorKind::InvalidArgument);

  std::mt19937 rng(63);
  for (int t = 0; t < 200; ++t) {
    Word u = test::random_word(rng, p.alphabet(), test::uniform(rng, 0, 10));
    Word x = test::random_word(rng, p.alphabet(), test::uniform(rng, 0, 10));
    CHECK(multiply(p, collect(p, u), collect(p, x)) == collect(p, concat(u, x)));
    CHECK(is_identity(collect(p, concat(u, invert(u)))));
    MalcevVector a = collect(p, u);
    MalcevVector b = collect(p, x);
    MalcevVector c = collect(p, test::random_word(rng, p.alphabet(), 4));
    CHECK(multiply(p, multiply(p, a, b), c) == multiply(p, a, multiply(p, b, c)));
    CHECK(power(p, a, 3) == multiply(p, a, multiply(p, a, a)));
  }

  for (int t = 0; t < 40; ++t) {
    std::vector<MalcevVector> rows;
    for (std::size_t k = test::uniform(rng, 1, 2); k > 0; --k) {
      rows.push_back(collect(p, test::random_word(rng, p.alphabet(), test::uniform(rng, 1, 5))));
    }
    CoordinateMatrix a = full_form(p, rows);
    check_triangular(a);
    CHECK(is_full(p, a));
    for (const auto& r : rows) CHECK(membership(p, a, r));
    SearchBudget b;
    b.max_factorization_length = 3;
    for (const auto& e : oracle_nilpotent_subgroup(p, rows, b)) CHECK(membership(p, a, e));
  }
}

TEST_CASE("invalid presentations") {
  auto bad = [](std::size_t m, std::size_t r, std::vector<CommutationRule> rules) {
    return kind_of([&] { NilpotentPresentation::make(m, r, rules); });
  };
  CHECK(bad(3, 2, {{1, 0, {{1, 1}}}}) == ErrorKind::InvalidPresentation);
  CHECK(bad(3, 2, {{1, 0, {{2, 1}}}, {1, 0, {{2, 1}}}}) == ErrorKind::InvalidPresentation);
  CHECK(bad(3, 2, {{0, 1, {{2, 1}}}}) == ErrorKind::InvalidPresentation);
  CHECK(bad(3, 2, {{1, 0, {{5, 1}}}}) == ErrorKind::InvalidPresentation);
  CHECK(bad(2, 3, {}) == ErrorKind::InvalidPresentation);
  CHECK(bad(0, 0, {}) == ErrorKind::InvalidPresentation);
  // The overlap y₃y₂y₁ collects to y₁y₂y₃y₄y₅ one way and y₁y₂y₃y₄ the other.
  CHECK(bad(5, 3, {{1, 0, {{3, 1}}}, {3, 2, {{4, 1}}}}) == ErrorKind::InvalidPresentation);
}

TEST_CASE("balls") {
  auto p = free_nilpotent_class2(2);
  CHECK(ball(p, 0).size() == 1);
  CHECK(ball(p, 1).size() == 5);
  CHECK(ball(p, 2).size() == 17);
  CHECK(ball(p, 2).size() == ball(p, 2).size());
  CHECK(ball(p, 3).size() == 53);
  CHECK(ball(p, 4).size() == 135);

  std::size_t prev = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto b = ball(p, n);
    CHECK(b.size() > prev);
    prev = b.size();
    std::set<MalcevVector> elements;
    for (const auto& e : b) {
      elements.insert(e.element);
      CHECK(e.word.size() == e.depth);
      CHECK(collect(p, e.word) == e.element);
    }
    CHECK(elements.size() == b.size());
    for (const auto& e : b) CHECK(elements.contains(inverse(p, e.element)));
    if (n > 0) {
      for (const auto& e : ball(p, n - 1)) CHECK(elements.contains(e.element));
    }
  }
}

TEST_CASE("closest element examples") {
  auto p = free_nilpotent_class2(2);
  std::vector<Word> x1{xw(p, "x1")};
  NilpotentClosest a = closest_element_nilpotent(p, x1, xw(p, "x1 x2"));
  CHECK(format_word(a.element) == "x1");
  CHECK(a.distance == 1);

  std::vector<Word> x2{xw(p, "x2")};
  NilpotentClosest b = closest_element_nilpotent(p, x2, xw(p, "x1 x2"));
  CHECK(b.element.empty());
  CHECK(b.distance == 2);

  NilpotentClosest c = closest_element_nilpotent(p, x2, xw(p, "x2^3"));
  CHECK(c.distance == 0);
  CHECK(format_word(c.element) == "x2^3");
}

TEST_CASE("shortest element examples") {
  auto p = free_nilpotent_class2(2);
  std::vector<Word> sq{xw(p, "x1^2")};
  auto a = shortest_element_nilpotent(p, sq);
  REQUIRE(a);
  CHECK(format_word(a->element) == "x1^2");
  CHECK(a->distance == 2);

  std::vector<Word> with_commutator{xw(p, "x1^2"), xw(p, "x2^-1 x1^-1 x2 x1")};
  auto b = shortest_element_nilpotent(p, with_commutator);
  REQUIRE(b);
  CHECK(b->distance == 2);
  CHECK(format_word(b->element) == "x1^2");

  std::vector<Word> trivial{xw(p, "x1 x1^-1"), xw(p, "")};
  CHECK_FALSE(shortest_element_nilpotent(p, trivial));
}

TEST_CASE("random instances: closest and shortest agree with brute force") {
  std::mt19937 rng(64);
  for (int t = 0; t < 40; ++t) {
    auto p = free_nilpotent_class2(2);
    std::vector<Word> gens;
    std::size_t total = test::uniform(rng, 1, 4);
    while (total > 0) {
      std::size_t len = test::uniform(rng, 1, total);
      gens.push_back(test::random_reduced(rng, p.alphabet(), len));
      total -= len;
    }
    Word g = test::random_reduced(rng, p.alphabet(), test::uniform(rng, 0, 3));
    NilpotentClosest c = closest_element_nilpotent(p, gens, g);
    CHECK(c.distance == oracle_closest_nilpotent(p, gens, g));
    auto s = shortest_element_nilpotent(p, gens);
    auto o = oracle_shortest_nilpotent(p, gens);
    REQUIRE(s.has_value() == o.has_value());
    if (s) CHECK(s->distance == *o);
  }
}

}
