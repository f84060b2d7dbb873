#include <doctest.h>

#include "grouplat/error.hpp"
#include "grouplat/nilpotent.hpp"
#include "grouplat/oracles.hpp"
#include "support.hpp"

using namespace grouplat;
using grouplat::test::kind_of;
using grouplat::test::w;

namespace {

std::vector<Word> gens(const AlphabetPtr& a, std::vector<std::string> text) {
  std::vector<Word> out;
  for (const auto& t : text) out.push_back(w(a, t));
  return out;
}

}  // namespace

TEST_SUITE("oracles") {

TEST_CASE("reduced word enumeration") {
  auto a = test::letters(2);
  std::size_t count = 0;
  std::size_t last = 0;
  bool ordered = true;
  for_each_reduced_word(a, 3, [&](const Word& x) {
    if (x.size() < last) ordered = false;
    last = x.size();
    CHECK(x.is_reduced());
    ++count;
    return true;
  });
  CHECK(ordered);
  CHECK(count == 1 + 4 + 12 + 36);

  std::size_t seen = 0;
  for_each_reduced_word(a, 5, [&](const Word&) { return ++seen < 3; });
  CHECK(seen == 3);
}

TEST_CASE("free closest") {
  auto a = test::letters(2);
  SearchBudget b;
  auto conj = gens(a, {"a b a^-1"});
  CHECK(oracle_closest_free(conj, w(a, "a b"), b) == 1);
  CHECK(oracle_closest_free(conj, w(a, "a b^2 a^-1"), b) == 0);
  std::vector<Word> none;
  CHECK(oracle_closest_free(none, w(a, "a b"), b) == 2);
  b.max_word_length = 2;
  CHECK(kind_of([&] { oracle_closest_free(conj, w(a, "a b a"), b); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("free shortest") {
  auto a = test::letters(2);
  SearchBudget b;
  CHECK(oracle_shortest_free(gens(a, {"a^2", "a b a^-1"}), b) == 2);
  CHECK_FALSE(oracle_shortest_free(std::vector<Word>{}, b));
  CHECK(oracle_shortest_free(gens(a, {"a b a^-1"}), b) == 3);
}

TEST_CASE("free subgroup distance") {
  auto a = test::letters(2);
  SearchBudget b;
  CHECK(oracle_distance_free(gens(a, {"a"}), gens(a, {"a b"}), b) == 1);
  CHECK(oracle_distance_free(gens(a, {"a"}), gens(a, {"a"}), b) == 0);
  CHECK(oracle_distance_free(gens(a, {"a b"}), gens(a, {"b a"}), b) == 2);
  CHECK(kind_of([&] { oracle_distance_free(std::vector<Word>{}, std::vector<Word>{}, b); }) ==
        ErrorKind::BothTrivial);
}

TEST_CASE("coset and rational distance") {
  auto a = test::letters(2);
  SearchBudget b;
  CHECK(oracle_coset_distance(gens(a, {"b"}), w(a, "a"), gens(a, {"b"}), w(a, ""), b) == 1);
  CHECK(oracle_coset_distance(gens(a, {"a"}), w(a, ""), gens(a, {"b"}), w(a, ""), b) == 0);
  b.max_word_length = 1;
  CHECK_FALSE(oracle_coset_distance(std::vector<Word>{}, w(a, "a b"), gens(a, {"b"}), w(a, ""), b));

  ReducedAcceptor abn(a, 2, 0);
  abn.add_transition(0, Letter(0, false), 1);
  abn.add_transition(1, Letter(1, false), 1);
  abn.set_accepting(1);
  ReducedAcceptor bs = subgroup_to_acceptor(stallings_graph(gens(a, {"b"}), a));
  SearchBudget wide;
  CHECK(oracle_rational_distance(abn, bs, wide) == 1);
  ReducedAcceptor empty(a, 1, 0);
  CHECK_FALSE(oracle_rational_distance(empty, bs, wide));
}

TEST_CASE("geodesic") {
  auto x = Alphabet::numbered("x", 2);
  SearchBudget b;
  CHECK(oracle_geodesic(gens(x, {"x1", "x1 x2"}), w(x, "x2"), b) == 2);
  CHECK(oracle_geodesic(gens(x, {"x1"}), w(x, "x1"), b) == 1);
  CHECK_FALSE(oracle_geodesic(gens(x, {"x1"}), w(x, "x2"), b));
  CHECK(oracle_geodesic(gens(x, {"x1"}), w(x, ""), b) == 0);
}

TEST_CASE("nilpotent subgroup enumeration") {
  auto p = free_nilpotent_class2(2);
  SearchBudget b;
  b.max_factorization_length = 2;
  std::vector<MalcevVector> x1{p.basis_vector(0)};
  auto cyclic = oracle_nilpotent_subgroup(p, x1, b);
  CHECK(cyclic.size() == 9);
  for (int k = -4; k <= 4; ++k) {
    MalcevVector e{Integer(k), Integer(0), Integer(0)};
    CHECK(cyclic.contains(e));
  }

  b.max_factorization_length = 4;
  std::vector<MalcevVector> h{power(p, p.basis_vector(0), 2), p.basis_vector(1)};
  MalcevVector c2{Integer(0), Integer(0), Integer(2)};
  CHECK(oracle_nilpotent_subgroup(p, h, b).contains(c2));

  auto trivial = oracle_nilpotent_subgroup(p, std::vector<MalcevVector>{}, b);
  REQUIRE(trivial.size() == 1);
  CHECK(is_identity(*trivial.begin()));
}

TEST_CASE("nilpotent rewriting") {
  auto p = free_nilpotent_class2(2);
  MalcevVector expected{Integer(2), Integer(2), Integer(1)};
  CHECK(oracle_collect(p, parse_word("x1 x2 x1 x2", p.alphabet())) == expected);
}

TEST_CASE("nilpotent brute force closest and shortest") {
  auto p = free_nilpotent_class2(2);
  std::vector<Word> x2{parse_word("x2", p.alphabet())};
  CHECK(oracle_closest_nilpotent(p, x2, parse_word("x1 x2", p.alphabet())) == 2);
  std::vector<Word> x1{parse_word("x1", p.alphabet())};
  CHECK(oracle_closest_nilpotent(p, x1, parse_word("x1 x2", p.alphabet())) == 1);
  std::vector<Word> sq{parse_word("x1^2", p.alphabet())};
  CHECK(oracle_shortest_nilpotent(p, sq) == 2);
  std::vector<Word> none{parse_word("x1 x1^-1", p.alphabet())};
  CHECK_FALSE(oracle_shortest_nilpotent(p, none));
}

}
