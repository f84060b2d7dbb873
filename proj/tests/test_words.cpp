#include <doctest.h>

#include "grouplat/error.hpp"
#include "grouplat/words.hpp"
#include "support.hpp"

using namespace grouplat;
using grouplat::test::w;

TEST_SUITE("words") {

TEST_CASE("reduce cancels adjacent inverse pairs") {
  auto a = Alphabet::make({"a", "b", "c"});
  CHECK(format_word(reduce(w(a, "a b b^-1 c"))) == "a c");
  CHECK(reduce(w(a, "a a^-1")).empty());
  CHECK(format_word(reduce(w(a, "a b^-1 b a^-1 a"))) == "a");
  CHECK(reduce(w(a, "a b^-1 b a^-1 a")).is_reduced());
}

TEST_CASE("invert reverses and flips") {
  auto a = Alphabet::make({"a", "b"});
  CHECK(format_word(invert(w(a, "a b"))) == "b^-1 a^-1");
  CHECK(invert(w(a, "")).empty());
  CHECK(format_word(invert(w(a, "a^-1"))) == "a");
}

TEST_CASE("concat_reduce") {
  auto a = Alphabet::make({"a", "b", "c"});
  CHECK(format_word(concat_reduce(w(a, "a b"), w(a, "b^-1 c"))) == "a c");
  CHECK(format_word(concat_reduce(w(a, "a"), w(a, ""))) == "a");
  CHECK(concat_reduce(w(a, "a b a^-1"), w(a, "a b^-1 a^-1")).empty());
  auto other = Alphabet::make({"a", "b", "c"});
  CHECK_THROWS_AS(concat_reduce(w(a, "a"), w(other, "a")), Error);
}

TEST_CASE("parse_word syntax") {
  auto a = Alphabet::make({"a", "b", "c"});
  Word x = w(a, "a b^-1 c^2");
  REQUIRE(x.size() == 4);
  CHECK(x[0] == Letter(0, false));
  CHECK(x[1] == Letter(1, true));
  CHECK(x[2] == Letter(2, false));
  CHECK(x[3] == Letter(2, false));
  CHECK(w(a, "").empty());
  CHECK(w(a, "  a   a^-1 ").size() == 2);

  auto numbered = Alphabet::make({"x1", "x2"});
  try {
    parse_word("x1 X1", numbered);
    FAIL("expected UnknownGenerator");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownGenerator);
    CHECK(e.is_parse_error());
  }
  for (const char* bad : {"a^0", "a^", "a^x", "a^-", "a^1.5"}) {
    try {
      parse_word(bad, a);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedExponent);
    }
  }
}

TEST_CASE("compact syntax") {
  auto a = Alphabet::make({"a", "b"});
  Word x = parse_compact("abA", a);
  CHECK(format_word(x) == "a b a^-1");
  CHECK(format_compact(x) == "abA");
  CHECK(format_compact(w(a, "b^-2")) == "BB");
  CHECK_THROWS_AS(parse_compact("ac", a), Error);
  CHECK_FALSE(Alphabet::make({"x1"})->supports_compact());
}

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet::make({}), Error);
  CHECK_THROWS_AS(Alphabet::make({"a", "a"}), Error);
  CHECK_THROWS_AS(Alphabet::make({""}), Error);
  CHECK_THROWS_AS(Alphabet::make({"a b"}), Error);
  CHECK(Alphabet::numbered("x", 3)->name(2) == "x3");
}

TEST_CASE("letter order puts each inverse right after its generator") {
  CHECK(Letter(0, false) < Letter(0, true));
  CHECK(Letter(0, true) < Letter(1, false));
  CHECK(Letter(3, true).inverse() == Letter(3, false));
}

TEST_CASE("random words: reduction invariants") {
  std::mt19937 rng(11);
  auto a = test::letters(3);
  for (int t = 0; t < 10000; ++t) {
    Word x = test::random_word(rng, a, test::uniform(rng, 0, 64));
    Word r = reduce(x);
    CHECK(r.is_reduced());
    CHECK(reduce(r) == r);
    CHECK(r.size() <= x.size());
    CHECK(concat_reduce(x, invert(x)).empty());
    CHECK(parse_word(format_word(x), a) == x);
  }
}

TEST_CASE("random words: length of a product") {
  std::mt19937 rng(12);
  auto a = test::letters(2);
  for (int t = 0; t < 2000; ++t) {
    Word u = test::random_reduced(rng, a, test::uniform(rng, 0, 10));
    Word v = test::random_reduced(rng, a, test::uniform(rng, 0, 10));
    std::size_t n = concat_reduce(u, v).size();
    std::size_t lo = u.size() > v.size() ? u.size() - v.size() : v.size() - u.size();
    CHECK(n >= lo);
    CHECK(n <= u.size() + v.size());
    CHECK((n + u.size() + v.size()) % 2 == 0);
  }
}

}
