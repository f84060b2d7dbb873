#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "grouplat/inverse_graph.hpp"
#include "grouplat/oracles.hpp"
#include "support.hpp"

using namespace grouplat;
using grouplat::test::w;

namespace {

FoldedGraph sg(const AlphabetPtr& a, std::vector<std::string> gens) {
  std::vector<Word> ws;
  for (const auto& g : gens) ws.push_back(w(a, g));
  return stallings_graph(ws, a);
}

}  // namespace

TEST_SUITE("inverse_graph") {

TEST_CASE("wedge") {
  auto a = Alphabet::make({"a", "b", "c"});
  std::vector<Word> one{w(a, "a")};
  LabeledGraph g1 = wedge(one, a);
  CHECK(g1.vertex_count == 1);
  CHECK(g1.edges.size() == 1);

  std::vector<Word> two{w(a, "a b")};
  LabeledGraph g2 = wedge(two, a);
  CHECK(g2.vertex_count == 2);
  CHECK(g2.edges.size() == 2);

  std::vector<Word> trivial{w(a, "a a^-1")};
  LabeledGraph g3 = wedge(trivial, a);
  CHECK(g3.vertex_count == 1);
  CHECK(g3.edges.empty());
}

TEST_CASE("folding examples") {
  auto a = Alphabet::make({"a", "b", "c"});
  FoldedGraph aa = sg(a, {"a", "a"});
  CHECK(aa.vertex_count() == 1);
  CHECK(aa.edge_count() == 1);

  FoldedGraph abac = sg(a, {"a b", "a c"});
  CHECK(abac.vertex_count() == 2);
  CHECK(abac.edge_count() == 3);
  Vertex p = abac.target(0, Letter(0, false));
  CHECK(p == 1);
  CHECK(abac.target(p, Letter(1, false)) == 0);
  CHECK(abac.target(p, Letter(2, false)) == 0);

  FoldedGraph conj = sg(a, {"a b a^-1"});
  CHECK(conj.vertex_count() == 2);
  CHECK(conj.edge_count() == 2);
  CHECK(conj.target(1, Letter(1, false)) == 1);
}

TEST_CASE("contains") {
  auto a = Alphabet::make({"a", "b"});
  CHECK(contains(sg(a, {"a^2", "b"}), w(a, "a a b")));
  CHECK(contains(sg(a, {"a b"}), w(a, "")));
  CHECK_FALSE(contains(sg(a, {"a^2"}), w(a, "a")));
  CHECK(contains(sg(a, {"a^2"}), w(a, "a b b^-1 a")));
}

TEST_CASE("shortest coset representative") {
  auto a = Alphabet::make({"a", "b"});
  CHECK(format_word(shortest_coset_rep(sg(a, {"a b a^-1"}), w(a, "a b"))) == "a");
  CHECK(shortest_coset_rep(sg(a, {"a b"}), w(a, "a b a b")).empty());
  std::vector<Word> none;
  CHECK(format_word(shortest_coset_rep(stallings_graph(none, a), w(a, "a b"))) == "a b");
}

TEST_CASE("closest element") {
  auto a = Alphabet::make({"a", "b"});
  ClosestResult r = closest_element(sg(a, {"a b a^-1"}), w(a, "a b"));
  CHECK(format_word(r.element) == "a b a^-1");
  CHECK(r.distance == 1);

  ClosestResult in = closest_element(sg(a, {"a b a^-1"}), w(a, "a b^3 a^-1"));
  CHECK(format_word(in.element) == "a b^3 a^-1");
  CHECK(in.distance == 0);

  std::vector<Word> none;
  ClosestResult t = closest_element(stallings_graph(none, a), w(a, "a b"));
  CHECK(t.element.empty());
  CHECK(t.distance == 2);
}

TEST_CASE("shortest element") {
  auto a = Alphabet::make({"a", "b"});
  auto s = shortest_element(sg(a, {"a^2", "a b a^-1"}));
  REQUIRE(s);
  CHECK(format_word(*s) == "a^2");

  std::vector<Word> none;
  CHECK_FALSE(shortest_element(stallings_graph(none, a)));

  auto c = shortest_element(sg(a, {"a b a^-1"}));
  REQUIRE(c);
  CHECK(format_word(*c) == "a b a^-1");

  // The stem is walked twice, so the loop is longer than the edge count.
  FoldedGraph stem = sg(a, {"b^2 a b^-2"});
  CHECK(stem.edge_count() == 3);
  auto d = shortest_element(stem);
  REQUIRE(d);
  CHECK(format_word(*d) == "b^2 a b^-2");
  std::vector<Word> gens{w(a, "b^2 a b^-2")};
  SearchBudget b;
  b.max_word_length = 2 * stem.edge_count();
  CHECK(oracle_shortest_free(gens, b) == 5);
}

TEST_CASE("DOT export") {
  auto a = Alphabet::make({"a", "b"});
  std::string loop = export_dot(sg(a, {"a"}).to_labeled(), "H");
  CHECK(loop ==
        "digraph \"H\" {\n  rankdir=LR;\n  node [shape=circle];\n  0 [shape=doublecircle];\n"
        "  0 -> 0 [label=\"a\"];\n}\n");
  std::vector<Word> none;
  std::string empty = export_dot(stallings_graph(none, a).to_labeled(), "H");
  CHECK(std::count(empty.begin(), empty.end(), '>') == 0);
  std::vector<Word> ab{w(a, "a b")};
  std::string two = export_dot(wedge(ab, a), "G");
  CHECK(std::count(two.begin(), two.end(), '>') == 2);
  CHECK(two.find("  1;\n") != std::string::npos);
}

TEST_CASE("random subgroups: membership of products of generators") {
  std::mt19937 rng(21);
  auto a = test::letters(3);
  for (int t = 0; t < 100; ++t) {
    auto gens = test::random_subgroup(rng, a, 3, 6);
    FoldedGraph h = stallings_graph(gens, a);
    for (const Word& g : gens) CHECK(contains(h, g));
    for (int k = 0; k < 5; ++k) {
      Word x(a);
      std::size_t n = test::uniform(rng, 0, 6);
      for (std::size_t j = 0; j < n; ++j) {
        const Word& g = gens[test::uniform(rng, 0, gens.size() - 1)];
        x = concat(x, test::uniform(rng, 0, 1) ? g : invert(g));
      }
      CHECK(contains(h, x));
    }
  }
}

TEST_CASE("random subgroups: folding is confluent") {
  std::mt19937 rng(22);
  auto a = test::letters(3);
  for (int t = 0; t < 50; ++t) {
    auto gens = test::random_subgroup(rng, a, 3, 6);
    LabeledGraph g = wedge(gens, a);
    std::string canon = fold(g).canonical_form();
    std::vector<std::size_t> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(order.begin(), order.end(), rng);
      CHECK(fold_with_image(g, order).graph.canonical_form() == canon);
    }
  }
}

TEST_CASE("random instances: closest and shortest agree with exhaustive search") {
  std::mt19937 rng(23);
  SearchBudget budget;
  for (int t = 0; t < 100; ++t) {
    auto a = test::letters(test::uniform(rng, 1, 3));
    auto gens = test::random_subgroup(rng, a, 3, 6);
    FoldedGraph h = stallings_graph(gens, a);
    Word g = test::random_reduced(rng, a, test::uniform(rng, 0, 6));

    ClosestResult r = closest_element(h, g);
    CHECK(contains(h, r.element));
    CHECK(concat_reduce(invert(r.element), g).size() == r.distance);
    CHECK(r.distance == oracle_closest_free(gens, g, budget));
    CHECK((r.distance == 0) == contains(h, g));

    auto s = shortest_element(h);
    SearchBudget girth;
    girth.max_word_length = 2 * h.edge_count();
    auto o = oracle_shortest_free(gens, girth);
    REQUIRE(s.has_value() == o.has_value());
    if (s) {
      CHECK(s->size() == *o);
      CHECK(s->is_reduced());
      CHECK(contains(h, *s));
    }
  }
}

}
