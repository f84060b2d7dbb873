// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "grouplat/error.hpp"
#include "grouplat/geodesic.hpp"
#include "grouplat/inverse_graph.hpp"
#include "grouplat/nilpotent.hpp"
#include "grouplat/oracles.hpp"
#include "grouplat/rational.hpp"

using namespace grouplat;
namespace t = grouplat::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

std::string show(const std::vector<Word>& gens) {
  std::string out = "<";
  for (std::size_t k = 0; k < gens.size(); ++k) out += (k ? ", " : "") + format_word(gens[k]);
  return out + ">";
}

std::size_t gap(const Word& x, const Word& y) { return concat_reduce(invert(x), y).size(); }

struct FreeInstance {
  AlphabetPtr alphabet;
  std::vector<Word> gens;
  Word g;
};

FreeInstance free_instance(std::mt19937& rng) {
  auto a = t::letters(t::uniform(rng, 1, 3));
  auto gens = t::random_subgroup(rng, a, 3, 6);
  Word g = t::random_reduced(rng, a, t::uniform(rng, 0, 6));
  return {a, std::move(gens), std::move(g)};
}

Outcome closest_free() {
  Outcome o;
  std::mt19937 rng(1001);
  auto start = std::chrono::steady_clock::now();
  SearchBudget budget;
  for (int n = 0; n < 500; ++n) {
    auto in = free_instance(rng);
    FoldedGraph h = stallings_graph(in.gens, in.alphabet);
    ClosestResult r = closest_element(h, in.g);
    std::size_t want = oracle_closest_free(in.gens, in.g, budget);
    o.expect(r.distance == want && contains(h, r.element) && gap(r.element, in.g) == r.distance,
             show(in.gens) + ", g = " + format_word(in.g) + ": got " + std::to_string(r.distance) +
                 ", oracle " + std::to_string(want));
  }
  double s = seconds_since(start);
  o.expect(s < 60, "runtime " + fmt_seconds(s));
  o.detail = "500 instances, " + fmt_seconds(s);
  return o;
}

Outcome closest_regression() {
  Outcome o;
  auto a = Alphabet::make({"a", "b"});
  std::vector<Word> gens{parse_word("a b a^-1", a)};
  FoldedGraph h = stallings_graph(gens, a);
  Word g = parse_word("a b", a);
  ClosestResult r = closest_element(h, g);
  o.expect(r.distance == 1, "distance " + std::to_string(r.distance));
  o.expect(contains(h, r.element), "witness not in H");
  o.expect(gap(r.element, g) == 1, "witness distance differs");
  o.detail = "h = " + format_word(r.element) + ", d = " + std::to_string(r.distance);
  return o;
}

Outcome shortest_free() {
  Outcome o;
  std::mt19937 rng(1003);
  std::size_t short_budget_misses = 0;
  for (int n = 0; n < 500; ++n) {
    auto in = free_instance(rng);
    FoldedGraph h = stallings_graph(in.gens, in.alphabet);
    auto s = shortest_element(h);
    SearchBudget budget;
    budget.max_word_length = 2 * h.edge_count();
    auto want = oracle_shortest_free(in.gens, budget);
    bool same = s.has_value() == want.has_value() && (!s || (s->size() == *want && contains(h, *s)));
    o.expect(same, show(in.gens) + ": got " + (s ? std::to_string(s->size()) : "none") + ", oracle " +
                       (want ? std::to_string(*want) : "none"));
    budget.max_word_length = h.edge_count() + 1;
    auto narrow = oracle_shortest_free(in.gens, budget);
    if (narrow != want) ++short_budget_misses;
  }
  o.detail = "500 instances, oracle budget 2|E|; |E| + 1 falls short on " +
             std::to_string(short_budget_misses);
  return o;
}

Outcome subgroup_distance_free() {
  Outcome o;
  std::mt19937 rng(1004);
  std::size_t zeros = 0;
  for (int n = 0; n < 200; ++n) {
    auto a = t::letters(t::uniform(rng, 1, 3));
    auto hg = t::random_subgroup(rng, a, 3, 4);
    auto kg = t::random_subgroup(rng, a, 3, 4);
    FoldedGraph h = stallings_graph(hg, a);
    FoldedGraph k = stallings_graph(kg, a);
    PairDistance d = subgroup_distance(h, k);
    SearchBudget budget;
    budget.max_word_length = std::max<std::size_t>({6, d.left.size(), d.right.size()});
    std::size_t want = oracle_distance_free(hg, kg, budget);
    std::string tag = show(hg) + " vs " + show(kg);
    o.expect(d.distance == want,
             tag + ": got " + std::to_string(d.distance) + ", oracle " + std::to_string(want));
    o.expect(contains(h, d.left) && contains(k, d.right) && gap(d.left, d.right) == d.distance,
             tag + ": bad witness");
    if (d.distance == 0) {
      ++zeros;
      o.expect(!d.left.empty() && contains(h, d.left) && contains(k, d.left), tag + ": trivial d = 0 witness");
    }
  }
  o.detail = "200 pairs, " + std::to_string(zeros) + " with d = 0";
  return o;
}

Outcome rational_consistency() {
  Outcome o;
  std::mt19937 rng(1005);
  for (int n = 0; n < 100; ++n) {
    auto a = t::letters(t::uniform(rng, 1, 3));
    auto hg = t::random_subgroup(rng, a, 2, 4);
    auto kg = t::random_subgroup(rng, a, 2, 4);
    bool cosets = n % 2 == 1;
    Word g1 = cosets ? t::random_reduced(rng, a, t::uniform(rng, 0, 3)) : Word(a);
    Word g2 = cosets ? t::random_reduced(rng, a, t::uniform(rng, 0, 3)) : Word(a);
    FoldedGraph h = stallings_graph(hg, a);
    FoldedGraph k = stallings_graph(kg, a);
    ReducedAcceptor A = cosets ? coset_to_acceptor(h, g1) : subgroup_to_acceptor(h);
    ReducedAcceptor B = cosets ? coset_to_acceptor(k, g2) : subgroup_to_acceptor(k);
    PairDistance d = rational_distance(A, B);
    SearchBudget budget;
    budget.max_word_length = std::max<std::size_t>({6, d.left.size(), d.right.size()});
    auto want = oracle_coset_distance(hg, g1, kg, g2, budget);
    std::string tag = show(hg) + format_word(g1) + " vs " + show(kg) + format_word(g2);
    o.expect(want && d.distance == *want, tag + ": got " + std::to_string(d.distance));
    o.expect(A.accepts(d.left) && B.accepts(d.right) && gap(d.left, d.right) == d.distance,
             tag + ": bad witness");
    o.expect(rational_distance(A, A).distance == 0, tag + ": d(A, A) != 0");
    o.expect(rational_distance(B, A).distance == d.distance, tag + ": not symmetric");
    if (!cosets) o.expect(d.distance == 0, tag + ": subgroups share the identity");
  }
  o.detail = "50 subgroup pairs, 50 coset pairs";
  return o;
}

struct GeodesicInstance {
  std::vector<Word> gens;
  Word w;
  BouquetGraph completed;
};

std::vector<GeodesicInstance>& geodesic_instances() {
  static std::vector<GeodesicInstance> all;
  return all;
}

Outcome geodesic_free() {
  Outcome o;
  std::mt19937 rng(1006);
  auto start = std::chrono::steady_clock::now();
  SearchBudget budget;
  auto& all = geodesic_instances();
  all.clear();
  for (int n = 0; n < 200; ++n) {
    auto a = t::letters(t::uniform(rng, 1, 3));
    auto gens = t::random_subgroup(rng, a, 3, 4);
    std::vector<Letter> product;
    for (std::size_t k = t::uniform(rng, 0, 5); k > 0; --k) {
      product.push_back(Letter(t::uniform(rng, 0, gens.size() - 1), t::uniform(rng, 0, 1) == 1));
    }
    Word w = evaluate(product, gens);
    BouquetGraph g = complete(bouquet(gens));
    Factorization u = geodesic(g, w);
    auto want = oracle_geodesic(gens, w, budget);
    o.expect(evaluate(u, gens) == w, show(gens) + ", " + format_word(w) + ": wrong product");
    o.expect(want && u.length() == *want, show(gens) + ", " + format_word(w) + ": got " +
                                              std::to_string(u.length()) + ", oracle " +
                                              (want ? std::to_string(*want) : "none"));
    all.push_back({std::move(gens), std::move(w), std::move(g)});
  }
  double s = seconds_since(start);
  o.expect(s < 120, "runtime " + fmt_seconds(s));
  o.detail = "200 instances, " + fmt_seconds(s);
  return o;
}

Outcome completion_bounds() {
  Outcome o;
  std::mt19937 rng(1007);
  auto& all = geodesic_instances();
  o.expect(all.size() == 200, "geodesic instances missing");
  std::size_t circuits = 0;
  std::size_t most = 0;
  for (const auto& in : all) {
    const BouquetGraph& g = in.completed;
    std::size_t v = g.vertex_count();
    std::size_t bound = v * v * (2 * g.rank() + 1);
    most = std::max(most, g.added_edge_count());
    o.expect(g.added_edge_count() <= bound, show(in.gens) + ": " + std::to_string(g.added_edge_count()) +
                                                " added edges, bound " + std::to_string(bound));
    for (int k = 0; k < 200; ++k) {
      auto path = t::random_circuit(rng, g, t::uniform(rng, 0, 16));
      auto [mu, nu] = t::circuit_images(g, path);
      o.expect(mu == nu, show(in.gens) + ": circuit " + format_word(mu) + " evaluates to " + format_word(nu));
      ++circuits;
    }
  }
  o.detail = std::to_string(circuits) + " circuits, at most " + std::to_string(most) + " added edges";
  return o;
}

Outcome nilpotent_collection() {
  Outcome o;
  std::mt19937 rng(1008);
  for (int n = 0; n < 1000; ++n) {
    auto p = free_nilpotent_class2(t::uniform(rng, 1, 3));
    Word u = t::random_word(rng, p.alphabet(), t::uniform(rng, 0, 12));
    Word v = t::random_word(rng, p.alphabet(), t::uniform(rng, 0, 12));
    o.expect(multiply(p, collect(p, u), collect(p, v)) == collect(p, concat(u, v)),
             "homomorphism fails on " + format_word(u) + " | " + format_word(v));
    o.expect(is_identity(collect(p, concat(u, invert(u)))), "w w^-1 != 1 for " + format_word(u));
    MalcevVector g = collect(p, u);
    MalcevVector acc = p.identity();
    MalcevVector acc_inv = p.identity();
    MalcevVector g_inv = inverse(p, g);
    for (int k = 0; k <= 6; ++k) {
      o.expect(power(p, g, k) == acc, "power " + std::to_string(k) + " of " + format_malcev(g));
      o.expect(power(p, g, -k) == acc_inv, "power -" + std::to_string(k) + " of " + format_malcev(g));
      acc = multiply(p, acc, g);
      acc_inv = multiply(p, acc_inv, g_inv);
    }
  }
  o.detail = "1000 pairs";
  return o;
}

Outcome nilpotent_membership() {
  Outcome o;
  auto p = free_nilpotent_class2(2);
  std::mt19937 rng(1009);
  SearchBudget budget;
  budget.max_factorization_length = 4;
  std::size_t checked = 0;
  for (int n = 0; n < 100; ++n) {
    std::vector<MalcevVector> rows;
    for (std::size_t k = t::uniform(rng, 1, 3); k > 0; --k) {
      rows.push_back(collect(p, t::random_word(rng, p.alphabet(), t::uniform(rng, 1, 4))));
    }
    CoordinateMatrix a = full_form(p, rows);
    for (const auto& e : oracle_nilpotent_subgroup(p, rows, budget)) {
      auto ex = membership(p, a, e);
      o.expect(ex.has_value(), format_malcev(e) + " not found");
      if (ex) o.expect(product_of_powers(p, a.rows, *ex) == e, format_malcev(e) + " does not reverify");
      ++checked;
    }
  }
  std::vector<MalcevVector> h{power(p, p.basis_vector(0), 2), p.basis_vector(1)};
  CoordinateMatrix a = full_form(p, h);
  MalcevVector c{Integer(0), Integer(0), Integer(1)};
  MalcevVector c2{Integer(0), Integer(0), Integer(2)};
  o.expect(!membership(p, a, c), "c12 in <x1^2, x2>");
  auto sq = membership(p, a, c2);
  o.expect(sq && product_of_powers(p, a.rows, *sq) == c2, "c12^2 not in <x1^2, x2>");
  o.detail = "100 subgroups, " + std::to_string(checked) + " elements";
  return o;
}

Outcome nilpotent_closest_shortest() {
  Outcome o;
  auto p = free_nilpotent_class2(2);
  std::mt19937 rng(1010);
  for (int n = 0; n < 50; ++n) {
    std::vector<Word> gens;
    std::size_t total = t::uniform(rng, 1, 4);
    while (total > 0) {
      std::size_t len = t::uniform(rng, 1, total);
      gens.push_back(t::random_word(rng, p.alphabet(), len));
      total -= len;
    }
    Word g = t::random_word(rng, p.alphabet(), t::uniform(rng, 0, 3));
    std::size_t got = closest_element_nilpotent(p, gens, g).distance;
    std::size_t want = oracle_closest_nilpotent(p, gens, g);
    o.expect(got == want, show(gens) + ", g = " + format_word(g) + ": closest " + std::to_string(got) +
                              ", brute force " + std::to_string(want));
    auto s = shortest_element_nilpotent(p, gens);
    auto bs = oracle_shortest_nilpotent(p, gens);
    o.expect(s.has_value() == bs.has_value() && (!s || s->distance == *bs),
             show(gens) + ": shortest differs");
  }
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto b = ball(p, n);
    sizes.push_back(b.size());
    std::set<MalcevVector> elements;
    for (const auto& e : b) elements.insert(e.element);
    for (const auto& e : b) {
      o.expect(elements.contains(inverse(p, e.element)), "ball not symmetric");
    }
  }
  o.expect(sizes[0] == 1 && sizes[1] == 5, "small balls");
  for (std::size_t n = 1; n < sizes.size(); ++n) o.expect(sizes[n] > sizes[n - 1], "ball growth");
  std::string list;
  for (auto s : sizes) list += (list.empty() ? "" : ", ") + std::to_string(s);
  o.detail = "50 instances, ball sizes " + list;
  return o;
}

Outcome fold_confluence() {
  Outcome o;
  std::mt19937 rng(1011);
  for (int n = 0; n < 100; ++n) {
    auto a = t::letters(t::uniform(rng, 1, 3));
    auto gens = t::random_subgroup(rng, a, 3, 6);
    LabeledGraph g = wedge(gens, a);
    std::string canon = fold(g).canonical_form();
    std::vector<std::size_t> order(g.edges.size());
    std::iota(order.begin(), order.end(), 0);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(order.begin(), order.end(), rng);
      o.expect(fold_with_image(g, order).graph.canonical_form() == canon, show(gens) + ": fold order matters");
    }
  }
  o.detail = "100 wedges, 10 orders each";
  return o;
}

std::string run_cli(const std::string& args, int& status) {
  std::string cmd = std::string(GROUPLAT_CLI) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return {};
  }
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_examples() {
  Outcome o;
  for (const char* name : {"closest", "geodesic", "nilp_collect"}) {
    std::string task = std::string(GROUPLAT_TASKS) + "/" + name + ".json";
    std::string want = slurp(std::string(GROUPLAT_TASKS) + "/" + name + ".expected");
    int status = 0;
    std::string out = run_cli("run " + task, status);
    o.expect(status == 0 && out == want, std::string(name) + ": got " + out);
    std::string checked = run_cli("run --check-oracle 6 " + task, status);
    o.expect(status == 0 && checked.find("\"verified\":true") != std::string::npos,
             std::string(name) + ": oracle check " + checked);
  }
  o.detail = "3 task files";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"closest element, free groups", closest_free},
      {"closest element regression <aba^-1>, ab", closest_regression},
      {"shortest element, free groups", shortest_free},
      {"subgroup distance", subgroup_distance_free},
      {"rational distance consistency", rational_consistency},
      {"subgroup geodesics", geodesic_free},
      {"completion bounds and circuit images", completion_bounds},
      {"nilpotent collection", nilpotent_collection},
      {"nilpotent membership", nilpotent_membership},
      {"nilpotent closest and shortest", nilpotent_closest_shortest},
      {"fold confluence", fold_confluence},
      {"CLI examples", cli_examples},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << k + 1 << " " << criteria[k].name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << '\n';
    for (const auto& f : o.failures) std::cout << "    " << f << '\n';
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
