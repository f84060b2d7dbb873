#include "task.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "grouplat/error.hpp"
#include "grouplat/inverse_graph.hpp"
#include "grouplat/nilpotent.hpp"
#include "grouplat/oracles.hpp"
#include "grouplat/rational.hpp"
#include "grouplat/words.hpp"

namespace grouplat::cli {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::MalformedInput, what);
}

const Json& field(const Json& task, const char* name) {
  auto it = task.find(name);
  if (it == task.end()) malformed(std::string("missing field \"") + name + "\"");
  return *it;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Json number(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

Json vector_json(const MalcevVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(number(x));
  return out;
}

class Context {
 public:
  Context(const Json& task, const TaskOptions& options) : task_(task), options_(options) {
    if (!task.is_object()) malformed("task must be a JSON object");
    kind_ = text(field(task, "task"), "task");
  }

  const std::string& kind() const { return kind_; }
  const Json& task() const { return task_; }
  const TaskOptions& options() const { return options_; }

  const AlphabetPtr& alphabet() {
    if (!alphabet_) {
      const Json& names = field(task_, "alphabet");
      if (!names.is_array()) malformed("alphabet must be an array of names");
      std::vector<std::string> list;
      for (const Json& n : names) list.push_back(text(n, "generator name"));
      try {
        alphabet_ = Alphabet::make(std::move(list));
      } catch (const Error& e) {
        malformed(e.what());
      }
      if (options_.compact && !alphabet_->supports_compact()) {
        malformed("compact syntax needs single lowercase letter generators");
      }
    }
    return alphabet_;
  }

  Word word(const Json& j, const AlphabetPtr& a) const {
    std::string s = text(j, "word");
    return options_.compact ? parse_compact(s, a) : parse_word(s, a);
  }
  Word word(const char* name) { return word(field(task_, name), alphabet()); }

  std::vector<Word> words(const Json& j, const AlphabetPtr& a) const {
    if (!j.is_array()) malformed("subgroup must be an array of words");
    std::vector<Word> out;
    for (const Json& w : j) out.push_back(word(w, a));
    return out;
  }
  std::vector<Word> words(const char* name) { return words(field(task_, name), alphabet()); }

  std::string show(const Word& w) const {
    return options_.compact ? format_compact(w) : format_word(w);
  }

  // Nilpotent tasks: either "r" for N_{r,2} or an explicit "presentation".
  const NilpotentPresentation& group() {
    if (!group_) {
      if (task_.contains("presentation")) {
        group_ = parse_presentation(task_["presentation"]);
      } else {
        std::int64_t r = integer(field(task_, "r"), "r");
        if (r < 1) throw Error(ErrorKind::InvalidArgument, "r must be at least 1");
        group_ = free_nilpotent_class2(static_cast<std::size_t>(r));
      }
    }
    return *group_;
  }

 private:
  static NilpotentPresentation parse_presentation(const Json& j) {
    if (!j.is_object()) malformed("presentation must be an object");
    std::int64_t m = integer(field(j, "basis"), "basis");
    std::int64_t r = integer(field(j, "generators"), "generators");
    if (m < 1 || r < 1) throw Error(ErrorKind::InvalidPresentation, "basis and generators must be positive");
    auto index = [&](const Json& v, const char* what) {
      std::int64_t k = integer(v, what);
      if (k < 1 || k > m) throw Error(ErrorKind::InvalidPresentation, std::string(what) + " out of range");
      return static_cast<std::size_t>(k - 1);
    };
    std::vector<CommutationRule> rules;
    const Json& list = j.contains("rules") ? j["rules"] : Json::array();
    if (!list.is_array()) malformed("rules must be an array");
    for (const Json& rule : list) {
      if (!rule.is_object()) malformed("rule must be an object");
      CommutationRule c{index(field(rule, "j"), "j"), index(field(rule, "i"), "i"), {}};
      const Json& tail = rule.contains("tail") ? rule["tail"] : Json::array();
      if (!tail.is_array()) malformed("tail must be an array");
      for (const Json& f : tail) {
        if (!f.is_array() || f.size() != 2) malformed("tail entries are [symbol, exponent]");
        c.tail.push_back({index(f[0], "tail symbol"), Integer(integer(f[1], "tail exponent"))});
      }
      rules.push_back(std::move(c));
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
      for (const Json& n : j["names"]) names.push_back(text(n, "symbol name"));
    }
    return NilpotentPresentation::make(static_cast<std::size_t>(m), static_cast<std::size_t>(r),
                                       std::move(rules), std::move(names));
  }

  const Json& task_;
  const TaskOptions& options_;
  std::string kind_;
  AlphabetPtr alphabet_;
  std::optional<NilpotentPresentation> group_;
};

SearchBudget oracle_budget(std::size_t k) {
  SearchBudget b;
  b.max_word_length = k;
  b.max_factorization_length = k;
  return b;
}

ReducedAcceptor parse_acceptor(const Json& j, const AlphabetPtr& a) {
  std::int64_t states = integer(field(j, "states"), "states");
  std::int64_t initial = integer(field(j, "initial"), "initial");
  if (states < 1 || initial < 0 || initial >= states) malformed("initial state out of range");
  auto state = [&](const Json& v) {
    std::int64_t s = integer(v, "state");
    if (s < 0 || s >= states) malformed("state out of range");
    return static_cast<State>(s);
  };
  ReducedAcceptor acc(a, static_cast<std::size_t>(states), static_cast<State>(initial));
  for (const Json& s : field(j, "accepting")) acc.set_accepting(state(s));
  for (const Json& t : field(j, "transitions")) {
    if (!t.is_array() || t.size() != 3) malformed("transitions are [from, letter, to]");
    acc.add_transition(state(t[0]), parse_letter(text(t[1], "letter"), *a), state(t[2]));
  }
  return acc;
}

// A ratdist side: an explicit acceptor, or a subgroup with optional coset
// representative g.
ReducedAcceptor side_acceptor(Context& c, const Json& side) {
  if (!side.is_object()) malformed("ratdist sides must be objects");
  if (side.contains("states")) return parse_acceptor(side, c.alphabet());
  FoldedGraph h = stallings_graph(c.words(field(side, "subgroup"), c.alphabet()), c.alphabet());
  if (side.contains("g")) return coset_to_acceptor(h, c.word(side["g"], c.alphabet()));
  return subgroup_to_acceptor(h);
}

std::vector<MalcevVector> collect_all(const NilpotentPresentation& p, const std::vector<Word>& ws) {
  std::vector<MalcevVector> out;
  for (const Word& w : ws) out.push_back(collect(p, w));
  return out;
}

bool central_tails(const NilpotentPresentation& p) {
  std::vector<bool> central(p.basis_size(), false);
  for (const CommutationRule& rule : p.rules()) {
    for (const Power& f : rule.tail) central[f.symbol] = true;
  }
  return std::none_of(p.rules().begin(), p.rules().end(), [&](const CommutationRule& rule) {
    return central[rule.i] || central[rule.j];
  });
}

Json solve(Context& c) {
  const std::string& kind = c.kind();
  const std::optional<std::size_t>& check = c.options().check_oracle;
  Json out = Json::object();

  if (kind == "closest") {
    std::vector<Word> gens = c.words("subgroup");
    Word g = c.word("g");
    ClosestResult r = closest_element(stallings_graph(gens, c.alphabet()), g);
    out["h"] = c.show(r.element);
    out["distance"] = r.distance;
    if (check) {
      auto budget = oracle_budget(std::max(*check, reduce(g).size()));
      out["verified"] = oracle_closest_free(gens, g, budget) == r.distance;
    }
  } else if (kind == "shortest") {
    std::vector<Word> gens = c.words("subgroup");
    FoldedGraph h = stallings_graph(gens, c.alphabet());
    std::optional<Word> s = shortest_element(h);
    out["element"] = s ? Json(c.show(*s)) : Json();
    out["length"] = s ? Json(s->size()) : Json();
    if (check) {
      auto budget = oracle_budget(std::max(*check, 2 * h.edge_count()));
      auto o = oracle_shortest_free(gens, budget);
      out["verified"] = o == (s ? std::optional(s->size()) : std::nullopt);
    }
  } else if (kind == "subdist") {
    std::vector<Word> h = c.words("subgroup");
    std::vector<Word> k = c.words("other");
    PairDistance d = subgroup_distance(stallings_graph(h, c.alphabet()), stallings_graph(k, c.alphabet()));
    out["h"] = c.show(d.left);
    out["k"] = c.show(d.right);
    out["distance"] = d.distance;
    if (check) {
      auto budget = oracle_budget(std::max({*check, d.left.size(), d.right.size()}));
      out["verified"] = oracle_distance_free(h, k, budget) == d.distance;
    }
  } else if (kind == "ratdist") {
    ReducedAcceptor a = side_acceptor(c, field(c.task(), "left"));
    ReducedAcceptor b = side_acceptor(c, field(c.task(), "right"));
    PairDistance d = rational_distance(a, b);
    out["r"] = c.show(d.left);
    out["s"] = c.show(d.right);
    out["distance"] = d.distance;
    if (check) {
      auto budget = oracle_budget(std::max({*check, d.left.size(), d.right.size()}));
      out["verified"] = oracle_rational_distance(a, b, budget) == std::optional(d.distance);
    }
  } else if (kind == "geodesic") {
    std::vector<Word> gens = c.words("subgroup");
    Word w = c.word("w");
    BouquetGraph completed = complete(bouquet(gens));
    std::optional<std::uint64_t> k;
    try {
      Factorization u = geodesic(completed, w, c.options().expand_budget);
      out["factorization"] = u.format();
      k = u.length();
    } catch (const BudgetExceeded& e) {
      out["factorization"] = nullptr;
      k = e.required();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotInSubgroup) throw;
      out["factorization"] = nullptr;
    }
    out["k"] = k ? Json(*k) : Json();
    if (check) {
      auto budget = oracle_budget(std::max<std::size_t>(*check, k.value_or(0)));
      auto o = oracle_geodesic(gens, w, budget);
      out["verified"] = k ? o == std::optional<std::size_t>(*k) : !o.has_value();
    }
  } else if (kind == "nilp-collect") {
    const NilpotentPresentation& p = c.group();
    Word w = c.word(field(c.task(), "w"), p.alphabet());
    MalcevVector v = collect(p, w);
    out["malcev"] = vector_json(v);
    if (check) {
      if (central_tails(p)) {
        out["verified"] = oracle_collect(p, w) == v;
      } else {
        MalcevVector acc = p.identity();
        for (Letter l : w) acc = multiply(p, acc, power(p, p.basis_vector(l.generator()), l.sign()));
        out["verified"] = acc == v;
      }
    }
  } else if (kind == "nilp-member") {
    const NilpotentPresentation& p = c.group();
    std::vector<MalcevVector> rows = collect_all(p, c.words(field(c.task(), "subgroup"), p.alphabet()));
    MalcevVector h = collect(p, c.word(field(c.task(), "h"), p.alphabet()));
    CoordinateMatrix a = full_form(p, rows);
    auto exps = membership(p, a, h);
    out["member"] = exps.has_value();
    Json e = Json();
    if (exps) {
      e = Json::array();
      for (const Integer& x : *exps) e.push_back(number(x));
    }
    out["exponents"] = e;
    Json form = Json::array();
    for (const MalcevVector& row : a.rows) form.push_back(vector_json(row));
    out["full_form"] = form;
    if (check) {
      bool ok = !exps || product_of_powers(p, a.rows, *exps) == h;
      std::set<MalcevVector> reach = oracle_nilpotent_subgroup(p, rows, oracle_budget(*check));
      out["verified"] = ok && (!reach.contains(h) || exps.has_value());
    }
  } else if (kind == "nilp-closest") {
    const NilpotentPresentation& p = c.group();
    std::vector<Word> gens = c.words(field(c.task(), "subgroup"), p.alphabet());
    Word g = c.word(field(c.task(), "g"), p.alphabet());
    NilpotentClosest r = closest_element_nilpotent(p, gens, g);
    out["h"] = c.show(r.element);
    out["distance"] = r.distance;
    if (check) out["verified"] = oracle_closest_nilpotent(p, gens, g) == r.distance;
  } else if (kind == "nilp-shortest") {
    const NilpotentPresentation& p = c.group();
    std::vector<Word> gens = c.words(field(c.task(), "subgroup"), p.alphabet());
    auto s = shortest_element_nilpotent(p, gens);
    out["element"] = s ? Json(c.show(s->element)) : Json();
    out["length"] = s ? Json(s->distance) : Json();
    if (check) {
      auto o = oracle_shortest_nilpotent(p, gens);
      out["verified"] = o == (s ? std::optional(s->distance) : std::nullopt);
    }
  } else {
    malformed("unknown task kind \"" + kind + "\"");
  }
  return out;
}

}  // namespace

Json run_task(const Json& task, const TaskOptions& options) {
  auto start = std::chrono::steady_clock::now();
  Context c(task, options);
  Json out = solve(c);
  if (options.timing) {
    std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    out["time_ms"] = ms.count();
  }
  return out;
}

Json run_oracle(const Json& task, const TaskOptions& options) {
  Context c(task, options);
  const std::string& kind = c.kind();
  std::size_t k = options.check_oracle.value_or(6);
  SearchBudget budget = oracle_budget(k);
  auto opt = [](const auto& o) { return o ? Json(*o) : Json(); };
  Json out = Json::object();
  if (kind == "closest") {
    Word g = c.word("g");
    out["distance"] = oracle_closest_free(c.words("subgroup"), g, oracle_budget(std::max(k, reduce(g).size())));
  } else if (kind == "shortest") {
    out["length"] = opt(oracle_shortest_free(c.words("subgroup"), budget));
  } else if (kind == "subdist") {
    out["distance"] = oracle_distance_free(c.words("subgroup"), c.words("other"), budget);
  } else if (kind == "ratdist") {
    out["distance"] = opt(oracle_rational_distance(side_acceptor(c, field(task, "left")),
                                                   side_acceptor(c, field(task, "right")), budget));
  } else if (kind == "geodesic") {
    out["k"] = opt(oracle_geodesic(c.words("subgroup"), c.word("w"), budget));
  } else if (kind == "nilp-collect") {
    const NilpotentPresentation& p = c.group();
    out["malcev"] = vector_json(oracle_collect(p, c.word(field(task, "w"), p.alphabet())));
  } else if (kind == "nilp-member") {
    const NilpotentPresentation& p = c.group();
    auto rows = collect_all(p, c.words(field(task, "subgroup"), p.alphabet()));
    MalcevVector h = collect(p, c.word(field(task, "h"), p.alphabet()));
    out["found"] = oracle_nilpotent_subgroup(p, rows, budget).contains(h);
  } else if (kind == "nilp-closest") {
    const NilpotentPresentation& p = c.group();
    out["distance"] = oracle_closest_nilpotent(p, c.words(field(task, "subgroup"), p.alphabet()),
                                               c.word(field(task, "g"), p.alphabet()));
  } else if (kind == "nilp-shortest") {
    const NilpotentPresentation& p = c.group();
    out["length"] = opt(oracle_shortest_nilpotent(p, c.words(field(task, "subgroup"), p.alphabet())));
  } else {
    malformed("unknown task kind \"" + kind + "\"");
  }
  return out;
}

std::string task_dot(const Json& task, const TaskOptions& options) {
  Context c(task, options);
  const std::string& kind = c.kind();
  if (kind == "closest" || kind == "shortest") {
    return export_dot(stallings_graph(c.words("subgroup"), c.alphabet()).to_labeled(), "H");
  }
  if (kind == "subdist") {
    return export_dot(stallings_graph(c.words("subgroup"), c.alphabet()).to_labeled(), "H") +
           export_dot(stallings_graph(c.words("other"), c.alphabet()).to_labeled(), "K");
  }
  if (kind == "geodesic") {
    return export_bouquet_dot(complete(bouquet(c.words("subgroup"))), "completed");
  }
  throw Error(ErrorKind::InvalidArgument, "task kind \"" + kind + "\" has no graph");
}

}  // namespace grouplat::cli
