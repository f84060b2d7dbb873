#include "grouplat/rational.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "grouplat/error.hpp"

namespace grouplat {

namespace {
constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();
}  // namespace

ReducedAcceptor::ReducedAcceptor(AlphabetPtr alphabet, std::size_t states, State initial)
    : alphabet_(std::move(alphabet)),
      states_(states),
      initial_(initial),
      accepting_(states, false),
      transitions_(states * 2 * alphabet_->rank(), kNone) {
  if (states == 0 || initial >= states) {
    throw Error(ErrorKind::InvalidArgument, "acceptor needs a valid initial state");
  }
}

void ReducedAcceptor::set_accepting(State s, bool accepting) {
  if (s >= states_) throw Error(ErrorKind::InvalidArgument, "accepting state out of range");
  accepting_[s] = accepting;
}

void ReducedAcceptor::add_transition(State from, Letter l, State to) {
  if (from >= states_ || to >= states_ || l.generator() >= alphabet_->rank()) {
    throw Error(ErrorKind::InvalidArgument, "transition out of range");
  }
  State& slot = transitions_[from * letter_count() + l.code()];
  if (slot != kNone && slot != to) {
    throw Error(ErrorKind::NondeterministicInput,
                "state " + std::to_string(from) + " has two transitions labeled " +
                    format_letter(l, *alphabet_));
  }
  slot = to;
}

bool ReducedAcceptor::accepts(const Word& w) const {
  if (w.alphabet() != alphabet_) {
    throw Error(ErrorKind::AlphabetMismatch, "word and acceptor over different alphabets");
  }
  State s = initial_;
  for (Letter l : w) {
    s = target(s, l);
    if (s == kNone) return false;
  }
  return accepting_[s];
}

void ReducedAcceptor::validate() const {
  if (reduction_closed_) return;
  const std::size_t letters = letter_count();
  std::vector<bool> reachable(states_, false);
  std::vector<State> stack{initial_};
  reachable[initial_] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (std::size_t x = 0; x < letters; ++x) {
      State t = transitions_[s * letters + x];
      if (t != kNone && !reachable[t]) {
        reachable[t] = true;
        stack.push_back(t);
      }
    }
  }
  std::vector<bool> productive(accepting_.begin(), accepting_.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (State s = 0; s < states_; ++s) {
      if (productive[s]) continue;
      for (std::size_t x = 0; x < letters; ++x) {
        State t = transitions_[s * letters + x];
        if (t != kNone && productive[t]) {
          productive[s] = true;
          changed = true;
          break;
        }
      }
    }
  }
  auto trim = [&](State s) { return reachable[s] && productive[s]; };
  for (State p = 0; p < states_; ++p) {
    if (!trim(p)) continue;
    for (std::size_t x = 0; x < letters; ++x) {
      State s = transitions_[p * letters + x];
      if (s == kNone || !trim(s)) continue;
      State q = transitions_[s * letters + (x ^ 1u)];
      if (q != kNone && trim(q)) {
        throw Error(ErrorKind::NonReducedLanguage,
                    "acceptor accepts a word containing " +
                        format_letter(Letter::from_code(static_cast<std::uint32_t>(x)), *alphabet_) + " " +
                        format_letter(Letter::from_code(static_cast<std::uint32_t>(x ^ 1u)), *alphabet_));
      }
    }
  }
}

namespace {

ReducedAcceptor acceptor_from_graph(const FoldedGraph& g, Vertex accepting) {
  ReducedAcceptor a(g.alphabet(), g.vertex_count(), g.base());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (std::uint32_t x = 0; x < g.letter_count(); ++x) {
      Vertex t = g.target(v, Letter::from_code(x));
      if (t != FoldedGraph::kNone) a.add_transition(v, Letter::from_code(x), t);
    }
  }
  a.set_accepting(accepting);
  a.mark_reduction_closed();
  return a;
}

}  // namespace

ReducedAcceptor subgroup_to_acceptor(const FoldedGraph& h) {
  return acceptor_from_graph(h, h.base());
}

ReducedAcceptor coset_to_acceptor(const FoldedGraph& h, const Word& g) {
  CosetGraph coset = coset_graph(h, g);
  return acceptor_from_graph(coset.graph, coset.terminus);
}

std::vector<Letter> ProductComponent::tree_word(std::size_t i) const {
  std::vector<Letter> out;
  while (nodes[i].parent != i) {
    out.push_back(nodes[i].via);
    i = nodes[i].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> ProductComponent::find(State left, State right) const {
  std::size_t slot = static_cast<std::size_t>(left) * right_states + right;
  if (slot >= index.size() || index[slot] == kNoNode) return std::nullopt;
  return index[slot];
}

ProductComponent build_product(const ReducedAcceptor& a, const ReducedAcceptor& b) {
  if (a.alphabet() != b.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "acceptors over different alphabets");
  }
  ProductComponent p;
  p.right_states = b.state_count();
  p.index.assign(a.state_count() * b.state_count(), kNoNode);
  p.nodes.push_back({a.initial(), b.initial(), 0, Letter{}, 0});
  p.index[static_cast<std::size_t>(a.initial()) * p.right_states + b.initial()] = 0;
  for (std::size_t head = 0; head < p.nodes.size(); ++head) {
    const auto cur = p.nodes[head];
    for (std::uint32_t x = 0; x < a.letter_count(); ++x) {
      Letter l = Letter::from_code(x);
      State ta = a.target(cur.left, l);
      State tb = b.target(cur.right, l);
      if (ta == ReducedAcceptor::kNone || tb == ReducedAcceptor::kNone) continue;
      std::size_t slot = static_cast<std::size_t>(ta) * p.right_states + tb;
      if (p.index[slot] != kNoNode) continue;
      p.index[slot] = p.nodes.size();
      p.nodes.push_back({ta, tb, head, l, cur.depth + 1});
    }
  }
  return p;
}

std::vector<Letter> CompletionTable::completion(const ReducedAcceptor& a, State from) const {
  if (distance[from] == kInf) throw std::logic_error("no completion from state");
  std::vector<Letter> out;
  State s = from;
  while (distance[s] != 0) {
    out.push_back(next[s]);
    s = a.target(s, next[s]);
  }
  return out;
}

CompletionTable completion_table(const ReducedAcceptor& a) {
  const std::size_t n = a.state_count();
  const std::size_t letters = a.letter_count();
  std::vector<std::vector<State>> incoming(n);
  for (State s = 0; s < n; ++s) {
    for (std::uint32_t x = 0; x < letters; ++x) {
      State t = a.target(s, Letter::from_code(x));
      if (t != ReducedAcceptor::kNone) incoming[t].push_back(s);
    }
  }
  CompletionTable table{std::vector<std::size_t>(n, kInf), std::vector<Letter>(n)};
  std::deque<State> queue;
  for (State s = 0; s < n; ++s) {
    if (a.accepting(s)) {
      table.distance[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State t = queue.front();
    queue.pop_front();
    for (State s : incoming[t]) {
      if (table.distance[s] != kInf) continue;
      table.distance[s] = table.distance[t] + 1;
      queue.push_back(s);
    }
  }
  for (State s = 0; s < n; ++s) {
    if (table.distance[s] == kInf || table.distance[s] == 0) continue;
    for (std::uint32_t x = 0; x < letters; ++x) {
      State t = a.target(s, Letter::from_code(x));
      if (t != ReducedAcceptor::kNone && table.distance[t] + 1 == table.distance[s]) {
        table.next[s] = Letter::from_code(x);
        break;
      }
    }
  }
  return table;
}

PairDistance rational_distance(const ReducedAcceptor& a, const ReducedAcceptor& b) {
  if (a.alphabet() != b.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "acceptors over different alphabets");
  }
  a.validate();
  b.validate();
  CompletionTable ca = completion_table(a);
  CompletionTable cb = completion_table(b);
  if (ca.distance[a.initial()] == kInf) throw Error(ErrorKind::EmptyLanguage, "first acceptor accepts nothing");
  if (cb.distance[b.initial()] == kInf) throw Error(ErrorKind::EmptyLanguage, "second acceptor accepts nothing");

  ProductComponent product = build_product(a, b);
  std::size_t best = kInf;
  std::size_t best_node = 0;
  for (std::size_t i = 0; i < product.nodes.size(); ++i) {
    const auto& node = product.nodes[i];
    std::size_t da = ca.distance[node.left];
    std::size_t db = cb.distance[node.right];
    if (da == kInf || db == kInf) continue;
    if (da + db < best) {
      best = da + db;
      best_node = i;
    }
  }

  const auto& node = product.nodes[best_node];
  std::vector<Letter> prefix = product.tree_word(best_node);
  std::vector<Letter> r = prefix;
  std::vector<Letter> s = prefix;
  auto tail_a = ca.completion(a, node.left);
  auto tail_b = cb.completion(b, node.right);
  r.insert(r.end(), tail_a.begin(), tail_a.end());
  s.insert(s.end(), tail_b.begin(), tail_b.end());

  PairDistance result{Word(a.alphabet(), reduce_letters(r)), Word(a.alphabet(), reduce_letters(s)), best};
  if (!a.accepts(result.left) || !b.accepts(result.right)) {
    throw std::logic_error("rational distance witness not accepted");
  }
  if (concat_reduce(invert(result.left), result.right).size() != best) {
    throw std::logic_error("rational distance witness does not realize the distance");
  }
  return result;
}

namespace {

// Nontrivial loop label at the product root, if the component has a cycle.
std::optional<std::vector<Letter>> product_cycle(const ProductComponent& p,
                                                 const ReducedAcceptor& a,
                                                 const ReducedAcceptor& b) {
  for (std::size_t u = 0; u < p.nodes.size(); ++u) {
    for (std::uint32_t x = 0; x < a.letter_count(); x += 2) {
      Letter l = Letter::from_code(x);
      State ta = a.target(p.nodes[u].left, l);
      State tb = b.target(p.nodes[u].right, l);
      if (ta == ReducedAcceptor::kNone || tb == ReducedAcceptor::kNone) continue;
      std::size_t v = *p.find(ta, tb);
      bool tree_edge = (p.nodes[v].parent == u && v != u && p.nodes[v].via == l) ||
                       (p.nodes[u].parent == v && u != v && p.nodes[u].via == l.inverse());
      if (tree_edge) continue;
      std::vector<Letter> loop = p.tree_word(u);
      loop.push_back(l);
      auto back = p.tree_word(v);
      for (auto it = back.rbegin(); it != back.rend(); ++it) loop.push_back(it->inverse());
      return reduce_letters(loop);
    }
  }
  return std::nullopt;
}

}  // namespace

PairDistance subgroup_distance(const FoldedGraph& h, const FoldedGraph& k) {
  if (h.alphabet() != k.alphabet()) {
    throw Error(ErrorKind::AlphabetMismatch, "subgroups over different alphabets");
  }
  if (h.is_trivial() && k.is_trivial()) {
    throw Error(ErrorKind::BothTrivial, "both subgroups are trivial");
  }
  const AlphabetPtr& alphabet = h.alphabet();
  ReducedAcceptor a = subgroup_to_acceptor(h);
  ReducedAcceptor b = subgroup_to_acceptor(k);
  ProductComponent product = build_product(a, b);

  if (auto loop = product_cycle(product, a, b)) {
    Word w(alphabet, *loop);
    if (w.empty() || !contains(h, w) || !contains(k, w)) {
      throw std::logic_error("product cycle does not yield a common nontrivial element");
    }
    return {w, w, 0};
  }

  // H ∩ K is trivial, so valid pairs correspond to nontrivial elements
  // x = h⁻¹k of HK. Every reduced such x splits as x = a·b where a labels a
  // path base_H → p, b labels a path q → base_K and (p, q) is in the product
  // component. Search the shortest nonempty reduced label of such a path.
  const std::size_t letters = h.letter_count();
  const std::size_t width = letters + 1;
  const std::size_t h_states = h.vertex_count() * width;
  const std::size_t total = h_states + k.vertex_count() * width;
  auto h_state = [&](Vertex v, std::size_t last) { return v * width + last; };
  auto k_state = [&](Vertex v, std::size_t last) { return h_states + v * width + last; };

  std::vector<std::size_t> dist(total, kInf);
  std::vector<std::size_t> parent(total, kNoNode);
  std::deque<std::size_t> queue;
  std::size_t start = h_state(h.base(), 0);
  dist[start] = 0;
  queue.push_back(start);

  // Product partners of each H vertex, in product BFS order.
  std::vector<std::vector<Vertex>> partners(h.vertex_count());
  for (const auto& node : product.nodes) partners[node.left].push_back(node.right);

  std::size_t accepted = kNoNode;
  while (!queue.empty()) {
    std::size_t s = queue.front();
    queue.pop_front();
    const bool on_k = s >= h_states;
    const std::size_t local = on_k ? s - h_states : s;
    const Vertex v = static_cast<Vertex>(local / width);
    const std::size_t last = local % width;
    if (on_k && v == k.base() && last != 0) {
      accepted = s;
      break;
    }
    if (!on_k) {
      for (Vertex q : partners[v]) {
        std::size_t t = k_state(q, last);
        if (dist[t] > dist[s]) {
          dist[t] = dist[s];
          parent[t] = s;
          queue.push_front(t);
        }
      }
    }
    const FoldedGraph& g = on_k ? k : h;
    for (std::uint32_t x = 0; x < letters; ++x) {
      if (last != 0 && x == ((last - 1) ^ 1u)) continue;
      Vertex t = g.target(v, Letter::from_code(x));
      if (t == FoldedGraph::kNone) continue;
      std::size_t next = on_k ? k_state(t, x + 1) : h_state(t, x + 1);
      if (dist[next] > dist[s] + 1) {
        dist[next] = dist[s] + 1;
        parent[next] = s;
        queue.push_back(next);
      }
    }
  }
  if (accepted == kNoNode) throw std::logic_error("no nontrivial element in HK");

  std::vector<Letter> before;
  std::vector<Letter> after;
  Vertex jump_h = 0;
  Vertex jump_k = 0;
  for (std::size_t s = accepted; s != start; s = parent[s]) {
    std::size_t p = parent[s];
    const bool s_on_k = s >= h_states;
    const bool p_on_k = p >= h_states;
    if (s_on_k && !p_on_k) {
      jump_k = static_cast<Vertex>((s - h_states) / width);
      jump_h = static_cast<Vertex>(p / width);
      continue;
    }
    std::size_t last = (s_on_k ? s - h_states : s) % width;
    (s_on_k ? after : before).push_back(Letter::from_code(static_cast<std::uint32_t>(last - 1)));
  }
  std::reverse(before.begin(), before.end());
  std::reverse(after.begin(), after.end());

  std::vector<Letter> f = product.tree_word(*product.find(jump_h, jump_k));
  std::vector<Letter> hw = f;
  for (auto it = before.rbegin(); it != before.rend(); ++it) hw.push_back(it->inverse());
  std::vector<Letter> kw = f;
  kw.insert(kw.end(), after.begin(), after.end());

  PairDistance result{Word(alphabet, reduce_letters(hw)), Word(alphabet, reduce_letters(kw)),
                      dist[accepted]};
  if (!contains(h, result.left) || !contains(k, result.right) ||
      (result.left.empty() && result.right.empty()) ||
      concat_reduce(invert(result.left), result.right).size() != result.distance) {
    throw std::logic_error("subgroup distance witness is invalid");
  }
  return result;
}

}  // namespace grouplat
