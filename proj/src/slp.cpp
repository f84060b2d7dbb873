#include "grouplat/slp.hpp"

#include <algorithm>
#include <atomic>
#include <limits>

#include "grouplat/error.hpp"

namespace grouplat {

namespace {

std::uint64_t next_arena_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t sum = a + b;
  return sum < a ? std::numeric_limits<std::uint64_t>::max() : sum;
}

}  // namespace

SlpArena::SlpArena() : id_(next_arena_id()) {
  nodes_.push_back({false, Letter{}, {}, {}, 0});
}

SlpArena SlpArena::fork() const {
  SlpArena copy(*this);
  copy.ancestors_.push_back(id_);
  copy.id_ = next_arena_id();
  return copy;
}

bool SlpArena::owns(SlpRef a) const noexcept {
  if (a.node >= nodes_.size()) return false;
  return a.arena == id_ || std::find(ancestors_.begin(), ancestors_.end(), a.arena) != ancestors_.end();
}

void SlpArena::check(SlpRef a) const {
  if (!owns(a)) throw Error(ErrorKind::ArenaMismatch, "SLP reference from a different arena");
}

SlpRef SlpArena::terminal(Letter symbol) {
  nodes_.push_back({true, symbol, {}, {}, 1});
  return {static_cast<std::uint32_t>(nodes_.size() - 1), false, id_};
}

SlpRef SlpArena::concat(SlpRef a, SlpRef b) {
  check(a);
  check(b);
  if (length(a) == 0) return b;
  if (length(b) == 0) return a;
  nodes_.push_back({false, Letter{}, a, b, saturating_add(length(a), length(b))});
  return {static_cast<std::uint32_t>(nodes_.size() - 1), false, id_};
}

SlpRef SlpArena::invert(SlpRef a) const {
  check(a);
  a.inverted = !a.inverted;
  return a;
}

std::uint64_t SlpArena::length(SlpRef a) const {
  check(a);
  return nodes_[a.node].length;
}

std::vector<Letter> SlpArena::expand(SlpRef a, std::uint64_t budget) const {
  check(a);
  std::uint64_t n = length(a);
  if (n > budget) {
    throw BudgetExceeded(n, budget,
                         "expansion needs " + std::to_string(n) + " symbols, budget " +
                             std::to_string(budget));
  }
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(n));
  // Inversion distributes as (uv)⁻¹ = v⁻¹u⁻¹.
  std::vector<SlpRef> stack{a};
  while (!stack.empty()) {
    SlpRef r = stack.back();
    stack.pop_back();
    const Node& node = nodes_[r.node];
    if (node.is_terminal) {
      out.push_back(r.inverted ? node.symbol.inverse() : node.symbol);
    } else if (node.length > 0) {
      SlpRef first = node.left;
      SlpRef second = node.right;
      if (r.inverted) {
        std::swap(first, second);
        first.inverted = !first.inverted;
        second.inverted = !second.inverted;
      }
      stack.push_back(second);
      stack.push_back(first);
    }
  }
  return out;
}

}  // namespace grouplat
