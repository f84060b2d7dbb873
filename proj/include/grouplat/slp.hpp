#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "grouplat/words.hpp"

namespace grouplat {

/// Reference to a node of an SlpArena, optionally read backwards with every
/// symbol inverted.
struct SlpRef {
  std::uint32_t node = 0;
  bool inverted = false;
  std::uint64_t arena = 0;

  bool operator==(const SlpRef&) const = default;
};

/// Append-only straight-line program over signed symbols. Node 0 is the
/// empty program. Concatenation is formal: no free reduction is performed,
/// so length() is the unreduced symbol count (saturating at 2^64 - 1).
class SlpArena {
 public:
  SlpArena();

  /// Copy of this arena with a fresh identity that also accepts references
  /// issued by this arena (and its ancestors).
  SlpArena fork() const;

  SlpRef empty() const noexcept { return {0, false, id_}; }
  SlpRef terminal(Letter symbol);
  SlpRef concat(SlpRef a, SlpRef b);
  SlpRef invert(SlpRef a) const;

  std::uint64_t length(SlpRef a) const;

  /// Full expansion; throws BudgetExceeded if length(a) > budget.
  std::vector<Letter> expand(SlpRef a, std::uint64_t budget) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  bool owns(SlpRef a) const noexcept;

 private:
  struct Node {
    bool is_terminal;
    Letter symbol;
    SlpRef left;
    SlpRef right;
    std::uint64_t length;
  };

  void check(SlpRef a) const;

  std::uint64_t id_;
  std::vector<std::uint64_t> ancestors_;
  std::vector<Node> nodes_;
};

}  // namespace grouplat
