#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace grouplat {

/// Ordered set of distinct generator names. Shared by pointer: two words are
/// compatible only if they refer to the same Alphabet object.
class Alphabet {
 public:
  static std::shared_ptr<const Alphabet> make(std::vector<std::string> names);

  /// Alphabet x1..xr (or any other prefix), as used for nilpotent groups
  /// and factorization words.
  static std::shared_ptr<const Alphabet> numbered(std::string_view prefix,
                                                  std::size_t rank);

  std::size_t rank() const noexcept { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// Every name is a single lowercase ASCII letter.
  bool supports_compact() const noexcept;

 private:
  explicit Alphabet(std::vector<std::string> names);

  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

/// A symbol of X ∪ X⁻¹. Encoded as 2·index + (inverse ? 1 : 0), so the
/// natural order is x1 < x1⁻¹ < x2 < x2⁻¹ < ...
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(std::size_t generator, bool inverse)
      : code_(static_cast<std::uint32_t>(2 * generator + (inverse ? 1 : 0))) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t code() const noexcept { return code_; }
  constexpr std::size_t generator() const noexcept { return code_ >> 1; }
  constexpr bool is_inverse() const noexcept { return (code_ & 1u) != 0; }
  constexpr int sign() const noexcept { return is_inverse() ? -1 : 1; }
  constexpr Letter inverse() const noexcept { return from_code(code_ ^ 1u); }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

/// Sequence of letters over an alphabet. Not necessarily freely reduced; the
/// empty word is the identity.
class Word {
 public:
  explicit Word(AlphabetPtr alphabet);
  Word(AlphabetPtr alphabet, std::vector<Letter> letters);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(Letter l);

  /// No adjacent pair x x⁻¹.
  bool is_reduced() const noexcept;

  bool same_alphabet(const Word& other) const noexcept {
    return alphabet_ == other.alphabet_;
  }

  /// Letter-for-letter equality (no reduction); alphabets must match.
  bool operator==(const Word& other) const;

 private:
  AlphabetPtr alphabet_;
  std::vector<Letter> letters_;
};

/// Stack-based free reduction of a raw letter sequence.
std::vector<Letter> reduce_letters(std::span<const Letter> letters);

Word reduce(const Word& w);
Word invert(const Word& w);
Word concat(const Word& u, const Word& v);
Word concat_reduce(const Word& u, const Word& v);

/// Throws Error(AlphabetMismatch) unless both words share an alphabet.
void require_same_alphabet(const Word& u, const Word& v);

/// Tokens `name` or `name^k` separated by whitespace. Does not reduce.
Word parse_word(std::string_view text, const AlphabetPtr& alphabet);

/// Single-letter lowercase alphabet; uppercase denotes the inverse.
Word parse_compact(std::string_view text, const AlphabetPtr& alphabet);

/// Runs of equal letters are written as name^k.
std::string format_word(const Word& w);
std::string format_compact(const Word& w);

/// Parses one letter token such as "a" or "a^-1".
Letter parse_letter(std::string_view token, const Alphabet& alphabet);
std::string format_letter(Letter l, const Alphabet& alphabet);

}  // namespace grouplat
