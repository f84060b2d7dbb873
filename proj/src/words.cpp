#include "grouplat/words.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "grouplat/error.hpp"

namespace grouplat {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& n = names_[i];
    if (n.empty()) {
      throw Error(ErrorKind::InvalidArgument, "empty generator name");
    }
    for (char c : n) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '^') {
        throw Error(ErrorKind::InvalidArgument,
                    "generator name '" + n + "' contains whitespace or '^'");
      }
    }
    if (!index_.emplace(n, i).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate generator name '" + n + "'");
    }
  }
}

std::shared_ptr<const Alphabet> Alphabet::make(std::vector<std::string> names) {
  return std::shared_ptr<const Alphabet>(new Alphabet(std::move(names)));
}

std::shared_ptr<const Alphabet> Alphabet::numbered(std::string_view prefix,
                                                   std::size_t rank) {
  std::vector<std::string> names;
  names.reserve(rank);
  for (std::size_t i = 1; i <= rank; ++i) {
    names.push_back(std::string(prefix) + std::to_string(i));
  }
  return make(std::move(names));
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::supports_compact() const noexcept {
  for (const auto& n : names_) {
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0]))) {
      return false;
    }
  }
  return true;
}

Word::Word(AlphabetPtr alphabet) : alphabet_(std::move(alphabet)) {}

Word::Word(AlphabetPtr alphabet, std::vector<Letter> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  for (Letter l : letters_) {
    if (l.generator() >= alphabet_->rank()) {
      throw Error(ErrorKind::InvalidArgument, "letter index out of range");
    }
  }
}

void Word::push_back(Letter l) {
  if (l.generator() >= alphabet_->rank()) {
    throw Error(ErrorKind::InvalidArgument, "letter index out of range");
  }
  letters_.push_back(l);
}

bool Word::is_reduced() const noexcept {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i] == letters_[i - 1].inverse()) return false;
  }
  return true;
}

bool Word::operator==(const Word& other) const {
  require_same_alphabet(*this, other);
  return letters_ == other.letters_;
}

void require_same_alphabet(const Word& u, const Word& v) {
  if (!u.same_alphabet(v)) {
    throw Error(ErrorKind::AlphabetMismatch, "words are over different alphabets");
  }
}

std::vector<Letter> reduce_letters(std::span<const Letter> letters) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter l : letters) {
    if (!stack.empty() && stack.back() == l.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return stack;
}

Word reduce(const Word& w) {
  return Word(w.alphabet(), reduce_letters(w.letters()));
}

Word invert(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(w.alphabet(), std::move(out));
}

Word concat(const Word& u, const Word& v) {
  require_same_alphabet(u, v);
  std::vector<Letter> out = u.letters();
  out.insert(out.end(), v.begin(), v.end());
  return Word(u.alphabet(), std::move(out));
}

Word concat_reduce(const Word& u, const Word& v) { return reduce(concat(u, v)); }

namespace {

std::vector<std::string_view> split_ws(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

// Returns generator index and exponent of a `name` or `name^k` token.
std::pair<std::size_t, long long> parse_token(std::string_view token,
                                              const Alphabet& alphabet) {
  std::string_view name = token;
  long long exponent = 1;
  if (auto caret = token.find('^'); caret != std::string_view::npos) {
    name = token.substr(0, caret);
    std::string_view digits = token.substr(caret + 1);
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    if (digits.empty() || digits.front() == '+') {
      throw Error(ErrorKind::MalformedExponent, "bad exponent in '" + std::string(token) + "'");
    }
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw Error(ErrorKind::MalformedExponent, "bad exponent in '" + std::string(token) + "'");
    }
    if (exponent == 0) {
      throw Error(ErrorKind::MalformedExponent, "zero exponent in '" + std::string(token) + "'");
    }
    if (exponent > 1'000'000 || exponent < -1'000'000) {
      throw Error(ErrorKind::MalformedExponent, "exponent too large in '" + std::string(token) + "'");
    }
  }
  auto index = alphabet.find(name);
  if (!index) {
    throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + std::string(name) + "'");
  }
  return {*index, exponent};
}

}  // namespace

Letter parse_letter(std::string_view token, const Alphabet& alphabet) {
  auto [index, exponent] = parse_token(token, alphabet);
  if (exponent != 1 && exponent != -1) {
    throw Error(ErrorKind::MalformedExponent,
                "letter token must have exponent ±1: '" + std::string(token) + "'");
  }
  return Letter(index, exponent < 0);
}

Word parse_word(std::string_view text, const AlphabetPtr& alphabet) {
  Word w(alphabet);
  for (std::string_view token : split_ws(text)) {
    auto [index, exponent] = parse_token(token, *alphabet);
    Letter l(index, exponent < 0);
    for (long long k = 0; k < std::llabs(exponent); ++k) w.push_back(l);
  }
  return w;
}

Word parse_compact(std::string_view text, const AlphabetPtr& alphabet) {
  if (!alphabet->supports_compact()) {
    throw Error(ErrorKind::MalformedInput,
                "compact syntax needs single-letter lowercase generator names");
  }
  Word w(alphabet);
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    bool inverse = std::isupper(static_cast<unsigned char>(c)) != 0;
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto index = alphabet->find(std::string_view(&lower, 1));
    if (!index) {
      throw Error(ErrorKind::UnknownGenerator, std::string("unknown generator '") + c + "'");
    }
    w.push_back(Letter(*index, inverse));
  }
  return w;
}

std::string format_letter(Letter l, const Alphabet& alphabet) {
  std::string out = alphabet.name(l.generator());
  if (l.is_inverse()) out += "^-1";
  return out;
}

std::string format_word(const Word& w) {
  std::ostringstream out;
  const auto& letters = w.letters();
  std::size_t i = 0;
  bool first = true;
  while (i < letters.size()) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    long long run = static_cast<long long>(j - i);
    if (!first) out << ' ';
    first = false;
    out << w.alphabet()->name(letters[i].generator());
    long long exponent = letters[i].is_inverse() ? -run : run;
    if (exponent != 1) out << '^' << exponent;
    i = j;
  }
  return out.str();
}

std::string format_compact(const Word& w) {
  if (!w.alphabet()->supports_compact()) {
    throw Error(ErrorKind::MalformedInput,
                "compact syntax needs single-letter lowercase generator names");
  }
  std::string out;
  out.reserve(w.size());
  for (Letter l : w) {
    char c = w.alphabet()->name(l.generator())[0];
    out += l.is_inverse() ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
  }
  return out;
}

}  // namespace grouplat
