#include "slicelab/word.hpp"

#include <algorithm>

#include "slicelab/error.hpp"

namespace slicelab {

namespace {

void check_alphabet(int alphabet) {
  if (alphabet < 2 || alphabet > Word::kMaxAlphabet) {
    throw Error(ErrorCode::OutOfRange, "alphabet size must lie in [2, 9]");
  }
}

}  // namespace

Word::Word(int alphabet) : alphabet_(alphabet) { check_alphabet(alphabet); }

Word::Word(std::vector<std::uint8_t> digits, int alphabet)
    : digits_(std::move(digits)), alphabet_(alphabet) {
  check_alphabet(alphabet);
  for (auto d : digits_) {
    if (d >= alphabet_) throw Error(ErrorCode::OutOfRange, "digit outside the alphabet");
  }
}

Word Word::from_string(std::string_view text, int alphabet) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '9') throw Error(ErrorCode::OutOfRange, "word digits must be 1..N");
    digits.push_back(static_cast<std::uint8_t>(c - '1'));
  }
  return Word(std::move(digits), alphabet);
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(digits_.size());
  for (auto d : digits_) out.push_back(static_cast<char>('1' + d));
  return out;
}

void Word::push_back(std::uint8_t digit) {
  if (digit >= alphabet_) throw Error(ErrorCode::OutOfRange, "digit outside the alphabet");
  digits_.push_back(digit);
}

Word restrict(const Word& w, std::size_t n) {
  if (n > w.size()) throw Error(ErrorCode::OutOfRange, "restriction longer than the word");
  return Word({w.digits().begin(), w.digits().begin() + static_cast<std::ptrdiff_t>(n)},
              w.alphabet());
}

Word parent(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::OutOfRange, "the empty word has no parent");
  return restrict(w, w.size() - 1);
}

Word reverse(const Word& w) {
  return Word({w.digits().rbegin(), w.digits().rend()}, w.alphabet());
}

Word concat(const Word& a, const Word& b) {
  if (a.alphabet() != b.alphabet()) throw Error(ErrorCode::OutOfRange, "alphabet mismatch");
  auto digits = a.digits();
  digits.insert(digits.end(), b.digits().begin(), b.digits().end());
  return Word(std::move(digits), a.alphabet());
}

Word periodic(const Word& pattern, std::size_t n) {
  if (pattern.empty() && n > 0) throw Error(ErrorCode::OutOfRange, "empty period");
  std::vector<std::uint8_t> digits(n);
  for (std::size_t i = 0; i < n; ++i) digits[i] = pattern[i % pattern.size()];
  return Word(std::move(digits), pattern.alphabet());
}

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

namespace {

void walk(Word& prefix, std::size_t n, const std::function<Visit(const Word&)>& visitor,
          LevelVisit& stats) {
  for (int d = 0; d < prefix.alphabet(); ++d) {
    prefix.push_back(static_cast<std::uint8_t>(d));
    const Visit v = visitor(prefix);
    if (prefix.size() == n) {
      ++stats.leaves;
    } else if (v == Visit::Skip) {
      ++stats.pruned;
      stats.pruned_leaves += ipow(static_cast<std::uint64_t>(prefix.alphabet()), n - prefix.size());
    } else {
      walk(prefix, n, visitor, stats);
    }
    prefix.pop_back();
  }
}

}  // namespace

LevelVisit enumerate_level(int alphabet, std::size_t n,
                           const std::function<Visit(const Word&)>& visitor) {
  LevelVisit stats;
  Word prefix(alphabet);
  if (n == 0) {
    visitor(prefix);
    stats.leaves = 1;
    return stats;
  }
  walk(prefix, n, visitor, stats);
  return stats;
}

}  // namespace slicelab
