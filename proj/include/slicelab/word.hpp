#ifndef SLICELAB_WORD_HPP
#define SLICELAB_WORD_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace slicelab {

/// Finite word over {1, ..., N}. Digits are held 0-based; to_string and
/// from_string use the 1-based alphabet, e.g. "1221".
class Word {
 public:
  static constexpr int kMaxAlphabet = 9;

  explicit Word(int alphabet = 2);
  Word(std::vector<std::uint8_t> digits, int alphabet);

  static Word from_string(std::string_view text, int alphabet = 2);
  std::string to_string() const;

  int alphabet() const { return alphabet_; }
  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  void push_back(std::uint8_t digit);
  void pop_back() { digits_.pop_back(); }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.digits_ <=> b.digits_; }

 private:
  std::vector<std::uint8_t> digits_;
  int alphabet_;
};

Word restrict(const Word& w, std::size_t n);
/// w with its last digit removed.
Word parent(const Word& w);
Word reverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// pattern repeated and truncated to length n.
Word periodic(const Word& pattern, std::size_t n);

enum class Visit { Descend, Skip };

struct LevelVisit {
  std::uint64_t leaves = 0;         // depth-n words reached
  std::uint64_t pruned = 0;         // prefixes where the visitor returned Skip
  std::uint64_t pruned_leaves = 0;  // depth-n words below pruned prefixes

  std::uint64_t visits() const { return leaves + pruned; }
};

/// Depth-first lexicographic walk over the nonempty prefixes of Sigma_n. The
/// visitor sees each prefix once; returning Skip on a proper prefix drops its
/// subtree.
LevelVisit enumerate_level(int alphabet, std::size_t n,
                           const std::function<Visit(const Word&)>& visitor);

std::uint64_t ipow(std::uint64_t base, std::size_t exp);

}  // namespace slicelab

#endif  // SLICELAB_WORD_HPP
