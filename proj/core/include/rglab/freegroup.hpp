#pragma once

// Words in a free group of finite rank. Letters are nonzero signed integers:
// |x| names the generator, a negative sign means its inverse.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rglab {

using Letter = int;
using BigInt = boost::multiprecision::cpp_int;

// Position of a letter in the total order 1 < -1 < 2 < -2 < ... used for every
// "lexicographic" ordering in the library.
constexpr int letter_order(Letter x) noexcept {
  return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1;
}

constexpr Letter letter_from_order(int i) noexcept {
  return (i % 2 == 0) ? i / 2 + 1 : -(i / 2 + 1);
}

class Word {
 public:
  Word() = default;
  // Throws Error(InvalidArgument) on a zero letter or |letter| > rank.
  Word(int rank, std::vector<Letter> letters);
  Word(int rank, std::initializer_list<Letter> letters)
      : Word(rank, std::vector<Letter>(letters)) {}

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  bool is_positive() const noexcept;
  bool is_reduced() const noexcept;

  Word inverse() const;
  // Plain concatenation, no reduction. Ranks may differ; the larger wins.
  Word operator*(const Word& rhs) const;
  Word with_rank(int rank) const;

  // Equality and ordering ignore rank. Ordering is lexicographic on
  // letter_order; a proper prefix sorts first.
  bool operator==(const Word& rhs) const noexcept {
    return letters_ == rhs.letters_;
  }
  std::strong_ordering operator<=>(const Word& rhs) const noexcept;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

// "1 -2 1"; the empty word is "e".
std::string to_string(const Word& w);
Word parse_word(std::string_view text, int rank);
std::ostream& operator<<(std::ostream& os, const Word& w);

Word free_reduce(const Word& w);

struct CyclicReduction {
  Word word;        // cyclically reduced
  Word conjugator;  // free_reduce(conjugator * word * conjugator^-1) == free_reduce(input)
};

CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

// Number of cyclically reduced words of length `length` over rank `rank`.
BigInt count_cyclically_reduced(int rank, int length);
// Number of freely reduced words of the given length: 2n(2n-1)^(L-1), 1 for L=0.
BigInt count_reduced(int rank, int length);

enum class WordFilter { All, Reduced, CyclicallyReduced, Positive };

// Calls `visit` for every qualifying word of exactly `length` letters, in
// lexicographic order (see letter_order). Returning false from `visit` stops.
void enumerate_words(int rank, int length, WordFilter filter,
                     const std::function<bool(const Word&)>& visit);
std::vector<Word> collect_words(int rank, int length, WordFilter filter);

}  // namespace rglab

template <>
struct std::hash<rglab::Word> {
  std::size_t operator()(const rglab::Word& w) const noexcept;
};
