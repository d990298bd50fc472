#include "rglab/freegroup.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "rglab/error.hpp"

namespace rglab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SpaceExhausted: return "SpaceExhausted";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::InsufficientPositiveRelators:
      return "InsufficientPositiveRelators";
    case ErrorKind::WrongRelatorLength: return "WrongRelatorLength";
    case ErrorKind::EmptyGraph: return "EmptyGraph";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Word::Word(int rank, std::vector<Letter> letters)
    : rank_(rank), letters_(std::move(letters)) {
  if (rank < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative rank");
  }
  for (Letter x : letters_) {
    if (x == 0 || std::abs(x) > rank) {
      throw Error(ErrorKind::InvalidArgument,
                  "letter " + std::to_string(x) + " outside rank " +
                      std::to_string(rank));
    }
  }
}

bool Word::is_positive() const noexcept {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](Letter x) { return x > 0; });
}

bool Word::is_reduced() const noexcept {
  return std::adjacent_find(letters_.begin(), letters_.end(),
                            [](Letter a, Letter b) { return a == -b; }) ==
         letters_.end();
}

Word Word::inverse() const {
  Word out;
  out.rank_ = rank_;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(-*it);
  }
  return out;
}

Word Word::operator*(const Word& rhs) const {
  Word out;
  out.rank_ = std::max(rank_, rhs.rank_);
  out.letters_.reserve(letters_.size() + rhs.letters_.size());
  out.letters_.insert(out.letters_.end(), letters_.begin(), letters_.end());
  out.letters_.insert(out.letters_.end(), rhs.letters_.begin(),
                      rhs.letters_.end());
  return out;
}

Word Word::with_rank(int rank) const { return Word(rank, letters_); }

std::strong_ordering Word::operator<=>(const Word& rhs) const noexcept {
  const std::size_t common = std::min(letters_.size(), rhs.letters_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const int a = letter_order(letters_[i]);
    const int b = letter_order(rhs.letters_[i]);
    if (a != b) {
      return a <=> b;
    }
  }
  return letters_.size() <=> rhs.letters_.size();
}

std::string to_string(const Word& w) {
  if (w.empty()) {
    return "e";
  }
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i != 0) {
      out += ' ';
    }
    out += std::to_string(w[i]);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  std::vector<Letter> letters;
  bool saw_identity = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) {
      ++pos;
    }
    if (pos >= text.size()) {
      break;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') {
      ++end;
    }
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "e") {
      saw_identity = true;
      continue;
    }
    Letter value = 0;
    const auto* first = token.data();
    // from_chars does not accept a leading '+'.
    const auto [ptr, ec] = std::from_chars(first, first + token.size(), value);
    if (ec != std::errc() || ptr != first + token.size()) {
      throw Error(ErrorKind::Parse,
                  "bad letter token '" + std::string(token) + "'");
    }
    letters.push_back(value);
  }
  if (saw_identity && !letters.empty()) {
    throw Error(ErrorKind::Parse, "'e' mixed with letters");
  }
  if (!saw_identity && letters.empty()) {
    throw Error(ErrorKind::Parse, "empty word must be written as 'e'");
  }
  try {
    return Word(rank, std::move(letters));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << to_string(w);
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter x : w) {
    if (!stack.empty() && stack.back() == -x) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(w.rank(), std::move(stack));
}

CyclicReduction cyclic_reduce(const Word& w) {
  const Word reduced = free_reduce(w);
  const auto letters = reduced.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == -letters[hi - 1]) {
    ++lo;
    --hi;
  }
  return CyclicReduction{
      Word(w.rank(), {letters.begin() + lo, letters.begin() + hi}),
      Word(w.rank(), {letters.begin(), letters.begin() + lo})};
}

bool is_cyclically_reduced(const Word& w) {
  if (!w.is_reduced()) {
    return false;
  }
  return w.size() < 2 || w.front() != -w.back();
}

BigInt count_cyclically_reduced(int rank, int length) {
  if (rank < 1 || length < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "count_cyclically_reduced needs rank >= 1 and length >= 1");
  }
  // Fix the first letter f (all 2n choices are symmetric) and track the last
  // letter by class: f itself, f^-1, or one of the 2n-2 other letters
  // (aggregated). Each step appends a letter that does not cancel.
  const BigInt others = 2 * rank - 2;
  BigInt same = 1;
  BigInt inv = 0;
  BigInt other = 0;
  for (int step = 1; step < length; ++step) {
    BigInt next_same = same + other;
    BigInt next_inv = inv + other;
    BigInt next_other = others * same + others * inv;
    if (rank >= 2) {
      // From a given "other" letter x: 2n-1 continuations minus f, f^-1.
      next_other += other * (2 * rank - 3);
    }
    same = std::move(next_same);
    inv = std::move(next_inv);
    other = std::move(next_other);
  }
  // Closing condition: the last letter must not be f^-1.
  return BigInt(2 * rank) * (same + other);
}

BigInt count_reduced(int rank, int length) {
  if (length == 0) {
    return 1;
  }
  BigInt out = 2 * rank;
  for (int i = 1; i < length; ++i) {
    out *= (2 * rank - 1);
  }
  return out;
}

namespace {

bool accepts_next(WordFilter filter, const std::vector<Letter>& prefix,
                  Letter x) {
  switch (filter) {
    case WordFilter::All: return true;
    case WordFilter::Positive: return x > 0;
    case WordFilter::Reduced:
    case WordFilter::CyclicallyReduced:
      return prefix.empty() || prefix.back() != -x;
  }
  return true;
}

bool enumerate_rec(int rank, int length, WordFilter filter,
                   std::vector<Letter>& prefix,
                   const std::function<bool(const Word&)>& visit) {
  if (static_cast<int>(prefix.size()) == length) {
    if (filter == WordFilter::CyclicallyReduced && length >= 2 &&
        prefix.front() == -prefix.back()) {
      return true;
    }
    return visit(Word(rank, prefix));
  }
  for (int i = 0; i < 2 * rank; ++i) {
    const Letter x = letter_from_order(i);
    if (!accepts_next(filter, prefix, x)) {
      continue;
    }
    prefix.push_back(x);
    const bool go_on = enumerate_rec(rank, length, filter, prefix, visit);
    prefix.pop_back();
    if (!go_on) {
      return false;
    }
  }
  return true;
}

}  // namespace

void enumerate_words(int rank, int length, WordFilter filter,
                     const std::function<bool(const Word&)>& visit) {
  if (rank < 0 || length < 0) {
    throw Error(ErrorKind::InvalidArgument, "negative rank or length");
  }
  std::vector<Letter> prefix;
  prefix.reserve(static_cast<std::size_t>(length));
  enumerate_rec(rank, length, filter, prefix, visit);
}

std::vector<Word> collect_words(int rank, int length, WordFilter filter) {
  std::vector<Word> out;
  enumerate_words(rank, length, filter, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

}  // namespace rglab

std::size_t std::hash<rglab::Word>::operator()(
    const rglab::Word& w) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (rglab::Letter x : w) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(x));
    h *= 1099511628211ULL;
  }
  return h;
}
