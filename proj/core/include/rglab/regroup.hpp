#pragma once

// Regrouping positive relators of length j*k into words of length k over
// the alphabet of positive blocks of length j.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rglab/freegroup.hpp"
#include "rglab/models.hpp"

namespace rglab {

// The n^j positive words of length j, indexed 1..n^j in lexicographic order.
class BlockAlphabet {
 public:
  BlockAlphabet() : BlockAlphabet(1, 1) {}
  // Throws InvalidArgument if n^j exceeds kMaxBlocks.
  BlockAlphabet(int n, int j);

  static constexpr std::uint64_t kMaxBlocks = 1u << 24;

  int base_rank() const noexcept { return n_; }
  int block_length() const noexcept { return j_; }
  int size() const noexcept { return m_; }

  // Index of a positive word of length j.
  Letter index_of(std::span<const Letter> block) const;
  // Positive word of length j for index in 1..size().
  Word block(Letter index) const;
  // Signed block letter to its word: block(i) or block(i)^-1.
  Word decode_letter(Letter signed_index) const;

  bool operator==(const BlockAlphabet&) const = default;

 private:
  int n_;
  int j_;
  int m_;
};

Presentation positive_part(const Presentation& p);

int length_mod(const Word& w, int j);

// Throws NotPositive / NotDivisible.
Word block_encode(const Word& w, const BlockAlphabet& alphabet);
// Concatenated decoding of each (signed) block letter, no reduction.
Word block_decode(const Word& blocks, const BlockAlphabet& alphabet);

struct RegroupedPresentation {
  Presentation gamma;  // rank n^j, relators of length k
  BlockAlphabet alphabet;
  Presentation source;  // positive, rank n, relators of length j*k
};

RegroupedPresentation build_gamma(const Presentation& positive, int j);

// First `target` relators in lexicographic order. Throws
// InsufficientPositiveRelators when fewer exist.
Presentation downsample(const Presentation& p, std::uint64_t target);

// ln(count) / (k ln(2 rank - 1)); the density at which a native sample
// would carry `count` relators.
double effective_density(std::uint64_t relator_count, int k, int rank);

// Source and gamma as presentation blocks, then the block map:
//   [source] ... [gamma] ... [blockmap] lines "<index>: <word>"
std::string format_regrouped(const RegroupedPresentation& r);
RegroupedPresentation parse_regrouped(std::string_view text);

}  // namespace rglab
