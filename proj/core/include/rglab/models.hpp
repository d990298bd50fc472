#pragma once

// Samplers for the k-gonal model M_k(n, d) and its positive variant
// M+_k(n, d): presentations on n generators with floor((2n-1)^(kd)) distinct
// relators of length k, drawn uniformly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rglab/freegroup.hpp"
#include "rglab/random.hpp"

namespace rglab {

struct ModelParams {
  int n = 1;
  int k = 1;
  double d = 0.5;
  bool positive = false;
  std::uint64_t seed = 0;

  // Throws InvalidArgument unless n >= 1, k >= 1, 0 < d < 1.
  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

// Largest relator set the samplers will build.
inline constexpr std::uint64_t kDefaultRelatorBudget = 5'000'000;

// Gap below which a real count just under an integer is taken to be that
// integer. Absorbs log/exp rounding and densities written to a few decimals
// (0.3333 for 1/3).
inline constexpr long double kCountBoundaryGuard = 1e-3L;

// floor((2n-1)^(k d)), snapped up across kCountBoundaryGuard.
// Throws Overflow above `budget`.
std::uint64_t relator_count(const ModelParams& params,
                            std::uint64_t budget = kDefaultRelatorBudget);

// Same arithmetic with an arbitrary real exponent: floor(base^exponent).
std::uint64_t floor_power(int base, long double exponent,
                          std::uint64_t budget = kDefaultRelatorBudget);

// Size of the word space the model draws from: n^k or the number of
// cyclically reduced words of length k.
BigInt word_space_size(int n, int k, bool positive);

class Presentation {
 public:
  Presentation() = default;
  Presentation(int rank, std::vector<Word> relators,
               std::optional<ModelParams> params = std::nullopt);

  int rank() const noexcept { return rank_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  std::size_t size() const noexcept { return relators_.size(); }
  const std::optional<ModelParams>& params() const noexcept { return params_; }
  bool all_positive() const noexcept;
  bool contains(const Word& w) const;

  // Every relator cyclically reduced, pairwise distinct, of length params.k
  // when params are present, positive when params say so. Throws
  // InvalidArgument naming the first violation.
  void validate() const;

  bool operator==(const Presentation&) const = default;

 private:
  int rank_ = 0;
  std::vector<Word> relators_;
  std::optional<ModelParams> params_;
};

Word sample_relator(int n, int k, Rng& rng);
Word sample_positive_relator(int n, int k, Rng& rng);

// Distinct relators by rejecting duplicates, in draw order. When
// `count_override` is set it replaces relator_count(params). Throws
// SpaceExhausted if the count exceeds the word space.
Presentation sample_presentation(
    const ModelParams& params, Rng& rng,
    std::optional<std::uint64_t> count_override = std::nullopt);
// Uses Rng(params.seed).
Presentation sample_presentation(
    const ModelParams& params,
    std::optional<std::uint64_t> count_override = std::nullopt);

// Text format:
//   # comment
//   gens <n>
//   model k=<k> d=<d> positive=<0|1> seed=<seed>   (optional)
//   rel <word>
std::string format_presentation(const Presentation& p);
void write_presentation(std::ostream& os, const Presentation& p);
Presentation parse_presentation(std::string_view text);
Presentation read_presentation_file(const std::string& path);
void write_presentation_file(const std::string& path, const Presentation& p);

std::string format_double(double x);

}  // namespace rglab
