#pragma once

// From a jk-gonal presentation G to a certificate for Property (T):
//
//   Gamma --phi--> phi(Gamma) <=f.i. G+ --> G
//
// G+ keeps the positive relators of G (downsampled to the count of density
// d'), Gamma rewrites them over the alphabet of positive j-blocks, and the
// spectral test is applied to Gamma. Property (T) passes to G through the
// surjections and the finite-index inclusion.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rglab/freegroup.hpp"
#include "rglab/models.hpp"
#include "rglab/regroup.hpp"
#include "rglab/spectral.hpp"

namespace rglab {

struct ThresholdHypothesis {
  double d0 = 1.0 / 3.0;
  int base_k = 3;

  void validate() const;
};

struct ChainAudit {
  bool gamma_relators_decode = false;  // Gamma relator i decodes to G+ relator i
  bool positive_relators_in_input = false;  // G+ -> G
  bool finite_index = false;  // folded block generators cover the rose
  bool counts_match = false;  // |Gamma| = |G+| (= target when downsampled)

  bool all() const noexcept {
    return gamma_relators_decode && positive_relators_in_input &&
           finite_index && counts_match;
  }
};

enum class Verdict { PropertyT, Inconclusive };
std::string_view to_string(Verdict v);

struct Certificate {
  Presentation input;
  int j = 1;
  ThresholdHypothesis hypothesis;
  std::optional<double> dprime;
  double spectral_threshold = kDefaultSpectralThreshold;

  std::size_t positive_count = 0;          // |R+| before downsampling
  std::optional<std::uint64_t> target;     // floor((2n-1)^(j k d'))
  Presentation positive;                   // G+ after downsampling
  RegroupedPresentation regrouped;         // Gamma with its block map
  std::vector<Word> block_generators;      // W+_j, rank n
  std::string gamma_digest;

  std::optional<double> density_nominal;   // d of the input model
  std::optional<double> density_input;     // effective densities
  std::optional<double> density_positive;
  std::optional<double> density_gamma;

  std::optional<SpectralCertification> spectral;  // only for base_k = 3
  ChainAudit audit;
  Verdict verdict = Verdict::Inconclusive;
};

// Throws WrongRelatorLength when relators are not of length j * base_k,
// InvalidArgument when d' is outside (d0, d), and
// InsufficientPositiveRelators when G has fewer positive relators than the
// downsampling target. Without d' no downsampling happens.
Certificate certify(const Presentation& g, int j, std::optional<double> dprime,
                    const ThresholdHypothesis& hypothesis = {},
                    double spectral_threshold = kDefaultSpectralThreshold);

ChainAudit chain_audit(const Certificate& cert, const Presentation& g);

// Midpoint of (d0, d).
double default_dprime(double d, const ThresholdHypothesis& hypothesis);

// FNV-1a 64 over the canonical text form, as 16 hex digits.
std::string presentation_digest(const Presentation& p);

// Sections INPUT, STAGES, SPECTRUM, AUDIT, VERDICT.
std::string format_certificate(const Certificate& cert);

struct ExperimentConfig {
  std::vector<int> ns;
  std::vector<double> ds;
  int k = 3;
  bool positive = true;
  int j = 1;
  enum class DprimePolicy { None, Midpoint, Fixed } dprime_policy =
      DprimePolicy::None;
  double dprime = 0.0;  // used by Fixed
  int trials = 0;
  std::uint64_t master_seed = 0;
  ThresholdHypothesis hypothesis;  // base_k is taken from k / j
  unsigned threads = 1;
  bool timing = false;  // fill the ms column; off keeps output byte-stable
};

struct ExperimentRow {
  int trial = 0;
  int n = 0;
  int k = 0;
  int j = 0;
  double d = 0.0;
  std::optional<double> dprime;
  std::size_t relators = 0;
  std::size_t positive_relators = 0;
  std::optional<std::uint64_t> target;
  std::optional<int> gamma_rank;
  std::optional<double> gamma_density_eff;
  std::optional<double> lambda1;
  std::optional<bool> connected;
  std::string verdict;  // property-t | inconclusive | insufficient | error
  std::string error;
  std::uint64_t seed = 0;
  std::optional<double> ms;
};

// Cells in (n, d) order, trials within each cell; trial seeds are
// derive_seed(master_seed, running task index). Per-trial failures become
// rows. Rows come back in task order whatever the thread count.
std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);

// Worker count from RG_LAB_THREADS, capped by hardware concurrency.
unsigned worker_threads_from_env();

inline constexpr std::string_view kExperimentCsvHeader =
    "trial,n,k,j,d,dprime,relators,positive_relators,target,gamma_rank,"
    "gamma_density_eff,lambda1,connected,verdict,error,seed,ms";

std::string format_experiment_csv(const std::vector<ExperimentRow>& rows);

struct RateSummary {
  int n = 0;
  double d = 0.0;
  int trials = 0;
  int certified = 0;
  int insufficient = 0;
  double mean_lambda1 = 0.0;  // over rows with a spectrum
  double rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(certified) / trials;
  }
};

std::vector<RateSummary> summarize(const std::vector<ExperimentRow>& rows);
std::string format_summary(const std::vector<RateSummary>& s);

}  // namespace rglab
