#include <doctest.h>

#include <cmath>

#include "rglab/error.hpp"
#include "rglab/pipeline.hpp"

using namespace rglab;

namespace {

Presentation sample(int n, int k, double d, bool positive, std::uint64_t seed) {
  return sample_presentation(ModelParams{n, k, d, positive, seed});
}

}  // namespace

TEST_CASE("certify on M+_6(15, 0.4) with j = 2 builds a rank 225 triangular gamma") {
  const auto g = sample(15, 6, 0.4, true, 1);
  const auto cert = certify(g, 2, 0.35);
  CHECK(cert.regrouped.gamma.rank() == 225);
  REQUIRE(cert.target.has_value());
  // 29^2.1 = 1177.1
  CHECK(*cert.target == 1177);
  CHECK(cert.positive.size() == 1177);
  CHECK(cert.regrouped.gamma.size() == 1177);
  for (const auto& r : cert.regrouped.gamma.relators()) CHECK(r.size() == 3);
  CHECK(cert.audit.all());
  REQUIRE(cert.spectral.has_value());
  CHECK(cert.verdict == (cert.spectral->verdict == SpectralVerdict::Certified
                             ? Verdict::PropertyT
                             : Verdict::Inconclusive));
  CHECK(cert.gamma_digest.size() == 16);
  CHECK(cert.gamma_digest == presentation_digest(cert.regrouped.gamma));
}

TEST_CASE("closed loop: certificates from certify pass their own audit") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = sample(6, 6, 0.45, true, seed);
    const auto cert = certify(g, 2, std::nullopt);
    const auto audit = chain_audit(cert, g);
    CHECK(audit.all());
    CHECK(cert.audit.all());
    CHECK_FALSE(cert.target.has_value());
    CHECK(cert.positive.size() == g.size());
  }
}

TEST_CASE("mutations falsify the matching audit boolean") {
  const auto g = sample(8, 6, 0.45, true, 3);
  const auto cert = certify(g, 2, 0.4);
  REQUIRE(cert.audit.all());

  SUBCASE("perturbed gamma relator") {
    auto bad = cert;
    auto rels = bad.regrouped.gamma.relators();
    auto letters = std::vector<Letter>(rels[0].begin(), rels[0].end());
    letters[1] = letters[1] % bad.regrouped.gamma.rank() + 1;
    rels[0] = Word(bad.regrouped.gamma.rank(), letters);
    bad.regrouped.gamma = Presentation(bad.regrouped.gamma.rank(), rels);
    const auto audit = chain_audit(bad, g);
    CHECK_FALSE(audit.gamma_relators_decode);
    CHECK(audit.positive_relators_in_input);
    CHECK(audit.finite_index);
  }
  SUBCASE("commutator instead of W+_j") {
    auto bad = cert;
    bad.block_generators = {Word(8, {1, 2, -1, -2})};
    const auto audit = chain_audit(bad, g);
    CHECK_FALSE(audit.finite_index);
    CHECK(audit.gamma_relators_decode);
  }
  SUBCASE("positive relator missing from the input") {
    const Presentation other = sample(8, 6, 0.45, true, 4);
    CHECK_FALSE(chain_audit(cert, other).positive_relators_in_input);
  }
  SUBCASE("dropped gamma relator") {
    auto bad = cert;
    auto rels = bad.regrouped.gamma.relators();
    rels.pop_back();
    bad.regrouped.gamma = Presentation(bad.regrouped.gamma.rank(), rels);
    CHECK_FALSE(chain_audit(bad, g).counts_match);
  }
}

TEST_CASE("j = 1 reduces to the spectral test of G itself") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = sample(10, 3, 0.45, true, seed);
    const auto cert = certify(g, 1, 0.45 - 1e-9);
    REQUIRE(cert.target.has_value());
    CHECK(*cert.target == g.size());
    CHECK(cert.regrouped.gamma.rank() == 10);
    for (const auto& r : g.relators()) CHECK(cert.regrouped.gamma.contains(r));
    const auto direct = zuk_certify(g);
    REQUIRE(cert.spectral.has_value());
    CHECK(cert.spectral->verdict == direct.verdict);
    CHECK(std::abs(cert.spectral->spectrum->lambda1 - direct.spectrum->lambda1) < 1e-12);
  }
}

TEST_CASE("mixed-sign M_6(3, 0.4) lacks positive relators") {
  int insufficient = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = sample(3, 6, 0.4, false, seed);
    try {
      certify(g, 2, default_dprime(0.4, {}));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InsufficientPositiveRelators);
      ++insufficient;
    }
  }
  CHECK(insufficient == 20);
}

TEST_CASE("certify preconditions") {
  const auto g = sample(4, 6, 0.4, true, 1);
  try {
    certify(g, 3, std::nullopt);
    FAIL("expected WrongRelatorLength");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WrongRelatorLength);
  }
  CHECK_THROWS_AS(certify(g, 2, 0.3), Error);   // below d0
  CHECK_THROWS_AS(certify(g, 2, 0.41), Error);  // above d
  CHECK(default_dprime(0.4, {}) == doctest::Approx((0.4 + 1.0 / 3.0) / 2));
}

TEST_CASE("non-triangular base length records stages without a verdict") {
  ThresholdHypothesis h{0.3, 4};
  const auto g = sample(4, 8, 0.4, true, 2);
  const auto cert = certify(g, 2, std::nullopt, h);
  CHECK_FALSE(cert.spectral.has_value());
  CHECK(cert.verdict == Verdict::Inconclusive);
  CHECK(cert.audit.all());
}

TEST_CASE("positive relator counts follow the hypergeometric mean") {
  // M_6(2, 0.5): 27 relators out of 732 cyclically reduced words, 64 positive.
  const double big_n = static_cast<double>(count_cyclically_reduced(2, 6));
  const double c = 27.0;
  const double p = 64.0 / big_n;
  const int samples = 500;
  double sum = 0;
  for (int s = 0; s < samples; ++s) {
    const auto g = sample(2, 6, 0.5, false, derive_seed(77, static_cast<std::uint64_t>(s)));
    sum += static_cast<double>(certify(g, 2, std::nullopt).positive_count);
  }
  const double mean = sum / samples;
  const double sd = std::sqrt(c * p * (1 - p) * (big_n - c) / (big_n - 1));
  CHECK(std::abs(mean - c * p) < 3 * sd / std::sqrt(samples));
}

TEST_CASE("certificate text has the five sections in order") {
  const auto cert = certify(sample(6, 6, 0.45, true, 1), 2, 0.4);
  const auto text = format_certificate(cert);
  std::size_t pos = 0;
  for (const char* section : {"INPUT", "STAGES", "SPECTRUM", "AUDIT", "VERDICT"}) {
    const auto at = text.find(section, pos);
    CHECK(at != std::string::npos);
    pos = at;
  }
  CHECK(format_certificate(cert) == text);
}

TEST_CASE("experiment with zero trials is a bare header") {
  ExperimentConfig config;
  config.ns = {10};
  config.ds = {0.4};
  config.trials = 0;
  config.master_seed = 1;
  const auto rows = run_experiment(config);
  CHECK(rows.empty());
  CHECK(format_experiment_csv(rows) == std::string(kExperimentCsvHeader) + "\n");
}

TEST_CASE("experiment output does not depend on the thread count") {
  ExperimentConfig config;
  config.ns = {6, 8};
  config.ds = {0.4, 0.45};
  config.k = 6;
  config.j = 2;
  config.dprime_policy = ExperimentConfig::DprimePolicy::Midpoint;
  config.trials = 4;
  config.master_seed = 2024;
  config.threads = 1;
  const auto serial = format_experiment_csv(run_experiment(config));
  config.threads = 4;
  const auto parallel = format_experiment_csv(run_experiment(config));
  CHECK(serial == parallel);
  CHECK(std::count(serial.begin(), serial.end(), '\n') == 17);

  const auto rows = run_experiment(config);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].seed == derive_seed(2024, i));
  }
  const auto summary = summarize(rows);
  CHECK(summary.size() == 4);
  for (const auto& s : summary) CHECK(s.trials == 4);
}

TEST_CASE("experiment rows record per-trial failures") {
  ExperimentConfig config;
  config.ns = {3};
  config.ds = {0.4};
  config.k = 6;
  config.j = 2;
  config.positive = false;
  config.dprime_policy = ExperimentConfig::DprimePolicy::Midpoint;
  config.trials = 5;
  config.master_seed = 9;
  const auto rows = run_experiment(config);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) CHECK(r.verdict == "insufficient");
}
