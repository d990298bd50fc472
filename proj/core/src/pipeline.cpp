#include "rglab/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "rglab/error.hpp"
#include "rglab/subgroup.hpp"

namespace rglab {

void ThresholdHypothesis::validate() const {
  if (!(d0 > 0.0 && d0 < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "d0 must lie in (0, 1)");
  }
  if (base_k < 1) {
    throw Error(ErrorKind::InvalidArgument, "base_k must be >= 1");
  }
}

std::string_view to_string(Verdict v) {
  return v == Verdict::PropertyT ? "property-t" : "inconclusive";
}

double default_dprime(double d, const ThresholdHypothesis& hypothesis) {
  return 0.5 * (hypothesis.d0 + d);
}

namespace {

std::optional<double> density_or_none(std::size_t count, int k, int rank) {
  if (count == 0 || (rank < 2 && count > 1)) {
    return std::nullopt;
  }
  return effective_density(count, k, rank);
}

}  // namespace

std::string presentation_digest(const Presentation& p) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : format_presentation(p)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Certificate certify(const Presentation& g, int j, std::optional<double> dprime,
                    const ThresholdHypothesis& hypothesis,
                    double spectral_threshold) {
  hypothesis.validate();
  if (j < 1) {
    throw Error(ErrorKind::InvalidArgument, "j must be >= 1");
  }
  const int total_k = j * hypothesis.base_k;
  if (g.params() && g.params()->k != total_k) {
    throw Error(ErrorKind::WrongRelatorLength,
                "model relator length " + std::to_string(g.params()->k) +
                    " is not j * base_k = " + std::to_string(total_k));
  }
  for (const auto& r : g.relators()) {
    if (static_cast<int>(r.size()) != total_k) {
      throw Error(ErrorKind::WrongRelatorLength,
                  "relator length " + std::to_string(r.size()) +
                      " is not j * base_k = " + std::to_string(total_k));
    }
  }
  if (dprime) {
    if (!(*dprime > hypothesis.d0)) {
      throw Error(ErrorKind::InvalidArgument, "d' must exceed d0");
    }
    if (g.params() && !(*dprime < g.params()->d)) {
      throw Error(ErrorKind::InvalidArgument, "d' must be below d");
    }
  }

  Certificate cert;
  cert.input = g;
  cert.j = j;
  cert.hypothesis = hypothesis;
  cert.dprime = dprime;
  cert.spectral_threshold = spectral_threshold;
  if (g.params()) {
    cert.density_nominal = g.params()->d;
  }
  cert.density_input = density_or_none(g.size(), total_k, g.rank());

  const Presentation positive = positive_part(g);
  cert.positive_count = positive.size();
  if (dprime) {
    cert.target = floor_power(2 * g.rank() - 1,
                              static_cast<long double>(total_k) * *dprime);
    cert.positive = downsample(positive, *cert.target);
  } else {
    cert.positive = downsample(positive, positive.size());
  }
  cert.density_positive =
      density_or_none(cert.positive.size(), total_k, g.rank());

  cert.regrouped = build_gamma(cert.positive, j);
  cert.gamma_digest = presentation_digest(cert.regrouped.gamma);
  cert.density_gamma = density_or_none(
      cert.regrouped.gamma.size(), hypothesis.base_k, cert.regrouped.gamma.rank());
  cert.block_generators = positive_block_generators(g.rank(), j);

  if (hypothesis.base_k == 3) {
    cert.spectral = zuk_certify(cert.regrouped.gamma, spectral_threshold);
  }
  cert.audit = chain_audit(cert, g);
  const bool spectral_ok =
      cert.spectral && cert.spectral->verdict == SpectralVerdict::Certified;
  cert.verdict =
      spectral_ok && cert.audit.all() ? Verdict::PropertyT : Verdict::Inconclusive;
  return cert;
}

ChainAudit chain_audit(const Certificate& cert, const Presentation& g) {
  ChainAudit audit;
  const auto& gamma = cert.regrouped.gamma.relators();
  const auto& positive = cert.positive.relators();
  const BlockAlphabet& alphabet = cert.regrouped.alphabet;

  audit.gamma_relators_decode =
      gamma.size() == positive.size() && alphabet.base_rank() == g.rank() &&
      alphabet.block_length() == cert.j;
  if (audit.gamma_relators_decode) {
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      bool ok = false;
      try {
        ok = static_cast<int>(gamma[i].size()) == cert.hypothesis.base_k &&
             block_decode(gamma[i], alphabet) == positive[i];
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) {
        audit.gamma_relators_decode = false;
        break;
      }
    }
  }

  const std::unordered_set<Word> input(g.relators().begin(), g.relators().end());
  audit.positive_relators_in_input = std::all_of(
      positive.begin(), positive.end(),
      [&](const Word& r) { return r.is_positive() && input.contains(r); });

  audit.finite_index =
      index(stallings_fold(cert.block_generators, g.rank())).has_value();

  const std::unordered_set<Word> distinct(gamma.begin(), gamma.end());
  audit.counts_match = gamma.size() == positive.size() &&
                       distinct.size() == gamma.size() &&
                       (!cert.target || *cert.target == positive.size());
  return audit;
}

namespace {

std::string opt_double(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string("none");
}

void indent_block(std::ostringstream& os, const std::string& text,
                  const char* pad) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    os << pad << line << '\n';
  }
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_certificate(const Certificate& cert) {
  std::ostringstream os;
  os << "INPUT\n";
  indent_block(os, format_presentation(cert.input), "  ");
  os << "  j=" << cert.j << " base_k=" << cert.hypothesis.base_k
     << " d0=" << format_double(cert.hypothesis.d0)
     << " dprime=" << opt_double(cert.dprime)
     << " threshold=" << format_double(cert.spectral_threshold) << '\n';

  os << "STAGES\n";
  os << "  relators=" << cert.input.size() << '\n';
  os << "  positive_relators=" << cert.positive_count << '\n';
  os << "  target=" << (cert.target ? std::to_string(*cert.target) : "none")
     << '\n';
  os << "  downsampled=" << cert.positive.size() << '\n';
  os << "  gamma_rank=" << cert.regrouped.gamma.rank() << '\n';
  os << "  gamma_relators=" << cert.regrouped.gamma.size() << '\n';
  os << "  gamma_digest=" << cert.gamma_digest << '\n';
  os << "  density_nominal=" << opt_double(cert.density_nominal) << '\n';
  os << "  density_effective_input=" << opt_double(cert.density_input) << '\n';
  os << "  density_effective_positive=" << opt_double(cert.density_positive)
     << '\n';
  os << "  density_effective_gamma=" << opt_double(cert.density_gamma) << '\n';
  os << "  gamma:\n";
  indent_block(os, format_presentation(cert.regrouped.gamma), "    ");

  os << "SPECTRUM\n";
  if (!cert.spectral) {
    os << "  none (no spectral criterion for base_k="
       << cert.hypothesis.base_k << ")\n";
  } else {
    os << "  " << format_verdict_line(*cert.spectral) << '\n';
    if (const auto& s = cert.spectral->spectrum) {
      os << "  connected=" << yes_no(s->connected)
         << " isolated=" << s->isolated_vertices
         << " zero_multiplicity=" << s->multiplicity_of_zero << '\n';
      os << "  eigenvalues=";
      char buf[32];
      for (std::size_t i = 0; i < s->eigenvalues.size(); ++i) {
        // Round first so a tiny negative zero eigenvalue prints as 0.
        const double rounded = std::round(s->eigenvalues[i] * 1e12) / 1e12;
        std::snprintf(buf, sizeof(buf), "%.12f", rounded + 0.0);
        os << (i == 0 ? "" : " ") << buf;
      }
      os << '\n';
    }
  }

  os << "AUDIT\n";
  os << "  gamma_relators_decode=" << yes_no(cert.audit.gamma_relators_decode)
     << '\n';
  os << "  positive_relators_in_input="
     << yes_no(cert.audit.positive_relators_in_input) << '\n';
  os << "  finite_index=" << yes_no(cert.audit.finite_index) << '\n';
  os << "  counts_match=" << yes_no(cert.audit.counts_match) << '\n';

  os << "VERDICT\n";
  os << "  " << to_string(cert.verdict) << '\n';
  return os.str();
}

unsigned worker_threads_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RG_LAB_THREADS")) {
    unsigned cap = 0;
    const auto [ptr, ec] =
        std::from_chars(env, env + std::char_traits<char>::length(env), cap);
    if (ec == std::errc() && cap >= 1) {
      return std::min(cap, hw);
    }
  }
  return hw;
}

namespace {

struct Task {
  int trial;
  int n;
  double d;
  std::uint64_t seed;
};

ExperimentRow run_trial(const ExperimentConfig& config, const Task& task) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRow row;
  row.trial = task.trial;
  row.n = task.n;
  row.k = config.k;
  row.j = config.j;
  row.d = task.d;
  row.seed = task.seed;

  ThresholdHypothesis hypothesis = config.hypothesis;
  switch (config.dprime_policy) {
    case ExperimentConfig::DprimePolicy::None: break;
    case ExperimentConfig::DprimePolicy::Midpoint:
      row.dprime = default_dprime(task.d, hypothesis);
      break;
    case ExperimentConfig::DprimePolicy::Fixed: row.dprime = config.dprime; break;
  }

  try {
    if (config.j < 1 || config.k % config.j != 0) {
      throw Error(ErrorKind::InvalidArgument, "k must be a multiple of j");
    }
    hypothesis.base_k = config.k / config.j;
    ModelParams params{task.n, config.k, task.d, config.positive, task.seed};
    const Presentation g = sample_presentation(params);
    row.relators = g.size();
    row.positive_relators = positive_part(g).size();
    if (row.dprime) {
      row.target = floor_power(2 * task.n - 1,
                               static_cast<long double>(config.k) * *row.dprime);
    }
    const Certificate cert = certify(g, config.j, row.dprime, hypothesis);
    row.gamma_rank = cert.regrouped.gamma.rank();
    row.gamma_density_eff = cert.density_gamma;
    if (cert.spectral && cert.spectral->spectrum) {
      row.lambda1 = cert.spectral->spectrum->lambda1;
      row.connected = cert.spectral->spectrum->connected &&
                      cert.spectral->spectrum->isolated_vertices == 0;
    }
    row.verdict = std::string(to_string(cert.verdict));
  } catch (const Error& e) {
    row.error = std::string(to_string(e.kind()));
    row.verdict = e.kind() == ErrorKind::InsufficientPositiveRelators
                      ? "insufficient"
                      : "error";
  }
  if (config.timing) {
    row.ms = std::chrono::duration<double, std::milli>(
                 std::chrono::steady_clock::now() - start)
                 .count();
  }
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  std::vector<Task> tasks;
  std::uint64_t index = 0;
  for (int n : config.ns) {
    for (double d : config.ds) {
      for (int t = 0; t < config.trials; ++t) {
        tasks.push_back(Task{t, n, d, derive_seed(config.master_seed, index++)});
      }
    }
  }
  std::vector<ExperimentRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      rows[i] = run_trial(config, tasks[i]);
    }
  };
  const unsigned threads =
      std::max(1u, std::min<unsigned>(config.threads,
                                      static_cast<unsigned>(tasks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  return rows;
}

std::string format_experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << kExperimentCsvHeader << '\n';
  const auto opt = [](const auto& x) {
    return x ? format_double(static_cast<double>(*x)) : std::string();
  };
  for (const auto& r : rows) {
    char lambda[32] = "";
    if (r.lambda1) {
      std::snprintf(lambda, sizeof(lambda), "%.12f", *r.lambda1);
    }
    char ms[32] = "";
    if (r.ms) {
      std::snprintf(ms, sizeof(ms), "%.3f", *r.ms);
    }
    os << r.trial << ',' << r.n << ',' << r.k << ',' << r.j << ','
       << format_double(r.d) << ',' << opt(r.dprime) << ',' << r.relators
       << ',' << r.positive_relators << ','
       << (r.target ? std::to_string(*r.target) : "") << ','
       << (r.gamma_rank ? std::to_string(*r.gamma_rank) : "") << ','
       << opt(r.gamma_density_eff) << ',' << lambda << ','
       << (r.connected ? (*r.connected ? "1" : "0") : "") << ',' << r.verdict
       << ',' << r.error << ',' << r.seed << ',' << ms << '\n';
  }
  return os.str();
}

std::vector<RateSummary> summarize(const std::vector<ExperimentRow>& rows) {
  std::map<std::pair<int, double>, RateSummary> cells;
  std::map<std::pair<int, double>, int> with_spectrum;
  for (const auto& r : rows) {
    auto& s = cells[{r.n, r.d}];
    s.n = r.n;
    s.d = r.d;
    ++s.trials;
    if (r.verdict == "property-t") {
      ++s.certified;
    }
    if (r.verdict == "insufficient") {
      ++s.insufficient;
    }
    if (r.lambda1) {
      s.mean_lambda1 += *r.lambda1;
      ++with_spectrum[{r.n, r.d}];
    }
  }
  std::vector<RateSummary> out;
  for (auto& [key, s] : cells) {
    if (const int c = with_spectrum[key]; c > 0) {
      s.mean_lambda1 /= c;
    }
    out.push_back(s);
  }
  return out;
}

std::string format_summary(const std::vector<RateSummary>& summary) {
  std::ostringstream os;
  os << "n,d,trials,certified,insufficient,rate,mean_lambda1\n";
  for (const auto& s : summary) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d,%s,%d,%d,%d,%.4f,%.6f\n", s.n,
                  format_double(s.d).c_str(), s.trials, s.certified,
                  s.insufficient, s.rate(), s.mean_lambda1);
    os << buf;
  }
  return os.str();
}

}  // namespace rglab
