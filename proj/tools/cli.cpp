#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "rglab/error.hpp"
#include "rglab/models.hpp"
#include "rglab/pipeline.hpp"
#include "rglab/regroup.hpp"
#include "rglab/spectral.hpp"
#include "rglab/subgroup.hpp"

namespace rglab::cli {

namespace {

void build_app(CLI::App& app, RunConfig& c) {
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  const auto seed_opt = [&c](CLI::App* sub, bool required) {
    auto* opt = sub->add_option_function<std::uint64_t>(
        "--seed", [&c](const std::uint64_t& s) { c.seed = s; },
        "master RNG seed (mt19937_64)");
    if (required) {
      opt->required();
    }
  };

  auto* sample = app.add_subcommand("sample", "sample a presentation from M_k(n,d) or M+_k(n,d)");
  sample->add_option("--n", c.n, "rank");
  sample->add_option("--k", c.k, "relator length");
  sample->add_option("--d", c.d, "density in (0,1), decimal or p/q");
  seed_opt(sample, false);
  sample->add_flag("--positive", c.positive, "positive model");
  sample->add_option_function<std::uint64_t>(
      "--count-override", [&c](const std::uint64_t& v) { c.count_override = v; },
      "relator count instead of floor((2n-1)^(kd))");
  sample->add_flag("--alpha", c.alpha, "also print relators as letters");
  sample->add_option("--out", c.output, "presentation file (default stdout)");

  auto* certify = app.add_subcommand("certify", "run the regrouping pipeline and certify Property (T)");
  certify->add_option("input", c.input, "presentation file")->required();
  certify->add_option("--j", c.j, "block length");
  certify->add_option("--dprime", c.dprime,
                      "auto (midpoint of (d0,d) when the file has a model line), none, or a value");
  certify->add_option("--d0", c.d0, "threshold hypothesis d0");
  certify->add_option("--base-k", c.base_k, "relator length of the certified base model");
  certify->add_option("--threshold", c.threshold, "spectral threshold");
  certify->add_option("--out", c.output, "certificate file (default stdout)");

  auto* fold = app.add_subcommand("fold", "Stallings-fold a subgroup and report its index");
  fold->add_flag("--wjplus", c.wjplus, "use the positive words of length j");
  fold->add_option("--n", c.n, "rank");
  fold->add_option("--j", c.j, "block length for --wjplus");
  fold->add_option("--gen", c.generators, "generator word, e.g. \"1 2 -1 -2\" (repeatable)");
  fold->add_option("--generators", c.generators_file, "file with one generator word per line");

  auto* audit = app.add_subcommand("lemma-audit", "exhaustively check the transversal rewriting");
  audit->add_option("--n", c.n, "rank");
  audit->add_option("--j", c.j, "block length");
  audit->add_option("--max-len", c.max_len, "largest word length");

  auto* spectrum = app.add_subcommand("spectrum", "link-graph spectrum of a triangular presentation");
  spectrum->add_option("input", c.input, "presentation file")->required();
  spectrum->add_option("--csv", c.csv, "write index,eigenvalue CSV here (default stdout)");
  spectrum->add_option("--threshold", c.threshold, "spectral threshold");

  auto* experiment = app.add_subcommand("experiment", "seeded sweep over (n, d) with per-trial rows");
  experiment->add_option("--model", c.model, "pos<k> or mixed<k>");
  experiment->add_option("--n", c.ns, "ranks, comma separated")->delimiter(',')->required();
  experiment->add_option("--d", c.ds, "densities, comma separated")->delimiter(',')->required();
  experiment->add_option("--j", c.j, "block length");
  experiment->add_option("--dprime", c.dprime, "none (default), mid, or a value");
  experiment->add_option("--d0", c.d0, "threshold hypothesis d0");
  experiment->add_option("--trials", c.trials, "trials per (n, d) cell");
  seed_opt(experiment, true);
  experiment->add_flag("--timing", c.timing, "fill the ms column (output no longer byte-stable)");
  experiment->add_flag("--summary", c.summary, "print per-cell certification rates to stderr");
  experiment->add_option("--out", c.output, "CSV file (default stdout)");

  app.callback([&app, &c] {
    for (const auto* sub : app.get_subcommands()) {
      c.subcommand = sub->get_name();
    }
  });
}

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? "," : "") + std::to_string(xs[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out += (i ? "," : "") + xs[i];
  }
  return out;
}

std::string flag_double(double x) { return format_double(x); }

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SpaceExhausted:
    case ErrorKind::Overflow: return kExitInfeasible;
    case ErrorKind::InsufficientPositiveRelators: return kExitInsufficient;
    default: return kExitUsage;
  }
}

std::ostream& open_out(const std::string& path, std::ofstream& file,
                       std::ostream& fallback) {
  if (path.empty() || path == "-") {
    return fallback;
  }
  file.open(path);
  if (!file) {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  }
  return file;
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ModelParams params{c.n, c.k, parse_density(c.d), c.positive, c.seed.value_or(0)};
  const Presentation p = sample_presentation(params, c.count_override);
  std::ofstream file;
  std::ostream& dest = open_out(c.output, file, out);
  write_presentation(dest, p);
  std::ostream& info = (&dest == &out) ? err : out;
  info << "relators=" << p.size();
  if (p.size() >= 1 && (p.size() == 1 || c.n >= 2)) {
    info << " effective_density="
         << format_double(effective_density(p.size(), c.k, c.n));
  }
  info << '\n';
  if (c.alpha) {
    for (const auto& r : p.relators()) {
      info << format_alpha(r) << '\n';
    }
  }
  return kExitOk;
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Presentation g = read_presentation_file(c.input);
  ThresholdHypothesis hypothesis{c.d0, c.base_k};
  std::optional<double> dprime;
  if (c.dprime.empty() || c.dprime == "auto" || c.dprime == "mid") {
    if (g.params()) {
      dprime = default_dprime(g.params()->d, hypothesis);
    }
  } else if (c.dprime != "none") {
    dprime = parse_density(c.dprime);
  }
  const Certificate cert = certify(g, c.j, dprime, hypothesis, c.threshold);
  std::ofstream file;
  open_out(c.output, file, out) << format_certificate(cert);
  if (!c.output.empty()) {
    err << to_string(cert.verdict) << '\n';
  }
  return cert.verdict == Verdict::PropertyT ? kExitOk : kExitInconclusive;
}

std::vector<Word> read_generators(const RunConfig& c) {
  std::vector<std::string> texts = c.generators;
  if (!c.generators_file.empty()) {
    std::ifstream in(c.generators_file);
    if (!in) {
      throw Error(ErrorKind::Parse, "cannot open " + c.generators_file);
    }
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) {
        line.resize(hash);
      }
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        texts.push_back(line);
      }
    }
  }
  std::vector<Word> out;
  for (const auto& t : texts) {
    out.push_back(parse_word(t, std::numeric_limits<int>::max()));
  }
  return out;
}

int cmd_fold(const RunConfig& c, std::ostream& out) {
  int rank = c.n;
  std::vector<Word> gens;
  if (c.wjplus) {
    gens = positive_block_generators(c.n, c.j);
  } else {
    gens = read_generators(c);
    // --n is a floor; letters may widen the rank.
    for (const auto& w : gens) {
      for (Letter x : w) {
        rank = std::max(rank, std::abs(x));
      }
    }
  }
  const SubgroupGraph g = stallings_fold(gens, rank);
  out << format_graph(g);
  const auto idx = index(g);
  out << "index=" << (idx ? std::to_string(*idx) : "inf") << '\n';
  return kExitOk;
}

int cmd_lemma_audit(const RunConfig& c, std::ostream& out) {
  const LemmaAuditReport r = lemma_audit(c.n, c.j, c.max_len);
  out << format_report(r);
  return r.passed() ? kExitOk : kExitAuditFailed;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  const Presentation p = read_presentation_file(c.input);
  const SpectralCertification cert = zuk_certify(p, c.threshold);
  if (cert.spectrum) {
    std::ofstream file;
    open_out(c.csv, file, out) << format_spectrum_csv(*cert.spectrum);
  }
  out << format_verdict_line(cert) << '\n';
  return cert.verdict == SpectralVerdict::Certified ? kExitOk
                                                   : kExitInconclusive;
}

int cmd_experiment(const RunConfig& c, std::ostream& out, std::ostream& err) {
  static const std::regex model_re("(pos|mixed)([0-9]+)");
  std::smatch m;
  if (!std::regex_match(c.model, m, model_re)) {
    throw Error(ErrorKind::InvalidArgument,
                "model must look like pos3 or mixed6, got " + c.model);
  }
  ExperimentConfig config;
  config.positive = m[1] == "pos";
  config.k = std::stoi(m[2]);
  config.ns = c.ns;
  for (const auto& d : c.ds) {
    config.ds.push_back(parse_density(d));
  }
  config.j = c.j;
  config.hypothesis.d0 = c.d0;
  if (c.dprime.empty() || c.dprime == "none") {
    config.dprime_policy = ExperimentConfig::DprimePolicy::None;
  } else if (c.dprime == "mid" || c.dprime == "auto") {
    config.dprime_policy = ExperimentConfig::DprimePolicy::Midpoint;
  } else {
    config.dprime_policy = ExperimentConfig::DprimePolicy::Fixed;
    config.dprime = parse_density(c.dprime);
  }
  if (c.trials < 0) {
    throw Error(ErrorKind::InvalidArgument, "trials must be >= 0");
  }
  config.trials = c.trials;
  config.master_seed = c.seed.value();
  config.threads = worker_threads_from_env();
  config.timing = c.timing;

  const auto rows = run_experiment(config);
  std::ofstream file;
  open_out(c.output, file, out) << format_experiment_csv(rows);
  if (c.summary) {
    err << format_summary(summarize(rows));
  }
  return kExitOk;
}

}  // namespace

double parse_density(const std::string& text) {
  const auto slash = text.find('/');
  const auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::InvalidArgument, "bad number '" + text + "'");
    }
    return v;
  };
  if (slash == std::string::npos) {
    return number(text);
  }
  const double den = number(std::string_view(text).substr(slash + 1));
  if (den == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "zero denominator in " + text);
  }
  return number(std::string_view(text).substr(0, slash)) / den;
}

std::string format_alpha(const Word& w) {
  if (w.rank() > 26) {
    return to_string(w);
  }
  if (w.empty()) {
    return "e";
  }
  std::string out;
  for (Letter x : w) {
    out += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
  }
  return out;
}

RunConfig parse_run_config(const std::vector<std::string>& args) {
  RunConfig config;
  CLI::App app{"rglab: random group presentations and Property (T) certificates"};
  build_app(app, config);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app.parse(reversed);
  return config;
}

std::vector<std::string> to_args(const RunConfig& c) {
  std::vector<std::string> a{c.subcommand};
  const auto opt = [&a](const std::string& flag, const std::string& value) {
    a.push_back(flag);
    a.push_back(value);
  };
  if (c.subcommand == "sample") {
    opt("--n", std::to_string(c.n));
    opt("--k", std::to_string(c.k));
    opt("--d", c.d);
    if (c.seed) opt("--seed", std::to_string(*c.seed));
    if (c.positive) a.push_back("--positive");
    if (c.count_override) opt("--count-override", std::to_string(*c.count_override));
    if (c.alpha) a.push_back("--alpha");
    if (!c.output.empty()) opt("--out", c.output);
  } else if (c.subcommand == "certify") {
    a.push_back(c.input);
    opt("--j", std::to_string(c.j));
    if (!c.dprime.empty()) opt("--dprime", c.dprime);
    opt("--d0", flag_double(c.d0));
    opt("--base-k", std::to_string(c.base_k));
    opt("--threshold", flag_double(c.threshold));
    if (!c.output.empty()) opt("--out", c.output);
  } else if (c.subcommand == "fold") {
    if (c.wjplus) a.push_back("--wjplus");
    opt("--n", std::to_string(c.n));
    opt("--j", std::to_string(c.j));
    for (const auto& g : c.generators) opt("--gen", g);
    if (!c.generators_file.empty()) opt("--generators", c.generators_file);
  } else if (c.subcommand == "lemma-audit") {
    opt("--n", std::to_string(c.n));
    opt("--j", std::to_string(c.j));
    opt("--max-len", std::to_string(c.max_len));
  } else if (c.subcommand == "spectrum") {
    a.push_back(c.input);
    if (!c.csv.empty()) opt("--csv", c.csv);
    opt("--threshold", flag_double(c.threshold));
  } else if (c.subcommand == "experiment") {
    opt("--model", c.model);
    opt("--n", join_ints(c.ns));
    opt("--d", join(c.ds));
    opt("--j", std::to_string(c.j));
    if (!c.dprime.empty()) opt("--dprime", c.dprime);
    opt("--d0", flag_double(c.d0));
    opt("--trials", std::to_string(c.trials));
    if (c.seed) opt("--seed", std::to_string(*c.seed));
    if (c.timing) a.push_back("--timing");
    if (c.summary) a.push_back("--summary");
    if (!c.output.empty()) opt("--out", c.output);
  }
  return a;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.subcommand == "sample") return cmd_sample(c, out, err);
    if (c.subcommand == "certify") return cmd_certify(c, out, err);
    if (c.subcommand == "fold") return cmd_fold(c, out);
    if (c.subcommand == "lemma-audit") return cmd_lemma_audit(c, out);
    if (c.subcommand == "spectrum") return cmd_spectrum(c, out);
    if (c.subcommand == "experiment") return cmd_experiment(c, out, err);
    err << "unknown subcommand " << c.subcommand << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_for(e);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  CLI::App app{"rglab: random group presentations and Property (T) certificates"};
  build_app(app, config);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace rglab::cli
