#include "rglab/models.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "rglab/error.hpp"

namespace rglab {

void ModelParams::validate() const {
  if (n < 1) {
    throw Error(ErrorKind::InvalidArgument, "model rank n must be >= 1");
  }
  if (k < 1) {
    throw Error(ErrorKind::InvalidArgument, "relator length k must be >= 1");
  }
  if (!(d > 0.0 && d < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "density d must lie in (0, 1)");
  }
}

std::uint64_t floor_power(int base, long double exponent,
                          std::uint64_t budget) {
  if (base < 1) {
    throw Error(ErrorKind::InvalidArgument, "floor_power base must be >= 1");
  }
  const long double log_value = exponent * std::log(static_cast<long double>(base));
  if (log_value > std::log(static_cast<long double>(budget)) + 1.0L) {
    throw Error(ErrorKind::Overflow,
                "relator count exceeds budget " + std::to_string(budget));
  }
  const long double value = std::exp(log_value);
  long double floored = std::floor(value);
  if (floored + 1.0L - value <= kCountBoundaryGuard) {
    floored += 1.0L;
  }
  const auto count = static_cast<std::uint64_t>(floored);
  if (count > budget) {
    throw Error(ErrorKind::Overflow,
                "relator count exceeds budget " + std::to_string(budget));
  }
  return count;
}

std::uint64_t relator_count(const ModelParams& params, std::uint64_t budget) {
  params.validate();
  return floor_power(2 * params.n - 1,
                     static_cast<long double>(params.k) *
                         static_cast<long double>(params.d),
                     budget);
}

BigInt word_space_size(int n, int k, bool positive) {
  if (positive) {
    BigInt out = 1;
    for (int i = 0; i < k; ++i) {
      out *= n;
    }
    return out;
  }
  return count_cyclically_reduced(n, k);
}

Presentation::Presentation(int rank, std::vector<Word> relators,
                           std::optional<ModelParams> params)
    : rank_(rank), relators_(std::move(relators)), params_(params) {
  for (auto& r : relators_) {
    if (r.rank() != rank_) {
      r = r.with_rank(rank_);
    }
  }
}

bool Presentation::all_positive() const noexcept {
  for (const auto& r : relators_) {
    if (!r.is_positive()) {
      return false;
    }
  }
  return true;
}

bool Presentation::contains(const Word& w) const {
  for (const auto& r : relators_) {
    if (r == w) {
      return true;
    }
  }
  return false;
}

void Presentation::validate() const {
  std::unordered_set<Word> seen;
  for (const auto& r : relators_) {
    if (!is_cyclically_reduced(r)) {
      throw Error(ErrorKind::InvalidArgument,
                  "relator not cyclically reduced: " + to_string(r));
    }
    if (params_ && static_cast<int>(r.size()) != params_->k) {
      throw Error(ErrorKind::InvalidArgument,
                  "relator length differs from k: " + to_string(r));
    }
    if (params_ && params_->positive && !r.is_positive()) {
      throw Error(ErrorKind::InvalidArgument,
                  "non-positive relator in positive model: " + to_string(r));
    }
    if (!seen.insert(r).second) {
      throw Error(ErrorKind::InvalidArgument,
                  "duplicate relator: " + to_string(r));
    }
  }
}

Word sample_relator(int n, int k, Rng& rng) {
  if (n < 1 || k < 1) {
    throw Error(ErrorKind::InvalidArgument, "sample_relator needs n, k >= 1");
  }
  if (n == 1) {
    // Only s^k and s^-k are cyclically reduced.
    const Letter x = rng.below(2) == 0 ? 1 : -1;
    return Word(1, std::vector<Letter>(static_cast<std::size_t>(k), x));
  }
  std::vector<Letter> letters(static_cast<std::size_t>(k));
  for (;;) {
    letters[0] = letter_from_order(static_cast<int>(rng.below(2 * n)));
    for (int i = 1; i < k; ++i) {
      // Skip the slot of the cancelling letter among the 2n letters.
      const int forbidden = letter_order(-letters[i - 1]);
      int pick = static_cast<int>(rng.below(2 * n - 1));
      if (pick >= forbidden) {
        ++pick;
      }
      letters[i] = letter_from_order(pick);
    }
    if (k < 2 || letters.front() != -letters.back()) {
      return Word(n, letters);
    }
  }
}

Word sample_positive_relator(int n, int k, Rng& rng) {
  if (n < 1 || k < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "sample_positive_relator needs n, k >= 1");
  }
  std::vector<Letter> letters(static_cast<std::size_t>(k));
  for (auto& x : letters) {
    x = rng.between(1, n);
  }
  return Word(n, std::move(letters));
}

Presentation sample_presentation(const ModelParams& params, Rng& rng,
                                 std::optional<std::uint64_t> count_override) {
  params.validate();
  const std::uint64_t count =
      count_override ? *count_override : relator_count(params);
  const BigInt space = word_space_size(params.n, params.k, params.positive);
  if (BigInt(count) > space) {
    throw Error(ErrorKind::SpaceExhausted,
                "requested " + std::to_string(count) +
                    " distinct relators but only " + space.str() +
                    " words exist");
  }
  std::vector<Word> relators;
  relators.reserve(count);
  std::unordered_set<Word> seen;
  seen.reserve(count);
  while (relators.size() < count) {
    Word w = params.positive ? sample_positive_relator(params.n, params.k, rng)
                             : sample_relator(params.n, params.k, rng);
    if (seen.insert(w).second) {
      relators.push_back(std::move(w));
    }
  }
  return Presentation(params.n, std::move(relators), params);
}

Presentation sample_presentation(const ModelParams& params,
                                 std::optional<std::uint64_t> count_override) {
  Rng rng(params.seed);
  return sample_presentation(params, rng, count_override);
}

std::string format_double(double x) {
  char buf[64];
  // Shortest form that round-trips.
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_presentation(std::ostream& os, const Presentation& p) {
  os << "gens " << p.rank() << '\n';
  if (const auto& params = p.params()) {
    os << "model k=" << params->k << " d=" << format_double(params->d)
       << " positive=" << (params->positive ? 1 : 0)
       << " seed=" << params->seed << '\n';
  }
  for (const auto& r : p.relators()) {
    os << "rel " << to_string(r) << '\n';
  }
}

std::string format_presentation(const Presentation& p) {
  std::ostringstream os;
  write_presentation(os, p);
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorKind::Parse,
              "line " + std::to_string(line_no) + ": " + msg);
}

template <typename T>
T parse_number(std::string_view s, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    parse_fail(line_no, "bad number '" + std::string(s) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

ModelParams parse_model_line(std::string_view rest, int rank,
                             std::size_t line_no) {
  ModelParams params;
  params.n = rank;
  bool have_k = false;
  bool have_d = false;
  std::istringstream fields{std::string(rest)};
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      parse_fail(line_no, "model field without '=': " + field);
    }
    const std::string key = field.substr(0, eq);
    const std::string_view value = std::string_view(field).substr(eq + 1);
    if (key == "k") {
      params.k = parse_number<int>(value, line_no);
      have_k = true;
    } else if (key == "d") {
      params.d = parse_number<double>(value, line_no);
      have_d = true;
    } else if (key == "positive") {
      params.positive = parse_number<int>(value, line_no) != 0;
    } else if (key == "seed") {
      params.seed = parse_number<std::uint64_t>(value, line_no);
    } else {
      parse_fail(line_no, "unknown model field " + key);
    }
  }
  if (!have_k || !have_d) {
    parse_fail(line_no, "model line needs k= and d=");
  }
  return params;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::optional<int> rank;
  std::optional<ModelParams> params;
  std::vector<Word> relators;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      continue;
    }
    const std::size_t sp = line.find_first_of(" \t");
    const std::string_view key = line.substr(0, sp);
    const std::string_view rest =
        sp == std::string_view::npos ? std::string_view{} : trim(line.substr(sp));
    if (key == "gens") {
      if (rank) {
        parse_fail(line_no, "duplicate gens header");
      }
      rank = parse_number<int>(rest, line_no);
      if (*rank < 1) {
        parse_fail(line_no, "gens must be >= 1");
      }
    } else if (key == "model") {
      if (!rank) {
        parse_fail(line_no, "model before gens");
      }
      params = parse_model_line(rest, *rank, line_no);
    } else if (key == "rel") {
      if (!rank) {
        parse_fail(line_no, "rel before gens");
      }
      try {
        relators.push_back(parse_word(rest, *rank));
      } catch (const Error& e) {
        parse_fail(line_no, e.what());
      }
    } else {
      parse_fail(line_no, "unknown directive '" + std::string(key) + "'");
    }
  }
  if (!rank) {
    throw Error(ErrorKind::Parse, "missing gens header");
  }
  return Presentation(*rank, std::move(relators), params);
}

Presentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Parse, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_presentation(buf.str());
}

void write_presentation_file(const std::string& path, const Presentation& p) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  }
  write_presentation(out, p);
}

}  // namespace rglab
