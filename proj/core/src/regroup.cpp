#include "rglab/regroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rglab/error.hpp"

namespace rglab {

BlockAlphabet::BlockAlphabet(int n, int j) : n_(n), j_(j), m_(1) {
  if (n < 1 || j < 1) {
    throw Error(ErrorKind::InvalidArgument, "block alphabet needs n, j >= 1");
  }
  std::uint64_t m = 1;
  for (int i = 0; i < j; ++i) {
    m *= static_cast<std::uint64_t>(n);
    if (m > kMaxBlocks) {
      throw Error(ErrorKind::InvalidArgument,
                  "block alphabet n^j too large");
    }
  }
  m_ = static_cast<int>(m);
}

Letter BlockAlphabet::index_of(std::span<const Letter> block) const {
  if (static_cast<int>(block.size()) != j_) {
    throw Error(ErrorKind::NotDivisible, "block of wrong length");
  }
  int index = 0;
  for (Letter x : block) {
    if (x <= 0 || x > n_) {
      throw Error(ErrorKind::NotPositive, "block letter not positive");
    }
    index = index * n_ + (x - 1);
  }
  return index + 1;
}

Word BlockAlphabet::block(Letter index) const {
  if (index < 1 || index > m_) {
    throw Error(ErrorKind::InvalidArgument,
                "block index " + std::to_string(index) + " out of range");
  }
  std::vector<Letter> letters(static_cast<std::size_t>(j_));
  int rest = index - 1;
  for (int i = j_ - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = rest % n_ + 1;
    rest /= n_;
  }
  return Word(n_, std::move(letters));
}

Word BlockAlphabet::decode_letter(Letter signed_index) const {
  const Word b = block(std::abs(signed_index));
  return signed_index > 0 ? b : b.inverse();
}

Presentation positive_part(const Presentation& p) {
  std::vector<Word> kept;
  for (const auto& r : p.relators()) {
    if (r.is_positive()) {
      kept.push_back(r);
    }
  }
  return Presentation(p.rank(), std::move(kept));
}

int length_mod(const Word& w, int j) {
  if (j < 1) {
    throw Error(ErrorKind::InvalidArgument, "length_mod needs j >= 1");
  }
  return static_cast<int>(w.size() % static_cast<std::size_t>(j));
}

Word block_encode(const Word& w, const BlockAlphabet& alphabet) {
  if (!w.is_positive()) {
    throw Error(ErrorKind::NotPositive, "cannot block-encode " + to_string(w));
  }
  const int j = alphabet.block_length();
  if (length_mod(w, j) != 0) {
    throw Error(ErrorKind::NotDivisible,
                "length " + std::to_string(w.size()) + " not divisible by " +
                    std::to_string(j));
  }
  std::vector<Letter> out;
  out.reserve(w.size() / static_cast<std::size_t>(j));
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size(); i += static_cast<std::size_t>(j)) {
    out.push_back(alphabet.index_of(letters.subspan(i, static_cast<std::size_t>(j))));
  }
  return Word(alphabet.size(), std::move(out));
}

Word block_decode(const Word& blocks, const BlockAlphabet& alphabet) {
  std::vector<Letter> out;
  out.reserve(blocks.size() * static_cast<std::size_t>(alphabet.block_length()));
  for (Letter b : blocks) {
    const Word piece = alphabet.decode_letter(b);
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return Word(alphabet.base_rank(), std::move(out));
}

RegroupedPresentation build_gamma(const Presentation& positive, int j) {
  BlockAlphabet alphabet(positive.rank(), j);
  std::vector<Word> relators;
  relators.reserve(positive.size());
  for (const auto& r : positive.relators()) {
    relators.push_back(block_encode(r, alphabet));
  }
  return RegroupedPresentation{
      Presentation(alphabet.size(), std::move(relators)), alphabet, positive};
}

Presentation downsample(const Presentation& p, std::uint64_t target) {
  if (p.size() < target) {
    throw Error(ErrorKind::InsufficientPositiveRelators,
                "have " + std::to_string(p.size()) + " relators, need " +
                    std::to_string(target));
  }
  std::vector<Word> sorted = p.relators();
  std::sort(sorted.begin(), sorted.end());
  sorted.resize(static_cast<std::size_t>(target));
  return Presentation(p.rank(), std::move(sorted));
}

double effective_density(std::uint64_t relator_count, int k, int rank) {
  if (relator_count < 1) {
    throw Error(ErrorKind::InvalidArgument,
                "effective_density needs relator_count >= 1");
  }
  if (relator_count == 1) {
    return 0.0;
  }
  if (k < 1 || rank < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "effective_density needs k >= 1 and rank >= 2");
  }
  return std::log(static_cast<double>(relator_count)) /
         (static_cast<double>(k) * std::log(2.0 * rank - 1.0));
}

std::string format_regrouped(const RegroupedPresentation& r) {
  std::ostringstream os;
  os << "[source]\n";
  write_presentation(os, r.source);
  os << "[gamma]\n";
  write_presentation(os, r.gamma);
  os << "[blockmap]\n";
  os << "blocks n=" << r.alphabet.base_rank()
     << " j=" << r.alphabet.block_length() << '\n';
  for (Letter i = 1; i <= r.alphabet.size(); ++i) {
    os << i << ": " << to_string(r.alphabet.block(i)) << '\n';
  }
  return os.str();
}

RegroupedPresentation parse_regrouped(std::string_view text) {
  const auto section = [&](std::string_view name) {
    const auto at = text.find(name);
    if (at == std::string_view::npos) {
      throw Error(ErrorKind::Parse, "missing section " + std::string(name));
    }
    return at;
  };
  const auto source_at = section("[source]\n");
  const auto gamma_at = section("[gamma]\n");
  const auto map_at = section("[blockmap]\n");
  if (!(source_at < gamma_at && gamma_at < map_at)) {
    throw Error(ErrorKind::Parse, "sections out of order");
  }
  const auto body = [&](std::size_t from, std::size_t header, std::size_t to) {
    return text.substr(from + header, to - from - header);
  };
  Presentation source = parse_presentation(body(source_at, 9, gamma_at));
  Presentation gamma = parse_presentation(body(gamma_at, 8, map_at));

  std::istringstream lines{std::string(text.substr(map_at + 11))};
  std::string line;
  int n = 0;
  int j = 0;
  if (!std::getline(lines, line) ||
      std::sscanf(line.c_str(), "blocks n=%d j=%d", &n, &j) != 2) {
    throw Error(ErrorKind::Parse, "bad blocks header");
  }
  BlockAlphabet alphabet(n, j);
  Letter expected = 1;
  while (std::getline(lines, line)) {
    if (line.empty()) {
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::Parse, "bad blockmap line: " + line);
    }
    Letter index = 0;
    try {
      index = std::stoi(line.substr(0, colon));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad blockmap index: " + line);
    }
    const Word word = parse_word(line.substr(colon + 1), n);
    if (index != expected || alphabet.block(index) != word) {
      throw Error(ErrorKind::Parse, "blockmap disagrees with lexicographic indexing at " + line);
    }
    ++expected;
  }
  if (expected != alphabet.size() + 1) {
    throw Error(ErrorKind::Parse, "blockmap incomplete");
  }
  if (gamma.rank() != alphabet.size() || source.rank() != n) {
    throw Error(ErrorKind::Parse, "ranks disagree with blockmap");
  }
  return RegroupedPresentation{std::move(gamma), alphabet, std::move(source)};
}

}  // namespace rglab
