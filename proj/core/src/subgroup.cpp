#include "rglab/subgroup.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <utility>

#include "rglab/error.hpp"

namespace rglab {

SubgroupGraph::SubgroupGraph(int rank, std::vector<std::vector<int>> out)
    : rank_(rank), out_(std::move(out)) {}

std::size_t SubgroupGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& slots : out_) {
    for (int x = 1; x <= rank_; ++x) {
      if (slots[static_cast<std::size_t>(letter_order(x))] != kNone) {
        ++count;
      }
    }
  }
  return count;
}

bool SubgroupGraph::is_complete() const {
  for (const auto& slots : out_) {
    if (std::find(slots.begin(), slots.end(), kNone) != slots.end()) {
      return false;
    }
  }
  return true;
}

namespace {

// Union-find over vertices; targets are stored un-normalised and resolved
// through find() on read.
class Folder {
 public:
  explicit Folder(int rank) : slots_(2 * rank) { add_vertex(); }

  int add_vertex() {
    out_.emplace_back(slots_, SubgroupGraph::kNone);
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void attach(int from, Letter x, int to) {
    set_slot(from, letter_order(x), to);
    set_slot(to, letter_order(-x), from);
    drain();
  }

  SubgroupGraph finish(int rank) {
    const int base = find(0);
    std::vector<int> number(parent_.size(), SubgroupGraph::kNone);
    std::vector<int> order;
    std::queue<int> bfs;
    number[base] = 0;
    order.push_back(base);
    bfs.push(base);
    while (!bfs.empty()) {
      const int v = bfs.front();
      bfs.pop();
      for (int s = 0; s < slots_; ++s) {
        const int raw = out_[v][s];
        if (raw == SubgroupGraph::kNone) {
          continue;
        }
        const int t = find(raw);
        if (number[t] == SubgroupGraph::kNone) {
          number[t] = static_cast<int>(order.size());
          order.push_back(t);
          bfs.push(t);
        }
      }
    }
    std::vector<std::vector<int>> out(order.size(),
                                      std::vector<int>(slots_, SubgroupGraph::kNone));
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int s = 0; s < slots_; ++s) {
        const int raw = out_[order[i]][s];
        if (raw != SubgroupGraph::kNone) {
          out[i][s] = number[find(raw)];
        }
      }
    }
    return SubgroupGraph(rank, std::move(out));
  }

 private:
  void set_slot(int v, int s, int t) {
    v = find(v);
    int& slot = out_[v][s];
    if (slot == SubgroupGraph::kNone) {
      slot = t;
    } else if (find(slot) != find(t)) {
      pending_.emplace_back(slot, t);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.back();
      pending_.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) {
        continue;
      }
      if (b < a) {
        std::swap(a, b);  // keep the older vertex, so the base survives
      }
      parent_[b] = a;
      for (int s = 0; s < slots_; ++s) {
        const int t = out_[b][s];
        if (t != SubgroupGraph::kNone) {
          set_slot(a, s, t);
        }
      }
    }
  }

  int slots_;
  std::vector<std::vector<int>> out_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> pending_;
};

}  // namespace

SubgroupGraph stallings_fold(const std::vector<Word>& generators, int rank) {
  Folder folder(rank);
  for (const auto& g : generators) {
    for (Letter x : g) {
      if (x == 0 || std::abs(x) > rank) {
        throw Error(ErrorKind::InvalidArgument,
                    "generator letter outside rank: " + to_string(g));
      }
    }
    const Word w = free_reduce(g);
    if (w.empty()) {
      continue;
    }
    int at = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const int next = folder.add_vertex();
      folder.attach(at, w[i], next);
      at = next;
    }
    folder.attach(at, w.back(), 0);
  }
  return folder.finish(rank);
}

bool membership(const SubgroupGraph& g, const Word& w) {
  int at = g.base();
  for (Letter x : free_reduce(w)) {
    if (std::abs(x) > g.rank()) {
      return false;
    }
    at = g.target(at, x);
    if (at == SubgroupGraph::kNone) {
      return false;
    }
  }
  return at == g.base();
}

std::optional<std::uint64_t> index(const SubgroupGraph& g) {
  if (!g.is_complete()) {
    return std::nullopt;
  }
  return static_cast<std::uint64_t>(g.vertex_count());
}

std::string format_graph(const SubgroupGraph& g) {
  std::ostringstream os;
  os << "base " << g.base() << '\n';
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (Letter x = 1; x <= g.rank(); ++x) {
      const int t = g.target(v, x);
      if (t != SubgroupGraph::kNone) {
        os << v << ' ' << x << ' ' << t << '\n';
      }
    }
  }
  return os.str();
}

std::vector<Word> positive_block_generators(int n, int j) {
  return collect_words(n, j, WordFilter::Positive);
}

namespace {

void push_blocks_reversed(std::span<const Letter> positive,
                          const BlockAlphabet& alphabet, int sign,
                          std::vector<Letter>& reversed_out) {
  const auto j = static_cast<std::size_t>(alphabet.block_length());
  std::vector<Letter> blocks;
  for (std::size_t i = 0; i < positive.size(); i += j) {
    blocks.push_back(sign * alphabet.index_of(positive.subspan(i, j)));
  }
  reversed_out.insert(reversed_out.end(), blocks.rbegin(), blocks.rend());
}

}  // namespace

Decomposition transversal_decompose(const Word& w,
                                    const BlockAlphabet& alphabet) {
  const int n = alphabet.base_rank();
  const int j = alphabet.block_length();
  if (w.rank() > n) {
    for (Letter x : w) {
      if (std::abs(x) > n) {
        throw Error(ErrorKind::InvalidArgument,
                    "word outside the alphabet's rank: " + to_string(w));
      }
    }
  }
  const Word reduced = free_reduce(w);
  std::vector<Letter> prefix(reduced.begin(), reduced.end());
  // Blocks are peeled right to left and collected in reverse.
  std::vector<Letter> reversed;

  const auto has_negative = [&] {
    return std::any_of(prefix.begin(), prefix.end(),
                       [](Letter x) { return x < 0; });
  };
  while (has_negative()) {
    // prefix = P' A a with a the trailing positive run (maybe empty) and A
    // the negative run before it.
    std::size_t a_begin = prefix.size();
    while (a_begin > 0 && prefix[a_begin - 1] > 0) {
      --a_begin;
    }
    std::size_t A_begin = a_begin;
    while (A_begin > 0 && prefix[A_begin - 1] < 0) {
      --A_begin;
    }
    const std::size_t a_len = prefix.size() - a_begin;
    const std::size_t A_len = a_begin - A_begin;
    const auto uj = static_cast<std::size_t>(j);

    // P' A a = P' y . (y^-1 A x^-1) . (x a), with x, y powers of generator 1
    // making both brackets divisible by j. Zero residues pad with nothing.
    const std::size_t x_len = (uj - a_len % uj) % uj;
    const std::size_t y_len = (uj - (A_len + x_len) % uj) % uj;

    std::vector<Letter> xa(x_len, 1);
    xa.insert(xa.end(), prefix.begin() + static_cast<std::ptrdiff_t>(a_begin),
              prefix.end());
    push_blocks_reversed(xa, alphabet, +1, reversed);

    // (y^-1 A x^-1)^-1 = x A^-1 y is positive; its blocks, inverted and
    // reversed, spell the negative bracket.
    std::vector<Letter> inv(x_len, 1);
    for (std::size_t i = a_begin; i > A_begin; --i) {
      inv.push_back(-prefix[i - 1]);
    }
    inv.insert(inv.end(), y_len, 1);
    std::vector<Letter> inv_blocks;
    push_blocks_reversed(inv, alphabet, +1, inv_blocks);
    // inv_blocks holds c_s..c_1; the bracket is c_s^-1 .. c_1^-1 left to
    // right, so in reversed order it is c_1^-1 .. c_s^-1.
    for (auto it = inv_blocks.rbegin(); it != inv_blocks.rend(); ++it) {
      reversed.push_back(-*it);
    }

    prefix.resize(A_begin);
    prefix.insert(prefix.end(), y_len, 1);
  }

  const std::size_t rep_len = prefix.size() % static_cast<std::size_t>(j);
  std::span<const Letter> tail(prefix);
  push_blocks_reversed(tail.subspan(rep_len), alphabet, +1, reversed);
  prefix.resize(rep_len);

  std::reverse(reversed.begin(), reversed.end());
  return Decomposition{Word(n, std::move(prefix)),
                       Word(alphabet.size(), std::move(reversed)), w};
}

bool decomposition_holds(const Decomposition& d,
                         const BlockAlphabet& alphabet) {
  if (static_cast<int>(d.rep.size()) >= alphabet.block_length()) {
    return false;
  }
  if (!d.rep.is_positive()) {
    return false;
  }
  const Word rebuilt = free_reduce(d.rep * block_decode(d.blocks, alphabet));
  return rebuilt == free_reduce(d.source);
}

LemmaAuditReport lemma_audit(int n, int j, int max_len) {
  if (n < 1 || j < 1 || max_len < 0) {
    throw Error(ErrorKind::InvalidArgument,
                "lemma_audit needs n, j >= 1 and max_len >= 0");
  }
  LemmaAuditReport report;
  report.n = n;
  report.j = j;
  report.max_len = max_len;
  const BlockAlphabet alphabet(n, j);
  const SubgroupGraph h = stallings_fold(positive_block_generators(n, j), n);
  report.subgroup_index = index(h);

  for (int len = 0; len <= max_len; ++len) {
    enumerate_words(n, len, WordFilter::Reduced, [&](const Word& w) {
      ++report.words_checked;
      const Decomposition d = transversal_decompose(w, alphabet);
      const bool ok = decomposition_holds(d, alphabet) &&
                      membership(h, block_decode(d.blocks, alphabet)) &&
                      membership(h, w) == d.rep.empty();
      if (!ok) {
        ++report.failures;
        if (!report.counterexample) {
          report.counterexample = w;
        }
      }
      return true;
    });
  }
  return report;
}

std::string format_report(const LemmaAuditReport& r) {
  std::ostringstream os;
  os << "lemma-audit n=" << r.n << " j=" << r.j << " max_len=" << r.max_len
     << '\n';
  os << "words=" << r.words_checked << " failures=" << r.failures << '\n';
  os << "index=";
  if (r.subgroup_index) {
    os << *r.subgroup_index;
  } else {
    os << "inf";
  }
  os << '\n';
  if (r.counterexample) {
    os << "counterexample " << to_string(*r.counterexample) << '\n';
  }
  os << (r.passed() ? "pass" : "FAIL") << '\n';
  return os.str();
}

}  // namespace rglab
