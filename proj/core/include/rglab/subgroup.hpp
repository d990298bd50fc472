#pragma once

// Finitely generated subgroups of a free group, twice over: Stallings
// folding for exact membership and index, and the constructive rewriting
// of an arbitrary word as (short positive word) * (product of positive
// blocks of length j and their inverses).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rglab/freegroup.hpp"
#include "rglab/regroup.hpp"

namespace rglab {

// Folded, base-pointed graph labelled by the letters of F_n. Vertices are
// numbered by BFS from the base (vertex 0), visiting letters in
// letter_order.
class SubgroupGraph {
 public:
  static constexpr int kNone = -1;

  SubgroupGraph(int rank, std::vector<std::vector<int>> out);

  int rank() const noexcept { return rank_; }
  int base() const noexcept { return 0; }
  int vertex_count() const noexcept { return static_cast<int>(out_.size()); }
  // Target of the edge labelled x leaving v, or kNone.
  int target(int v, Letter x) const {
    return out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(letter_order(x))];
  }
  std::size_t edge_count() const;
  // Every vertex has all 2n outgoing labels.
  bool is_complete() const;

 private:
  int rank_;
  std::vector<std::vector<int>> out_;
};

SubgroupGraph stallings_fold(const std::vector<Word>& generators, int rank);

bool membership(const SubgroupGraph& g, const Word& w);

// Number of vertices when the graph covers the rose, otherwise nullopt
// (infinite index).
std::optional<std::uint64_t> index(const SubgroupGraph& g);

// "base 0" then one "from letter to" line per edge (positive label).
std::string format_graph(const SubgroupGraph& g);

// The n^j positive words of length j, lexicographic.
std::vector<Word> positive_block_generators(int n, int j);

struct Decomposition {
  Word rep;     // positive or empty, |rep| < j
  Word blocks;  // signed letters over the block alphabet
  Word source;
};

// w = rep * phi(blocks) in F_n, where phi decodes each signed block.
Decomposition transversal_decompose(const Word& w,
                                    const BlockAlphabet& alphabet);

// The Decomposition invariants, checked directly.
bool decomposition_holds(const Decomposition& d, const BlockAlphabet& alphabet);

struct LemmaAuditReport {
  int n = 0;
  int j = 0;
  int max_len = 0;
  std::uint64_t words_checked = 0;
  std::uint64_t failures = 0;
  std::optional<std::uint64_t> subgroup_index;
  std::optional<Word> counterexample;

  bool passed() const noexcept { return failures == 0; }
};

// Every reduced word of length 0..max_len: decomposition succeeds with
// |rep| < j, reconstructs the word exactly, its block part lies in the
// folded <W+_j>, and folding membership of the word agrees with rep == e.
LemmaAuditReport lemma_audit(int n, int j, int max_len);

std::string format_report(const LemmaAuditReport& r);

}  // namespace rglab
