#include <doctest.h>

#include "oracles.hpp"
#include "rglab/random.hpp"
#include "rglab/subgroup.hpp"

using namespace rglab;

namespace {

// <W+_j> is the kernel of F_n -> Z/j sending every generator to 1, so
// membership is decided by the exponent sum.
bool exponent_sum_member(const Word& w, int j) {
  int sum = 0;
  for (Letter x : w) sum += x > 0 ? 1 : -1;
  return ((sum % j) + j) % j == 0;
}

Word random_reduced_word(Rng& rng, int n, int max_len) {
  const int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1));
  std::vector<Letter> letters;
  while (static_cast<int>(letters.size()) < len) {
    const int x = rng.between(1, n);
    const Letter l = rng.below(2) ? x : -x;
    if (!letters.empty() && letters.back() == -l) continue;
    letters.push_back(l);
  }
  return Word(n, letters);
}

}  // namespace

TEST_CASE("stallings_fold examples") {
  const auto whole = stallings_fold({Word(1, {1})}, 1);
  CHECK(whole.vertex_count() == 1);
  CHECK(whole.target(0, 1) == 0);
  CHECK(whole.target(0, -1) == 0);

  const auto even = stallings_fold({Word(1, {1, 1})}, 1);
  CHECK(even.vertex_count() == 2);
  CHECK(even.target(0, 1) == 1);
  CHECK(even.target(1, 1) == 0);
  CHECK(format_graph(even) == "base 0\n0 1 1\n1 1 0\n");

  const auto w2 = stallings_fold(positive_block_generators(2, 2), 2);
  CHECK(w2.vertex_count() == 2);
  for (Letter x : {1, -1, 2, -2}) {
    CHECK(w2.target(0, x) == 1);
    CHECK(w2.target(1, x) == 0);
  }
  CHECK(w2.edge_count() == 4);
}

TEST_CASE("folded graphs are deterministic and involutive") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = rng.between(1, 3);
    std::vector<Word> gens;
    const int count = rng.between(1, 4);
    for (int i = 0; i < count; ++i) gens.push_back(random_reduced_word(rng, n, 6));
    const auto g = stallings_fold(gens, n);
    for (int v = 0; v < g.vertex_count(); ++v) {
      for (Letter x = -n; x <= n; ++x) {
        if (x == 0) continue;
        const int t = g.target(v, x);
        if (t != SubgroupGraph::kNone) CHECK(g.target(t, -x) == v);
      }
    }
    for (const auto& w : gens) CHECK(membership(g, w));
  }
}

TEST_CASE("membership examples") {
  const auto w2 = stallings_fold(positive_block_generators(2, 2), 2);
  CHECK(membership(w2, Word(2, {})));
  CHECK(membership(w2, Word(2, {-1, 2})));
  CHECK_FALSE(membership(w2, Word(2, {1})));
  // Unreduced input is reduced first.
  CHECK(membership(w2, Word(2, {1, 2, -2, 1})));
}

TEST_CASE("index examples") {
  CHECK(index(stallings_fold({Word(1, {1})}, 1)) == 1u);
  CHECK_FALSE(index(stallings_fold({Word(2, {1, 2, -1, -2})}, 2)).has_value());
  CHECK_FALSE(index(stallings_fold({}, 2)).has_value());
  CHECK(index(stallings_fold({}, 1)) == std::nullopt);
}

TEST_CASE("index of <W+_j> equals j") {
  for (int n = 1; n <= 3; ++n) {
    for (int j = 1; j <= 4; ++j) {
      CAPTURE(n);
      CAPTURE(j);
      const auto g = stallings_fold(positive_block_generators(n, j), n);
      CHECK(index(g) == static_cast<std::uint64_t>(j));
    }
  }
}

TEST_CASE("membership in <W+_j> agrees with the exponent-sum oracle") {
  for (int n = 1; n <= 3; ++n) {
    for (int j = 1; j <= 4; ++j) {
      const auto g = stallings_fold(positive_block_generators(n, j), n);
      for (int len = 0; len <= (n == 3 ? 5 : 7); ++len) {
        enumerate_words(n, len, WordFilter::Reduced, [&](const Word& w) {
          REQUIRE(membership(g, w) == exponent_sum_member(w, j));
          return true;
        });
      }
    }
  }
}

TEST_CASE("membership agrees with bounded product search") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.between(1, 2);
    std::vector<Word> gens;
    const int count = rng.between(1, 3);
    for (int i = 0; i < count; ++i) {
      Word w = random_reduced_word(rng, n, 3);
      if (!w.empty()) gens.push_back(w);
    }
    const auto g = stallings_fold(gens, n);
    for (const auto& p : oracle::bounded_products(gens, 4)) {
      CHECK(membership(g, Word(n, p)));
    }
  }
}

TEST_CASE("transversal_decompose examples") {
  const BlockAlphabet a(2, 2);
  const auto d = transversal_decompose(Word(2, {-2, 1}), a);
  CHECK(d.rep.empty());
  // (s2 s1)^-1 is block 3 inverted; a literal -3 would decode to s1^-1 s2^-1.
  CHECK(d.blocks == Word(4, {-2, 1}));
  CHECK(decomposition_holds(d, a));

  const auto one = transversal_decompose(Word(2, {1}), a);
  CHECK(one.rep == Word(2, {1}));
  CHECK(one.blocks.empty());

  const auto blk = transversal_decompose(Word(2, {1, 2}), a);
  CHECK(blk.rep.empty());
  CHECK(blk.blocks == Word(4, {2}));
}

TEST_CASE("transversal_decompose reconstructs random words") {
  Rng rng(2718);
  for (int trial = 0; trial < 100000; ++trial) {
    const int n = rng.between(1, 3);
    const int j = rng.between(1, 4);
    const BlockAlphabet a(n, j);
    const Word w = random_reduced_word(rng, n, 30);
    const auto d = transversal_decompose(w, a);
    REQUIRE(static_cast<int>(d.rep.size()) < j);
    REQUIRE(d.rep.is_positive());
    const auto product = oracle::naive_reduce(
        oracle::letters(d.rep * block_decode(d.blocks, a)));
    REQUIRE(product == oracle::letters(w));
    REQUIRE(d.rep.empty() == exponent_sum_member(w, j));
  }
}

TEST_CASE("lemma_audit examples") {
  const auto small = lemma_audit(1, 2, 6);
  CHECK(small.passed());
  // e, and s^{+-L} for L = 1..6.
  CHECK(small.words_checked == 13);
  CHECK(small.subgroup_index == 2u);

  for (auto [n, j, len] : {std::tuple{2, 2, 5}, {2, 3, 6}, {1, 2, 8}, {3, 2, 4}}) {
    const auto r = lemma_audit(n, j, len);
    CHECK(r.passed());
    CHECK(r.subgroup_index == static_cast<std::uint64_t>(j));
    BigInt expected = 0;
    for (int l = 0; l <= len; ++l) expected += count_reduced(n, l);
    CHECK(BigInt(r.words_checked) == expected);
  }
  const auto text = format_report(small);
  CHECK(text.ends_with("pass\n"));
  CHECK(text.find("index=2") != std::string::npos);
}
