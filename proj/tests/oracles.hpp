#pragma once

// Test-only reference implementations. Each one is written independently of
// the library code path it checks: no shared helpers beyond Word itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "rglab/freegroup.hpp"

namespace oracle {

using rglab::Letter;
using rglab::Word;

// Repeatedly deletes the leftmost cancelling pair until none is left.
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
                w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline std::vector<Letter> letters(const Word& w) {
  return {w.begin(), w.end()};
}

// Minimum reduced length over all cyclic rotations of the reduced word.
inline std::size_t min_rotation_length(const Word& w) {
  const auto r = naive_reduce(letters(w));
  std::size_t best = r.size();
  for (std::size_t s = 0; s < r.size(); ++s) {
    std::vector<Letter> rot(r.begin() + static_cast<std::ptrdiff_t>(s), r.end());
    rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(s));
    best = std::min(best, naive_reduce(rot).size());
  }
  return best;
}

// Odometer over all (2n)^L strings with letters -n..-1,1..n.
template <typename Fn>
void for_each_string(int n, int length, Fn&& fn) {
  std::vector<int> digit(static_cast<std::size_t>(length), 0);
  std::vector<Letter> w(static_cast<std::size_t>(length));
  for (;;) {
    for (int i = 0; i < length; ++i) {
      const int v = digit[static_cast<std::size_t>(i)];
      w[static_cast<std::size_t>(i)] = v < n ? -(v + 1) : v - n + 1;
    }
    fn(w);
    int i = length - 1;
    while (i >= 0 && ++digit[static_cast<std::size_t>(i)] == 2 * n) {
      digit[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) {
      return;
    }
  }
}

inline bool cyclically_reduced_by_definition(const std::vector<Letter>& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == -w[i + 1]) return false;
  }
  return w.size() < 2 || w.front() != -w.back();
}

inline std::uint64_t brute_count_cyclically_reduced(int n, int length) {
  std::uint64_t count = 0;
  for_each_string(n, length, [&](const std::vector<Letter>& w) {
    count += cyclically_reduced_by_definition(w) ? 1 : 0;
  });
  return count;
}

// All reduced products of at most `depth` generators or inverses.
inline std::set<std::vector<Letter>> bounded_products(
    const std::vector<Word>& gens, int depth) {
  std::vector<std::vector<Letter>> symbols;
  for (const auto& g : gens) {
    symbols.push_back(letters(g));
    symbols.push_back(letters(g.inverse()));
  }
  std::set<std::vector<Letter>> seen{{}};
  std::vector<std::vector<Letter>> frontier{{}};
  for (int d = 0; d < depth; ++d) {
    std::vector<std::vector<Letter>> next;
    for (const auto& f : frontier) {
      for (const auto& s : symbols) {
        auto w = f;
        w.insert(w.end(), s.begin(), s.end());
        w = naive_reduce(w);
        if (seen.insert(w).second) {
          next.push_back(std::move(w));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

// Number of eigenvalues of the symmetric matrix below x, by Sylvester's law
// of inertia on an LDL^T factorisation of (M - xI).
inline int count_below(const std::vector<std::vector<double>>& m, double x) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> a = m;
  for (std::size_t i = 0; i < n; ++i) a[i][i] -= x;
  int negatives = 0;
  for (std::size_t k = 0; k < n; ++k) {
    // A zero pivot is nudged to a tiny positive value, which shifts the
    // count only for eigenvalues within about 1e-13 of x.
    double pivot = a[k][k];
    if (std::abs(pivot) < 1e-13) pivot = 1e-13;
    if (pivot < 0) ++negatives;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return negatives;
}

// All eigenvalues in [lo, hi] by bisection on the inertia count.
inline std::vector<double> bisection_eigenvalues(
    const std::vector<std::vector<double>>& m, double lo, double hi,
    double tol = 1e-11) {
  const int n = static_cast<int>(m.size());
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    // k-th smallest: smallest x with count_below(x) > k.
    double a = lo;
    double b = hi;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (count_below(m, mid) > k) b = mid; else a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

// Normalized Laplacian as a dense matrix, from an edge list (loops count 2).
inline std::vector<std::vector<double>> normalized_laplacian(
    int vertices, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<double>> adj(
      static_cast<std::size_t>(vertices),
      std::vector<double>(static_cast<std::size_t>(vertices), 0.0));
  for (auto [a, b] : edges) {
    adj[a][b] += 1.0;
    adj[b][a] += 1.0;
  }
  std::vector<double> deg(static_cast<std::size_t>(vertices), 0.0);
  for (int i = 0; i < vertices; ++i)
    for (int j = 0; j < vertices; ++j) deg[i] += adj[i][j];
  std::vector<std::vector<double>> lap = adj;
  for (int i = 0; i < vertices; ++i) {
    for (int j = 0; j < vertices; ++j) {
      lap[i][j] = (i == j ? 1.0 : 0.0) - adj[i][j] / std::sqrt(deg[i] * deg[j]);
    }
  }
  return lap;
}

// Upper-tail p-value of Pearson's statistic against equal expected counts.
inline double chi_square_p_value(const std::vector<std::uint64_t>& counts) {
  double total = 0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace oracle
