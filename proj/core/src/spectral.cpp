#include "rglab/spectral.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "rglab/error.hpp"

namespace rglab {

namespace {

constexpr double kZeroTolerance = 1e-8;

int vertex_of(Letter x) { return letter_order(x); }

}  // namespace

LinkGraph link_graph(const Presentation& p) {
  LinkGraph g;
  g.rank = p.rank();
  g.edges.reserve(3 * p.size());
  for (const auto& r : p.relators()) {
    if (r.size() != 3) {
      throw Error(ErrorKind::WrongRelatorLength,
                  "link graph needs relators of length 3, got " +
                      std::to_string(r.size()));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      g.edges.emplace_back(-r[i], r[(i + 1) % 3]);
    }
  }
  return g;
}

Multigraph as_multigraph(const LinkGraph& g) {
  Multigraph m;
  m.vertex_count = g.vertex_count();
  m.edges.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    m.edges.emplace_back(vertex_of(a), vertex_of(b));
  }
  return m;
}

Spectrum normalized_laplacian_spectrum(const Multigraph& g) {
  if (g.edges.empty()) {
    throw Error(ErrorKind::EmptyGraph, "graph has no edges");
  }
  const int n = g.vertex_count;
  std::vector<double> degree(static_cast<std::size_t>(n), 0.0);
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) {
      throw Error(ErrorKind::InvalidArgument, "edge endpoint out of range");
    }
    degree[a] += 1.0;
    degree[b] += 1.0;
    parent[find(a)] = find(b);
  }

  std::vector<int> compact(static_cast<std::size_t>(n), -1);
  int active = 0;
  for (int v = 0; v < n; ++v) {
    if (degree[v] > 0.0) {
      compact[v] = active++;
    }
  }

  Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(active, active);
  for (const auto& [a, b] : g.edges) {
    adjacency(compact[a], compact[b]) += 1.0;
    adjacency(compact[b], compact[a]) += 1.0;
  }
  Eigen::VectorXd inv_sqrt(active);
  for (int v = 0; v < n; ++v) {
    if (compact[v] >= 0) {
      inv_sqrt(compact[v]) = 1.0 / std::sqrt(degree[v]);
    }
  }
  const Eigen::MatrixXd laplacian =
      Eigen::MatrixXd::Identity(active, active) -
      inv_sqrt.asDiagonal() * adjacency * inv_sqrt.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      laplacian, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidArgument, "eigensolver did not converge");
  }

  Spectrum s;
  s.eigenvalues.assign(solver.eigenvalues().data(),
                       solver.eigenvalues().data() + active);
  s.lambda1 = active >= 2 ? s.eigenvalues[1] : 0.0;
  for (double ev : s.eigenvalues) {
    if (std::abs(ev) <= kZeroTolerance) {
      ++s.multiplicity_of_zero;
    }
  }
  int components = 0;
  for (int v = 0; v < n; ++v) {
    if (compact[v] >= 0 && find(v) == v) {
      ++components;
    }
  }
  s.connected = components == 1;
  s.vertex_count = n;
  s.isolated_vertices = n - active;
  s.edge_count = g.edges.size();
  return s;
}

Spectrum normalized_laplacian_spectrum(const LinkGraph& g) {
  return normalized_laplacian_spectrum(as_multigraph(g));
}

SpectralCertification zuk_certify(const Presentation& p, double threshold) {
  const LinkGraph g = link_graph(p);
  SpectralCertification out;
  out.vertex_count = g.vertex_count();
  if (g.edges.empty()) {
    return out;
  }
  out.spectrum = normalized_laplacian_spectrum(g);
  const Spectrum& s = *out.spectrum;
  if (s.isolated_vertices == 0 && s.connected &&
      s.lambda1 > threshold + kCertificationMargin) {
    out.verdict = SpectralVerdict::Certified;
  }
  return out;
}

std::string_view to_string(SpectralVerdict v) {
  return v == SpectralVerdict::Certified ? "certified" : "inconclusive";
}

std::string format_spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os.precision(17);
  os << "index,eigenvalue\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    os << i << ',' << s.eigenvalues[i] << '\n';
  }
  return os.str();
}

std::string format_verdict_line(const SpectralCertification& c) {
  std::ostringstream os;
  os.precision(12);
  const double lambda1 = c.spectrum ? c.spectrum->lambda1 : 0.0;
  const int vertices = c.vertex_count;
  const std::size_t edges = c.spectrum ? c.spectrum->edge_count : 0;
  os << to_string(c.verdict) << " lambda1=" << lambda1
     << " vertices=" << vertices << " edges=" << edges;
  return os.str();
}

}  // namespace rglab
