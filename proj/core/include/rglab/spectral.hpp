#pragma once

// Link graphs of triangular presentations and the normalized-Laplacian
// spectral gap test: a connected link graph on all 2n letters with
// lambda_1 > 1/2 certifies Property (T).
//
// Convention: relator t1 t2 t3 contributes the undirected edges
// {t1^-1, t2}, {t2^-1, t3}, {t3^-1, t1}. Multi-edges are kept; a loop adds 2
// to its vertex's degree.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rglab/freegroup.hpp"
#include "rglab/models.hpp"

namespace rglab {

inline constexpr double kCertificationMargin = 1e-6;
inline constexpr double kDefaultSpectralThreshold = 0.5;

// Graph on the 2n letters; vertex i is letter_from_order(i).
struct LinkGraph {
  int rank = 0;
  std::vector<std::pair<Letter, Letter>> edges;

  int vertex_count() const noexcept { return 2 * rank; }
};

// Throws WrongRelatorLength if any relator has length != 3.
LinkGraph link_graph(const Presentation& p);

// Plain weighted multigraph, vertices 0..vertex_count-1. Used directly for
// graphs that are not link graphs.
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

Multigraph as_multigraph(const LinkGraph& g);

struct Spectrum {
  // Ascending eigenvalues of I - D^-1/2 A D^-1/2 restricted to the
  // non-isolated vertices.
  std::vector<double> eigenvalues;
  double lambda1 = 0.0;
  bool connected = false;  // over the non-isolated vertices
  int multiplicity_of_zero = 0;
  int vertex_count = 0;    // all vertices, isolated included
  int isolated_vertices = 0;
  std::size_t edge_count = 0;
};

// Throws EmptyGraph if there are no edges.
Spectrum normalized_laplacian_spectrum(const Multigraph& g);
Spectrum normalized_laplacian_spectrum(const LinkGraph& g);

enum class SpectralVerdict { Certified, Inconclusive };

struct SpectralCertification {
  SpectralVerdict verdict = SpectralVerdict::Inconclusive;
  std::optional<Spectrum> spectrum;  // absent when there are no relators
  int vertex_count = 0;
};

// Certified iff every vertex is covered, the graph is connected and
// lambda_1 > threshold + kCertificationMargin.
SpectralCertification zuk_certify(const Presentation& p,
                                  double threshold = kDefaultSpectralThreshold);

// "index,eigenvalue" rows after a header line.
std::string format_spectrum_csv(const Spectrum& s);
// "certified|inconclusive lambda1=<v> vertices=<c> edges=<e>"
std::string format_verdict_line(const SpectralCertification& c);
std::string_view to_string(SpectralVerdict v);

}  // namespace rglab
