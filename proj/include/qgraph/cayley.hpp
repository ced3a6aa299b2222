#pragma once

#include "qgraph/bimodule.hpp"
#include "qgraph/choi.hpp"
#include "qgraph/qgfourier.hpp"

namespace qgraph {

// Checks that a finitely supported central element can serve as the edge
// datum of a translation-invariant graph: projection coefficients,
// conjugation-invariance, and vanishing coefficient at the trivial label.
struct GeneratorReport {
  bool projection = false;
  bool antipode_invariant = false;
  bool no_loop = false;
  double degree = 0.0;  // right Haar weight of the element
  std::vector<std::string> violations;
  bool valid() const { return violations.empty(); }
};
GeneratorReport validate_generator(const FusionDual& d, const CentralElement& p,
                                   double tol = 1e-9);
// Same checks for a matrix-level projection on a window; conjugation
// invariance is tested at the support level only.
GeneratorReport validate_generator_matrix(const FusionDual& d, const QuantumSpace& window,
                                          const AlgebraElement& p, double tol = 1e-9);

// Semi-decision: Generating(witness) when the balls cover every label the
// dual enumerates within the reached count; never a negative certificate.
struct GeneratingReport {
  bool generating = false;
  int witness = -1;
  int horizon = 0;
};
GeneratingReport is_generating(const FusionDual& d, const CentralElement& p, int horizon,
                               std::size_t max_labels = 5000000);
// Matrix-level variant: accumulates the range projections of the convolution
// powers blockwise and asks whether every block of the ball window saturates.
GeneratingReport is_generating_matrix(const FusionDual& d, const AlgebraElement& p,
                                      int horizon);

struct GrowthSeries {
  std::vector<SupportSet> balls;     // radius 0..horizon, trivial label adjoined
  std::vector<double> a;             // squared quantum dimensions summed over the ball
  std::vector<double> a_classical;   // same with ordinary dimensions
};
GrowthSeries growth(const FusionDual& d, const CentralElement& p, int horizon,
                    std::size_t max_labels = 5000000);

enum class GrowthVerdict { Subexponential, Exponential, Inconclusive };
// Log-slope regression over two windows of the series; the late slope decides,
// a late slope well below the early one reads as polynomial flattening.
GrowthVerdict growth_verdict(const std::vector<double>& a);
const char* to_string(GrowthVerdict v);

struct FolnerResult {
  bool found = false;
  int radius = -1;
  double ratio = 0.0;  // boundary mass ratio at the reported radius (best seen if not found)
};
// Searches the balls of supp(mu) for a set whose mu-thickening barely grows,
// measured with squared classical dimensions. mu must be a central element
// with conjugation-symmetric support containing the trivial label.
FolnerResult folner_check(const FusionDual& d, const CentralElement& mu, double eps,
                          int horizon, std::size_t max_labels = 5000000);

struct BilipschitzResult {
  bool found = false;
  int m = -1;
};
// Least m with supp(p1) inside ball_m(p2) and vice versa.
BilipschitzResult bilipschitz_constant(const FusionDual& d, const CentralElement& p1,
                                       const CentralElement& p2, int horizon,
                                       std::size_t max_labels = 5000000);
// Matrix-level dominance through accumulated range projections.
BilipschitzResult bilipschitz_matrix(const FusionDual& d, const AlgebraElement& p1,
                                     const AlgebraElement& p2, int horizon);

struct WalkReport {
  std::string method;  // "dense" on the full truncated ball, "radial" when lumped by distance
  double spectral_radius = 0.0;
  double degree = 0.0;
  double ratio = 0.0;
  int states = 0;
};
// Spectral radius of the convolution operator restricted to central elements,
// truncated at the horizon, against the degree. Falls back from the dense
// ball matrix to a distance-lumped band matrix when the ball is too large;
// the lumping is verified on explicit shells first.
WalkReport central_walk_operator(const FusionDual& d, const CentralElement& p, int horizon,
                                 int dense_cap = 2000);

// The convolution operator by a central element as a block map on a window.
AdjacencyMap cayley_adjacency(const FusionDual& d, const CentralElement& p,
                              const std::vector<Label>& window);

// Edge spaces spanned by the compressed intertwiners v -> V*(. (x) v),
// orthonormalized; the independent construction the adjacency map is
// checked against.
Bimodule cayley_bimodule(const FusionDual& d, const CentralElement& p,
                         const QuantumSpace& window);

}  // namespace qgraph
