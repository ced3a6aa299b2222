#pragma once

#include <map>

#include "qgraph/fusion.hpp"
#include "qgraph/qspace.hpp"

namespace qgraph {

// Elements of the form sum_a c_a 1_a, kept as label -> coefficient.
// They make sense on every fusion dual, including the support-level ones.
using CentralElement = std::map<Label, Cx>;

CentralElement central_prune(CentralElement x, double tol = 1e-14);
SupportSet central_support(const CentralElement& x, double tol = 1e-12);
CentralElement central_indicator(const SupportSet& s);
CentralElement central_add(const CentralElement& x, const CentralElement& y);
CentralElement central_scale(Cx c, const CentralElement& x);
CentralElement central_star(const CentralElement& x);
// Pointwise product, the Schur product of the induced operators.
CentralElement central_product(const CentralElement& x, const CentralElement& y);
// 1_a -> 1_{conj a}; this is both antipodes on central elements.
CentralElement central_antipode(const FusionDual& d, const CentralElement& x);
// Convolution via fusion multiplicities:
// coefficient at b picks up  N_{ag}^b dim_q(a) dim_q(g) / dim_q(b) x_a p_g.
CentralElement central_convolve(const FusionDual& d, const CentralElement& p,
                                const CentralElement& x);
// Right Haar weight: sum_a c_a dim_q(a)^2.
Cx h_r_central(const FusionDual& d, const CentralElement& x);

// Direct sum of the matrix blocks attached to the given labels, with the
// canonical weights. Requires Tr(rho_a) = Tr(rho_a^{-1}) on every block;
// duals without stored densities get identity densities.
QuantumSpace dual_space(const FusionDual& d, const std::vector<Label>& labels);

AlgebraElement central_embed(const QuantumSpace& s, const CentralElement& x);
bool is_central(const QuantumSpace& s, const AlgebraElement& x, double tol = 1e-9);
// Throws std::invalid_argument when x is not central within tol.
CentralElement central_part(const QuantumSpace& s, const AlgebraElement& x, double tol = 1e-9);

// Right and left Haar weights on a dual space built by dual_space:
// h_r(x) = sum_a Tr(rho_a) Tr(rho_a x_a),  h_l(x) = sum_a Tr(rho_a) Tr(rho_a^{-1} x_a).
Cx h_r(const QuantumSpace& s, const AlgebraElement& x);
Cx h_l(const QuantumSpace& s, const AlgebraElement& x);

// Convolution p * x computed blockwise through the intertwiner provider:
//   (p * x)_b += (dim_q(a) dim_q(g) / dim_q(b)) V* (x_a rho_a (x) p_g rho_g) V rho_b^{-1}
// summed over a in supp(x), g in supp(p), V in Mor(b, a (x) g).
// Output is truncated to the blocks of `window`. Throws NoProviderError when
// the dual has no intertwiners.
AlgebraElement convolve(const FusionDual& d, const QuantumSpace& window,
                        const AlgebraElement& p, const AlgebraElement& x);

// The operator x -> (p1 p2) * x is the Schur product of the convolution
// operators given by p1 and p2; this returns the pointwise block product.
AlgebraElement schur_of_convolutions(const AlgebraElement& p1, const AlgebraElement& p2);

// tau_t = sigma_{-t}.
AlgebraElement scaling(const QuantumSpace& s, double t, const AlgebraElement& x);

// ---- finite dual pairs ----

// A finite group together with a complete list of irreducible unitary
// representations; functions on the group pair with the matrix direct sum.
struct FiniteDualPair {
  FiniteGroupRep data;
  DualPtr dual;       // fusion dual built from the characters
  QuantumSpace space; // one block per irrep, identity densities
};

// Validates completeness (sum of squared dims = order), unitarity,
// homomorphism property and orthogonality relations to 1e-9.
FiniteDualPair make_dual_pair(FiniteGroupRep data);

// Transform of a finitely supported matrix element into a function on the
// group, f(g) = sum_a Tr(rho_a) Tr(x_a rho_a u^a(g)); indexed like
// data.group.elems.
Vec fourier(const FiniteDualPair& pr, const AlgebraElement& x);
// Exact inverse, x_a = (1/|G|) sum_g u^a(g)* f(g).
AlgebraElement inverse_fourier(const FiniteDualPair& pr, const Vec& f);

// L2 norms making the transform a unitary: group side averages over the
// group, matrix side uses h_r.
double group_l2_norm(const FiniteDualPair& pr, const Vec& f);
double dual_l2_norm(const FiniteDualPair& pr, const AlgebraElement& x);

// Convolution through the function picture: p * x = inverse(fourier(x) fourier(p)).
AlgebraElement convolve_fourier(const FiniteDualPair& pr, const AlgebraElement& p,
                                const AlgebraElement& x);

// Antipode transported from inversion on the group.
AlgebraElement antipode_s(const FiniteDualPair& pr, const AlgebraElement& x);
// Unitary antipode sigma_{-i/2} after antipode_s; the two agree on these
// tracial pairs.
AlgebraElement unitary_antipode_r(const FiniteDualPair& pr, const AlgebraElement& x);

struct SymmetryReport {
  bool gns = false;
  bool kms = false;
  double dev_s = 0.0;
  double dev_r = 0.0;
};

// gns <=> antipode_s fixes p, kms <=> unitary_antipode_r fixes p.
SymmetryReport symmetry_report(const FiniteDualPair& pr, const AlgebraElement& p,
                               double tol = 1e-9);
SymmetryReport symmetry_report_central(const FusionDual& d, const CentralElement& p,
                                       double tol = 1e-9);

}  // namespace qgraph
