#pragma once

#include "qgraph/choi.hpp"

namespace qgraph {

// Collection of rectangular blocks V_{alpha beta} in the standard
// representation, keyed (from, to); each part holds n_to x n_from matrices.
// Most operations expect the parts to be orthonormal bases in the weighted
// inner product below; orthonormalize() produces that form.
struct Bimodule {
  std::map<std::pair<std::string, std::string>, std::vector<Mat>> parts;
};

// <X,Y> = Tr(X* rho_to^{-1/2} Y rho_from^{-1/2}) / sqrt(w_from w_to)
Cx rect_kms_inner(const QuantumSpace& s, const std::string& from, const std::string& to,
                  const Mat& x, const Mat& y);

// Modified Gram-Schmidt with pivoting; drops residuals below tol times the
// largest input norm. May return fewer vectors than supplied.
std::vector<Mat> kms_gram_schmidt(const QuantumSpace& s, const std::string& from,
                                  const std::string& to, std::vector<Mat> raw,
                                  double tol = 1e-10);

Bimodule orthonormalize(const QuantumSpace& s, Bimodule v, double tol = 1e-10);

bool is_orthonormal(const QuantumSpace& s, const Bimodule& v, double tol = 1e-9);

// Conditional expectation onto the center: x -> sum_a Tr(rho_a^{-1} x_a)/Tr(rho_a^{-1}) 1_a.
AlgebraElement psi_inverse(const QuantumSpace& s, const AlgebraElement& x);

// Hermitian idempotent in B (x) B^op representing the bimodule.
TwoSidedElement projection_from_bimodule(const QuantumSpace& s, const Bimodule& v);

// Inverse of the above; throws if p is not a projection.
Bimodule bimodule_from_projection(const QuantumSpace& s, const TwoSidedElement& p,
                                  double tol = 1e-9);

// Support bimodule of a positive semidefinite two-sided element.
Bimodule bimodule_from_choi_support(const QuantumSpace& s, const TwoSidedElement& choi,
                                    double rel_tol = 1e-10);

AdjacencyMap adjacency_from_bimodule(const QuantumSpace& s, const Bimodule& v);

Bimodule bimodule_from_adjacency(const AdjacencyMap& a, double rel_tol = 1e-10);

// Span of all composable products, orthonormalized.
Bimodule bimodule_product(const QuantumSpace& s, const Bimodule& v, const Bimodule& w);

Bimodule bimodule_power(const QuantumSpace& s, const Bimodule& v, int k);

// star(V)_{to,from} = {X* : X in V_{from,to}}
Bimodule bimodule_star(const QuantumSpace& s, const Bimodule& v);

// D = sum_i W_i W_i* over all parts, with the quarter-twisted Kraus operators.
AlgebraElement degree_from_kraus(const QuantumSpace& s, const Bimodule& v);

// span{1_a} in every diagonal part: the identity graph.
Bimodule identity_bimodule(const QuantumSpace& s);

// every matrix unit in every part: the complete graph.
Bimodule full_bimodule(const QuantumSpace& s);

}  // namespace qgraph
