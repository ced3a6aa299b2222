#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace qgraph {

using Cx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline double frob(const Mat& a) { return a.norm(); }

bool is_hermitian(const Mat& a, double tol);

// Kronecker product, row-index convention (i*n2+k, j*n2+l) -> X(i,j)*Y(k,l).
Mat kron(const Mat& x, const Mat& y);

// Transpose the second tensor leg of a (n1*n2)x(n1*n2) matrix in place of X (x) Y -> X (x) Y^T.
Mat partial_transpose_second(const Mat& k, int n1, int n2);

// Exchange tensor legs: sum a (x) b -> sum b (x) a. Result is (n2*n1)x(n2*n1).
Mat swap_legs(const Mat& k, int n1, int n2);

// Partial trace over the second leg of K (1 (x) M); M defaults to identity.
Mat ptrace_second(const Mat& k, int n1, int n2);
Mat ptrace_second_weighted(const Mat& k, int n1, int n2, const Mat& m);

// Reindex K[(p,r),(q,s)] -> N[(p,s),(q,r)].
Mat reshuffle(const Mat& k, int n1, int n2);

// Row-major vectorization.
Vec vec_rm(const Mat& a);
Mat unvec_rm(const Vec& v, int rows, int cols);

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double gauss();
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);  // inclusive
  Cx cgauss();
  Mat cmatrix(int rows, int cols);
  Mat hermitian(int n);
  Mat unitary(int n);
  // Positive eigenvalues in [lo, hi], conjugated by a random unitary.
  Mat positive(int n, double lo = 0.5, double hi = 2.0);
  RVec positive_diag(int n, double lo = 0.5, double hi = 2.0);
  // Rank-r orthogonal projection in M_n.
  Mat projection(int n, int r);
};

// Spectral support of a hermitian PSD matrix: eigenvectors with eigenvalue
// above rel_tol * max_eigenvalue, returned as columns.
Mat psd_support_vectors(const Mat& a, double rel_tol = 1e-10);

// Orthogonal projection onto the span of the columns of v (assumed orthonormal).
Mat span_projection(const Mat& v);

}  // namespace qgraph
