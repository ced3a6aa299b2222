#include "qgraph/linalg.hpp"

#include <stdexcept>

namespace qgraph {

bool is_hermitian(const Mat& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol * std::max(1.0, a.norm());
}

Mat kron(const Mat& x, const Mat& y) {
  const int r1 = int(x.rows()), c1 = int(x.cols());
  const int r2 = int(y.rows()), c2 = int(y.cols());
  Mat out(r1 * r2, c1 * c2);
  for (int i = 0; i < r1; ++i)
    for (int j = 0; j < c1; ++j) out.block(i * r2, j * c2, r2, c2) = x(i, j) * y;
  return out;
}

Mat partial_transpose_second(const Mat& k, int n1, int n2) {
  Mat out(n1 * n2, n1 * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) out(i * n2 + b, j * n2 + a) = k(i * n2 + a, j * n2 + b);
  return out;
}

Mat swap_legs(const Mat& k, int n1, int n2) {
  Mat out(n2 * n1, n2 * n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) out(a * n1 + i, b * n1 + j) = k(i * n2 + a, j * n2 + b);
  return out;
}

Mat ptrace_second(const Mat& k, int n1, int n2) {
  Mat out = Mat::Zero(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int a = 0; a < n2; ++a) out(i, j) += k(i * n2 + a, j * n2 + a);
  return out;
}

Mat ptrace_second_weighted(const Mat& k, int n1, int n2, const Mat& m) {
  Mat out = Mat::Zero(n1, n1);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j)
      for (int a = 0; a < n2; ++a)
        for (int b = 0; b < n2; ++b) out(i, j) += k(i * n2 + a, j * n2 + b) * m(b, a);
  return out;
}

Mat reshuffle(const Mat& k, int n1, int n2) {
  Mat out(n1 * n2, n1 * n2);
  for (int p = 0; p < n1; ++p)
    for (int q = 0; q < n1; ++q)
      for (int r = 0; r < n2; ++r)
        for (int s = 0; s < n2; ++s) out(p * n2 + s, q * n2 + r) = k(p * n2 + r, q * n2 + s);
  return out;
}

Vec vec_rm(const Mat& a) {
  Vec v(a.rows() * a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

Mat unvec_rm(const Vec& v, int rows, int cols) {
  if (v.size() != rows * cols) throw std::invalid_argument("unvec_rm: size mismatch");
  Mat a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

double Rng::gauss() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(eng);
}

double Rng::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(eng);
}

int Rng::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng);
}

Cx Rng::cgauss() { return Cx(gauss(), gauss()) / std::sqrt(2.0); }

Mat Rng::cmatrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
  return m;
}

Mat Rng::hermitian(int n) {
  Mat g = cmatrix(n, n);
  return (g + g.adjoint()) / 2.0;
}

Mat Rng::unitary(int n) {
  Mat g = cmatrix(n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    Cx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : Cx(1, 0);
  }
  return q;
}

Mat Rng::positive(int n, double lo, double hi) {
  Mat u = unitary(n);
  RVec d = positive_diag(n, lo, hi);
  return u * d.cast<Cx>().asDiagonal() * u.adjoint();
}

RVec Rng::positive_diag(int n, double lo, double hi) {
  RVec d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(lo, hi);
  return d;
}

Mat Rng::projection(int n, int r) {
  Mat u = unitary(n);
  return span_projection(u.leftCols(r));
}

Mat psd_support_vectors(const Mat& a, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es((a + a.adjoint()) / 2.0);
  const RVec& ev = es.eigenvalues();
  double top = ev.cwiseAbs().maxCoeff();
  if (top <= 0) return Mat(a.rows(), 0);
  std::vector<int> keep;
  for (int i = 0; i < ev.size(); ++i)
    if (ev(i) > rel_tol * top) keep.push_back(i);
  Mat v(a.rows(), int(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) v.col(int(c)) = es.eigenvectors().col(keep[c]);
  return v;
}

Mat span_projection(const Mat& v) {
  if (v.cols() == 0) return Mat::Zero(v.rows(), v.rows());
  return v * v.adjoint();
}

}  // namespace qgraph
