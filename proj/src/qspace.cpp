#include "qgraph/qspace.hpp"

#include <stdexcept>

namespace qgraph {

Mat Block::rho_pow(Cx z) const {
  Vec d(eval.size());
  for (int i = 0; i < eval.size(); ++i) d(i) = std::exp(z * std::log(eval(i)));
  return evec * d.asDiagonal() * evec.adjoint();
}

static Block make_block(const std::string& label, const Mat& rho, double scale) {
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw std::invalid_argument("block '" + label + "': rho must be square and nonempty");
  if (!is_hermitian(rho, 1e-12))
    throw std::invalid_argument("block '" + label + "': rho must be hermitian");
  Block b;
  b.label = label;
  b.dim = int(rho.rows());
  b.rho = (rho + rho.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(b.rho);
  b.evec = es.eigenvectors();
  b.eval = es.eigenvalues();
  double lo = b.eval.minCoeff(), hi = b.eval.maxCoeff();
  if (lo <= 0.0) throw std::invalid_argument("block '" + label + "': rho must be positive definite");
  if (hi / lo > 1e12)
    throw std::invalid_argument("block '" + label + "': rho condition number exceeds 1e12");
  b.tr_rho = b.eval.sum();
  b.tr_rho_inv = b.eval.cwiseInverse().sum();
  b.weight_scale = scale * b.tr_rho_inv;
  return b;
}

QuantumSpace QuantumSpace::make(std::vector<std::pair<std::string, Mat>> blocks) {
  return make_scaled(std::move(blocks), 1.0);
}

QuantumSpace QuantumSpace::make_scaled(std::vector<std::pair<std::string, Mat>> blocks,
                                       double scale) {
  if (blocks.empty()) throw std::invalid_argument("space must have at least one block");
  QuantumSpace s;
  for (auto& [label, rho] : blocks) {
    if (s.index_.count(label)) throw std::invalid_argument("duplicate block label '" + label + "'");
    s.index_[label] = int(s.blocks_.size());
    s.blocks_.push_back(make_block(label, rho, scale));
  }
  return s;
}

const Block& QuantumSpace::block(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw std::out_of_range("no block labelled '" + label + "'");
  return blocks_[std::size_t(it->second)];
}

int QuantumSpace::total_dim() const {
  int t = 0;
  for (const auto& b : blocks_) t += b.dim;
  return t;
}

AlgebraElement identity_element(const QuantumSpace& s) {
  AlgebraElement x;
  for (const auto& b : s.blocks()) x.blocks[b.label] = Mat::Identity(b.dim, b.dim);
  return x;
}

AlgebraElement matrix_unit(const QuantumSpace& s, const std::string& label, int i, int j) {
  const Block& b = s.block(label);
  if (i < 0 || j < 0 || i >= b.dim || j >= b.dim)
    throw std::out_of_range("matrix unit index out of range");
  AlgebraElement x;
  Mat e = Mat::Zero(b.dim, b.dim);
  e(i, j) = 1.0;
  x.blocks[label] = e;
  return x;
}

Mat block_or_zero(const QuantumSpace& s, const AlgebraElement& x, const std::string& label) {
  auto it = x.blocks.find(label);
  if (it != x.blocks.end()) return it->second;
  const Block& b = s.block(label);
  return Mat::Zero(b.dim, b.dim);
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement z = x;
  for (const auto& [label, m] : y.blocks) {
    auto it = z.blocks.find(label);
    if (it == z.blocks.end())
      z.blocks[label] = m;
    else
      it->second += m;
  }
  return z;
}

AlgebraElement scale(Cx c, const AlgebraElement& x) {
  AlgebraElement z = x;
  for (auto& [label, m] : z.blocks) m *= c;
  return z;
}

AlgebraElement adjoint_element(const AlgebraElement& x) {
  AlgebraElement z;
  for (const auto& [label, m] : x.blocks) z.blocks[label] = m.adjoint();
  return z;
}

AlgebraElement elem_product(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement z;
  for (const auto& [label, m] : x.blocks) {
    auto it = y.blocks.find(label);
    if (it != y.blocks.end()) z.blocks[label] = m * it->second;
  }
  return z;
}

double elem_norm(const AlgebraElement& x) {
  double s = 0.0;
  for (const auto& [label, m] : x.blocks) s += m.squaredNorm();
  return std::sqrt(s);
}

double elem_sup_norm(const AlgebraElement& x) {
  double s = 0.0;
  for (const auto& [label, m] : x.blocks) {
    Eigen::JacobiSVD<Mat> svd(m);
    if (svd.singularValues().size() > 0) s = std::max(s, svd.singularValues()(0));
  }
  return s;
}

AlgebraElement prune(const AlgebraElement& x, double tol) {
  AlgebraElement z;
  for (const auto& [label, m] : x.blocks)
    if (m.norm() > tol) z.blocks[label] = m;
  return z;
}

Cx weight(const QuantumSpace& s, const AlgebraElement& x) {
  Cx w = 0.0;
  for (const auto& [label, m] : x.blocks) {
    const Block& b = s.block(label);
    w += b.weight_scale * (b.rho * m).trace();
  }
  return w;
}

Mat modular_block(const Block& b, Cx z, const Mat& x) {
  const Cx iz = Cx(0, 1) * z;
  return b.rho_pow(iz) * x * b.rho_pow(-iz);
}

AlgebraElement modular(const QuantumSpace& s, Cx z, const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [label, m] : x.blocks) out.blocks[label] = modular_block(s.block(label), z, m);
  return out;
}

Cx kms_inner(const QuantumSpace& s, const AlgebraElement& x, const AlgebraElement& y) {
  return gns_inner(s, x, modular(s, Cx(0, -0.5), y));
}

Cx gns_inner(const QuantumSpace& s, const AlgebraElement& x, const AlgebraElement& y) {
  return weight(s, elem_product(adjoint_element(x), y));
}

static TwoSidedElement ts_map_binary(const TwoSidedElement& p, const TwoSidedElement& q,
                                     bool subtract) {
  TwoSidedElement r = p;
  for (const auto& [key, m] : q.blocks) {
    auto it = r.blocks.find(key);
    Mat add = subtract ? Mat(-m) : m;
    if (it == r.blocks.end())
      r.blocks[key] = add;
    else
      it->second += add;
  }
  return r;
}

TwoSidedElement ts_add(const TwoSidedElement& p, const TwoSidedElement& q) {
  return ts_map_binary(p, q, false);
}

TwoSidedElement ts_scale(Cx c, const TwoSidedElement& p) {
  TwoSidedElement r = p;
  for (auto& [key, m] : r.blocks) m *= c;
  return r;
}

TwoSidedElement ts_product(const TwoSidedElement& p, const TwoSidedElement& q) {
  TwoSidedElement r;
  for (const auto& [key, m] : p.blocks) {
    auto it = q.blocks.find(key);
    if (it != q.blocks.end()) r.blocks[key] = m * it->second;
  }
  return r;
}

TwoSidedElement ts_adjoint(const TwoSidedElement& p) {
  TwoSidedElement r;
  for (const auto& [key, m] : p.blocks) r.blocks[key] = m.adjoint();
  return r;
}

double ts_norm(const TwoSidedElement& p) {
  double s = 0.0;
  for (const auto& [key, m] : p.blocks) s += m.squaredNorm();
  return std::sqrt(s);
}

TwoSidedElement ts_prune(const TwoSidedElement& p, double tol) {
  TwoSidedElement r;
  for (const auto& [key, m] : p.blocks)
    if (m.norm() > tol) r.blocks[key] = m;
  return r;
}

bool ts_is_hermitian(const TwoSidedElement& p, double tol) {
  double dev = 0.0, nrm = ts_norm(p);
  for (const auto& [key, m] : p.blocks) dev += (m - m.adjoint()).squaredNorm();
  return std::sqrt(dev) <= tol * std::max(1.0, nrm);
}

bool ts_is_idempotent(const TwoSidedElement& p, double tol) {
  TwoSidedElement sq = ts_product(p, p);
  double dev2 = 0.0;
  for (const auto& [key, m] : p.blocks) {
    auto it = sq.blocks.find(key);
    Mat d = (it == sq.blocks.end()) ? m : Mat(it->second - m);
    dev2 += d.squaredNorm();
  }
  for (const auto& [key, m] : sq.blocks)
    if (!p.blocks.count(key)) dev2 += m.squaredNorm();
  return std::sqrt(dev2) <= tol * std::max(1.0, ts_norm(p));
}

bool ts_is_projection(const TwoSidedElement& p, double tol) {
  return ts_is_hermitian(p, tol) && ts_is_idempotent(p, tol);
}

TwoSidedElement ts_identity(const QuantumSpace& s) {
  TwoSidedElement r;
  for (const auto& b1 : s.blocks())
    for (const auto& b2 : s.blocks())
      r.blocks[{b1.label, b2.label}] = Mat::Identity(b1.dim * b2.dim, b1.dim * b2.dim);
  return r;
}

TwoSidedElement to_op_form(const QuantumSpace& s, const BTensorB& k) {
  TwoSidedElement r;
  for (const auto& [key, m] : k.blocks) {
    int n1 = s.block(key.first).dim, n2 = s.block(key.second).dim;
    r.blocks[key] = partial_transpose_second(m, n1, n2);
  }
  return r;
}

BTensorB from_op_form(const QuantumSpace& s, const TwoSidedElement& p) {
  BTensorB r;
  for (const auto& [key, m] : p.blocks) {
    int n1 = s.block(key.first).dim, n2 = s.block(key.second).dim;
    r.blocks[key] = partial_transpose_second(m, n1, n2);
  }
  return r;
}

AlgebraElement mult(const QuantumSpace& s, const BTensorB& k) {
  AlgebraElement out;
  for (const auto& [key, m] : k.blocks) {
    if (key.first != key.second) continue;
    int n = s.block(key.first).dim;
    Mat prod = Mat::Zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int kk = 0; kk < n; ++kk) prod(p, q) += m(p * n + kk, kk * n + q);
    auto it = out.blocks.find(key.first);
    if (it == out.blocks.end())
      out.blocks[key.first] = prod;
    else
      it->second += prod;
  }
  return out;
}

BTensorB m_star(const QuantumSpace& s, const AlgebraElement& x) {
  BTensorB out;
  for (const auto& [label, xm] : x.blocks) {
    const Block& b = s.block(label);
    const int n = b.dim;
    Mat rho_inv = b.rho_pow(-1.0);
    Mat k = Mat::Zero(n * n, n * n);
    for (int p = 0; p < n; ++p)
      for (int r = 0; r < n; ++r)
        for (int q = 0; q < n; ++q)
          for (int ss = 0; ss < n; ++ss)
            k(p * n + r, q * n + ss) = xm(p, ss) * rho_inv(r, q) / b.weight_scale;
    out.blocks[{label, label}] = k;
  }
  return out;
}

Cx btb_gns_inner(const QuantumSpace& s, const BTensorB& x, const BTensorB& y) {
  Cx acc = 0.0;
  for (const auto& [key, xm] : x.blocks) {
    auto it = y.blocks.find(key);
    if (it == y.blocks.end()) continue;
    const Block& b1 = s.block(key.first);
    const Block& b2 = s.block(key.second);
    Mat w = kron(b1.rho, b2.rho);
    acc += b1.weight_scale * b2.weight_scale * (w * xm.adjoint() * it->second).trace();
  }
  return acc;
}

DeltaFormReport check_delta_form(const QuantumSpace& s, double tol) {
  DeltaFormReport rep;
  rep.pass = true;
  for (const auto& b : s.blocks()) {
    double lambda = 0.0;
    double block_dev = 0.0;
    for (int i = 0; i < b.dim; ++i)
      for (int j = 0; j < b.dim; ++j) {
        AlgebraElement e = matrix_unit(s, b.label, i, j);
        AlgebraElement back = mult(s, m_star(s, e));
        Mat m = block_or_zero(s, back, b.label);
        if (i == 0 && j == 0) lambda = m(0, 0).real();
        Mat target = Mat::Zero(b.dim, b.dim);
        target(i, j) = lambda;
        block_dev = std::max(block_dev, (m - target).norm());
        rep.max_deviation = std::max(rep.max_deviation, (m - e.blocks[b.label]).norm());
      }
    if (std::abs(lambda) < 1e-300) lambda = 1e-300;
    rep.delta_sq.emplace_back(b.label, 1.0 / lambda);
    if (std::abs(lambda - 1.0) > tol || block_dev > tol) rep.pass = false;
  }
  return rep;
}

}  // namespace qgraph
