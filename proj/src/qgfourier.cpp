#include "qgraph/qgfourier.hpp"

#include <cmath>
#include <stdexcept>

namespace qgraph {

CentralElement central_prune(CentralElement x, double tol) {
  for (auto it = x.begin(); it != x.end();) {
    if (std::abs(it->second) <= tol)
      it = x.erase(it);
    else
      ++it;
  }
  return x;
}

SupportSet central_support(const CentralElement& x, double tol) {
  SupportSet out;
  for (const auto& [l, c] : x)
    if (std::abs(c) > tol) out.insert(l);
  return out;
}

CentralElement central_indicator(const SupportSet& s) {
  CentralElement out;
  for (const auto& l : s) out[l] = 1.0;
  return out;
}

CentralElement central_add(const CentralElement& x, const CentralElement& y) {
  CentralElement out = x;
  for (const auto& [l, c] : y) out[l] += c;
  return out;
}

CentralElement central_scale(Cx c, const CentralElement& x) {
  CentralElement out = x;
  for (auto& [l, v] : out) v *= c;
  return out;
}

CentralElement central_star(const CentralElement& x) {
  CentralElement out = x;
  for (auto& [l, v] : out) v = std::conj(v);
  return out;
}

CentralElement central_product(const CentralElement& x, const CentralElement& y) {
  CentralElement out;
  for (const auto& [l, c] : x) {
    auto it = y.find(l);
    if (it != y.end()) out[l] = c * it->second;
  }
  return out;
}

CentralElement central_antipode(const FusionDual& d, const CentralElement& x) {
  CentralElement out;
  for (const auto& [l, c] : x) out[d.conjugate(l)] += c;
  return out;
}

CentralElement central_convolve(const FusionDual& d, const CentralElement& p,
                                const CentralElement& x) {
  CentralElement out;
  for (const auto& [a, xa] : x) {
    if (xa == Cx(0.0)) continue;
    double dqa = d.dim_q(a);
    for (const auto& [g, pg] : p) {
      if (pg == Cx(0.0)) continue;
      double dqg = d.dim_q(g);
      for (const auto& [b, mult] : d.fuse(a, g))
        out[b] += double(mult) * (dqa * dqg / d.dim_q(b)) * xa * pg;
    }
  }
  return central_prune(std::move(out));
}

Cx h_r_central(const FusionDual& d, const CentralElement& x) {
  Cx acc = 0.0;
  for (const auto& [l, c] : x) {
    double dq = d.dim_q(l);
    acc += c * dq * dq;
  }
  return acc;
}

QuantumSpace dual_space(const FusionDual& d, const std::vector<Label>& labels) {
  std::vector<std::pair<std::string, Mat>> blocks;
  for (const auto& l : labels) {
    long long n = d.dim(l);
    Mat rho;
    if (d.has_rho()) {
      RVec diag = d.rho_diag(l);
      if (diag.size() != n) throw std::invalid_argument("density size mismatch at " + l);
      double gap = std::abs(diag.sum() - diag.cwiseInverse().sum());
      if (gap > 1e-9 * std::max(1.0, diag.sum()))
        throw std::invalid_argument("block " + l + " has Tr(rho) != Tr(rho^{-1})");
      rho = Vec(diag.cast<Cx>()).asDiagonal();
    } else {
      rho = Mat::Identity(n, n);
    }
    blocks.push_back({l, rho});
  }
  return QuantumSpace::make(std::move(blocks));
}

AlgebraElement central_embed(const QuantumSpace& s, const CentralElement& x) {
  AlgebraElement out;
  for (const auto& [l, c] : x) {
    if (c == Cx(0.0)) continue;
    if (!s.has(l)) throw std::invalid_argument("central element leaves the window at " + l);
    int n = s.block(l).dim;
    out.blocks[l] = c * Mat::Identity(n, n);
  }
  return out;
}

bool is_central(const QuantumSpace& s, const AlgebraElement& x, double tol) {
  for (const auto& [l, m] : x.blocks) {
    int n = s.block(l).dim;
    Cx c = m.trace() / double(n);
    if (frob(Mat(m - c * Mat::Identity(n, n))) > tol * std::max(1.0, frob(m))) return false;
  }
  return true;
}

CentralElement central_part(const QuantumSpace& s, const AlgebraElement& x, double tol) {
  if (!is_central(s, x, tol)) throw std::invalid_argument("element is not central");
  CentralElement out;
  for (const auto& [l, m] : x.blocks) out[l] = m.trace() / double(s.block(l).dim);
  return central_prune(std::move(out));
}

Cx h_r(const QuantumSpace& s, const AlgebraElement& x) {
  Cx acc = 0.0;
  for (const auto& [l, m] : x.blocks) {
    const Block& b = s.block(l);
    acc += b.tr_rho * (b.rho * m).trace();
  }
  return acc;
}

Cx h_l(const QuantumSpace& s, const AlgebraElement& x) {
  Cx acc = 0.0;
  for (const auto& [l, m] : x.blocks) {
    const Block& b = s.block(l);
    acc += b.tr_rho * (b.rho_pow(-1.0) * m).trace();
  }
  return acc;
}

namespace {

Mat label_density(const FusionDual& d, const Label& l) {
  long long n = d.dim(l);
  if (!d.has_rho()) return Mat::Identity(n, n);
  return Vec(d.rho_diag(l).cast<Cx>()).asDiagonal();
}

}  // namespace

AlgebraElement convolve(const FusionDual& d, const QuantumSpace& window,
                        const AlgebraElement& p, const AlgebraElement& x) {
  if (!d.has_intertwiners())
    throw NoProviderError(d.name() + ": convolution needs an intertwiner provider");
  AlgebraElement out;
  for (const auto& [a, xa] : x.blocks) {
    if (frob(xa) < 1e-300) continue;
    if (xa.rows() != d.dim(a))
      throw std::invalid_argument("block " + a + " has the wrong size");
    double dqa = d.dim_q(a);
    Mat xr = xa * label_density(d, a);
    for (const auto& [g, pg] : p.blocks) {
      if (frob(pg) < 1e-300) continue;
      if (pg.rows() != d.dim(g))
        throw std::invalid_argument("block " + g + " has the wrong size");
      double dqg = d.dim_q(g);
      Mat pr = pg * label_density(d, g);
      Mat m = kron(xr, pr);
      for (const auto& [b, mult] : d.fuse(a, g)) {
        if (!window.has(b)) continue;
        auto vs = d.intertwiners(a, g, b);
        if (int(vs.size()) != mult)
          throw std::runtime_error("intertwiner count disagrees with fusion at " + a + "," + g +
                                   " -> " + b);
        const Block& blk = window.block(b);
        Mat rbi = blk.rho_pow(-1.0);
        double c = dqa * dqg / d.dim_q(b);
        Mat acc = Mat::Zero(blk.dim, blk.dim);
        for (const auto& v : vs) acc += v.adjoint() * m * v;
        Mat term = c * acc * rbi;
        auto it = out.blocks.find(b);
        if (it == out.blocks.end())
          out.blocks[b] = term;
        else
          it->second += term;
      }
    }
  }
  return prune(out, 1e-300);
}

AlgebraElement schur_of_convolutions(const AlgebraElement& p1, const AlgebraElement& p2) {
  return elem_product(p1, p2);
}

AlgebraElement scaling(const QuantumSpace& s, double t, const AlgebraElement& x) {
  return modular(s, Cx(-t, 0.0), x);
}

// ---- finite dual pairs ----

FiniteDualPair make_dual_pair(FiniteGroupRep data) {
  const auto& g = data.group;
  int order = int(g.elems.size());
  if (order == 0) throw std::invalid_argument("empty group");
  long long sq = 0;
  for (const auto& u : data.irreps) {
    int n = int(u.mats[0].rows());
    if (int(u.mats.size()) != order)
      throw std::invalid_argument("irrep " + u.name + " has wrong number of matrices");
    sq += (long long)n * n;
    if (frob(Mat(u.mats[std::size_t(g.identity)] - Mat::Identity(n, n))) > 1e-9)
      throw std::invalid_argument("irrep " + u.name + " does not send the identity to Id");
    for (int a = 0; a < order; ++a) {
      if (frob(Mat(u.mats[std::size_t(a)] * u.mats[std::size_t(a)].adjoint() -
                   Mat::Identity(n, n))) > 1e-9)
        throw std::invalid_argument("irrep " + u.name + " is not unitary");
      for (int b = 0; b < order; ++b) {
        int ab = g.mul[std::size_t(a)][std::size_t(b)];
        if (frob(Mat(u.mats[std::size_t(a)] * u.mats[std::size_t(b)] -
                     u.mats[std::size_t(ab)])) > 1e-9)
          throw std::invalid_argument("irrep " + u.name + " is not a homomorphism");
      }
    }
  }
  if (sq != order) throw std::invalid_argument("irrep list incomplete");

  // Orthogonality of matrix coefficients.
  for (const auto& ua : data.irreps)
    for (const auto& ub : data.irreps) {
      int na = int(ua.mats[0].rows()), nb = int(ub.mats[0].rows());
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
          for (int k = 0; k < nb; ++k)
            for (int l = 0; l < nb; ++l) {
              Cx acc = 0.0;
              for (int gg = 0; gg < order; ++gg)
                acc += ua.mats[std::size_t(gg)](i, j) * std::conj(ub.mats[std::size_t(gg)](k, l));
              acc /= double(order);
              Cx expect = (ua.name == ub.name && i == k && j == l) ? Cx(1.0 / na) : Cx(0.0);
              if (std::abs(acc - expect) > 1e-9)
                throw std::invalid_argument("orthogonality fails between " + ua.name + " and " +
                                            ub.name);
            }
    }

  FiniteDualPair pr;
  pr.dual = dual_of_group(data);
  std::vector<std::pair<std::string, Mat>> blocks;
  for (const auto& u : data.irreps) {
    int n = int(u.mats[0].rows());
    blocks.push_back({u.name, Mat::Identity(n, n)});
  }
  pr.space = QuantumSpace::make(std::move(blocks));
  pr.data = std::move(data);
  return pr;
}

Vec fourier(const FiniteDualPair& pr, const AlgebraElement& x) {
  int order = int(pr.data.group.elems.size());
  Vec f = Vec::Zero(order);
  for (const auto& u : pr.data.irreps) {
    auto it = x.blocks.find(u.name);
    if (it == x.blocks.end()) continue;
    const Block& b = pr.space.block(u.name);
    Mat xr = it->second * b.rho;
    for (int g = 0; g < order; ++g) f(g) += b.tr_rho * (xr * u.mats[std::size_t(g)]).trace();
  }
  return f;
}

AlgebraElement inverse_fourier(const FiniteDualPair& pr, const Vec& f) {
  int order = int(pr.data.group.elems.size());
  if (f.size() != order) throw std::invalid_argument("function has wrong length");
  AlgebraElement out;
  for (const auto& u : pr.data.irreps) {
    int n = int(u.mats[0].rows());
    Mat acc = Mat::Zero(n, n);
    for (int g = 0; g < order; ++g) acc += u.mats[std::size_t(g)].adjoint() * f(g);
    out.blocks[u.name] = acc / double(order);
  }
  return prune(out, 1e-14);
}

double group_l2_norm(const FiniteDualPair& pr, const Vec& f) {
  return f.norm() / std::sqrt(double(pr.data.group.elems.size()));
}

double dual_l2_norm(const FiniteDualPair& pr, const AlgebraElement& x) {
  Cx val = h_r(pr.space, elem_product(adjoint_element(x), x));
  return std::sqrt(std::max(0.0, val.real()));
}

AlgebraElement convolve_fourier(const FiniteDualPair& pr, const AlgebraElement& p,
                                const AlgebraElement& x) {
  Vec fp = fourier(pr, p);
  Vec fx = fourier(pr, x);
  return inverse_fourier(pr, Vec(fx.cwiseProduct(fp)));
}

AlgebraElement antipode_s(const FiniteDualPair& pr, const AlgebraElement& x) {
  Vec f = fourier(pr, x);
  int order = int(pr.data.group.elems.size());
  Vec fi(order);
  for (int g = 0; g < order; ++g) fi(g) = f(pr.data.group.inv[std::size_t(g)]);
  return inverse_fourier(pr, fi);
}

AlgebraElement unitary_antipode_r(const FiniteDualPair& pr, const AlgebraElement& x) {
  return modular(pr.space, Cx(0.0, -0.5), antipode_s(pr, x));
}

SymmetryReport symmetry_report(const FiniteDualPair& pr, const AlgebraElement& p, double tol) {
  SymmetryReport rep;
  double scale = std::max(1.0, elem_norm(p));
  AlgebraElement sp = antipode_s(pr, p);
  AlgebraElement rp = unitary_antipode_r(pr, p);
  rep.dev_s = elem_norm(add(sp, qgraph::scale(Cx(-1.0), p))) / scale;
  rep.dev_r = elem_norm(add(rp, qgraph::scale(Cx(-1.0), p))) / scale;
  rep.gns = rep.dev_s <= tol;
  rep.kms = rep.dev_r <= tol;
  return rep;
}

SymmetryReport symmetry_report_central(const FusionDual& d, const CentralElement& p, double tol) {
  SymmetryReport rep;
  CentralElement rp = central_antipode(d, p);
  double dev = 0.0, scale = 0.0;
  CentralElement diff = central_add(rp, central_scale(-1.0, p));
  for (const auto& [l, c] : diff) dev += std::norm(c);
  for (const auto& [l, c] : p) scale += std::norm(c);
  dev = std::sqrt(dev) / std::max(1.0, std::sqrt(scale));
  rep.dev_s = rep.dev_r = dev;
  rep.gns = rep.kms = dev <= tol;
  return rep;
}

}  // namespace qgraph
