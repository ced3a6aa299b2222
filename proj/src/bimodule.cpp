#include "qgraph/bimodule.hpp"

#include <stdexcept>

namespace qgraph {

namespace {

double part_scale(const Block& from, const Block& to) {
  return 1.0 / std::sqrt(from.weight_scale * to.weight_scale);
}

}  // namespace

Cx rect_kms_inner(const QuantumSpace& s, const std::string& from, const std::string& to,
                  const Mat& x, const Mat& y) {
  const Block& bf = s.block(from);
  const Block& bt = s.block(to);
  Mat wt = bt.rho_pow(-0.5);
  Mat wf = bf.rho_pow(-0.5);
  return part_scale(bf, bt) * (x.adjoint() * wt * y * wf).trace();
}

std::vector<Mat> kms_gram_schmidt(const QuantumSpace& s, const std::string& from,
                                  const std::string& to, std::vector<Mat> raw, double tol) {
  double max_input = 0.0;
  for (const auto& x : raw)
    max_input = std::max(max_input, std::sqrt(std::abs(rect_kms_inner(s, from, to, x, x).real())));
  std::vector<Mat> basis;
  std::vector<bool> used(raw.size(), false);
  for (;;) {
    int pick = -1;
    double best = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (used[i]) continue;
      double nrm = std::sqrt(std::abs(rect_kms_inner(s, from, to, raw[i], raw[i]).real()));
      if (nrm > best) {
        best = nrm;
        pick = int(i);
      }
    }
    if (pick < 0 || best < tol * max_input) break;
    used[std::size_t(pick)] = true;
    Mat x = raw[std::size_t(pick)] / best;
    basis.push_back(x);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (used[i]) continue;
      raw[i] -= rect_kms_inner(s, from, to, x, raw[i]) * x;
    }
  }
  return basis;
}

Bimodule orthonormalize(const QuantumSpace& s, Bimodule v, double tol) {
  Bimodule out;
  for (auto& [key, vecs] : v.parts) {
    std::vector<Mat> basis = kms_gram_schmidt(s, key.first, key.second, std::move(vecs), tol);
    if (!basis.empty()) out.parts[key] = std::move(basis);
  }
  return out;
}

bool is_orthonormal(const QuantumSpace& s, const Bimodule& v, double tol) {
  for (const auto& [key, vecs] : v.parts)
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = 0; j < vecs.size(); ++j) {
        Cx g = rect_kms_inner(s, key.first, key.second, vecs[i], vecs[j]);
        if (std::abs(g - (i == j ? Cx(1, 0) : Cx(0, 0))) > tol) return false;
      }
  return true;
}

AlgebraElement psi_inverse(const QuantumSpace& s, const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& b : s.blocks()) {
    auto it = x.blocks.find(b.label);
    if (it == x.blocks.end()) continue;
    Cx c = (b.rho_pow(-1.0) * it->second).trace() / b.tr_rho_inv;
    out.blocks[b.label] = c * Mat::Identity(b.dim, b.dim);
  }
  return out;
}

TwoSidedElement projection_from_bimodule(const QuantumSpace& s, const Bimodule& v) {
  if (!is_orthonormal(s, v)) throw std::invalid_argument("bimodule basis is not orthonormal");
  TwoSidedElement p;
  for (const auto& [key, vecs] : v.parts) {
    const Block& bf = s.block(key.first);
    const Block& bt = s.block(key.second);
    Mat qf = bf.rho_pow(-0.25);
    Mat qt = bt.rho_pow(-0.25);
    double c = part_scale(bf, bt);
    Mat k = Mat::Zero(bt.dim * bf.dim, bt.dim * bf.dim);
    for (const auto& x : vecs) {
      Vec y = vec_rm(Mat(qt * x * qf));
      k += c * y * y.adjoint();
    }
    p.blocks[{key.second, key.first}] = k;
  }
  return p;
}

Bimodule bimodule_from_choi_support(const QuantumSpace& s, const TwoSidedElement& choi,
                                    double rel_tol) {
  Bimodule v;
  for (const auto& [key, k] : choi.blocks) {
    const Block& bt = s.block(key.first);
    const Block& bf = s.block(key.second);
    Mat vs = psd_support_vectors(Mat((k + k.adjoint()) / 2.0), rel_tol);
    if (vs.cols() == 0) continue;
    Mat qf = bf.rho_pow(0.25);
    Mat qt = bt.rho_pow(0.25);
    double c = part_scale(bf, bt);
    std::vector<Mat> basis;
    for (int i = 0; i < vs.cols(); ++i) {
      Mat y = unvec_rm(vs.col(i), bt.dim, bf.dim) / std::sqrt(c);
      basis.push_back(qt * y * qf);
    }
    v.parts[{key.second, key.first}] = std::move(basis);
  }
  return v;
}

Bimodule bimodule_from_projection(const QuantumSpace& s, const TwoSidedElement& p, double tol) {
  if (!ts_is_projection(p, tol)) throw std::invalid_argument("two-sided element is not a projection");
  return bimodule_from_choi_support(s, p, 1e-10);
}

AdjacencyMap adjacency_from_bimodule(const QuantumSpace& s, const Bimodule& v) {
  if (!is_orthonormal(s, v)) throw std::invalid_argument("bimodule basis is not orthonormal");
  AdjacencyMap::BlockMaps maps;
  for (const auto& [key, vecs] : v.parts) {
    const Block& bf = s.block(key.first);
    const Block& bt = s.block(key.second);
    Mat qf = bf.rho_pow(0.25);
    Mat qt = bt.rho_pow(-0.25);
    double c = std::sqrt(bf.weight_scale / bt.weight_scale);
    Mat m = Mat::Zero(bt.dim * bt.dim, bf.dim * bf.dim);
    std::vector<Mat> kraus;
    for (const auto& x : vecs) kraus.push_back(qt * x * qf);
    for (int i = 0; i < bf.dim; ++i)
      for (int j = 0; j < bf.dim; ++j) {
        Mat e = Mat::Zero(bf.dim, bf.dim);
        e(i, j) = 1.0;
        Mat out = Mat::Zero(bt.dim, bt.dim);
        for (const auto& w : kraus) out += c * w * e * w.adjoint();
        m.col(i * bf.dim + j) = vec_rm(out);
      }
    auto mk = std::make_pair(key.first, key.second);
    auto it = maps.find(mk);
    if (it == maps.end())
      maps[mk] = m;
    else
      it->second += m;
  }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

Bimodule bimodule_from_adjacency(const AdjacencyMap& a, double rel_tol) {
  return bimodule_from_choi_support(a.space(), a.choi(), rel_tol);
}

Bimodule bimodule_product(const QuantumSpace& s, const Bimodule& v, const Bimodule& w) {
  Bimodule raw;
  for (const auto& [wk, wvecs] : w.parts)
    for (const auto& [vk, vvecs] : v.parts) {
      if (vk.first != wk.second) continue;
      auto key = std::make_pair(wk.first, vk.second);
      for (const auto& y : wvecs)
        for (const auto& x : vvecs) raw.parts[key].push_back(x * y);
    }
  return orthonormalize(s, std::move(raw));
}

Bimodule bimodule_power(const QuantumSpace& s, const Bimodule& v, int k) {
  if (k < 1) throw std::invalid_argument("power requires k >= 1");
  Bimodule acc = orthonormalize(s, v);
  Bimodule base = acc;
  for (int i = 1; i < k; ++i) acc = bimodule_product(s, acc, base);
  return acc;
}

Bimodule bimodule_star(const QuantumSpace& s, const Bimodule& v) {
  Bimodule out;
  for (const auto& [key, vecs] : v.parts) {
    auto sk = std::make_pair(key.second, key.first);
    for (const auto& x : vecs) out.parts[sk].push_back(x.adjoint());
  }
  return orthonormalize(s, std::move(out));
}

AlgebraElement degree_from_kraus(const QuantumSpace& s, const Bimodule& v) {
  AlgebraElement d;
  for (const auto& b : s.blocks()) d.blocks[b.label] = Mat::Zero(b.dim, b.dim);
  for (const auto& [key, vecs] : v.parts) {
    const Block& bf = s.block(key.first);
    const Block& bt = s.block(key.second);
    Mat qf = bf.rho_pow(0.25);
    Mat qt = bt.rho_pow(-0.25);
    double c = std::sqrt(bf.weight_scale / bt.weight_scale);
    for (const auto& x : vecs) {
      Mat w = qt * x * qf;
      d.blocks[bt.label] += c * w * w.adjoint();
    }
  }
  return d;
}

Bimodule identity_bimodule(const QuantumSpace& s) {
  Bimodule v;
  for (const auto& b : s.blocks()) v.parts[{b.label, b.label}] = {Mat::Identity(b.dim, b.dim)};
  return orthonormalize(s, std::move(v));
}

Bimodule full_bimodule(const QuantumSpace& s) {
  Bimodule v;
  for (const auto& from : s.blocks())
    for (const auto& to : s.blocks()) {
      std::vector<Mat> units;
      for (int i = 0; i < to.dim; ++i)
        for (int j = 0; j < from.dim; ++j) {
          Mat e = Mat::Zero(to.dim, from.dim);
          e(i, j) = 1.0;
          units.push_back(e);
        }
      v.parts[{from.label, to.label}] = std::move(units);
    }
  return orthonormalize(s, std::move(v));
}

}  // namespace qgraph
