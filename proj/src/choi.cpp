#include "qgraph/choi.hpp"

#include <stdexcept>

namespace qgraph {

namespace {

Mat unit(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

double maps_distance(const AdjacencyMap::BlockMaps& a, const AdjacencyMap::BlockMaps& b) {
  double d2 = 0.0;
  for (const auto& [key, m] : a) {
    auto it = b.find(key);
    d2 += (it == b.end()) ? m.squaredNorm() : (m - it->second).squaredNorm();
  }
  for (const auto& [key, m] : b)
    if (!a.count(key)) d2 += m.squaredNorm();
  return std::sqrt(d2);
}

AdjacencyMap::BlockMaps prune_maps(AdjacencyMap::BlockMaps maps, double tol) {
  AdjacencyMap::BlockMaps out;
  for (auto& [key, m] : maps)
    if (m.norm() > tol) out[key] = std::move(m);
  return out;
}

double maps_norm(const AdjacencyMap::BlockMaps& maps) {
  double s = 0.0;
  for (const auto& [key, m] : maps) s += m.squaredNorm();
  return std::sqrt(s);
}

}  // namespace

TwoSidedElement choi_from_block_maps(const QuantumSpace& s, const AdjacencyMap::BlockMaps& maps) {
  TwoSidedElement p;
  for (const auto& [key, m] : maps) {
    const Block& ba = s.block(key.first);
    const Block& bb = s.block(key.second);
    Mat r = ba.rho_pow(-0.25);
    Mat rt = r.transpose();
    for (int i = 0; i < ba.dim; ++i)
      for (int j = 0; j < ba.dim; ++j) {
        Mat arg = r * unit(ba.dim, i, j) * r;
        Mat out = unvec_rm(m * vec_rm(arg), bb.dim, bb.dim);
        Mat second = rt * unit(ba.dim, i, j) * rt;  // transpose of r e_ji r
        auto kkey = std::make_pair(key.second, key.first);
        Mat add = kron(out, second) / ba.weight_scale;
        auto it = p.blocks.find(kkey);
        if (it == p.blocks.end())
          p.blocks[kkey] = add;
        else
          it->second += add;
      }
  }
  return p;
}

AdjacencyMap::BlockMaps block_maps_from_choi(const QuantumSpace& s, const TwoSidedElement& choi) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& [key, k] : choi.blocks) {
    const Block& bb = s.block(key.first);   // output block beta
    const Block& ba = s.block(key.second);  // input block alpha
    Mat rh = ba.rho_pow(0.5);
    Mat m(bb.dim * bb.dim, ba.dim * ba.dim);
    for (int i = 0; i < ba.dim; ++i)
      for (int j = 0; j < ba.dim; ++j) {
        Mat w = (rh * unit(ba.dim, i, j) * rh).transpose();
        Mat out = ba.weight_scale * ptrace_second_weighted(k, bb.dim, ba.dim, w);
        m.col(i * ba.dim + j) = vec_rm(out);
      }
    maps[{key.second, key.first}] = m;
  }
  return maps;
}

AdjacencyMap AdjacencyMap::from_block_maps(const QuantumSpace& s, BlockMaps maps, double tol) {
  for (const auto& [key, m] : maps)
    if (!m.allFinite()) throw std::invalid_argument("non-finite block map entry");
  AdjacencyMap a;
  a.space_ = s;
  a.maps_ = prune_maps(std::move(maps), 0.0);
  a.choi_ = choi_from_block_maps(s, a.maps_);
  BlockMaps back = prune_maps(block_maps_from_choi(s, a.choi_), 0.0);
  double dev = maps_distance(a.maps_, back);
  if (dev > tol * std::max(1.0, maps_norm(a.maps_)))
    throw std::runtime_error("adjacency map representations disagree: " + std::to_string(dev));
  return a;
}

AdjacencyMap AdjacencyMap::from_choi(const QuantumSpace& s, TwoSidedElement choi, double tol) {
  for (const auto& [key, k] : choi.blocks)
    if (!k.allFinite()) throw std::invalid_argument("non-finite choi entry");
  AdjacencyMap a;
  a.space_ = s;
  a.choi_ = std::move(choi);
  a.maps_ = prune_maps(block_maps_from_choi(s, a.choi_), 0.0);
  TwoSidedElement back = choi_from_block_maps(s, a.maps_);
  double dev = ts_norm(ts_add(back, ts_scale(-1.0, a.choi_)));
  if (dev > tol * std::max(1.0, ts_norm(a.choi_)))
    throw std::runtime_error("choi element does not represent a map on this space: " +
                             std::to_string(dev));
  return a;
}

AlgebraElement AdjacencyMap::apply(const AlgebraElement& x) const {
  AlgebraElement out;
  for (const auto& [key, m] : maps_) {
    auto it = x.blocks.find(key.first);
    if (it == x.blocks.end()) continue;
    const Block& bb = space_.block(key.second);
    Mat add = unvec_rm(m * vec_rm(it->second), bb.dim, bb.dim);
    auto oit = out.blocks.find(key.second);
    if (oit == out.blocks.end())
      out.blocks[key.second] = add;
    else
      oit->second += add;
  }
  return out;
}

Mat AdjacencyMap::apply_block(const std::string& from, const std::string& to, const Mat& x) const {
  auto it = maps_.find({from, to});
  const Block& bb = space_.block(to);
  if (it == maps_.end()) return Mat::Zero(bb.dim, bb.dim);
  return unvec_rm(it->second * vec_rm(x), bb.dim, bb.dim);
}

AdjacencyMap identity_map(const QuantumSpace& s) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& b : s.blocks())
    maps[{b.label, b.label}] = Mat::Identity(b.dim * b.dim, b.dim * b.dim);
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

AdjacencyMap zero_map(const QuantumSpace& s) {
  return AdjacencyMap::from_block_maps(s, {});
}

AdjacencyMap compose(const AdjacencyMap& a, const AdjacencyMap& b) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& [bk, bm] : b.maps())
    for (const auto& [ak, am] : a.maps()) {
      if (ak.first != bk.second) continue;
      auto key = std::make_pair(bk.first, ak.second);
      Mat add = am * bm;
      auto it = maps.find(key);
      if (it == maps.end())
        maps[key] = add;
      else
        it->second += add;
    }
  return AdjacencyMap::from_block_maps(a.space(), std::move(maps));
}

AdjacencyMap map_add(const AdjacencyMap& a, const AdjacencyMap& b) {
  AdjacencyMap::BlockMaps maps = a.maps();
  for (const auto& [key, m] : b.maps()) {
    auto it = maps.find(key);
    if (it == maps.end())
      maps[key] = m;
    else
      it->second += m;
  }
  return AdjacencyMap::from_block_maps(a.space(), std::move(maps));
}

AdjacencyMap map_scale(Cx c, const AdjacencyMap& a) {
  AdjacencyMap::BlockMaps maps = a.maps();
  for (auto& [key, m] : maps) m *= c;
  return AdjacencyMap::from_block_maps(a.space(), std::move(maps));
}

AdjacencyMap schur_product(const AdjacencyMap& a, const AdjacencyMap& b) {
  const QuantumSpace& s = a.space();
  AdjacencyMap::BlockMaps maps;
  for (const auto& ba : s.blocks()) {
    const int n = ba.dim;
    Mat rho_inv = ba.rho_pow(-1.0);
    // images of the basis f_ij = e_ij rho^{-1}
    std::vector<AlgebraElement> af(std::size_t(n * n)), bf(std::size_t(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        AlgebraElement f;
        f.blocks[ba.label] = unit(n, i, j) * rho_inv;
        af[std::size_t(i * n + j)] = a.apply(f);
        bf[std::size_t(i * n + j)] = b.apply(f);
      }
    std::vector<AlgebraElement> sf(std::size_t(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        AlgebraElement acc;
        for (int k = 0; k < n; ++k)
          acc = add(acc, elem_product(af[std::size_t(i * n + k)], bf[std::size_t(k * n + j)]));
        sf[std::size_t(i * n + j)] = scale(1.0 / ba.weight_scale, acc);
      }
    // convert from the f basis to matrix units: e_pq = sum_j (e_pq rho)_{pj} f_pj
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        AlgebraElement img;
        for (int j = 0; j < n; ++j) {
          Cx c = ba.rho(q, j);
          if (std::abs(c) == 0.0) continue;
          img = add(img, scale(c, sf[std::size_t(p * n + j)]));
        }
        for (const auto& [out_label, m] : img.blocks) {
          const Block& bo = s.block(out_label);
          auto key = std::make_pair(ba.label, out_label);
          auto it = maps.find(key);
          if (it == maps.end())
            maps[key] = Mat::Zero(bo.dim * bo.dim, n * n);
          maps[key].col(p * n + q) = vec_rm(m);
        }
      }
  }
  // drop numerically empty blocks
  AdjacencyMap::BlockMaps pruned;
  for (auto& [key, m] : maps)
    if (m.norm() > 1e-14 * std::max(1.0, maps_norm(maps))) pruned[key] = std::move(m);
  return AdjacencyMap::from_block_maps(s, std::move(pruned));
}

TwoSidedElement flip_ts(const QuantumSpace& s, const TwoSidedElement& p) {
  TwoSidedElement out;
  for (const auto& [key, k] : p.blocks) {
    int n1 = s.block(key.first).dim, n2 = s.block(key.second).dim;
    Mat flipped = swap_legs(k, n1, n2).transpose();
    auto okey = std::make_pair(key.second, key.first);
    auto it = out.blocks.find(okey);
    if (it == out.blocks.end())
      out.blocks[okey] = flipped;
    else
      it->second += flipped;
  }
  return out;
}

AdjacencyMap kms_adjoint(const AdjacencyMap& a) {
  return AdjacencyMap::from_choi(a.space(), flip_ts(a.space(), ts_adjoint(a.choi())));
}

AdjacencyMap conj_map(const AdjacencyMap& a) {
  const QuantumSpace& s = a.space();
  AdjacencyMap::BlockMaps maps;
  for (const auto& [key, m] : a.maps()) {
    const Block& bf = s.block(key.first);
    const Block& bt = s.block(key.second);
    Mat cm(bt.dim * bt.dim, bf.dim * bf.dim);
    for (int i = 0; i < bf.dim; ++i)
      for (int j = 0; j < bf.dim; ++j) {
        Mat img = unvec_rm(m * vec_rm(unit(bf.dim, j, i)), bt.dim, bt.dim);
        cm.col(i * bf.dim + j) = vec_rm(Mat(img.adjoint()));
      }
    maps[key] = cm;
  }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

Classification classify(const AdjacencyMap& a, double tol) {
  Classification c;
  const QuantumSpace& s = a.space();
  const TwoSidedElement& p = a.choi();
  const double pnorm = std::max(1.0, ts_norm(p));

  TwoSidedElement sq = ts_product(p, p);
  c.dev_schur = ts_norm(ts_add(sq, ts_scale(-1.0, p)));
  c.schur_idempotent = c.dev_schur <= tol * pnorm;

  double dev_herm = 0.0;
  for (const auto& [key, k] : p.blocks) dev_herm += (k - k.adjoint()).squaredNorm();
  c.dev_real = std::sqrt(dev_herm);
  c.real = c.dev_real <= tol * pnorm;

  c.min_choi_eig = 0.0;
  for (const auto& [key, k] : p.blocks) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat((k + k.adjoint()) / 2.0));
    c.min_choi_eig = std::min(c.min_choi_eig, es.eigenvalues().minCoeff());
  }
  c.completely_positive = c.real && c.min_choi_eig >= -tol * pnorm;

  c.dev_kms = ts_norm(ts_add(flip_ts(s, p), ts_scale(-1.0, p)));
  c.kms_symmetric = c.dev_kms <= tol * pnorm;

  c.dev_gns = 0.0;
  for (double t : {1.0, std::sqrt(2.0)}) {
    for (const auto& b : s.blocks())
      for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) {
          AlgebraElement e = matrix_unit(s, b.label, i, j);
          AlgebraElement lhs = a.apply(modular(s, t, e));
          AlgebraElement rhs = modular(s, t, a.apply(e));
          c.dev_gns = std::max(c.dev_gns, elem_norm(add(lhs, scale(-1.0, rhs))));
        }
  }
  double map_scale_norm = std::max(1.0, maps_norm(a.maps()));
  c.gns_symmetric = c.kms_symmetric && c.dev_gns <= tol * map_scale_norm;

  AdjacencyMap loops = schur_product(a, identity_map(s));
  c.dev_loop = ts_norm(loops.choi());
  c.loop_free = c.dev_loop <= tol * pnorm;
  return c;
}

bool is_quantum_adjacency(const AdjacencyMap& a, double tol) {
  Classification c = classify(a, tol);
  return c.quantum_adjacency();
}

AlgebraElement degree(const QuantumSpace& s, const TwoSidedElement& choi) {
  AlgebraElement d;
  for (const auto& [key, k] : choi.blocks) {
    const Block& bb = s.block(key.first);
    const Block& ba = s.block(key.second);
    Mat add = ba.weight_scale * ptrace_second_weighted(k, bb.dim, ba.dim, ba.rho.transpose());
    auto it = d.blocks.find(key.first);
    if (it == d.blocks.end())
      d.blocks[key.first] = add;
    else
      it->second += add;
  }
  return d;
}

DegreeReport bounded_degree(const QuantumSpace& s, const TwoSidedElement& choi, int windows,
                            double tol) {
  DegreeReport rep;
  for (const auto& src : s.blocks()) {
    AlgebraElement step;
    for (const auto& [key, k] : choi.blocks) {
      if (key.second != src.label) continue;
      const Block& bb = s.block(key.first);
      Mat contrib =
          src.weight_scale * ptrace_second_weighted(k, bb.dim, src.dim, src.rho.transpose());
      auto it = step.blocks.find(key.first);
      if (it == step.blocks.end())
        step.blocks[key.first] = contrib;
      else
        it->second += contrib;
    }
    rep.increments.push_back(elem_sup_norm(step));
    rep.value = add(rep.value, step);
  }
  int n = int(rep.increments.size());
  rep.stabilized = n >= windows + 1;
  for (int i = std::max(0, n - windows); i < n && rep.stabilized; ++i)
    rep.stabilized = rep.increments[std::size_t(i)] < tol;
  return rep;
}

}  // namespace qgraph
