// Acceptance gate for the library: twelve end-to-end criteria, one line of
// output each, nonzero exit when any of them fails. Each criterion evaluates
// both sides of the identity it targets through independent code paths.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qgraph/cayley.hpp"

using namespace qgraph;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& msg) {
    pass = false;
    if (detail.empty()) detail = msg;
  }
  void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
};

QuantumSpace classical_space(int n) {
  std::vector<std::pair<std::string, Mat>> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({std::to_string(i), Mat::Identity(1, 1)});
  return QuantumSpace::make(blocks);
}

AdjacencyMap classical_map(const QuantumSpace& s, const Mat& a) {
  AdjacencyMap::BlockMaps maps;
  for (int x = 0; x < a.rows(); ++x)
    for (int y = 0; y < a.cols(); ++y) {
      if (std::abs(a(x, y)) == 0.0) continue;
      Mat m(1, 1);
      m(0, 0) = a(x, y);
      maps[{std::to_string(y), std::to_string(x)}] = m;
    }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

QuantumSpace random_space(Rng& rng, int max_blocks, int max_dim) {
  int nb = rng.uniform_int(1, max_blocks);
  std::vector<std::pair<std::string, Mat>> blocks;
  for (int i = 0; i < nb; ++i)
    blocks.push_back({"b" + std::to_string(i), rng.positive(rng.uniform_int(1, max_dim))});
  return QuantumSpace::make(blocks);
}

AlgebraElement random_element(const QuantumSpace& s, Rng& rng) {
  AlgebraElement x;
  for (const auto& b : s.blocks()) x.blocks[b.label] = rng.cmatrix(b.dim, b.dim);
  return x;
}

AdjacencyMap random_map(const QuantumSpace& s, Rng& rng) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& from : s.blocks())
    for (const auto& to : s.blocks())
      maps[{from.label, to.label}] = rng.cmatrix(to.dim * to.dim, from.dim * from.dim);
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

// x -> psi(x) 1, written out from the weights.
AdjacencyMap complete_graph_map(const QuantumSpace& s) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& from : s.blocks())
    for (const auto& to : s.blocks()) {
      Mat m(to.dim * to.dim, from.dim * from.dim);
      for (int i = 0; i < from.dim; ++i)
        for (int j = 0; j < from.dim; ++j) {
          Mat e = Mat::Zero(from.dim, from.dim);
          e(i, j) = 1.0;
          m.col(i * from.dim + j) = vec_rm(
              Mat(from.weight_scale * (from.rho * e).trace() * Mat::Identity(to.dim, to.dim)));
        }
      maps[{from.label, to.label}] = m;
    }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

AdjacencyMap kraus_map(const QuantumSpace& s, Rng& rng) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& from : s.blocks())
    for (const auto& to : s.blocks()) {
      Mat v = rng.cmatrix(to.dim, from.dim);
      maps[{from.label, to.label}] = kron(v, v.conjugate());
    }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

Bimodule random_bimodule(const QuantumSpace& s, Rng& rng, int max_vectors) {
  Bimodule v;
  bool nonempty = false;
  for (const auto& from : s.blocks())
    for (const auto& to : s.blocks()) {
      int k = rng.uniform_int(0, max_vectors);
      std::vector<Mat> raw;
      for (int i = 0; i < k; ++i) raw.push_back(rng.cmatrix(to.dim, from.dim));
      if (!raw.empty()) {
        v.parts[{from.label, to.label}] = std::move(raw);
        nonempty = true;
      }
    }
  if (!nonempty) return random_bimodule(s, rng, max_vectors);
  return orthonormalize(s, v);
}

// The operator x -> p * x assembled column by column on a window.
AdjacencyMap conv_map(const FusionDual& d, const QuantumSpace& s, const AlgebraElement& p) {
  AdjacencyMap::BlockMaps maps;
  for (const auto& from : s.blocks())
    for (int i = 0; i < from.dim; ++i)
      for (int j = 0; j < from.dim; ++j) {
        AlgebraElement img = convolve(d, s, p, matrix_unit(s, from.label, i, j));
        for (const auto& [to, m] : img.blocks) {
          int nt = s.block(to).dim;
          Mat& blk =
              maps.try_emplace({from.label, to}, Mat::Zero(nt * nt, from.dim * from.dim))
                  .first->second;
          blk.col(i * from.dim + j) = vec_rm(m);
        }
      }
  return AdjacencyMap::from_block_maps(s, std::move(maps));
}

double map_distance(const AdjacencyMap& a, const AdjacencyMap& b) {
  return ts_norm(ts_add(a.choi(), ts_scale(-1.0, b.choi())));
}

double elem_distance(const AlgebraElement& x, const AlgebraElement& y) {
  return elem_norm(add(x, scale(Cx(-1.0), y)));
}

double ts_min_eig(const TwoSidedElement& p) {
  double lo = 0.0;
  for (const auto& [key, m] : p.blocks) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (m + m.adjoint())));
    lo = std::min(lo, es.eigenvalues().minCoeff());
  }
  return lo;
}

// Unweighted per-pair Choi matrices, PSD for every pair iff the map is
// completely positive on the direct sum.
bool componentwise_cp(const AdjacencyMap& a, double tol) {
  for (const auto& [key, m] : a.maps()) {
    int nf = a.space().block(key.first).dim;
    int nt = a.space().block(key.second).dim;
    Mat c(nf * nt, nf * nt);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j)
        for (int k = 0; k < nt; ++k)
          for (int l = 0; l < nt; ++l) c(i * nt + k, j * nt + l) = m(k * nt + l, i * nf + j);
    if (frob(Mat(c - c.adjoint())) > tol) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (c + c.adjoint())));
    if (es.eigenvalues().minCoeff() < -tol) return false;
  }
  return true;
}

long long su2_ball_mass(int n) { return (long long)(n + 1) * (n + 2) * (2 * n + 3) / 6; }

using Clock = std::chrono::steady_clock;

// -------------------------------------------------------------------------

Outcome weight_normalization() {
  Outcome out;
  std::vector<QuantumSpace> builtins;
  for (int n = 1; n <= 4; ++n) builtins.push_back(classical_space(n));
  for (double q : {1.0, 0.5}) {
    auto d = su2_dual(q);
    builtins.push_back(dual_space(*d, {"0", "1", "2", "3"}));
  }
  builtins.push_back(make_dual_pair(s3_data()).space);
  builtins.push_back(make_dual_pair(d4_data()).space);
  builtins.push_back(make_dual_pair(cyclic_group_data(5)).space);
  for (const auto& s : builtins) {
    auto rep = check_delta_form(s);
    out.require(rep.pass, "built-in space violates the multiplication identity, deviation " +
                              std::to_string(rep.max_deviation));
  }
  Rng rng(101);
  for (int t = 0; t < 100; ++t) {
    QuantumSpace s = random_space(rng, 3, 4);
    auto rep = check_delta_form(s);
    out.require(rep.pass, "random space " + std::to_string(t) + " deviation " +
                              std::to_string(rep.max_deviation));
  }
  return out;
}

Outcome classical_graphs() {
  Outcome out;
  for (int n = 1; n <= 4 && out.pass; ++n) {
    QuantumSpace s = classical_space(n);
    long long total = 1LL << (n * n);
    for (long long mask = 0; mask < total; ++mask) {
      Mat a = Mat::Zero(n, n);
      for (int e = 0; e < n * n; ++e)
        if (mask & (1LL << e)) a(e / n, e % n) = 1.0;
      AdjacencyMap m = classical_map(s, a);
      if (!is_quantum_adjacency(m)) {
        out.fail("0/1 matrix rejected, n=" + std::to_string(n) + " mask=" + std::to_string(mask));
        break;
      }
      Bimodule v = bimodule_from_adjacency(m);
      AdjacencyMap back = adjacency_from_bimodule(s, v);
      if (map_distance(back, m) > 1e-9) {
        out.fail("round trip moved a 0/1 matrix, n=" + std::to_string(n) +
                 " mask=" + std::to_string(mask));
        break;
      }
    }
  }
  Rng rng(202);
  for (int t = 0; t < 200 && out.pass; ++t) {
    int n = rng.uniform_int(1, 4);
    Mat a = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = double(rng.uniform_int(0, 1));
    bool zero_one = true;
    if (t % 2 == 1) {
      int k = rng.uniform_int(1, 3);
      for (int r = 0; r < k; ++r) {
        double v = 0.0;
        while (std::abs(v) < 1e-3 || std::abs(v - 1.0) < 1e-3) v = rng.uniform(-2.0, 2.0);
        a(rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1)) = v;
      }
      zero_one = false;
    }
    QuantumSpace s = classical_space(n);
    bool got = is_quantum_adjacency(classical_map(s, a));
    out.require(got == zero_one, "random matrix " + std::to_string(t) +
                                     ": expected " + std::to_string(zero_one));
  }
  return out;
}

Outcome choi_equivalences() {
  Outcome out;
  Rng rng(303);
  for (int t = 0; t < 100 && out.pass; ++t) {
    QuantumSpace s = random_space(rng, 3, 3);
    AdjacencyMap a = zero_map(s);
    switch (t % 5) {
      case 0: a = random_map(s, rng); break;
      case 1: a = complete_graph_map(s); break;
      case 2: a = kraus_map(s, rng); break;
      case 3: a = adjacency_from_bimodule(s, random_bimodule(s, rng, 2)); break;
      case 4: {
        AdjacencyMap r = random_map(s, rng);
        TwoSidedElement sym = ts_scale(0.5, ts_add(r.choi(), flip_ts(s, r.choi())));
        a = AdjacencyMap::from_choi(s, std::move(sym));
        break;
      }
    }
    const TwoSidedElement& p = a.choi();
    double scale_tol = 1e-7 * std::max(1.0, ts_norm(p));

    bool lhs_idem = ts_norm(ts_add(ts_product(p, p), ts_scale(-1.0, p))) < scale_tol;
    bool rhs_idem = map_distance(schur_product(a, a), a) < scale_tol;
    out.require(lhs_idem == rhs_idem, "idempotent mismatch at map " + std::to_string(t));

    bool lhs_sa = ts_norm(ts_add(ts_adjoint(p), ts_scale(-1.0, p))) < scale_tol;
    double dev_real = 0.0;
    for (int r = 0; r < 8; ++r) {
      AlgebraElement x = random_element(s, rng);
      dev_real = std::max(dev_real, elem_distance(a.apply(adjoint_element(x)),
                                                  adjoint_element(a.apply(x))));
    }
    bool rhs_sa = dev_real < scale_tol;
    out.require(lhs_sa == rhs_sa, "star-preservation mismatch at map " + std::to_string(t));

    bool lhs_pos = ts_is_hermitian(p, scale_tol) && ts_min_eig(p) > -scale_tol;
    bool rhs_pos = componentwise_cp(a, scale_tol);
    out.require(lhs_pos == rhs_pos, "positivity mismatch at map " + std::to_string(t));

    bool lhs_flip = ts_norm(ts_add(flip_ts(s, p), ts_scale(-1.0, p))) < scale_tol;
    bool rhs_flip = map_distance(kms_adjoint(a), conj_map(a)) < scale_tol;
    out.require(lhs_flip == rhs_flip, "flip mismatch at map " + std::to_string(t));
  }
  return out;
}

Outcome finite_dual_pair() {
  Outcome out;
  auto pr = make_dual_pair(s3_data());
  Rng rng(404);
  for (int t = 0; t < 20; ++t) {
    AlgebraElement x = random_element(pr.space, rng);
    double lhs = group_l2_norm(pr, fourier(pr, x));
    double rhs = dual_l2_norm(pr, x);
    out.require(std::abs(lhs - rhs) < 1e-9 * std::max(1.0, rhs), "transform is not isometric");
  }
  for (int t = 0; t < 10; ++t) {
    AlgebraElement p = random_element(pr.space, rng);
    AlgebraElement x = random_element(pr.space, rng);
    Vec lhs = fourier(pr, convolve(*pr.dual, pr.space, p, x));
    Vec rhs = fourier(pr, x).cwiseProduct(fourier(pr, p));
    out.require((lhs - rhs).norm() < 1e-9 * std::max(1.0, rhs.norm()),
                "convolution does not transform to the reversed pointwise product");
  }
  for (int t = 0; t < 50 && out.pass; ++t) {
    AlgebraElement e;
    for (const auto& b : pr.space.blocks()) {
      switch (t % 3) {
        case 0:
          e.blocks[b.label] = double(rng.uniform_int(0, 1)) * Mat::Identity(b.dim, b.dim);
          break;
        case 1:
          e.blocks[b.label] = rng.projection(b.dim, rng.uniform_int(0, b.dim));
          break;
        case 2: {
          Mat s = Mat::Identity(b.dim, b.dim) + 0.4 * rng.cmatrix(b.dim, b.dim);
          Mat d = Mat::Zero(b.dim, b.dim);
          for (int i = 0; i < b.dim; ++i) d(i, i) = double(rng.uniform_int(0, 1));
          e.blocks[b.label] = s * d * s.inverse();
          break;
        }
      }
    }
    bool hermitian = elem_distance(e, adjoint_element(e)) < 1e-9;
    bool projection = hermitian && elem_distance(elem_product(e, e), e) < 1e-9;
    Classification cls = classify(conv_map(*pr.dual, pr.space, e));
    out.require(cls.schur_idempotent, "idempotent did not give a Schur idempotent, t=" +
                                          std::to_string(t));
    out.require(cls.completely_positive == projection,
                "complete positivity does not match projection-ness, t=" + std::to_string(t));
    if (hermitian) {
      SymmetryReport rep = symmetry_report(pr, e);
      out.require(cls.kms_symmetric == rep.kms,
                  "KMS symmetry disagrees with the unitary antipode, t=" + std::to_string(t));
      out.require(cls.gns_symmetric == rep.gns,
                  "GNS symmetry disagrees with the antipode, t=" + std::to_string(t));
    }
  }
  return out;
}

Outcome projection_weight() {
  Outcome out;
  Rng rng(505);
  for (int t = 0; t < 100; ++t) {
    QuantumSpace s = random_space(rng, 3, 4);
    AlgebraElement p;
    int total_rank = 0;
    for (const auto& b : s.blocks()) {
      int r = rng.uniform_int(0, b.dim);
      total_rank += r;
      p.blocks[b.label] = rng.projection(b.dim, r);
    }
    if (total_rank == 0) {
      --t;
      continue;
    }
    Cx w = weight(s, p);
    out.require(w.real() >= 1.0 - 1e-9 && std::abs(w.imag()) < 1e-9,
                "projection of weight " + std::to_string(w.real()));
  }
  return out;
}

Outcome power_support() {
  Outcome out;
  Rng rng(606);
  for (int t = 0; t < 50; ++t) {
    QuantumSpace s = random_space(rng, 2, 3);
    Bimodule v = random_bimodule(s, rng, 2);
    AdjacencyMap a = adjacency_from_bimodule(s, v);
    AdjacencyMap a2 = compose(a, a);
    TwoSidedElement lhs = projection_from_bimodule(s, bimodule_from_choi_support(s, a2.choi()));
    TwoSidedElement rhs = projection_from_bimodule(s, bimodule_power(s, v, 2));
    double dist = ts_norm(ts_add(lhs, ts_scale(-1.0, rhs)));
    out.require(dist < 1e-8, "support of the square drifted by " + std::to_string(dist) +
                                 " at graph " + std::to_string(t));
  }
  return out;
}

Outcome su2_growth() {
  Outcome out;
  auto d1 = su2_dual(1.0);
  CentralElement p{{"1", 1.0}};
  GrowthSeries g = growth(*d1, p, 20);
  for (int n = 0; n <= 20; ++n) {
    long long expect = su2_ball_mass(n);
    out.require(std::llround(g.a[n]) == expect && std::abs(g.a[n] - double(expect)) < 1e-6,
                "ball mass at n=" + std::to_string(n) + " is " + std::to_string(g.a[n]));
  }
  out.require(growth_verdict(g.a) == GrowthVerdict::Subexponential,
              "undeformed growth not read as subexponential");
  CentralElement mu{{"0", 1.0}, {"1", 1.0}};
  out.require(folner_check(*d1, mu, 0.1, 32).found, "no almost-invariant ball found");

  auto dq = su2_dual(0.5);
  GrowthSeries gq = growth(*dq, p, 20);
  for (int n = 0; n <= 20; ++n) {
    double expect = 0.0;
    for (int j = 0; j <= n; ++j) expect += std::pow(q_int(j + 1, 0.5), 2.0);
    out.require(std::abs(gq.a[n] - expect) < 1e-6 * expect,
                "deformed ball mass at n=" + std::to_string(n));
  }
  out.require(growth_verdict(gq.a) == GrowthVerdict::Exponential,
              "deformed growth not read as exponential");
  return out;
}

Outcome non_generating_projection() {
  Outcome out;
  auto d = su2_dual(1.0);
  std::vector<Label> labels;
  for (int n = 0; n <= 8; ++n) labels.push_back(std::to_string(n));
  QuantumSpace w = dual_space(*d, labels);
  AlgebraElement p;
  p.blocks["1"] = Mat::Zero(2, 2);
  p.blocks["1"](1, 1) = 1.0;
  AlgebraElement x = p;
  for (int n = 1; n <= 8; ++n) {
    if (n > 1) x = convolve(*d, w, p, x);
    double top = 0.0;
    for (const auto& [label, m] : x.blocks) top = std::max(top, frob(m));
    for (const auto& [label, m] : x.blocks)
      out.require(label == std::to_string(n) || frob(m) < 1e-9 * top,
                  "power " + std::to_string(n) + " leaks into block " + label);
    Mat blk = block_or_zero(w, x, std::to_string(n));
    Eigen::JacobiSVD<Mat> svd(blk);
    out.require(svd.singularValues()(0) > 0.0 &&
                    (blk.rows() < 2 || svd.singularValues()(1) < 1e-8 * svd.singularValues()(0)),
                "power " + std::to_string(n) + " is not rank one");
  }
  for (int h = 1; h <= 8; ++h)
    out.require(!is_generating_matrix(*d, p, h).generating,
                "matrix-unit projection certified generating at horizon " + std::to_string(h));
  return out;
}

Outcome free_unitary_support() {
  Outcome out;
  auto d = ufplus_dual(2);
  QuantumSpace w = dual_space(*d, {"e", "u", "v"});
  AlgebraElement p1 = central_embed(w, CentralElement{{"u", 1.0}});
  AlgebraElement p2 = central_embed(w, CentralElement{{"v", 1.0}});
  out.require(central_product(CentralElement{{"u", 1.0}}, CentralElement{{"v", 1.0}}).empty(),
              "indicators of distinct words are not orthogonal");
  out.require(elem_norm(schur_of_convolutions(p1, p2)) == 0.0,
              "Schur product of disjoint convolutions is not zero");

  CentralElement c{{"u", 1.0}};
  CentralElement power = c;
  for (int n = 1; n <= 10; ++n) {
    if (n > 1) power = central_convolve(*d, c, power);
    SupportSet supp = central_support(power);
    out.require(supp.size() == 1 && *supp.begin() == std::string(std::size_t(n), 'u'),
                "tensor power " + std::to_string(n) + " has support size " +
                    std::to_string(supp.size()));
  }

  Rng rng(707);
  auto random_word = [&rng]() {
    int len = rng.uniform_int(0, 4);
    std::string s;
    for (int i = 0; i < len; ++i) s.push_back(rng.uniform_int(0, 1) ? 'u' : 'v');
    return s.empty() ? std::string("e") : s;
  };
  for (int t = 0; t < 500 && out.pass; ++t) {
    Label a = random_word(), b = random_word(), c3 = random_word();
    FusionMultiset lhs, rhs;
    for (const auto& [m, k] : d->fuse(a, b))
      for (const auto& [x, l] : d->fuse(m, c3)) lhs[x] += k * l;
    for (const auto& [m, k] : d->fuse(b, c3))
      for (const auto& [x, l] : d->fuse(a, m)) rhs[x] += k * l;
    out.require(lhs == rhs, "fusion not associative on (" + a + "," + b + "," + c3 + ")");
  }
  return out;
}

Outcome cayley_adjacency_symmetry() {
  Outcome out;
  std::vector<Label> window;
  for (int n = 0; n <= 6; ++n) window.push_back(std::to_string(n));
  CentralElement p{{"1", 1.0}};
  for (double q : {1.0, 0.5}) {
    auto d = su2_dual(q);
    AdjacencyMap a = cayley_adjacency(*d, p, window);
    Classification cls = classify(a, 1e-8);
    std::string tag = " at q=" + std::to_string(q);
    out.require(cls.schur_idempotent, "not Schur idempotent" + tag);
    out.require(cls.kms_symmetric, "not KMS symmetric" + tag);
    out.require(cls.loop_free, "has loops" + tag);
    double h = h_r_central(*d, p).real();
    AlgebraElement deg = degree(a.space(), a.choi());
    for (int n = 0; n <= 5; ++n) {
      Mat blk = block_or_zero(a.space(), deg, std::to_string(n));
      double dev = frob(Mat(blk - h * Mat::Identity(blk.rows(), blk.cols())));
      out.require(dev < 1e-8 * std::max(1.0, h),
                  "degree off regular by " + std::to_string(dev) + tag);
    }
  }
  return out;
}

Outcome bilipschitz_constants() {
  Outcome out;
  auto z = free_abelian_dual(1);
  CentralElement za{{"1", 1.0}, {"-1", 1.0}};
  CentralElement zb{{"1", 1.0}, {"-1", 1.0}, {"2", 1.0}, {"-2", 1.0}};
  BilipschitzResult rz = bilipschitz_constant(*z, za, zb, 12);
  out.require(rz.found && rz.m == 2,
              "integer generating sets gave m=" + std::to_string(rz.m));

  auto d = su2_dual(1.0);
  CentralElement pa{{"1", 1.0}};
  CentralElement pb{{"1", 1.0}, {"2", 1.0}};
  BilipschitzResult rs = bilipschitz_constant(*d, pa, pb, 12);
  out.require(rs.found && rs.m == 2, "spin generating sets gave m=" + std::to_string(rs.m));
  return out;
}

Outcome amenability_heuristics() {
  Outcome out;
  auto z = free_abelian_dual(1);
  CentralElement muz{{"0", 1.0}, {"1", 1.0}, {"-1", 1.0}};
  out.require(folner_check(*z, muz, 0.1, 12).found, "no almost-invariant set for the line");

  auto z2 = free_abelian_dual(2);
  CentralElement muz2{{"0,0", 1.0}, {"1,0", 1.0}, {"-1,0", 1.0}, {"0,1", 1.0}, {"0,-1", 1.0}};
  out.require(folner_check(*z2, muz2, 0.1, 22).found, "no almost-invariant set for the plane");

  auto d = su2_dual(1.0);
  CentralElement mus{{"0", 1.0}, {"1", 1.0}};
  out.require(folner_check(*d, mus, 0.1, 32).found, "no almost-invariant set for the spins");

  auto f = free_group_dual(2);
  CentralElement muf{{"e", 1.0}, {"a", 1.0}, {"A", 1.0}, {"b", 1.0}, {"B", 1.0}};
  out.require(!folner_check(*f, muf, 0.1, 12).found,
              "free group produced an almost-invariant set");

  CentralElement pf{{"a", 1.0}, {"A", 1.0}, {"b", 1.0}, {"B", 1.0}};
  WalkReport wf = central_walk_operator(*f, pf, 40);
  out.require(std::abs(wf.ratio - 0.866) < 0.01,
              "free walk ratio " + std::to_string(wf.ratio));

  CentralElement pz{{"1", 1.0}, {"-1", 1.0}};
  WalkReport wz = central_walk_operator(*z, pz, 200);
  out.require(std::abs(wz.ratio - 1.0) < 0.02, "line walk ratio " + std::to_string(wz.ratio));
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;  // 0 = unbounded
  };
  const std::vector<Criterion> criteria = {
      {"weight-normalization", weight_normalization, 5.0},
      {"classical-graphs", classical_graphs, 30.0},
      {"choi-equivalences", choi_equivalences, 30.0},
      {"finite-dual-pair", finite_dual_pair, 30.0},
      {"projection-weight", projection_weight, 0.0},
      {"power-support", power_support, 0.0},
      {"su2-growth", su2_growth, 10.0},
      {"non-generating-projection", non_generating_projection, 0.0},
      {"free-unitary-support", free_unitary_support, 0.0},
      {"cayley-adjacency-symmetry", cayley_adjacency_symmetry, 0.0},
      {"bilipschitz-constants", bilipschitz_constants, 0.0},
      {"amenability-heuristics", amenability_heuristics, 0.0},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs > c.budget_s) {
      out.pass = false;
      if (out.detail.empty())
        out.detail = "exceeded " + std::to_string(c.budget_s) + "s budget";
    }
    std::printf("%2zu %-27s %s  (%.2fs)\n", i + 1, c.name, out.pass ? "PASS" : "FAIL", secs);
    if (!out.pass) {
      std::printf("   %s\n", out.detail.c_str());
      ++failures;
    }
  }
  std::printf("acceptance: %zu/%zu passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
