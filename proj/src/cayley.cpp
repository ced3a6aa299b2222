#include "qgraph/cayley.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgraph {

namespace {

double central_norm(const CentralElement& x) {
  double s = 0.0;
  for (const auto& [l, c] : x) s += std::norm(c);
  return std::sqrt(s);
}

// Orthonormal column collector; append() extends the basis by the components
// of the new columns orthogonal to it.
struct SpanBasis {
  Mat basis;  // dim x rank, orthonormal columns

  explicit SpanBasis(int dim) : basis(Mat::Zero(dim, 0)) {}

  void append(const Mat& cols, double tol = 1e-9) {
    for (int j = 0; j < cols.cols(); ++j) {
      Vec v = cols.col(j);
      double scale = v.norm();
      if (scale < 1e-300) continue;
      v -= basis * (basis.adjoint() * v);
      v -= basis * (basis.adjoint() * v);
      if (v.norm() > tol * scale) {
        basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
        basis.col(basis.cols() - 1) = v / v.norm();
      }
    }
  }

  int rank() const { return static_cast<int>(basis.cols()); }
};

// Range of a general matrix block, as columns of an isometry.
Mat range_vectors(const Mat& m, double rel_tol = 1e-10) {
  if (m.norm() < 1e-300) return Mat::Zero(m.rows(), 0);
  return psd_support_vectors(m * m.adjoint(), rel_tol);
}

struct Regression {
  double slope = 0.0;
  double r2 = 1.0;
};

Regression log_fit(const std::vector<double>& a, int lo, int hi) {
  int n = hi - lo + 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (int i = lo; i <= hi; ++i) {
    double x = i, y = std::log(a[static_cast<std::size_t>(i)]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  Regression r;
  double den = n * sxx - sx * sx;
  r.slope = (n * sxy - sx * sy) / den;
  double sst = syy - sy * sy / n;
  if (sst > 1e-30) {
    double b = (sy - r.slope * sx) / n;
    double ssr = 0;
    for (int i = lo; i <= hi; ++i) {
      double y = std::log(a[static_cast<std::size_t>(i)]);
      double e = y - (r.slope * i + b);
      ssr += e * e;
    }
    r.r2 = 1.0 - ssr / sst;
  }
  return r;
}

double ball_mass_q(const FusionDual& d, const SupportSet& s) {
  double m = 0.0;
  for (const auto& l : s) {
    double dq = d.dim_q(l);
    m += dq * dq;
  }
  return m;
}

double ball_mass_classical(const FusionDual& d, const SupportSet& s) {
  double m = 0.0;
  for (const auto& l : s) {
    double n = static_cast<double>(d.dim(l));
    m += n * n;
  }
  return m;
}

CentralElement delta_at(const Label& l) { return CentralElement{{l, Cx(1.0, 0.0)}}; }

}  // namespace

GeneratorReport validate_generator(const FusionDual& d, const CentralElement& p, double tol) {
  GeneratorReport r;
  r.projection = true;
  for (const auto& [l, c] : p) {
    if (std::abs(c.imag()) > tol || std::abs(c * c - c) > tol) {
      r.projection = false;
      std::ostringstream os;
      os << "coefficient at '" << l << "' is not 0 or 1";
      r.violations.push_back(os.str());
    }
  }

  CentralElement flipped = central_antipode(d, p);
  double dev = central_norm(central_add(flipped, central_scale(Cx(-1.0, 0.0), p)));
  r.antipode_invariant = dev <= tol * std::max(1.0, central_norm(p));
  if (!r.antipode_invariant)
    r.violations.push_back("support is not invariant under conjugation");

  auto it = p.find(d.trivial());
  r.no_loop = (it == p.end()) || std::abs(it->second) <= tol;
  if (!r.no_loop) r.violations.push_back("nonzero coefficient at the trivial label");

  r.degree = h_r_central(d, p).real();
  return r;
}

GeneratorReport validate_generator_matrix(const FusionDual& d, const QuantumSpace& window,
                                          const AlgebraElement& p, double tol) {
  GeneratorReport r;
  double scale = std::max(1.0, elem_norm(p));
  AlgebraElement p2 = elem_product(p, p);
  AlgebraElement ps = adjoint_element(p);
  double idem = 0.0, herm = 0.0;
  for (const auto& b : window.blocks()) {
    Mat m = Mat::Zero(b.dim, b.dim);
    if (auto it = p.blocks.find(b.label); it != p.blocks.end()) m = it->second;
    Mat mm = Mat::Zero(b.dim, b.dim);
    if (auto it = p2.blocks.find(b.label); it != p2.blocks.end()) mm = it->second;
    Mat ms = Mat::Zero(b.dim, b.dim);
    if (auto it = ps.blocks.find(b.label); it != ps.blocks.end()) ms = it->second;
    idem = std::max(idem, (mm - m).norm());
    herm = std::max(herm, (ms - m).norm());
  }
  r.projection = idem <= tol * scale && herm <= tol * scale;
  if (!r.projection) r.violations.push_back("element is not a self-adjoint idempotent");

  SupportSet supp;
  for (const auto& [l, m] : p.blocks)
    if (m.norm() > tol * scale) supp.insert(l);
  r.antipode_invariant = true;
  for (const auto& l : supp)
    if (!supp.count(d.conjugate(l))) r.antipode_invariant = false;
  if (!r.antipode_invariant)
    r.violations.push_back("support is not invariant under conjugation");

  r.no_loop = !supp.count(d.trivial());
  if (!r.no_loop) r.violations.push_back("nonzero block at the trivial label");

  r.degree = h_r(window, p).real();
  return r;
}

GeneratingReport is_generating(const FusionDual& d, const CentralElement& p, int horizon,
                               std::size_t max_labels) {
  GeneratingReport rep;
  rep.horizon = horizon;
  SupportSet supp = central_support(p);
  if (supp.empty() || horizon < 0) return rep;

  std::vector<SupportSet> bs = balls(d, supp, horizon, max_labels);
  int budget = static_cast<int>(bs.back().size());
  std::vector<Label> probe = d.enumerate(budget);

  for (int n = 0; n <= horizon; ++n) {
    bool all = true;
    for (const auto& l : probe)
      if (!bs[static_cast<std::size_t>(n)].count(l)) {
        all = false;
        break;
      }
    if (all) {
      rep.generating = true;
      rep.witness = n;
      return rep;
    }
  }
  return rep;
}

GeneratingReport is_generating_matrix(const FusionDual& d, const AlgebraElement& p,
                                      int horizon) {
  GeneratingReport rep;
  rep.horizon = horizon;

  SupportSet supp;
  for (const auto& [l, m] : p.blocks)
    if (m.norm() > 1e-12) supp.insert(l);
  if (supp.empty() || horizon < 1) return rep;

  std::vector<Label> window;
  {
    SupportSet b = ball(d, supp, horizon);
    window.assign(b.begin(), b.end());
  }
  QuantumSpace ws = dual_space(d, window);

  std::map<Label, SpanBasis> joins;
  for (const auto& b : ws.blocks()) joins.emplace(b.label, SpanBasis(b.dim));

  auto saturated = [&]() {
    for (const auto& b : ws.blocks())
      if (joins.at(b.label).rank() < b.dim) return false;
    return true;
  };

  AlgebraElement power = p;
  for (int k = 1; k <= horizon; ++k) {
    if (k > 1) power = convolve(d, ws, p, power);
    for (const auto& [l, m] : power.blocks) joins.at(l).append(range_vectors(m));
    if (saturated()) {
      rep.generating = true;
      rep.witness = k;
      return rep;
    }
  }
  return rep;
}

GrowthSeries growth(const FusionDual& d, const CentralElement& p, int horizon,
                    std::size_t max_labels) {
  SupportSet supp = central_support(p);
  GrowthSeries g;
  g.balls = balls(d, supp, horizon, max_labels);
  g.a.reserve(g.balls.size());
  g.a_classical.reserve(g.balls.size());
  for (const auto& b : g.balls) {
    g.a.push_back(ball_mass_q(d, b));
    g.a_classical.push_back(ball_mass_classical(d, b));
  }
  return g;
}

GrowthVerdict growth_verdict(const std::vector<double>& a) {
  int h = static_cast<int>(a.size()) - 1;
  if (h < 6) return GrowthVerdict::Inconclusive;
  for (double v : a)
    if (!(v > 0.0)) return GrowthVerdict::Inconclusive;

  int late_lo = (h + 1) / 2, late_hi = h;
  int early_lo = (h + 3) / 4, early_hi = (3 * h + 3) / 4;
  Regression late = log_fit(a, late_lo, late_hi);
  Regression early = log_fit(a, early_lo, early_hi);

  if (late.slope < 0.01) return GrowthVerdict::Subexponential;
  if (late.slope > 0.1 && late.r2 > 0.99 && late.slope >= 0.9 * early.slope)
    return GrowthVerdict::Exponential;
  if (late.slope > 0.1 && late.slope < 0.8 * early.slope)
    return GrowthVerdict::Subexponential;
  return GrowthVerdict::Inconclusive;
}

const char* to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::Subexponential: return "subexponential";
    case GrowthVerdict::Exponential: return "exponential";
    default: return "inconclusive";
  }
}

FolnerResult folner_check(const FusionDual& d, const CentralElement& mu, double eps,
                          int horizon, std::size_t max_labels) {
  SupportSet supp = central_support(mu);
  if (!supp.count(d.trivial()))
    throw std::invalid_argument("folner_check: support must contain the trivial label");
  for (const auto& l : supp)
    if (!supp.count(d.conjugate(l)))
      throw std::invalid_argument("folner_check: support must be closed under conjugation");

  FolnerResult res;
  double best = -1.0;
  SupportSet cur = supp;  // ball of radius 1, since the support contains the trivial label
  SupportSet frontier = cur;
  for (int k = 1; k <= horizon; ++k) {
    // fusing the newest shell is enough: older labels only reproduce the ball
    SupportSet next = fuse_support(d, frontier, supp);
    next.insert(cur.begin(), cur.end());
    if (next.size() > max_labels) {
      std::ostringstream os;
      os << "folner_check: ball of radius " << (k + 1) << " exceeds " << max_labels
         << " labels";
      throw std::runtime_error(os.str());
    }
    double inner = ball_mass_classical(d, cur);
    double outer = ball_mass_classical(d, next);
    double ratio = outer / inner;
    if (best < 0.0 || ratio < best) {
      best = ratio;
      res.radius = k;
      res.ratio = ratio;
    }
    if (ratio <= 1.0 + eps) {
      res.found = true;
      res.radius = k;
      res.ratio = ratio;
      return res;
    }
    frontier.clear();
    for (const auto& l : next)
      if (!cur.count(l)) frontier.insert(l);
    cur = std::move(next);
  }
  return res;
}

BilipschitzResult bilipschitz_constant(const FusionDual& d, const CentralElement& p1,
                                       const CentralElement& p2, int horizon,
                                       std::size_t max_labels) {
  SupportSet s1 = central_support(p1);
  SupportSet s2 = central_support(p2);
  s1.erase(d.trivial());
  s2.erase(d.trivial());

  auto cover_radius = [&](const SupportSet& target, const SupportSet& gens) -> int {
    std::vector<SupportSet> bs = balls(d, gens, horizon, max_labels);
    for (int k = 0; k <= horizon; ++k) {
      bool all = true;
      for (const auto& l : target)
        if (!bs[static_cast<std::size_t>(k)].count(l)) {
          all = false;
          break;
        }
      if (all) return k;
    }
    return -1;
  };

  BilipschitzResult r;
  int m1 = cover_radius(s1, s2);
  int m2 = cover_radius(s2, s1);
  if (m1 >= 0 && m2 >= 0) {
    r.found = true;
    r.m = std::max(m1, m2);
  }
  return r;
}

BilipschitzResult bilipschitz_matrix(const FusionDual& d, const AlgebraElement& p1,
                                     const AlgebraElement& p2, int horizon) {
  SupportSet supp;
  for (const auto* p : {&p1, &p2})
    for (const auto& [l, m] : p->blocks)
      if (m.norm() > 1e-12) supp.insert(l);

  BilipschitzResult r;
  if (supp.empty() || horizon < 1) return r;
  std::vector<Label> window;
  {
    SupportSet b = ball(d, supp, horizon);
    window.assign(b.begin(), b.end());
  }
  QuantumSpace ws = dual_space(d, window);

  // Least m with range(x) inside the accumulated ranges of the powers of y.
  auto dominated_at = [&](const AlgebraElement& x, const AlgebraElement& y) -> int {
    std::map<Label, SpanBasis> joins;
    for (const auto& b : ws.blocks()) joins.emplace(b.label, SpanBasis(b.dim));
    auto covered = [&]() {
      for (const auto& [l, m] : x.blocks) {
        Mat v = range_vectors(m);
        const Mat& basis = joins.at(l).basis;
        for (int j = 0; j < v.cols(); ++j) {
          Vec res = v.col(j) - basis * (basis.adjoint() * v.col(j));
          if (res.norm() > 1e-8) return false;
        }
      }
      return true;
    };
    AlgebraElement power = y;
    for (int m = 1; m <= horizon; ++m) {
      if (m > 1) power = convolve(d, ws, y, power);
      for (const auto& [l, mat] : power.blocks) joins.at(l).append(range_vectors(mat));
      if (covered()) return m;
    }
    return -1;
  };

  int m1 = dominated_at(p1, p2);
  int m2 = dominated_at(p2, p1);
  if (m1 >= 0 && m2 >= 0) {
    r.found = true;
    r.m = std::max(m1, m2);
  }
  return r;
}

namespace {

double spectral_radius_of(const Mat& w) {
  Eigen::ComplexEigenSolver<Mat> es(w, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

WalkReport dense_walk(const FusionDual& d, const CentralElement& p, const SupportSet& bset,
                      double degree) {
  std::vector<Label> labels(bset.begin(), bset.end());
  std::map<Label, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i)
    index[labels[i]] = static_cast<int>(i);

  int n = static_cast<int>(labels.size());
  Mat w = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    CentralElement img = central_convolve(d, p, delta_at(labels[static_cast<std::size_t>(j)]));
    for (const auto& [u, c] : img) {
      auto it = index.find(u);
      if (it != index.end()) w(it->second, j) = c;
    }
  }

  WalkReport rep;
  rep.method = "dense";
  rep.states = n;
  rep.degree = degree;
  rep.spectral_radius = spectral_radius_of(w);
  rep.ratio = rep.spectral_radius / degree;
  return rep;
}

WalkReport radial_walk(const FusionDual& d, const CentralElement& p, int horizon,
                       double degree) {
  if (!d.word_length(d.trivial()))
    throw std::invalid_argument(
        "central_walk_operator: ball too large for the dense matrix and the dual "
        "has no word-length data for radial lumping");

  SupportSet supp = central_support(p);
  long long band = 0;
  for (const auto& l : supp) {
    auto wl = d.word_length(l);
    if (!wl)
      throw std::invalid_argument("central_walk_operator: generator without word length");
    band = std::max(band, *wl);
  }
  if (band <= 0)
    throw std::invalid_argument("central_walk_operator: support has no length");

  int check_depth = std::min<int>(4, horizon - 1);
  if (check_depth < 2) check_depth = 2;
  int shell_max = check_depth + static_cast<int>(band);
  std::vector<SupportSet> bs = balls(d, supp, shell_max, 5000000);
  std::vector<std::vector<Label>> shells(static_cast<std::size_t>(shell_max) + 1);
  for (int k = 0; k <= shell_max; ++k)
    for (const auto& l : bs[static_cast<std::size_t>(k)]) {
      auto wl = d.word_length(l);
      if (!wl || *wl != k) {
        if (k == 0 || !bs[static_cast<std::size_t>(k) - 1].count(l))
          throw std::invalid_argument(
              "central_walk_operator: ball shells disagree with word length; "
              "cannot lump radially");
      }
      if (k == 0 || !bs[static_cast<std::size_t>(k) - 1].count(l))
        shells[static_cast<std::size_t>(k)].push_back(l);
    }

  // Incoming mass per shell pair, verified constant across each shell.
  int rows = check_depth;
  std::vector<std::map<int, double>> row_mass(static_cast<std::size_t>(rows) + 1);
  std::vector<bool> row_seen(static_cast<std::size_t>(rows) + 1, false);
  std::map<Label, std::map<int, double>> incoming;
  for (int k = 0; k <= shell_max; ++k)
    for (const auto& w : shells[static_cast<std::size_t>(k)]) {
      CentralElement img = central_convolve(d, p, delta_at(w));
      for (const auto& [u, c] : img) {
        auto wl = d.word_length(u);
        if (wl && *wl <= rows) {
          if (std::abs(c.imag()) > 1e-9)
            throw std::invalid_argument("central_walk_operator: complex transition mass");
          incoming[u][k] += c.real();
        }
      }
    }
  for (int j = 0; j <= rows; ++j) {
    for (const auto& u : shells[static_cast<std::size_t>(j)]) {
      std::map<int, double> r;
      if (auto it = incoming.find(u); it != incoming.end()) r = it->second;
      if (!row_seen[static_cast<std::size_t>(j)]) {
        row_mass[static_cast<std::size_t>(j)] = r;
        row_seen[static_cast<std::size_t>(j)] = true;
      } else {
        const auto& ref = row_mass[static_cast<std::size_t>(j)];
        bool same = r.size() == ref.size();
        if (same)
          for (const auto& [k, v] : r) {
            auto it = ref.find(k);
            if (it == ref.end() || std::abs(it->second - v) > 1e-9 * std::max(1.0, v)) {
              same = false;
              break;
            }
          }
        if (!same)
          throw std::invalid_argument(
              "central_walk_operator: walk is not radially homogeneous");
      }
    }
  }

  // The band pattern must have stabilized before the last verified row.
  auto pattern = [&](int j) {
    std::map<int, double> out;
    for (const auto& [k, v] : row_mass[static_cast<std::size_t>(j)]) out[k - j] = v;
    return out;
  };
  auto same_pattern = [](const std::map<int, double>& x, const std::map<int, double>& y) {
    if (x.size() != y.size()) return false;
    for (const auto& [k, v] : x) {
      auto it = y.find(k);
      if (it == y.end() || std::abs(it->second - v) > 1e-9 * std::max(1.0, std::abs(v)))
        return false;
    }
    return true;
  };
  if (rows >= 2 && !same_pattern(pattern(rows), pattern(rows - 1)))
    throw std::invalid_argument(
        "central_walk_operator: transition pattern still changing at the check depth");

  int n = horizon + 1;
  Mat w = Mat::Zero(n, n);
  std::map<int, double> tail = pattern(rows);
  for (int j = 0; j < n; ++j) {
    if (j <= rows) {
      for (const auto& [k, v] : row_mass[static_cast<std::size_t>(j)])
        if (k < n) w(j, k) = v;
    } else {
      for (const auto& [dlt, v] : tail) {
        int k = j + dlt;
        if (k >= 0 && k < n) w(j, k) = v;
      }
    }
  }

  WalkReport rep;
  rep.method = "radial";
  rep.states = n;
  rep.degree = degree;
  rep.spectral_radius = spectral_radius_of(w);
  rep.ratio = rep.spectral_radius / degree;
  return rep;
}

}  // namespace

WalkReport central_walk_operator(const FusionDual& d, const CentralElement& p, int horizon,
                                 int dense_cap) {
  if (horizon < 1) throw std::invalid_argument("central_walk_operator: horizon must be >= 1");
  SupportSet supp = central_support(p);
  if (supp.empty()) throw std::invalid_argument("central_walk_operator: empty support");
  double degree = h_r_central(d, p).real();

  bool dense_ok = true;
  SupportSet bset;
  try {
    bset = ball(d, supp, horizon, static_cast<std::size_t>(dense_cap));
  } catch (const NoProviderError&) {
    throw;
  } catch (const std::runtime_error&) {
    dense_ok = false;
  }
  if (dense_ok) return dense_walk(d, p, bset, degree);
  return radial_walk(d, p, horizon, degree);
}

AdjacencyMap cayley_adjacency(const FusionDual& d, const CentralElement& p,
                              const std::vector<Label>& window) {
  QuantumSpace ws = dual_space(d, window);

  AlgebraElement pm;
  for (const auto& [l, c] : p)
    pm.blocks[l] = c * Mat::Identity(d.dim(l), d.dim(l));

  AdjacencyMap::BlockMaps maps;
  for (const auto& from : ws.blocks()) {
    int nf = from.dim;
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) {
        AlgebraElement img = convolve(d, ws, pm, matrix_unit(ws, from.label, i, j));
        for (const auto& [to, m] : img.blocks) {
          int nt = ws.block(to).dim;
          auto [it, fresh] =
              maps.try_emplace({from.label, to}, Mat::Zero(nt * nt, nf * nf));
          (void)fresh;
          it->second.col(i * nf + j) = vec_rm(m);
        }
      }
  }
  for (auto it = maps.begin(); it != maps.end();)
    it = (it->second.norm() < 1e-300) ? maps.erase(it) : std::next(it);
  return AdjacencyMap::from_block_maps(ws, std::move(maps));
}

Bimodule cayley_bimodule(const FusionDual& d, const CentralElement& p,
                         const QuantumSpace& window) {
  SupportSet supp = central_support(p);
  Bimodule v;
  for (const auto& from : window.blocks()) {
    for (const auto& s : supp) {
      for (const auto& [to, mult] : d.fuse(from.label, s)) {
        if (!window.has(to)) continue;
        (void)mult;
        for (const Mat& iso : d.intertwiners(from.label, s, to)) {
          int ns = static_cast<int>(d.dim(s));
          for (int k = 0; k < ns; ++k) {
            Vec e = Vec::Zero(ns);
            e(k) = 1.0;
            Mat kraus = iso.adjoint() * kron(Mat::Identity(from.dim, from.dim), e);
            v.parts[{from.label, to}].push_back(kraus);
          }
        }
      }
    }
  }
  return orthonormalize(window, std::move(v));
}

}  // namespace qgraph
