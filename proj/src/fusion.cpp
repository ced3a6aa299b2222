#include "qgraph/fusion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>
#include <tuple>

namespace qgraph {

double q_int(int k, double q) {
  if (q == 1.0) return double(k);
  return (std::pow(q, -k) - std::pow(q, k)) / (1.0 / q - q);
}

RVec FusionDual::rho_diag(const Label&) const {
  throw NoProviderError(name() + ": no density matrices at support level");
}

double FusionDual::dim_q(const Label& a) const {
  if (!has_rho()) throw NoProviderError(name() + ": no quantum dimension provider");
  return rho_diag(a).sum();
}

std::vector<Mat> FusionDual::intertwiners(const Label&, const Label&, const Label&) const {
  throw NoProviderError(name() + ": no intertwiner provider");
}

std::vector<Label> FusionDual::enumerate(int budget) const {
  std::vector<Label> out;
  if (budget <= 0) return out;
  out.push_back(trivial());
  SupportSet seen{trivial()};
  SupportSet frontier{trivial()};
  auto gen_list = default_generators();
  SupportSet gens(gen_list.begin(), gen_list.end());
  while (int(out.size()) < budget && !frontier.empty()) {
    SupportSet next = fuse_support(*this, frontier, gens);
    SupportSet fresh;
    for (const auto& l : next)
      if (!seen.count(l)) fresh.insert(l);
    for (const auto& l : fresh) {
      if (int(out.size()) >= budget) break;
      out.push_back(l);
      seen.insert(l);
    }
    frontier = std::move(fresh);
  }
  return out;
}

SupportSet fuse_support(const FusionDual& d, const SupportSet& s1, const SupportSet& s2) {
  SupportSet out;
  for (const auto& a : s1)
    for (const auto& b : s2)
      for (const auto& [c, mult] : d.fuse(a, b)) out.insert(c);
  return out;
}

std::vector<SupportSet> balls(const FusionDual& d, const SupportSet& s, int n,
                              std::size_t max_labels) {
  std::vector<SupportSet> out;
  SupportSet acc{d.trivial()};
  SupportSet frontier = acc;
  out.push_back(acc);
  for (int k = 1; k <= n; ++k) {
    SupportSet next = fuse_support(d, frontier, s);
    SupportSet fresh;
    for (const auto& l : next)
      if (!acc.count(l)) fresh.insert(l);
    acc.insert(fresh.begin(), fresh.end());
    if (acc.size() > max_labels)
      throw std::runtime_error("ball of radius " + std::to_string(k) + " exceeds " +
                               std::to_string(max_labels) + " labels");
    out.push_back(acc);
    frontier = std::move(fresh);
  }
  return out;
}

SupportSet ball(const FusionDual& d, const SupportSet& s, int n, std::size_t max_labels) {
  return balls(d, s, n, max_labels).back();
}

// ---- finite groups ----

int FiniteGroup::index(const std::string& name) const {
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (elems[i] == name) return int(i);
  throw std::invalid_argument("unknown group element: " + name);
}

namespace {

void finish_group(FiniteGroup& g) {
  int n = int(g.elems.size());
  g.inv.assign(std::size_t(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mul[std::size_t(i)][std::size_t(j)] == g.identity) g.inv[std::size_t(i)] = j;
}

// group with presentation s^2 = r^m = 1, s r s = r^{-1}; element (a,b) = s^a r^b
FiniteGroup dihedral_like(int m) {
  FiniteGroup g;
  auto id = [m](int a, int b) { return a * m + ((b % m) + m) % m; };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < m; ++b) {
      std::string nm = (a ? "s" : "");
      if (b) nm += "r" + (b > 1 ? std::to_string(b) : "");
      if (nm.empty()) nm = "e";
      g.elems.push_back(nm);
    }
  g.mul.assign(std::size_t(2 * m), std::vector<int>(std::size_t(2 * m)));
  for (int a1 = 0; a1 < 2; ++a1)
    for (int b1 = 0; b1 < m; ++b1)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int b2 = 0; b2 < m; ++b2)
          g.mul[std::size_t(id(a1, b1))][std::size_t(id(a2, b2))] =
              id((a1 + a2) % 2, (a2 ? -b1 : b1) + b2);
  g.identity = 0;
  finish_group(g);
  return g;
}

Mat rot2(double angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

std::vector<Irrep> dihedral_like_irreps(int m) {
  // element order matches dihedral_like: (a,b) -> a*m + b
  std::vector<Irrep> irr;
  auto make1 = [&](const std::string& nm, double cs, double cr) {
    Irrep u{nm, {}};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < m; ++b) {
        Mat v(1, 1);
        v(0, 0) = std::pow(cs, a) * std::pow(cr, b);
        u.mats.push_back(v);
      }
    irr.push_back(std::move(u));
  };
  make1("triv", 1.0, 1.0);
  make1("sgn", -1.0, 1.0);
  if (m % 2 == 0) {
    make1("sgn_r", 1.0, -1.0);
    make1("sgn_sr", -1.0, -1.0);
  }
  Mat refl = Mat::Zero(2, 2);
  refl(0, 0) = 1.0;
  refl(1, 1) = -1.0;
  int count = (m % 2 == 0) ? m / 2 - 1 : (m - 1) / 2;
  for (int k = 1; k <= count; ++k) {
    Irrep u{count == 1 ? std::string("std") : "std" + std::to_string(k), {}};
    Mat rk = rot2(2.0 * M_PI * k / m);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < m; ++b) {
        Mat v = Mat::Identity(2, 2);
        for (int t = 0; t < b; ++t) v = v * rk;
        if (a) v = refl * v;
        u.mats.push_back(v);
      }
    irr.push_back(std::move(u));
  }
  return irr;
}

}  // namespace

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  FiniteGroup g;
  for (int i = 0; i < n; ++i) g.elems.push_back(std::to_string(i));
  g.mul.assign(std::size_t(n), std::vector<int>(std::size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.mul[std::size_t(i)][std::size_t(j)] = (i + j) % n;
  g.identity = 0;
  finish_group(g);
  return g;
}

FiniteGroup symmetric_group_s3() { return dihedral_like(3); }

FiniteGroup dihedral_group_d4() { return dihedral_like(4); }

FiniteGroupRep cyclic_group_data(int n) {
  FiniteGroupRep data;
  data.group = cyclic_group(n);
  for (int j = 0; j < n; ++j) {
    Irrep u{"chi" + std::to_string(j), {}};
    for (int k = 0; k < n; ++k) {
      Mat v(1, 1);
      double t = 2.0 * M_PI * j * k / n;
      v(0, 0) = Cx(std::cos(t), std::sin(t));
      u.mats.push_back(v);
    }
    data.irreps.push_back(std::move(u));
  }
  return data;
}

FiniteGroupRep s3_data() { return {symmetric_group_s3(), dihedral_like_irreps(3)}; }

FiniteGroupRep d4_data() { return {dihedral_group_d4(), dihedral_like_irreps(4)}; }

// ---- classical group dual ----

namespace {

class ClassicalGroupDual : public FusionDual {
 public:
  explicit ClassicalGroupDual(FiniteGroup g) : g_(std::move(g)) {}

  std::string name() const override { return "group(" + std::to_string(g_.elems.size()) + ")"; }
  Label trivial() const override { return g_.elems[std::size_t(g_.identity)]; }
  Label conjugate(const Label& a) const override {
    return g_.elems[std::size_t(g_.inv[std::size_t(g_.index(a))])];
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    return {{g_.elems[std::size_t(g_.mul[std::size_t(g_.index(a))][std::size_t(g_.index(b))])], 1}};
  }
  long long dim(const Label&) const override { return 1; }
  bool has_rho() const override { return true; }
  RVec rho_diag(const Label&) const override { return RVec::Ones(1); }
  bool has_intertwiners() const override { return true; }
  std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const override {
    if (fuse(a, c).count(b)) return {Mat::Ones(1, 1)};
    return {};
  }
  std::vector<Label> default_generators() const override {
    std::vector<Label> out;
    for (int i = 0; i < int(g_.elems.size()); ++i)
      if (i != g_.identity) out.push_back(g_.elems[std::size_t(i)]);
    return out;
  }
  std::vector<Label> enumerate(int budget) const override {
    std::vector<Label> out;
    out.push_back(trivial());
    for (const auto& e : g_.elems)
      if (e != trivial() && int(out.size()) < budget) out.push_back(e);
    return out;
  }
  const FiniteGroup& group() const { return g_; }

 private:
  FiniteGroup g_;
};

// ---- dual of a finite group ----

class DualOfGroup : public FusionDual {
 public:
  explicit DualOfGroup(FiniteGroupRep data) : d_(std::move(data)) {
    int order = int(d_.group.elems.size());
    long long sq = 0;
    for (const auto& u : d_.irreps) sq += (long long)(u.mats[0].rows()) * u.mats[0].rows();
    if (sq != order)
      throw std::invalid_argument("irrep list incomplete: sum of squared dims != group order");
    for (const auto& u : d_.irreps) {
      Vec chi(order);
      for (int g = 0; g < order; ++g) chi(g) = u.mats[std::size_t(g)].trace();
      chars_[u.name] = chi;
    }
  }

  std::string name() const override { return "dual-of-group"; }
  Label trivial() const override {
    for (const auto& [nm, chi] : chars_)
      if ((chi - Vec::Ones(chi.size())).norm() < 1e-9) return nm;
    throw std::logic_error("no trivial irrep found");
  }
  Label conjugate(const Label& a) const override {
    const Vec& chi = chars_.at(a);
    for (const auto& [nm, other] : chars_)
      if ((other - chi.conjugate()).norm() < 1e-9) return nm;
    throw std::logic_error("no conjugate irrep found for " + a);
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    int order = int(d_.group.elems.size());
    const Vec& ca = chars_.at(a);
    const Vec& cb = chars_.at(b);
    FusionMultiset out;
    for (const auto& [nm, cc] : chars_) {
      Cx acc = 0.0;
      for (int g = 0; g < order; ++g) acc += ca(g) * cb(g) * std::conj(cc(g));
      int mult = int(std::lround(acc.real() / order));
      if (mult > 0) out[nm] = mult;
    }
    return out;
  }
  long long dim(const Label& a) const override { return irrep(a).mats[0].rows(); }
  bool has_rho() const override { return true; }
  RVec rho_diag(const Label& a) const override { return RVec::Ones(dim(a)); }
  bool has_intertwiners() const override { return true; }
  std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const override;
  std::vector<Label> default_generators() const override {
    std::vector<Label> out;
    for (const auto& u : d_.irreps)
      if (u.name != trivial()) out.push_back(u.name);
    return out;
  }
  std::vector<Label> enumerate(int budget) const override {
    std::vector<Label> out{trivial()};
    for (const auto& u : d_.irreps)
      if (u.name != trivial() && int(out.size()) < budget) out.push_back(u.name);
    return out;
  }

  const Irrep& irrep(const Label& a) const {
    for (const auto& u : d_.irreps)
      if (u.name == a) return u;
    throw std::invalid_argument("unknown irrep: " + a);
  }
  const FiniteGroupRep& data() const { return d_; }

 private:
  FiniteGroupRep d_;
  std::map<Label, Vec> chars_;
};

std::vector<Mat> schur_orthonormalize(std::vector<Mat> raw, int target_dim) {
  std::vector<Mat> out;
  for (auto& v : raw) {
    for (const auto& u : out) v -= ((u.adjoint() * v).trace() / double(target_dim)) * u;
    double nrm = std::sqrt(std::abs((v.adjoint() * v).trace().real()) / target_dim);
    if (nrm < 1e-9) continue;
    out.push_back(v / nrm);
  }
  return out;
}

std::vector<Mat> DualOfGroup::intertwiners(const Label& a, const Label& c, const Label& b) const {
  const Irrep& ua = irrep(a);
  const Irrep& uc = irrep(c);
  const Irrep& ub = irrep(b);
  int na = int(ua.mats[0].rows()), nc = int(uc.mats[0].rows()), nb = int(ub.mats[0].rows());
  int order = int(d_.group.elems.size());
  int dim_v = na * nc * nb;
  Mat stacked(order * dim_v, dim_v);
  for (int g = 0; g < order; ++g) {
    Mat act = kron(ua.mats[std::size_t(g)], uc.mats[std::size_t(g)]);
    Mat constraint = kron(act, Mat::Identity(nb, nb)) -
                     kron(Mat::Identity(na * nc, na * nc), Mat(ub.mats[std::size_t(g)].transpose()));
    stacked.block(g * dim_v, 0, dim_v, dim_v) = constraint;
  }
  Eigen::BDCSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  std::vector<Mat> raw;
  for (int i = 0; i < svd.matrixV().cols(); ++i)
    if (i >= svd.singularValues().size() ||
        svd.singularValues()(i) < 1e-9 * std::max(1.0, smax))
      raw.push_back(unvec_rm(svd.matrixV().col(i), na * nc, nb));
  return schur_orthonormalize(std::move(raw), nb);
}

// ---- integer-vector labels for Z^d ----

std::vector<long long> parse_vec(const Label& a, int d) {
  std::vector<long long> out;
  std::stringstream ss(a);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  if (int(out.size()) != d) throw std::invalid_argument("bad Z^d label: " + a);
  return out;
}

Label format_vec(const std::vector<long long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

class FreeAbelianDual : public FusionDual {
 public:
  explicit FreeAbelianDual(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("Z^d needs d >= 1");
  }
  std::string name() const override { return "Z^" + std::to_string(d_); }
  Label trivial() const override { return format_vec(std::vector<long long>(std::size_t(d_), 0)); }
  Label conjugate(const Label& a) const override {
    auto v = parse_vec(a, d_);
    for (auto& x : v) x = -x;
    return format_vec(v);
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    auto va = parse_vec(a, d_);
    auto vb = parse_vec(b, d_);
    for (int i = 0; i < d_; ++i) va[std::size_t(i)] += vb[std::size_t(i)];
    return {{format_vec(va), 1}};
  }
  long long dim(const Label&) const override { return 1; }
  bool has_rho() const override { return true; }
  RVec rho_diag(const Label&) const override { return RVec::Ones(1); }
  bool has_intertwiners() const override { return true; }
  std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const override {
    if (fuse(a, c).count(b)) return {Mat::Ones(1, 1)};
    return {};
  }
  std::vector<Label> default_generators() const override {
    std::vector<Label> out;
    for (int i = 0; i < d_; ++i)
      for (int sign : {1, -1}) {
        std::vector<long long> v(std::size_t(d_), 0);
        v[std::size_t(i)] = sign;
        out.push_back(format_vec(v));
      }
    return out;
  }
  std::optional<long long> word_length(const Label& a) const override {
    auto v = parse_vec(a, d_);
    long long s = 0;
    for (auto x : v) s += std::llabs(x);
    return s;
  }

 private:
  int d_;
};

// ---- free group ----

std::string reduce_word(std::string w) {
  std::string out;
  for (char ch : w) {
    if (ch == 'e') continue;
    if (!out.empty() && out.back() != ch &&
        std::tolower(static_cast<unsigned char>(out.back())) ==
            std::tolower(static_cast<unsigned char>(ch)))
      out.pop_back();
    else
      out.push_back(ch);
  }
  return out;
}

char invert_letter(char ch) {
  unsigned char u = static_cast<unsigned char>(ch);
  return std::isupper(u) ? char(std::tolower(u)) : char(std::toupper(u));
}

class FreeGroupDual : public FusionDual {
 public:
  explicit FreeGroupDual(int k) : k_(k) {
    if (k < 1 || k > 26) throw std::invalid_argument("free group rank must be 1..26");
  }
  std::string name() const override { return "F_" + std::to_string(k_); }
  Label trivial() const override { return "e"; }
  Label conjugate(const Label& a) const override {
    std::string w = (a == "e") ? "" : a;
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(invert_letter(*it));
    return out.empty() ? "e" : out;
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    std::string w = reduce_word((a == "e" ? "" : a) + (b == "e" ? "" : b));
    return {{w.empty() ? "e" : w, 1}};
  }
  long long dim(const Label&) const override { return 1; }
  bool has_rho() const override { return true; }
  RVec rho_diag(const Label&) const override { return RVec::Ones(1); }
  bool has_intertwiners() const override { return true; }
  std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const override {
    if (fuse(a, c).count(b)) return {Mat::Ones(1, 1)};
    return {};
  }
  std::vector<Label> default_generators() const override {
    std::vector<Label> out;
    for (int i = 0; i < k_; ++i) {
      out.push_back(std::string(1, char('a' + i)));
      out.push_back(std::string(1, char('A' + i)));
    }
    return out;
  }
  std::optional<long long> word_length(const Label& a) const override {
    return a == "e" ? 0LL : static_cast<long long>(a.size());
  }

 private:
  int k_;
};

// ---- SU_q(2) ----

int su2_label(const Label& a) {
  std::size_t pos = 0;
  int n = std::stoi(a, &pos);
  if (pos != a.size() || n < 0) throw std::invalid_argument("bad spin label: " + a);
  return n;
}

Mat su2_raise(int n, double q) {
  Mat e = Mat::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) e(i - 1, i) = std::sqrt(q_int(i, q) * q_int(n - i + 1, q));
  return e;
}

RVec su2_kdiag(int n, double q) {
  RVec k(n + 1);
  for (int i = 0; i <= n; ++i) k(i) = std::pow(q, (n - 2.0 * i) / 2.0);
  return k;
}

class Su2Dual : public FusionDual {
 public:
  explicit Su2Dual(double q) : q_(q) {
    if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("su2 dual needs 0 < q <= 1");
  }
  std::string name() const override { return q_ == 1.0 ? "su2-dual" : "su_q2-dual"; }
  Label trivial() const override { return "0"; }
  Label conjugate(const Label& a) const override {
    su2_label(a);
    return a;
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    int n = su2_label(a), m = su2_label(b);
    FusionMultiset out;
    for (int k = std::abs(n - m); k <= n + m; k += 2) out[std::to_string(k)] = 1;
    return out;
  }
  long long dim(const Label& a) const override { return su2_label(a) + 1; }
  bool has_rho() const override { return true; }
  // inverse square of the K-diagonal; the coproduct orientation below is
  // chosen to match, so that convolution against these densities is symmetric
  RVec rho_diag(const Label& a) const override {
    int n = su2_label(a);
    RVec r(n + 1);
    for (int i = 0; i <= n; ++i) r(i) = std::pow(q_, double(-n + 2 * i));
    return r;
  }
  double dim_q(const Label& a) const override { return q_int(su2_label(a) + 1, q_); }
  bool has_intertwiners() const override { return true; }
  std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const override;
  std::vector<Label> default_generators() const override { return {"1"}; }
  std::vector<Label> enumerate(int budget) const override {
    std::vector<Label> out;
    for (int n = 0; n < budget; ++n) out.push_back(std::to_string(n));
    return out;
  }
  std::optional<long long> word_length(const Label& a) const override { return su2_label(a); }
  double q() const { return q_; }

 private:
  double q_;
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, int, int>, std::vector<Mat>> cache_;
};

std::vector<Mat> Su2Dual::intertwiners(const Label& a, const Label& c, const Label& b) const {
  int n1 = su2_label(a), n2 = su2_label(c), n3 = su2_label(b);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({n1, n2, n3});
    if (it != cache_.end()) return it->second;
  }
  std::vector<Mat> result;
  bool allowed = n3 >= std::abs(n1 - n2) && n3 <= n1 + n2 && (n1 + n2 - n3) % 2 == 0;
  if (allowed) {
    int d1 = n1 + 1, d2 = n2 + 1, d3 = n3 + 1;
    int t = (n1 + n2 - n3) / 2;  // i1 + i2 on the target weight line
    auto on_line = [&](int line) {
      std::vector<std::pair<int, int>> idx;
      for (int i1 = std::max(0, line - n2); i1 <= std::min(n1, line); ++i1)
        idx.push_back({i1, line - i1});
      return idx;
    };
    auto cur = on_line(t);
    auto above = on_line(t - 1);
    Mat e1 = su2_raise(n1, q_), e2 = su2_raise(n2, q_);
    RVec k1 = su2_kdiag(n1, q_), k2 = su2_kdiag(n2, q_);
    // raising operator of the product representation, restricted to the line
    Mat restricted = Mat::Zero(std::max<std::size_t>(above.size(), 1), cur.size());
    for (std::size_t col = 0; col < cur.size(); ++col) {
      auto [i1, i2] = cur[col];
      for (std::size_t row = 0; row < above.size(); ++row) {
        auto [j1, j2] = above[row];
        Cx val = 0.0;
        if (j2 == i2 && j1 == i1 - 1) val += e1(i1 - 1, i1) / k2(i2);
        if (j1 == i1 && j2 == i2 - 1) val += e2(i2 - 1, i2) * k1(i1);
        restricted(row, col) = val;
      }
    }
    Eigen::BDCSVD<Mat> svd(restricted, Eigen::ComputeFullV);
    int rank = 0;
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > 1e-11 * std::max(1.0, smax)) ++rank;
    for (int nv = rank; nv < int(cur.size()); ++nv) {
      Vec top = svd.matrixV().col(nv);
      // deterministic phase
      int imax = 0;
      for (int i = 1; i < top.size(); ++i)
        if (std::abs(top(i)) > std::abs(top(imax))) imax = i;
      top *= std::abs(top(imax)) / top(imax);

      Mat v = Mat::Zero(d1 * d2, d3);
      Vec w = Vec::Zero(d1 * d2);
      for (std::size_t i = 0; i < cur.size(); ++i) w(cur[i].first * d2 + cur[i].second) = top(i);
      v.col(0) = w;
      Mat f1 = e1.transpose(), f2 = e2.transpose();
      Mat kmat1 = Vec(k1.cast<Cx>()).asDiagonal();
      Mat k2inv = Vec(k2.cwiseInverse().cast<Cx>()).asDiagonal();
      Mat lower = kron(f1, k2inv) + kron(kmat1, f2);
      for (int k = 1; k <= n3; ++k) {
        double coeff = std::sqrt(q_int(n3 - k + 1, q_) * q_int(k, q_));
        w = lower * w / coeff;
        v.col(k) = w;
      }
      result.push_back(v);
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_[{n1, n2, n3}] = result;
  return result;
}

// ---- support-level free orthogonal / free unitary duals ----

class OfplusDual : public FusionDual {
 public:
  OfplusDual(int n, double delta) : n_(n), delta_(delta == 0.0 ? double(n) : delta) {
    if (n < 2) throw std::invalid_argument("free orthogonal dual needs n >= 2");
    if (delta_ < 2.0) throw std::invalid_argument("quantum dimension parameter must be >= 2");
  }
  std::string name() const override { return "ofplus-dual"; }
  Label trivial() const override { return "0"; }
  Label conjugate(const Label& a) const override {
    su2_label(a);
    return a;
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    int n = su2_label(a), m = su2_label(b);
    FusionMultiset out;
    for (int k = std::abs(n - m); k <= n + m; k += 2) out[std::to_string(k)] = 1;
    return out;
  }
  long long dim(const Label& a) const override {
    int k = su2_label(a);
    long long prev = 1, cur = n_;
    if (k == 0) return 1;
    for (int i = 1; i < k; ++i) {
      long long next = n_ * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  double dim_q(const Label& a) const override {
    int k = su2_label(a);
    double prev = 1.0, cur = delta_;
    if (k == 0) return 1.0;
    for (int i = 1; i < k; ++i) {
      double next = delta_ * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  std::vector<Label> default_generators() const override { return {"1"}; }
  std::vector<Label> enumerate(int budget) const override {
    std::vector<Label> out;
    for (int n = 0; n < budget; ++n) out.push_back(std::to_string(n));
    return out;
  }
  std::optional<long long> word_length(const Label& a) const override { return su2_label(a); }

 private:
  int n_;
  double delta_;
};

class UfplusDual : public FusionDual {
 public:
  UfplusDual(int n, double delta) : n_(n), delta_(delta == 0.0 ? double(n) : delta) {
    if (n < 2) throw std::invalid_argument("free unitary dual needs n >= 2");
    if (delta_ < 2.0) throw std::invalid_argument("quantum dimension parameter must be >= 2");
  }
  std::string name() const override { return "ufplus-dual"; }
  Label trivial() const override { return "e"; }
  Label conjugate(const Label& a) const override {
    std::string w = word(a);
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(*it == 'u' ? 'v' : 'u');
    return out.empty() ? "e" : out;
  }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    std::string w = word(a), z = word(b);
    FusionMultiset out;
    int max_g = int(std::min(w.size(), z.size()));
    for (int g = 0; g <= max_g; ++g) {
      // split w = head . tail with |tail| = g; need z to start with conj(tail)
      std::string tail = w.substr(w.size() - std::size_t(g));
      std::string conj_tail;
      for (auto it = tail.rbegin(); it != tail.rend(); ++it)
        conj_tail.push_back(*it == 'u' ? 'v' : 'u');
      if (z.compare(0, std::size_t(g), conj_tail) != 0) continue;
      std::string label = w.substr(0, w.size() - std::size_t(g)) + z.substr(std::size_t(g));
      out[label.empty() ? "e" : label] += 1;
    }
    return out;
  }
  long long dim(const Label& a) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return dim_impl(word(a));
  }
  double dim_q(const Label& a) const override {
    std::lock_guard<std::mutex> lock(mu_);
    return dimq_impl(word(a));
  }
  std::vector<Label> default_generators() const override { return {"u", "v"}; }
  std::optional<long long> word_length(const Label& a) const override {
    return static_cast<long long>(word(a).size());
  }

 private:
  static std::string word(const Label& a) {
    if (a == "e") return "";
    for (char ch : a)
      if (ch != 'u' && ch != 'v') throw std::invalid_argument("bad free-unitary label: " + a);
    return a;
  }
  long long dim_impl(const std::string& w) const {
    if (w.empty()) return 1;
    auto it = dims_.find(w);
    if (it != dims_.end()) return it->second;
    std::string head = w.substr(0, w.size() - 1);
    char last = w.back();
    long long val = n_ * dim_impl(head);
    char conj_last = (last == 'u') ? 'v' : 'u';
    if (!head.empty() && head.back() == conj_last)
      val -= dim_impl(head.substr(0, head.size() - 1));
    dims_[w] = val;
    return val;
  }
  double dimq_impl(const std::string& w) const {
    if (w.empty()) return 1.0;
    auto it = dimqs_.find(w);
    if (it != dimqs_.end()) return it->second;
    std::string head = w.substr(0, w.size() - 1);
    char last = w.back();
    double val = delta_ * dimq_impl(head);
    char conj_last = (last == 'u') ? 'v' : 'u';
    if (!head.empty() && head.back() == conj_last)
      val -= dimq_impl(head.substr(0, head.size() - 1));
    dimqs_[w] = val;
    return val;
  }

  int n_;
  double delta_;
  mutable std::mutex mu_;
  mutable std::map<std::string, long long> dims_;
  mutable std::map<std::string, double> dimqs_;
};

// ---- explicit table ----

class TableDual : public FusionDual {
 public:
  explicit TableDual(TableDualData data) : d_(std::move(data)) {
    if (std::find(d_.labels.begin(), d_.labels.end(), d_.trivial) == d_.labels.end())
      throw std::invalid_argument("trivial label missing from label list");
    for (const auto& l : d_.labels) {
      if (!d_.conj.count(l)) throw std::invalid_argument("missing conjugate for " + l);
      if (!d_.dims.count(l)) throw std::invalid_argument("missing dimension for " + l);
      FusionMultiset unit = fuse(d_.trivial, l);
      if (unit.size() != 1 || !unit.count(l) || unit[l] != 1)
        throw std::invalid_argument("trivial label is not a fusion unit at " + l);
    }
    if (!d_.rho.empty()) {
      for (const auto& l : d_.labels) {
        auto it = d_.rho.find(l);
        if (it == d_.rho.end()) throw std::invalid_argument("missing rho for " + l);
        if (it->second.size() != d_.dims.at(l))
          throw std::invalid_argument("rho size mismatch at " + l);
        if ((it->second.array() <= 0).any())
          throw std::invalid_argument("rho entries must be positive at " + l);
      }
    }
    for (const auto& [key, ms] : d_.fusion) {
      for (const auto& [c, mult] : ms) {
        FusionMultiset other = fuse(d_.conj.at(key.second), d_.conj.at(key.first));
        auto it = other.find(d_.conj.at(c));
        if (it == other.end() || it->second != mult)
          throw std::invalid_argument("fusion table breaks conjugation symmetry at " + key.first +
                                      "," + key.second);
      }
    }
  }
  std::string name() const override { return d_.name; }
  Label trivial() const override { return d_.trivial; }
  Label conjugate(const Label& a) const override { return d_.conj.at(a); }
  FusionMultiset fuse(const Label& a, const Label& b) const override {
    if (a == d_.trivial) return {{b, 1}};
    if (b == d_.trivial) return {{a, 1}};
    auto it = d_.fusion.find({a, b});
    if (it == d_.fusion.end()) throw std::invalid_argument("fusion table misses " + a + "," + b);
    return it->second;
  }
  long long dim(const Label& a) const override { return d_.dims.at(a); }
  double dim_q(const Label& a) const override {
    auto it = d_.rho.find(a);
    return it != d_.rho.end() ? it->second.sum() : double(d_.dims.at(a));
  }
  bool has_rho() const override { return !d_.rho.empty(); }
  RVec rho_diag(const Label& a) const override {
    auto it = d_.rho.find(a);
    if (it == d_.rho.end()) throw NoProviderError("no rho stored for " + a);
    return it->second;
  }
  std::vector<Label> default_generators() const override {
    std::vector<Label> out;
    for (const auto& l : d_.labels)
      if (l != d_.trivial) out.push_back(l);
    return out;
  }
  std::vector<Label> enumerate(int budget) const override {
    std::vector<Label> out{d_.trivial};
    for (const auto& l : d_.labels)
      if (l != d_.trivial && int(out.size()) < budget) out.push_back(l);
    return out;
  }

 private:
  TableDualData d_;
};

}  // namespace

DualPtr classical_group_dual(FiniteGroup g) {
  return std::make_shared<ClassicalGroupDual>(std::move(g));
}

DualPtr dual_of_group(FiniteGroupRep data) { return std::make_shared<DualOfGroup>(std::move(data)); }

DualPtr free_abelian_dual(int d) { return std::make_shared<FreeAbelianDual>(d); }

DualPtr free_group_dual(int k) { return std::make_shared<FreeGroupDual>(k); }

DualPtr su2_dual(double q) { return std::make_shared<Su2Dual>(q); }

DualPtr ofplus_dual(int n, double delta) { return std::make_shared<OfplusDual>(n, delta); }

DualPtr ufplus_dual(int n, double delta) { return std::make_shared<UfplusDual>(n, delta); }

DualPtr table_dual(TableDualData data) { return std::make_shared<TableDual>(std::move(data)); }

}  // namespace qgraph
