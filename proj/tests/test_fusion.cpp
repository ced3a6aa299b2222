#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "qgraph/fusion.hpp"
#include "qgraph/linalg.hpp"

using namespace qgraph;

namespace {

FusionMultiset fuse_then(const FusionDual& d, const FusionMultiset& left, const Label& c) {
  FusionMultiset out;
  for (const auto& [e, m] : left)
    for (const auto& [f, m2] : d.fuse(e, c)) out[f] += m * m2;
  return out;
}

FusionMultiset then_fuse(const FusionDual& d, const Label& a, const FusionMultiset& right) {
  FusionMultiset out;
  for (const auto& [g, m] : right)
    for (const auto& [f, m2] : d.fuse(a, g)) out[f] += m * m2;
  return out;
}

void check_associative(const FusionDual& d, const Label& a, const Label& b, const Label& c) {
  auto lhs = fuse_then(d, d.fuse(a, b), c);
  auto rhs = then_fuse(d, a, d.fuse(b, c));
  CHECK(lhs == rhs);
}

void check_dimq_multiplicative(const FusionDual& d, const Label& a, const Label& b, double tol) {
  double sum = 0.0;
  for (const auto& [c, m] : d.fuse(a, b)) sum += m * d.dim_q(c);
  CHECK(std::abs(sum - d.dim_q(a) * d.dim_q(b)) <= tol * std::max(1.0, std::abs(sum)));
}

void check_dim_multiplicative(const FusionDual& d, const Label& a, const Label& b) {
  long long sum = 0;
  for (const auto& [c, m] : d.fuse(a, b)) sum += m * d.dim(c);
  CHECK(sum == d.dim(a) * d.dim(b));
}

Mat spin_raise(int n, double q) {
  Mat e = Mat::Zero(n + 1, n + 1);
  for (int i = 1; i <= n; ++i) e(i - 1, i) = std::sqrt(q_int(i, q) * q_int(n - i + 1, q));
  return e;
}

Mat spin_k(int n, double q, double power) {
  Mat k = Mat::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) k(i, i) = std::pow(q, power * (n - 2.0 * i) / 2.0);
  return k;
}

void check_spin_equivariance(const FusionDual& d, double q, int n1, int n2, int n3) {
  auto vs = d.intertwiners(std::to_string(n1), std::to_string(n2), std::to_string(n3));
  bool allowed = n3 >= std::abs(n1 - n2) && n3 <= n1 + n2 && (n1 + n2 - n3) % 2 == 0;
  REQUIRE(int(vs.size()) == (allowed ? 1 : 0));
  if (!allowed) return;
  const Mat& v = vs[0];
  REQUIRE(v.rows() == (n1 + 1) * (n2 + 1));
  REQUIRE(v.cols() == n3 + 1);
  CHECK(frob(Mat(v.adjoint() * v) - Mat::Identity(n3 + 1, n3 + 1)) < 1e-10);

  Mat e1 = spin_raise(n1, q), e2 = spin_raise(n2, q), e3 = spin_raise(n3, q);
  Mat k1 = spin_k(n1, q, 1.0), k3 = spin_k(n3, q, 1.0);
  Mat k2i = spin_k(n2, q, -1.0), k2 = spin_k(n2, q, 1.0);
  Mat de = kron(e1, k2i) + kron(k1, e2);
  Mat df = kron(Mat(e1.transpose()), k2i) + kron(k1, Mat(e2.transpose()));
  Mat dk = kron(k1, k2);
  CHECK(frob(Mat(de * v - v * e3)) < 1e-9 * std::max(1.0, frob(de)));
  CHECK(frob(Mat(df * v - v * Mat(e3.transpose()))) < 1e-9 * std::max(1.0, frob(df)));
  CHECK(frob(Mat(dk * v - v * k3)) < 1e-10 * std::max(1.0, frob(dk)));
}

void check_group_equivariance(const FiniteGroupRep& data, const FusionDual& d) {
  for (const auto& ua : data.irreps)
    for (const auto& uc : data.irreps)
      for (const auto& ub : data.irreps) {
        auto vs = d.intertwiners(ua.name, uc.name, ub.name);
        auto ms = d.fuse(ua.name, uc.name);
        int mult = ms.count(ub.name) ? ms.at(ub.name) : 0;
        REQUIRE(int(vs.size()) == mult);
        int nb = int(ub.mats[0].rows());
        for (std::size_t k = 0; k < vs.size(); ++k) {
          for (std::size_t l = 0; l < vs.size(); ++l) {
            Mat prod = vs[k].adjoint() * vs[l];
            Mat expect = (k == l) ? Mat(Mat::Identity(nb, nb)) : Mat(Mat::Zero(nb, nb));
            CHECK(frob(prod - expect) < 1e-9);
          }
          for (std::size_t g = 0; g < data.group.elems.size(); ++g) {
            Mat act = kron(ua.mats[g], uc.mats[g]);
            CHECK(frob(Mat(act * vs[k] - vs[k] * ub.mats[g])) < 1e-9);
          }
        }
      }
}

}  // namespace

TEST_CASE("q-integers") {
  CHECK(q_int(3, 1.0) == doctest::Approx(3.0));
  CHECK(q_int(0, 0.7) == doctest::Approx(0.0));
  CHECK(q_int(1, 0.3) == doctest::Approx(1.0));
  CHECK(q_int(2, 0.5) == doctest::Approx(2.5));
  CHECK(q_int(3, 0.5) == doctest::Approx(5.25));
}

TEST_CASE("spin fusion rules and dimensions") {
  auto d = su2_dual(1.0);
  FusionMultiset f11{{"0", 1}, {"2", 1}};
  CHECK(d->fuse("1", "1") == f11);
  FusionMultiset f23{{"1", 1}, {"3", 1}, {"5", 1}};
  CHECK(d->fuse("2", "3") == f23);
  CHECK(d->trivial() == "0");
  CHECK(d->conjugate("4") == "4");
  CHECK(d->dim("5") == 6);
  CHECK(d->dim_q("5") == doctest::Approx(6.0));
  CHECK(d->has_rho());
  CHECK(RVec(d->rho_diag("3") - RVec::Ones(4)).norm() < 1e-14);

  auto dq = su2_dual(0.5);
  CHECK(dq->fuse("1", "1") == f11);
  CHECK(dq->dim("1") == 2);
  CHECK(dq->dim_q("1") == doctest::Approx(2.5));
  CHECK(dq->dim_q("2") == doctest::Approx(5.25));
  RVec r1 = dq->rho_diag("1");
  CHECK(r1(0) == doctest::Approx(2.0));
  CHECK(r1(1) == doctest::Approx(0.5));
  CHECK(r1.sum() == doctest::Approx(dq->dim_q("1")));
  RVec r3 = dq->rho_diag("3");
  CHECK(r3.sum() == doctest::Approx(r3.cwiseInverse().sum()));
  CHECK(r3.sum() == doctest::Approx(dq->dim_q("3")));
}

TEST_CASE("spin fusion associativity and dimension sums") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 6);
  for (auto q : {1.0, 0.5, 0.8}) {
    auto d = su2_dual(q);
    for (int t = 0; t < 40; ++t) {
      Label a = std::to_string(pick(rng));
      Label b = std::to_string(pick(rng));
      Label c = std::to_string(pick(rng));
      check_associative(*d, a, b, c);
      check_dimq_multiplicative(*d, a, b, 1e-11);
      if (q == 1.0) check_dim_multiplicative(*d, a, b);
    }
  }
}

TEST_CASE("spin intertwiners are equivariant isometries") {
  for (auto q : {1.0, 0.5}) {
    auto d = su2_dual(q);
    for (int n1 = 0; n1 <= 4; ++n1)
      for (int n2 = 0; n2 <= 4; ++n2)
        for (int n3 = 0; n3 <= 6; ++n3) check_spin_equivariance(*d, q, n1, n2, n3);
  }
  auto d = su2_dual(0.5);
  check_spin_equivariance(*d, 0.5, 6, 6, 8);
  check_spin_equivariance(*d, 0.5, 5, 7, 12);
}

TEST_CASE("singlet intertwiner weights follow the deformation") {
  double q = 0.5;
  auto d = su2_dual(q);
  auto vs = d->intertwiners("1", "1", "0");
  REQUIRE(vs.size() == 1);
  const Mat& v = vs[0];
  double scale = q + 1.0 / q;
  CHECK(std::norm(v(1, 0)) == doctest::Approx((1.0 / q) / scale));
  CHECK(std::norm(v(2, 0)) == doctest::Approx(q / scale));
  CHECK(std::abs(v(0, 0)) < 1e-14);
  CHECK(std::abs(v(3, 0)) < 1e-14);
}

TEST_CASE("spin intertwiners intertwine the density matrices") {
  auto d = su2_dual(0.5);
  std::vector<std::array<int, 3>> triples{{1, 1, 2}, {1, 2, 1}, {2, 3, 3}, {4, 2, 2}};
  for (auto [a, c, b] : triples) {
    auto vs = d->intertwiners(std::to_string(a), std::to_string(c), std::to_string(b));
    REQUIRE(vs.size() == 1);
    Mat ra = Vec(d->rho_diag(std::to_string(a)).cast<Cx>()).asDiagonal();
    Mat rc = Vec(d->rho_diag(std::to_string(c)).cast<Cx>()).asDiagonal();
    Mat rb = Vec(d->rho_diag(std::to_string(b)).cast<Cx>()).asDiagonal();
    CHECK(frob(Mat(kron(ra, rc) * vs[0] - vs[0] * rb)) < 1e-9);
  }
}

TEST_CASE("classical group dual follows the multiplication table") {
  auto g = symmetric_group_s3();
  CHECK(g.elems.size() == 6);
  auto d = classical_group_dual(g);
  CHECK(d->trivial() == "e");
  FusionMultiset sr{{"sr", 1}};
  CHECK(d->fuse("s", "r") == sr);
  FusionMultiset sr2{{"sr2", 1}};
  CHECK(d->fuse("r", "s") == sr2);
  CHECK(d->conjugate("r") == "r2");
  CHECK(d->conjugate("s") == "s");
  CHECK(d->dim("sr") == 1);
  CHECK(d->dim_q("sr") == doctest::Approx(1.0));
  auto vs = d->intertwiners("s", "r", "sr");
  REQUIRE(vs.size() == 1);
  CHECK(std::abs(vs[0](0, 0) - Cx(1, 0)) < 1e-14);
  CHECK(d->intertwiners("s", "r", "e").empty());
  for (const auto& a : g.elems)
    for (const auto& b : g.elems)
      for (const auto& c : g.elems) check_associative(*d, a, b, c);
}

TEST_CASE("dual of s3 fuses by characters") {
  auto data = s3_data();
  CHECK(data.irreps.size() == 3);
  auto d = dual_of_group(data);
  CHECK(d->trivial() == "triv");
  CHECK(d->conjugate("std") == "std");
  CHECK(d->dim("std") == 2);
  FusionMultiset expect{{"std", 1}};
  CHECK(d->fuse("sgn", "std") == expect);
  FusionMultiset sq{{"triv", 1}, {"sgn", 1}, {"std", 1}};
  CHECK(d->fuse("std", "std") == sq);
  for (const auto& a : {"triv", "sgn", "std"})
    for (const auto& b : {"triv", "sgn", "std"})
      for (const auto& c : {"triv", "sgn", "std"}) check_associative(*d, a, b, c);
  check_group_equivariance(data, *d);
}

TEST_CASE("dual of d4 and cyclic duals") {
  auto data = d4_data();
  CHECK(data.irreps.size() == 5);
  auto d = dual_of_group(data);
  CHECK(d->dim("std") == 2);
  FusionMultiset sq{{"triv", 1}, {"sgn", 1}, {"sgn_r", 1}, {"sgn_sr", 1}};
  CHECK(d->fuse("std", "std") == sq);
  check_group_equivariance(data, *d);

  auto z5 = dual_of_group(cyclic_group_data(5));
  CHECK(z5->trivial() == "chi0");
  CHECK(z5->conjugate("chi1") == "chi4");
  FusionMultiset c{{"chi3", 1}};
  CHECK(z5->fuse("chi1", "chi2") == c);
}

TEST_CASE("free abelian dual") {
  auto d = free_abelian_dual(2);
  CHECK(d->trivial() == "0,0");
  FusionMultiset s{{"0,5", 1}};
  CHECK(d->fuse("1,2", "-1,3") == s);
  CHECK(d->conjugate("2,-3") == "-2,3");
  CHECK(d->word_length("2,-3").value() == 5);
  CHECK(d->dim("7,1") == 1);
  auto gens = d->default_generators();
  CHECK(gens.size() == 4);
  SupportSet gset(gens.begin(), gens.end());
  auto bs = balls(*d, gset, 3);
  CHECK(bs[0].size() == 1);
  CHECK(bs[1].size() == 5);
  CHECK(bs[2].size() == 13);
  CHECK(bs[3].size() == 25);
  for (const auto& l : bs[3]) CHECK(bs[3].count(d->conjugate(l)));
}

TEST_CASE("free group dual") {
  auto d = free_group_dual(2);
  CHECK(d->trivial() == "e");
  FusionMultiset s{{"aa", 1}};
  CHECK(d->fuse("ab", "Ba") == s);
  FusionMultiset t{{"e", 1}};
  CHECK(d->fuse("ab", "BA") == t);
  CHECK(d->conjugate("ab") == "BA");
  CHECK(d->conjugate("e") == "e");
  CHECK(d->word_length("abA").value() == 3);
  auto gens = d->default_generators();
  CHECK(gens.size() == 4);
  SupportSet gset(gens.begin(), gens.end());
  auto bs = balls(*d, gset, 3);
  CHECK(bs[1].size() == 5);
  CHECK(bs[2].size() == 17);
  CHECK(bs[3].size() == 53);
  for (const auto& l : bs[3]) CHECK(bs[3].count(d->conjugate(l)));
  CHECK_THROWS_AS(ball(*d, gset, 5, 20), std::runtime_error);
}

TEST_CASE("free orthogonal dual dimensions") {
  auto d = ofplus_dual(3);
  CHECK(d->trivial() == "0");
  CHECK(d->dim("0") == 1);
  CHECK(d->dim("1") == 3);
  CHECK(d->dim("2") == 8);
  CHECK(d->dim("3") == 21);
  CHECK(d->dim_q("3") == doctest::Approx(21.0));
  CHECK(!d->has_rho());
  CHECK_THROWS_AS(d->rho_diag("1"), NoProviderError);
  CHECK_THROWS_AS(d->intertwiners("1", "1", "0"), NoProviderError);
  FusionMultiset f{{"0", 1}, {"2", 1}};
  CHECK(d->fuse("1", "1") == f);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pick(0, 5);
  for (int t = 0; t < 25; ++t) {
    Label a = std::to_string(pick(rng));
    Label b = std::to_string(pick(rng));
    check_associative(*d, a, b, std::to_string(pick(rng)));
    check_dim_multiplicative(*d, a, b);
    check_dimq_multiplicative(*d, a, b, 1e-12);
  }
}

TEST_CASE("free unitary dual words") {
  auto d = ufplus_dual(2);
  CHECK(d->trivial() == "e");
  CHECK(d->conjugate("u") == "v");
  CHECK(d->conjugate("uv") == "uv");
  CHECK(d->conjugate("uuv") == "uvv");
  FusionMultiset uv{{"uv", 1}, {"e", 1}};
  CHECK(d->fuse("u", "v") == uv);
  FusionMultiset uu{{"uu", 1}};
  CHECK(d->fuse("u", "u") == uu);
  FusionMultiset uvuv{{"uvuv", 1}, {"uv", 1}, {"e", 1}};
  CHECK(d->fuse("uv", "uv") == uvuv);
  CHECK(d->dim("uv") == 3);
  CHECK(d->dim("uvu") == 4);
  CHECK(d->dim("uvuv") == 5);
  CHECK(d->dim("uu") == 4);
  CHECK(d->dim("uuu") == 8);
  CHECK(d->word_length("uvu").value() == 3);

  SupportSet power{"u"};
  for (int n = 2; n <= 6; ++n) {
    power = fuse_support(*d, power, SupportSet{"u"});
    CHECK(power.size() == 1);
    CHECK(*power.begin() == std::string(std::size_t(n), 'u'));
  }
  CHECK(d->dim(std::string(6, 'u')) == 64);
}

TEST_CASE("free unitary fusion is associative with multiplicities") {
  auto d = ufplus_dual(2);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> len(0, 4);
  std::uniform_int_distribution<int> bit(0, 1);
  auto rand_word = [&]() {
    int n = len(rng);
    if (n == 0) return std::string("e");
    std::string w;
    for (int i = 0; i < n; ++i) w.push_back(bit(rng) ? 'u' : 'v');
    return w;
  };
  for (int t = 0; t < 120; ++t) {
    Label a = rand_word(), b = rand_word(), c = rand_word();
    check_associative(*d, a, b, c);
    check_dim_multiplicative(*d, a, b);
    check_dimq_multiplicative(*d, a, b, 1e-12);
  }
}

TEST_CASE("ball growth and enumeration for spins") {
  auto d = su2_dual(1.0);
  auto b5 = ball(*d, SupportSet{"1"}, 5);
  CHECK(b5.size() == 6);
  for (int n = 0; n <= 5; ++n) CHECK(b5.count(std::to_string(n)));
  auto en = d->enumerate(4);
  REQUIRE(en.size() == 4);
  CHECK(en[0] == "0");
  CHECK(en[3] == "3");

  auto dq = ufplus_dual(2);
  auto en2 = dq->enumerate(7);
  std::vector<Label> expect{"e", "u", "v", "uu", "uv", "vu", "vv"};
  CHECK(en2 == expect);

  auto z = free_abelian_dual(1);
  std::vector<Label> ez{"0", "-1", "1", "-2", "2"};
  CHECK(z->enumerate(5) == ez);
}

TEST_CASE("explicit fusion tables are validated") {
  TableDualData fib;
  fib.name = "fib";
  fib.trivial = "e";
  fib.labels = {"e", "t"};
  fib.conj = {{"e", "e"}, {"t", "t"}};
  fib.dims = {{"e", 1}, {"t", 1}};
  fib.fusion[{"t", "t"}] = {{"e", 1}, {"t", 1}};
  auto d = table_dual(fib);
  FusionMultiset tt{{"e", 1}, {"t", 1}};
  CHECK(d->fuse("t", "t") == tt);
  FusionMultiset et{{"t", 1}};
  CHECK(d->fuse("e", "t") == et);
  check_associative(*d, "t", "t", "t");
  CHECK(!d->has_rho());

  TableDualData bad = fib;
  bad.conj.erase("t");
  CHECK_THROWS_AS(table_dual(bad), std::invalid_argument);

  TableDualData asym;
  asym.name = "asym";
  asym.trivial = "e";
  asym.labels = {"e", "a", "b"};
  asym.conj = {{"e", "e"}, {"a", "b"}, {"b", "a"}};
  asym.dims = {{"e", 1}, {"a", 1}, {"b", 1}};
  asym.fusion[{"a", "a"}] = {{"b", 1}};
  asym.fusion[{"b", "b"}] = {{"b", 1}};
  asym.fusion[{"a", "b"}] = {{"e", 1}};
  asym.fusion[{"b", "a"}] = {{"e", 1}};
  CHECK_THROWS_AS(table_dual(asym), std::invalid_argument);
}
