#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/linalg.hpp"

namespace qgraph {

// One matrix block M_n together with the positive density that defines the
// block's weight  psi_a(x) = weight_scale * Tr(rho x).  The default scale
// Tr(rho^{-1}) normalizes the multiplication map so that m m* = Id.
struct Block {
  std::string label;
  int dim = 0;
  Mat rho;
  double weight_scale = 0.0;

  // Cached spectral data of rho.
  Mat evec;
  RVec eval;
  double tr_rho = 0.0;
  double tr_rho_inv = 0.0;

  Mat rho_pow(Cx z) const;
  Mat rho_pow(double t) const { return rho_pow(Cx(t, 0.0)); }
};

class QuantumSpace {
 public:
  QuantumSpace() = default;
  // Throws std::invalid_argument on non-hermitian or badly conditioned rho
  // (condition number above 1e12) or duplicate labels.
  static QuantumSpace make(std::vector<std::pair<std::string, Mat>> blocks);
  // Same, but overriding the canonical weight scale on every block by the
  // given factor (scale * Tr(rho^{-1})).
  static QuantumSpace make_scaled(std::vector<std::pair<std::string, Mat>> blocks, double scale);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool has(const std::string& label) const { return index_.count(label) > 0; }
  const Block& block(const std::string& label) const;
  const Block& block(std::size_t i) const { return blocks_[i]; }
  int total_dim() const;

 private:
  std::vector<Block> blocks_;
  std::map<std::string, int> index_;
};

// Element of the direct sum; absent labels mean zero blocks.
struct AlgebraElement {
  std::map<std::string, Mat> blocks;

  static AlgebraElement zero() { return {}; }
  bool empty() const { return blocks.empty(); }
};

AlgebraElement identity_element(const QuantumSpace& s);
AlgebraElement matrix_unit(const QuantumSpace& s, const std::string& label, int i, int j);
Mat block_or_zero(const QuantumSpace& s, const AlgebraElement& x, const std::string& label);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(Cx c, const AlgebraElement& x);
AlgebraElement adjoint_element(const AlgebraElement& x);
AlgebraElement elem_product(const AlgebraElement& x, const AlgebraElement& y);
double elem_norm(const AlgebraElement& x);           // Frobenius over blocks
double elem_sup_norm(const AlgebraElement& x);       // max operator norm over blocks
AlgebraElement prune(const AlgebraElement& x, double tol);

// psi(x) = sum_a weight_scale_a Tr(rho_a x_a).
Cx weight(const QuantumSpace& s, const AlgebraElement& x);

// sigma_z(x) = rho^{iz} x rho^{-iz}, entire in z.
AlgebraElement modular(const QuantumSpace& s, Cx z, const AlgebraElement& x);
Mat modular_block(const Block& b, Cx z, const Mat& x);

// <x,y>_KMS = psi(x* sigma_{-i/2}(y));  <x,y>_GNS = psi(x* y).
Cx kms_inner(const QuantumSpace& s, const AlgebraElement& x, const AlgebraElement& y);
Cx gns_inner(const QuantumSpace& s, const AlgebraElement& x, const AlgebraElement& y);

// Element of B (x) B, stored per block pair (beta, alpha) as a Kronecker
// matrix with entry ((i*na+k),(j*na+l)) = first(i,j) * second(k,l).
struct BTensorB {
  std::map<std::pair<std::string, std::string>, Mat> blocks;
};

// Element of B (x) B^op.  Same block layout, but the second tensor leg is
// stored transposed, which turns the op-algebra product into the plain
// Kronecker matrix product and the op-star into the matrix adjoint.
struct TwoSidedElement {
  std::map<std::pair<std::string, std::string>, Mat> blocks;
};

TwoSidedElement ts_add(const TwoSidedElement& p, const TwoSidedElement& q);
TwoSidedElement ts_scale(Cx c, const TwoSidedElement& p);
TwoSidedElement ts_product(const TwoSidedElement& p, const TwoSidedElement& q);
TwoSidedElement ts_adjoint(const TwoSidedElement& p);
double ts_norm(const TwoSidedElement& p);
TwoSidedElement ts_prune(const TwoSidedElement& p, double tol);
bool ts_is_hermitian(const TwoSidedElement& p, double tol);
bool ts_is_idempotent(const TwoSidedElement& p, double tol);
bool ts_is_projection(const TwoSidedElement& p, double tol);

// Identity of B (x) B^op over all block pairs present in the space.
TwoSidedElement ts_identity(const QuantumSpace& s);

// Marking the second leg as op (id (x) transpose on storage) and back.
TwoSidedElement to_op_form(const QuantumSpace& s, const BTensorB& k);
BTensorB from_op_form(const QuantumSpace& s, const TwoSidedElement& p);

// m: B (x) B -> B, a (x) b -> ab (diagonal block pairs only).
AlgebraElement mult(const QuantumSpace& s, const BTensorB& k);

// m*: adjoint of m for the GNS inner products of psi and psi (x) psi.
// Closed form per block: m*(x)[(p,r),(q,s)] = x_{ps} (rho^{-1})_{rq} / Tr(rho^{-1}).
BTensorB m_star(const QuantumSpace& s, const AlgebraElement& x);

// GNS inner product on B (x) B induced by psi (x) psi.
Cx btb_gns_inner(const QuantumSpace& s, const BTensorB& x, const BTensorB& y);

struct DeltaFormReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::vector<std::pair<std::string, double>> delta_sq;  // per-block 1/lambda with m m* = lambda Id
};

// Verifies m m* = Id on all matrix units; reports the per-block constant.
DeltaFormReport check_delta_form(const QuantumSpace& s, double tol = 1e-9);

}  // namespace qgraph
