#pragma once

#include "qgraph/qspace.hpp"

namespace qgraph {

// Linear map on the direct sum, stored redundantly: per-block-pair matrices
// acting on row-major vectorizations, plus the weighted Choi element.
// Constructors recompute one representation from the other and assert
// agreement, so a constructed object is always internally consistent.
class AdjacencyMap {
 public:
  using BlockMaps = std::map<std::pair<std::string, std::string>, Mat>;  // key (from, to)

  static AdjacencyMap from_block_maps(const QuantumSpace& s, BlockMaps maps, double tol = 1e-9);
  static AdjacencyMap from_choi(const QuantumSpace& s, TwoSidedElement choi, double tol = 1e-9);

  const QuantumSpace& space() const { return space_; }
  const BlockMaps& maps() const { return maps_; }
  const TwoSidedElement& choi() const { return choi_; }

  AlgebraElement apply(const AlgebraElement& x) const;
  Mat apply_block(const std::string& from, const std::string& to, const Mat& x) const;

 private:
  QuantumSpace space_;
  BlockMaps maps_;
  TwoSidedElement choi_;
};

// Weighted Choi element of a map given by block matrices.
TwoSidedElement choi_from_block_maps(const QuantumSpace& s, const AdjacencyMap::BlockMaps& maps);
// Inverse: block matrices recovered by slicing the Choi element.
AdjacencyMap::BlockMaps block_maps_from_choi(const QuantumSpace& s, const TwoSidedElement& choi);

AdjacencyMap identity_map(const QuantumSpace& s);
AdjacencyMap zero_map(const QuantumSpace& s);
AdjacencyMap compose(const AdjacencyMap& a, const AdjacencyMap& b);  // a after b
AdjacencyMap map_add(const AdjacencyMap& a, const AdjacencyMap& b);
AdjacencyMap map_scale(Cx c, const AdjacencyMap& a);

// m (A (x) B) m*, computed blockwise from the definition.
AdjacencyMap schur_product(const AdjacencyMap& a, const AdjacencyMap& b);

// Tensor flip of B (x) B^op; moves block (beta, alpha) to (alpha, beta).
TwoSidedElement flip_ts(const QuantumSpace& s, const TwoSidedElement& p);

// Adjoint with respect to the KMS inner product.
AdjacencyMap kms_adjoint(const AdjacencyMap& a);

// Entrywise conjugate map  x -> (A(x*))^*.
AdjacencyMap conj_map(const AdjacencyMap& a);

struct Classification {
  bool schur_idempotent = false;
  bool real = false;  // star preserving
  bool completely_positive = false;
  bool kms_symmetric = false;
  bool gns_symmetric = false;
  bool loop_free = false;
  double dev_schur = 0.0;
  double dev_real = 0.0;
  double min_choi_eig = 0.0;
  double dev_kms = 0.0;
  double dev_gns = 0.0;
  double dev_loop = 0.0;
  bool quantum_adjacency() const { return schur_idempotent && completely_positive; }
};

Classification classify(const AdjacencyMap& a, double tol = 1e-9);

bool is_quantum_adjacency(const AdjacencyMap& a, double tol = 1e-9);

// (Id (x) psi^op) of the Choi element: the degree element of B.
AlgebraElement degree(const QuantumSpace& s, const TwoSidedElement& choi);

struct DegreeReport {
  bool stabilized = false;  // false means the truncation is too small to tell
  AlgebraElement value;
  std::vector<double> increments;  // sup-norm growth per consumed source block
};

// Accumulates the degree source block by source block, in the block order of
// the space, and reports whether the partial sums have stopped moving: the
// last `windows` increments must all stay below tol in sup norm.
DegreeReport bounded_degree(const QuantumSpace& s, const TwoSidedElement& choi, int windows = 3,
                            double tol = 1e-9);

}  // namespace qgraph
