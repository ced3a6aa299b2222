#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/linalg.hpp"

namespace qgraph {

struct NoProviderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Label = std::string;
using SupportSet = std::set<Label>;
// label -> multiplicity
using FusionMultiset = std::map<Label, int>;

// Irreducible-label data of a discrete quantum group: fusion rules, conjugates,
// dimensions, and (where a provider exists) density matrices and numeric
// intertwiner isometries. Labels are strings; implementations memoize
// internally and are safe for concurrent queries.
class FusionDual {
 public:
  virtual ~FusionDual() = default;

  virtual std::string name() const = 0;
  virtual Label trivial() const = 0;
  virtual Label conjugate(const Label& a) const = 0;
  virtual FusionMultiset fuse(const Label& a, const Label& b) const = 0;
  virtual long long dim(const Label& a) const = 0;

  virtual bool has_rho() const { return false; }
  // positive diagonal of the canonical density matrix, length dim(a)
  virtual RVec rho_diag(const Label& a) const;
  // Tr(rho_a) = Tr(rho_a^{-1}); falls back to a provider-specific value when
  // no rho is available (support-level duals still carry quantum dimensions).
  virtual double dim_q(const Label& a) const;

  virtual bool has_intertwiners() const { return false; }
  // Orthonormal isometries H_b -> H_a (x) H_c spanning the morphism space;
  // count equals the fusion multiplicity of b in a (x) c.
  virtual std::vector<Mat> intertwiners(const Label& a, const Label& c, const Label& b) const;

  // Natural generating support (excluding the trivial label).
  virtual std::vector<Label> default_generators() const = 0;
  // First `budget` labels in shell order from the trivial label.
  virtual std::vector<Label> enumerate(int budget) const;
  // Length of a label in shells of the default generators, when cheaply known.
  virtual std::optional<long long> word_length(const Label&) const { return std::nullopt; }
};

using DualPtr = std::shared_ptr<const FusionDual>;

SupportSet fuse_support(const FusionDual& d, const SupportSet& s1, const SupportSet& s2);
// Union of fuse powers S^k, k = 0..n (S^0 = {trivial}).
// Throws when the ball exceeds max_labels.
SupportSet ball(const FusionDual& d, const SupportSet& s, int n,
                std::size_t max_labels = 5000000);
// Cumulative balls 0..n in one pass.
std::vector<SupportSet> balls(const FusionDual& d, const SupportSet& s, int n,
                              std::size_t max_labels = 5000000);

// ---- finite groups, shared with the Fourier layer ----

struct FiniteGroup {
  std::vector<std::string> elems;
  std::vector<std::vector<int>> mul;  // mul[i][j] = index of elems[i]*elems[j]
  int identity = 0;
  std::vector<int> inv;
  int index(const std::string& name) const;
};

struct Irrep {
  std::string name;
  std::vector<Mat> mats;  // one unitary per group element, same order
};

struct FiniteGroupRep {
  FiniteGroup group;
  std::vector<Irrep> irreps;  // complete list
};

FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group_s3();
FiniteGroup dihedral_group_d4();
FiniteGroupRep cyclic_group_data(int n);
FiniteGroupRep s3_data();
FiniteGroupRep d4_data();

// ---- built-in duals ----

// labels = group elements, all dims 1, fusion = group law
DualPtr classical_group_dual(FiniteGroup g);
// labels = irrep names, fusion from characters, intertwiners from the matrices
DualPtr dual_of_group(FiniteGroupRep data);
// labels = integer vectors "x1,...,xd"
DualPtr free_abelian_dual(int d);
// labels = reduced words over a..z / A..Z (capital = inverse)
DualPtr free_group_dual(int k);
// labels "0","1",... (twice the spin); q in (0,1]; q = 1 is the classical dual
DualPtr su2_dual(double q);
// SU(2) fusion at support level, Chebyshev dimensions from n, dim_q from delta
DualPtr ofplus_dual(int n, double delta = 0.0);
// free fusion on words over u / v (v = conjugate of u)
DualPtr ufplus_dual(int n, double delta = 0.0);

// explicit finite fusion table (validated: unit, conjugation symmetry)
struct TableDualData {
  std::string name;
  Label trivial;
  std::vector<Label> labels;
  std::map<Label, Label> conj;
  std::map<std::pair<Label, Label>, FusionMultiset> fusion;
  std::map<Label, long long> dims;
  std::map<Label, RVec> rho;  // optional; empty means no rho provider
};
DualPtr table_dual(TableDualData data);

// q-integer [k]_q = (q^{-k} - q^k)/(q^{-1} - q), with the q = 1 limit k.
double q_int(int k, double q);

}  // namespace qgraph
