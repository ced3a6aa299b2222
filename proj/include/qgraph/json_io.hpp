#pragma once

#include <string>

#include <json.hpp>

#include "qgraph/bimodule.hpp"
#include "qgraph/cayley.hpp"
#include "qgraph/choi.hpp"
#include "qgraph/qgfourier.hpp"

namespace qgraph {

using Json = nlohmann::json;

// Complex entries are stored as [re, im]; a matrix is an array of rows.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

// {"blocks": [{"label": ..., "dim": n, "rho": matrix}, ...]}
Json space_to_json(const QuantumSpace& s);
QuantumSpace space_from_json(const Json& j);

// {label: matrix, ...}
Json element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const Json& j);

// {label: [re, im], ...}; bare numbers are accepted on input.
Json central_to_json(const CentralElement& x);
CentralElement central_from_json(const Json& j);

// {"beta:alpha": matrix, ...}
Json ts_to_json(const TwoSidedElement& p);
TwoSidedElement ts_from_json(const Json& j);

// {"space": ..., "choi": ...}
Json adjacency_to_json(const AdjacencyMap& a);
AdjacencyMap adjacency_from_json(const Json& j, double tol = 1e-9);

// {"space": ..., "parts": {"alpha:beta": [matrix, ...]}}; the space member is
// optional on input when a space is supplied separately.
Json bimodule_to_json(const QuantumSpace& s, const Bimodule& v);
Bimodule bimodule_parts_from_json(const Json& j);

// Descriptor -> fusion dual. Kinds: su2, su_q2 {"q"}, free_abelian {"rank"},
// free_group {"k"}, ofplus {"n","delta"?}, ufplus {"n","delta"?},
// classical_group {"name" | "group"}, dual_of_group {"name"}, or a custom
// fusion table {"labels", "trivial", "conj", "fusion", "dims", "rho"?}.
DualPtr dual_from_json(const Json& j);

// {"elems": [...], "mul": [[...]]}; identity and inverses are derived and the
// table is validated as a group law.
FiniteGroup group_from_json(const Json& j);

// Built-in finite dual pairs by name: "s3", "d4", "c<n>".
FiniteDualPair dual_pair_by_name(const std::string& name);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qgraph
