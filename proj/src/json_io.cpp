#include "qgraph/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgraph {

namespace {

Cx cx_from_json(const Json& j) {
  if (j.is_number()) return Cx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cx(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("complex entry must be a number or [re, im]: " + j.dump());
}

Json cx_to_json(Cx z) { return Json::array({z.real(), z.imag()}); }

std::pair<std::string, std::string> split_key(const std::string& key) {
  auto pos = key.find(':');
  if (pos == std::string::npos)
    throw std::invalid_argument("block-pair key must look like \"beta:alpha\": " + key);
  return {key.substr(0, pos), key.substr(pos + 1)};
}

}  // namespace

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(cx_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  std::size_t cols = 0;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument("matrix row must be an array");
    if (cols == 0) cols = row.size();
    if (row.size() != cols || cols == 0)
      throw std::invalid_argument("matrix rows must be nonempty and of equal length");
  }
  Mat m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = cx_from_json(j[i][k]);
  return m;
}

Json space_to_json(const QuantumSpace& s) {
  Json blocks = Json::array();
  for (const auto& b : s.blocks())
    blocks.push_back({{"label", b.label}, {"dim", b.dim}, {"rho", mat_to_json(b.rho)}});
  return Json{{"blocks", blocks}};
}

QuantumSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw std::invalid_argument("space must be {\"blocks\": [...]}");
  std::vector<std::pair<std::string, Mat>> blocks;
  for (const auto& bj : j["blocks"]) {
    if (!bj.contains("label") || !bj.contains("rho"))
      throw std::invalid_argument("space block needs \"label\" and \"rho\"");
    Mat rho = mat_from_json(bj["rho"]);
    if (bj.contains("dim") && bj["dim"].get<long long>() != rho.rows())
      throw std::invalid_argument("block " + bj["label"].get<std::string>() +
                                  ": dim disagrees with the rho matrix");
    blocks.push_back({bj["label"].get<std::string>(), std::move(rho)});
  }
  return QuantumSpace::make(std::move(blocks));
}

Json element_to_json(const AlgebraElement& x) {
  Json out = Json::object();
  for (const auto& [label, m] : x.blocks) out[label] = mat_to_json(m);
  return out;
}

AlgebraElement element_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("element must be {label: matrix}");
  AlgebraElement x;
  for (const auto& [label, mj] : j.items()) x.blocks[label] = mat_from_json(mj);
  return x;
}

Json central_to_json(const CentralElement& x) {
  Json out = Json::object();
  for (const auto& [label, c] : x) out[label] = cx_to_json(c);
  return out;
}

CentralElement central_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("central element must be {label: coefficient}");
  CentralElement x;
  for (const auto& [label, cj] : j.items()) x[label] = cx_from_json(cj);
  return x;
}

Json ts_to_json(const TwoSidedElement& p) {
  Json out = Json::object();
  for (const auto& [key, m] : p.blocks) out[key.first + ":" + key.second] = mat_to_json(m);
  return out;
}

TwoSidedElement ts_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("two-sided element must be {\"beta:alpha\": matrix}");
  TwoSidedElement p;
  for (const auto& [key, mj] : j.items()) p.blocks[split_key(key)] = mat_from_json(mj);
  return p;
}

Json adjacency_to_json(const AdjacencyMap& a) {
  return Json{{"space", space_to_json(a.space())}, {"choi", ts_to_json(a.choi())}};
}

AdjacencyMap adjacency_from_json(const Json& j, double tol) {
  if (!j.is_object() || !j.contains("space") || !j.contains("choi"))
    throw std::invalid_argument("adjacency must be {\"space\": ..., \"choi\": ...}");
  return AdjacencyMap::from_choi(space_from_json(j["space"]), ts_from_json(j["choi"]), tol);
}

Json bimodule_to_json(const QuantumSpace& s, const Bimodule& v) {
  Json parts = Json::object();
  for (const auto& [key, vecs] : v.parts) {
    Json list = Json::array();
    for (const auto& m : vecs) list.push_back(mat_to_json(m));
    parts[key.first + ":" + key.second] = std::move(list);
  }
  return Json{{"space", space_to_json(s)}, {"parts", parts}};
}

Bimodule bimodule_parts_from_json(const Json& j) {
  const Json& parts = j.is_object() && j.contains("parts") ? j["parts"] : j;
  if (!parts.is_object())
    throw std::invalid_argument("bimodule must be {\"parts\": {\"alpha:beta\": [matrix, ...]}}");
  Bimodule v;
  for (const auto& [key, list] : parts.items()) {
    if (!list.is_array()) throw std::invalid_argument("bimodule part must be a list of matrices");
    auto& vecs = v.parts[split_key(key)];
    for (const auto& mj : list) vecs.push_back(mat_from_json(mj));
  }
  return v;
}

FiniteGroup group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("elems") || !j.contains("mul"))
    throw std::invalid_argument("group must be {\"elems\": [...], \"mul\": [[...]]}");
  FiniteGroup g;
  for (const auto& e : j["elems"]) g.elems.push_back(e.get<std::string>());
  int n = int(g.elems.size());
  if (n == 0) throw std::invalid_argument("group must have at least one element");
  if (!j["mul"].is_array() || int(j["mul"].size()) != n)
    throw std::invalid_argument("mul must be an n x n table");
  for (const auto& row : j["mul"]) {
    if (!row.is_array() || int(row.size()) != n)
      throw std::invalid_argument("mul must be an n x n table");
    std::vector<int> r;
    for (const auto& v : row) {
      int k = v.get<int>();
      if (k < 0 || k >= n) throw std::invalid_argument("mul entries must index elems");
      r.push_back(k);
    }
    g.mul.push_back(std::move(r));
  }
  g.identity = -1;
  for (int e = 0; e < n; ++e) {
    bool id = true;
    for (int a = 0; a < n; ++a) id = id && g.mul[e][a] == a && g.mul[a][e] == a;
    if (id) {
      g.identity = e;
      break;
    }
  }
  if (g.identity < 0) throw std::invalid_argument("multiplication table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]])
          throw std::invalid_argument("multiplication table is not associative");
  g.inv.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.mul[a][b] == g.identity) g.inv[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inv[a] < 0) throw std::invalid_argument("element without inverse: " + g.elems[a]);
  return g;
}

namespace {

TableDualData table_from_json(const Json& j) {
  TableDualData data;
  data.name = j.value("name", std::string("table-dual"));
  for (const auto& l : j.at("labels")) data.labels.push_back(l.get<std::string>());
  data.trivial = j.at("trivial").get<std::string>();
  if (j.contains("conj"))
    for (const auto& [a, b] : j["conj"].items()) data.conj[a] = b.get<std::string>();
  else
    for (const auto& l : data.labels) data.conj[l] = l;
  for (const auto& [key, ms] : j.at("fusion").items()) {
    auto [a, b] = split_key(key);
    FusionMultiset fm;
    for (const auto& [c, mult] : ms.items()) fm[c] = mult.get<int>();
    data.fusion[{a, b}] = std::move(fm);
  }
  for (const auto& [l, d] : j.at("dims").items()) data.dims[l] = d.get<long long>();
  if (j.contains("rho"))
    for (const auto& [l, arr] : j["rho"].items()) {
      RVec r(arr.size());
      for (std::size_t i = 0; i < arr.size(); ++i) r(int(i)) = arr[i].get<double>();
      data.rho[l] = std::move(r);
    }
  return data;
}

}  // namespace

DualPtr dual_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("dual descriptor must be a JSON object");
  if (!j.contains("kind")) {
    if (j.contains("labels")) return table_dual(table_from_json(j));
    throw std::invalid_argument("dual descriptor needs a \"kind\" (or a custom fusion table)");
  }
  std::string kind = j["kind"].get<std::string>();
  if (kind == "su2") return su2_dual(1.0);
  if (kind == "su_q2") return su2_dual(j.value("q", 1.0));
  if (kind == "free_abelian") return free_abelian_dual(j.value("rank", 1));
  if (kind == "free_group") return free_group_dual(j.value("k", 2));
  if (kind == "ofplus") return ofplus_dual(j.value("n", 2), j.value("delta", 0.0));
  if (kind == "ufplus") return ufplus_dual(j.value("n", 2), j.value("delta", 0.0));
  if (kind == "classical_group") {
    if (j.contains("group")) return classical_group_dual(group_from_json(j["group"]));
    return classical_group_dual(dual_pair_by_name(j.value("name", std::string("s3"))).data.group);
  }
  if (kind == "dual_of_group")
    return dual_pair_by_name(j.value("name", std::string("s3"))).dual;
  if (kind == "table") return table_dual(table_from_json(j));
  throw std::invalid_argument("unknown dual kind: " + kind);
}

FiniteDualPair dual_pair_by_name(const std::string& name) {
  if (name == "s3") return make_dual_pair(s3_data());
  if (name == "d4") return make_dual_pair(d4_data());
  if (name.size() > 1 && name[0] == 'c') {
    int n = std::stoi(name.substr(1));
    if (n >= 1) return make_dual_pair(cyclic_group_data(n));
  }
  throw std::invalid_argument("unknown group name: " + name + " (expected s3, d4, or c<n>)");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  return Json::parse(in);  // parse_error carries the byte position
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qgraph
