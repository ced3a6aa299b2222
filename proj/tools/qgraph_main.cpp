#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgraph/json_io.hpp"

using namespace qgraph;

namespace {

struct RunConfig {
  double tol = 1e-9;
  long long seed = 0;
  int horizon = 10;
  double eps = 0.1;
  double q = 1.0;
  std::string dual_kind;
  std::string group_name;
  std::vector<std::string> gens;
  std::vector<std::string> gens2;
  std::vector<std::string> window;
  std::string out_path;
  std::string csv_path;
  std::string format = "csv";
  std::string convert_to;
  bool inverse = false;
  int dense_cap = 2000;
};

void emit(const RunConfig& cfg, const Json& doc) {
  if (cfg.out_path.empty())
    std::cout << doc.dump(2) << "\n";
  else
    write_json_file(cfg.out_path, doc);
}

Json report_base(const RunConfig& cfg, const std::string& command) {
  return Json{{"command", command},
              {"tolerance", cfg.tol},
              {"seed", cfg.seed},
              {"checks", Json::array()}};
}

void add_check(Json& report, const std::string& name, bool pass, double deviation) {
  report["checks"].push_back({{"name", name}, {"pass", pass}, {"deviation", deviation}});
}

bool all_pass(const Json& report) {
  return std::all_of(report["checks"].begin(), report["checks"].end(),
                     [](const Json& c) { return c["pass"].get<bool>(); });
}

DualPtr make_dual(const RunConfig& cfg) {
  if (cfg.dual_kind.empty()) throw std::invalid_argument("this command needs --dual");
  std::ifstream probe(cfg.dual_kind);
  if (probe.good()) return dual_from_json(read_json_file(cfg.dual_kind));
  Json desc{{"kind", cfg.dual_kind}};
  if (cfg.dual_kind == "su_q2") desc["q"] = cfg.q;
  if (cfg.dual_kind == "z") desc = {{"kind", "free_abelian"}, {"rank", 1}};
  if (cfg.dual_kind == "z2") desc = {{"kind", "free_abelian"}, {"rank", 2}};
  if (cfg.dual_kind == "f2") desc = {{"kind", "free_group"}, {"k", 2}};
  if (!cfg.group_name.empty()) desc["name"] = cfg.group_name;
  return dual_from_json(desc);
}

CentralElement indicator_of(const std::vector<std::string>& labels) {
  CentralElement p;
  for (const auto& l : labels) p[l] = 1.0;
  return p;
}

CentralElement generator_of(const FusionDual& d, const RunConfig& cfg,
                            const std::vector<std::string>& gens) {
  CentralElement p = indicator_of(gens.empty() ? d.default_generators() : gens);
  auto rep = validate_generator(d, p, cfg.tol);
  if (!rep.valid()) {
    std::string msg = "generator rejected:";
    for (const auto& v : rep.violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
  }
  return p;
}

// Window labels in shell order: every ball is enumerated from the inside out,
// so the space's block order matches radial truncation.
std::vector<Label> window_labels(const FusionDual& d, const CentralElement& p, int horizon) {
  auto shells = balls(d, central_support(p), horizon);
  std::vector<Label> out;
  SupportSet seen;
  for (const auto& shell : shells)
    for (const auto& l : shell)
      if (seen.insert(l).second) out.push_back(l);
  return out;
}

int cmd_space_check(const RunConfig& cfg, const std::string& path) {
  QuantumSpace s = space_from_json(read_json_file(path));
  DeltaFormReport rep = check_delta_form(s, cfg.tol);
  Json report = report_base(cfg, "space check");
  add_check(report, "mm_star_identity", rep.pass, rep.max_deviation);
  Json dsq = Json::object();
  for (const auto& [label, v] : rep.delta_sq) dsq[label] = v;
  report["delta_sq"] = dsq;
  emit(cfg, report);
  return rep.pass ? 0 : 1;
}

int cmd_adjacency_verify(const RunConfig& cfg, const std::string& path) {
  AdjacencyMap a = adjacency_from_json(read_json_file(path), cfg.tol);
  Classification c = classify(a, cfg.tol);
  Json report = report_base(cfg, "adjacency verify");
  add_check(report, "schur_idempotent", c.schur_idempotent, c.dev_schur);
  add_check(report, "real", c.real, c.dev_real);
  add_check(report, "completely_positive", c.completely_positive,
            std::max(0.0, -c.min_choi_eig));
  add_check(report, "kms_symmetric", c.kms_symmetric, c.dev_kms);
  add_check(report, "gns_symmetric", c.gns_symmetric, c.dev_gns);
  add_check(report, "loop_free", c.loop_free, c.dev_loop);
  report["quantum_adjacency"] = c.quantum_adjacency();
  emit(cfg, report);
  return c.quantum_adjacency() ? 0 : 1;
}

int cmd_adjacency_convert(const RunConfig& cfg, const std::string& path) {
  AdjacencyMap a = adjacency_from_json(read_json_file(path), cfg.tol);
  Json doc;
  if (cfg.convert_to == "choi") {
    doc = adjacency_to_json(a);
  } else if (cfg.convert_to == "map") {
    Json maps = Json::object();
    for (const auto& [key, m] : a.maps()) maps[key.first + ":" + key.second] = mat_to_json(m);
    doc = Json{{"space", space_to_json(a.space())}, {"maps", maps}};
  } else if (cfg.convert_to == "bimodule") {
    doc = bimodule_to_json(a.space(), bimodule_from_adjacency(a));
  } else {
    throw std::invalid_argument("--to must be choi, map, or bimodule");
  }
  emit(cfg, doc);
  return 0;
}

int cmd_fourier(const RunConfig& cfg, const std::string& path) {
  FiniteDualPair pr = dual_pair_by_name(cfg.group_name.empty() ? "s3" : cfg.group_name);
  Json in = read_json_file(path);
  if (cfg.inverse) {
    if (!in.contains("values")) throw std::invalid_argument("inverse input needs \"values\"");
    Vec f(in["values"].size());
    for (std::size_t i = 0; i < in["values"].size(); ++i) {
      const Json& v = in["values"][i];
      f(int(i)) = v.is_number() ? Cx(v.get<double>(), 0.0)
                                : Cx(v[0].get<double>(), v[1].get<double>());
    }
    emit(cfg, element_to_json(inverse_fourier(pr, f)));
    return 0;
  }
  Vec f = fourier(pr, element_from_json(in));
  Json elems = Json::array(), values = Json::array();
  for (const auto& e : pr.data.group.elems) elems.push_back(e);
  for (int i = 0; i < f.size(); ++i) values.push_back({f(i).real(), f(i).imag()});
  emit(cfg, Json{{"elems", elems}, {"values", values}});
  return 0;
}

int cmd_convolve(const RunConfig& cfg, const std::string& p_path, const std::string& x_path) {
  AlgebraElement p = element_from_json(read_json_file(p_path));
  AlgebraElement x = element_from_json(read_json_file(x_path));
  if (!cfg.group_name.empty()) {
    FiniteDualPair pr = dual_pair_by_name(cfg.group_name);
    emit(cfg, element_to_json(convolve(*pr.dual, pr.space, p, x)));
    return 0;
  }
  DualPtr d = make_dual(cfg);
  std::vector<Label> window = cfg.window;
  if (window.empty()) {
    SupportSet supp;
    for (const auto& [l, m] : p.blocks) supp.insert(l);
    for (const auto& [l, m] : x.blocks) supp.insert(l);
    SupportSet targets = fuse_support(*d, supp, supp);
    window.assign(targets.begin(), targets.end());
  }
  emit(cfg, element_to_json(convolve(*d, dual_space(*d, window), p, x)));
  return 0;
}

int cmd_symmetry(const RunConfig& cfg, const std::string& path) {
  Json report = report_base(cfg, "symmetry");
  SymmetryReport rep;
  if (!cfg.group_name.empty()) {
    FiniteDualPair pr = dual_pair_by_name(cfg.group_name);
    rep = symmetry_report(pr, element_from_json(read_json_file(path)), cfg.tol);
  } else {
    DualPtr d = make_dual(cfg);
    rep = symmetry_report_central(*d, central_from_json(read_json_file(path)), cfg.tol);
  }
  add_check(report, "gns_symmetric", rep.gns, rep.dev_s);
  add_check(report, "kms_symmetric", rep.kms, rep.dev_r);
  emit(cfg, report);
  return 0;
}

int cmd_cayley_build(const RunConfig& cfg) {
  DualPtr d = make_dual(cfg);
  CentralElement p = generator_of(*d, cfg, cfg.gens);
  auto window = cfg.window.empty() ? window_labels(*d, p, cfg.horizon) : cfg.window;
  emit(cfg, adjacency_to_json(cayley_adjacency(*d, p, window)));
  return 0;
}

int cmd_cayley_growth(const RunConfig& cfg) {
  DualPtr d = make_dual(cfg);
  CentralElement p = generator_of(*d, cfg, cfg.gens);
  GrowthSeries g = growth(*d, p, cfg.horizon);
  GrowthVerdict verdict = growth_verdict(g.a);

  std::ostringstream csv;
  csv << "n,ball_size_labels,a_n,a_n_pow_inv_n\n";
  for (std::size_t n = 0; n < g.a.size(); ++n) {
    csv << n << "," << g.balls[n].size() << "," << g.a[n] << ",";
    if (n > 0) csv << std::pow(g.a[n], 1.0 / double(n));
    csv << "\n";
  }

  if (cfg.format == "json") {
    Json report = report_base(cfg, "cayley growth");
    report["verdict"] = to_string(verdict);
    Json series = Json::array();
    for (std::size_t n = 0; n < g.a.size(); ++n)
      series.push_back({{"n", n},
                        {"ball_size_labels", g.balls[n].size()},
                        {"a_n", g.a[n]},
                        {"a_classical", g.a_classical[n]}});
    report["series"] = series;
    emit(cfg, report);
  } else if (cfg.csv_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(cfg.csv_path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + cfg.csv_path);
    out << csv.str();
  }
  return 0;
}

int cmd_cayley_folner(const RunConfig& cfg) {
  DualPtr d = make_dual(cfg);
  CentralElement p = generator_of(*d, cfg, cfg.gens);
  CentralElement mu = p;
  mu[d->trivial()] = 1.0;
  FolnerResult r = folner_check(*d, mu, cfg.eps, cfg.horizon);
  Json report = report_base(cfg, "cayley folner");
  report["found"] = r.found;
  report["radius"] = r.radius;
  report["ratio"] = r.ratio;
  add_check(report, "folner_set_found", r.found, std::max(0.0, r.ratio - 1.0));
  emit(cfg, report);
  return 0;
}

int cmd_cayley_bilipschitz(const RunConfig& cfg) {
  DualPtr d = make_dual(cfg);
  CentralElement p1 = generator_of(*d, cfg, cfg.gens);
  if (cfg.gens2.empty())
    throw std::invalid_argument("bilipschitz needs a second generator (--gen2)");
  CentralElement p2 = generator_of(*d, cfg, cfg.gens2);
  BilipschitzResult r = bilipschitz_constant(*d, p1, p2, cfg.horizon);
  Json report = report_base(cfg, "cayley bilipschitz");
  report["found"] = r.found;
  report["m"] = r.m;
  add_check(report, "mutual_inclusion_within_horizon", r.found, r.found ? 0.0 : 1.0);
  emit(cfg, report);
  return 0;
}

int cmd_cayley_walk(const RunConfig& cfg) {
  DualPtr d = make_dual(cfg);
  CentralElement p = generator_of(*d, cfg, cfg.gens);
  WalkReport r = central_walk_operator(*d, p, cfg.horizon, cfg.dense_cap);
  Json report = report_base(cfg, "cayley walk");
  report["method"] = r.method;
  report["spectral_radius"] = r.spectral_radius;
  report["degree"] = r.degree;
  report["ratio"] = r.ratio;
  report["states"] = r.states;
  emit(cfg, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string in_path, in_path2;
  std::function<int()> action;

  CLI::App app{"quantum graphs on direct sums of matrix algebras"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_option("--tol", cfg.tol, "verification tolerance")
      ->envname("QGRAPH_TOL")
      ->check(CLI::Range(1e-14, 1e-3));
  app.add_option("--seed", cfg.seed, "seed recorded in reports");
  app.add_option("-o,--out", cfg.out_path, "write the JSON result here instead of stdout");

  auto* space = app.add_subcommand("space", "quantum space utilities");
  auto* space_check = space->add_subcommand("check", "verify mm* = Id and report per-block constants");
  space_check->add_option("input", in_path, "space JSON file")->required();
  space_check->callback([&] { action = [&] { return cmd_space_check(cfg, in_path); }; });

  auto* adj = app.add_subcommand("adjacency", "adjacency map utilities");
  auto* adj_verify = adj->add_subcommand("verify", "classify a stored map and check the quantum adjacency laws");
  adj_verify->add_option("input", in_path, "adjacency JSON file")->required();
  adj_verify->callback([&] { action = [&] { return cmd_adjacency_verify(cfg, in_path); }; });
  auto* adj_convert = adj->add_subcommand("convert", "re-express a map as choi, block maps, or a bimodule");
  adj_convert->add_option("input", in_path, "adjacency JSON file")->required();
  adj_convert->add_option("--to", cfg.convert_to, "choi | map | bimodule")->required();
  adj_convert->callback([&] { action = [&] { return cmd_adjacency_convert(cfg, in_path); }; });

  auto* four = app.add_subcommand("fourier", "Fourier transform on a finite dual pair");
  four->add_option("input", in_path, "element JSON (or {\"values\": ...} with --inverse)")->required();
  four->add_option("--group", cfg.group_name, "s3 | d4 | c<n>");
  four->add_flag("--inverse", cfg.inverse, "transform a function on the group back");
  four->callback([&] { action = [&] { return cmd_fourier(cfg, in_path); }; });

  auto* conv = app.add_subcommand("convolve", "p * x through intertwiners or a finite dual pair");
  conv->add_option("p", in_path, "left element JSON")->required();
  conv->add_option("x", in_path2, "right element JSON")->required();
  conv->add_option("--group", cfg.group_name, "use a finite dual pair: s3 | d4 | c<n>");
  conv->add_option("--dual", cfg.dual_kind, "dual kind or descriptor file");
  conv->add_option("--q", cfg.q, "deformation for su_q2");
  conv->add_option("--window", cfg.window, "output block labels (repeatable)");
  conv->callback([&] { action = [&] { return cmd_convolve(cfg, in_path, in_path2); }; });

  auto* sym = app.add_subcommand("symmetry", "GNS/KMS symmetry of convolution by p");
  sym->add_option("p", in_path, "central element JSON (matrix element with --group)")->required();
  sym->add_option("--group", cfg.group_name, "finite dual pair: s3 | d4 | c<n>");
  sym->add_option("--dual", cfg.dual_kind, "dual kind or descriptor file");
  sym->add_option("--q", cfg.q, "deformation for su_q2");
  sym->callback([&] { action = [&] { return cmd_symmetry(cfg, in_path); }; });

  auto* cay = app.add_subcommand("cayley", "Cayley graph analyses on a fusion dual");
  cay->add_option("--dual", cfg.dual_kind, "su2 | su_q2 | z | z2 | f2 | free_abelian | free_group | ofplus | ufplus | classical_group | dual_of_group | descriptor file")
      ->required();
  cay->add_option("--q", cfg.q, "deformation for su_q2");
  cay->add_option("--name", cfg.group_name, "group name for classical_group / dual_of_group");
  cay->add_option("--gen", cfg.gens, "generating label (repeat for a set; defaults to the dual's)");
  cay->add_option("--horizon", cfg.horizon, "ball radius cap")->check(CLI::Range(0, 1000));

  auto* cay_build = cay->add_subcommand("build", "adjacency map of the Cayley graph on a ball window");
  cay_build->add_option("--window", cfg.window, "window block labels (repeatable; default ball of --horizon)");
  cay_build->callback([&] { action = [&] { return cmd_cayley_build(cfg); }; });

  auto* cay_growth = cay->add_subcommand("growth", "ball masses a_n (CSV by default)");
  cay_growth->add_option("--csv", cfg.csv_path, "write the CSV here instead of stdout");
  cay_growth->add_option("--format", cfg.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cay_growth->callback([&] { action = [&] { return cmd_cayley_growth(cfg); }; });

  auto* cay_folner = cay->add_subcommand("folner", "search for an almost-invariant ball");
  cay_folner->add_option("--eps", cfg.eps, "growth slack (1+eps)")->check(CLI::PositiveNumber);
  cay_folner->callback([&] { action = [&] { return cmd_cayley_folner(cfg); }; });

  auto* cay_bilip = cay->add_subcommand("bilipschitz", "metric comparison constant of two generating sets");
  cay_bilip->add_option("--gen2", cfg.gens2, "second generating label (repeatable)");
  cay_bilip->callback([&] { action = [&] { return cmd_cayley_bilipschitz(cfg); }; });

  auto* cay_walk = cay->add_subcommand("walk", "spectral radius / degree of the central walk operator");
  cay_walk->add_option("--dense-cap", cfg.dense_cap, "max labels for the dense path");
  cay_walk->callback([&] { action = [&] { return cmd_cayley_walk(cfg); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!action) {
    std::cerr << app.help();
    return 2;
  }
  try {
    return action();
  } catch (const Json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
