#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "csdp/admm.hpp"
#include "csdp/errors.hpp"
#include "csdp/factor_width.hpp"
#include "csdp/graph.hpp"
#include "csdp/kernels.hpp"
#include "csdp/polynomial.hpp"
#include "csdp/sdp.hpp"
#include "csdp/sos.hpp"

using json = nlohmann::ordered_json;
using namespace csdp;

namespace {

enum Exit { kOk = 0, kNotSolved = 1, kUsage = 2 };

struct RunConfig {
  std::string format = "human";
  int threads = 0;
  std::uint64_t seed = 0;
  AdmmSettings admm;
  double eps = 1e-5;
  std::string heuristic = "min-degree";

  std::string input, out, iter_log;
  // solve
  std::string mode = "domain";
  // convert
  bool keep_redundant = false;
  // sos
  std::string strategy = "newton";
  int level = 0;
  bool no_newton = false;
  // fw
  std::string partition, side = "upper";
  // gen
  std::string kind;
  int n = 8, m = 4, l = 4, max_block = 3;
  double density = 0.5, coupling = 0.3;
  std::string shape = "chain";
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("csdp");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("CSDP_LOG");
  std::string lvl = env ? env : "error";
  if (lvl == "debug") spdlog::set_level(spdlog::level::debug);
  else if (lvl == "info") spdlog::set_level(spdlog::level::info);
  else spdlog::set_level(spdlog::level::err);
}

json cliques_json(const CliqueSet& cs) {
  json a = json::array();
  for (const auto& c : cs) {
    json v = json::array();
    for (int i : c) v.push_back(i + 1);
    a.push_back(v);
  }
  return a;
}

// {1,2} {2,3} for human output, 1 2;2 3 for csv
std::string scalar_text(const json& v, bool csv) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8g", v.get<double>());
    return buf;
  }
  if (!v.is_array()) return v.dump();
  std::string s;
  bool nested = !v.empty() && v[0].is_array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += nested ? (csv ? ";" : " ") : (csv ? " " : ",");
    if (nested && !csv) s += "{" + scalar_text(v[i], csv) + "}";
    else s += scalar_text(v[i], csv);
  }
  return s;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) flatten(*it, key, out);
    else out.emplace_back(key, *it);
  }
}

void emit(const json& j, const std::string& format) {
  if (format == "json") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, json>> rows;
  flatten(j, "", rows);
  if (format == "csv") std::cout << "key,value\n";
  for (const auto& [k, v] : rows) {
    if (format == "csv") std::cout << k << ',' << scalar_text(v, true) << '\n';
    else std::cout << k << ": " << scalar_text(v, false) << '\n';
  }
}

json tree_json(const CliqueTree& t) {
  json parents = json::array();
  std::size_t max_sep = 0;
  for (std::size_t k = 0; k < t.cliques.size(); ++k) {
    parents.push_back(t.parent[k] < 0 ? 0 : t.parent[k] + 1);
    max_sep = std::max(max_sep, t.separators[k].size());
  }
  std::size_t max_clique = 0;
  for (const auto& c : t.cliques) max_clique = std::max(max_clique, c.size());
  return {{"parents", parents}, {"roots", t.roots.size()}, {"max_clique", max_clique}, {"max_separator", max_sep}};
}

int cmd_analyze(const RunConfig& c) {
  Graph g = read_graph_file(c.input);
  spdlog::info("graph: {} vertices, {} edges", g.n(), g.num_edges());
  bool chordal = is_chordal(g);
  Graph h = chordal ? g : chordal_extension(g, parse_heuristic(c.heuristic));
  CliqueSet cs = maximal_cliques(h);
  std::sort(cs.begin(), cs.end());
  json j{{"command", "analyze"}, {"n", g.n()}, {"edges", g.num_edges()}, {"chordal", chordal},
         {"fill_edges", h.num_edges() - g.num_edges()}, {"cliques", cliques_json(cs)},
         {"tree", tree_json(clique_tree(cs))}};
  emit(j, c.format);
  return kOk;
}

SdpProblem load_sdpa(const std::string& path) {
  SdpProblem p = sdpa_read_file(path);
  spdlog::info("sdpa: n = {}, m = {}", p.n, p.m());
  return p;
}

int cmd_decompose(const RunConfig& c) {
  SdpProblem p = load_sdpa(c.input);
  auto ext = parse_heuristic(c.heuristic);
  SparsityPattern agg = aggregate_pattern(p);
  DecomposedSdp d = domain_decompose(p, ext);
  json j{{"command", "decompose"}, {"n", p.n}, {"m", p.m()},
         {"aggregate_edges", agg.edges().size()}, {"chordal", is_chordal(agg.graph())},
         {"fill_edges", d.pattern.edges().size() - agg.edges().size()}, {"cliques", cliques_json(d.cliques)},
         {"tree", tree_json(d.tree)}};
  if (!c.out.empty()) {
    ConvertedSdp cv = clique_tree_convert(p, ext, !c.keep_redundant);
    sdpa_write_file(c.out, cv.data);
    j["converted"] = {{"path", c.out}, {"rows", cv.data.m()}, {"consistency_rows", cv.consistency_rows.size()}};
  }
  emit(j, c.format);
  return kOk;
}

int cmd_solve(const RunConfig& c) {
  SdpProblem p = load_sdpa(c.input);
  DecomposedSdp d = c.mode == "range" ? range_decompose(p, parse_heuristic(c.heuristic))
                                      : domain_decompose(p, parse_heuristic(c.heuristic));
  spdlog::info("{} cliques, largest {}", d.cliques.size(), tree_json(d.tree)["max_clique"].get<int>());
  AdmmSettings s = c.admm;
  std::ofstream log;
  if (!c.iter_log.empty()) {
    log.open(c.iter_log);
    if (!log) throw Error("cannot open " + c.iter_log);
    s.log = &log;
  }
  Solution sol = solve(d, s);
  spdlog::debug("final rho {}", sol.rho);
  json j{{"command", "solve"}, {"mode", c.mode}, {"status", to_string(sol.status)}, {"objective", sol.objective},
         {"primal_res", sol.primal_res}, {"dual_res", sol.dual_res}, {"iterations", sol.state.iter},
         {"cliques", d.cliques.size()}};
  emit(j, c.format);
  return sol.status == SolveStatus::Solved ? kOk : kNotSolved;
}

int cmd_convert(const RunConfig& c) {
  SdpProblem p = load_sdpa(c.input);
  ConvertedSdp cv = clique_tree_convert(p, parse_heuristic(c.heuristic), !c.keep_redundant);
  sdpa_write_file(c.out, cv.data);
  json j{{"command", "convert"}, {"out", c.out}, {"cone_sizes", cv.cone_sizes}, {"rows", cv.data.m()},
         {"original_rows", cv.original_rows}, {"consistency_rows", cv.consistency_rows.size()}};
  emit(j, c.format);
  return kOk;
}

int cmd_sos(const RunConfig& c) {
  Polynomial f = read_polynomial_file(c.input);
  spdlog::info("polynomial: {} variables, {} terms, degree {}", f.n(), f.terms().size(), f.degree());
  SosOptions o;
  o.strategy = parse_strategy(c.strategy);
  o.level = c.level;
  o.use_newton = !c.no_newton;
  o.solver.exec = c.admm.exec;
  SosResult r = sos_check(f, o);
  // blocks in graded order of their leading monomial (1, x1, x2, …, x1², x1x2, …)
  auto graded_less = [](const Exponent& a, const Exponent& b) {
    return degree(a) != degree(b) ? degree(a) < degree(b) : a > b;
  };
  std::vector<std::vector<Exponent>> blocks;
  for (const auto& cl : r.cliques) {
    std::vector<Exponent> mon;
    for (int i : cl) mon.push_back(r.basis[i]);
    std::sort(mon.begin(), mon.end(), graded_less);
    blocks.push_back(mon);
  }
  std::sort(blocks.begin(), blocks.end(), [&](const auto& a, const auto& b) { return graded_less(a[0], b[0]); });
  json sizes = json::array(), mons = json::array();
  for (const auto& b : blocks) {
    sizes.push_back(b.size());
    json m = json::array();
    for (const auto& e : b) m.push_back(monomial_string(e));
    mons.push_back(m);
  }
  json j{{"command", "sos"}, {"strategy", to_string(o.strategy)}, {"status", to_string(r.status)},
         {"basis_size", r.basis.size()}, {"levels", r.levels}, {"level", r.level},
         {"block_sizes", sizes}, {"blocks", mons}, {"residual", r.residual}, {"method", r.solve.method}};
  emit(j, c.format);
  return r.status == SosStatus::Feasible ? kOk : kNotSolved;
}

int cmd_fw(const RunConfig& c) {
  SdpProblem p = load_sdpa(c.input);
  Partition part = c.partition.empty() ? Partition::unit(p.n) : Partition::parse(c.partition);
  if (part.n() != p.n) throw DimensionMismatch("partition covers " + std::to_string(part.n()) + " indices, problem has " +
                                               std::to_string(p.n));
  BoundSide side = c.side == "lower" ? BoundSide::Lower : BoundSide::Upper;
  FwStructure fw = fw_cliques(part);
  BoundProgram bp = fw_bound_program(p, fw, side);
  Solution sol = solve_domain(domain_decompose(bp.program), c.admm);
  json j{{"command", "fw"}, {"side", c.side}, {"partition", part.sizes()}, {"cliques", fw.cliques.size()},
         {"status", to_string(sol.status)}, {"bound", sol.objective}, {"iterations", sol.state.iter}};
  emit(j, c.format);
  return sol.status == SolveStatus::Solved ? kOk : kNotSolved;
}

int cmd_gen(const RunConfig& c) {
  SdpProblem p;
  if (c.kind == "maxcut") {
    p = gen_maxcut(random_maxcut_weights(c.n, c.density, c.seed));
  } else if (c.kind == "lyapunov") {
    NetworkShape shape = c.shape == "star" ? NetworkShape::Star : c.shape == "cycle" ? NetworkShape::Cycle : NetworkShape::Chain;
    NetworkInstance net = random_network(shape, c.l, c.max_block, c.coupling, c.seed);
    p = gen_lyapunov(net.blocks, net.network, net.sizes);
  } else {
    p = qcqp_relax(random_qcqp(c.n, c.m, c.seed));
  }
  if (c.out.empty() || c.out == "-") {
    sdpa_write(std::cout, p);
    return kOk;
  }
  sdpa_write_file(c.out, p);
  emit(json{{"command", "gen"}, {"kind", c.kind}, {"seed", c.seed}, {"n", p.n}, {"m", p.m()}, {"out", c.out}}, c.format);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  RunConfig c;
  CLI::App app{"csdp: chordal decomposition, first-order SDP and sparse SOS tools"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "settings file with key=value lines; flags win");
  app.add_option("--format", c.format)->check(CLI::IsMember({"human", "json", "csv"}));
  app.add_option("--threads", c.threads, "OpenMP threads, 0 = default")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed);
  app.add_option("--heuristic", c.heuristic, "chordal extension")
      ->check(CLI::IsMember({"mcs-fill", "min-degree", "complete-components"}));
  app.add_option("--rho", c.admm.rho)->check(CLI::PositiveNumber);
  app.add_option("--eps", c.eps, "absolute and relative ADMM tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-iter", c.admm.max_iter)->check(CLI::PositiveNumber);
  app.add_flag("--adaptive-rho", c.admm.adaptive_rho);
  bool serial = false;
  app.add_flag("--serial", serial, "serial per-clique kernels");

  auto* analyze = app.add_subcommand("analyze", "chordality, cliques and clique tree of a graph");
  analyze->add_option("graph", c.input)->required()->check(CLI::ExistingFile);

  auto* decompose = app.add_subcommand("decompose", "clique report for an SDPA problem");
  decompose->add_option("sdpa", c.input)->required()->check(CLI::ExistingFile);
  decompose->add_option("--out", c.out, "also write the clique-tree converted problem");
  decompose->add_flag("--keep-redundant", c.keep_redundant);

  auto* solve_cmd = app.add_subcommand("solve", "decomposed ADMM solve");
  solve_cmd->add_option("sdpa", c.input)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--mode", c.mode)->check(CLI::IsMember({"domain", "range"}));
  solve_cmd->add_option("--log", c.iter_log, "CSV iteration log");

  auto* convert = app.add_subcommand("convert", "clique-tree conversion to standard form");
  convert->add_option("sdpa", c.input)->required()->check(CLI::ExistingFile);
  convert->add_option("--out", c.out)->required();
  convert->add_flag("--keep-redundant", c.keep_redundant);

  auto* sos = app.add_subcommand("sos", "SOS feasibility of a polynomial");
  sos->add_option("poly", c.input)->required()->check(CLI::ExistingFile);
  sos->add_option("--strategy", c.strategy)
      ->check(CLI::IsMember({"dense", "newton", "csp", "tssos", "chordal-tssos", "cs-tssos"}));
  sos->add_option("--level", c.level, "hierarchy step, 0 = stabilized")->check(CLI::NonNegativeNumber);
  sos->add_flag("--no-newton", c.no_newton);

  auto* fw = app.add_subcommand("fw", "block factor-width bound");
  fw->add_option("sdpa", c.input)->required()->check(CLI::ExistingFile);
  fw->add_option("--partition", c.partition, "block sizes, e.g. 2,1,1");
  fw->add_option("--side", c.side)->check(CLI::IsMember({"upper", "lower"}));

  auto* gen = app.add_subcommand("gen", "write a generated problem in SDPA format");
  gen->add_option("kind", c.kind)->required()->check(CLI::IsMember({"maxcut", "lyapunov", "qcqp"}));
  gen->add_option("--out", c.out, "output path, '-' for stdout");
  gen->add_option("--n", c.n)->check(CLI::PositiveNumber);
  gen->add_option("--m", c.m)->check(CLI::NonNegativeNumber);
  gen->add_option("--density", c.density)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--l", c.l, "network subsystems")->check(CLI::PositiveNumber);
  gen->add_option("--max-block", c.max_block)->check(CLI::PositiveNumber);
  gen->add_option("--coupling", c.coupling);
  gen->add_option("--shape", c.shape)->check(CLI::IsMember({"star", "chain", "cycle"}));

  for (auto* s : app.get_subcommands({})) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  c.admm.eps_abs = c.admm.eps_rel = c.eps;
  c.admm.threads = c.threads;
  c.admm.exec = serial ? Exec::Serial : Exec::Parallel;
  if (c.threads > 0) set_num_threads(c.threads);

  try {
    c.admm.validate();
    CLI::App* sub = app.get_subcommands().front();
    spdlog::debug("command {}", sub->get_name());
    if (sub == analyze) return cmd_analyze(c);
    if (sub == decompose) return cmd_decompose(c);
    if (sub == solve_cmd) return cmd_solve(c);
    if (sub == convert) return cmd_convert(c);
    if (sub == sos) return cmd_sos(c);
    if (sub == fw) return cmd_fw(c);
    return cmd_gen(c);
  } catch (const std::exception& e) {
    spdlog::debug("exception: {}", e.what());
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
