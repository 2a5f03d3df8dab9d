#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stillife/audit.hpp"
#include "stillife/be_solver.hpp"
#include "stillife/budget.hpp"
#include "stillife/dimacs.hpp"
#include "stillife/generic_hyb.hpp"
#include "stillife/hyb_solver.hpp"
#include "stillife/life.hpp"
#include "stillife/oracle.hpp"
#include "stillife/ssl_solver.hpp"
#include "stillife/wcsp_text.hpp"

namespace {

using nlohmann::json;
using namespace stillife;

constexpr int kExitOk = 0;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

// Published optima for the full problem (dead cells) and, where known,
// the number of optimal patterns and the vertically symmetric optima.
const std::map<int, std::uint64_t> kPublishedOptima = {
    {5, 9},    {6, 18},   {7, 21},   {8, 28},  {9, 38},  {10, 46}, {11, 57},
    {12, 68},  {13, 79},  {14, 92},  {15, 106}, {16, 120}, {17, 137},
    {18, 153}};
const std::map<int, std::uint64_t> kPublishedCounts = {
    {5, 1},  {6, 48},    {7, 2},  {8, 1},
    {9, 76}, {10, 3590}, {11, 73}, {12, 129126}};
const std::map<int, std::uint64_t> kPublishedSymmetric = {
    {13, 79}, {14, 92}, {15, 106}, {16, 120}, {18, 154}};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

json cost_json(CostValue c) {
  if (c.is_top()) return json("inf");
  return json(c.raw());
}

struct SolveArgs {
  std::string alg = "hyb";
  int n = 0;
  bool count = false;
  bool no_mb = false, no_ssl = false, no_sym = false;
  bool audit = false;
  std::string output = "json";
};

int cmd_solve(const SolveArgs& a) {
  SolveOptions opt;
  opt.use_mb_lb = !a.no_mb;
  opt.use_ssl_ub = !a.no_ssl;
  opt.use_symmetry = !a.no_sym;

  if (a.alg == "brute" && a.n > 5) {
    std::cerr << "brute force is capped at side 5\n";
    return kExitUsage;
  }
  if (a.count && (a.alg == "hyb")) {
    std::cerr << "--count is available for be, ssl and brute only\n";
    return kExitUsage;
  }

  auto t0 = std::chrono::steady_clock::now();
  SlSolveResult r{CostValue::top(), Pattern(std::max(a.n, 1)), std::nullopt};
  std::uint64_t planned = 0;
  if (a.alg == "be") {
    planned = be_planned_bytes(a.n, std::size_t(1) << a.n, a.count);
    r = solve_sl_be(a.n, a.count);
  } else if (a.alg == "ssl") {
    planned = be_planned_bytes(a.n, std::size_t(1) << symmetric_width(a.n),
                               a.count);
    r = solve_ssl_be(a.n, a.count);
  } else if (a.alg == "hyb") {
    planned = a.n >= 4 ? hyb_planned_bytes(a.n, opt, a.audit)
                       : be_planned_bytes(a.n, std::size_t(1) << a.n, false);
    r = solve_sl_hyb(a.n, opt);
  } else {
    oracle::SlBruteResult b = oracle::brute_force_sl(a.n);
    r.optimum = b.optimum;
    r.pattern = b.best;
    if (a.count) r.count = b.count;
  }
  double wall = ms_since(t0);

  json out;
  out["n"] = a.n;
  out["algorithm"] = a.alg;
  out["optimum_dead"] = cost_json(r.optimum);
  out["optimum_alive"] =
      r.optimum.is_top() ? json("none")
                         : json(std::uint64_t(a.n) * a.n - r.optimum.raw());
  if (r.count) out["solution_count"] = r.count->value();
  out["wall_time_ms"] = wall;
  out["flags"] = {{"mb_lb", opt.use_mb_lb},
                  {"ssl_ub", opt.use_ssl_ub},
                  {"symmetry", opt.use_symmetry}};
  out["memory_peak_estimate"] = planned;

  int rc = kExitOk;
  if (a.audit && (a.alg == "be" || a.alg == "hyb")) {
    AuditReport rep =
        a.alg == "be" ? audit_be_tables(a.n) : audit_hyb_nodes(a.n, opt);
    out["audit"] = {{"nodes", rep.nodes},
                    {"entry_checks", rep.entry_checks},
                    {"bound_checks", rep.bound_checks},
                    {"violations", rep.violations}};
    if (!rep.ok()) rc = 1;
  }

  std::string pattern_text =
      r.optimum.is_top() ? std::string("(no stable pattern)\n")
                         : print_pattern(r.pattern);
  if (a.output == "text") {
    std::cout << pattern_text;
    std::cout << "n " << a.n << ", algorithm " << a.alg << ", dead "
              << (r.optimum.is_top() ? std::string("inf")
                                     : std::to_string(r.optimum.raw()));
    if (r.count) std::cout << ", optimal patterns " << r.count->value();
    std::cout << ", " << wall << " ms\n";
  } else if (a.output == "csv") {
    std::cout << "n,algorithm,optimum_dead,optimum_alive,solution_count,"
                 "wall_time_ms\n";
    std::cout << a.n << "," << a.alg << ","
              << (r.optimum.is_top() ? std::string("inf")
                                     : std::to_string(r.optimum.raw()))
              << ","
              << (r.optimum.is_top()
                      ? std::string("")
                      : std::to_string(std::uint64_t(a.n) * a.n -
                                       r.optimum.raw()))
              << "," << (r.count ? std::to_string(r.count->value()) : "")
              << "," << wall << "\n";
  } else {
    std::cout << pattern_text;
    std::cout << out.dump(2) << "\n";
  }
  return rc;
}

int cmd_verify(const std::string& path) {
  Pattern p(1);
  try {
    p = parse_pattern(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  }
  int n = p.n();
  json viol = json::array();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int c = live_neighbors(p, i, j);
      if (p.alive(i, j) && c != 2 && c != 3)
        viol.push_back({{"condition", "alive cell needs 2 or 3 neighbors"},
                        {"row", i},
                        {"col", j},
                        {"neighbors", c}});
      else if (!p.alive(i, j) && c == 3)
        viol.push_back({{"condition", "dead cell must not have 3 neighbors"},
                        {"row", i},
                        {"col", j},
                        {"neighbors", c}});
    }
  auto triple = [&](int i1, int j1, int i2, int j2, int i3, int j3) {
    if (p.alive(i1, j1) && p.alive(i2, j2) && p.alive(i3, j3))
      viol.push_back({{"condition", "boundary triple spawns outside"},
                      {"row", i2},
                      {"col", j2}});
  };
  for (int k = 1; k + 2 <= n; ++k) {
    triple(1, k, 1, k + 1, 1, k + 2);
    triple(n, k, n, k + 1, n, k + 2);
    triple(k, 1, k + 1, 1, k + 2, 1);
    triple(k, n, k + 1, n, k + 2, n);
  }
  bool stable = viol.empty();
  json out;
  out["n"] = n;
  out["stable"] = stable;
  out["cross_check"] = stability_cross_check(p);
  out["alive"] = p.live_count();
  out["dead"] = n * n - p.live_count();
  out["violations"] = viol;
  std::cout << out.dump(2) << "\n";
  if (stable != stability_cross_check(p)) {
    std::cerr << "internal disagreement between the two stability routes\n";
    return 1;
  }
  return stable ? kExitOk : 1;
}

int cmd_maxsat(const std::string& path, int degree_bound) {
  CnfFormula f;
  try {
    f = parse_dimacs(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  }
  auto t0 = std::chrono::steady_clock::now();
  WcspInstance p = maxsat_to_wcsp(f);
  GenericResult r = solve_generic(p, degree_bound);
  json out;
  out["variables"] = f.variables;
  out["clauses"] = f.clauses.size();
  out["declared_clauses"] = f.declared_clauses;
  out["dropped_tautologies"] = f.dropped_tautologies;
  out["merged_duplicates"] = f.merged_duplicates;
  out["optimum_violated"] = cost_json(r.optimum);
  if (!r.optimum.is_top())
    out["max_satisfiable"] = f.clauses.size() - r.optimum.raw();
  json asg = json::object();
  for (auto [x, v] : r.assignment) asg[std::to_string(x + 1)] = v;
  out["assignment"] = asg;
  out["degree_bound"] = degree_bound;
  out["branch_events"] = r.branch_events;
  out["wall_time_ms"] = ms_since(t0);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_wcsp(const std::string& path, int degree_bound) {
  WcspInstance p;
  try {
    p = parse_wcsp_text(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitData;
  }
  auto t0 = std::chrono::steady_clock::now();
  GenericResult r = solve_generic(p, degree_bound);
  json out;
  out["variables"] = p.variable_ids().size();
  out["functions"] = p.functions().size();
  out["optimum"] = cost_json(r.optimum);
  json asg = json::object();
  for (auto [x, v] : r.assignment) asg[std::to_string(x)] = v;
  out["assignment"] = asg;
  out["degree_bound"] = degree_bound;
  out["branch_events"] = r.branch_events;
  out["wall_time_ms"] = ms_since(t0);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_reproduce(int from, int to, const std::vector<std::string>& algs,
                  bool count) {
  bool do_be = false, do_ssl = false, do_hyb = false;
  for (const std::string& a : algs) {
    if (a == "be")
      do_be = true;
    else if (a == "ssl")
      do_ssl = true;
    else if (a == "hyb")
      do_hyb = true;
    else {
      std::cerr << "unknown algorithm " << a << "\n";
      return kExitUsage;
    }
  }
  std::cout << "n,opt_dead,opt_alive,count,ssl_opt,seconds_be,seconds_ssl,"
               "seconds_hyb,match\n";
  for (int n = from; n <= to; ++n) {
    std::optional<std::uint64_t> opt, cnt, ssl_opt;
    std::string sec_be, sec_ssl, sec_hyb;
    bool mismatch = false, compared = false;
    auto check = [&](const std::map<int, std::uint64_t>& table,
                     std::uint64_t got) {
      auto it = table.find(n);
      if (it == table.end()) return;
      compared = true;
      if (it->second != got) mismatch = true;
    };
    if (do_be) {
      auto t0 = std::chrono::steady_clock::now();
      SlSolveResult r = solve_sl_be(n, count);
      sec_be = std::to_string(ms_since(t0) / 1000.0);
      opt = r.optimum.raw();
      check(kPublishedOptima, r.optimum.raw());
      if (r.count) {
        cnt = r.count->value();
        check(kPublishedCounts, r.count->value());
      }
    }
    if (do_ssl) {
      auto t0 = std::chrono::steady_clock::now();
      SlSolveResult r = solve_ssl_be(n);
      sec_ssl = std::to_string(ms_since(t0) / 1000.0);
      ssl_opt = r.optimum.raw();
      check(kPublishedSymmetric, r.optimum.raw());
    }
    if (do_hyb) {
      auto t0 = std::chrono::steady_clock::now();
      SlSolveResult r = solve_sl_hyb(n);
      sec_hyb = std::to_string(ms_since(t0) / 1000.0);
      if (opt && *opt != r.optimum.raw()) mismatch = true;
      opt = r.optimum.raw();
      check(kPublishedOptima, r.optimum.raw());
    }
    std::cout << n << "," << (opt ? std::to_string(*opt) : "") << ","
              << (opt ? std::to_string(std::uint64_t(n) * n - *opt) : "")
              << "," << (cnt ? std::to_string(*cnt) : "") << ","
              << (ssl_opt ? std::to_string(*ssl_opt) : "") << "," << sec_be
              << "," << sec_ssl << "," << sec_hyb << ","
              << (mismatch ? "MISMATCH" : (compared ? "match" : "")) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"still-life and weighted-CSP solvers"};
  app.require_subcommand(1);

  SolveArgs sa;
  CLI::App* solve = app.add_subcommand("solve", "optimize one board size");
  solve->add_option("--alg", sa.alg, "be | ssl | hyb | brute")
      ->check(CLI::IsMember({"be", "ssl", "hyb", "brute"}));
  solve->add_option("--n", sa.n, "board side")->required()->check(
      CLI::Range(1, 30));
  solve->add_flag("--count", sa.count, "also count optimal patterns");
  solve->add_flag("--no-mb-lb", sa.no_mb, "drop the look-ahead bound");
  solve->add_flag("--no-ssl-ub", sa.no_ssl, "drop the symmetric seed");
  solve->add_flag("--no-symmetry", sa.no_sym, "drop mirror pruning");
  solve->add_flag("--audit", sa.audit, "re-derive tables and bounds");
  solve->add_option("--output", sa.output, "json | text | csv")
      ->check(CLI::IsMember({"json", "text", "csv"}));

  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify", "check a pattern file");
  verify->add_option("file", verify_path, "pattern text file")->required();

  std::string cnf_path;
  int degree_bound = 2;
  CLI::App* maxsat = app.add_subcommand("maxsat", "min-violation CNF solve");
  maxsat->add_option("file", cnf_path, "DIMACS CNF file")->required();
  maxsat->add_option("--degree-bound", degree_bound,
                     "eliminate variables at or below this degree")
      ->check(CLI::Range(0, 64));

  std::string wcsp_path;
  int wcsp_bound = 2;
  CLI::App* wcsp = app.add_subcommand("wcsp", "solve a text-format instance");
  wcsp->add_option("file", wcsp_path, "instance file")->required();
  wcsp->add_option("--degree-bound", wcsp_bound,
                   "eliminate variables at or below this degree")
      ->check(CLI::Range(0, 64));

  int from = 5, to = 8;
  bool rep_count = false;
  std::vector<std::string> algs = {"be"};
  CLI::App* rep = app.add_subcommand("reproduce", "tabulate a size range");
  rep->add_option("--from", from, "first side")->check(CLI::Range(1, 30));
  rep->add_option("--to", to, "last side")->check(CLI::Range(0, 30));
  rep->add_option("--algs", algs, "any of be ssl hyb")->delimiter(',');
  rep->add_flag("--count", rep_count, "count optima (be only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa);
    if (verify->parsed()) return cmd_verify(verify_path);
    if (maxsat->parsed()) return cmd_maxsat(cnf_path, degree_bound);
    if (wcsp->parsed()) return cmd_wcsp(wcsp_path, wcsp_bound);
    if (rep->parsed()) return cmd_reproduce(from, to, algs, rep_count);
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
