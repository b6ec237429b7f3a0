#include "fluxtube/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluxtube/parallel.hpp"
#include "fluxtube/spectrum.hpp"
#include "fluxtube/steiner3.hpp"
#include "fluxtube/steiner4.hpp"
#include "fluxtube/verify.hpp"

namespace fluxtube::cli {
namespace {

using nlohmann::json;

constexpr double kBenchTolerance = 1e-6;

json tree_json(const SteinerTree& t) {
  return {{"kind", to_string(t.kind)}, {"length", t.length}, {"s1", t.s1}, {"s2", t.s2}};
}

json breakdown_json(const PotentialBreakdown& p) {
  return {{"ff13_24", p.ff13_24}, {"ff14_23", p.ff14_23}, {"v4", p.v4},     {"u", p.u},
          {"winner", to_string(p.winner)}, {"solver", to_string(p.solver)}, {"tree", tree_json(p.tree)}};
}

Vec3 to_vec3(const std::vector<double>& v) { return {v.at(0), v.at(1), v.at(2)}; }

int cmd_potential(const std::string& path, V4Solver solver, std::ostream& out) {
  const TetraConfig c = load_config(path);
  out << breakdown_json(u_potential(c, solver)).dump(2) << '\n';
  return kExitOk;
}

int cmd_baryon(const Vec3& a, const Vec3& b, const Vec3& c, std::ostream& out) {
  if (!is_finite(a) || !is_finite(b) || !is_finite(c))
    throw std::invalid_argument("points must be finite");
  const FermatResult r = fermat_point(a, b, c);
  json j{{"v3", r.length},
         {"junction", r.junction},
         {"legs", r.legs},
         {"branch", r.branch == FermatBranch::Interior ? "Interior" : "CollapsedToVertex"}};
  if (r.branch == FermatBranch::CollapsedToVertex) j["vertex"] = r.vertex;
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_curve(double m_min, double m_max, int points, const std::string& path, std::ostream& out) {
  const auto curve = bound_curve(m_min, m_max, points);
  if (path.empty()) {
    write_curve_csv(out, curve);
    return kExitOk;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  write_curve_csv(file, curve);
  return kExitOk;
}

int cmd_crossover(std::ostream& out) {
  const Crossover c = crossover();
  const double e0 = airy_e0();
  json j{{"M_star", c.mass_ratio},
         {"E_dprime", c.e_double_prime},
         {"E_th", c.e_threshold},
         {"E_dprime_over_e0", c.e_double_prime / e0},
         {"E_th_over_e0", c.e_threshold / e0},
         {"e0", e0}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_certify(long long n, std::uint64_t seed, std::ostream& out) {
  const auto u_bound = certify_u_bound(n, seed);
  const auto midpoint = certify_midpoint_bound(n, seed);
  const TetraConfig counter = find_v4_bound_violation(seed);
  const auto p = u_potential(counter);
  json j{{"u_bound", u_bound},
         {"midpoint_bound", midpoint},
         {"v4_bound_counterexample",
          {{"config", counter}, {"v4", p.v4}, {"u", p.u}, {"bound", u_upper_bound(counter)}}}};
  out << j.dump(2) << '\n';
  return u_bound.violations == 0 && midpoint.violations == 0 ? kExitOk : kExitFailure;
}

struct SolverStats {
  long long genuine = 0;
  long long non_genuine = 0;
  long long failures = 0;
  double max_abs_error = 0.0;
  std::vector<double> seconds;
};

int cmd_bench(long long n, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  if (n < 1) throw std::invalid_argument("bench needs --n >= 1");
  std::vector<TetraConfig> batch;
  for (long long i = 0; i < n; ++i) batch.push_back(normalized_to_unit_diameter(sweep_config(i, seed)));

  using Clock = std::chrono::steady_clock;
  const std::vector<std::pair<V4Solver, SteinerTree (*)(const TetraConfig&)>> solvers{
      {V4Solver::BruteForce, v4_bruteforce},
      {V4Solver::Iterative, v4_spatial_iterative},
      {V4Solver::Rubinstein, v4_spatial_rubinstein},
      {V4Solver::Polynomial, v4_spatial_polynomial}};

  std::vector<double> reference(batch.size());
  std::map<std::string, SolverStats, std::less<>> stats;
  for (const auto& [id, solve] : solvers) {
    SolverStats& s = stats[std::string(to_string(id))];
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto start = Clock::now();
      try {
        const SteinerTree t = solve(batch[i]);
        s.seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        if (id == V4Solver::BruteForce) {
          reference[i] = t.length;
          ++(t.kind == TreeKind::Genuine ? s.genuine : s.non_genuine);
        } else if (t.kind == TreeKind::Genuine) {
          ++s.genuine;
          s.max_abs_error = std::max(s.max_abs_error, std::abs(t.length - reference[i]));
        } else {
          ++s.non_genuine;
        }
      } catch (const SolverError&) {
        s.seconds.push_back(std::chrono::duration<double>(Clock::now() - start).count());
        ++s.failures;
      }
    }
  }

  json j{{"n", n}, {"seed", seed}, {"tolerance", kBenchTolerance}};
  bool ok = true;
  char line[200];
  std::snprintf(line, sizeof line, "%-11s %12s %12s %12s\n", "solver", "mean_us", "stddev_us", "max_us");
  err << line;
  for (const auto& [name, s] : stats) {
    double mean = 0.0, var = 0.0, worst = 0.0;
    for (double t : s.seconds) mean += t;
    mean /= static_cast<double>(s.seconds.size());
    for (double t : s.seconds) {
      var += (t - mean) * (t - mean);
      worst = std::max(worst, t);
    }
    const double sd = std::sqrt(var / static_cast<double>(s.seconds.size()));
    std::snprintf(line, sizeof line, "%-11s %12.2f %12.2f %12.2f\n", name.c_str(), mean * 1e6, sd * 1e6,
                  worst * 1e6);
    err << line;
    j["solvers"][name] = {{"genuine", s.genuine},
                          {"non_genuine", s.non_genuine},
                          {"failures", s.failures},
                          {"max_abs_error", s.max_abs_error}};
    ok = ok && s.max_abs_error <= kBenchTolerance;
  }
  out << j.dump(2) << '\n';
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flux-tube confinement potentials and tetraquark stability bounds", "fluxtube"};
  app.require_subcommand(1);

  std::string config_path;
  std::string solver_name = "chain";
  auto* potential = app.add_subcommand("potential", "Evaluate U = min(flip-flop, V4) for a configuration file");
  potential->add_option("--config", config_path, "JSON file {\"v1\":[x,y,z],...}")->required();
  potential->add_option("--solver", solver_name, "V4 solver")
      ->check(CLI::IsMember({"chain", "iterative", "rubinstein", "polynomial", "bruteforce"}));

  std::vector<double> b1, b2, b3;
  auto* baryon = app.add_subcommand("baryon", "Three-terminal Y-shape length V3");
  for (auto [flag, dest] : {std::pair{"--v1", &b1}, std::pair{"--v2", &b2}, std::pair{"--v3", &b3}})
    baryon->add_option(flag, *dest, "x,y,z")->required()->expected(3)->delimiter(',');

  double m_min = 1.0, m_max = 1e6;
  int points = 200;
  std::string out_path;
  auto* curve = app.add_subcommand("curve", "Bound curves E', E'', E_th in units of e0 as CSV");
  curve->add_option("--m-min", m_min, "smallest mass ratio");
  curve->add_option("--m-max", m_max, "largest mass ratio");
  curve->add_option("--points", points, "number of log-spaced samples");
  curve->add_option("--out", out_path, "output file (stdout when omitted)");

  auto* cross = app.add_subcommand("crossover", "Mass ratio where E'' drops below threshold");

  long long n = 1000;
  std::uint64_t seed = 42;
  auto* certify = app.add_subcommand("certify", "Randomized certification of the potential bounds");
  certify->add_option("--n", n, "configurations per family");
  certify->add_option("--seed", seed, "sweep seed");

  long long bench_n = 200;
  std::uint64_t bench_seed = 7;
  auto* bench = app.add_subcommand("bench", "Time the V4 solvers against the brute-force oracle");
  bench->add_option("--n", bench_n, "batch size");
  bench->add_option("--seed", bench_seed, "batch seed");

  std::vector<const char*> argv{"fluxtube"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*potential) {
      static const std::map<std::string, V4Solver, std::less<>> kSolvers{
          {"chain", V4Solver::Chain},           {"iterative", V4Solver::Iterative},
          {"rubinstein", V4Solver::Rubinstein}, {"polynomial", V4Solver::Polynomial},
          {"bruteforce", V4Solver::BruteForce}};
      return cmd_potential(config_path, kSolvers.at(solver_name), out);
    }
    if (*baryon) return cmd_baryon(to_vec3(b1), to_vec3(b2), to_vec3(b3), out);
    if (*curve) return cmd_curve(m_min, m_max, points, out_path, out);
    if (*cross) return cmd_crossover(out);
    if (*certify) return cmd_certify(n, seed, out);
    if (*bench) return cmd_bench(bench_n, bench_seed, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace fluxtube::cli
