// Command-line front end: analyze / solve / sweep / fixtures over JSON
// problem files. Exit codes: 0 ok, 1 usage or parse error, 2 validation or
// analysis error, 3 fixture failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qpcert/certify.hpp"
#include "qpcert/errors.hpp"
#include "qpcert/fixtures.hpp"
#include "qpcert/galerkin.hpp"
#include "qpcert/gtrs.hpp"
#include "qpcert/report.hpp"
#include "qpcert/serialize.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qpcert::ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "a..b[:step]" or a comma list.
std::vector<std::size_t> parse_levels(const std::string& spec) {
  std::vector<std::size_t> levels;
  if (spec.find("..") != std::string::npos) {
    const auto dots = spec.find("..");
    std::size_t step = 1;
    std::string rest = spec.substr(dots + 2);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = std::stoul(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const std::size_t a = std::stoul(spec.substr(0, dots));
    const std::size_t b = std::stoul(rest);
    if (step == 0) throw qpcert::Error("levels: step must be positive");
    for (std::size_t n = a; n <= b; n += step) levels.push_back(n);
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) levels.push_back(std::stoul(tok));
  }
  if (levels.empty()) throw qpcert::Error("levels: empty specification");
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonconvex quadratic programs with convex quadratic constraints: "
               "existence analysis, certification and single-constraint solving"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  double tol = qpcert::kDefaultReportTol;
  std::uint64_t seed = qpcert::kSearchSeed;
  app.add_option("--format", format, "output format: text|json|csv");
  app.add_option("--tol", tol, "feasibility reporting tolerance");
  app.add_option("--seed", seed, "seed for the randomized searches");

  std::string analyze_file, solve_file, sweep_file, levels_spec = "8..64:8";
  auto* analyze = app.add_subcommand("analyze", "hypothesis checks and certificate");
  analyze->add_option("file", analyze_file, "problem JSON file")->required();
  auto* solve = app.add_subcommand("solve", "single-constraint constructive solve");
  solve->add_option("file", solve_file, "problem JSON file")->required();
  auto* sweepcmd = app.add_subcommand("sweep", "attainment sweep over truncations");
  sweepcmd->add_option("file", sweep_file, "problem JSON file")->required();
  sweepcmd->add_option("--levels", levels_spec, "a..b[:step] or comma list");

  auto* fixtures = app.add_subcommand("fixtures", "built-in worked instances");
  std::string fixture_action = "list", fixture_name;
  fixtures->add_option("action", fixture_action, "list | run | run-all");
  fixtures->add_option("name", fixture_name, "fixture name for 'run'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 1 : 0;
  }

  try {
    const qpcert::ReportFormat rf = qpcert::parse_format(format);
    qpcert::AnalyzeOptions opts;
    opts.seed = seed;
    opts.report_tol = tol;

    if (analyze->parsed()) {
      const qpcert::Problem p = qpcert::parse_problem(slurp(analyze_file));
      const qpcert::Analysis a = qpcert::analyze_problem(p, opts);
      std::cout << qpcert::render_analysis(a, rf);
      return 0;
    }
    if (solve->parsed()) {
      const qpcert::Problem p = qpcert::parse_problem(slurp(solve_file));
      const qpcert::Problem eff = qpcert::drop_vacuous_constraints(p);
      if (eff.m() == 1) {
        const qpcert::Solution s = qpcert::solve_single_constraint(eff);
        std::cout << qpcert::render_solution(s, rf);
      } else {
        const qpcert::Certificate c = qpcert::certify_existence(p, opts);
        std::cout << qpcert::render_certificate(c, rf);
      }
      return 0;
    }
    if (sweepcmd->parsed()) {
      const qpcert::Problem p = qpcert::parse_problem(slurp(sweep_file));
      const qpcert::SweepReport r = qpcert::sweep(p, parse_levels(levels_spec));
      std::cout << qpcert::render_sweep(r, rf);
      return 0;
    }
    if (fixtures->parsed()) {
      if (fixture_action == "list") {
        for (const auto& n : qpcert::fixture_names()) std::cout << n << "\n";
        return 0;
      }
      if (fixture_action == "run") {
        if (fixture_name.empty()) {
          std::cerr << "fixtures run: missing name\n";
          return 1;
        }
        const qpcert::FixtureResult r = qpcert::run_fixture(fixture_name);
        std::cout << qpcert::render_fixture(r, rf);
        return r.ok() ? 0 : 3;
      }
      if (fixture_action == "run-all") {
        bool all_ok = true;
        for (const auto& n : qpcert::fixture_names()) {
          const qpcert::FixtureResult r = qpcert::run_fixture(n);
          std::cout << qpcert::render_fixture(r, rf);
          all_ok = all_ok && r.ok();
        }
        return all_ok ? 0 : 3;
      }
      std::cerr << "fixtures: unknown action '" << fixture_action << "'\n";
      return 1;
    }
  } catch (const qpcert::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const qpcert::ValidationFailure& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const qpcert::UnknownFixture& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return 1;
  } catch (const qpcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
