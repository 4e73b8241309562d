#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cosym/cosym.hpp"

namespace {

const std::map<std::string, std::string>& check_help() {
  static const std::map<std::string, std::string> kHelp = {
      {"closed",
       "Exterior-derivative residuals of both forms over the grid; passes when "
       "max residual <= tol_closed."},
      {"classify",
       "Pointwise rank census of the structure matrix -omega + eta eta^T; "
       "verdicts: Cosymplectic(n), Precosymplectic(r), or Degenerate with a "
       "reason.  Errors on a vanishing eta or non-closed forms."},
      {"action",
       "Pullback invariance of both forms under sampled group elements, "
       "identity and composition laws, and fundamental fields against "
       "finite-difference flow derivatives."},
      {"moment",
       "Moment-map conditions: generators pair to zero with eta, d(mu) matches "
       "the omega-contraction of the paired generators, mu is invariant, and "
       "d(mu) kills the kernel of the structure matrix."},
      {"clean",
       "Detects generators whose fundamental field dies under the structure "
       "matrix, checks consistency with the declared subtorus, and verifies "
       "those fields span orbit ∩ kernel."},
      {"body",
       "Moment image over the grid, clamped to the clip box, deduplicated, and "
       "hulled; facets on a clip plane that clamped a sample are flagged as "
       "box artifacts."},
      {"morse",
       "Critical locus of one moment component: cluster flagged grid points, "
       "estimate tangent directions, and compute normal Hessian index and "
       "nullity per component."},
      {"quasi_iso",
       "At sampled points, the foliation's spanning fields stay independent "
       "and span exactly the kernel of the structure matrix."},
      {"basic",
       "Both forms are basic for the foliation: spanning fields contract to "
       "zero and the Cartan derivative terms vanish."},
      {"orbit",
       "Flows random words in the spanning fields and re-checks the kernel "
       "match along each leaf."},
      {"arrow",
       "On the arrow space of a product model, source and target pull the "
       "forms back identically and the induced flat kernel splits as "
       "ker(ds) + ker(dt)."},
      {"holonomy",
       "Iterates the transverse return map from a test point: trivial, cyclic "
       "of the first-return order, or infinite cyclic at the iteration cap."},
      {"reduce",
       "Pulls the structure back along a declared section of the zero level "
       "set (checking membership, regularity, and transversality), then "
       "classifies the reduced structure."},
  };
  return kHelp;
}

int cmd_list() {
  std::cout << "registered scenarios:\n";
  for (const auto& name : cosym::scenario_names())
    std::cout << "  " << name << "\n";
  std::cout << "\nchecks (canonical order):\n";
  for (const auto& name : cosym::canonical_checks())
    std::cout << "  " << name << "\n";
  return 0;
}

int cmd_explain(const std::string& check) {
  const auto& help = check_help();
  const auto it = help.find(check);
  if (it == help.end()) {
    std::cerr << "unknown check '" << check << "'\n";
    return 2;
  }
  std::cout << check << ": " << it->second << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::string& csv_dir, long seed_override,
            const std::vector<std::string>& tol_overrides) {
  cosym::RunConfig cfg = cosym::parse_config_file(config_path);
  if (seed_override >= 0) cfg.seed = static_cast<unsigned>(seed_override);
  for (const std::string& t : tol_overrides) {
    const size_t eq = t.find('=');
    if (eq == std::string::npos)
      cosym::fail(cosym::ErrorCode::ParseError,
                  "--tol expects name=value, got '" + t + "'");
    cosym::apply_config_entry(cfg, t.substr(0, eq), t.substr(eq + 1));
  }

  const auto t0 = std::chrono::steady_clock::now();
  cosym::RunOutput out = cosym::run(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  out.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  const std::string json = out.report.to_json_string();
  if (out_path.empty()) {
    std::cout << json;
  } else {
    cosym::write_text_file(out_path, json);
  }

  if (!csv_dir.empty()) {
    if (out.body) {
      std::ofstream f(csv_dir + "/moment_body.csv", std::ios::binary);
      cosym::write_moment_body_csv(f, *out.body);
    }
    if (out.morse) {
      std::ofstream f(csv_dir + "/critical_components.csv", std::ios::binary);
      cosym::write_critical_components_csv(f, *out.morse);
    }
  }

  std::cerr << "scenario " << cfg.scenario << ": "
            << (out.report.all_passed ? "all requested checks passed"
                                      : "FAILURES present")
            << " (wall " << out.report.wall_seconds << " s)\n";
  for (const auto& c : out.report.checks)
    if (c.status == "fail" || c.status == "error")
      std::cerr << "  " << c.name << ": " << c.status
                << (c.note.empty() ? "" : " (" + c.note + ")") << "\n";
  return out.report.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for pairs (closed 2-form, closed nonvanishing 1-form)"};
  app.require_subcommand(1);

  app.add_subcommand("list", "list registered scenarios and checks");

  auto* explain = app.add_subcommand("explain", "describe one check");
  std::string check_name;
  explain->add_option("check", check_name, "check name")->required();

  auto* run = app.add_subcommand("run", "run checks from a config file");
  std::string config_path, out_path, csv_dir;
  long seed_override = -1;
  std::vector<std::string> tol_overrides;
  run->add_option("config", config_path, "path to config file")->required();
  run->add_option("--out", out_path, "write the JSON report here (default stdout)");
  run->add_option("--csv", csv_dir, "emit CSV artifacts into this directory");
  run->add_option("--seed", seed_override, "override the sampling seed");
  run->add_option("--tol", tol_overrides,
                  "override one tolerance, name=value (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand("explain")) return cmd_explain(check_name);
    return cmd_run(config_path, out_path, csv_dir, seed_override, tol_overrides);
  } catch (const cosym::Error& e) {
    std::cerr << "error [" << cosym::error_code_name(e.code()) << "]: "
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
