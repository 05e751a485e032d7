#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/csv_io.hpp"
#include "cli/report.hpp"
#include "cli/svg.hpp"
#include "ffdm/error.hpp"
#include "ffdm/fit.hpp"
#include "ffdm/oracle.hpp"
#include "ffdm/solve.hpp"

namespace ffdm::cli {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::vector<double> alpha;
  std::vector<double> theta;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double left = 0.0;
  double right = 1.0;
  long intervals = 200;
  double gl = 2.0;
  double gr = 1.0;
  std::string out;
  std::string json;
  std::string svg;
  long kmax = 10;
  long terms = 1'000'000;
  std::string data;
  std::string preset;
  std::string check;
};

// Which flags the user actually passed.
struct Given {
  CLI::Option* alpha = nullptr;
  CLI::Option* theta = nullptr;
  CLI::Option* left = nullptr;
  CLI::Option* right = nullptr;
  CLI::Option* intervals = nullptr;
  CLI::Option* gl = nullptr;
  CLI::Option* gr = nullptr;

  static bool has(const CLI::Option* o) { return o && o->count() > 0; }
};

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error(ErrorCode::InvalidArgument, "failed writing '" + path + "'");
}

std::string csv_text(const std::vector<CsvSection>& sections) {
  std::ostringstream os;
  write_csv(os, sections);
  return os.str();
}

std::string label(double alpha, double theta) {
  std::ostringstream os;
  os << "\xCE\xB1=" << alpha << ", \xCE\xB8=" << theta;
  return os.str();
}

double single(const std::vector<double>& values, double fallback, const char* flag) {
  if (values.empty()) return fallback;
  if (values.size() > 1) {
    throw Error(ErrorCode::InvalidArgument, std::string(flag) + " takes a single value here");
  }
  return values.front();
}

FractionalParams checked_params(double alpha, double theta, std::ostream& err) {
  const FractionalParams p = validate_params(alpha, theta);
  if (p.near_singular()) {
    err << "warning: alpha=" << alpha << " lies within " << kConditioningBand
        << " of the singular order 1; the system may be ill-conditioned\n";
  }
  return p;
}

SchemeWeights checked_scheme(const Options& o) {
  const SchemeWeights s{o.lambda1, o.lambda2};
  validate_scheme(s);
  return s;
}

RunManifest base_manifest(const std::string& command, const Options& o) {
  RunManifest m;
  m.command = command;
  m.lambda1 = o.lambda1;
  m.lambda2 = o.lambda2;
  m.version = tool_version();
  m.timestamp = utc_timestamp();
  return m;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const double alpha = single(o.alpha, 2.0, "--alpha");
  const double theta = single(o.theta, 0.0, "--theta");
  const FractionalParams params = checked_params(alpha, theta, err);
  const SchemeWeights scheme = checked_scheme(o);
  const Domain1D domain(o.left, o.right, o.intervals);
  const DirichletBC bc{o.gl, o.gr};
  const Solution sol = solve_bvp(domain, params, scheme, bc);

  write_text(o.out, csv_text({solution_section(sol)}), out);

  RunManifest m = base_manifest("solve", o);
  m.alpha = alpha;
  m.theta = theta;
  m.left = o.left;
  m.right = o.right;
  m.intervals = o.intervals;
  m.gl = o.gl;
  m.gr = o.gr;
  m.outputs["csv"] = o.out.empty() ? "-" : o.out;
  if (!o.json.empty()) m.outputs["json"] = o.json;
  if (!o.svg.empty()) m.outputs["svg"] = o.svg;

  if (!o.json.empty()) write_text(o.json, solution_json(sol, m).dump(2) + "\n", out);
  if (!o.svg.empty()) {
    Chart chart{"Steady state, " + label(alpha, theta), "x", "T",
                {{label(alpha, theta), sol.nodes, sol.values, false}}};
    write_text(o.svg, render_svg(chart), out);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err, const Given& given) {
  std::vector<double> alphas = o.alpha;
  std::vector<double> thetas = o.theta;
  double gl = o.gl;
  double gr = o.gr;
  if (!o.preset.empty()) {
    const Preset p = preset(o.preset);
    if (!Given::has(given.alpha)) alphas = p.alphas;
    if (!Given::has(given.theta)) thetas = p.thetas;
    if (!Given::has(given.gl)) gl = p.gl;
    if (!Given::has(given.gr)) gr = p.gr;
  }
  if (alphas.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs --alpha or --preset");
  if (thetas.empty()) thetas = {0.0};

  // Validate every combination before touching the filesystem.
  std::vector<FractionalParams> combos;
  for (double a : alphas) {
    for (double t : thetas) combos.push_back(checked_params(a, t, err));
  }
  const SchemeWeights scheme = checked_scheme(o);
  const Domain1D domain(o.left, o.right, o.intervals);
  const DirichletBC bc{gl, gr};

  const fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  const double spread = 0.02 * std::fabs(gl - gr);
  const double lo = std::min(gl, gr) - spread;
  const double hi = std::max(gl, gr) + spread;

  Chart chart{"Steady-state profiles", "x", "T", {}};
  nlohmann::json profiles = nlohmann::json::array();
  for (std::size_t c = 0; c < combos.size(); ++c) {
    const auto& p = combos[c];
    Solution sol = [&] {
      try {
        return solve_bvp(domain, p, scheme, bc);
      } catch (const Error& e) {
        throw Error(e.code(), "sweep combination " + label(p.alpha(), p.theta()) + ": " + e.what());
      }
    }();

    std::ostringstream name;
    name << "profile_" << (c < 10 ? "0" : "") << c << "_alpha" << format_number(p.alpha())
         << "_theta" << format_number(p.theta()) << ".csv";
    const fs::path csv = dir / name.str();
    write_text(csv.string(), csv_text({solution_section(sol)}), out);
    out << csv.string() << "  " << label(p.alpha(), p.theta())
        << "  residual_inf=" << sol.residual_inf << '\n';

    const auto [mn, mx] = std::minmax_element(sol.values.begin(), sol.values.end());
    const long outside = std::count_if(sol.values.begin(), sol.values.end(),
                                       [&](double v) { return v < lo || v > hi; });
    if (outside > 0) {
      err << "diagnostic: " << label(p.alpha(), p.theta()) << " leaves [" << lo << ", " << hi
          << "] at " << outside << " node(s), range [" << *mn << ", " << *mx << "]\n";
    }
    profiles.push_back({{"alpha", p.alpha()},
                        {"theta", p.theta()},
                        {"csv", csv.string()},
                        {"residual_inf", sol.residual_inf},
                        {"min", *mn},
                        {"max", *mx},
                        {"nodes_outside_bounds", outside}});
    chart.series.push_back({label(p.alpha(), p.theta()), std::move(sol.nodes),
                            std::move(sol.values), false});
  }

  const std::string svg = o.svg.empty() ? (dir / "sweep.svg").string() : o.svg;
  write_text(svg, render_svg(chart), out);
  out << svg << '\n';

  if (!o.json.empty()) {
    RunManifest m = base_manifest("sweep", o);
    m.left = o.left;
    m.right = o.right;
    m.intervals = o.intervals;
    m.gl = gl;
    m.gr = gr;
    m.outputs["dir"] = dir.string();
    m.outputs["svg"] = svg;
    m.outputs["json"] = o.json;
    nlohmann::json j{{"manifest", to_json(m)}, {"profiles", profiles}, {"bounds", {lo, hi}}};
    write_text(o.json, j.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_weights(const Options& o, std::ostream& out, std::ostream& err) {
  const FractionalParams params =
      checked_params(single(o.alpha, 2.0, "--alpha"), single(o.theta, 0.0, "--theta"), err);
  const WeightTable table = build_weight_table(params, checked_scheme(o), o.kmax);
  write_text(o.out, csv_text(weight_sections(table)), out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err, const Given& given) {
  const SchemeWeights scheme = checked_scheme(o);
  const bool pinned = !Given::has(given.alpha);
  const double theta = single(o.theta, 0.0, "--theta");
  const DirichletBC bc{o.gl, o.gr};
  const bool all = o.check == "all";
  std::vector<VerificationReport> reports;

  if (all || o.check == "tails") {
    if (pinned) {
      auto r = tail_sweep(scheme, o.terms);
      reports.insert(reports.end(), r.begin(), r.end());
    } else {
      const auto p = checked_params(single(o.alpha, 0, "--alpha"), theta, err);
      for (long j : kPinnedTailIndices) reports.push_back(tail_check(p, scheme, j, o.terms));
    }
  }
  if (all || o.check == "reduction") reports.push_back(reduction_check(scheme, theta));
  if (all || o.check == "symmetry") {
    const long n = Given::has(given.intervals) ? o.intervals : 64;
    if (pinned) {
      for (const auto& p : pinned_sweep()) reports.push_back(symmetry_check(p, bc, n, scheme));
    } else {
      const auto p = checked_params(single(o.alpha, 0, "--alpha"), theta, err);
      reports.push_back(symmetry_check(p, bc, n, scheme));
    }
  }
  if (all || o.check == "convergence") {
    const long base = Given::has(given.intervals) ? o.intervals : 32;
    const std::vector<long> ns{base, 2 * base, 4 * base, 8 * base};
    std::vector<FractionalParams> cases;
    if (pinned) {
      cases = {validate_params(1.5, 0.0), validate_params(0.5, 0.25), validate_params(2.0, 0.0)};
    } else {
      cases = {checked_params(single(o.alpha, 0, "--alpha"), theta, err)};
    }
    for (const auto& p : cases) reports.push_back(convergence_study(p, bc, ns, scheme));
  }

  RunManifest m = base_manifest("verify " + o.check, o);
  if (!pinned) {
    m.alpha = single(o.alpha, 0, "--alpha");
    m.theta = theta;
  }
  m.gl = o.gl;
  m.gr = o.gr;
  if (!o.out.empty()) m.outputs["json"] = o.out;
  write_text(o.out, verification_json(reports, m).dump(2) + "\n", out);

  const auto failed = std::count_if(reports.begin(), reports.end(),
                                    [](const auto& r) { return !r.passed; });
  if (failed > 0) {
    err << "verify: " << failed << " of " << reports.size() << " check(s) failed\n";
    return kExitVerificationFailed;
  }
  return kExitOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err, const Given& given) {
  std::ifstream data(o.data);
  if (!data) throw Error(ErrorCode::InvalidProfile, "cannot read data file '" + o.data + "'");
  const auto left = Given::has(given.left) ? std::optional(o.left) : std::nullopt;
  const auto right = Given::has(given.right) ? std::optional(o.right) : std::nullopt;
  const ObservedProfile profile = read_profile(data, left, right);
  const DirichletBC bc{Given::has(given.gl) ? o.gl : profile.points.front().value,
                       Given::has(given.gr) ? o.gr : profile.points.back().value};

  FitConfig config;
  config.grid_intervals = o.intervals;
  config.scheme = checked_scheme(o);
  const FitResult result = fit(profile, bc, config);

  RunManifest m = base_manifest("fit", o);
  m.left = profile.left;
  m.right = profile.right;
  m.intervals = o.intervals;
  m.gl = bc.left;
  m.gr = bc.right;
  m.outputs["data"] = o.data;
  if (!o.out.empty()) m.outputs["json"] = o.out;
  if (!o.svg.empty()) m.outputs["svg"] = o.svg;
  const std::string text = fit_json(result, m).dump(2) + "\n";
  out << text;
  if (!o.out.empty()) write_text(o.out, text, out);

  if (!o.svg.empty()) {
    const Domain1D domain(profile.left, profile.right, o.intervals);
    const Solution sol = solve_bvp(
        domain, validate_params(result.alpha_star, result.theta_star), config.scheme, bc);
    Series points{"observed", {}, {}, true};
    for (const auto& pt : profile.points) {
      points.x.push_back(pt.x);
      points.y.push_back(pt.value);
    }
    Chart chart{"Fitted steady state", "x", "T",
                {std::move(points),
                 {"fit " + label(result.alpha_star, result.theta_star), sol.nodes, sol.values,
                  false}}};
    write_text(o.svg, render_svg(chart), out);
  }
  if (!result.converged) err << "warning: Nelder-Mead stopped at the iteration limit\n";
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (category(e.code())) {
    case ErrorCategory::Solver: return kExitSolverFailure;
    case ErrorCategory::Fit: return kExitFitFailure;
    case ErrorCategory::Validation: break;
  }
  return kExitInputError;
}

}  // namespace

Preset preset(const std::string& name) {
  if (name == "fig2") return {{0.1, 0.5, 0.75, 1.01, 1.25, 1.5, 1.75, 2.0}, {0.0}, 2.0, 1.0};
  if (name == "fig3") return {{1.01}, {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99}, 2.0, 1.0};
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "' (expected fig2 or fig3)");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state Riesz-Feller anomalous diffusion on a bounded interval", "ffdm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  Options o;
  Given given;

  auto add_params = [&](CLI::App* sub, bool lists) {
    auto* a = sub->add_option("--alpha", o.alpha, "order alpha in (0, 2], alpha != 1");
    auto* t = sub->add_option("--theta", o.theta, "skewness, |theta| <= min(alpha, 2 - alpha)");
    if (lists) {
      a->delimiter(',');
      t->delimiter(',');
    }
    sub->add_option("--lambda1", o.lambda1, "weight of the first-derivative scheme (alpha < 1)");
    sub->add_option("--lambda2", o.lambda2, "weight of the second-derivative scheme (alpha > 1)");
    // Every subcommand binds the same variables; record whichever was parsed.
    sub->parse_complete_callback([sub, &given] {
      given.alpha = sub->get_option("--alpha");
      given.theta = sub->get_option("--theta");
    });
  };
  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("--L", o.left, "left end of the domain")->capture_default_str();
    sub->add_option("--R", o.right, "right end of the domain")->capture_default_str();
    sub->add_option("--N", o.intervals, "number of sub-intervals")->capture_default_str();
    sub->add_option("--gl", o.gl, "Dirichlet value at x = L")->capture_default_str();
    sub->add_option("--gr", o.gr, "Dirichlet value at x = R")->capture_default_str();
    sub->parse_complete_callback([sub, &given] {
      given.alpha = sub->get_option("--alpha");
      given.theta = sub->get_option("--theta");
      given.left = sub->get_option("--L");
      given.right = sub->get_option("--R");
      given.intervals = sub->get_option("--N");
      given.gl = sub->get_option("--gl");
      given.gr = sub->get_option("--gr");
    });
  };

  auto* solve = app.add_subcommand("solve", "solve one boundary value problem");
  add_params(solve, false);
  add_domain(solve);
  solve->add_option("--out", o.out, "solution CSV (default: stdout)");
  solve->add_option("--json", o.json, "solution JSON with run manifest");
  solve->add_option("--svg", o.svg, "SVG plot of the profile");

  auto* sweep = app.add_subcommand("sweep", "solve over lists of alpha and theta");
  add_params(sweep, true);
  add_domain(sweep);
  sweep->add_option("--preset", o.preset, "fig2 (alpha sweep) or fig3 (theta sweep)");
  sweep->add_option("--out", o.out, "output directory (default: .)");
  sweep->add_option("--json", o.json, "summary JSON");
  sweep->add_option("--svg", o.svg, "overlay SVG (default: <out>/sweep.svg)");

  auto* weights = app.add_subcommand("weights", "tabulate w_k and the boundary tail sums");
  add_params(weights, false);
  weights->add_option("--kmax", o.kmax, "largest |k|")->capture_default_str();
  weights->add_option("--out", o.out, "weights CSV (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run brute-force and property checks");
  verify->add_option("check", o.check, "tails | reduction | symmetry | convergence | all")
      ->required()
      ->check(CLI::IsMember({"tails", "reduction", "symmetry", "convergence", "all"}));
  add_params(verify, false);
  add_domain(verify);
  verify->add_option("--terms", o.terms, "truncation K of the brute-force tails")
      ->capture_default_str();
  verify->add_option("--out", o.out, "report JSON (default: stdout)");

  auto* fitcmd = app.add_subcommand("fit", "least-squares (alpha, theta) for an observed profile");
  fitcmd->add_option("--data", o.data, "CSV with header x,T_obs")->required();
  add_params(fitcmd, false);
  add_domain(fitcmd);
  fitcmd->add_option("--out", o.out, "FitResult JSON");
  fitcmd->add_option("--svg", o.svg, "SVG of data and fitted profile");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(o, out, err);
    if (*sweep) return cmd_sweep(o, out, err, given);
    if (*weights) return cmd_weights(o, out, err);
    if (*verify) return cmd_verify(o, out, err, given);
    if (*fitcmd) return cmd_fit(o, out, err, given);
  } catch (const Error& e) {
    err << "error: [" << to_string(e.code()) << "] " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"ffdm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace ffdm::cli
