#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soliton/equilibria.hpp"
#include "soliton/errors.hpp"
#include "soliton/families.hpp"
#include "soliton/io.hpp"
#include "soliton/sweep.hpp"

namespace fs = std::filesystem;
using namespace soliton;

namespace {

constexpr int kOk = 0, kValidation = 2, kVerdict = 3, kInternal = 4;

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0') {
      throw InvalidArgument("not a number in list: '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int default_jobs() {
  if (const char* env = std::getenv("SOLITON_FORGE_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 0;
}

struct SolveArgs {
  std::string config, family, s, gauge;
  int m = -1, epsilon = -1;
  double delta = 0, eta_max = 0, rtol = 0, atol = 0;
  std::string out_dir, prefix;
  bool einstein = false, no_traj = false, no_profile = false, no_report = false, svg = false,
       strict = false, quiet = false;
};

int cmd_solve(const SolveArgs& a) {
  RunConfig c;
  if (!a.config.empty()) c = load_config(a.config);
  if (!a.family.empty()) c.family = family_kind_from_string(a.family);
  if (a.m >= 0) c.m = a.m;
  if (a.epsilon >= 0) c.epsilon = a.epsilon;
  if (!a.s.empty()) c.s = parse_list(a.s);
  if (a.delta > 0) c.delta = a.delta;
  if (!a.gauge.empty()) c.gauge = gauge_from_string(a.gauge);
  if (a.eta_max > 0) c.integrator.eta_max = a.eta_max;
  if (a.rtol > 0) c.integrator.rtol = a.rtol;
  if (a.atol > 0) c.integrator.atol = a.atol;
  if (!a.out_dir.empty()) c.out_dir = a.out_dir;
  if (!a.prefix.empty()) c.prefix = a.prefix;
  c.einstein = c.einstein || a.einstein;
  if (a.no_traj) c.trajectory_csv = false;
  if (a.no_profile) c.profile_csv = false;
  if (a.no_report) c.report_json = false;
  if (a.svg) c.plot_svg = true;
  c.strict = c.strict || a.strict;
  if (c.s.empty()) throw InvalidArgument("no shoot vector given (--s or \"s\" in the config)");

  RunOptions opt;
  opt.integrator = c.integrator;
  opt.gauge = c.gauge;
  opt.sensitivity = false;
  const FamilyRun run = run_family(c.family, c.m, c.s, c.epsilon, opt, c.einstein, c.delta);
  const auto files = write_run_artifacts(c, run);

  if (!a.quiet) {
    const auto& r = run.report;
    std::printf("family      %s (m=%d, epsilon=%d)\n", std::string(to_string(run.family)).c_str(),
                run.params.m(), run.params.epsilon());
    std::printf("class       %s", std::string(to_string(r.classification)).c_str());
    if (r.base != Base::none) std::printf(" / %s", std::string(to_string(r.base)).c_str());
    std::printf("\nexpected    %s", std::string(to_string(run.expected.cls)).c_str());
    if (run.expected.base_asserted && run.expected.base != Base::none) {
      std::printf(" / %s", std::string(to_string(run.expected.base)).c_str());
    }
    std::printf("  [%s]\n", run.expected.row.c_str());
    std::printf("verdict     %s\n", std::string(to_string(run.verdict)).c_str());
    std::printf("mu^2, nu^2  %.8g, %.8g (extrapolated %.8g)\n", r.mu_sq, r.nu_sq,
                r.nu_sq_extrapolated);
    std::printf("C           %.10g (gauge %s)\n", r.C, r.gauge.c_str());
    for (const auto& p : run.problems) std::printf("problem     %s\n", p.c_str());
    for (const auto& p : r.failed_checks) std::printf("failed      %s\n", p.c_str());
    for (const auto& p : r.notes) std::printf("note        %s\n", p.c_str());
    if (!run.expected.caveat.empty()) std::printf("caveat      %s\n", run.expected.caveat.c_str());
    for (const auto& f : files) std::printf("wrote       %s\n", f.string().c_str());
  }
  if (run.verdict == Verdict::mismatch) return kVerdict;
  if (run.verdict == Verdict::inconclusive && c.strict) return kVerdict;
  return kOk;
}

struct SweepArgs {
  std::vector<std::string> families{"zeta", "gamma", "gamma_tilde"};
  std::vector<int> ms{1};
  std::vector<int> epsilons{0, 1};
  int per_region = 5;
  bool einstein = false, serial = false, strict = false, quiet = false;
  int jobs = 0;
  std::string grid, out_dir = ".", prefix = "sweep";
};

std::vector<SweepItem> items_from_grid_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("grid " + path + ": " + e.what());
  }
  std::vector<SweepItem> items;
  try {
    for (const auto& e : j.at("items")) {
      SweepItem it;
      it.family = family_kind_from_string(e.at("family").get<std::string>());
      it.m = e.value("m", 1);
      it.epsilon = e.value("epsilon", 0);
      it.s = e.at("s").get<std::vector<double>>();
      it.einstein = e.value("einstein", false);
      items.push_back(it);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("grid " + path + ": " + e.what());
  }
  return items;
}

int cmd_sweep(const SweepArgs& a) {
  std::vector<SweepItem> items;
  if (!a.grid.empty()) {
    items = items_from_grid_file(a.grid);
  } else {
    for (const auto& f : a.families) {
      const FamilyKind fk = family_kind_from_string(f);
      for (int m : a.ms) {
        if (m < 1) throw InvalidArgument("m must be >= 1");
        if (fk == FamilyKind::gamma_tilde && m != a.ms.front()) continue;
        for (int e : a.epsilons) {
          if (e != 0 && e != 1) throw InvalidArgument("epsilon must be 0 or 1");
          const auto g = sign_pattern_grid(fk, m, e, a.per_region, a.einstein);
          items.insert(items.end(), g.begin(), g.end());
        }
      }
    }
  }
  RunOptions opt;
  const auto rows = a.serial ? run_sweep_serial(items, opt) : run_sweep(items, opt, a.jobs);
  const fs::path csv = fs::path(a.out_dir) / (a.prefix + ".csv");
  const fs::path summary = fs::path(a.out_dir) / (a.prefix + "_summary.json");
  atomic_write(csv, sweep_csv(rows));
  const auto js = sweep_summary(rows);
  atomic_write(summary, js.dump(2) + "\n");
  if (!a.quiet) {
    std::printf("rows %zu, match rate %.4f\nwrote %s\nwrote %s\n", rows.size(), match_rate(rows),
                csv.string().c_str(), summary.string().c_str());
  }
  return a.strict && match_rate(rows) < 1.0 ? kVerdict : kOk;
}

struct LinearizeArgs {
  std::string label, family;
  int m = 1, epsilon = 0;
  bool json = false;
};

int cmd_linearize(const LinearizeArgs& a) {
  const EquilibriumLabel label = equilibrium_from_string(a.label);
  const bool oct = label == EquilibriumLabel::P_OP1 || label == EquilibriumLabel::P_O;
  if (!a.family.empty()) {
    const bool want_oct = a.family == "octonionic";
    if (a.family != "octonionic" && a.family != "quaternionic") {
      throw InvalidArgument("family must be quaternionic or octonionic");
    }
    if (want_oct != oct) {
      throw InvalidArgument(a.label + " is not a critical point of the " + a.family + " system");
    }
  }
  const SystemParams params =
      oct ? SystemParams::octonionic(a.epsilon) : SystemParams::quaternionic(a.m, a.epsilon);
  const Equilibrium eq = critical_point(params, label);
  const auto J = jacobian_exact(params, eq.exact);
  const auto spec = spectrum(params, label);
  const UnstableBasis basis = unstable_basis(params, label);
  const double resid = eigen_residual(params, label, basis);

  if (a.json) {
    nlohmann::json j;
    j["schema_version"] = kReportSchemaVersion;
    j["label"] = a.label;
    j["family"] = std::string(to_string(params.family()));
    j["m"] = params.m();
    j["epsilon"] = params.epsilon();
    std::vector<std::string> point;
    for (const auto& r : eq.exact) point.push_back(r.str());
    j["point"] = point;
    std::vector<std::vector<std::string>> jm;
    for (const auto& row : J) {
      std::vector<std::string> r;
      for (const auto& v : row) r.push_back(v.str());
      jm.push_back(r);
    }
    j["jacobian"] = jm;
    std::vector<std::vector<double>> ev;
    for (const auto& z : spec) ev.push_back({z.real(), z.imag()});
    j["eigenvalues"] = ev;
    j["unstable_eigenvalue"] = basis.eigenvalue_exact.str();
    std::vector<std::vector<double>> vs;
    for (const auto& v : basis.vectors) vs.emplace_back(v.data(), v.data() + v.size());
    j["unstable_basis"] = vs;
    j["closed_form"] = basis.closed_form;
    j["eigen_residual"] = resid;
    std::cout << j.dump(2) << "\n";
    return kOk;
  }

  std::printf("%s, %s system, m=%d, epsilon=%d\npoint:", a.label.c_str(),
              std::string(to_string(params.family())).c_str(), params.m(), params.epsilon());
  for (const auto& r : eq.exact) std::printf(" %s", r.str().c_str());
  std::printf("\njacobian:\n");
  for (const auto& row : J) {
    for (const auto& v : row) std::printf(" %8s", v.str().c_str());
    std::printf("\n");
  }
  std::printf("eigenvalues:\n");
  for (const auto& z : spec) {
    if (z.imag() == 0) std::printf("  %.15g\n", z.real());
    else std::printf("  %.15g %+.15gi\n", z.real(), z.imag());
  }
  std::printf("unstable eigenvalue %s, basis (%s):\n", basis.eigenvalue_exact.str().c_str(),
              basis.closed_form ? "closed form" : "computed");
  for (const auto& v : basis.vectors) {
    for (Eigen::Index i = 0; i < v.size(); ++i) std::printf(" %10.6g", v[i]);
    std::printf("\n");
  }
  std::printf("max eigenvector residual %.3g\n", resid);
  if (!basis.closed_form) {
    std::printf("note: no closed-form eigenvectors are tabulated for this point; the basis above "
                "is computed from the kernel of J - lambda I\n");
  }
  return kOk;
}

struct VerifyArgs {
  std::string profile;
  double tol = 1e-5;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  const SolitonProfile prof = profile_from_csv(parse_csv(read_file(a.profile)));
  const ResidualSeries res = soliton_residual(prof);
  const bool ok = res.max_equation < a.tol;
  if (a.json) {
    auto j = to_json(res);
    j["tolerance"] = a.tol;
    j["pass"] = ok;
    j["gauge"] = std::string(to_string(prof.gauge));
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("points %zu\nmax equation residual %.3g\nmax potential residual %.3g\n%s\n",
                res.t.size(), res.max_equation, res.max_potential, ok ? "pass" : "FAIL");
  }
  return ok ? kOk : kVerdict;
}

struct ExportArgs {
  std::string trajectory, gauge = "raw", profile, svg;
};

int cmd_export(const ExportArgs& a) {
  const Trajectory tr = trajectory_from_csv(parse_csv(read_file(a.trajectory)));
  const SolitonProfile prof = reconstruct(tr, gauge_from_string(a.gauge));
  if (a.profile.empty() && a.svg.empty()) throw InvalidArgument("nothing to export (--profile or --svg)");
  if (!a.profile.empty()) atomic_write(a.profile, profile_csv(prof));
  if (!a.svg.empty()) {
    std::vector<double> t;
    PlotSeries pa{"a", {}}, pb{"b", {}}, pc{"c", {}}, pf{"f", {}};
    for (const auto& s : prof.samples) {
      t.push_back(s.t);
      pa.y.push_back(s.a);
      pb.y.push_back(s.b);
      pc.y.push_back(s.c);
      pf.y.push_back(s.f);
    }
    atomic_write(a.svg, svg_plot("metric and potential", "t", t, {pa, pb, pc, pf}, true));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shooting and classification of cohomogeneity one Ricci solitons"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "integrate one trajectory and classify it");
  solve->add_option("--config", sa.config, "flat JSON config; flags override it");
  solve->add_option("--family", sa.family, "zeta | gamma | gamma_tilde");
  solve->add_option("--m", sa.m, "quaternionic dimension parameter (>= 1)");
  solve->add_option("--epsilon", sa.epsilon, "0 steady, 1 expanding");
  solve->add_option("--s", sa.s, "comma separated shoot vector");
  solve->add_option("--delta", sa.delta, "seed distance from the critical point");
  solve->add_option("--gauge", sa.gauge, "raw | normalize_C");
  solve->add_option("--eta-max", sa.eta_max, "integration horizon");
  solve->add_option("--rtol", sa.rtol, "relative tolerance of the integrator");
  solve->add_option("--atol", sa.atol, "absolute tolerance of the integrator");
  solve->add_option("--out-dir", sa.out_dir, "directory for artifacts");
  solve->add_option("--prefix", sa.prefix, "artifact file prefix");
  solve->add_flag("--einstein", sa.einstein, "allow s4 = 0 (Einstein subfamily)");
  solve->add_flag("--no-trajectory", sa.no_traj, "skip the trajectory CSV");
  solve->add_flag("--no-profile", sa.no_profile, "skip the profile CSV");
  solve->add_flag("--no-report", sa.no_report, "skip the JSON report");
  solve->add_flag("--svg", sa.svg, "write SVG plots");
  solve->add_flag("--strict", sa.strict, "exit 3 on an inconclusive verdict");
  solve->add_flag("--quiet", sa.quiet, "no summary on stdout");

  SweepArgs wa;
  wa.jobs = default_jobs();
  auto* sweep = app.add_subcommand("sweep", "classify a grid of shoot vectors");
  sweep->add_option("--family", wa.families, "families to include")->delimiter(',');
  sweep->add_option("--m", wa.ms, "values of m")->delimiter(',');
  sweep->add_option("--epsilon", wa.epsilons, "values of epsilon")->delimiter(',');
  sweep->add_option("--per-region", wa.per_region, "points per sign-pattern region");
  sweep->add_option("--grid", wa.grid, "JSON file with explicit items instead of the generated grid");
  sweep->add_option("--jobs", wa.jobs, "worker threads (default SOLITON_FORGE_JOBS or all cores)");
  sweep->add_option("--out-dir", wa.out_dir, "directory for artifacts");
  sweep->add_option("--prefix", wa.prefix, "artifact file prefix");
  sweep->add_flag("--einstein", wa.einstein, "add s4 = 0 boundary points");
  sweep->add_flag("--serial", wa.serial, "run on the calling thread only");
  sweep->add_flag("--strict", wa.strict, "exit 3 unless every row matches");
  sweep->add_flag("--quiet", wa.quiet, "no summary on stdout");

  LinearizeArgs la;
  auto* lin = app.add_subcommand("linearize", "jacobian and unstable eigenspace at a critical point");
  lin->add_option("--label", la.label, "P_HP | P_dot | P_OP1 | P_O")->required();
  lin->add_option("--family", la.family, "quaternionic | octonionic (checked against the label)");
  lin->add_option("--m", la.m, "quaternionic dimension parameter");
  lin->add_option("--epsilon", la.epsilon, "0 steady, 1 expanding");
  lin->add_flag("--json", la.json, "print JSON instead of text");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "residual check of a stored profile CSV");
  verify->add_option("profile", va.profile, "profile CSV to check")->required();
  verify->add_option("--tol", va.tol, "pass threshold on the max residual");
  verify->add_flag("--json", va.json, "print JSON instead of text");

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "rebuild profile CSV or SVG from a trajectory CSV");
  exp->add_option("trajectory", ea.trajectory, "trajectory CSV written by solve")->required();
  exp->add_option("--gauge", ea.gauge, "raw | normalize_C");
  exp->add_option("--profile", ea.profile, "output profile CSV");
  exp->add_option("--svg", ea.svg, "output SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kValidation;
  }

  try {
    if (*solve) return cmd_solve(sa);
    if (*sweep) return cmd_sweep(wa);
    if (*lin) return cmd_linearize(la);
    if (*verify) return cmd_verify(va);
    if (*exp) return cmd_export(ea);
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const SeedOutOfRegion& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const InsufficientData& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
