#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "initial_conditions.hpp"
#include "oscillab/diagnostics.hpp"
#include "oscillab/errors.hpp"
#include "oscillab/export.hpp"
#include "oscillab/lattice_spectral.hpp"
#include "oscillab/nonlinear_analysis.hpp"
#include "oscillab/oscillation_conditions.hpp"
#include "oscillab/schemes.hpp"
#include "oscillab/simulate.hpp"
#include "oscillab/tolerances.hpp"
#include "oscillab/tridiag_eigen.hpp"

namespace oscillab::cli {
namespace {

using nlohmann::json;

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> schemes;
  std::optional<std::string> kind;
  std::optional<std::size_t> k;
  std::optional<double> dx;
  std::optional<double> dt;
  std::optional<double> r;
  double delta = 1.0;
  std::optional<double> rho;
  double a = 0.5;
  std::optional<double> bc_left;
  std::optional<double> bc_right;
  std::string ic = "ramp";
  std::uint64_t seed = 0;
  std::size_t steps = 1000;
  std::string out;
  std::vector<std::string> formats;
  std::vector<double> sigmas;
  std::string form = "jacobian";
};

// Values a command falls back to when a flag is absent.
struct Defaults {
  std::size_t k;
  std::optional<double> dx;  // unset: 1 / (k + 1)
  std::optional<double> r;   // unset: one of --dt / --r is required
  double rho;
  std::vector<std::string> formats;
  std::string out;
  std::string kind = "heat";
  double bc_left = 0.0;
  double bc_right = 0.0;
};

Defaults defaults_for(const std::string& command) {
  if (command == "spectrum") return {10, std::nullopt, std::nullopt, 0.0, {"csv"}, ""};
  if (command == "bounds") return {10, std::nullopt, std::nullopt, 0.0, {"csv"}, ""};
  if (command == "simulate") {
    return {100, std::nullopt, std::nullopt, 0.0, {"csv", "pgm", "json"}, "oscillab_run"};
  }
  if (command == "nonlinear-eigs") {
    return {60, 1.0, 1.0, 1.0, {"csv", "json"}, "oscillab_eigs", "fisher_kpp", 1.0, 0.0};
  }
  return {50, std::nullopt, std::nullopt, 0.0, {"json"}, ""};  // check
}

struct Resolved {
  RunConfig cfg;
  std::size_t k;
  double dx;
  double rho;
  std::vector<std::string> formats;
  std::string out;
  std::string kind;
  double bc_left;
  double bc_right;
  std::string hash;
  json canonical;

  bool wants(const std::string& f) const {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  }
};

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

Resolved resolve(const RunConfig& cfg) {
  const Defaults d = defaults_for(cfg.command);
  Resolved res{cfg,
               cfg.k.value_or(d.k),
               0.0,
               cfg.rho.value_or(d.rho),
               cfg.formats,
               cfg.out,
               cfg.kind.value_or(d.kind),
               cfg.bc_left.value_or(d.bc_left),
               cfg.bc_right.value_or(d.bc_right),
               "",
               json::object()};
  if (res.k == 0) throw InvalidInput("--k must be positive");
  res.dx = cfg.dx.value_or(d.dx.value_or(1.0 / static_cast<double>(res.k + 1)));
  if (cfg.dt && cfg.r) throw InvalidInput("give exactly one of --dt and --r");
  if (!cfg.dt && !cfg.r) {
    if (!d.r && cfg.command != "bounds") throw InvalidInput("one of --dt and --r is required");
    res.cfg.r = d.r;
  }
  if (res.formats.empty()) res.formats = d.formats;
  if (res.out.empty()) res.out = d.out;

  // The output location is not hashed: the same run written elsewhere
  // carries the same hash.
  json& c = res.canonical;
  c["command"] = cfg.command;
  c["schemes"] = cfg.schemes;
  c["kind"] = res.kind;
  c["k"] = res.k;
  c["dx"] = number(res.dx);
  c["dt"] = res.cfg.dt ? number(*res.cfg.dt) : json(nullptr);
  c["r"] = res.cfg.r ? number(*res.cfg.r) : json(nullptr);
  c["delta"] = number(cfg.delta);
  c["rho"] = number(res.rho);
  c["a"] = number(cfg.a);
  c["bc_left"] = number(res.bc_left);
  c["bc_right"] = number(res.bc_right);
  c["ic"] = cfg.ic;
  c["seed"] = cfg.seed;
  c["steps"] = cfg.steps;
  c["formats"] = res.formats;
  c["sigma"] = cfg.sigmas;
  c["form"] = cfg.form;
  res.hash = io::config_hash(c.dump());
  return res;
}

schemes::Discretization make_disc(const Resolved& res) {
  const auto& cfg = res.cfg;
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) throw InvalidInput("--delta must be positive");
  if (!(res.dx > 0.0) || !std::isfinite(res.dx)) throw InvalidInput("--dx must be positive");
  if (!std::isfinite(res.rho)) throw InvalidInput("--rho must be finite");
  if (cfg.r) {
    if (!(*cfg.r > 0.0) || !std::isfinite(*cfg.r)) throw InvalidInput("--r must be positive");
    return schemes::Discretization::from_ratio(res.k, *cfg.r, res.dx, cfg.delta, res.rho);
  }
  if (!(*cfg.dt > 0.0) || !std::isfinite(*cfg.dt)) throw InvalidInput("--dt must be positive");
  return schemes::Discretization::from_time_step(res.k, res.dx, *cfg.dt, cfg.delta, res.rho);
}

schemes::RationalScheme single_scheme(const Resolved& res, const char* fallback) {
  if (res.cfg.schemes.size() > 1) throw InvalidInput("this command takes a single --scheme");
  if (res.cfg.schemes.empty()) return schemes::builtin_scheme(fallback);
  return schemes::parse_scheme(res.cfg.schemes.front());
}

sim::Problem make_problem(const Resolved& res, const schemes::Discretization& disc) {
  sim::Problem p;
  p.kind = sim::parse_problem_kind(res.kind);
  p.disc = disc;
  p.a_param = res.cfg.a;
  p.bc = {res.bc_left, res.bc_right};
  p.initial = make_initial_condition(res.cfg.ic, res.k, p.bc, res.cfg.seed);
  p.validate();
  return p;
}

std::ofstream open_file(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoFailure("failed writing '" + path + "'");
}

template <class Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  auto f = open_file(path);
  write(f);
  finish(f, path);
}

int cmd_spectrum(const Resolved& res, std::ostream& out) {
  const auto scheme = single_scheme(res, "forward_euler");
  const auto disc = make_disc(res);
  const auto spec = schemes::scheme_spectrum(scheme, disc);
  const bool as_json = res.wants("json");
  emit(res.out, out, [&](std::ostream& os) {
    if (!as_json) {
      io::write_spectrum_csv(os, spec, res.hash);
      return;
    }
    json j;
    j["config_hash"] = res.hash;
    j["scheme"] = scheme.name();
    j["r"] = number(disc.r);
    j["sigma"] = number(disc.sigma);
    json rows = json::array();
    for (std::size_t i = 0; i < spec.lambdas.size(); ++i) {
      rows.push_back({{"j", i + 1},
                      {"lambda", number(spec.lambdas[i])},
                      {"scheme_value", number((*spec.scheme_values)[i])}});
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
  });
  return 0;
}

std::vector<schemes::RationalScheme> scheme_list(const std::vector<std::string>& specs) {
  if (specs.empty()) return schemes::table_schemes();
  std::vector<schemes::RationalScheme> list;
  for (const auto& s : specs) {
    if (s.empty()) throw InvalidInput("empty scheme list");
    if (s == "table") {
      for (auto& t : schemes::table_schemes()) list.push_back(std::move(t));
    } else if (s == "all") {
      for (auto& t : schemes::all_builtin_schemes()) list.push_back(std::move(t));
    } else {
      list.push_back(schemes::parse_scheme(s));
    }
  }
  return list;
}

int cmd_bounds(const Resolved& res, std::ostream& out) {
  const auto list = scheme_list(res.cfg.schemes);
  std::vector<double> sigmas = res.cfg.sigmas;
  if (sigmas.empty()) sigmas.push_back(0.0);
  for (double s : sigmas)
    if (!std::isfinite(s)) throw InvalidInput("--sigma values must be finite");
  const auto rows = conditions::bounds_table(list, sigmas);
  const bool as_json = res.wants("json");
  emit(res.out, out, [&](std::ostream& os) {
    if (!as_json) {
      io::write_bounds_csv(os, rows, res.hash);
      return;
    }
    json j;
    j["config_hash"] = res.hash;
    json arr = json::array();
    for (const auto& row : rows) {
      auto b = [](const conditions::RBound& x) {
        return x.is_finite() ? number(x.value()) : json(x.to_string());
      };
      arr.push_back({{"scheme", row.scheme},
                     {"sigma", number(row.sigma)},
                     {"nonneg", b(row.nonneg)},
                     {"balanced", b(row.balanced)},
                     {"stable", b(row.stable)}});
    }
    j["rows"] = std::move(arr);
    os << j.dump(2) << '\n';
  });
  return 0;
}

int cmd_simulate(const Resolved& res, std::ostream& out) {
  const auto scheme = single_scheme(res, "forward_euler");
  const auto disc = make_disc(res);
  const auto problem = make_problem(res, disc);
  const auto traj = sim::run(problem, scheme, res.cfg.steps);
  const Vector steady = sim::steady_state(problem, scheme);

  if (res.wants("csv")) {
    const std::string path = res.out + ".csv";
    auto f = open_file(path);
    io::write_trajectory_csv(f, traj, res.hash);
    finish(f, path);
  }
  if (res.wants("pgm")) {
    const std::string path = res.out + ".pgm";
    auto f = open_file(path, true);
    const auto scaling = io::write_pgm(f, traj);
    finish(f, path);
    const std::string side = path + ".json";
    auto g = open_file(side);
    g << io::pgm_sidecar_json(scaling, res.hash) << '\n';
    finish(g, side);
  }

  std::optional<diagnostics::OscillationReport> report;
  if (traj.states.size() >= 2) report = diagnostics::oscillation_score(traj, steady);

  if (res.wants("csv") && report) {
    const std::string path = res.out + "_profile.csv";
    auto f = open_file(path);
    io::write_profile_csv(f, report->spatial_profile, res.hash);
    finish(f, path);
  }
  if (res.wants("json")) {
    json j;
    j["config_hash"] = res.hash;
    j["config"] = res.canonical;
    j["scheme"] = scheme.name();
    j["scheme_coefficients"] = scheme.describe();
    j["r"] = number(disc.r);
    j["sigma"] = number(disc.sigma);
    j["steps_run"] = traj.states.size() - 1;
    j["diverged"] = traj.diverged;
    j["diverged_at"] = traj.diverged_at ? json(*traj.diverged_at) : json(nullptr);
    j["report"] = report ? json::parse(io::to_json(*report)) : json(nullptr);
    const std::string path = res.out + ".json";
    auto f = open_file(path);
    f << j.dump(2) << '\n';
    finish(f, path);
  }
  (void)out;
  return 0;
}

int cmd_nonlinear_eigs(const Resolved& res, std::ostream& out) {
  const auto scheme = single_scheme(res, "forward_euler");
  const auto disc = make_disc(res);
  const sim::Problem problem = make_problem(res, disc);
  nonlinear::FrozenForm form;
  if (res.cfg.form == "jacobian") {
    form = nonlinear::FrozenForm::Jacobian;
  } else if (res.cfg.form == "secant") {
    form = nonlinear::FrozenForm::Secant;
  } else {
    throw InvalidInput("--form must be jacobian or secant");
  }

  const Vector steady = sim::steady_state(problem, scheme);
  const Matrix m = nonlinear::frozen_jacobian(problem, scheme, steady, form);
  const auto decomp = eigen::symmetric_eigen(m);
  const auto loc = nonlinear::localization_metrics(decomp);
  const auto pairs = nonlinear::pairing_symmetry(decomp);
  const double wave_tol = 0.25 * std::sqrt(2.0 / static_cast<double>(res.k + 1));

  double ortho = 0.0;
  const Matrix gram = decomp.vectors.transposed().multiply(decomp.vectors);
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      ortho = std::max(ortho, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));

  if (res.wants("csv")) {
    auto write = [&](const std::string& suffix, auto&& fn) {
      const std::string path = res.out + suffix;
      auto f = open_file(path);
      fn(f);
      finish(f, path);
    };
    write("_eigenvalues.csv", [&](std::ostream& os) {
      io::write_eigenvalues_csv(os, decomp, loc, res.hash);
    });
    write("_eigenvectors.csv",
          [&](std::ostream& os) { io::write_eigenvectors_csv(os, decomp, res.hash); });
    write("_pairing.csv",
          [&](std::ostream& os) { io::write_pairing_csv(os, pairs, wave_tol, res.hash); });
    write("_steady.csv", [&](std::ostream& os) {
      os << "# config_hash=" << res.hash << "\ni,u\n";
      for (std::size_t i = 0; i < steady.size(); ++i)
        os << i + 1 << ',' << io::format_number(steady[i]) << '\n';
    });
  }
  if (res.wants("json")) {
    json j;
    j["config_hash"] = res.hash;
    j["config"] = res.canonical;
    j["kind"] = std::string(sim::to_string(problem.kind));
    j["form"] = res.cfg.form;
    j["residual_norm"] = number(decomp.residual_norm);
    j["orthogonality_error"] = number(ortho);
    j["wave_like_tol"] = number(wave_tol);
    j["eigenvalues"] = json::array();
    for (double v : decomp.values) j["eigenvalues"].push_back(number(v));
    json lj = json::array();
    for (const auto& l : loc) {
      lj.push_back({{"participation_ratio", number(l.participation_ratio)},
                    {"center_of_mass", number(l.center_of_mass)}});
    }
    j["localization"] = std::move(lj);
    json pj = json::array();
    for (const auto& p : pairs) {
      pj.push_back({{"j", p.j},
                    {"partner", p.partner},
                    {"magnitude_mismatch", number(p.magnitude_mismatch)},
                    {"wave_like", p.magnitude_mismatch <= wave_tol}});
    }
    j["pairing"] = std::move(pj);
    const std::string path = res.out + ".json";
    auto f = open_file(path);
    f << j.dump(2) << '\n';
    finish(f, path);
  }
  (void)out;
  return 0;
}

int cmd_check(const Resolved& res, std::ostream& out) {
  const auto scheme = single_scheme(res, "forward_euler");
  const auto disc = make_disc(res);
  const auto problem = make_problem(res, disc);
  if (!sim::is_linear(problem.kind)) {
    throw InvalidInput("check applies to heat and linear_rd problems");
  }
  const Vector steady = sim::steady_state(problem, scheme);
  Vector dev(res.k);
  for (std::size_t i = 0; i < res.k; ++i) dev[i] = problem.initial[i] - steady[i];
  const Vector coeffs = lattice::dst(dev);
  const auto tol = Tolerances::from_environment();
  const auto report = conditions::classify(scheme, problem.kind == sim::ProblemKind::Heat
                                                       ? disc.without_reaction()
                                                       : disc,
                                           coeffs, tol);
  json j = json::parse(io::to_json(report));
  j["config_hash"] = res.hash;
  const std::string text = j.dump(2);
  out << text << '\n';
  if (!res.out.empty()) {
    auto f = open_file(res.out);
    f << text << '\n';
    finish(f, res.out);
  }
  return conditions::exit_code(report.classification);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--scheme", cfg.schemes,
                  "scheme name (forward_euler, backward_euler, crank_nicolson, taylor(m)) or "
                  "\"p: c0,c1,... / q: d0,d1,...\"");
  sub->add_option("--kind", cfg.kind, "heat, linear_rd, nonlinear_rd, fisher_kpp, cubic_rd");
  sub->add_option("--k", cfg.k, "interior grid points");
  sub->add_option("--dx", cfg.dx, "grid spacing (default 1/(k+1))");
  sub->add_option("--dt", cfg.dt, "time step");
  sub->add_option("--r", cfg.r, "mesh ratio delta dt / dx^2");
  sub->add_option("--delta", cfg.delta, "diffusivity")->capture_default_str();
  sub->add_option("--rho", cfg.rho, "reaction coefficient");
  sub->add_option("--a", cfg.a, "cubic parameter a")->capture_default_str();
  sub->add_option("--bc-left", cfg.bc_left, "left Dirichlet value");
  sub->add_option("--bc-right", cfg.bc_right, "right Dirichlet value");
  sub->add_option("--ic", cfg.ic, "ramp, sine:j, step, noise[:seed[:amp]], file:path")
      ->capture_default_str();
  sub->add_option("--seed", cfg.seed, "seed for noise without an explicit seed")
      ->capture_default_str();
  sub->add_option("--steps", cfg.steps, "time steps")->capture_default_str();
  sub->add_option("--out", cfg.out, "output path (spectrum, bounds, check) or prefix");
  sub->add_option("--format", cfg.formats, "csv, json, pgm")
      ->delimiter(',')
      ->check(CLI::IsMember({"csv", "json", "pgm"}));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oscillation analysis for finite-difference schemes on 1-D parabolic problems",
               "oscillab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "scheme eigenvalues R(r lambda_j - sigma)");
  auto* bounds = app.add_subcommand("bounds", "largest oscillation-free, balanced, stable r");
  auto* simulate = app.add_subcommand("simulate", "time-step a problem and score oscillations");
  auto* eigs = app.add_subcommand("nonlinear-eigs",
                                  "eigenvectors of the frozen Jacobian about a steady profile");
  auto* check = app.add_subcommand("check", "classify a configuration; exit code is the class");
  for (auto* sub : {spectrum, bounds, simulate, eigs, check}) add_common(sub, cfg);
  bounds->add_option("--sigma", cfg.sigmas, "reaction shifts rho dt")->delimiter(',');
  eigs->add_option("--form", cfg.form, "jacobian or secant")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    const Resolved res = resolve(cfg);
    if (cfg.command == "spectrum") return cmd_spectrum(res, out);
    if (cfg.command == "bounds") return cmd_bounds(res, out);
    if (cfg.command == "simulate") return cmd_simulate(res, out);
    if (cfg.command == "nonlinear-eigs") return cmd_nonlinear_eigs(res, out);
    return cmd_check(res, out);
  } catch (const InvalidInput& e) {
    err << "oscillab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PoleError& e) {
    err << "oscillab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoFailure& e) {
    err << "oscillab: " << e.what() << '\n';
    return kExitIo;
  } catch (const OscillabError& e) {
    err << "oscillab: " << e.what() << '\n';
    return kExitSoftware;
  }
}

}  // namespace oscillab::cli
