#include "ndirac/app.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"

#include "ndirac/config.hpp"
#include "ndirac/constants.hpp"
#include "ndirac/errors.hpp"
#include "ndirac/radial_graft.hpp"
#include "ndirac/report.hpp"
#include "ndirac/suites.hpp"
#include "ndirac/variational.hpp"

namespace ndirac {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Overrides {
  std::string config_path;
  std::string output_dir;
  std::optional<int> n;
  std::optional<int> L;
  std::optional<std::uint64_t> seed;
  std::optional<double> mu;
  std::vector<double> eps_list;
  std::optional<int> starts;
  std::optional<int> spectral_modes;
  int samples = 0;
};

RunConfig effective_config(const Overrides& o) {
  RunConfig c;
  const bool from_file = !o.config_path.empty();
  if (from_file) c = load_config(o.config_path);
  if (o.n) {
    c.geometry.n = *o.n;
    if (!from_file) c.geometry = default_spec(*o.n, c.geometry.modes_per_axis);
  }
  if (o.L) {
    c.geometry.modes_per_axis = *o.L;
    c.geometry.grid_points_per_axis = smooth_grid_size(2 * *o.L - 1);
  }
  if (o.seed) c.seed = *o.seed;
  c.solver.seed = c.seed;
  if (o.mu) c.kernel.mu = *o.mu;
  if (!o.eps_list.empty()) c.sweep.eps_list = o.eps_list;
  if (o.starts) c.solver.starts = *o.starts;
  if (o.spectral_modes) c.sweep.spectral_modes = *o.spectral_modes;
  if (const char* env = std::getenv("NDIRAC_OUTPUT_DIR"); env && *env) c.output.directory = env;
  if (!o.output_dir.empty()) c.output.directory = o.output_dir;
  c.validate();
  return c;
}

struct Checks {
  CsvTable table{{"check", "value", "tolerance", "provenance", "pass"}, {}};
  bool all = true;

  void add(const std::string& name, double value, double tol, Provenance p) {
    const bool ok = value < tol;
    all = all && ok;
    table.add({name, fmt(value), fmt(tol), to_string(p), ok ? "true" : "false"});
  }
};

class Emitter {
 public:
  Emitter(const RunConfig& c, std::ostream& out) : c_(c), out_(out), meta_{config_hash(c), c.seed} {}

  void csv(const std::string& name, const CsvTable& t) {
    if (c_.output.wants("csv")) put(name + ".csv", render_csv(t, meta_));
  }
  void json_report(const std::string& name, const json& j) {
    if (c_.output.wants("json")) put(name + ".json", render_json(j, meta_));
  }

 private:
  void put(const std::string& file, const std::string& body) {
    const fs::path p = fs::path(c_.output.directory) / file;
    write_text(p, body);
    out_ << "wrote " << p.string() << "\n";
  }

  const RunConfig& c_;
  std::ostream& out_;
  RunMeta meta_;
};

int finish_checks(const Checks& ch, std::ostream& out) {
  for (const auto& row : ch.table.rows)
    out << (row[4] == "true" ? "PASS " : "FAIL ") << row[0] << " = " << row[1] << " (< " << row[2] << ")\n";
  return ch.all ? 0 : 4;
}

std::string tag(const RunConfig& c) { return "_n" + std::to_string(c.geometry.n); }

int cmd_constants(const RunConfig& c, std::ostream& out) {
  const int n = c.geometry.n;
  const DimensionalConstants dc = compute_constants(n);
  const AuditReport audit = audit_bubble_chain(n);
  CsvTable t{{"name", "value", "provenance", "discrepancy"}, {}};
  for (const auto& e : dc.table()) t.add({e.name, fmt(e.value), to_string(e.provenance), fmt(e.discrepancy)});
  for (const auto& e : audit.table()) t.add({"audit." + e.name, fmt(e.value), to_string(e.provenance), fmt(e.discrepancy)});
  const ConstantsSuite s = constants_suite(n);
  Checks ch;
  ch.add("b_n_forms", s.b_n_disc, 1e-12, Provenance::consistency);
  if (n == 4) ch.add("d_4_minus_1", s.d4_error, 1e-12, Provenance::formula);
  ch.add("riesz_C_n_spread", s.riesz_spread, 1e-4, Provenance::quadrature);
  ch.add("I_n_vs_beta", s.I_n_disc, 1e-8, Provenance::quadrature);
  Emitter em(c, out);
  em.csv("constants" + tag(c), t);
  em.csv("checks_constants" + tag(c), ch.table);
  return finish_checks(ch, out);
}

int cmd_bubble(const RunConfig& c, int samples, std::ostream& out) {
  const BubbleSuite s = bubble_suite(c.geometry.n, samples > 0 ? samples : 1000, c.seed);
  Checks ch;
  ch.add("dirac_residual_max", s.dirac_residual, 1e-10, Provenance::formula);
  ch.add("convolution_rel_max", s.convolution_rel, 1e-4, Provenance::quadrature);
  ch.add("energy_route_disc", s.route_disc, 1e-6, Provenance::quadrature);
  ch.add("energy_closed_form_disc", s.closed_form_disc, 1e-6, Provenance::quadrature);
  Emitter(c, out).csv("checks_bubble" + tag(c), ch.table);
  return finish_checks(ch, out);
}

int cmd_curvature(const RunConfig& c, int samples, std::ostream& out) {
  const int n = c.geometry.n;
  const int m = samples > 0 ? samples : 20;
  const CliffordSuite cl = clifford_suite(n, 100, c.seed);
  const CurvatureSuite cu = curvature_suite(n, m, c.seed);
  const ContractionSuite lm = contraction_suite(n, m, 10, c.seed);
  Checks ch;
  ch.add("clifford_anticommutation", cl.anticommutation, 1e-12, Provenance::formula);
  ch.add("clifford_skew_hermitian", cl.skew_hermitian, 1e-12, Provenance::formula);
  ch.add("riemann_symmetry_defect", cu.symmetry_defect, 1e-12, Provenance::formula);
  ch.add("weyl_of_constant_curvature", cu.weyl_of_constant, 1e-12, Provenance::formula);
  ch.add("omega_hermitian_defect", cu.omega_hermitian, 1e-12, Provenance::formula);
  ch.add("cnc_ricci", cu.cnc_ricci, 1e-10, Provenance::formula);
  ch.add("cnc_cyclic", cu.cnc_cyclic, 1e-10, Provenance::formula);
  ch.add("cnc_quartic", cu.cnc_quartic, 1e-10, Provenance::formula);
  ch.add("cnc_laplacian", cu.cnc_laplacian, 1e-10, Provenance::formula);
  ch.add("contraction_residual_ricci_flat", lm.max_residual, 1e-10, Provenance::formula);
  Emitter(c, out).csv("checks_curvature" + tag(c), ch.table);
  return finish_checks(ch, out);
}

int cmd_graft(const RunConfig& c, std::ostream& out) {
  const DimensionalConstants dc = compute_constants(c.geometry.n);
  const SweepResult r = graft_sweep(c.sweep.eps_values(), c.geometry, c.kernel, dc, c.sweep.graft_options());
  CsvTable t{{"eps", "quantity", "value", "provenance"}, {}};
  for (const auto& p : r.points) {
    const std::string e = fmt(p.eps);
    t.add({e, "energy", fmt(p.energy), "radial"});
    t.add({e, "quadratic", fmt(p.quadratic), "radial"});
    t.add({e, "quartic", fmt(p.quartic), "radial"});
    t.add({e, "gap", fmt(p.gap), "radial"});
    t.add({e, "grad_norm", fmt(p.grad_norm), "radial"});
    t.add({e, "nonradial_bound", fmt(p.nonradial_bound), "radial"});
    t.add({e, "l2_sq", fmt(p.l2_sq), "radial"});
    if (c.sweep.spectral_modes > 0) {
      t.add({e, "spectral_energy", fmt(p.spectral_energy), "spectral"});
      t.add({e, "spectral_grad", fmt(p.spectral_grad), "spectral"});
    }
  }
  json s;
  s["mass_A_T"] = r.mass;
  s["bubble_energy"] = dc.Ybar_sphere;
  s["grad_fit"] = {{"exponent", r.grad_fit.exponent}, {"log_coefficient", r.grad_fit.log_coefficient},
                   {"r_squared", r.grad_fit.r_squared}};
  s["gap_fit"] = {{"exponent", r.gap_fit.exponent}, {"log_coefficient", r.gap_fit.log_coefficient},
                  {"r_squared", r.gap_fit.r_squared}};
  s["gap_log_coefficient_fixed_exponent"] = r.gap_log_coefficient_fixed;
  s["gap_positive"] = r.gap_positive;
  s["grad_monotone"] = r.grad_monotone;
  CsvTable f{{"quantity", "value", "provenance"}, {}};
  f.add({"mass_A_T", fmt(r.mass), "quadrature"});
  f.add({"grad_exponent", fmt(r.grad_fit.exponent), "fit"});
  f.add({"grad_r_squared", fmt(r.grad_fit.r_squared), "fit"});
  f.add({"gap_exponent", fmt(r.gap_fit.exponent), "fit"});
  f.add({"gap_r_squared", fmt(r.gap_fit.r_squared), "fit"});
  f.add({"gap_log_coefficient_fixed_exponent", fmt(r.gap_log_coefficient_fixed), "fit"});
  Emitter em(c, out);
  em.csv("graft_sweep" + tag(c), t);
  em.csv("graft_fit" + tag(c), f);
  em.json_report("graft_fit" + tag(c), s);
  for (const auto& p : r.points)
    out << "eps " << fmt(p.eps) << "  J " << fmt(p.energy) << "  gap " << fmt(p.gap) << "  grad " << fmt(p.grad_norm)
        << "\n";
  out << "grad exponent " << fmt(r.grad_fit.exponent) << " (r^2 " << fmt(r.grad_fit.r_squared) << "), gap exponent "
      << fmt(r.gap_fit.exponent) << ", gap positive " << (r.gap_positive ? "yes" : "no") << "\n";
  return r.gap_positive && r.grad_monotone ? 0 : 4;
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  Torus t(c.geometry);
  Functional f(t, c.kernel);
  const GroundStateReport r = minimize_delta0(f, c.solver);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0; i < r.start_values.size(); ++i)
    if (r.start_converged[i]) {
      lo = std::min(lo, r.start_values[i]);
      hi = std::max(hi, r.start_values[i]);
    }
  json j;
  j["delta0_estimate"] = r.delta0_estimate;
  j["gradient_norm"] = r.gradient_norm;
  j["nehari_residual"] = r.nehari_residual;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["best_start"] = r.best_start;
  j["start_values"] = r.start_values;
  j["start_converged"] = r.start_converged;
  j["start_spread_relative"] = lo <= hi ? (hi - lo) / std::abs(lo) : NAN;
  CsvTable tr{{"start", "iteration", "value", "gradient_norm", "t_star", "step", "provenance"}, {}};
  for (const auto& row : r.trace)
    tr.add({std::to_string(row.start), std::to_string(row.iteration), fmt(row.value), fmt(row.gradient_norm),
            fmt(row.t_star), fmt(row.step), "spectral"});
  Emitter em(c, out);
  em.json_report("ground_state" + tag(c), j);
  em.csv("ground_state_trace" + tag(c), tr);
  out << "delta0 " << fmt(r.delta0_estimate) << "  grad " << fmt(r.gradient_norm) << "  converged "
      << (r.converged ? "yes" : "no") << "\n";
  return r.converged ? 0 : 3;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear Dirac ground states on flat tori: verification suites and solvers", "ndirac"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--output-dir", o.output_dir, "Output directory (overrides NDIRAC_OUTPUT_DIR and the config)");
  app.add_option("--seed", o.seed, "Random seed");

  auto* constants = app.add_subcommand("constants", "Dimensional constants and the normalization audit");
  auto* bubble = app.add_subcommand("bubble-verify", "Bubble identities: Dirac residual, convolution, energy routes");
  auto* curvature = app.add_subcommand("curvature-check", "Clifford, curvature-jet and bubble contraction identities");
  auto* graft = app.add_subcommand("graft-sweep", "Grafted bubble sweep over eps");
  auto* solve = app.add_subcommand("solve-ground-state", "Multi-start minimization of the reduced functional");
  for (auto* s : {constants, bubble, curvature, graft, solve}) s->add_option("--n", o.n, "Dimension");
  for (auto* s : {bubble, curvature}) s->add_option("--samples", o.samples, "Sample count");
  graft->add_option("--eps-list", o.eps_list, "Bubble scales")->delimiter(',');
  graft->add_option("--mu", o.mu, "Kernel zero mode");
  graft->add_option("--spectral-modes", o.spectral_modes, "Also evaluate on an L-mode lattice (odd L)");
  solve->add_option("--L", o.L, "Modes per axis");
  solve->add_option("--seeds", o.starts, "Number of starts");
  solve->add_option("--mu", o.mu, "Kernel zero mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    const RunConfig c = effective_config(o);
    if (*constants) return cmd_constants(c, out);
    if (*bubble) return cmd_bubble(c, o.samples, out);
    if (*curvature) return cmd_curvature(c, o.samples, out);
    if (*graft) return cmd_graft(c, out);
    return cmd_solve(c, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "did not converge: " << e.what() << "\n";
    return 3;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace ndirac
