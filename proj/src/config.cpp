#include "ndirac/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "ndirac/errors.hpp"

namespace ndirac {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where, const std::set<std::string>& known) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError(where + "." + key + ": unknown field");
}

template <class T>
void read(const json& j, const std::string& where, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

KernelKind kernel_kind(const std::string& s) {
  if (s == "periodized_riesz") return KernelKind::periodized_riesz;
  if (s == "screened_bessel") return KernelKind::screened_bessel;
  throw ConfigError("kernel.kind: expected periodized_riesz or screened_bessel, got \"" + s + "\"");
}

TauMethod tau_method(const std::string& s) {
  if (s == "newton_cg") return TauMethod::newton_cg;
  if (s == "fixed_point") return TauMethod::fixed_point;
  throw ConfigError("solver.tau_method: expected newton_cg or fixed_point, got \"" + s + "\"");
}

}  // namespace

std::vector<double> SweepConfig::eps_values() const {
  if (!eps_list.empty()) return eps_list;
  std::vector<double> out;
  for (double f : eps_factors) out.push_back(f * cutoff_radius);
  return out;
}

GraftOptions SweepConfig::graft_options() const {
  GraftOptions o;
  o.cutoff_radius = cutoff_radius;
  o.xi_factor = xi_factor;
  o.spectral_modes = spectral_modes;
  return o;
}

bool OutputConfig::wants(const std::string& f) const {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

void RunConfig::validate() const {
  geometry.validate();
  if (geometry.n < 4 || geometry.n > 8) throw ConfigError("geometry.n: must lie in [4, 8]");
  if (geometry.grid_points_per_axis < 2 * geometry.modes_per_axis - 1)
    throw ConfigError("geometry.grid_points_per_axis: must be at least 2 modes_per_axis - 1 = " +
                      std::to_string(2 * geometry.modes_per_axis - 1));
  if (!(kernel.mu >= 0)) throw ConfigError("kernel.mu: must be nonnegative");
  if (kernel.kind == KernelKind::screened_bessel && !(kernel.mass > 0))
    throw ConfigError("kernel.mass: must be positive");
  solver.validate();
  if (!(sweep.cutoff_radius > 0) || !(2.0 * sweep.cutoff_radius < 3.141592653589793))
    throw ConfigError("sweep.cutoff_radius: need 0 < cutoff_radius < pi / 2");
  if (!(sweep.xi_factor > 0)) throw ConfigError("sweep.xi_factor: must be positive");
  if (sweep.spectral_modes < 0 || (sweep.spectral_modes > 0 && sweep.spectral_modes % 2 == 0))
    throw ConfigError("sweep.spectral_modes: must be 0 or a positive odd integer");
  const auto eps = sweep.eps_values();
  if (eps.empty()) throw ConfigError("sweep.eps_list: empty");
  for (double e : eps) {
    if (!(e > 0)) throw ConfigError("sweep.eps_list: entries must be positive");
    if (!(e < sweep.cutoff_radius)) throw ConfigError("sweep.eps_list: max eps must be below sweep.cutoff_radius");
  }
  for (const auto& f : output.formats)
    if (f != "csv" && f != "json") throw ConfigError("output.formats: unknown format \"" + f + "\"");
}

RunConfig config_from_json(const json& j) {
  reject_unknown(j, "config", {"geometry", "kernel", "solver", "sweep", "output", "seed"});
  RunConfig c;
  const json geo = j.value("geometry", json::object());
  reject_unknown(geo, "geometry", {"n", "modes_per_axis", "grid_points_per_axis", "spin_shift"});
  read(geo, "geometry", "n", c.geometry.n);
  read(geo, "geometry", "modes_per_axis", c.geometry.modes_per_axis);
  c.geometry.grid_points_per_axis = smooth_grid_size(2 * c.geometry.modes_per_axis - 1);
  read(geo, "geometry", "grid_points_per_axis", c.geometry.grid_points_per_axis);
  if (!geo.contains("spin_shift"))
    throw ConfigError("geometry.spin_shift: missing; the spin structure delta must be given explicitly");
  c.geometry.spin_shift.clear();
  read(geo, "geometry", "spin_shift", c.geometry.spin_shift);

  const json ker = j.value("kernel", json::object());
  reject_unknown(ker, "kernel", {"kind", "mu", "mass"});
  std::string kind = to_string(c.kernel.kind);
  read(ker, "kernel", "kind", kind);
  c.kernel.kind = kernel_kind(kind);
  read(ker, "kernel", "mu", c.kernel.mu);
  read(ker, "kernel", "mass", c.kernel.mass);

  const json sol = j.value("solver", json::object());
  reject_unknown(sol, "solver", {"tau_tol", "tau_max_iter", "tau_method", "theta", "newton_tol", "outer_max_iter",
                                 "grad_tol", "step0", "starts", "disable_tau"});
  read(sol, "solver", "tau_tol", c.solver.tau_tol);
  read(sol, "solver", "tau_max_iter", c.solver.tau_max_iter);
  std::string method = "newton_cg";
  read(sol, "solver", "tau_method", method);
  c.solver.tau_method = tau_method(method);
  read(sol, "solver", "theta", c.solver.theta);
  read(sol, "solver", "newton_tol", c.solver.newton_tol);
  read(sol, "solver", "outer_max_iter", c.solver.outer_max_iter);
  read(sol, "solver", "grad_tol", c.solver.grad_tol);
  read(sol, "solver", "step0", c.solver.step0);
  read(sol, "solver", "starts", c.solver.starts);
  read(sol, "solver", "disable_tau", c.solver.disable_tau);

  const json sw = j.value("sweep", json::object());
  reject_unknown(sw, "sweep", {"eps_factors", "eps_list", "cutoff_radius", "xi_factor", "spectral_modes"});
  read(sw, "sweep", "eps_factors", c.sweep.eps_factors);
  read(sw, "sweep", "eps_list", c.sweep.eps_list);
  read(sw, "sweep", "cutoff_radius", c.sweep.cutoff_radius);
  read(sw, "sweep", "xi_factor", c.sweep.xi_factor);
  read(sw, "sweep", "spectral_modes", c.sweep.spectral_modes);

  const json out = j.value("output", json::object());
  reject_unknown(out, "output", {"directory", "formats"});
  read(out, "output", "directory", c.output.directory);
  read(out, "output", "formats", c.output.formats);

  read(j, "config", "seed", c.seed);
  c.solver.seed = c.seed;
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["geometry"] = {{"n", c.geometry.n},
                   {"modes_per_axis", c.geometry.modes_per_axis},
                   {"grid_points_per_axis", c.geometry.grid_points_per_axis},
                   {"spin_shift", c.geometry.spin_shift}};
  j["kernel"] = {{"kind", to_string(c.kernel.kind)}, {"mu", c.kernel.mu}, {"mass", c.kernel.mass}};
  j["solver"] = {{"tau_tol", c.solver.tau_tol},
                 {"tau_max_iter", c.solver.tau_max_iter},
                 {"tau_method", c.solver.tau_method == TauMethod::newton_cg ? "newton_cg" : "fixed_point"},
                 {"theta", c.solver.theta},
                 {"newton_tol", c.solver.newton_tol},
                 {"outer_max_iter", c.solver.outer_max_iter},
                 {"grad_tol", c.solver.grad_tol},
                 {"step0", c.solver.step0},
                 {"starts", c.solver.starts},
                 {"disable_tau", c.solver.disable_tau}};
  j["sweep"] = {{"eps_factors", c.sweep.eps_factors},
                {"eps_list", c.sweep.eps_list},
                {"cutoff_radius", c.sweep.cutoff_radius},
                {"xi_factor", c.sweep.xi_factor},
                {"spectral_modes", c.sweep.spectral_modes}};
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  j["seed"] = c.seed;
  return j;
}

std::string config_hash(const RunConfig& c) {
  json j = to_json(c);
  j.erase("output");  // where results go does not change them
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ndirac
