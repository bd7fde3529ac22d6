// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ndirac/app.hpp"
#include "ndirac/constants.hpp"
#include "ndirac/radial_graft.hpp"
#include "ndirac/suites.hpp"
#include "ndirac/variational.hpp"

using namespace ndirac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // value < tol, recorded in the detail line
  void below(const std::string& name, double value, double tol) {
    const bool ok = value < tol;
    pass = pass && ok;
    detail << ' ' << name << '=' << value << (ok ? " < " : " !< ") << tol << ';';
  }
  void require(const std::string& name, bool ok, const std::string& what = "") {
    pass = pass && ok;
    detail << ' ' << name << '=' << (ok ? "yes" : "no");
    if (!what.empty()) detail << " (" << what << ')';
    detail << ';';
  }
  void note(const std::string& s) { detail << ' ' << s << ';'; }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.note(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.below("runtime_s", secs, budget_s);
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << " [" << name << "] " << (o.pass ? "PASS" : "FAIL") << ':' << o.detail.str()
            << std::endl;
}

std::vector<double> sweep_eps() {
  std::vector<double> e;
  for (double f : {0.3, 0.2, 0.14, 0.1, 0.07}) e.push_back(f * 1.4);
  return e;
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ndirac");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

std::string num(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  std::cout.precision(6);
  const std::uint64_t seed = 20260101;

  criterion(1, "clifford", 1.0, [&](Outcome& o) {
    double ac = 0, sh = 0;
    for (int n = 4; n <= 8; ++n) {
      const auto s = clifford_suite(n, 100, seed + n);
      ac = std::max(ac, s.anticommutation);
      sh = std::max(sh, s.skew_hermitian);
    }
    o.below("anticommutation", ac, 1e-12);
    o.below("skew_hermitian", sh, 1e-12);
  });

  criterion(2, "bubble", 60.0, [&](Outcome& o) {
    for (int n : {4, 5, 6}) {
      const auto s = bubble_suite(n, 1000, seed + n);
      const std::string t = "_n" + std::to_string(n);
      o.below("dirac_residual" + t, s.dirac_residual, 1e-10);
      o.below("convolution_rel" + t, s.convolution_rel, 1e-4);
      o.below("energy_routes" + t, s.route_disc, 1e-6);
    }
  });

  criterion(3, "constants", 60.0, [&](Outcome& o) {
    double bn = 0, riesz = 0, in = 0;
    for (int n = 4; n <= 8; ++n) {
      const auto s = constants_suite(n);
      bn = std::max(bn, s.b_n_disc);
      riesz = std::max(riesz, s.riesz_spread);
      in = std::max(in, s.I_n_disc);
      std::ostringstream diag;
      diag << "diagnostic_n" << n << " a_n_ball=" << s.a_n_disc_ball << " a_n_sphere=" << s.a_n_disc_sphere
           << " ybar=" << s.ybar_disc;
      o.note(diag.str());
    }
    o.below("b_n_forms", bn, 1e-12);
    o.below("d4_minus_1", constants_suite(4).d4_error, 1e-12);
    o.below("riesz_C_n_spread", riesz, 1e-4);
    o.below("I_n_vs_beta", in, 1e-8);
  });

  criterion(4, "curvature_contraction", 60.0, [&](Outcome& o) {
    for (int n : {4, 5, 6}) {
      const auto s = contraction_suite(n, 100, 10, seed + n);
      o.below("residual_n" + std::to_string(n), s.max_residual, 1e-10);
    }
  });

  criterion(5, "conformal", 60.0, [&](Outcome& o) {
    const auto s = conformal_suite(9, 20, seed);
    o.below("max_rel", s.max_rel, 1e-10);
  });

  criterion(6, "tau_map", 300.0, [&](Outcome& o) {
    const auto s = tau_suite(9, 100, 20, 0.5, seed);
    o.below("fixed_point_residual", s.max_residual, 1e-10);
    o.require("bound_ii", s.bound_violations == 0, "min slack " + num(s.min_bound_slack));
    o.require("local_max", s.maximality_violations == 0, "min gap " + num(s.min_max_gap));
  });

  criterion(7, "gradient", 600.0, [&](Outcome& o) {
    const auto s = gradient_suite(9, 20, 20, 1e-4, seed);
    o.below("fd_rel", s.max_rel, 1e-6);
  });

  const auto c4 = compute_constants(4);
  const auto eps = sweep_eps();
  SweepResult sweep4;

  criterion(8, "gradient_decay", 1800.0, [&](Outcome& o) {
    sweep4 = graft_sweep(eps, default_spec(4, 9), KernelSpec{}, c4);
    const auto s5 = graft_sweep(eps, default_spec(5, 9), KernelSpec{}, compute_constants(5));
    o.require("n4_exponent_ge_1.3", sweep4.grad_fit.exponent >= 1.3, num(sweep4.grad_fit.exponent));
    o.require("n4_r2_ge_0.98", sweep4.grad_fit.r_squared >= 0.98, num(sweep4.grad_fit.r_squared));
    o.require("n4_monotone", sweep4.grad_monotone);
    o.require("n5_exponent_ge_1.8", s5.grad_fit.exponent >= 1.8, num(s5.grad_fit.exponent));
    o.require("n5_r2_ge_0.98", s5.grad_fit.r_squared >= 0.98, num(s5.grad_fit.r_squared));
    o.require("n5_monotone", s5.grad_monotone);
  });

  criterion(9, "energy_gap", 1800.0, [&](Outcome& o) {
    if (sweep4.points.empty()) sweep4 = graft_sweep(eps, default_spec(4, 9), KernelSpec{}, c4);
    o.require("gap_positive", sweep4.gap_positive);
    o.require("exponent_2_pm_0.3", std::abs(sweep4.gap_fit.exponent - 2.0) <= 0.3,
              num(sweep4.gap_fit.exponent));
    double prev = sweep4.gap_log_coefficient_fixed;
    std::ostringstream coefs;
    coefs << "log_coef mu=20:" << prev;
    bool increasing = true;
    for (double mu : {40.0, 80.0}) {
      const auto s = energy_gap_sweep(eps, default_spec(4, 9), KernelSpec{KernelKind::periodized_riesz, mu, 1.0}, c4);
      coefs << " mu=" << mu << ':' << s.gap_log_coefficient_fixed;
      increasing = increasing && s.gap_positive && s.gap_log_coefficient_fixed > prev;
      prev = s.gap_log_coefficient_fixed;
    }
    o.require("coefficient_increasing_in_mu", increasing, coefs.str());
  });

  criterion(10, "delta0_chain", 3600.0, [&](Outcome& o) {
    if (sweep4.points.empty()) sweep4 = graft_sweep(eps, default_spec(4, 9), KernelSpec{}, c4);
    Torus t(default_spec(4, 9));
    const Functional f(t, KernelSpec{});
    SolverConfig cfg;
    cfg.seed = seed;
    const GroundStateReport r = minimize_delta0(f, cfg);
    o.require("converged", r.converged);
    o.require("delta0_positive", r.delta0_estimate > 0, num(r.delta0_estimate, 13));
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < r.start_values.size(); ++i)
      if (r.start_converged[i]) {
        lo = std::min(lo, r.start_values[i]);
        hi = std::max(hi, r.start_values[i]);
      }
    o.below("multistart_spread", (hi - lo) / std::abs(lo), 1e-4);
    // envelope C: least squares of J - delta0 against grad^2 through the origin, clamped at 0
    double num = 0, den = 0;
    for (const auto& p : sweep4.points) {
      const double g2 = p.grad_norm * p.grad_norm;
      num += g2 * (p.energy - r.delta0_estimate);
      den += g2 * g2;
    }
    const double C = std::max(0.0, num / den);
    double bound = INFINITY;
    for (const auto& p : sweep4.points) bound = std::min(bound, p.energy + C * p.grad_norm * p.grad_norm);
    std::ostringstream s;
    s.precision(13);
    s << "delta0=" << r.delta0_estimate << " C=" << C << " bound=" << bound;
    o.require("delta0_le_envelope", r.delta0_estimate <= bound, s.str());
  });

  criterion(11, "determinism", 600.0, [&](Outcome& o) {
    const fs::path base = fs::temp_directory_path() / "ndirac_acceptance";
    fs::remove_all(base);
    const std::vector<std::vector<std::string>> cmds{
        {"constants", "--n", "5"},
        {"bubble-verify", "--n", "4", "--samples", "200"},
        {"curvature-check", "--n", "6", "--samples", "20"},
        {"solve-ground-state", "--n", "4", "--L", "3", "--seeds", "3"},
        {"graft-sweep", "--n", "4", "--eps-list", "0.42,0.28,0.196,0.14"}};
    for (const char* run : {"a", "b"})
      for (auto args : cmds) {
        args.insert(args.begin(), {"--output-dir", (base / run).string(), "--seed", "5"});
        const int code = cli(args);
        if (code != 0) o.require(args[4] + "_exit_0", false, std::to_string(code));
      }
    int files = 0, same = 0;
    for (const auto& e : fs::directory_iterator(base / "a")) {
      ++files;
      const fs::path other = base / "b" / e.path().filename();
      if (fs::exists(other) && slurp(e.path()) == slurp(other)) ++same;
    }
    o.require("byte_identical", files > 0 && same == files, std::to_string(same) + "/" + std::to_string(files));
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
