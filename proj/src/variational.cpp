#include "ndirac/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "ndirac/errors.hpp"

namespace ndirac {

namespace {

SpinorField axpy(const SpinorField& a, const SpinorField& b, double s) {
  SpinorField out = a;
  out.coeffs += s * b.coeffs;
  return out;
}

SpinorField scaled(const SpinorField& a, double s) {
  SpinorField out = a;
  out.coeffs *= s;
  return out;
}

// Pointwise product of a real grid function with a grid spinor.
GridSpinor times(const GridReal& w, const GridSpinor& g) { return g.array().colwise() * w.cast<cplx>().array(); }

}  // namespace

void SolverConfig::validate() const {
  if (!(tau_tol > 0)) throw ConfigError("solver.tau_tol: must be positive");
  if (!(newton_tol > 0)) throw ConfigError("solver.newton_tol: must be positive");
  if (!(grad_tol > 0)) throw ConfigError("solver.grad_tol: must be positive");
  if (tau_max_iter < 1) throw ConfigError("solver.tau_max_iter: must be at least 1");
  if (outer_max_iter < 1) throw ConfigError("solver.outer_max_iter: must be at least 1");
  if (starts < 1) throw ConfigError("solver.starts: must be at least 1");
  if (!(theta > 0 && theta <= 1)) throw ConfigError("solver.theta: must lie in (0, 1]");
  if (!(step0 > 0)) throw ConfigError("solver.step0: must be positive");
}

Functional::Functional(const Torus& t, KernelSpec k) : t_(t), k_(k) {
  if (!t.dealiased())
    throw ContractViolation("the energy needs grid_points_per_axis >= 2 modes_per_axis - 1");
  if (k.mu < 0) throw ContractViolation("kernel zero mode must be nonnegative");
}

std::pair<GridReal, GridSpinor> Functional::potential(const SpinorField& u) const {
  GridSpinor g = t_.to_grid(u);
  GridReal w = t_.kernel_apply(k_, t_.density(g));
  return {std::move(w), std::move(g)};
}

EnergyParts Functional::parts(const SpinorField& psi) const {
  EnergyParts p;
  const auto [w, g] = potential(psi);
  p.quadratic = t_.quadratic_form(psi);
  p.quartic = t_.integrate(w.cwiseProduct(t_.density(g)));
  p.energy = 0.5 * p.quadratic - 0.25 * p.quartic;
  return p;
}

SpinorField Functional::residual(const SpinorField& psi) const {
  const auto [w, g] = potential(psi);
  SpinorField r = t_.dirac_apply(psi);
  r.coeffs -= t_.from_grid(times(w, g)).coeffs;
  return r;
}

SpinorField Functional::hessian_apply(const SpinorField&, const GridReal& w, const GridSpinor& ug,
                                      const SpinorField& phi) const {
  const GridSpinor pg = t_.to_grid(phi);
  GridReal sigma(pg.rows());
  for (Eigen::Index x = 0; x < pg.rows(); ++x) sigma[x] = pg.row(x).dot(ug.row(x)).real();
  const GridReal vs = t_.kernel_apply(k_, sigma);
  const GridSpinor prod = times(w, pg) + 2.0 * times(vs, ug);
  SpinorField out = t_.dirac_apply(phi);
  out.coeffs -= t_.from_grid(prod).coeffs;
  return out;
}

double energy(const Functional& f, const SpinorField& psi) { return f.energy(psi); }

Gradient gradient(const Functional& f, const SpinorField& psi) {
  Gradient g;
  g.residual = f.residual(psi);
  g.magnitude = f.torus().sobolev_norm(g.residual, -0.5);
  return g;
}

TauResult tau_solve(const Functional& f, const SpinorField& psi_plus, const SolverConfig& cfg,
                    const SpinorField* warm) {
  const Torus& t = f.torus();
  TauResult res;
  res.tau = warm ? t.project_minus(*warm) : t.zero();
  if (cfg.disable_tau) {
    res.tau = t.zero();
    return res;
  }
  if (t.sobolev_norm(t.project_minus(psi_plus), 0.0) > 1e-10 * std::max(1.0, t.l2_norm(psi_plus)))
    throw ContractViolation("tau_solve: input is not in H^+");

  for (int it = 0; it <= cfg.tau_max_iter; ++it) {
    const SpinorField u = axpy(psi_plus, res.tau, 1.0);
    const auto [w, ug] = f.potential(u);
    SpinorField r = t.dirac_apply(u);
    r.coeffs -= t.from_grid(times(w, ug)).coeffs;
    const SpinorField g = t.project_minus(r);
    res.residual = t.sobolev_norm(g, -0.5);
    res.iterations = it;
    if (res.residual < cfg.tau_tol) return res;
    if (it == cfg.tau_max_iter) break;

    if (cfg.tau_method == TauMethod::fixed_point) {
      res.tau = axpy(res.tau, t.abs_dirac_power(g, -1.0), cfg.theta);
      continue;
    }

    // Preconditioned CG for A d = g with A = -P^- Hess on H^-, preconditioner |D|^{-1}.
    auto apply_a = [&](const SpinorField& phi) {
      return scaled(t.project_minus(f.hessian_apply(u, w, ug, phi)), -1.0);
    };
    SpinorField x = t.zero();
    SpinorField rr = g;
    SpinorField z = t.abs_dirac_power(rr, -1.0);
    SpinorField p = z;
    double rz = t.inner(rr, z);
    const double forcing = std::min(0.1, res.residual);
    for (int k = 0; k < 200; ++k) {
      const SpinorField ap = apply_a(p);
      const double pap = t.inner(p, ap);
      if (!(pap > 0)) break;
      const double alpha = rz / pap;
      x = axpy(x, p, alpha);
      rr = axpy(rr, ap, -alpha);
      if (t.sobolev_norm(rr, -0.5) < forcing * res.residual) break;
      z = t.abs_dirac_power(rr, -1.0);
      const double rz_new = t.inner(rr, z);
      p = axpy(z, p, rz_new / rz);
      rz = rz_new;
    }
    if (t.sobolev_norm(x, 0.0) == 0.0) x = t.abs_dirac_power(g, -1.0);

    // Backtracking on the concave objective; tiny predicted gains are taken as is.
    const double base = f.energy(u);
    const double slope = t.inner(g, x);
    double s = 1.0;
    SpinorField trial = axpy(res.tau, x, s);
    if (slope > 1e-13 * std::max(1.0, std::abs(base))) {
      while (s > 1e-6) {
        trial = axpy(res.tau, x, s);
        if (f.energy(axpy(psi_plus, trial, 1.0)) >= base + 1e-4 * s * slope) break;
        s *= 0.5;
      }
    }
    res.tau = t.project_minus(trial);
  }
  throw ConvergenceError("tau_solve: projected residual " + std::to_string(res.residual) + " above tolerance after " +
                         std::to_string(cfg.tau_max_iter) + " iterations; reduce the amplitude or the damping");
}

double reduced_energy(const Functional& f, const SpinorField& psi_plus, const SolverConfig& cfg) {
  const TauResult tr = tau_solve(f, psi_plus, cfg);
  return f.energy(axpy(psi_plus, tr.tau, 1.0));
}

double nehari_derivative(const Functional& f, const SpinorField& psi, double t, const SolverConfig& cfg,
                         SpinorField* tau_io) {
  const SpinorField tp = scaled(psi, t);
  const TauResult tr = tau_solve(f, tp, cfg, tau_io);
  if (tau_io) *tau_io = tr.tau;
  return f.torus().inner(f.residual(axpy(tp, tr.tau, 1.0)), psi);
}

NehariResult nehari_scale(const Functional& f, const SpinorField& psi, const SolverConfig& cfg,
                          const SpinorField* warm_tau, double t_guess) {
  const Torus& t = f.torus();
  const EnergyParts p = f.parts(psi);
  if (!(p.quadratic > 0) || !(p.quartic > 0))
    throw ConvergenceError("nehari_scale: degenerate direction (quadratic or quartic value not positive)");
  double t0 = t_guess > 0 ? t_guess : std::sqrt(p.quadratic / p.quartic);

  NehariResult out;
  SpinorField tau_last = warm_tau ? *warm_tau : t.zero();
  double t_last = t_guess > 0 ? t_guess : t0;
  double best_abs = std::numeric_limits<double>::infinity();
  double best_t = t0;
  SpinorField best_tau = tau_last;

  auto deriv = [&](double tt) {
    SpinorField tau = scaled(tau_last, std::pow(tt / t_last, 3));
    const double d = nehari_derivative(f, psi, tt, cfg, &tau);
    ++out.evaluations;
    tau_last = tau;
    t_last = tt;
    if (std::abs(d) < best_abs) {
      best_abs = std::abs(d);
      best_t = tt;
      best_tau = tau;
    }
    return d;
  };

  double lo = t0, hi = t0;
  double flo = deriv(t0), fhi = flo;
  if (std::abs(flo) >= cfg.newton_tol) {
    // Quartic model f'(t) ~ t (a - b t^2) through the measured point gives the next guess.
    const double beff = (p.quadratic - flo / t0) / (t0 * t0);
    double t1 = beff > 0 ? std::sqrt(p.quadratic / beff) : t0 * (flo > 0 ? 1.25 : 0.8);
    t1 = std::clamp(t1, 0.5 * t0, 2.0 * t0);
    const double f1 = deriv(t1);
    if ((f1 > 0) == (flo > 0)) {
      lo = hi = t1;
      flo = fhi = f1;
    } else {
      lo = std::min(t0, t1);
      hi = std::max(t0, t1);
      flo = t0 < t1 ? flo : f1;
      fhi = t0 < t1 ? f1 : fhi;
    }
    int guard = 0;
    double widen = 1.0 + std::max(1e-3, 2.0 * std::abs(t1 - t0) / t0);
    if (lo == hi && flo > 0) {
      while (fhi > 0) {
        if (++guard > 60) throw ConvergenceError("nehari_scale: no sign change above t0");
        lo = hi;
        flo = fhi;
        hi *= widen;
        widen = 1.0 + 2.0 * (widen - 1.0);
        fhi = deriv(hi);
      }
    } else if (lo == hi) {
      while (flo < 0) {
        if (++guard > 60) throw ConvergenceError("nehari_scale: no positive critical scale");
        hi = lo;
        fhi = flo;
        lo /= widen;
        widen = 1.0 + 2.0 * (widen - 1.0);
        flo = deriv(lo);
      }
    }
    if (best_abs >= cfg.newton_tol) {
      std::uintmax_t max_iter = 60;
      auto stop = [&](double a, double b) { return best_abs < cfg.newton_tol || std::abs(b - a) < 1e-15 * b; };
      boost::math::tools::toms748_solve(deriv, lo, hi, flo, fhi, stop, max_iter);
    }
  }
  if (best_abs >= cfg.newton_tol)
    throw ConvergenceError("nehari_scale: derivative " + std::to_string(best_abs) + " above newton_tol");

  out.t_star = best_t;
  out.tau = best_tau;
  const SpinorField u = axpy(scaled(psi, best_t), best_tau, 1.0);
  out.residual = f.residual(u);
  out.derivative = t.inner(out.residual, psi);
  out.value = f.energy(u);
  return out;
}

SpinorField random_plus_field(const Torus& t, std::uint64_t seed) {
  SpinorField f = t.project_plus(t.random(seed, 2.0));
  return scaled(f, 1.0 / t.sobolev_norm(f, 0.5));
}

GroundStateReport minimize_delta0(const Functional& f, const SolverConfig& cfg) {
  cfg.validate();
  const Torus& t = f.torus();
  GroundStateReport best;
  double best_value = std::numeric_limits<double>::infinity();
  bool best_conv = false;
  std::vector<TraceRow> trace;
  std::vector<double> values;
  std::vector<bool> convs;

  for (int start = 0; start < cfg.starts; ++start) {
    SpinorField psi = random_plus_field(t, cfg.seed * 1000003ULL + static_cast<std::uint64_t>(start));
    // Inner solves only need accuracy commensurate with the current gradient.
    SolverConfig inner = cfg;
    auto loosen = [&](double g) {
      inner.tau_tol = std::max(cfg.tau_tol, 1e-3 * g);
      inner.newton_tol = std::max(cfg.newton_tol, 1e-3 * g);
    };
    loosen(1.0);
    NehariResult neh = nehari_scale(f, psi, inner);
    double step = cfg.step0;
    bool converged = false;
    int it = 0;
    double gnorm = t.sobolev_norm(neh.residual, -0.5);
    for (; it < cfg.outer_max_iter; ++it) {
      gnorm = t.sobolev_norm(neh.residual, -0.5);
      if (gnorm < cfg.grad_tol && inner.tau_tol > cfg.tau_tol) {
        loosen(0.0);
        neh = nehari_scale(f, psi, inner, &neh.tau, neh.t_star);
        gnorm = t.sobolev_norm(neh.residual, -0.5);
      }
      trace.push_back({start, it, neh.value, gnorm, neh.t_star, step});
      if (gnorm < cfg.grad_tol) {
        converged = true;
        break;
      }
      loosen(gnorm);
      SpinorField g = scaled(t.abs_dirac_power(t.project_plus(neh.residual), -1.0), neh.t_star);
      const double radial = t.inner(t.abs_dirac_power(g, 1.0), psi);
      g = axpy(g, psi, -radial);
      const double g2 = t.inner(t.abs_dirac_power(g, 1.0), g);
      bool moved = false;
      while (step > 1e-12) {
        SpinorField trial = axpy(psi, g, -step);
        trial = scaled(trial, 1.0 / t.sobolev_norm(trial, 0.5));
        NehariResult cand;
        try {
          cand = nehari_scale(f, trial, inner, &neh.tau, neh.t_star);
        } catch (const ConvergenceError&) {
          step *= 0.5;
          continue;
        }
        if (cand.value <= neh.value - 1e-4 * step * g2 + 1e-14 * std::abs(neh.value)) {
          psi = trial;
          neh = cand;
          step *= 1.5;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (!converged && inner.tau_tol > cfg.tau_tol) {
      neh = nehari_scale(f, psi, cfg, &neh.tau, neh.t_star);
      gnorm = t.sobolev_norm(neh.residual, -0.5);
    }
    values.push_back(neh.value);
    convs.push_back(converged);
    const bool better = (converged && !best_conv) || (converged == best_conv && neh.value < best_value);
    if (better) {
      best_value = neh.value;
      best_conv = converged;
      best.delta0_estimate = neh.value;
      best.minimizer = axpy(scaled(psi, neh.t_star), neh.tau, 1.0);
      best.gradient_norm = gnorm;
      best.nehari_residual = std::abs(neh.derivative);
      best.iterations = it;
      best.converged = converged;
      best.best_start = start;
    }
  }
  best.start_values = values;
  best.start_converged = convs;
  best.trace = std::move(trace);
  return best;
}

}  // namespace ndirac
