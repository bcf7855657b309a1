#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "su2opt/errors.hpp"
#include "su2opt/extremals.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

// Fixed-step RK4 with periodic re-unitarization. Reproducibility beats speed
// here: this module is the oracle the closed forms are checked against.
struct IntegrationConfig {
  double step = 0.0;  // 0 -> derived from the duration
  int projection_interval = 16;

  double effective_step(double duration) const {
    if (step > 0.0) return step;
    const double h = std::min(1e-4 * std::max(duration, 1e-6), 1e-3);
    return h;
  }
};

namespace detail {

struct State2 {
  Complex alpha;
  Complex beta;
};

// d/dt (alpha, beta) = -(i/2) [[w, ux - i uy], [ux + i uy, -w]] (alpha, beta)
// with w = omega0 + uz. The second matrix column is conjugate-determined, so
// the pair (alpha, beta) closes the dynamics.
inline State2 rhs(const ProblemParams& p, const ControlVector& u,
                  const State2& s) {
  const double w = p.omega0 + u.uz;
  const Complex mi{0.0, -0.5};
  const Complex offd{u.ux, -u.uy};
  return {mi * (w * s.alpha + offd * s.beta),
          mi * (std::conj(offd) * s.alpha - w * s.beta)};
}

template <typename Controls>
inline State2 rk4_step(const ProblemParams& p, const Controls& u,
                       const State2& s, double t, double h) {
  const auto add = [](const State2& a, const State2& b, double c) {
    return State2{a.alpha + c * b.alpha, a.beta + c * b.beta};
  };
  const State2 k1 = rhs(p, u(t), s);
  const State2 k2 = rhs(p, u(t + 0.5 * h), add(s, k1, 0.5 * h));
  const State2 k3 = rhs(p, u(t + 0.5 * h), add(s, k2, 0.5 * h));
  const State2 k4 = rhs(p, u(t + h), add(s, k3, h));
  return {s.alpha + (h / 6.0) * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha),
          s.beta + (h / 6.0) * (k1.beta + 2.0 * k2.beta + 2.0 * k3.beta + k4.beta)};
}

}  // namespace detail

// Integrates the operator Schroedinger equation from the identity under an
// arbitrary control law (any callable t -> ControlVector).
template <typename Controls>
Su2Element propagate_controls(const ProblemParams& p, const Controls& controls,
                              double t_final, const IntegrationConfig& cfg = {}) {
  validate(p);
  if (t_final < 0.0) throw RangeError("propagation time must be non-negative");
  detail::State2 s{{1.0, 0.0}, {0.0, 0.0}};
  if (t_final == 0.0) return Su2Element{s.alpha, s.beta};

  const double h0 = cfg.effective_step(t_final);
  const std::int64_t n = std::max<std::int64_t>(1, std::llround(std::ceil(t_final / h0)));
  const double h = t_final / static_cast<double>(n);
  const int proj = std::max(1, cfg.projection_interval);

  for (std::int64_t i = 0; i < n; ++i) {
    s = detail::rk4_step(p, controls, s, static_cast<double>(i) * h, h);
    if ((i + 1) % proj == 0 || i + 1 == n) {
      const double n2 = std::norm(s.alpha) + std::norm(s.beta);
      if (std::abs(n2 - 1.0) > 1e-6) {
        throw StepError("unitarity drift " + std::to_string(std::abs(n2 - 1.0)) +
                        " between projections; reduce the step");
      }
      const double inv = 1.0 / std::sqrt(n2);
      s.alpha *= inv;
      s.beta *= inv;
    }
  }
  return Su2Element{s.alpha, s.beta};
}

inline Su2Element propagate(const ProblemParams& p, const ControlSchedule& sched,
                            double t, const IntegrationConfig& cfg = {}) {
  if (t > sched.duration + 1e-12) {
    throw RangeError("requested time exceeds the schedule duration");
  }
  validate(p, sched);
  return propagate_controls(
      p, [&](double s) { return sched.controls_at(std::min(s, sched.duration)); },
      t, cfg);
}

// -------------------------------------------------------------------------
// Costate oracle

struct CostateState {
  double bx = 0.0;
  double by = 0.0;
  double bz = 0.0;
  double mu() const { return std::hypot(bx, by); }
};

struct CostateReport {
  double max_closed_form_deviation = 0.0;  // vs b_x = mu cos(wt+phi), b_y = mu sin
  double max_invariant_drift = 0.0;        // vs constancy of mu^2 + b_z^2
  double max_hamiltonian_drift = 0.0;      // vs constancy of H along the extremal
};

inline double pontryagin_hamiltonian(const ProblemParams& p,
                                     const ControlVector& u,
                                     const CostateState& c) {
  return p.omega0 * c.bz + u.ux * c.bx + u.uy * c.by + u.uz * c.bz;
}

// Integrates the costate system under the extremal controls and reports how
// far it strays from the closed-form rotating solution and its invariants.
inline CostateReport costate_check(const ProblemParams& p, const ExtremalSpec& s,
                                   double t_final,
                                   const IntegrationConfig& cfg = {}) {
  check_branch_range(p, s);
  const auto f = derived_frequencies(p, s);
  // mu = 1 normalization; b_z follows from omega = omega0 + u_z - gamma1 b_z/mu.
  const double mu0 = 1.0;
  double bz0 = 0.0;
  if (s.branch != Branch::Zero) {
    if (p.gamma1 == 0.0) {
      throw DegenerateError("closed-form costate comparison needs gamma1 > 0 on the pinned branches");
    }
    bz0 = f.b / p.gamma1;
  }
  CostateState c{mu0 * std::cos(s.phi), mu0 * std::sin(s.phi), bz0};

  const double h0 = cfg.effective_step(std::max(t_final, 1e-6));
  const std::int64_t n = std::max<std::int64_t>(1, std::llround(std::ceil(t_final / h0)));
  const double h = t_final > 0.0 ? t_final / static_cast<double>(n) : 0.0;

  const auto deriv = [&](const CostateState& b, double t) {
    const ControlVector u = extremal_controls(p, s, t);
    const double w = p.omega0 + u.uz;
    return CostateState{-w * b.by + u.uy * b.bz, w * b.bx - u.ux * b.bz,
                        u.ux * b.by - u.uy * b.bx};
  };
  const auto add = [](const CostateState& a, const CostateState& b, double c2) {
    return CostateState{a.bx + c2 * b.bx, a.by + c2 * b.by, a.bz + c2 * b.bz};
  };

  CostateReport rep;
  const double inv0 = mu0 * mu0 + bz0 * bz0;
  const double h0ham = pontryagin_hamiltonian(p, extremal_controls(p, s, 0.0), c);
  for (std::int64_t i = 0; i < n && t_final > 0.0; ++i) {
    const double t = static_cast<double>(i) * h;
    const CostateState k1 = deriv(c, t);
    const CostateState k2 = deriv(add(c, k1, 0.5 * h), t + 0.5 * h);
    const CostateState k3 = deriv(add(c, k2, 0.5 * h), t + 0.5 * h);
    const CostateState k4 = deriv(add(c, k3, h), t + h);
    c = CostateState{
        c.bx + (h / 6.0) * (k1.bx + 2 * k2.bx + 2 * k3.bx + k4.bx),
        c.by + (h / 6.0) * (k1.by + 2 * k2.by + 2 * k3.by + k4.by),
        c.bz + (h / 6.0) * (k1.bz + 2 * k2.bz + 2 * k3.bz + k4.bz)};
    const double tn = t + h;
    const double th = s.omega * tn + s.phi;
    rep.max_closed_form_deviation =
        std::max({rep.max_closed_form_deviation, std::abs(c.bx - mu0 * std::cos(th)),
                  std::abs(c.by - mu0 * std::sin(th)), std::abs(c.bz - bz0)});
    rep.max_invariant_drift = std::max(
        rep.max_invariant_drift, std::abs(c.mu() * c.mu() + c.bz * c.bz - inv0));
    rep.max_hamiltonian_drift = std::max(
        rep.max_hamiltonian_drift,
        std::abs(pontryagin_hamiltonian(p, extremal_controls(p, s, tn), c) - h0ham));
  }
  return rep;
}

// -------------------------------------------------------------------------
// Brute-force minimum-time search

struct BruteForceOptions {
  double omega_window = 0.0;  // 0 -> derived
  double hit_tolerance = 1e-4;
  double refine_tolerance = 1e-6;
  int random_probes = 0;       // extra piecewise-constant feasible controls
  std::uint64_t probe_seed = 1;
};

namespace detail {

struct GridHit {
  double tau;
  double dist;
};

// Newton on (Re, Im) of alpha(omega, tau) - target, for one family.
inline std::optional<GridHit> refine_hit(const ProblemParams& p, Branch branch,
                                         double omega0_seed, double tau_seed,
                                         Complex target, double lo, double hi,
                                         double tau_max, double tol) {
  const double drift = branch_drift(p, branch);
  double om = omega0_seed, tau = tau_seed;
  for (int it = 0; it < 80; ++it) {
    const double b = (branch == Branch::Zero) ? 0.0 : drift - om;
    const Complex A = curve_alpha(om, b, p.gamma1, tau);
    const Complex F = A - target;
    if (std::abs(F) < 1e-13) break;
    Complex dom, dtau;
    if (branch == Branch::Zero) {
      dom = Complex{0.0, -tau} * A;
      dtau = curve_alpha_dtau(om, 0.0, p.gamma1, tau);
    } else {
      dom = curve_alpha_domega(om, b, p.gamma1, tau);
      dtau = curve_alpha_dtau(om, b, p.gamma1, tau);
    }
    const double j00 = dom.real(), j01 = dtau.real();
    const double j10 = dom.imag(), j11 = dtau.imag();
    const double det2 = j00 * j11 - j01 * j10;
    if (std::abs(det2) < 1e-14) break;
    const double dw = (F.real() * j11 - F.imag() * j01) / det2;
    const double dt = (F.imag() * j00 - F.real() * j10) / det2;
    double step = 1.0;
    // crude damping to stay in the window
    for (int k = 0; k < 30; ++k) {
      const double om2 = om - step * dw;
      const double tau2 = tau - step * dt;
      if (om2 >= lo && om2 <= hi && tau2 > 0.0 && tau2 <= tau_max * 1.05) {
        om = om2;
        tau = tau2;
        break;
      }
      step *= 0.5;
    }
    if (step < 1e-9) break;
  }
  const double b = (branch == Branch::Zero) ? 0.0 : drift - om;
  const double d = std::abs(curve_alpha(om, b, p.gamma1, tau) - target);
  if (d <= tol && tau > 0.0 && tau <= tau_max * (1.0 + 1e-9)) {
    return GridHit{tau, d};
  }
  return std::nullopt;
}

// Fallback for Jacobian-degenerate targets (e.g. alpha = 0, where every Zero
// frequency works): alternating golden-section in tau then omega.
inline std::optional<GridHit> refine_hit_coordinate(
    const ProblemParams& p, Branch branch, double om_seed, double tau_seed,
    Complex target, double lo, double hi, double tau_lo, double tau_hi,
    double tau_max, double tol) {
  const double drift = branch_drift(p, branch);
  const auto dist = [&](double om, double tau) {
    const double b = (branch == Branch::Zero) ? 0.0 : drift - om;
    return std::abs(curve_alpha(om, b, p.gamma1, tau) - target);
  };
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double om = om_seed, tau = tau_seed;
  for (int round = 0; round < 4; ++round) {
    double a = std::max(tau_lo, 1e-12), b2 = std::min(tau_hi, tau_max);
    for (int i = 0; i < 45; ++i) {
      const double c1 = b2 - gr * (b2 - a), c2 = a + gr * (b2 - a);
      (dist(om, c1) < dist(om, c2)) ? b2 = c2 : a = c1;
    }
    tau = 0.5 * (a + b2);
    double wa = std::max(lo, om - 0.25 * (hi - lo)), wb = std::min(hi, om + 0.25 * (hi - lo));
    for (int i = 0; i < 45; ++i) {
      const double c1 = wb - gr * (wb - wa), c2 = wa + gr * (wb - wa);
      (dist(c1, tau) < dist(c2, tau)) ? wb = c2 : wa = c1;
    }
    om = 0.5 * (wa + wb);
  }
  const double d = dist(om, tau);
  if (d <= tol && tau > 0.0 && tau <= tau_max * (1.0 + 1e-9)) return GridHit{tau, d};
  return std::nullopt;
}

}  // namespace detail

// Exhaustive search over the three extremal families on an (omega, tau) grid
// with local refinement. Returns the smallest *physical* time 2*tau at which
// some family lands in the target class. PMP is only a necessary condition,
// so this is the cross-check the synthesis formulas are held against.
inline double brute_force_min_time(const ProblemParams& p, const Su2Element& target,
                                   int omega_grid, int tau_grid, double tau_max,
                                   const BruteForceOptions& opts = {}) {
  validate(p);
  if (omega_grid < 64 || tau_grid < 64) {
    throw RangeError("grids must have at least 64 points");
  }
  const Complex q = target.alpha;
  if (std::abs(q - Complex{1.0, 0.0}) <= opts.refine_tolerance) return 0.0;

  const double W = opts.omega_window > 0.0
                       ? opts.omega_window
                       : std::max(2.0 * (std::abs(p.omega0) + p.gamma1 + p.gamma2) + 4.0,
                                  8.0 * kPi / std::max(tau_max, 1e-3));
  double best = std::numeric_limits<double>::infinity();

  const auto scan_branch = [&](Branch branch, double lo, double hi) {
    if (!(hi > lo)) return;
    const double drift = branch_drift(p, branch);
    std::vector<double> taus(tau_grid), oms(omega_grid);
    for (int i = 0; i < tau_grid; ++i) {
      taus[i] = tau_max * static_cast<double>(i + 1) / tau_grid;
    }
    for (int j = 0; j < omega_grid; ++j) {
      oms[j] = lo + (hi - lo) * static_cast<double>(j) / (omega_grid - 1);
    }
    // capture radius: how far the curve can move across one grid cell, from
    // the analytic derivative bounds of the trajectory formulas
    const double dtau = tau_max / tau_grid;
    const double dom = (hi - lo) / (omega_grid - 1);
    for (int j = 0; j < omega_grid; ++j) {
      const double om = oms[j];
      const double b = (branch == Branch::Zero) ? 0.0 : drift - om;
      const double a = std::hypot(b, p.gamma1);
      const double dw_bound =
          (branch == Branch::Zero)
              ? tau_max
              : (p.gamma1 * p.gamma1 / (a * a)) * (1.0 / a + tau_max);
      const double capture =
          1.5 * ((std::abs(om) + a) * dtau + dw_bound * dom) + 1e-3;
      double prev = std::abs(detail::curve_alpha(om, b, p.gamma1, taus[0]) - q);
      for (int i = 0; i < tau_grid; ++i) {
        const double d = std::abs(detail::curve_alpha(om, b, p.gamma1, taus[i]) - q);
        if (std::min(d, prev) < capture && taus[i] < best + dtau) {
          auto hit = detail::refine_hit(p, branch, om, taus[i], q, lo, hi,
                                        tau_max, opts.refine_tolerance);
          if (!hit && std::min(d, prev) < 0.3 * capture) {
            hit = detail::refine_hit_coordinate(
                p, branch, om, taus[i], q, lo, hi,
                taus[i] - 2.0 * dtau, taus[i] + 2.0 * dtau, tau_max,
                opts.refine_tolerance);
          }
          if (hit && hit->tau < best) best = hit->tau;
        }
        prev = d;
      }
    }
  };

  scan_branch(Branch::Zero, p.omega0 - p.gamma2, p.omega0 + p.gamma2);
  scan_branch(Branch::Plus, p.omega0 + p.gamma2 - W, p.omega0 + p.gamma2 - 1e-9);
  scan_branch(Branch::Minus, p.omega0 - p.gamma2 + 1e-9, p.omega0 - p.gamma2 + W);

  // Optional sanity probes: random feasible piecewise-constant controls must
  // never beat the extremal families.
  if (opts.random_probes > 0) {
    std::uint64_t state = opts.probe_seed ? opts.probe_seed : 1;
    const auto next_uniform = [&state]() {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      return static_cast<double>(state >> 11) * 0x1.0p-53;
    };
    for (int k = 0; k < opts.random_probes; ++k) {
      const int segments = 8;
      std::vector<ControlVector> us(segments);
      for (auto& u : us) {
        const double th = 2.0 * kPi * next_uniform();
        const double r = p.gamma1 * std::sqrt(next_uniform());
        u = {r * std::cos(th), r * std::sin(th), p.gamma2 * (2.0 * next_uniform() - 1.0)};
      }
      const double horizon = tau_max * 2.0;  // physical time
      const auto controls = [&](double t) {
        const int idx = std::min<int>(segments - 1,
                                      static_cast<int>(t / horizon * segments));
        return us[idx];
      };
      detail::State2 s{{1.0, 0.0}, {0.0, 0.0}};
      const int steps = 2000;
      const double h = horizon / steps;
      for (int i = 0; i < steps; ++i) {
        s = detail::rk4_step(p, controls, s, i * h, h);
        const double n2 = std::norm(s.alpha) + std::norm(s.beta);
        const double inv = 1.0 / std::sqrt(n2);
        s.alpha *= inv;
        s.beta *= inv;
        if (std::abs(s.alpha - q) < opts.hit_tolerance) {
          best = std::min(best, 0.5 * (i + 1) * h);
          break;
        }
      }
    }
  }

  if (!std::isfinite(best)) {
    throw NotFoundError("no extremal reached the target class within tau_max = " +
                        std::to_string(tau_max));
  }
  return 2.0 * best;
}

}  // namespace su2opt
