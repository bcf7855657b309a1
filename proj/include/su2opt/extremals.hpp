#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "su2opt/errors.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

// The three extremal families. Plus/Minus pin u_z to +/-gamma2 (b_z != 0);
// Zero is the b_z = 0 family where u_z floats in [-gamma2, gamma2].
enum class Branch { Plus, Minus, Zero };

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::Plus:
      return "plus";
    case Branch::Minus:
      return "minus";
    default:
      return "zero";
  }
}

// One extremal trajectory: branch, costate rotation frequency, transverse phase.
struct ExtremalSpec {
  Branch branch = Branch::Zero;
  double omega = 0.0;
  double phi = 0.0;
};

// Detuning b and transverse-dressed frequency a = sqrt(b^2 + gamma1^2).
struct DerivedFrequencies {
  double b = 0.0;
  double a = 0.0;
};

// Effective drift of a branch: omega0 + u_z for the pinned families.
inline double branch_drift(const ProblemParams& p, Branch branch) {
  switch (branch) {
    case Branch::Plus:
      return p.omega0 + p.gamma2;
    case Branch::Minus:
      return p.omega0 - p.gamma2;
    default:
      return p.omega0;
  }
}

inline double branch_uz(const ProblemParams& p, const ExtremalSpec& s) {
  switch (s.branch) {
    case Branch::Plus:
      return p.gamma2;
    case Branch::Minus:
      return -p.gamma2;
    default:
      // Constant representative of the u_z(t) gauge class with average
      // omega - omega0.
      return s.omega - p.omega0;
  }
}

// Branch windows follow the strict/non-strict pattern of the costate
// analysis; omega = omega0 +/- gamma2 belongs to the Zero branch.
inline void check_branch_range(const ProblemParams& p, const ExtremalSpec& s) {
  const double lo = p.omega0 - p.gamma2;
  const double hi = p.omega0 + p.gamma2;
  bool ok = false;
  switch (s.branch) {
    case Branch::Plus:
      ok = s.omega < hi;
      break;
    case Branch::Minus:
      ok = s.omega > lo;
      break;
    case Branch::Zero:
      ok = s.omega >= lo && s.omega <= hi;
      break;
  }
  if (!ok) {
    throw RangeError(std::string("omega = ") + std::to_string(s.omega) +
                     " outside the " + to_string(s.branch) +
                     " window for omega0 = " + std::to_string(p.omega0) +
                     ", gamma2 = " + std::to_string(p.gamma2));
  }
}

inline DerivedFrequencies derived_frequencies(const ProblemParams& p,
                                              const ExtremalSpec& s) {
  const double b =
      (s.branch == Branch::Zero) ? 0.0 : branch_drift(p, s.branch) - s.omega;
  return {b, std::hypot(b, p.gamma1)};
}

struct ControlVector {
  double ux = 0.0;
  double uy = 0.0;
  double uz = 0.0;
};

// u_x = gamma1 cos(omega t + phi), u_y = gamma1 sin(omega t + phi), with the
// branch value of u_z. Physical time t here, not the rescaled tau.
inline ControlVector extremal_controls(const ProblemParams& p,
                                       const ExtremalSpec& s, double t) {
  check_branch_range(p, s);
  const double th = s.omega * t + s.phi;
  return {p.gamma1 * std::cos(th), p.gamma1 * std::sin(th), branch_uz(p, s)};
}

namespace detail {

// alpha(omega, tau) for detuning b and transverse bound gamma1, with no range
// checks. a -> 0 degenerates to a pure drift phase.
inline Complex curve_alpha(double omega, double b, double gamma1, double tau) {
  const double a = std::hypot(b, gamma1);
  const Complex rot = std::polar(1.0, -omega * tau);
  if (a == 0.0) return rot;
  return rot * Complex{std::cos(a * tau), -(b / a) * std::sin(a * tau)};
}

inline Complex curve_beta(double omega, double b, double gamma1, double tau,
                          double phi) {
  const double a = std::hypot(b, gamma1);
  if (a == 0.0) return {0.0, 0.0};
  const Complex ph = std::polar(1.0, omega * tau + phi);
  return Complex{0.0, -1.0} * (gamma1 / a) * ph * std::sin(a * tau);
}

// d(alpha)/d(omega) at fixed tau, for b = drift - omega (Plus/Minus families).
inline Complex curve_alpha_domega(double omega, double b, double gamma1,
                                  double tau) {
  const double a = std::hypot(b, gamma1);
  const Complex rot = std::polar(1.0, -omega * tau);
  if (a == 0.0) return Complex{0.0, -tau} * rot;
  const double g2 = gamma1 * gamma1;
  return Complex{0.0, 1.0} * rot * (g2 / (a * a)) *
         (std::sin(a * tau) / a - tau * std::cos(a * tau));
}

// d(alpha)/d(tau) at fixed omega.
inline Complex curve_alpha_dtau(double omega, double b, double gamma1,
                                double tau) {
  const double a = std::hypot(b, gamma1);
  const Complex rot = std::polar(1.0, -omega * tau);
  const Complex core =
      (a == 0.0) ? Complex{1.0, 0.0}
                 : Complex{std::cos(a * tau), -(b / a) * std::sin(a * tau)};
  Complex dcore{0.0, 0.0};
  if (a != 0.0) dcore = Complex{-a * std::sin(a * tau), -b * std::cos(a * tau)};
  return Complex{0.0, -omega} * rot * core + rot * dcore;
}

// Zero-family alpha depends on omega only through the rotation factor.
inline Complex zero_alpha(double omega, double gamma1, double tau) {
  return std::polar(1.0, -omega * tau) * std::cos(gamma1 * tau);
}

}  // namespace detail

// Closed-form trajectory point at physical time t (tau = t/2 internally).
inline Su2Element extremal_element(const ProblemParams& p,
                                   const ExtremalSpec& s, double t) {
  check_branch_range(p, s);
  const double tau = 0.5 * t;
  const auto f = derived_frequencies(p, s);
  const Complex alpha = detail::curve_alpha(s.omega, f.b, p.gamma1, tau);
  const Complex beta = detail::curve_beta(s.omega, f.b, p.gamma1, tau, s.phi);
  return Su2Element{alpha, beta};
}

// Disk projection of the branch curve at rescaled time tau.
inline DiskPoint frontline_point(const ProblemParams& p, Branch branch,
                                 double omega, double tau) {
  const ExtremalSpec s{branch, omega, 0.0};
  check_branch_range(p, s);
  const auto f = derived_frequencies(p, s);
  const Complex a = detail::curve_alpha(omega, f.b, p.gamma1, tau);
  return {a.real(), a.imag()};
}

// Critical spiral frequency omega_c = (gamma1^2 + d^2)/d with d the branch
// drift. Undefined when the drift vanishes (then the branch carries no
// critical trajectory).
inline double critical_frequency(const ProblemParams& p, Branch branch) {
  if (branch == Branch::Zero) {
    throw RangeError("critical frequency is defined for the Plus/Minus families only");
  }
  const double d = branch_drift(p, branch);
  if (d == 0.0) {
    throw DegenerateError("omega0 -+ gamma2 vanishes: no critical trajectory on this branch");
  }
  return (p.gamma1 * p.gamma1 + d * d) / d;
}

// Rescaled time at which the critical spiral returns to the disk border and
// drops out of the optimal front.
inline double critical_time(const ProblemParams& p, Branch branch) {
  if (branch == Branch::Zero) {
    throw RangeError("critical time is defined for the Plus/Minus families only");
  }
  if (p.gamma1 == 0.0) {
    throw DegenerateError("critical time undefined for gamma1 = 0");
  }
  const double d = branch_drift(p, branch);
  return kPi * std::abs(d) / (p.gamma1 * std::hypot(d, p.gamma1));
}

// Frequency whose trajectory touches the disk border exactly at rescaled time
// tau: (omega0 +/- gamma2) +/- sqrt((pi/tau)^2 - gamma1^2). The first sign is
// the branch, the second the caller's.
inline double boundary_frequency(const ProblemParams& p, Branch branch,
                                 double tau, int sign) {
  if (branch == Branch::Zero) {
    throw RangeError("boundary frequency is defined for the Plus/Minus families only");
  }
  if (!(tau > 0.0)) throw RangeError("tau must be positive");
  const double rad = (kPi / tau) * (kPi / tau) - p.gamma1 * p.gamma1;
  if (rad < 0.0) {
    throw RangeError("tau = " + std::to_string(tau) +
                     " exceeds pi/gamma1: every trajectory of this family has already hit the border");
  }
  return branch_drift(p, branch) + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(rad);
}

// -------------------------------------------------------------------------
// Control schedules

struct SchedulePiece {
  Branch branch = Branch::Zero;
  double omega = 0.0;
  double phi = 0.0;
  double uz = 0.0;
  double amplitude = 0.0;  // transverse amplitude, gamma1 for extremals
  double t_start = 0.0;
  double t_end = 0.0;
};

// Exact parametric control law over [0, duration]. Extremal trajectories
// cannot be concatenated (a switch would need the whole costate to vanish),
// so a synthesized schedule holds exactly one piece; the list form exists
// for forward-compatible I/O.
struct ControlSchedule {
  double duration = 0.0;
  std::vector<SchedulePiece> pieces;

  ControlVector controls_at(double t) const {
    for (const auto& piece : pieces) {
      if (t >= piece.t_start && t <= piece.t_end) {
        const double th = piece.omega * t + piece.phi;
        return {piece.amplitude * std::cos(th), piece.amplitude * std::sin(th),
                piece.uz};
      }
    }
    throw RangeError("time " + std::to_string(t) + " outside schedule");
  }
};

// Checks the tiling invariant and the control bounds against p.
inline void validate(const ProblemParams& p, const ControlSchedule& sched) {
  const double tol = 1e-9;
  double cursor = 0.0;
  for (const auto& piece : sched.pieces) {
    if (std::abs(piece.t_start - cursor) > tol) {
      throw RangeError("schedule pieces do not tile [0, duration]");
    }
    if (piece.t_end < piece.t_start) throw RangeError("schedule piece runs backwards");
    if (piece.amplitude > p.gamma1 + tol || std::abs(piece.uz) > p.gamma2 + tol) {
      throw RangeError("schedule piece violates the control bounds");
    }
    cursor = piece.t_end;
  }
  if (std::abs(cursor - sched.duration) > tol) {
    throw RangeError("schedule pieces do not reach the full duration");
  }
}

inline ControlSchedule make_extremal_schedule(const ProblemParams& p,
                                              const ExtremalSpec& s,
                                              double duration) {
  check_branch_range(p, s);
  ControlSchedule sched;
  sched.duration = duration;
  sched.pieces.push_back(SchedulePiece{s.branch, s.omega, s.phi, branch_uz(p, s),
                                       p.gamma1, 0.0, duration});
  return sched;
}

}  // namespace su2opt
