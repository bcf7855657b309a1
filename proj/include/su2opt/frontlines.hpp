#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "su2opt/errors.hpp"
#include "su2opt/extremals.hpp"
#include "su2opt/su2.hpp"

namespace su2opt {

struct FrontLineSample {
  Branch branch = Branch::Zero;
  double omega = 0.0;
  double x = 0.0;
  double y = 0.0;
  double tau = 0.0;
};

namespace detail {

// Mirror trick for negative drift: solve with |omega0|, then conjugate the
// disk (y -> -y) and swap the Plus/Minus families (omega -> -omega).
struct Canonical {
  ProblemParams p;
  bool reflected = false;
};

inline Canonical canonicalize(const ProblemParams& p) {
  validate(p);
  if (p.omega0 < 0.0) return {ProblemParams{-p.omega0, p.gamma1, p.gamma2}, true};
  return {p, false};
}

inline Branch mirror_branch(Branch b) {
  if (b == Branch::Plus) return Branch::Minus;
  if (b == Branch::Minus) return Branch::Plus;
  return Branch::Zero;
}

inline Complex branch_alpha(const ProblemParams& p, Branch branch, double w,
                            double tau) {
  const double b = (branch == Branch::Zero) ? 0.0 : branch_drift(p, branch) - w;
  return curve_alpha(w, b, p.gamma1, tau);
}

inline Complex branch_alpha_dw(const ProblemParams& p, Branch branch, double w,
                               double tau) {
  if (branch == Branch::Zero) {
    return Complex{0.0, -tau} * branch_alpha(p, branch, w, tau);
  }
  return curve_alpha_domega(w, branch_drift(p, branch) - w, p.gamma1, tau);
}

// Border-touch angle of the trajectory that leaves the truncated front at
// time tau (the moving border endpoint of the branch).
inline double border_endpoint_angle(const ProblemParams& p, Branch branch,
                                    double tau) {
  const double root =
      std::sqrt(std::max(0.0, kPi * kPi - p.gamma1 * p.gamma1 * tau * tau));
  const double d = branch_drift(p, branch);
  return (branch == Branch::Plus) ? kPi - d * tau + root : kPi - d * tau - root;
}

}  // namespace detail

// Optimality-truncated frequency window of a front line at rescaled time tau.
// Throws EmptyLocusError once the window has closed.
inline std::pair<double, double> truncated_interval(const ProblemParams& p,
                                                    Branch branch, double tau) {
  if (!(tau > 0.0)) throw RangeError("tau must be positive");
  const double dp = p.omega0 + p.gamma2;
  const double dm = p.omega0 - p.gamma2;
  if (branch == Branch::Zero) {
    // Past a full wrap several omegas map to one point; canonicalize to the
    // representatives nearest omega0.
    if (p.gamma2 > 0.0 && 2.0 * p.gamma2 * tau >= 2.0 * kPi) {
      return {p.omega0 - kPi / tau, p.omega0 + kPi / tau};
    }
    return {dm, dp};
  }
  const double rad = (kPi / tau) * (kPi / tau) - p.gamma1 * p.gamma1;
  if (rad <= 0.0) {
    throw EmptyLocusError(std::string(to_string(branch)) +
                          " front is empty: every trajectory of the family has hit "
                          "the border by tau = " + std::to_string(tau));
  }
  const double root = std::sqrt(rad);
  if (branch == Branch::Plus) return {dp - root, dp};
  // Minus: with positive drift the family folds over its own critical
  // trajectory, so frequencies beyond omega_c are no longer first arrivals;
  // past the critical time the border cut moves below omega_c and the
  // critical trajectory itself is dropped.
  double hi = dm + root;
  if (dm > 0.0) {
    hi = std::min(hi, (p.gamma1 * p.gamma1 + dm * dm) / dm);
  }
  if (!(dm < hi)) {
    throw EmptyLocusError("minus front is empty at tau = " + std::to_string(tau));
  }
  return {dm, hi};
}

// n samples of a front line over its truncated window, endpoints included.
inline std::vector<FrontLineSample> sample_frontline(const ProblemParams& p,
                                                     Branch branch, double tau,
                                                     int n) {
  if (n < 2) throw RangeError("need at least two samples");
  const auto canon = detail::canonicalize(p);
  const Branch cb = canon.reflected ? detail::mirror_branch(branch) : branch;
  const auto [lo, hi] = truncated_interval(canon.p, cb, tau);
  std::vector<FrontLineSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double w = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    const Complex a = detail::branch_alpha(canon.p, cb, w, tau);
    if (canon.reflected) {
      out.push_back({branch, -w, a.real(), -a.imag(), tau});
    } else {
      out.push_back({branch, w, a.real(), a.imag(), tau});
    }
  }
  return out;
}

// -------------------------------------------------------------------------
// F+ / F- intersections

struct FrontIntersection {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// All crossings of the truncated Plus and Minus fronts at time tau: coarse
// grid over (omega_plus, omega_minus), Newton refinement, chord-intersection
// bisection as the fallback when the Jacobian degenerates.
inline std::vector<FrontIntersection> frontline_intersections(
    const ProblemParams& p, double tau, int grid = 512) {
  if (!(tau > 0.0)) throw RangeError("tau must be positive");
  if (grid < 16) throw RangeError("grid too coarse");
  const auto canon = detail::canonicalize(p);

  std::pair<double, double> rp, rm;
  try {
    rp = truncated_interval(canon.p, Branch::Plus, tau);
    rm = truncated_interval(canon.p, Branch::Minus, tau);
  } catch (const EmptyLocusError&) {
    return {};  // one family is gone; nothing to intersect
  }

  std::vector<double> wp(grid + 1), wm(grid + 1);
  std::vector<Complex> ap(grid + 1), am(grid + 1);
  for (int i = 0; i <= grid; ++i) {
    wp[i] = rp.first + (rp.second - rp.first) * i / grid;
    wm[i] = rm.first + (rm.second - rm.first) * i / grid;
    ap[i] = detail::branch_alpha(canon.p, Branch::Plus, wp[i], tau);
    am[i] = detail::branch_alpha(canon.p, Branch::Minus, wm[i], tau);
  }

  std::vector<FrontIntersection> found;
  const auto try_register = [&](double a, double b) {
    const Complex va = detail::branch_alpha(canon.p, Branch::Plus, a, tau);
    const Complex vb = detail::branch_alpha(canon.p, Branch::Minus, b, tau);
    if (std::abs(va - vb) > 1e-10) return;
    for (const auto& f : found) {
      if (std::abs(f.omega_plus - a) < 1e-7 && std::abs(f.omega_minus - b) < 1e-7) {
        return;
      }
    }
    found.push_back(
        {a, b, 0.5 * (va.real() + vb.real()), 0.5 * (va.imag() + vb.imag())});
  };

  const auto newton = [&](double a0,
                          double b0) -> std::optional<std::pair<double, double>> {
    double a = a0, b = b0;
    for (int it = 0; it < 60; ++it) {
      const Complex F = detail::branch_alpha(canon.p, Branch::Plus, a, tau) -
                        detail::branch_alpha(canon.p, Branch::Minus, b, tau);
      if (std::abs(F) < 1e-13) return std::make_pair(a, b);
      const Complex da = detail::branch_alpha_dw(canon.p, Branch::Plus, a, tau);
      const Complex db = -detail::branch_alpha_dw(canon.p, Branch::Minus, b, tau);
      const double j00 = da.real(), j01 = db.real();
      const double j10 = da.imag(), j11 = db.imag();
      const double det2 = j00 * j11 - j01 * j10;
      const double scale = std::abs(da) * std::abs(db) + 1e-30;
      if (std::abs(det2) < scale / 1e8) return std::nullopt;
      a -= (F.real() * j11 - F.imag() * j01) / det2;
      b -= (F.imag() * j00 - F.real() * j10) / det2;
      if (a < rp.first - 1e-6 || a > rp.second + 1e-6 || b < rm.first - 1e-6 ||
          b > rm.second + 1e-6) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  };

  const auto chords = [&](double a0, double a1, double b0, double b1)
      -> std::optional<std::pair<double, double>> {
    for (int it = 0; it < 80; ++it) {
      const Complex pa0 = detail::branch_alpha(canon.p, Branch::Plus, a0, tau);
      const Complex pa1 = detail::branch_alpha(canon.p, Branch::Plus, a1, tau);
      const Complex pb0 = detail::branch_alpha(canon.p, Branch::Minus, b0, tau);
      const Complex pb1 = detail::branch_alpha(canon.p, Branch::Minus, b1, tau);
      const Complex u = pa1 - pa0, v = pb1 - pb0, w = pb0 - pa0;
      const double det2 = u.real() * (-v.imag()) + v.real() * u.imag();
      if (std::abs(det2) < 1e-30) return std::nullopt;
      double s = (w.real() * (-v.imag()) + v.real() * w.imag()) / det2;
      double t = (u.real() * w.imag() - u.imag() * w.real()) / det2;
      s = std::clamp(s, 0.0, 1.0);
      t = std::clamp(t, 0.0, 1.0);
      const double na = a0 + s * (a1 - a0), nb = b0 + t * (b1 - b0);
      const double ha = std::max(0.25 * (a1 - a0), 1e-15);
      const double hb = std::max(0.25 * (b1 - b0), 1e-15);
      a0 = std::max(rp.first, na - ha);
      a1 = std::min(rp.second, na + ha);
      b0 = std::max(rm.first, nb - hb);
      b1 = std::min(rm.second, nb + hb);
      if (a1 - a0 < 1e-14 && b1 - b0 < 1e-14) break;
    }
    const double a = 0.5 * (a0 + a1), b = 0.5 * (b0 + b1);
    const Complex F = detail::branch_alpha(canon.p, Branch::Plus, a, tau) -
                      detail::branch_alpha(canon.p, Branch::Minus, b, tau);
    if (std::abs(F) < 1e-10) return std::make_pair(a, b);
    return std::nullopt;
  };

  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Complex c00 = ap[i] - am[j], c10 = ap[i + 1] - am[j];
      const Complex c01 = ap[i] - am[j + 1], c11 = ap[i + 1] - am[j + 1];
      const auto spans = [](double v0, double v1, double v2, double v3) {
        const double mn = std::min(std::min(v0, v1), std::min(v2, v3));
        const double mx = std::max(std::max(v0, v1), std::max(v2, v3));
        return mn <= 1e-15 && mx >= -1e-15;
      };
      if (!spans(c00.real(), c10.real(), c01.real(), c11.real())) continue;
      if (!spans(c00.imag(), c10.imag(), c01.imag(), c11.imag())) continue;
      auto sol = newton(0.5 * (wp[i] + wp[i + 1]), 0.5 * (wm[j] + wm[j + 1]));
      if (!sol) sol = chords(wp[i], wp[i + 1], wm[j], wm[j + 1]);
      if (sol) try_register(sol->first, sol->second);
    }
  }

  if (canon.reflected) {
    for (auto& f : found) {
      const double a = f.omega_plus, b = f.omega_minus;
      f.omega_plus = -b;
      f.omega_minus = -a;
      f.y = -f.y;
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.omega_plus < b.omega_plus;
  });
  return found;
}

// -------------------------------------------------------------------------
// Reachable-set boundary

enum class PieceKind { ZeroArc, PlusFront, MinusFront, BorderArc, CutSpiral };

inline const char* to_string(PieceKind k) {
  switch (k) {
    case PieceKind::ZeroArc:
      return "zero_arc";
    case PieceKind::PlusFront:
      return "plus_front";
    case PieceKind::MinusFront:
      return "minus_front";
    case PieceKind::BorderArc:
      return "border_arc";
    default:
      return "cut_spiral";
  }
}

struct BoundarySegment {
  PieceKind kind = PieceKind::ZeroArc;
  double param_lo = 0.0;  // omega for fronts, s for traces, theta for border
  double param_hi = 0.0;
  std::vector<DiskPoint> points;
};

// FrontPolygon is the exact small-time strip walk; the circle forms take
// over once the front lines wrap and merge and only the innermost unreached
// disk remains meaningful.
enum class BoundaryForm { FrontPolygon, Annulus, FullDisk };

struct ReachableBoundary {
  double tau = 0.0;
  BoundaryForm form = BoundaryForm::FrontPolygon;
  double inner_radius = 0.0;  // Annulus only
  bool closed = true;
  bool reflected = false;
  std::vector<BoundarySegment> segments;

  std::vector<DiskPoint> polygon() const {
    std::vector<DiskPoint> poly;
    for (const auto& seg : segments) {
      for (const auto& pt : seg.points) {
        if (!poly.empty() &&
            std::hypot(poly.back().x - pt.x, poly.back().y - pt.y) < 1e-15) {
          continue;
        }
        poly.push_back(pt);
      }
    }
    return poly;
  }
};

namespace detail {

// Largest tau for which the strip walk below is valid: before the Zero arc
// closes on itself or its radius crosses zero, before either moving border
// endpoint wraps past the identity, and before the Minus critical spiral
// reaches the border.
inline double simple_regime_limit(const ProblemParams& p) {
  double lim = std::numeric_limits<double>::infinity();
  if (p.gamma1 > 0.0) lim = std::min(lim, 0.5 * kPi / p.gamma1);
  if (p.gamma2 > 0.0) lim = std::min(lim, kPi / p.gamma2);
  const double dp = p.omega0 + p.gamma2;
  const double dm = p.omega0 - p.gamma2;
  if (dp > 0.0) lim = std::min(lim, 2.0 * kPi * dp / (dp * dp + p.gamma1 * p.gamma1));
  if (dm > 0.0 && p.gamma1 > 0.0) {
    lim = std::min(lim, kPi * dm / (p.gamma1 * std::hypot(dm, p.gamma1)));
  }
  return lim;
}

inline BoundarySegment front_segment(const ProblemParams& p, Branch branch,
                                     PieceKind kind, double tau, double w0,
                                     double w1, int n) {
  BoundarySegment seg;
  seg.kind = kind;
  seg.param_lo = w0;
  seg.param_hi = w1;
  seg.points.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double w = w0 + (w1 - w0) * i / n;
    const Complex a = branch_alpha(p, branch, w, tau);
    seg.points.push_back({a.real(), a.imag()});
  }
  return seg;
}

// History of the Minus critical trajectory: the inner envelope of the Minus
// family, hence the deep edge of the swept region in the co-rotating case.
inline BoundarySegment spiral_segment(const ProblemParams& p, double omega_c,
                                      double s0, double s1, int n) {
  BoundarySegment seg;
  seg.kind = PieceKind::CutSpiral;
  seg.param_lo = s0;
  seg.param_hi = s1;
  seg.points.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = s0 + (s1 - s0) * i / n;
    const Complex a = branch_alpha(p, Branch::Minus, omega_c, s);
    seg.points.push_back({a.real(), a.imag()});
  }
  return seg;
}

inline BoundarySegment border_segment(double th0, double th1, int n) {
  BoundarySegment seg;
  seg.kind = PieceKind::BorderArc;
  seg.param_lo = th0;
  seg.param_hi = th1;
  seg.points.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = th0 + (th1 - th0) * i / n;
    seg.points.push_back({std::cos(t), std::sin(t)});
  }
  return seg;
}

inline BoundarySegment circle_segment(double radius, int n) {
  BoundarySegment seg;
  seg.kind = PieceKind::BorderArc;
  seg.param_lo = 0.0;
  seg.param_hi = 2.0 * kPi;
  seg.points.reserve(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double t = 2.0 * kPi * i / n;
    seg.points.push_back({radius * std::cos(t), radius * std::sin(t)});
  }
  return seg;
}

inline void reflect_boundary(ReachableBoundary& rb) {
  std::reverse(rb.segments.begin(), rb.segments.end());
  for (auto& seg : rb.segments) {
    std::reverse(seg.points.begin(), seg.points.end());
    for (auto& pt : seg.points) pt.y = -pt.y;
    if (seg.kind == PieceKind::PlusFront) {
      seg.kind = PieceKind::MinusFront;
    } else if (seg.kind == PieceKind::MinusFront) {
      seg.kind = PieceKind::PlusFront;
    }
    if (seg.kind != PieceKind::CutSpiral) {
      const double lo = seg.param_lo, hi = seg.param_hi;
      seg.param_lo = -hi;
      seg.param_hi = -lo;
    }
  }
  rb.reflected = true;
}

}  // namespace detail

// Boundary of the set reachable within rescaled time tau. In the simple
// regime this is the union of the truncated front lines closed by the swept
// border arc and, in the co-rotating case, by the trace of the Minus
// critical trajectory (the inner envelope of that family). The envelope has
// second-order contact with the fronts at the current fold point, so the
// representation is exact up to a pocket of order 1e-4 right at the newest
// cut; everywhere else the pieces are closed-form curves. Once the fronts
// wrap, only the inner unreached disk is tracked: the representation
// degrades to a circle (exact again for 2*gamma1 < gamma2, where the
// excluded disk is filled by the F0 family alone).
inline ReachableBoundary reachable_boundary(const ProblemParams& p, double tau,
                                            int resolution = 2048) {
  if (!(tau > 0.0)) throw RangeError("tau must be positive");
  if (resolution < 16) throw RangeError("resolution must be at least 16");
  const auto canon = detail::canonicalize(p);
  const ProblemParams& cp = canon.p;
  if (cp.gamma1 == 0.0) {
    throw DegenerateError("the reachable set has no area for gamma1 = 0");
  }

  ReachableBoundary rb;
  rb.tau = tau;

  const double t_simple = detail::simple_regime_limit(cp);
  if (tau <= t_simple) {
    rb.form = BoundaryForm::FrontPolygon;
    const double dp = cp.omega0 + cp.gamma2;
    const double dm = cp.omega0 - cp.gamma2;
    const double w_plus_end = boundary_frequency(cp, Branch::Plus, tau, -1);
    const double theta_p = detail::border_endpoint_angle(cp, Branch::Plus, tau);
    const int n = resolution;

    if (dm > 0.0) {
      // The family folds over the critical trajectory: its trace is the deep
      // edge of everything swept so far, and the still-fresh stretch of the
      // Minus front runs from the fold back to the junction.
      const double omega_c = (cp.gamma1 * cp.gamma1 + dm * dm) / dm;
      rb.segments.push_back(detail::spiral_segment(cp, omega_c, 0.0, tau, n));
      rb.segments.push_back(detail::front_segment(
          cp, Branch::Minus, PieceKind::MinusFront, tau, omega_c, dm, n));
    } else {
      const double theta_m = detail::border_endpoint_angle(cp, Branch::Minus, tau);
      const double w_minus_end = boundary_frequency(cp, Branch::Minus, tau, +1);
      rb.segments.push_back(detail::border_segment(0.0, theta_m, n));
      rb.segments.push_back(detail::front_segment(
          cp, Branch::Minus, PieceKind::MinusFront, tau, w_minus_end, dm, n));
    }
    rb.segments.push_back(
        detail::front_segment(cp, Branch::Zero, PieceKind::ZeroArc, tau, dm, dp, n));
    rb.segments.push_back(detail::front_segment(cp, Branch::Plus, PieceKind::PlusFront,
                                                tau, dp, w_plus_end, n));
    rb.segments.push_back(detail::border_segment(theta_p, 2.0 * kPi, n));
  } else if (tau < 0.5 * kPi / cp.gamma1) {
    // Fronts have wrapped; the unreached region is the inner disk still
    // untouched by the shrinking F0 circle.
    rb.form = BoundaryForm::Annulus;
    rb.inner_radius = std::cos(cp.gamma1 * tau);
    rb.segments.push_back(detail::circle_segment(rb.inner_radius, resolution));
  } else {
    rb.form = BoundaryForm::FullDisk;
    rb.inner_radius = 0.0;
    rb.segments.push_back(detail::circle_segment(1.0, resolution));
  }

  if (canon.reflected) detail::reflect_boundary(rb);
  return rb;
}

namespace detail {

inline bool point_near_polyline(const std::vector<DiskPoint>& poly, DiskPoint q,
                                double band) {
  for (std::size_t i = 1; i < poly.size(); ++i) {
    const double ax = poly[i - 1].x, ay = poly[i - 1].y;
    const double bx = poly[i].x, by = poly[i].y;
    const double vx = bx - ax, vy = by - ay;
    const double len2 = vx * vx + vy * vy;
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((q.x - ax) * vx + (q.y - ay) * vy) / len2, 0.0, 1.0);
    const double dx = q.x - (ax + t * vx), dy = q.y - (ay + t * vy);
    if (dx * dx + dy * dy <= band * band) return true;
  }
  return false;
}

inline bool point_in_polygon(const std::vector<DiskPoint>& poly, DiskPoint q) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool above_i = poly[i].y > q.y;
    const bool above_j = poly[j].y > q.y;
    if (above_i != above_j) {
      const double xs = poly[j].x + (q.y - poly[j].y) / (poly[i].y - poly[j].y) *
                                        (poly[i].x - poly[j].x);
      if (q.x < xs) inside = !inside;
    }
  }
  return inside;
}

// Exact membership test on the unit circle itself: the border is swept
// clockwise by the Plus family and (when the drift of the Minus family is
// negative) counter-clockwise by the Minus family. Polygon chords undershoot
// radius one, so near-border queries go through this instead.
inline bool border_swept(const ProblemParams& p, double tau, double phi,
                         double band) {
  const double root =
      std::sqrt(std::max(0.0, kPi * kPi - p.gamma1 * p.gamma1 * tau * tau));
  const double dp = p.omega0 + p.gamma2;
  const double dm = p.omega0 - p.gamma2;
  const double cw_reach = kPi + dp * tau - root;               // 2 pi - theta_P
  const double ccw_reach = std::max(0.0, kPi - dm * tau - root);  // theta_M
  if (cw_reach + ccw_reach >= 2.0 * kPi) return true;
  const double cw = std::fmod(-phi + 4.0 * kPi, 2.0 * kPi);
  const double ccw = std::fmod(phi + 4.0 * kPi, 2.0 * kPi);
  return cw <= cw_reach + band || ccw <= ccw_reach + band;
}

}  // namespace detail

// Membership in the reachable set at rescaled time tau: a point-on-boundary
// band of 1e-9 plus an even-odd ray test against the polygonized boundary.
inline bool contains(const ProblemParams& p, double tau, DiskPoint target,
                     int resolution = 512, double band = 1e-9) {
  const auto canon = detail::canonicalize(p);
  const DiskPoint q = canon.reflected ? DiskPoint{target.x, -target.y} : target;
  const double r = std::hypot(q.x, q.y);
  if (r > 1.0 + band) return false;
  if (std::hypot(q.x - 1.0, q.y) <= band) return true;  // identity, time zero
  if (!(tau > 0.0)) return false;
  if (canon.p.gamma1 == 0.0) {
    // Without transverse control only border arcs are reachable.
    return r >= 1.0 - 1e-9 &&
           detail::border_swept(canon.p, tau, std::atan2(q.y, q.x), band);
  }
  if (r >= 1.0 - 1e-7 &&
      detail::border_swept(canon.p, tau, std::atan2(q.y, q.x), band)) {
    return true;
  }

  const double t_simple = detail::simple_regime_limit(canon.p);
  if (tau <= t_simple) {
    ReachableBoundary rb = reachable_boundary(canon.p, tau, resolution);
    const auto poly = rb.polygon();
    if (detail::point_near_polyline(poly, q, band)) return true;
    return detail::point_in_polygon(poly, q);
  }
  if (tau < 0.5 * kPi / canon.p.gamma1) {
    return std::hypot(q.x, q.y) >= std::cos(canon.p.gamma1 * tau) - band;
  }
  return true;
}

// -------------------------------------------------------------------------
// Parameter-regime classification

enum class Rotation { CoRotating, CounterRotating };
enum class Depth { FullDepth, InnerDiskExcluded };

inline const char* to_string(Rotation r) {
  return r == Rotation::CoRotating ? "co_rotating" : "counter_rotating";
}

inline const char* to_string(Depth d) {
  return d == Depth::FullDepth ? "full_depth" : "inner_disk_excluded";
}

struct RegimeClass {
  Rotation rotation = Rotation::CoRotating;
  Depth depth = Depth::FullDepth;
  std::optional<double> excluded_radius;
  // The four-class table is stated for strict inequalities only; equalities
  // are reported, not silently assigned.
  bool boundary_rotation = false;
  bool boundary_depth = false;
};

inline RegimeClass classify(const ProblemParams& p) {
  validate(p);
  const double w0 = std::abs(p.omega0);
  RegimeClass c;
  c.boundary_rotation = (p.gamma2 == w0);
  c.boundary_depth = (2.0 * p.gamma1 == p.gamma2);
  c.rotation = (p.gamma2 > w0) ? Rotation::CounterRotating : Rotation::CoRotating;
  if (c.boundary_rotation) c.rotation = Rotation::CounterRotating;
  c.depth = (2.0 * p.gamma1 >= p.gamma2) ? Depth::FullDepth : Depth::InnerDiskExcluded;
  if (c.depth == Depth::InnerDiskExcluded) {
    c.excluded_radius = std::cos(kPi * p.gamma1 / p.gamma2);
  }
  return c;
}

}  // namespace su2opt
