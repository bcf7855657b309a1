#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "su2opt/frontlines.hpp"

using namespace su2opt;

namespace {

const ProblemParams kP413{4.0, 1.0, 3.0};  // co-rotating, inner disk excluded
const ProblemParams kP223{2.0, 2.0, 3.0};  // counter-rotating, full depth
const ProblemParams kP423{4.0, 2.0, 3.0};  // co-rotating, full depth
const ProblemParams kP213{2.0, 1.0, 3.0};  // counter-rotating, inner disk excluded

double polygon_area(const std::vector<DiskPoint>& poly) {
  double acc = 0.0;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    acc += poly[j].x * poly[i].y - poly[i].x * poly[j].y;
  }
  return 0.5 * acc;
}

// Independent completeness oracle: dense polylines of both fronts, exact
// segment-segment crossing tests accelerated by spatial buckets.
std::vector<FrontIntersection> crossings_oracle(const ProblemParams& p, double tau,
                                                int n) {
  const auto [plo, phi_] = truncated_interval(p, Branch::Plus, tau);
  const auto [mlo, mhi] = truncated_interval(p, Branch::Minus, tau);
  std::vector<DiskPoint> P(n + 1), M(n + 1);
  std::vector<double> wp(n + 1), wm(n + 1);
  for (int i = 0; i <= n; ++i) {
    wp[i] = plo + (phi_ - plo) * i / n;
    wm[i] = mlo + (mhi - mlo) * i / n;
    const Complex a = detail::branch_alpha(p, Branch::Plus, wp[i], tau);
    const Complex b = detail::branch_alpha(p, Branch::Minus, wm[i], tau);
    P[i] = {a.real(), a.imag()};
    M[i] = {b.real(), b.imag()};
  }
  const double cell = 4e-3;
  std::map<std::pair<int, int>, std::vector<int>> buckets;
  const auto key = [&](double x, double y) {
    return std::make_pair(static_cast<int>(std::floor(x / cell)),
                          static_cast<int>(std::floor(y / cell)));
  };
  for (int j = 0; j < n; ++j) {
    const auto k0 = key(M[j].x, M[j].y), k1 = key(M[j + 1].x, M[j + 1].y);
    for (int a = std::min(k0.first, k1.first); a <= std::max(k0.first, k1.first); ++a) {
      for (int b = std::min(k0.second, k1.second); b <= std::max(k0.second, k1.second); ++b) {
        buckets[{a, b}].push_back(j);
      }
    }
  }
  std::vector<FrontIntersection> out;
  for (int i = 0; i < n; ++i) {
    const auto k0 = key(P[i].x, P[i].y), k1 = key(P[i + 1].x, P[i + 1].y);
    std::vector<int> cand;
    for (int a = std::min(k0.first, k1.first) - 1; a <= std::max(k0.first, k1.first) + 1; ++a) {
      for (int b = std::min(k0.second, k1.second) - 1; b <= std::max(k0.second, k1.second) + 1; ++b) {
        const auto it = buckets.find({a, b});
        if (it != buckets.end()) cand.insert(cand.end(), it->second.begin(), it->second.end());
      }
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const int j : cand) {
      const double ux = P[i + 1].x - P[i].x, uy = P[i + 1].y - P[i].y;
      const double vx = M[j + 1].x - M[j].x, vy = M[j + 1].y - M[j].y;
      const double wx = M[j].x - P[i].x, wy = M[j].y - P[i].y;
      const double det2 = ux * (-vy) + vx * uy;
      if (std::abs(det2) < 1e-30) continue;
      const double s = (wx * (-vy) + vx * wy) / det2;
      const double t = (ux * wy - uy * wx) / det2;
      if (s < -1e-9 || s > 1.0 + 1e-9 || t < -1e-9 || t > 1.0 + 1e-9) continue;
      FrontIntersection f;
      f.omega_plus = wp[i] + s * (wp[i + 1] - wp[i]);
      f.omega_minus = wm[j] + t * (wm[j + 1] - wm[j]);
      f.x = P[i].x + s * ux;
      f.y = P[i].y + s * uy;
      bool dup = false;
      for (const auto& g : out) {
        if (std::hypot(g.x - f.x, g.y - f.y) < 1e-3) dup = true;
      }
      if (!dup) out.push_back(f);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("truncated windows") {
  // Plus always runs from the border cut up to the junction
  const auto [plo, phi_] = truncated_interval(kP413, Branch::Plus, 0.5);
  CHECK(phi_ == 7.0);
  CHECK(plo == Catch::Approx(0.79690257981083821).epsilon(1e-14));

  // co-rotating Minus folds at the critical frequency
  const auto [mlo, mhi] = truncated_interval(kP413, Branch::Minus, 0.5);
  CHECK(mlo == 1.0);
  CHECK(mhi == Catch::Approx(2.0).epsilon(1e-14));

  // counter-rotating Minus runs junction to border cut
  const auto [nlo, nhi] = truncated_interval(kP223, Branch::Minus, 0.5);
  CHECK(nlo == -1.0);
  CHECK(nhi ==
        Catch::Approx(-1.0 + std::sqrt((kPi / 0.5) * (kPi / 0.5) - 4.0)).epsilon(1e-14));

  // border cut has swallowed the pinned families
  CHECK_THROWS_AS(truncated_interval(kP413, Branch::Plus, kPi + 0.01), EmptyLocusError);
  CHECK_THROWS_AS(truncated_interval(kP413, Branch::Minus, kPi + 0.01), EmptyLocusError);

  // Zero survives and canonicalizes past the full wrap
  const auto [zlo, zhi] = truncated_interval(kP413, Branch::Zero, 1.2);
  CHECK(zlo == Catch::Approx(4.0 - kPi / 1.2));
  CHECK(zhi == Catch::Approx(4.0 + kPi / 1.2));
}

TEST_CASE("junction continuity of the sampled loci") {
  for (const auto& p : {kP413, kP223, kP423}) {
    for (const double tau : {0.2, 0.45}) {
      const auto zero = sample_frontline(p, Branch::Zero, tau, 33);
      const auto plus = sample_frontline(p, Branch::Plus, tau, 33);
      const auto minus = sample_frontline(p, Branch::Minus, tau, 33);
      // Zero runs [omega0-gamma2, omega0+gamma2]; Plus ends at the junction,
      // Minus starts at it.
      CHECK(std::hypot(zero.back().x - plus.back().x, zero.back().y - plus.back().y) <
            1e-12);
      CHECK(std::hypot(zero.front().x - minus.front().x,
                       zero.front().y - minus.front().y) < 1e-12);
    }
  }
}

TEST_CASE("frozen Zero sample and the tau -> 0 limit") {
  const auto rows = sample_frontline(kP413, Branch::Zero, 0.5, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].omega == 4.0);
  CHECK(rows[1].x == Catch::Approx(-0.36520320693961540).epsilon(1e-13));
  CHECK(rows[1].y == Catch::Approx(-0.79798356535400546).epsilon(1e-13));

  for (const Branch b : {Branch::Zero, Branch::Plus, Branch::Minus}) {
    for (const auto& s : sample_frontline(kP413, b, 1e-8, 9)) {
      CHECK(std::hypot(s.x - 1.0, s.y) < 1e-6);
    }
  }
}

TEST_CASE("negative drift mirrors the disk") {
  ProblemParams flipped{-4.0, 1.0, 3.0};
  const auto direct = sample_frontline(kP413, Branch::Plus, 0.4, 17);
  const auto mirrored = sample_frontline(flipped, Branch::Minus, 0.4, 17);
  REQUIRE(direct.size() == mirrored.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(mirrored[i].omega == Catch::Approx(-direct[i].omega).margin(1e-12));
    CHECK(mirrored[i].x == Catch::Approx(direct[i].x).margin(1e-12));
    CHECK(mirrored[i].y == Catch::Approx(-direct[i].y).margin(1e-12));
  }
}

TEST_CASE("front intersections: endpoint coincidences") {
  // tau = pi/gamma2: the Zero arc closes, so the two junctions coincide
  {
    const auto xs = frontline_intersections(kP213, kPi / 3.0, 256);
    bool found = false;
    for (const auto& f : xs) {
      if (std::abs(f.omega_plus - 5.0) < 1e-6 && std::abs(f.omega_minus + 1.0) < 1e-6) {
        found = true;
      }
    }
    CHECK(found);
  }
  // tau = pi/(2 gamma1): the arc radius collapses; junctions meet at the origin
  {
    const auto xs = frontline_intersections(kP223, 0.25 * kPi, 256);
    bool found = false;
    for (const auto& f : xs) {
      if (std::abs(f.omega_plus - 5.0) < 1e-6 && std::abs(f.omega_minus + 1.0) < 1e-6) {
        found = true;
        CHECK(std::hypot(f.x, f.y) < 1e-9);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("front intersections agree with the dense-grid oracle") {
  for (const auto& [p, tau] :
       {std::pair{kP413, 0.3}, {kP223, 0.25 * kPi}, {kP213, 0.9}}) {
    const auto xs = frontline_intersections(p, tau, 256);
    const auto oracle = crossings_oracle(p, tau, 10000);
    // soundness: every reported crossing re-evaluates to a tiny residual and
    // appears in the oracle set
    for (const auto& f : xs) {
      const Complex a = detail::branch_alpha(p, Branch::Plus, f.omega_plus, tau);
      const Complex b = detail::branch_alpha(p, Branch::Minus, f.omega_minus, tau);
      CHECK(std::abs(a - b) < 1e-10);
      double nearest = 1e9;
      for (const auto& g : oracle) {
        nearest = std::min(nearest, std::hypot(g.x - f.x, g.y - f.y));
      }
      CHECK(nearest < 1e-6);
    }
    // completeness: no oracle crossing separated from every reported one
    for (const auto& g : oracle) {
      double nearest = 1e9;
      for (const auto& f : xs) {
        nearest = std::min(nearest, std::hypot(g.x - f.x, g.y - f.y));
      }
      CHECK(nearest < 1e-3);
    }
  }
}

TEST_CASE("reachable boundary: closure, orientation, disk bound") {
  for (const auto& p : {kP413, kP223, kP423}) {
    for (const double tau : {0.3, 0.5, 0.7}) {
      const auto rb = reachable_boundary(p, tau, 512);
      CHECK(rb.closed);
      CHECK(rb.form == BoundaryForm::FrontPolygon);
      for (std::size_t k = 1; k < rb.segments.size(); ++k) {
        const auto& a = rb.segments[k - 1].points.back();
        const auto& b = rb.segments[k].points.front();
        CHECK(std::hypot(a.x - b.x, a.y - b.y) < 1e-9);
      }
      const auto poly = rb.polygon();
      CHECK(std::hypot(poly.front().x - poly.back().x,
                       poly.front().y - poly.back().y) < 1e-9);
      CHECK(polygon_area(poly) > 0.0);  // counter-clockwise
      for (const auto& v : poly) {
        CHECK(v.x * v.x + v.y * v.y <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("reachable boundary: Zero arc radius and opening angle") {
  for (const auto& p : {kP413, kP223, kP423}) {
    for (const double tau : {0.3, 0.5, 0.7}) {
      const auto rb = reachable_boundary(p, tau, 1024);
      const BoundarySegment* zero = nullptr;
      for (const auto& seg : rb.segments) {
        if (seg.kind == PieceKind::ZeroArc) zero = &seg;
      }
      REQUIRE(zero != nullptr);
      const double r = std::cos(p.gamma1 * tau);
      for (const auto& v : zero->points) {
        CHECK(std::hypot(v.x, v.y) == Catch::Approx(std::abs(r)).margin(1e-9));
      }
      const auto& a = zero->points.front();
      const auto& b = zero->points.back();
      double sweep = std::atan2(a.y, a.x) - std::atan2(b.y, b.x);
      while (sweep < 0.0) sweep += 2.0 * kPi;
      while (sweep >= 2.0 * kPi) sweep -= 2.0 * kPi;
      const double expected = std::fmod(2.0 * p.gamma2 * tau, 2.0 * kPi);
      CHECK(sweep == Catch::Approx(expected).margin(1e-9));
    }
  }
}

TEST_CASE("reachable boundary: junction slopes are continuous") {
  for (const auto& p : {kP413, kP223}) {
    const double tau = 0.31;
    const double h = 1e-7;
    const auto direction = [&](Branch b, double w, double dir) {
      const auto p0 = frontline_point(p, b, w, tau);
      const auto p1 = frontline_point(p, b, w + dir * h, tau);
      return std::atan2(p1.y - p0.y, p1.x - p0.x);
    };
    const auto mod_pi = [](double a) {
      while (a <= -0.5 * kPi) a += kPi;
      while (a > 0.5 * kPi) a -= kPi;
      return a;
    };
    const double dm = p.omega0 - p.gamma2, dp = p.omega0 + p.gamma2;
    const double zp = direction(Branch::Zero, dp, -1.0);
    const double pp = direction(Branch::Plus, dp - h, -1.0);
    CHECK(mod_pi(zp - pp) == Catch::Approx(0.0).margin(1e-6));
    const double zm = direction(Branch::Zero, dm, +1.0);
    const double mm = direction(Branch::Minus, dm + h, +1.0);
    CHECK(mod_pi(zm - mm) == Catch::Approx(0.0).margin(1e-6));
  }
}

TEST_CASE("reachable regions are nested in tau") {
  // Tolerance covers the polygon discretization plus the second-order
  // contact pocket at the newest fold point of the Minus family, where the
  // envelope representation of the cut is accurate only to ~1e-4.
  for (const auto& p : {kP413, kP223, kP423}) {
    const double taus[] = {0.25, 0.45, 0.7};
    for (int i = 0; i + 1 < 3; ++i) {
      const auto rb = reachable_boundary(p, taus[i], 192);
      int outside = 0, total = 0;
      for (const auto& seg : rb.segments) {
        for (const auto& v : seg.points) {
          ++total;
          if (!contains(p, taus[i + 1], v, 1024, 1e-3)) ++outside;
        }
      }
      CHECK(outside == 0);
      CHECK(total > 0);
    }
  }
}

TEST_CASE("containment: identity, SWAP timing, border sweep") {
  for (const auto& p : {kP413, kP223, kP423}) {
    for (const double tau : {0.1, 0.7, 2.0, 5.0}) {
      CHECK(contains(p, tau, {1.0, 0.0}));
    }
    const double t_swap = 0.5 * kPi / p.gamma1;
    CHECK_FALSE(contains(p, 0.9 * t_swap, {0.0, 0.0}));
    CHECK_FALSE(contains(p, t_swap - 1e-4, {0.0, 0.0}));
    CHECK(contains(p, t_swap, {0.0, 0.0}));
    CHECK(contains(p, t_swap + 0.1, {0.0, 0.0}));
  }
  // nothing outside the closed disk
  CHECK_FALSE(contains(kP413, 1.0, {1.2, 0.0}));
  // border targets flip exactly at the sweep arrival (lambda = pi)
  const double tstar = kPi * std::sqrt(50.0) / 50.0;
  CHECK_FALSE(contains(kP413, tstar - 1e-5, {-1.0, 0.0}));
  CHECK(contains(kP413, tstar + 1e-5, {-1.0, 0.0}));
}

TEST_CASE("classification of the four regimes") {
  {
    const auto c = classify(kP413);
    CHECK(c.rotation == Rotation::CoRotating);
    CHECK(c.depth == Depth::InnerDiskExcluded);
    REQUIRE(c.excluded_radius.has_value());
    CHECK(*c.excluded_radius == Catch::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(c.boundary_rotation);
    CHECK_FALSE(c.boundary_depth);
  }
  {
    const auto c = classify(kP223);
    CHECK(c.rotation == Rotation::CounterRotating);
    CHECK(c.depth == Depth::FullDepth);
    CHECK_FALSE(c.excluded_radius.has_value());
  }
  {
    const auto c = classify(kP423);
    CHECK(c.rotation == Rotation::CoRotating);
    CHECK(c.depth == Depth::FullDepth);
  }
  {
    const auto c = classify(ProblemParams{3.0, 1.0, 3.0});
    CHECK(c.boundary_rotation);
  }
  {
    const auto c = classify(ProblemParams{4.0, 1.5, 3.0});
    CHECK(c.boundary_depth);
    CHECK(c.depth == Depth::FullDepth);  // the table's weak inequality
  }
  {
    const auto c = classify(ProblemParams{-4.0, 1.0, 3.0});  // mirror wrapper
    CHECK(c.rotation == Rotation::CoRotating);
  }
}

TEST_CASE("gamma2 = 0 degeneration reproduces the single-front problem") {
  const ProblemParams p{4.0, 1.0, 0.0};
  // the Zero locus collapses to one point
  const auto zero = sample_frontline(p, Branch::Zero, 0.4, 5);
  for (const auto& s : zero) {
    CHECK(s.omega == 4.0);
    CHECK(s.x == zero.front().x);
    CHECK(s.y == zero.front().y);
  }
  // Plus and Minus are the two halves of one locus through that point
  const auto plus = sample_frontline(p, Branch::Plus, 0.4, 9);
  const auto minus = sample_frontline(p, Branch::Minus, 0.4, 9);
  CHECK(std::hypot(plus.back().x - zero.front().x, plus.back().y - zero.front().y) <
        1e-12);
  CHECK(std::hypot(minus.front().x - zero.front().x,
                   minus.front().y - zero.front().y) < 1e-12);
  // and the boundary still closes
  const auto rb = reachable_boundary(p, 0.35, 256);
  CHECK(rb.closed);
  CHECK(polygon_area(rb.polygon()) > 0.0);
}

TEST_CASE("annulus and full-disk regimes") {
  // inner-disk-excluded case: between pi/gamma2 and pi/(2 gamma1) the
  // unreached set is exactly the disk the Zero family has not yet swept
  const double tau = 1.2;  // in (pi/3, pi/2) for kP413
  const auto rb = reachable_boundary(kP413, tau, 128);
  CHECK(rb.form == BoundaryForm::Annulus);
  CHECK(rb.inner_radius == Catch::Approx(std::cos(tau)).epsilon(1e-14));
  CHECK(contains(kP413, tau, {0.9 * std::cos(tau), 0.0}) == false);
  CHECK(contains(kP413, tau, {1.1 * std::cos(tau), 0.0}) == true);

  const auto rb2 = reachable_boundary(kP413, 2.0, 128);
  CHECK(rb2.form == BoundaryForm::FullDisk);
  CHECK(contains(kP413, 2.0, {0.0, 0.3}));
}

TEST_CASE("pure transverse control: symmetric lens boundary") {
  // no drift and no longitudinal control: the two pinned families are the
  // mirror halves of one front through the single Zero point
  const ProblemParams p{0.0, 1.0, 0.0};
  const auto rb = reachable_boundary(p, 0.6, 256);
  CHECK(rb.closed);
  const auto poly = rb.polygon();
  double area = 0.0;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    area += poly[j].x * poly[i].y - poly[i].x * poly[j].y;
  }
  CHECK(area > 0.0);
  // mirror symmetry about the x axis, sampled through membership
  for (const DiskPoint q : {DiskPoint{0.9, 0.2}, {0.85, -0.35}, {0.99, 0.05}}) {
    CHECK(contains(p, 0.6, q, 512) == contains(p, 0.6, {q.x, -q.y}, 512));
  }
  CHECK(contains(p, 0.5 * kPi, {0.0, 0.0}));
  CHECK_FALSE(contains(p, 0.5 * kPi - 1e-3, {0.0, 0.0}));
}

TEST_CASE("membership mirrors under drift conjugation") {
  const ProblemParams p{4.0, 1.0, 3.0};
  const ProblemParams m{-4.0, 1.0, 3.0};
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    DiskPoint q{u(rng), u(rng)};
    if (q.x * q.x + q.y * q.y > 1.0) continue;
    const double tau = 0.1 + 0.5 * std::abs(u(rng));
    CHECK(contains(p, tau, q, 384) == contains(m, tau, {q.x, -q.y}, 384));
  }
}
