#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "su2opt/errors.hpp"

namespace su2opt {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// 2x2 complex matrix, row major: {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

inline Mat2 adjoint(const Mat2& m) {
  return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

inline Mat2 sub(const Mat2& a, const Mat2& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Complex det(const Mat2& m) { return m[0] * m[3] - m[1] * m[2]; }

// A special unitary stored through its first column (alpha, beta); the full
// matrix is [[alpha, -conj(beta)], [beta, conj(alpha)]].
struct Su2Element {
  Complex alpha{1.0, 0.0};
  Complex beta{0.0, 0.0};

  Mat2 matrix() const {
    return {alpha, -std::conj(beta), beta, std::conj(alpha)};
  }
};

// Drift frequency and the two control bounds: |u_xy| <= gamma1, |u_z| <= gamma2.
struct ProblemParams {
  double omega0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

inline void validate(const ProblemParams& p) {
  if (!(p.gamma1 >= 0.0) || !(p.gamma2 >= 0.0)) {
    throw DegenerateError("control bounds must be non-negative: gamma1=" +
                          std::to_string(p.gamma1) +
                          " gamma2=" + std::to_string(p.gamma2));
  }
}

// Renormalizing constructor. Inputs more than 1e-9 away from the unit sphere
// are rejected rather than silently rescaled.
inline Su2Element make_element(Complex alpha, Complex beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw NormalizationError("|alpha|^2 + |beta|^2 = " + std::to_string(n2) +
                             ", too far from 1");
  }
  const double n = std::sqrt(n2);
  return Su2Element{alpha / n, beta / n};
}

inline Su2Element identity_element() { return Su2Element{{1.0, 0.0}, {0.0, 0.0}}; }

// The SWAP/NOT class: alpha = 0 (the center of the unit disk). beta phase is
// a gauge choice; i*sigma_y corresponds to beta = -1.
inline Su2Element swap_element() { return Su2Element{{0.0, 0.0}, {0.0, 1.0}}; }

// Diagonal operator exp(i*lambda*sigma_z): alpha = e^{i lambda}, beta = 0.
inline Su2Element diagonal_element(double lambda) {
  return Su2Element{std::polar(1.0, lambda), {0.0, 0.0}};
}

struct DiskPoint {
  double x = 0.0;
  double y = 0.0;
};

// Projection to the unit disk: the off-diagonal phase is a gauge freedom, so
// alpha alone identifies the equivalence class.
inline DiskPoint disk_coords(const Su2Element& e) {
  return {e.alpha.real(), e.alpha.imag()};
}

// Pseudometric on equivalence classes: |alpha_a - alpha_b|. Zero exactly on
// class-equal elements (|beta| is pinned by normalization, its phase ignored).
inline double equiv_distance(const Su2Element& a, const Su2Element& b) {
  return std::abs(a.alpha - b.alpha);
}

enum class Axis { X, Y, Z };

// Skew-Hermitian generator J_k = -(i/2) sigma_k.
struct Generator {
  Axis index;
  Mat2 matrix;
};

inline Generator generator(Axis axis) {
  const Complex i{0.0, 1.0};
  switch (axis) {
    case Axis::X:
      return {axis, Mat2{Complex{0, 0}, -0.5 * i, -0.5 * i, Complex{0, 0}}};
    case Axis::Y:
      return {axis, Mat2{Complex{0, 0}, Complex{-0.5, 0}, Complex{0.5, 0},
                         Complex{0, 0}}};
    default:
      return {axis, Mat2{-0.5 * i, Complex{0, 0}, Complex{0, 0}, 0.5 * i}};
  }
}

inline Mat2 commutator(const Mat2& a, const Mat2& b) {
  return sub(matmul(a, b), matmul(b, a));
}

}  // namespace su2opt
