// Test-side oracles, independent of the library paths they check.
#ifndef PWIND_TESTS_ORACLES_HPP
#define PWIND_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "pwind/point2.hpp"

namespace oracles {

using pwind::Point2;

/// Composite Simpson quadrature of f over [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

/// Central finite-difference gradient of a scalar potential.
inline Point2 fd_gradient(const std::function<double(Point2)>& potential, Point2 u, double h = 1.0e-5) {
  return Point2{(potential({u.x + h, u.y}) - potential({u.x - h, u.y})) / (2.0 * h),
                (potential({u.x, u.y + h}) - potential({u.x, u.y - h})) / (2.0 * h)};
}

/// Roots of a complex polynomial (coefficients lowest degree first) as the
/// eigenvalues of its companion matrix (Eigen's complex eigensolver), fully
/// independent of the library's root pipeline.
std::vector<std::complex<double>> companion_roots(std::vector<std::complex<double>> coeffs);

/// Uniform random point in the disk of the given radius.
template <class Rng>
Point2 random_in_disk(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double r = radius * std::sqrt(unif(rng));
  const double th = pwind::kTwoPi * unif(rng);
  return pwind::unit_at(th) * r;
}

/// Monic polynomial with the given roots, coefficients lowest degree first.
inline std::vector<std::complex<double>> poly_from_roots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& r : roots) {
    std::vector<std::complex<double>> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * r;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace oracles

#endif
