#ifndef PWIND_FORCING_HPP
#define PWIND_FORCING_HPP

#include <vector>

#include "pwind/point2.hpp"

namespace pwind {

/// T-periodic forcing given as a finite trigonometric polynomial
///   p(t) = a0 + sum_k [ a_k cos(2 pi k t / T) + b_k sin(2 pi k t / T) ].
/// The representation makes the mean and the L2 norm exact, and p(t + T) = p(t)
/// holds by construction.
class Forcing {
 public:
  struct Harmonic {
    int k = 1;
    Point2 cos_coeff;
    Point2 sin_coeff;
  };

  /// Throws InputError on T <= 0, non-finite coefficients, k < 1, or duplicate k.
  Forcing(double period, Point2 mean, std::vector<Harmonic> harmonics = {});

  static Forcing zero(double period) { return Forcing(period, Point2{0.0, 0.0}); }

  Point2 operator()(double t) const;

  double period() const { return period_; }
  Point2 mean() const { return mean_; }
  const std::vector<Harmonic>& harmonics() const { return harmonics_; }

  /// ||p||_{L2([0,T])} in closed form: sqrt(T (|a0|^2 + 1/2 sum (|a_k|^2 + |b_k|^2))).
  double l2_norm() const;

  /// Upper bound for sup_t |p(t)|: componentwise |a0| + sum(|a_k| + |b_k|), then Euclidean.
  double sup_norm_bound() const;

  /// The zero-mean part p - mean(p).
  Forcing zero_mean_part() const;

  bool is_zero() const;

 private:
  double period_;
  Point2 mean_;
  std::vector<Harmonic> harmonics_;  // sorted by k, unique
};

}  // namespace pwind

#endif
