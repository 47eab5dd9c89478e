#include "pwind/forcing.hpp"

#include <algorithm>
#include <cmath>

#include "pwind/errors.hpp"

namespace pwind {

Forcing::Forcing(double period, Point2 mean, std::vector<Harmonic> harmonics)
    : period_(period), mean_(mean), harmonics_(std::move(harmonics)) {
  if (!(period > 0.0) || !std::isfinite(period)) throw InputError("forcing: period must be positive and finite");
  if (!mean.is_finite()) throw InputError("forcing: non-finite mean coefficient");
  std::sort(harmonics_.begin(), harmonics_.end(), [](const Harmonic& a, const Harmonic& b) { return a.k < b.k; });
  for (std::size_t i = 0; i < harmonics_.size(); ++i) {
    const Harmonic& h = harmonics_[i];
    if (h.k < 1) throw InputError("forcing: harmonic index k must be >= 1");
    if (!h.cos_coeff.is_finite() || !h.sin_coeff.is_finite())
      throw InputError("forcing: non-finite harmonic coefficient");
    if (i > 0 && harmonics_[i - 1].k == h.k)
      throw InputError("forcing: duplicate harmonic index k=" + std::to_string(h.k));
  }
}

Point2 Forcing::operator()(double t) const {
  Point2 v = mean_;
  const double w = kTwoPi / period_;
  for (const Harmonic& h : harmonics_) {
    const double a = w * h.k * t;
    const double c = std::cos(a), s = std::sin(a);
    v += h.cos_coeff * c + h.sin_coeff * s;
  }
  return v;
}

double Forcing::l2_norm() const {
  double sq = mean_.norm_sq();
  for (const Harmonic& h : harmonics_) sq += 0.5 * (h.cos_coeff.norm_sq() + h.sin_coeff.norm_sq());
  return std::sqrt(period_ * sq);
}

double Forcing::sup_norm_bound() const {
  double bx = std::abs(mean_.x), by = std::abs(mean_.y);
  for (const Harmonic& h : harmonics_) {
    bx += std::abs(h.cos_coeff.x) + std::abs(h.sin_coeff.x);
    by += std::abs(h.cos_coeff.y) + std::abs(h.sin_coeff.y);
  }
  return std::hypot(bx, by);
}

Forcing Forcing::zero_mean_part() const { return Forcing(period_, Point2{0.0, 0.0}, harmonics_); }

bool Forcing::is_zero() const {
  if (mean_.x != 0.0 || mean_.y != 0.0) return false;
  for (const Harmonic& h : harmonics_)
    if (h.cos_coeff != Point2{} || h.sin_coeff != Point2{}) return false;
  return true;
}

}  // namespace pwind
