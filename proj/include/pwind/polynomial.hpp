#ifndef PWIND_POLYNOMIAL_HPP
#define PWIND_POLYNOMIAL_HPP

#include <complex>
#include <vector>

namespace pwind {

/// Complex polynomial with coefficients stored lowest degree first.
class Polynomial {
 public:
  using Complex = std::complex<double>;

  Polynomial() = default;
  /// coeffs[k] multiplies z^k. Trailing zero coefficients are not stripped;
  /// the leading coefficient must be nonzero for degree >= 1 use.
  explicit Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

  Complex eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial{{Complex{0.0, 0.0}}};
    std::vector<Complex> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial{std::move(d)};
  }

  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    std::vector<Complex> a(coeffs_.size() + 1, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < coeffs_.size(); ++k) a[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    return Polynomial{std::move(a)};
  }

  /// Cauchy bound: every root satisfies |z| <= 1 + max_{k<n} |a_k / a_n|.
  double cauchy_root_bound() const {
    double m = 0.0;
    const double lead = std::abs(leading());
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) m = std::max(m, std::abs(coeffs_[k]) / lead);
    return 1.0 + m;
  }

  /// Fujiwara bound: |z| <= 2 max(|a_{n-1}/a_n|, |a_{n-2}/a_n|^{1/2}, ...,
  /// |a_0/(2 a_n)|^{1/n}). Much tighter than Cauchy when middle coefficients
  /// are large.
  double fujiwara_root_bound() const {
    const double lead = std::abs(leading());
    const int n = degree();
    double m = 0.0;
    for (int k = 1; k <= n; ++k) {
      double ratio = std::abs(coeffs_[n - k]) / lead;
      if (k == n) ratio *= 0.5;
      m = std::max(m, std::pow(ratio, 1.0 / k));
    }
    return 2.0 * m;
  }

  /// Upper bound for |p| on the closed disk of radius r (sum of coefficient moduli).
  double sup_bound_on_disk(double r) const {
    double s = 0.0, rk = 1.0;
    for (const auto& c : coeffs_) {
      s += std::abs(c) * rk;
      rk *= r;
    }
    return s;
  }

 private:
  std::vector<Complex> coeffs_;
};

}  // namespace pwind

#endif
