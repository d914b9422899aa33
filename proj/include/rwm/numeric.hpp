#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>
#include <algorithm>

namespace rwm {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Neumaier compensated accumulator. Works for double and std::complex<double>
/// (real and imaginary parts are compensated independently).
template <class T>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(const T& x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  static void add_real(double& s, double& c, double x) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }

  void add(const T& x) {
    if constexpr (std::is_same_v<T, double>) {
      add_real(sum_, comp_, x);
    } else {
      double sr = sum_.real(), si = sum_.imag();
      double cr = comp_.real(), ci = comp_.imag();
      add_real(sr, cr, x.real());
      add_real(si, ci, x.imag());
      sum_ = T(sr, si);
      comp_ = T(cr, ci);
    }
  }

  T sum_{};
  T comp_{};
};

/// exp(r * Log(w)) with the principal logarithm, arg in (-pi, pi].
inline cplx principal_log(cplx w) {
  // a signed zero imaginary part would put -1 on the wrong side of the cut
  if (w.imag() == 0.0) w = cplx(w.real(), 0.0);
  return std::log(w);
}

inline double principal_arg(cplx w) { return principal_log(w).imag(); }

inline cplx principal_pow(cplx w, double r) {
  if (r == 0.0) return 1.0;
  return std::exp(r * principal_log(w));
}

inline double rel_diff(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace rwm
