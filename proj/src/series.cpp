#include "rwm/series.hpp"

#include "rwm/errors.hpp"

namespace rwm {

Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series out(n);
  for (std::size_t k = 0; k < n; ++k) {
    CompensatedSum<cplx> s;
    for (std::size_t i = 0; i <= k; ++i) s += a[i] * b[k - i];
    out[k] = s.value();
  }
  return out;
}

Series series_log(const Series& a) {
  if (a.empty() || std::abs(a[0] - 1.0) > 1e-14) {
    fail(ErrorKind::InvalidArgument, "series_log needs constant term 1");
  }
  // b = log a  <=>  n b_n = n a_n - sum_{k=1}^{n-1} k b_k a_{n-k}
  const std::size_t n = a.size();
  Series b(n, 0.0);
  for (std::size_t m = 1; m < n; ++m) {
    CompensatedSum<cplx> s;
    s += static_cast<double>(m) * a[m];
    for (std::size_t k = 1; k < m; ++k) s += -static_cast<double>(k) * b[k] * a[m - k];
    b[m] = s.value() / static_cast<double>(m);
  }
  return b;
}

Series series_exp(const Series& a) {
  if (a.empty() || std::abs(a[0]) > 1e-14) {
    fail(ErrorKind::InvalidArgument, "series_exp needs constant term 0");
  }
  // b = exp a  <=>  n b_n = sum_{k=1}^{n} k a_k b_{n-k}
  const std::size_t n = a.size();
  Series b(n, 0.0);
  b[0] = 1.0;
  for (std::size_t m = 1; m < n; ++m) {
    CompensatedSum<cplx> s;
    for (std::size_t k = 1; k <= m; ++k) s += static_cast<double>(k) * a[k] * b[m - k];
    b[m] = s.value() / static_cast<double>(m);
    if (!std::isfinite(b[m].real()) || !std::isfinite(b[m].imag())) {
      fail(ErrorKind::SeriesOverflow, "series_exp coefficient overflowed");
    }
  }
  return b;
}

Series series_pow(const Series& a, double t) {
  Series l = series_log(a);
  for (cplx& c : l) c *= t;
  return series_exp(l);
}

Series euler_product(int n) {
  Series p(static_cast<std::size_t>(std::max(n, 1)), 0.0);
  p[0] = 1.0;
  for (int m = 1; m < n; ++m) {
    // multiply by (1 - q^m), in place from the top
    for (int k = n - 1; k >= m; --k) p[k] -= p[k - m];
  }
  return p;
}

}  // namespace rwm
