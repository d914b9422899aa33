#include "rwm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "rwm/errors.hpp"

namespace rwm {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
  if (max_subdivisions < 1) fail(ErrorKind::InvalidArgument, "max_subdivisions must be positive");
  if (!(Y >= 2.0)) fail(ErrorKind::InvalidArgument, "truncation height Y must be >= 2");
}

namespace {

// Kronrod abscissae (descending, last is the centre); odd indices are Gauss points
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const RealIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = kWgk[7] * fc;
  cplx g = kWg[3] * fc;
  double mass = kWgk[7] * std::abs(fc);
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const cplx f1 = f(c - dx), f2 = f(c + dx);
    k += kWgk[i] * (f1 + f2);
    mass += kWgk[i] * (std::abs(f1) + std::abs(f2));
    if (i % 2 == 1) g += kWg[i / 2] * (f1 + f2);
  }
  k *= h;
  g *= h;
  if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) {
    fail(ErrorKind::NoConvergence, "integrand is not finite on a panel");
  }
  // |K - G| alone can drop below the rounding level of the panel sum
  const double floor = 10.0 * std::numeric_limits<double>::epsilon() * std::abs(h) * mass;
  return {a, b, k, std::max(std::abs(k - g), floor)};
}

}  // namespace

QuadResult integrate(const RealIntegrand& f, double a, double b, double abs_tol, double rel_tol,
                     int max_subdivisions, int initial_panels) {
  if (a == b) return {};
  if (initial_panels < 1) fail(ErrorKind::InvalidArgument, "initial_panels must be positive");
  std::priority_queue<Panel> heap;
  CompensatedSum<cplx> total;
  double err = 0.0;
  for (int i = 0; i < initial_panels; ++i) {
    const double lo = a + (b - a) * i / initial_panels;
    const double hi = i + 1 == initial_panels ? b : a + (b - a) * (i + 1) / initial_panels;
    const Panel p = gk15(f, lo, hi);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  int subdivisions = 0;
  auto done = [&]() { return err <= std::max(abs_tol, rel_tol * std::abs(total.value())); };
  while (!done()) {
    if (subdivisions >= max_subdivisions) {
      fail(ErrorKind::ToleranceNotMet, "adaptive quadrature: error " + std::to_string(err) +
                                           " after " + std::to_string(subdivisions) + " bisections");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      fail(ErrorKind::ToleranceNotMet, "adaptive quadrature: interval below machine resolution");
    }
    const Panel left = gk15(f, worst.a, mid), right = gk15(f, mid, worst.b);
    total += -worst.value;
    total += left.value;
    total += right.value;
    // recompute the error sum occasionally to shed accumulated drift
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    if (subdivisions % 64 == 0) {
      std::vector<Panel> all;
      all.reserve(heap.size());
      double e = 0.0;
      while (!heap.empty()) {
        all.push_back(heap.top());
        e += heap.top().error;
        heap.pop();
      }
      for (const Panel& p : all) heap.push(p);
      err = e;
    }
  }
  // final value summed in position order for reproducibility
  std::vector<Panel> all;
  all.reserve(heap.size());
  double e = 0.0;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
  CompensatedSum<cplx> sum;
  for (const Panel& p : all) {
    sum += p.value;
    e += p.error;
  }
  return {sum.value(), e, subdivisions};
}

QuadResult integrate_to_infinity(const RealIntegrand& f, double a, double abs_tol, double rel_tol,
                                 int max_subdivisions) {
  const RealIntegrand g = [&f, a](double s) -> cplx {
    if (s >= 1.0) return 0.0;
    const double w = 1.0 - s;
    const cplx v = f(a + s / w);
    return v == cplx(0.0, 0.0) ? cplx(0.0) : v / (w * w);
  };
  return integrate(g, 0.0, 1.0, abs_tol, rel_tol, max_subdivisions);
}

QuadResult integrate_2d(const std::function<cplx(double, double)>& f, double x0, double x1,
                        const std::function<double(double)>& ylo,
                        const std::function<double(double)>& yhi, double abs_tol, double rel_tol,
                        int max_subdivisions, int initial_panels) {
  const double width = std::abs(x1 - x0);
  const double inner_abs = 0.1 * abs_tol / std::max(width, 1e-300);
  double inner_err = 0.0;
  const RealIntegrand outer = [&](double x) -> cplx {
    const RealIntegrand inner = [&f, x](double y) { return f(x, y); };
    const QuadResult r =
        integrate(inner, ylo(x), yhi(x), inner_abs, 0.1 * rel_tol, max_subdivisions, initial_panels);
    inner_err = std::max(inner_err, r.error);
    return r.value;
  };
  QuadResult r = integrate(outer, x0, x1, abs_tol, rel_tol, max_subdivisions, initial_panels);
  r.error += inner_err * width;
  return r;
}

namespace {

// e^x Γ(s, x) by the Legendre continued fraction; good for x >~ s + 1
double gamma_cf_scaled(double s, double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) return std::pow(x, s) * h;
  }
  fail(ErrorKind::NoConvergence, "incomplete gamma continued fraction");
}

// e^x Γ(s, x) = e^x Γ(s) - x^s sum_n x^n / (s (s+1) ... (s+n)), s > 0
double gamma_series_scaled(double s, double x) {
  double term = 1.0 / s, sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return std::exp(x + std::lgamma(s)) - std::pow(x, s) * sum;
}

// e^x E1(x) for small x
double e1_scaled(double x) {
  constexpr double euler_gamma = 0.577215664901532860606512090082402;
  double sum = 0.0, term = 1.0;
  for (int n = 1; n < 1000; ++n) {
    term *= -x / n;
    sum += term / n;
    if (std::abs(term) < 1e-18) break;
  }
  return std::exp(x) * (-euler_gamma - std::log(x) - sum);
}

}  // namespace

double upper_gamma_scaled(double s, double x) {
  if (!(x > 0.0)) fail(ErrorKind::InvalidArgument, "upper_gamma_scaled needs x > 0");
  if (x >= 1.0 && x >= s - 1.0) return gamma_cf_scaled(s, x);
  if (s > 0.0) return gamma_series_scaled(s, x);
  // Γ(s, x) = (Γ(s+1, x) - x^s e^{-x}) / s, started from s + k in (0, 1] or at s = 0
  int k = static_cast<int>(std::ceil(-s));
  double base_s = s + k;
  double v;
  if (base_s < 1e-14) {
    base_s = 0.0;
    v = x >= 1.0 ? gamma_cf_scaled(0.0, x) : e1_scaled(x);
  } else {
    v = x >= 1.0 ? gamma_cf_scaled(base_s, x) : gamma_series_scaled(base_s, x);
  }
  for (double t = base_s - 1.0; k > 0; t -= 1.0, --k) v = (v - std::pow(x, t)) / t;
  return v;
}

}  // namespace rwm
