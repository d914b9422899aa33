#include "rwm/eichler.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace rwm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_source(const FourierForm& g, double r) {
  if (std::abs(g.weight - (2.0 - r)) > 1e-12) {
    fail(ErrorKind::IncompatibleWeights, "source form must have weight 2 - r");
  }
  if (!g.cusp_form) fail(ErrorKind::InvalidArgument, "source form must be a cusp form");
}

// g evaluated as accurately as the expansion allows; relative criterion only
cplx g_at(const FourierForm& g, cplx z) { return eval_anywhere(g, z, 1e-300).value; }

}  // namespace

ValueWithError aux_integral(const FourierForm& g, double r, cplx z, const QuadratureSpec& q) {
  check_source(g, r);
  const double x = z.real(), y = z.imag();
  if (!(y > 0.0)) fail(ErrorKind::InvalidArgument, "aux_integral needs Im z > 0");
  const double H = std::max(y, q.Y);
  const double T = H - y;

  // ∫_0^T g(z + it)(2y + t)^{-r} dt with t = y (e^u - 1)
  QuadResult lower;
  if (T > 0.0) {
    const double U = std::log1p(T / y);
    const RealIntegrand f = [&g, r, z, y](double u) -> cplx {
      const double eu = std::exp(u);
      const double t = y * std::expm1(u);
      return g_at(g, z + cplx(0.0, t)) * std::pow(y * (1.0 + eu), -r) * (y * eu);
    };
    lower = integrate(f, 0.0, U, 0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);
  }

  // above height H, termwise: a_n e^{i al x} al^{r-1} e^{-al H} Γs(1 - r, al (y + H))
  CompensatedSum<cplx> upper;
  double mag = 0.0;
  for (int n = 0; n <= g.truncation(); ++n) {
    if (g.coeffs[n] == cplx(0.0, 0.0)) continue;
    const double al = 2.0 * kPi * (n + g.kappa) / g.width;
    const double log_mag = (r - 1.0) * std::log(al) - al * H;
    if (log_mag < -745.0) continue;
    const cplx term = g.coeffs[n] * std::polar(1.0, al * x) * std::exp(log_mag) *
                      upper_gamma_scaled(1.0 - r, al * (y + H));
    upper += term;
    mag += std::abs(term);
  }
  const double al_next = 2.0 * kPi * (g.truncation() + 1 + g.kappa) / g.width;
  const double dropped = tail_estimate(g, H) * std::pow(al_next, r - 1.0) *
                         upper_gamma_scaled(1.0 - r, al_next * (y + H));

  const cplx integral = lower.value + upper.value();
  // τ - zbar = i(2y + t), so (τ - zbar)^{-r} dτ = i e^{-i pi r / 2} (2y + t)^{-r} dt
  const cplx pre = -kI * std::polar(1.0, -kPi * r / 2.0);
  const double err = lower.error + dropped + 16.0 * kEps * (mag + std::abs(lower.value));
  return {std::conj(pre * integral), err};
}

cplx aux_integral_dzbar(const FourierForm& g, double r, cplx z) {
  return std::conj(g_at(g, z)) * principal_pow(std::conj(z) - z, -r);
}

CocycleHandle make_cocycle(const FourierForm& g, const QuadratureSpec& q) {
  q.validate();
  if (!g.cusp_form || !g.modular) {
    fail(ErrorKind::InvalidArgument, "Eichler cocycles need a modular cusp form");
  }
  const double r = 2.0 - g.weight;
  CocycleHandle c;
  c.g = g;
  c.r = r;
  c.v = g.multiplier.conj().reweighted(r);
  c.quad = q;
  return c;
}

ValueWithError cocycle_eval(const CocycleHandle& c, const Mat2& gamma, cplx z) {
  if (!is_unimodular(gamma)) fail(ErrorKind::NotSL2Z, "determinant is not 1");
  const cplx w = mobius(gamma, z);
  const ValueWithError Gw = aux_integral(c.g, c.r, w, c.quad);
  const ValueWithError Gz = aux_integral(c.g, c.r, z, c.quad);
  const cplx factor = std::conj(c.v(gamma)) * j_pow(gamma, z, -c.r);
  const cplx first = factor * Gw.value;
  const double err = std::abs(factor) * Gw.error + Gz.error +
                     4.0 * kEps * (std::abs(first) + std::abs(Gz.value));
  return {first - Gz.value, err};
}

ValueWithError cocycle_eval_direct(const CocycleHandle& c, const Mat2& gamma, cplx z) {
  if (!is_unimodular(gamma)) fail(ErrorKind::NotSL2Z, "determinant is not 1");
  const std::int64_t a = gamma(0, 0), cc = gamma(1, 0), d = gamma(1, 1);
  if (cc == 0) return {0.0, 0.0};
  const FourierForm& g = c.g;
  const double r = c.r, k = g.weight;
  const cplx zbar = std::conj(z);
  const double cd = static_cast<double>(cc);
  const double p = -static_cast<double>(d) / cd;
  const double u_split = 1.0 / std::abs(cd);
  const QuadratureSpec& q = c.quad;

  // ∫ from p + i u_split up to i∞
  const RealIntegrand upper = [&g, r, p, zbar](double u) -> cplx {
    const cplx tau(p, u);
    const cplx gv = g_at(g, tau);
    if (gv == cplx(0.0, 0.0)) return 0.0;
    return gv * principal_pow(tau - zbar, -r) * kI;
  };
  const QuadResult up = integrate_to_infinity(upper, u_split, 0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);

  // ∫ from p to p + i u_split; τ = γ^{-1} w with w = a/c + i v, v >= 1/|c|
  const Mat2 ginv = inverse(gamma);
  const cplx vg = g.multiplier(ginv);
  const double wx = static_cast<double>(a) / cd;
  const RealIntegrand lower = [&g, r, k, zbar, ginv, vg, wx](double v) -> cplx {
    const cplx w(wx, v);
    const cplx gv = g_at(g, w);
    if (gv == cplx(0.0, 0.0)) return 0.0;
    const cplx tau = mobius(ginv, w);
    return -vg * j_pow(ginv, w, k - 2.0) * gv * principal_pow(tau - zbar, -r) * kI;
  };
  const QuadResult lo = integrate_to_infinity(lower, u_split, 0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);
  const cplx total = up.value + lo.value;
  return {std::conj(total), up.error + lo.error + 8.0 * kEps * (std::abs(up.value) + std::abs(lo.value))};
}

Sampler coboundary_apply(Sampler h, const Mat2& gamma, double r, const MultiplierSystem& v) {
  const Sampler moved = slash(h, gamma, r, v);
  return [moved, h = std::move(h)](cplx z) { return moved(z) - h(z); };
}

CocycleEvaluator evaluator(const CocycleHandle& c) {
  return {c.r, c.v, [c](const Mat2& g, cplx z) { return cocycle_eval(c, g, z); }};
}

CocycleEvaluator coboundary_evaluator(Sampler h, double r, const MultiplierSystem& v) {
  return {r, v, [h, r, v](const Mat2& g, cplx z) -> ValueWithError {
            const cplx val = coboundary_apply(h, g, r, v)(z);
            return {val, 8.0 * kEps * std::abs(val)};
          }};
}

CocycleEvaluator combine(cplx a, const CocycleEvaluator& phi1, const CocycleEvaluator& phi2) {
  if (std::abs(phi1.r - phi2.r) > 1e-12 || !phi1.v.same_values(phi2.v)) {
    fail(ErrorKind::IncompatibleWeights, "cocycles of different weight or multiplier");
  }
  return {phi1.r, phi1.v, [a, phi1, phi2](const Mat2& g, cplx z) -> ValueWithError {
            const ValueWithError x = phi1.eval(g, z), y = phi2.eval(g, z);
            return {a * x.value + y.value, std::abs(a) * x.error + y.error};
          }};
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxAverageTerms = 20000;

cplx geometric_sum(const Sampler& g, cplx eps_bar, double s, cplx z) {
  CompensatedSum<cplx> sum;
  cplx weight = 1.0;
  const double first = std::abs(g(z));
  double prev = first;
  for (int n = 0; n < kMaxAverageTerms; ++n) {
    const cplx term = weight * g(z + static_cast<double>(n) * s);
    const double m = std::abs(term);
    if (!std::isfinite(m) || m > 1e6 * std::max(first, 1e-300)) {
      fail(ErrorKind::Divergent, "one-sided average terms grow");
    }
    sum += -term;
    if (n >= 2 && m <= 1e-18 * std::abs(sum.value()) && m < prev) return sum.value();
    if (n >= 200 && m >= 0.5 * first) fail(ErrorKind::Divergent, "one-sided average terms do not decay");
    if (m == 0.0 && prev == 0.0 && n >= 2) return sum.value();
    prev = m;
    weight *= eps_bar;
  }
  fail(ErrorKind::Divergent, "one-sided average did not converge");
}

struct Diagonalization {
  Eigen::MatrixXcd Q;
  Eigen::VectorXcd d;
};

Diagonalization diagonalize_unitary(const Eigen::MatrixXcd& U) {
  const auto n = U.rows();
  if (U.cols() != n) fail(ErrorKind::DimensionMismatch, "U must be square");
  if ((U.adjoint() * U - Eigen::MatrixXcd::Identity(n, n)).norm() > 1e-10) {
    fail(ErrorKind::NonUnitary, "U is not unitary");
  }
  // a normal matrix has a diagonal Schur form
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(U);
  const Eigen::MatrixXcd& Tm = schur.matrixT();
  const Eigen::MatrixXcd off = Tm - Eigen::MatrixXcd(Tm.diagonal().asDiagonal());
  if (off.norm() > 1e-9) fail(ErrorKind::NonUnitary, "Schur form of U is not diagonal");
  return {schur.matrixU(), Tm.diagonal()};
}

}  // namespace

Sampler solve_geometric(Sampler g, cplx eps, double s) {
  if (std::abs(std::abs(eps) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "|eps| must be 1");
  if (s == 0.0) fail(ErrorKind::InvalidArgument, "shift s must be nonzero");
  const cplx eps_bar = std::conj(eps);
  return [g = std::move(g), eps_bar, s](cplx z) { return geometric_sum(g, eps_bar, s, z); };
}

Sampler solve_fourier(const std::vector<FourierTerm>& g, cplx eps, double s) {
  if (std::abs(std::abs(eps) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "|eps| must be 1");
  if (s == 0.0) fail(ErrorKind::InvalidArgument, "shift s must be nonzero");
  std::vector<FourierTerm> f;
  for (const FourierTerm& t : g) {
    const cplx denom = std::conj(eps) * std::polar(1.0, 2.0 * kPi * t.frequency * s) - 1.0;
    if (std::abs(denom) < 1e-12) fail(ErrorKind::ResonantFrequency, "conj(eps) e^{2 pi i nu s} = 1");
    f.push_back({t.frequency, t.coefficient / denom});
  }
  return [f](cplx z) {
    CompensatedSum<cplx> sum;
    for (const FourierTerm& t : f) sum += t.coefficient * std::exp(2.0 * kPi * kI * t.frequency * z);
    return sum.value();
  };
}

VectorSampler solve_geometric(VectorSampler g, const Eigen::MatrixXcd& U, double s) {
  const Diagonalization dz = diagonalize_unitary(U);
  const auto n = U.rows();
  std::vector<Sampler> parts;
  for (Eigen::Index j = 0; j < n; ++j) {
    // component j of Q^* g
    const Sampler gj = [g, Q = dz.Q, j](cplx z) { return (Q.adjoint() * g(z))(j); };
    parts.push_back(solve_geometric(gj, dz.d(j), s));
  }
  return [parts, Q = dz.Q, n](cplx z) -> Eigen::VectorXcd {
    Eigen::VectorXcd F(n);
    for (Eigen::Index j = 0; j < n; ++j) F(j) = parts[j](z);
    return Q * F;
  };
}

VectorSampler solve_fourier(const std::vector<VectorFourierTerm>& g, const Eigen::MatrixXcd& U, double s) {
  const Diagonalization dz = diagonalize_unitary(U);
  const auto n = U.rows();
  std::vector<VectorFourierTerm> f;
  for (const VectorFourierTerm& t : g) {
    if (t.coefficient.size() != n) fail(ErrorKind::DimensionMismatch, "coefficient dimension != U");
    Eigen::VectorXcd F = dz.Q.adjoint() * t.coefficient;
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx denom = std::conj(dz.d(j)) * std::polar(1.0, 2.0 * kPi * t.frequency * s) - 1.0;
      if (std::abs(denom) < 1e-12) fail(ErrorKind::ResonantFrequency, "resonant eigenvalue of U");
      F(j) /= denom;
    }
    f.push_back({t.frequency, dz.Q * F});
  }
  return [f, n](cplx z) -> Eigen::VectorXcd {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (const VectorFourierTerm& t : f) out += t.coefficient * std::exp(2.0 * kPi * kI * t.frequency * z);
    return out;
  };
}

Sampler one_sided_average_solve(const Sampler& g, const std::vector<FourierTerm>& terms, cplx eps,
                                double s, AverageMode mode) {
  if (mode == AverageMode::Geometric) {
    Sampler f = solve_geometric(g, eps, s);
    f(cplx(0.0, 1.0));  // fail early on an input without decay
    return f;
  }
  return solve_fourier(terms, eps, s);
}

// ---------------------------------------------------------------------------

cplx PolynomialCocycle::operator()(cplx z) const {
  cplx acc = 0.0;
  for (Eigen::Index m = coeffs.size() - 1; m >= 0; --m) acc = acc * z + coeffs(m);
  return acc;
}

PolynomialCocycle polynomial_extract(const CocycleHandle& c, const Mat2& gamma) {
  const double r = c.r;
  if (r > 0.0 || std::abs(r - std::round(r)) > 1e-12) {
    fail(ErrorKind::InvalidArgument, "polynomial extraction needs a non-positive integer weight");
  }
  const int D = static_cast<int>(std::round(-r));
  const int nodes = D + 1;
  Eigen::MatrixXcd V(nodes, nodes);
  Eigen::VectorXcd rhs(nodes);
  double scale = 0.0, noise = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double x = D == 0 ? 0.0 : -1.0 + 2.0 * k / D;
    const cplx z(x, 1.0);
    const ValueWithError v = cocycle_eval(c, gamma, z);
    rhs(k) = v.value;
    scale = std::max(scale, std::abs(v.value));
    noise = std::max(noise, v.error);
    cplx p = 1.0;
    for (int m = 0; m < nodes; ++m) {
      V(k, m) = p;
      p *= z;
    }
  }
  PolynomialCocycle out;
  out.degree = D;
  out.coeffs = V.colPivHouseholderQr().solve(rhs);
  for (double x : {-0.83, 0.21, 0.67}) {
    const cplx z(x, 1.0);
    const ValueWithError v = cocycle_eval(c, gamma, z);
    scale = std::max(scale, std::abs(v.value));
    noise = std::max(noise, v.error);
    out.max_residual = std::max(out.max_residual, std::abs(out(z) - v.value));
  }
  out.scale = scale;
  if (out.max_residual > 1e-6 * scale + 100.0 * noise) {
    fail(ErrorKind::NotPolynomial, "cocycle is not a polynomial of degree " + std::to_string(D));
  }
  return out;
}

GrowthBound fit_growth(const std::function<cplx(cplx)>& phi) {
  auto slope = [](double a0, double f0, double a1, double f1) {
    if (f0 <= 0.0 || f1 <= 0.0) return 0.0;
    return std::log(f1 / f0) / std::log(a1 / a0);
  };
  GrowthBound b;
  // growth in |z| along Im z = 1, growth in 1/y along Re z = 0.3
  b.A = std::max(0.0, slope(10.0, std::abs(phi({10.0, 1.0})), 100.0, std::abs(phi({100.0, 1.0}))));
  b.B = std::max(0.0, slope(10.0, std::abs(phi({0.3, 0.1})), 100.0, std::abs(phi({0.3, 0.01}))));
  b.A = std::ceil(b.A * 100.0) / 100.0 + 0.25;
  b.B = std::ceil(b.B * 100.0) / 100.0 + 0.25;
  double K = 0.0;
  for (double lx = -1.0; lx <= 2.0; lx += 0.5) {
    for (double ly = -2.0; ly <= 2.0; ly += 0.5) {
      for (double sign : {-1.0, 1.0}) {
        const cplx z(sign * std::pow(10.0, lx), std::pow(10.0, ly));
        const double bound = std::pow(std::abs(z), b.A) + std::pow(z.imag(), -b.B);
        K = std::max(K, std::abs(phi(z)) / bound);
      }
    }
  }
  b.K = K;
  return b;
}

// ---------------------------------------------------------------------------

VectorCocycleHandle make_vector_cocycle(const VectorForm& g, const QuadratureSpec& q) {
  q.validate();
  if (g.dimension() != g.multiplier.dimension()) {
    fail(ErrorKind::DimensionMismatch, "vector form and representation dimensions differ");
  }
  VectorCocycleHandle c;
  c.g = g;
  c.r = 2.0 - g.weight();
  c.v = g.multiplier.conj().reweighted(c.r);
  c.quad = q;
  return c;
}

VectorValue cocycle_eval(const VectorCocycleHandle& c, const Mat2& gamma, cplx z) {
  const int n = c.g.dimension();
  const cplx w = mobius(gamma, z);
  Eigen::VectorXcd Gw(n), Gz(n);
  double err_w = 0.0, err_z = 0.0;
  for (int i = 0; i < n; ++i) {
    const FourierForm& gi = c.g.components[i];
    if (gi.leading_index() > gi.truncation()) {
      Gw(i) = 0.0;
      Gz(i) = 0.0;
      continue;
    }
    const ValueWithError a = aux_integral(gi, c.r, w, c.quad);
    const ValueWithError b = aux_integral(gi, c.r, z, c.quad);
    Gw(i) = a.value;
    Gz(i) = b.value;
    err_w += a.error;
    err_z += b.error;
  }
  const cplx factor = std::conj(c.v(gamma)) * j_pow(gamma, z, -c.r);
  const Eigen::VectorXcd out = factor * (c.v.rho(gamma).adjoint() * Gw) - Gz;
  return {out, std::abs(factor) * err_w + err_z};
}

VectorCocycleEvaluator evaluator(const VectorCocycleHandle& c) {
  return {c.r, c.v, c.g.dimension(), [c](const Mat2& g, cplx z) { return cocycle_eval(c, g, z); }};
}

}  // namespace rwm
