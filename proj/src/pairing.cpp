#include "rwm/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rwm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// arbitrary samplers may carry narrow features (bumps); seed the rule finely
constexpr int kSamplerPanels = 12;

// f(z) paired with φ(α)(z): the value and an absolute error bound
using EdgeIntegrand = std::function<ValueWithError(const Mat2&, cplx)>;

struct Decay {
  /// |f(x + iy)| <= bound(Y) e^{-rate (y - Y)} for y >= Y
  std::function<double(double)> bound;
  double rate = 0.0;
};

double abs_series_bound(const FourierForm& f, double y) {
  double s = 0.0;
  for (int n = 0; n <= f.truncation(); ++n) {
    if (f.coeffs[n] == cplx(0.0, 0.0)) continue;
    s += std::abs(f.coeffs[n]) * std::exp(-2.0 * kPi * (n + f.kappa) * y / f.width);
  }
  return s + tail_estimate(f, y);
}

Decay decay_of(const std::vector<const FourierForm*>& fs) {
  Decay d;
  d.rate = std::numeric_limits<double>::infinity();
  for (const FourierForm* f : fs) {
    if (f->leading_index() <= f->truncation()) d.rate = std::min(d.rate, f->decay_rate());
  }
  if (!std::isfinite(d.rate)) d.rate = 1.0;  // identically zero
  d.bound = [fs](double y) {
    double s = 0.0;
    for (const FourierForm* f : fs) s += abs_series_bound(*f, y);
    return s;
  };
  return d;
}

void require_sl2z_shape(const FundamentalDomain& dom) {
  const FundamentalDomain ref = sl2z_domain();
  bool same = dom.vertices.size() == ref.vertices.size();
  for (std::size_t i = 0; same && i < ref.vertices.size(); ++i) {
    const ExtPoint& a = dom.vertices[i].point;
    const ExtPoint& b = ref.vertices[i].point;
    same = a.infinite == b.infinite && (a.infinite || std::abs(a.value - b.value) < 1e-12);
  }
  if (!same) fail(ErrorKind::UnsupportedGroup, "area integrals are implemented for the SL2(Z) domain only");
}

// ∫ along a cusp edge from its finite vertex p up to height Y, plus the tail bound
struct CuspEdge {
  cplx integral;
  double error;
  double height;
};

CuspEdge integrate_cusp_edge(const EdgeIntegrand& fphi, const Mat2& alpha, cplx p, const Decay& dec,
                             const QuadratureSpec& q, double& worst_point_error, double& worst_mag) {
  const double x = p.real();
  // growth exponent and constant of φ along the line, fitted at Y and 2Y
  double Y = std::max(q.Y, p.imag() + 1.0);
  double tail = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 12; ++k) {
    const double a1 = std::abs(fphi(alpha, {x, Y}).value) / std::max(dec.bound(Y), 1e-300);
    const double a2 = std::abs(fphi(alpha, {x, 2 * Y}).value) / std::max(dec.bound(2 * Y), 1e-300);
    // a1, a2 estimate |φ| up to the f-magnitude normalization
    double A = 0.0;
    if (a1 > 0.0 && a2 > 0.0) A = std::max(0.0, std::log(a2 / a1) / std::log(2.0));
    A += 1.0;
    const double K = 2.0 * std::max(a1, a2) / std::pow(Y, A);
    // ∫_Y^∞ F(Y) e^{-rate (y-Y)} K y^A dy
    tail = dec.bound(Y) * K * std::pow(dec.rate, -A - 1.0) * upper_gamma_scaled(A + 1.0, dec.rate * Y);
    if (tail <= 0.1 * q.abs_tol) break;
    Y *= 1.5;
  }
  const RealIntegrand f = [&](double y) -> cplx {
    const ValueWithError v = fphi(alpha, {x, y});
    worst_point_error = std::max(worst_point_error, v.error);
    worst_mag = std::max(worst_mag, std::abs(v.value));
    return v.value * kI;
  };
  const QuadResult r = integrate(f, p.imag(), Y, 0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);
  return {r.value, r.error + tail, Y};
}

PairingResult pair_generic(const EdgeIntegrand& fphi, double r, const Decay& dec,
                           const FundamentalDomain& dom, const QuadratureSpec& q) {
  q.validate();
  PairingResult out;
  out.cusp_height = q.Y;
  const cplx C = c_constant(r);
  CompensatedSum<cplx> total;
  double err = 0.0;
  for (int e : dom.representatives) {
    const Edge& ed = dom.edges.at(e);
    double worst_point_error = 0.0, worst_mag = 0.0;
    cplx integral;
    double edge_err = 0.0, length = 0.0;
    const ExtPoint a = dom.vertices.at(ed.start).point;
    const ExtPoint b = dom.vertices.at(ed.end).point;
    if (a.infinite || b.infinite) {
      const cplx p = edge_path(dom, e, 0.0).value;
      const CuspEdge ce = integrate_cusp_edge(fphi, ed.pairing, p, dec, q, worst_point_error, worst_mag);
      // integrated upward; start -> end runs downward when the edge starts at ∞
      integral = edge_reversed(dom, e) ? -ce.integral : ce.integral;
      edge_err = ce.error;
      length = ce.height - p.imag();
      out.cusp_height = std::max(out.cusp_height, ce.height);
    } else {
      if ((!a.infinite && a.value.imag() == 0.0) || (!b.infinite && b.value.imag() == 0.0)) {
        fail(ErrorKind::UnsupportedGroup, "finite cusps on the boundary are not supported");
      }
      const RealIntegrand f = [&](double u) -> cplx {
        const cplx z = edge_path(dom, e, u).value;
        const cplx dz = edge_tangent(dom, e, u);
        const ValueWithError v = fphi(ed.pairing, z);
        worst_point_error = std::max(worst_point_error, v.error * std::abs(dz));
        worst_mag = std::max(worst_mag, std::abs(v.value * dz));
        return v.value * dz;
      };
      const QuadResult res = integrate(f, 0.0, 1.0, 0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);
      integral = res.value;
      edge_err = res.error;
      length = 1.0;
    }
    out.per_edge.emplace_back(e, integral);
    total += integral;
    err += edge_err + length * (worst_point_error + 64.0 * kEps * worst_mag);
  }
  out.value = -C * total.value();
  out.error_estimate = std::abs(C) * err;
  return out;
}

}  // namespace

cplx c_constant(double r) { return -0.5 * kI * principal_pow(cplx(0.0, -2.0), r); }

PairingResult pair_cocycle(const FourierForm& f, const CocycleEvaluator& phi, const FundamentalDomain& dom,
                           const QuadratureSpec& q) {
  if (std::abs(f.weight - (2.0 - phi.r)) > 1e-12) {
    fail(ErrorKind::IncompatibleWeights, "f must have weight 2 - r");
  }
  if (!f.multiplier.same_values(phi.v.conj().reweighted(f.weight))) {
    fail(ErrorKind::IncompatibleWeights, "f must carry the conjugate multiplier of the cocycle");
  }
  if (!f.cusp_form) fail(ErrorKind::InvalidArgument, "f must be a cusp form");
  const EdgeIntegrand fphi = [&f, &phi](const Mat2& alpha, cplx z) -> ValueWithError {
    const FormValue fv = eval_anywhere(f, z, 1e-300);
    const ValueWithError pv = phi.eval(alpha, z);
    return {fv.value * pv.value, std::abs(fv.value) * pv.error + fv.error * std::abs(pv.value)};
  };
  return pair_generic(fphi, phi.r, decay_of({&f}), dom, q);
}

PairingResult pair_vector(const VectorForm& f, const VectorCocycleEvaluator& phi, const FundamentalDomain& dom,
                          const QuadratureSpec& q) {
  if (f.dimension() != phi.dimension) fail(ErrorKind::DimensionMismatch, "form and cocycle dimensions differ");
  if (std::abs(f.weight() - (2.0 - phi.r)) > 1e-12) {
    fail(ErrorKind::IncompatibleWeights, "f must have weight 2 - r");
  }
  std::vector<const FourierForm*> comps;
  for (const FourierForm& c : f.components) comps.push_back(&c);
  const EdgeIntegrand fphi = [&f, &phi](const Mat2& alpha, cplx z) -> ValueWithError {
    const VectorValue pv = phi.eval(alpha, z);
    if (pv.value.size() != f.dimension()) fail(ErrorKind::DimensionMismatch, "cocycle value has wrong size");
    cplx s = 0.0;
    double fnorm = 0.0, ferr = 0.0;
    for (int i = 0; i < f.dimension(); ++i) {
      const FourierForm& fi = f.components[i];
      if (fi.leading_index() > fi.truncation()) continue;
      const FormValue fv = eval_anywhere(fi, z, 1e-300);
      s += fv.value * pv.value(i);
      fnorm += std::abs(fv.value);
      ferr += fv.error * std::abs(pv.value(i));
    }
    return {s, fnorm * pv.error + ferr};
  };
  return pair_generic(fphi, phi.r, decay_of(comps), dom, q);
}

ValueWithError petersson_direct(const FourierForm& f, const FourierForm& g, const FundamentalDomain& dom,
                                const QuadratureSpec& q) {
  q.validate();
  require_sl2z_shape(dom);
  if (std::abs(f.weight - g.weight) > 1e-12 || std::abs(f.kappa - g.kappa) > 1e-12 ||
      std::abs(f.width - g.width) > 1e-12) {
    fail(ErrorKind::IncompatibleWeights, "forms of different weight or multiplier");
  }
  if (!f.multiplier.same_values(g.multiplier)) fail(ErrorKind::IncompatibleWeights, "different multipliers");
  const double k = f.weight;
  const std::function<cplx(double, double)> integrand = [&](double x, double y) -> cplx {
    const cplx z(x, y);
    return eval_series(f, z).value * std::conj(eval_series(g, z).value) * std::pow(y, k - 2.0);
  };
  const QuadResult body = integrate_2d(
      integrand, -0.5, 0.5, [](double x) { return std::sqrt(1.0 - x * x); }, [&q](double) { return q.Y; },
      0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions);

  // the strip above Y has width 1 = λ, so only matching frequencies survive
  CompensatedSum<cplx> tail;
  const int N = std::min(f.truncation(), g.truncation());
  for (int n = 0; n <= N; ++n) {
    const cplx ab = f.coeffs[n] * std::conj(g.coeffs[n]);
    if (ab == cplx(0.0, 0.0)) continue;
    const double two_al = 4.0 * kPi * (n + f.kappa) / f.width;
    const double lm = (1.0 - k) * std::log(two_al) - two_al * q.Y;
    if (lm < -745.0) continue;
    tail += ab * f.width * std::exp(lm) * upper_gamma_scaled(k - 1.0, two_al * q.Y);
  }
  // truncation: cross terms of the tails with everything else
  const double dropped = (tail_estimate(f, q.Y) * abs_series_bound(g, q.Y) +
                          tail_estimate(g, q.Y) * abs_series_bound(f, q.Y)) *
                         std::pow(q.Y, std::max(0.0, k - 2.0)) / (2.0 * std::min(f.decay_rate(), g.decay_rate()));
  const double area_err = (tail_estimate(f, std::sqrt(0.75)) * abs_series_bound(g, std::sqrt(0.75)) +
                           tail_estimate(g, std::sqrt(0.75)) * abs_series_bound(f, std::sqrt(0.75))) *
                          std::max(1.0, std::pow(q.Y, k - 2.0)) * q.Y;
  return {body.value + tail.value(), body.error + dropped + area_err};
}

ValueWithError inner_product_R(const Sampler& F1, const Sampler& F2, const FundamentalDomain& dom,
                               const QuadratureSpec& q) {
  q.validate();
  require_sl2z_shape(dom);
  const std::function<cplx(double, double)> body_f = [&](double x, double y) -> cplx {
    const cplx z(x, y);
    return F1(z) * std::conj(F2(z)) / (y * y);
  };
  const QuadResult body = integrate_2d(
      body_f, -0.5, 0.5, [](double x) { return std::sqrt(1.0 - x * x); }, [&q](double) { return q.Y; },
      0.5 * q.abs_tol, q.rel_tol, q.max_subdivisions, kSamplerPanels);
  const std::function<cplx(double, double)> top_f = [&](double x, double s) -> cplx {
    const double w = 1.0 - s;
    const double y = q.Y + s / w;
    const cplx z(x, y);
    return F1(z) * std::conj(F2(z)) / (y * y * w * w);
  };
  const QuadResult top = integrate_2d(
      top_f, -0.5, 0.5, [](double) { return 0.0; }, [](double) { return 1.0; }, 0.5 * q.abs_tol, q.rel_tol,
      q.max_subdivisions, kSamplerPanels);
  return {body.value + top.value, body.error + top.error};
}

QuadratureSpec norm_relative_spec(const FourierForm& f, double rel, QuadratureSpec base) {
  QuadratureSpec rough = base;
  rough.abs_tol = 1e-300;
  rough.rel_tol = 1e-8;
  const double scale = std::abs(petersson_direct(f, f, sl2z_domain(), rough).value);
  base.abs_tol = rel * scale;
  base.rel_tol = rel;
  return base;
}

}  // namespace rwm
