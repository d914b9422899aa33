#include "rwm/spectral.hpp"

#include <cmath>
#include <numeric>

namespace rwm {

namespace {

void check_reach(cplx z, double reach) {
  if (!(z.imag() - reach > 0.0)) fail(ErrorKind::StencilOutOfDomain, "stencil leaves the upper half-plane");
}

// derivative of F along direction `dir` (1 or i)
cplx directional(const Sampler& F, cplx z, cplx dir, double h, int order) {
  if (order == 2) return (F(z + h * dir) - F(z - h * dir)) / (2.0 * h);
  if (order == 4) {
    return (-F(z + 2.0 * h * dir) + 8.0 * F(z + h * dir) - 8.0 * F(z - h * dir) + F(z - 2.0 * h * dir)) /
           (12.0 * h);
  }
  fail(ErrorKind::InvalidArgument, "stencil order must be 2 or 4");
}

cplx richardson(const std::function<cplx(double)>& D, double h, int order, bool on) {
  if (!on) return D(h);
  const double p = std::pow(2.0, order);
  return (p * D(h / 2) - D(h)) / (p - 1.0);
}

void partials(const Sampler& F, cplx z, const FDStencil& st, cplx& fx, cplx& fy) {
  const double h = st.step(z);
  check_reach(z, (st.order == 4 ? 2.0 : 1.0) * h);
  fx = richardson([&](double t) { return directional(F, z, 1.0, t, st.order); }, h, st.order, st.richardson);
  fy = richardson([&](double t) { return directional(F, z, kI, t, st.order); }, h, st.order, st.richardson);
}

}  // namespace

double FDStencil::step(cplx z) const {
  if (!(h >= 0.0)) fail(ErrorKind::InvalidArgument, "stencil step must be positive");
  return h > 0.0 ? h : 1e-4 * std::max(1.0, z.imag());
}

double FDStencil::second_step(cplx z) const {
  if (!(h >= 0.0)) fail(ErrorKind::InvalidArgument, "stencil step must be positive");
  return h > 0.0 ? h : 2e-3 * std::max(1.0, z.imag());
}

cplx d_dz(const Sampler& F, cplx z, const FDStencil& st) {
  cplx fx, fy;
  partials(F, z, st, fx, fy);
  return 0.5 * (fx - kI * fy);
}

cplx d_dzbar(const Sampler& F, cplx z, const FDStencil& st) {
  cplx fx, fy;
  partials(F, z, st, fx, fy);
  return 0.5 * (fx + kI * fy);
}

cplx flat_laplacian(const Sampler& F, cplx z, const FDStencil& st) {
  const double h = st.second_step(z);
  check_reach(z, h);
  const cplx f0 = F(z);
  const auto five = [&](double t) {
    return (F(z + t) + F(z - t) + F(z + kI * t) + F(z - kI * t) - 4.0 * f0) / (t * t);
  };
  return richardson(five, h, 2, st.richardson);
}

cplx maass_raise(const Sampler& F, double r, cplx z, const FDStencil& st) {
  return (z - std::conj(z)) * d_dz(F, z, st) + 0.5 * r * F(z);
}

cplx maass_lower(const Sampler& F, double r, cplx z, const FDStencil& st) {
  return (z - std::conj(z)) * d_dzbar(F, z, st) + 0.5 * r * F(z);
}

cplx laplacian(const Sampler& F, double r, cplx z, const FDStencil& st) {
  // (z - zbar)^2 = -4 y^2 and (∂z + ∂zbar) = ∂x
  const double y = z.imag();
  cplx fx, fy;
  partials(F, z, st, fx, fy);
  return y * y * flat_laplacian(F, z, st) - kI * r * y * fx;
}

Sampler raised(Sampler F, double r, FDStencil st) {
  return [F = std::move(F), r, st](cplx z) { return maass_raise(F, r, z, st); };
}

Sampler lowered(Sampler F, double r, FDStencil st) {
  return [F = std::move(F), r, st](cplx z) { return maass_lower(F, r, z, st); };
}

EisensteinPartial::EisensteinPartial(double r, const MultiplierSystem& v, cplx s, int cutoff,
                                     const RealMat2& scaling)
    : r_(r), s_(s) {
  if (!(s.real() > 1.0)) fail(ErrorKind::OutsideConvergence, "Eisenstein series needs Re s > 1");
  if (cutoff < 1) fail(ErrorKind::InvalidArgument, "cutoff must be >= 1");
  if (std::abs(v.weight() - r) > 1e-12) fail(ErrorKind::IncompatibleWeights, "multiplier weight differs from r");
  if (v.dimension() != 1) fail(ErrorKind::DimensionMismatch, "scalar multiplier expected");
  if (std::abs(v(gen::T()) - 1.0) > 1e-12) fail(ErrorKind::NonSingularCusp, "v(T) != 1 at the cusp ∞");
  for (std::int64_t c = -cutoff; c <= cutoff; ++c) {
    for (std::int64_t d = -cutoff; d <= cutoff; ++d) {
      if (std::gcd(c, d) != 1) continue;
      const Mat2 M = complete_bottom_row(c, d);
      const cplx twist = sigma_r(scaling, RealMat2(M.cast<double>()), r);
      matrices_.push_back(M);
      phases_.push_back(std::conj(v(M)) / twist);
    }
  }
}

cplx EisensteinPartial::operator()(cplx z) const {
  CompensatedSum<cplx> sum;
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const Mat2& M = matrices_[i];
    const cplx j = j_factor(M, z);
    const double im = z.imag() / std::norm(j);
    sum += phases_[i] * roelcke_factor(M, z, r_) * std::exp(s_ * std::log(im));
  }
  return 0.5 * sum.value();
}

cplx eisenstein_partial(double r, const MultiplierSystem& v, cplx z, cplx s, int cutoff) {
  return EisensteinPartial(r, v, s, cutoff)(z);
}

cplx weight_shift_G(const Sampler& g, double r, cplx z, const FDStencil& st) {
  return std::pow(z.imag(), 0.5 * (r + 2.0)) * std::conj(d_dzbar(g, z, st));
}

cplx weight_shift_G(const FourierForm& form, double r, cplx z) {
  return std::pow(z.imag(), 0.5 * (r + 2.0)) * std::conj(aux_integral_dzbar(form, r, z));
}

}  // namespace rwm
