#pragma once

#include <vector>

#include "rwm/automorphy.hpp"
#include "rwm/eichler.hpp"
#include "rwm/forms.hpp"

namespace rwm {

/// Central differences in x and y. h = 0 picks 1e-4 max(1, y) for first
/// derivatives and 2e-3 max(1, y) for the 5-point second-order stencil.
struct FDStencil {
  double h = 0.0;
  int order = 2;
  /// One Richardson step (h, h/2).
  bool richardson = true;

  double step(cplx z) const;
  double second_step(cplx z) const;
};

cplx d_dz(const Sampler& F, cplx z, const FDStencil& st = {});
cplx d_dzbar(const Sampler& F, cplx z, const FDStencil& st = {});
/// F_xx + F_yy, i.e. 4 ∂z ∂zbar F.
cplx flat_laplacian(const Sampler& F, cplx z, const FDStencil& st = {});

/// K_r F = (z - zbar) ∂z F + (r/2) F.
cplx maass_raise(const Sampler& F, double r, cplx z, const FDStencil& st = {});
/// Λ_r F = (z - zbar) ∂zbar F + (r/2) F.
cplx maass_lower(const Sampler& F, double r, cplx z, const FDStencil& st = {});
/// Δ_r F = -(z - zbar)^2 ∂z ∂zbar F - (r/2)(z - zbar)(∂z + ∂zbar) F.
cplx laplacian(const Sampler& F, double r, cplx z, const FDStencil& st = {});

Sampler raised(Sampler F, double r, FDStencil st = {});
Sampler lowered(Sampler F, double r, FDStencil st = {});

/// Partial sum of the weight-r Eisenstein series at the cusp ∞ of SL2(Z):
/// (1/2) Σ_{gcd(c,d)=1, |c|,|d|<=C} σ_r(A, M)^{-1} conj(v(M)) (j(M,zbar)/j(M,z))^{r/2} Im(Mz)^s.
class EisensteinPartial {
 public:
  EisensteinPartial(double r, const MultiplierSystem& v, cplx s, int cutoff,
                    const RealMat2& scaling = RealMat2::Identity());

  cplx operator()(cplx z) const;
  std::size_t terms() const { return matrices_.size(); }
  double weight() const { return r_; }
  cplx s() const { return s_; }

 private:
  double r_;
  cplx s_;
  std::vector<Mat2> matrices_;
  std::vector<cplx> phases_;
};

cplx eisenstein_partial(double r, const MultiplierSystem& v, cplx z, cplx s, int cutoff);

/// y^{(r+2)/2} conj(∂zbar g(z)) by finite differences.
cplx weight_shift_G(const Sampler& g, double r, cplx z, const FDStencil& st = {});
/// Same for g = the auxiliary integral of the cusp form `form` (weight 2 - r),
/// using ∂zbar G = conj(form(z)) (zbar - z)^{-r}.
cplx weight_shift_G(const FourierForm& form, double r, cplx z);

}  // namespace rwm
