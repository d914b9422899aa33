#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rwm/domain.hpp"
#include "rwm/eichler.hpp"
#include "rwm/forms.hpp"
#include "rwm/quadrature.hpp"

namespace rwm {

struct PairingResult {
  cplx value{};
  double error_estimate = 0.0;
  /// Raw edge integrals ∫ f φ(α) dz; value = -C Σ per_edge.
  std::vector<std::pair<int, cplx>> per_edge;
  /// Height where each cusp edge was cut (raised past q.Y when the tail demanded it).
  double cusp_height = 0.0;
};

/// C = -(i/2) (-2i)^r, principal branch.
cplx c_constant(double r);

/// (f, φ) = -C Σ_m ∫_{A_m}^{A_{m+1}} f(z) φ(α_m)(z) dz over the representative edges.
PairingResult pair_cocycle(const FourierForm& f, const CocycleEvaluator& phi,
                           const FundamentalDomain& dom = sl2z_domain(), const QuadratureSpec& q = {});

/// ∫_F f conj(g) y^{k-2} dx dy: 2-D quadrature up to q.Y, termwise closed form above.
ValueWithError petersson_direct(const FourierForm& f, const FourierForm& g,
                                const FundamentalDomain& dom = sl2z_domain(), const QuadratureSpec& q = {});

/// ∫_F F1 conj(F2) y^{-2} dx dy; the part above q.Y through y = Y + s/(1-s).
ValueWithError inner_product_R(const Sampler& F1, const Sampler& F2,
                               const FundamentalDomain& dom = sl2z_domain(), const QuadratureSpec& q = {});

/// abs_tol = rel * |(f, f)| from a rough first pass, rel_tol = rel; for forms whose
/// norm is far from 1 (|(Δ, Δ)| ≈ 1e-6).
QuadratureSpec norm_relative_spec(const FourierForm& f, double rel = 1e-10, QuadratureSpec base = {});

/// Vector pairing with ⟨f, conj φ⟩ = Σ f_i φ_i inside the edge integrals.
PairingResult pair_vector(const VectorForm& f, const VectorCocycleEvaluator& phi,
                          const FundamentalDomain& dom = sl2z_domain(), const QuadratureSpec& q = {});

}  // namespace rwm
