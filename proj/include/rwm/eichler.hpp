#pragma once

#include <Eigen/Core>

#include <functional>
#include <vector>

#include "rwm/automorphy.hpp"
#include "rwm/forms.hpp"
#include "rwm/quadrature.hpp"

namespace rwm {

struct ValueWithError {
  cplx value{};
  double error = 0.0;
};

/// G(z) = conj(-∫_z^{i∞} g(τ)(τ - zbar)^{-r} dτ) along the vertical ray.
/// Quadrature up to height Y (log-spaced in t), termwise incomplete-gamma
/// closed form above it. g must be a cusp form of weight 2 - r.
ValueWithError aux_integral(const FourierForm& g, double r, cplx z, const QuadratureSpec& q);

/// ∂G/∂zbar = conj(g(z)) (zbar - z)^{-r}.
cplx aux_integral_dzbar(const FourierForm& g, double r, cplx z);

/// The Eichler cocycle of a cusp form g of weight 2 - r and multiplier vbar:
/// weight r, multiplier v = conj(multiplier of g).
struct CocycleHandle {
  FourierForm g;
  double r = 0.0;
  MultiplierSystem v;
  QuadratureSpec quad;

  /// Weight-one sources are built but excluded from duality claims.
  bool weight_one() const { return std::abs(g.weight - 1.0) < 1e-12; }
};

CocycleHandle make_cocycle(const FourierForm& g, const QuadratureSpec& q = {});

/// phi(γ)(z) = conj(v(γ)) j(γ, z)^{-r} G(γz) - G(z).
ValueWithError cocycle_eval(const CocycleHandle& c, const Mat2& gamma, cplx z);

/// conj(∫_{γ^{-1}∞}^{∞} g(τ)(τ - zbar)^{-r} dτ) on the vertical line through the cusp,
/// the part below height 1/|c| moved up by γ. Independent of aux_integral.
ValueWithError cocycle_eval_direct(const CocycleHandle& c, const Mat2& gamma, cplx z);

/// z ↦ conj(v(γ)) j(γ, z)^{-r} h(γz) - h(z).
Sampler coboundary_apply(Sampler h, const Mat2& gamma, double r, const MultiplierSystem& v);

/// A cocycle as seen by the pairing: weight, multiplier and an evaluator.
struct CocycleEvaluator {
  double r = 0.0;
  MultiplierSystem v;
  std::function<ValueWithError(const Mat2&, cplx)> eval;
};

CocycleEvaluator evaluator(const CocycleHandle& c);
/// Coboundary of h; exact arithmetic, zero error estimate.
CocycleEvaluator coboundary_evaluator(Sampler h, double r, const MultiplierSystem& v);
/// a φ1 + φ2 (same weight and multiplier).
CocycleEvaluator combine(cplx a, const CocycleEvaluator& phi1, const CocycleEvaluator& phi2);

// --- one-sided averages -----------------------------------------------------

struct FourierTerm {
  /// g contains coefficient * exp(2 pi i frequency z).
  double frequency = 0.0;
  cplx coefficient{};
};

struct VectorFourierTerm {
  double frequency = 0.0;
  Eigen::VectorXcd coefficient;
};

enum class AverageMode { Geometric, Fourier };

/// Solves conj(eps) f(z + s) - f(z) = g(z) by f = -sum_{n>=0} conj(eps)^n g(z + n s).
/// Evaluation throws Divergent when |g(z + n s)| does not decay geometrically.
Sampler solve_geometric(Sampler g, cplx eps, double s);
/// Per-frequency solution f_nu = c_nu / (conj(eps) e^{2 pi i nu s} - 1).
Sampler solve_fourier(const std::vector<FourierTerm>& g, cplx eps, double s);

/// U^* f(z + s) - f(z) = g(z) for unitary U, diagonalized by a Schur decomposition.
VectorSampler solve_geometric(VectorSampler g, const Eigen::MatrixXcd& U, double s);
VectorSampler solve_fourier(const std::vector<VectorFourierTerm>& g, const Eigen::MatrixXcd& U, double s);

/// Dispatch on mode; `g` is used in geometric mode, `terms` in Fourier mode.
Sampler one_sided_average_solve(const Sampler& g, const std::vector<FourierTerm>& terms, cplx eps,
                                double s, AverageMode mode);

// --- integer weights --------------------------------------------------------

struct PolynomialCocycle {
  int degree = 0;
  /// Coefficients in the monomial basis 1, z, ..., z^degree.
  Eigen::VectorXcd coeffs;
  double max_residual = 0.0;
  double scale = 0.0;

  cplx operator()(cplx z) const;
};

/// Fits phi(γ) at 1 - r nodes on Im z = 1 and checks 3 held-out nodes;
/// NotPolynomial if they miss by more than 1e-6 * scale.
PolynomialCocycle polynomial_extract(const CocycleHandle& c, const Mat2& gamma);

struct GrowthBound {
  double K = 0.0;
  double A = 0.0;
  double B = 0.0;
};

/// (K, A, B) with |phi(z)| <= K (|z|^A + y^{-B}) on a log-spaced grid.
GrowthBound fit_growth(const std::function<cplx(cplx)>& phi);

// --- vector-valued ------------------------------------------------------------

struct VectorCocycleHandle {
  VectorForm g;
  double r = 0.0;
  MultiplierSystem v;
  QuadratureSpec quad;
};

VectorCocycleHandle make_vector_cocycle(const VectorForm& g, const QuadratureSpec& q = {});

struct VectorValue {
  Eigen::VectorXcd value;
  double error = 0.0;
};

/// Componentwise G, then conj(v(γ)) j^{-r} rho(γ)^{-1} G(γz) - G(z).
VectorValue cocycle_eval(const VectorCocycleHandle& c, const Mat2& gamma, cplx z);

struct VectorCocycleEvaluator {
  double r = 0.0;
  MultiplierSystem v;
  int dimension = 1;
  std::function<VectorValue(const Mat2&, cplx)> eval;
};

VectorCocycleEvaluator evaluator(const VectorCocycleHandle& c);

}  // namespace rwm
