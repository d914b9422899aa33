#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwm/automorphy.hpp"

namespace rwm {

/// |a_n| <= M n^c e^{beta sqrt(n)} for every n past the truncation.
struct TailBound {
  double M = 0.0;
  double c = 0.0;
  double beta = 0.0;
};

/// f(z) = sum_n a_n exp(2 pi i (n + kappa) z / width), n = 0..N.
struct FourierForm {
  std::string name;
  double weight = 0.0;
  MultiplierSystem multiplier;
  double width = 1.0;
  double kappa = 0.0;
  std::vector<cplx> coeffs;
  TailBound tail;
  bool cusp_form = false;
  /// Declared slash-invariant under SL2(Z) with `multiplier`; enables reduction.
  bool modular = false;

  int truncation() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Exponential decay rate 2 pi (n0 + kappa) / width of the leading term.
  double decay_rate() const;
  /// Index of the first nonzero coefficient.
  int leading_index() const;
  /// Throws on contract violations: cusp flag, kappa range, negative modular weight.
  void validate() const;
};

struct FormValue {
  cplx value;
  double error;
};

/// Delta = q prod (1 - q^m)^{24}, coefficients a_0..a_N by power-series products.
FourierForm build_delta(int N = 64);
/// eta^t = q^{t/24} prod (1 - q^m)^t, weight t/2, coefficients via series log/exp.
FourierForm build_eta_power(double t, int N = 64);

/// Upper bound on sum_{n > N} |a_n| |e(...)| at height y.
double tail_estimate(const FourierForm& f, double y);

/// Truncated sum and its rigorous tail bound; never throws on accuracy.
FormValue eval_series(const FourierForm& f, cplx z);
/// Truncated sum; TailTooLarge if the tail bound exceeds abs_tol.
FormValue eval_form(const FourierForm& f, cplx z, double abs_tol = 1e-12);
/// Value anywhere in H: modular forms are first moved into the Ford domain
/// (f(z) = conj(v(g)) j(g, z)^{-k} f(gz)); TailTooLarge if that is not enough.
FormValue eval_anywhere(const FourierForm& f, cplx z, double abs_tol = 1e-12);
/// d f / dz by termwise differentiation of the same expansion.
FormValue eval_derivative(const FourierForm& f, cplx z);

/// Sampler over eval_anywhere with a fixed tolerance.
Sampler sampler(const FourierForm& f, double abs_tol = 1e-12);

/// Scalar multiple (same weight and multiplier).
FourierForm scaled(const FourierForm& f, cplx a);

/// Vector-valued form: one scalar expansion per component, multiplier carrying rho.
struct VectorForm {
  std::vector<FourierForm> components;
  MultiplierSystem multiplier;

  int dimension() const { return static_cast<int>(components.size()); }
  double weight() const { return components.empty() ? 0.0 : components.front().weight; }
};

VectorForm make_vector_form(std::vector<FourierForm> components, const MultiplierSystem& rho_mult);
VectorSampler sampler(const VectorForm& f, double abs_tol = 1e-12);

/// {"form":"delta","N":64}, {"form":"eta_power","t":1,"N":128}; shortcut names
/// "delta", "eta", "eta3", "eta26", "eta_power:t".
FourierForm form_from_json(const nlohmann::json& j);
FourierForm form_from_name(const std::string& name, int N = 64);

/// CSV lines "n,re,im" for every stored coefficient.
void write_coefficients_csv(const FourierForm& f, std::ostream& os);

}  // namespace rwm
