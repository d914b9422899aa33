#include "rwm/checks.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "rwm/domain.hpp"
#include "rwm/eichler.hpp"
#include "rwm/errors.hpp"
#include "rwm/forms.hpp"
#include "rwm/pairing.hpp"
#include "rwm/spectral.hpp"

namespace rwm {

using nlohmann::json;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

cplx random_point(std::mt19937_64& rng, double ylo, double yhi) {
  std::uniform_real_distribution<double> x(-5.0, 5.0), y(ylo, yhi);
  return {x(rng), y(rng)};
}

FourierForm named(const std::string& name) { return form_from_name(name, name == "delta" ? 64 : 256); }

QuadratureSpec spec_for(const FourierForm& f) { return norm_relative_spec(f); }

// ---------------------------------------------------------------------------

CheckResult c1_duality() {
  CheckResult out{"criterion-1", "pairing with the Eichler cocycle equals the direct Petersson norm", true, json::object()};
  for (const std::string name : {"delta", "eta", "eta3", "eta26"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const FourierForm f = named(name);
    const QuadratureSpec q = spec_for(f);
    const PairingResult p = pair_cocycle(f, evaluator(make_cocycle(f, q)), sl2z_domain(), q);
    QuadratureSpec qp = q;
    qp.rel_tol = 1e-11;
    const ValueWithError pet = petersson_direct(f, f, sl2z_domain(), qp);
    QuadratureSpec half = qp;
    half.abs_tol /= 2;
    half.rel_tol /= 2;
    const ValueWithError pet2 = petersson_direct(f, f, sl2z_domain(), half);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double rd = rel_diff(p.value, pet.value);
    const double drift = rel_diff(pet.value, pet2.value);
    const bool ok = rd <= 1e-6 && drift < 1e-8 && pet.value.real() > 0.0 && secs < 60.0;
    out.passed = out.passed && ok;
    out.detail[name] = {{"pair", cj(p.value)}, {"pair_error", p.error_estimate}, {"petersson", cj(pet.value)},
                        {"rel_diff", rd}, {"tol", 1e-6}, {"halving_drift", drift}, {"drift_tol", 1e-8},
                        {"seconds", secs}, {"pass", ok}};
  }
  return out;
}

CheckResult c2_cocycle_condition() {
  CheckResult out{"criterion-2", "cocycle condition on 50 random triples", true, json::object()};
  std::mt19937_64 rng(2024);
  for (const std::string name : {"delta", "eta"}) {
    const CocycleHandle c = make_cocycle(named(name), spec_for(named(name)));
    double worst = 0.0;
    std::uniform_real_distribution<double> xs(-0.5, 0.5), ys(0.5, 5.0);
    for (int i = 0; i < 50; ++i) {
      const Mat2 g = random_sl2z(rng, 20), h = random_sl2z(rng, 20);
      const cplx z(xs(rng), ys(rng));
      const cplx lhs = cocycle_eval(c, g * h, z).value;
      const cplx moved = std::conj(c.v(h)) * j_pow(h, z, -c.r) * cocycle_eval(c, g, mobius(h, z)).value;
      const cplx last = cocycle_eval(c, h, z).value;
      const double scale = std::max({std::abs(lhs), std::abs(moved), std::abs(last), 1e-300});
      worst = std::max(worst, std::abs(lhs - moved - last) / scale);
    }
    const bool ok = worst <= 1e-7;
    out.passed = out.passed && ok;
    out.detail[name] = {{"max_scaled_residual", worst}, {"tol", 1e-7}, {"pass", ok}};
  }
  return out;
}

CheckResult c3_coboundary() {
  CheckResult out{"criterion-3", "coboundaries pair to zero", true, json::object()};
  const std::vector<std::pair<std::string, Sampler>> hs{{"1", [](cplx) { return cplx(1.0); }},
                                                        {"z", [](cplx z) { return z; }},
                                                        {"z^2", [](cplx z) { return z * z; }},
                                                        {"1/(z+2i)", [](cplx z) { return 1.0 / (z + cplx(0, 2)); }}};
  for (const std::string name : {"delta", "eta"}) {
    const FourierForm f = named(name);
    const QuadratureSpec q = spec_for(f);
    const double r = 2.0 - f.weight;
    const MultiplierSystem v = f.multiplier.conj().reweighted(r);
    for (const auto& [hn, h] : hs) {
      const PairingResult p = pair_cocycle(f, coboundary_evaluator(h, r, v), sl2z_domain(), q);
      const bool ok = std::abs(p.value) <= 10.0 * p.error_estimate;
      out.passed = out.passed && ok;
      out.detail[name + " h=" + hn] = {{"pair", cj(p.value)}, {"abs_pair", std::abs(p.value)},
                                        {"error_estimate", p.error_estimate}, {"pass", ok}};
    }
  }
  return out;
}

CheckResult c4_period_polynomial() {
  CheckResult out{"criterion-4", "Delta cocycle: zero on T, degree-10 polynomial on S", true, json::object()};
  const FourierForm delta = named("delta");
  QuadratureSpec q;
  q.abs_tol = 1e-16;
  q.rel_tol = 1e-12;
  const CocycleHandle c = make_cocycle(delta, q);
  double worst_t = 0.0;
  for (cplx z : {cplx(0.1, 1.0), cplx(-0.3, 0.7), cplx(0.45, 2.0)}) {
    const double G = std::abs(aux_integral(delta, c.r, z, q).value);
    worst_t = std::max(worst_t, std::abs(cocycle_eval(c, gen::T(), z).value) / G);
  }
  const PolynomialCocycle p = polynomial_extract(c, gen::S());
  double cmax = p.coeffs.cwiseAbs().maxCoeff();
  double relation = 0.0;
  for (int m = 0; m <= 10; ++m) {
    relation = std::max(relation, std::abs(p.coeffs(m) + std::pow(-1.0, m) * p.coeffs(10 - m)) / cmax);
  }
  const double held = p.max_residual / p.scale;
  const bool ok_t = worst_t <= 1e-12, ok_p = p.degree == 10 && held <= 1e-7, ok_r = relation <= 1e-7;
  out.passed = ok_t && ok_p && ok_r;
  json coeffs = json::array();
  for (int m = 0; m <= 10; ++m) coeffs.push_back(cj(p.coeffs(m)));
  out.detail = {{"phi_T_over_G", worst_t}, {"phi_T_tol", 1e-12}, {"held_out_rel_residual", held},
                {"held_out_tol", 1e-7}, {"period_relation", relation}, {"period_relation_tol", 1e-7},
                {"coefficients", coeffs}};
  return out;
}

CheckResult c5_automorphy() {
  CheckResult out{"criterion-5", "automorphy algebra over 1000 samples", true, json::object()};
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rd(-3.0, 3.0);
  double w_sigma = 0.0, w_comp = 0.0, w_bridge = 0.0, w_mult = 0.0;
  bool omega_range = true;
  const double r = 1.5;
  const MultiplierSystem v = MultiplierSystem::eta_power(3.0, r);
  const Sampler f = [](cplx z) { return std::exp(kI * z) / (z + cplx(0, 3)); };
  const Sampler yf = [f, r](cplx w) { return std::pow(w.imag(), r / 2) * f(w); };
  for (int i = 0; i < 1000; ++i) {
    const Mat2 g = random_sl2z(rng, 20), h = random_sl2z(rng, 20);
    const cplx z = random_point(rng, 0.1, 5.0);
    const double s = rd(rng);
    const int w = omega(g, h);
    omega_range = omega_range && w >= -1 && w <= 1;
    const cplx lhs = sigma_r(g, h, s) * j_pow(g * h, z, s);
    const cplx rhs = j_pow(g, mobius(h, z), s) * j_pow(h, z, s);
    w_sigma = std::max(w_sigma, rel_diff(lhs, rhs));
    const Mat2 gs = random_sl2z(rng, 6), hs = random_sl2z(rng, 6);
    const cplx zs = random_point(rng, 0.5, 3.0);
    w_comp = std::max(w_comp, rel_diff(slash(slash(f, gs, r, v), hs, r, v)(zs), slash(f, gs * hs, r, v)(zs)));
    w_bridge = std::max(w_bridge, rel_diff(std::pow(zs.imag(), r / 2) * slash(f, gs, r, v)(zs),
                                           slash(yf, gs, r, v, SlashVariant::Roelcke)(zs)));
    w_mult = std::max(w_mult, std::abs(v(g * h) - sigma_r(g, h, r) * v(g) * v(h)));
  }
  const int wss = omega(gen::S(), gen::S());
  out.passed = w_sigma <= 1e-10 && w_comp <= 1e-10 && w_bridge <= 1e-10 && w_mult <= 1e-10 && omega_range && wss == -1;
  out.detail = {{"sigma_identity", w_sigma}, {"slash_composition", w_comp}, {"roelcke_bridge", w_bridge},
                {"multiplier_consistency", w_mult}, {"tol", 1e-10}, {"omega_in_range", omega_range},
                {"omega_S_S", wss}};
  return out;
}

CheckResult c6_dzbar() {
  CheckResult out{"criterion-6", "finite-difference zbar-derivative of G against the closed form", true, json::object()};
  QuadratureSpec q;
  q.abs_tol = 1e-300;
  q.rel_tol = 1e-13;
  for (const std::string name : {"delta", "eta"}) {
    const FourierForm g = named(name);
    const double r = 2.0 - g.weight;
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const cplx z(-0.45 + 0.1 * k, 0.6 + 0.15 * k);
      const Sampler G = [&](cplx w) { return aux_integral(g, r, w, q).value; };
      const cplx fd = d_dzbar(G, z);
      const cplx exact = aux_integral_dzbar(g, r, z);
      worst = std::max(worst, std::abs(fd - exact) / std::abs(exact));
    }
    const bool ok = worst <= 1e-6;
    out.passed = out.passed && ok;
    out.detail[name] = {{"max_rel_diff", worst}, {"tol", 1e-6}, {"pass", ok}};
  }
  return out;
}

CheckResult c7_operators() {
  CheckResult out{"criterion-7", "Maass operator identities", true, json::object()};
  const cplx pts[] = {{0.1, 1.1}, {-0.4, 0.9}, {0.25, 2.0}, {0.0, 1.5}};
  const Sampler F = [](cplx z) { return std::pow(z.imag(), 1.0 / 3.0) * std::cos(z.real()); };
  double fact = 0.0;
  for (double r : {0.0, 0.5, 1.5, -3.0}) {
    const Sampler KF = raised(F, r);
    for (cplx z : pts) {
      const cplx lhs = -laplacian(F, r, z);
      const cplx rhs = maass_lower(KF, r + 2, z) - (r / 2) * (1 + r / 2) * F(z);
      fact = std::max(fact, std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(F(z)), 1.0}));
    }
  }
  const FourierForm delta = named("delta");
  const double r = -10.0, k = 2.0 - r;
  const Sampler D = [&](cplx z) { return std::pow(z.imag(), k / 2) * eval_anywhere(delta, z, 1e-300).value; };
  const double expected = (r / 2) * (1 - r / 2);
  double eig = 0.0, low = 0.0;
  for (cplx z : pts) {
    eig = std::max(eig, std::abs(-laplacian(D, k, z) / D(z) - expected) / std::abs(expected));
    low = std::max(low, std::abs(maass_lower(D, k, z)));
  }
  out.passed = fact <= 1e-4 && eig <= 1e-4 && low <= 1e-6;
  out.detail = {{"factorization_scaled_residual", fact}, {"factorization_tol", 1e-4},
                {"eigenvalue_expected", expected}, {"eigenvalue_rel_diff", eig}, {"eigenvalue_tol", 1e-4},
                {"lowering_abs", low}, {"lowering_tol", 1e-6}};
  return out;
}

CheckResult c8_eisenstein() {
  CheckResult out{"criterion-8", "Eisenstein partial sums: residual decay under cutoff doubling", true, json::object()};
  const MultiplierSystem t0 = MultiplierSystem::trivial(0.0), t2 = MultiplierSystem::trivial(2.0);
  const cplx z(0, 2), s = 2.0;
  json eig = json::array(), raise = json::array();
  std::vector<double> e, k;
  for (int C : {8, 16, 32, 64}) {
    const EisensteinPartial E(0.0, t0, s, C), E2(2.0, t2, s, C);
    const Sampler Es = [E](cplx u) { return E(u); };
    e.push_back(std::abs(-laplacian(Es, 0.0, z) - s * (1.0 - s) * E(z)));
    k.push_back(std::abs(maass_raise(Es, 0.0, z) - s * E2(z)));
    eig.push_back({{"cutoff", C}, {"residual", e.back()}});
    raise.push_back({{"cutoff", C}, {"residual", k.back()}});
  }
  bool ok = true;
  for (std::size_t i = 1; i < e.size(); ++i) ok = ok && e[i] * 2.0 <= e[i - 1] && k[i] * 2.0 <= k[i - 1];
  out.passed = ok;
  out.detail = {{"eigen_residuals", eig}, {"raising_residuals", raise}, {"required_ratio", 2.0}};
  return out;
}

CheckResult c9_solver() {
  CheckResult out{"criterion-9", "one-sided average solver residuals on a 20-point grid", true, json::object()};
  std::vector<cplx> grid;
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    for (double y : {0.5, 1.0, 1.5, 2.0}) grid.emplace_back(x, y);
  }
  const std::vector<FourierTerm> g{{1.0, 1.0}};
  const auto e2 = [](cplx z) { return std::exp(2.0 * kPi * kI * z); };
  const std::pair<std::string, cplx> cases[] = {{"eps=-1", -1.0}, {"eps=e^{2pi i/3}", std::polar(1.0, 2.0 * kPi / 3.0)}};
  for (const auto& [name, eps] : cases) {
    const Sampler f = one_sided_average_solve(nullptr, g, eps, 1.0, AverageMode::Fourier);
    double worst = 0.0;
    for (cplx z : grid) worst = std::max(worst, std::abs(std::conj(eps) * f(z + 1.0) - f(z) - e2(z)));
    const bool ok = worst <= 1e-10;
    out.passed = out.passed && ok;
    out.detail[name] = {{"max_residual", worst}, {"tol", 1e-10}, {"pass", ok}};
  }
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2, 2);
  U(0, 0) = -1.0;
  U(1, 1) = std::polar(1.0, 2.0 * kPi / 3.0);
  const VectorSampler F = solve_fourier({{1.0, Eigen::VectorXcd::Ones(2)}}, U, 1.0);
  double worst = 0.0;
  for (cplx z : grid) {
    const Eigen::VectorXcd gz = Eigen::VectorXcd::Constant(2, e2(z));
    worst = std::max(worst, (U.adjoint() * F(z + 1.0) - F(z) - gz).norm());
  }
  const bool ok = worst <= 1e-10;
  out.passed = out.passed && ok;
  out.detail["U=diag(-1,e^{2pi i/3})"] = {{"max_residual", worst}, {"tol", 1e-10}, {"pass", ok}};
  return out;
}

CheckResult c10_vector() {
  CheckResult out{"criterion-10", "vector pairing with diagonal representation", true, json::object()};
  const FourierForm delta = named("delta");
  const FourierForm zero = scaled(delta, 0.0);
  const QuadratureSpec q = spec_for(delta);
  const MultiplierSystem rho =
      delta.multiplier.with_representation(Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2));
  const FourierForm d2 = scaled(delta, cplx(0, 2));
  const PairingResult s1 = pair_cocycle(delta, evaluator(make_cocycle(delta, q)), sl2z_domain(), q);
  const PairingResult s2 = pair_cocycle(d2, evaluator(make_cocycle(d2, q)), sl2z_domain(), q);
  const VectorForm vf = make_vector_form({delta, d2}, rho);
  const PairingResult pv = pair_vector(vf, evaluator(make_vector_cocycle(vf, q)), sl2z_domain(), q);
  const double rd = rel_diff(pv.value, s1.value + s2.value);
  const VectorForm a = make_vector_form({delta, zero}, rho), b = make_vector_form({zero, delta}, rho);
  const PairingResult orth = pair_vector(a, evaluator(make_vector_cocycle(b, q)), sl2z_domain(), q);
  const bool ok1 = rd <= 1e-8, ok2 = std::abs(orth.value) <= 10.0 * orth.error_estimate;
  out.passed = ok1 && ok2;
  out.detail = {{"vector", cj(pv.value)}, {"sum_of_scalars", cj(s1.value + s2.value)}, {"rel_diff", rd},
                {"tol", 1e-8}, {"orthogonal", cj(orth.value)}, {"orthogonal_error_estimate", orth.error_estimate}};
  return out;
}

// --- module invariants beyond the criteria -----------------------------------

CheckResult eta_multiplier() {
  CheckResult out{"eta-multiplier", "eta multiplier against the product formula", true, json::object()};
  auto eta = [](cplx z) {
    const cplx q = std::exp(2.0 * kPi * kI * z);
    cplx p = std::exp(2.0 * kPi * kI * z / 24.0), qn = q;
    for (int n = 1; n < 4000 && std::abs(qn) > 1e-20; ++n) {
      p *= 1.0 - qn;
      qn *= q;
    }
    return p;
  };
  std::mt19937_64 rng(3);
  const MultiplierSystem v = MultiplierSystem::eta_power(1.0, 0.5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Mat2 g = random_sl2z(rng, 8);
    if (g(1, 0) == 0) continue;
    const double c = static_cast<double>(g(1, 0)), d = static_cast<double>(g(1, 1));
    const cplx z(-d / c + 0.1 / c, 1.0 / std::abs(c));
    // η(gz) = v(g) j(g,z)^{1/2} η(z)
    const cplx pred = v(g) * j_pow(g, z, 0.5) * eta(z);
    worst = std::max(worst, rel_diff(eta(mobius(g, z)), pred));
  }
  out.passed = worst <= 1e-9;
  out.detail = {{"max_rel_diff", worst}, {"tol", 1e-9}};
  return out;
}

CheckResult delta_coefficients() {
  CheckResult out{"delta-coefficients", "Ramanujan tau values and modularity of Delta", true, json::object()};
  const FourierForm delta = build_delta(64);
  const double tau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
  bool ok = true;
  for (int n = 1; n <= 10; ++n) ok = ok && delta.coeffs[n] == cplx(tau[n - 1]);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.9, 1.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const cplx z(x(rng), y(rng));
    const cplx lhs = eval_series(delta, -1.0 / z).value;
    const cplx rhs = std::pow(z, 12) * eval_series(delta, z).value;
    worst = std::max(worst, rel_diff(lhs, rhs));
  }
  out.passed = ok && worst <= 1e-10;
  out.detail = {{"tau_match", ok}, {"S_modularity_rel", worst}, {"tol", 1e-10}};
  return out;
}

CheckResult domain_invariants() {
  CheckResult out{"domain", "side pairing and reduction into the Ford domain", true, json::object()};
  bool paired = true;
  try {
    validate_side_pairing(sl2z_domain());
  } catch (const Error&) {
    paired = false;
  }
  std::mt19937_64 rng(13);
  double worst = 0.0;
  bool inside = true;
  for (int i = 0; i < 500; ++i) {
    const cplx z = random_point(rng, 1e-3, 10.0);
    const Reduction red = reduce_to_domain(z);
    inside = inside && membership(red.w, 1e-9);
    worst = std::max(worst, std::abs(mobius(red.gamma, z) - red.w));
  }
  out.passed = paired && inside && worst < 1e-10;
  out.detail = {{"side_pairing_valid", paired}, {"all_reduced_inside", inside}, {"max_image_error", worst}};
  return out;
}

CheckResult cocycle_direct() {
  CheckResult out{"cocycle-direct", "cocycle via G against the direct path integral", true, json::object()};
  QuadratureSpec q;
  q.abs_tol = 1e-14;
  q.rel_tol = 1e-12;
  double worst = 0.0;
  for (const std::string name : {"delta", "eta", "eta3"}) {
    const CocycleHandle c = make_cocycle(named(name), q);
    for (const Mat2& g : {gen::S(), Mat2(gen::S() * gen::T()), mat2(2, 1, 1, 1), mat2(3, -2, 5, -3)}) {
      for (cplx z : {cplx(0, 1), cplx(0.3, 0.8), cplx(-0.2, 1.6)}) {
        const cplx a = cocycle_eval(c, g, z).value, b = cocycle_eval_direct(c, g, z).value;
        worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
      }
    }
  }
  out.passed = worst < 1e-6;
  out.detail = {{"max_rel_diff", worst}, {"tol", 1e-6}};
  return out;
}

CheckResult petersson_reference() {
  CheckResult out{"petersson-delta", "direct Petersson norm of Delta against the reference value", true, json::object()};
  QuadratureSpec q;
  q.abs_tol = 1e-18;
  q.rel_tol = 1e-11;
  const cplx v = petersson_direct(build_delta(64), build_delta(64), sl2z_domain(), q).value;
  const double ref = 1.0353620568043209e-6;
  out.passed = std::abs(v - ref) / ref < 1e-8;
  out.detail = {{"value", cj(v)}, {"reference", ref}, {"tol", 1e-8}};
  return out;
}

CheckResult eisenstein_value() {
  CheckResult out{"eisenstein-value", "weight-0 Eisenstein series at i against 30G/pi^2", true, json::object()};
  const double exact = 30.0 * 0.91596559417721901505 / (kPi * kPi);
  const cplx v = eisenstein_partial(0.0, MultiplierSystem::trivial(0.0), cplx(0, 1), 2.0, 64);
  const cplx w = eisenstein_partial(0.0, MultiplierSystem::trivial(0.0), cplx(0, 1), 2.0, 32);
  out.passed = std::abs(v - exact) < 1e-3 && std::abs(v - w) < 1e-3;
  out.detail = {{"C64", cj(v)}, {"C32", cj(w)}, {"exact", exact}, {"tol", 1e-3}};
  return out;
}

using Runner = std::function<CheckResult()>;

const std::map<std::string, std::vector<Runner>>& suites() {
  static const std::map<std::string, std::vector<Runner>> s{
      {"automorphy", {c5_automorphy, eta_multiplier}},
      {"forms", {delta_coefficients}},
      {"domain", {domain_invariants}},
      {"eichler", {c2_cocycle_condition, c4_period_polynomial, c6_dzbar, c9_solver, cocycle_direct}},
      {"pairing", {c1_duality, c3_coboundary, c10_vector, petersson_reference}},
      {"spectral", {c7_operators, c8_eisenstein, eisenstein_value}},
  };
  return s;
}

CheckResult timed(const Runner& run) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = run();
  } catch (const Error& e) {
    r.id = "error";
    r.passed = false;
    r.detail = {{"exception", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

CheckResult run_criterion(int n) {
  static const Runner table[kCriteria] = {c1_duality,    c2_cocycle_condition, c3_coboundary, c4_period_polynomial,
                                          c5_automorphy, c6_dzbar,             c7_operators,  c8_eisenstein,
                                          c9_solver,     c10_vector};
  if (n < 1 || n > kCriteria) fail(ErrorKind::InvalidArgument, "criterion index out of range");
  CheckResult r = timed(table[n - 1]);
  if (r.id == "error") r.id = "criterion-" + std::to_string(n);
  return r;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : suites()) names.push_back(k);
  names.push_back("all");
  return names;
}

std::vector<CheckResult> run_suite(const std::string& name) {
  std::vector<CheckResult> out;
  // declaration order inside a suite, alphabetical across suites
  for (const auto& [k, runners] : suites()) {
    if (name != "all" && name != k) continue;
    for (const Runner& r : runners) out.push_back(timed(r));
  }
  if (out.empty() && name != "all") fail(ErrorKind::InvalidArgument, "unknown suite: " + name);
  return out;
}

json to_json(const CheckResult& r) {
  return {{"id", r.id}, {"description", r.description}, {"pass", r.passed}, {"seconds", r.seconds},
          {"detail", r.detail}};
}

}  // namespace rwm
