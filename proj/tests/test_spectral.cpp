#include "doctest.h"
#include "rwm/errors.hpp"
#include "rwm/pairing.hpp"
#include "rwm/spectral.hpp"

#include <cmath>

using namespace rwm;

namespace {

Sampler ypow(double s) {
  return [s](cplx z) { return cplx(std::pow(z.imag(), s)); };
}

Sampler y_half_weight(const FourierForm& f) {
  return [f](cplx z) { return std::pow(z.imag(), f.weight / 2) * eval_anywhere(f, z, 1e-300).value; };
}

const cplx kPoints[] = {{0.1, 1.1}, {-0.4, 0.9}, {0.25, 2.0}, {0.0, 1.5}};

}  // namespace

TEST_CASE("Maass operators and Laplacian on powers of y") {
  for (double r : {-10.0, 0.0, 0.5, 1.5}) {
    for (cplx z : kPoints) {
      const double y = z.imag();
      CHECK(std::abs(maass_raise(ypow(r / 2), r, z) - r * std::pow(y, r / 2)) < 1e-9 * std::max(1.0, std::pow(y, r / 2)));
      CHECK(std::abs(maass_raise([](cplx) { return cplx(1.0); }, r, z) - r / 2) < 1e-12);
      CHECK(std::abs(maass_lower(ypow(r / 2), r, z)) < 1e-9 * std::max(1.0, std::pow(y, r / 2)));
    }
  }
  for (double s : {2.0, 0.5, 1.7}) {
    for (cplx z : kPoints) {
      const cplx v = laplacian(ypow(s), 0.7, z);
      CHECK(std::abs(v - s * (s - 1) * std::pow(z.imag(), s)) < 1e-7 * std::pow(z.imag(), s));
    }
  }
  CHECK_THROWS_AS(maass_raise(ypow(1.0), 0.0, cplx(0, 1e-5)), Error);
}

TEST_CASE("Richardson consistency of the stencils") {
  const Sampler F = [](cplx z) { return std::exp(kI * z) * std::pow(z.imag(), 0.7); };
  const cplx z(0.3, 1.2);
  const double y = z.imag();
  // ∂z F = e^{iz} (i y^0.7 + 0.7 y^{-0.3} / (2i))
  const cplx exact = std::exp(kI * z) * (kI * std::pow(y, 0.7) + 0.7 * std::pow(y, -0.3) / (2.0 * kI));
  FDStencil a{1e-2, 2, false}, b{5e-3, 2, false};
  const double ratio = std::abs(d_dz(F, z, a) - exact) / std::abs(d_dz(F, z, b) - exact);
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
  FDStencil c{1e-2, 4, false}, d{5e-3, 4, false};
  const double ratio4 = std::abs(d_dz(F, z, c) - exact) / std::abs(d_dz(F, z, d) - exact);
  CHECK(ratio4 > 12.0);
  CHECK(ratio4 < 20.0);
  CHECK(std::abs(d_dz(F, z) - exact) < 1e-11);
}

TEST_CASE("holomorphic forms times y^{k/2}: lowering kills, Laplacian eigenvalue") {
  const FourierForm delta = build_delta(64);
  const double r = -10.0, k = 2.0 - r;
  const Sampler F = y_half_weight(delta);
  for (cplx z : kPoints) {
    CHECK(std::abs(maass_lower(F, k, z)) < 1e-6);
    const cplx lap = -laplacian(F, k, z);
    CHECK(std::abs(lap / F(z) - (r / 2) * (1 - r / 2)) < 1e-4 * 30.0);
  }
}

TEST_CASE("factorization -Δ_r = Λ_{r+2} K_r - (r/2)(1 + r/2)") {
  const Sampler F = [](cplx z) { return std::pow(z.imag(), 1.0 / 3.0) * std::cos(z.real()); };
  for (double r : {0.0, 0.5, -3.0, 1.5}) {
    const Sampler KF = raised(F, r);
    for (cplx z : kPoints) {
      const cplx lhs = -laplacian(F, r, z);
      const cplx rhs = maass_lower(KF, r + 2, z) - (r / 2) * (1 + r / 2) * F(z);
      const double scale = std::max({std::abs(lhs), std::abs(F(z)), 1.0});
      CHECK(std::abs(lhs - rhs) < 1e-4 * scale);
    }
  }
}

TEST_CASE("raising and lowering are adjoint on bumps") {
  // smooth bumps supported in a disc of radius 0.4 around 2i and 0.1 + 2.1i
  auto bump = [](cplx c, double rad) {
    return [c, rad](cplx z) -> cplx {
      const double t = std::norm(z - c) / (rad * rad);
      if (t >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - t));
    };
  };
  const Sampler b1 = bump({0, 2}, 0.4), b2 = bump({0.1, 2.1}, 0.4);
  const Sampler f = [b1](cplx z) { return b1(z) * std::exp(kI * z.real()); };
  const Sampler g = [b2](cplx z) { return b2(z) * cplx(1.0, z.imag()); };
  QuadratureSpec q;
  q.abs_tol = 1e-9;
  q.rel_tol = 1e-7;
  q.max_subdivisions = 20000;
  for (double r : {0.0, 0.5}) {
    const cplx lhs = inner_product_R(raised(f, r), g, sl2z_domain(), q).value;
    const cplx rhs = inner_product_R(f, lowered(g, r + 2), sl2z_domain(), q).value;
    const double scale = std::abs(inner_product_R(f, g, sl2z_domain(), q).value) + std::abs(lhs);
    CHECK(std::abs(lhs - rhs) < 1e-4 * scale);
  }
}

TEST_CASE("Eisenstein partial sums") {
  const MultiplierSystem triv = MultiplierSystem::trivial(0.0);
  const cplx z(0, 1);
  // (1,0) pair alone: cutoff forces |c|,|d| <= 1; compare the (0, ±1) terms by hand
  const EisensteinPartial e1(0.0, triv, 2.0, 1);
  const cplx w(0.2, 1.3);
  cplx manual = 0.0;
  for (auto [c, d] : {std::pair{0, 1}, {1, 0}, {1, 1}, {1, -1}}) manual += std::pow(w.imag() / std::norm(cplx(c) * w + double(d)), 2.0);
  CHECK(std::abs(e1(w) - manual) < 1e-14);

  // z = i, s = 2: (1/2) Σ' (m^2 + n^2)^{-2} / ζ(4) = 2 ζ(2) β(2) / ζ(4) = 30 G / π^2
  const double catalan = 0.91596559417721901505;
  const double exact = 30.0 * catalan / (kPi * kPi);
  double prev = 0.0;
  for (int C : {8, 16, 32, 64}) {
    const double v = eisenstein_partial(0.0, triv, z, 2.0, C).real();
    if (C == 64) {
      CHECK(std::abs(v - prev) < 1e-3);
      CHECK(std::abs(v - exact) < 1e-3);
    }
    prev = v;
  }
  // the box |c|,|d| <= C is S-stable, so S-invariance is exact; T-invariance improves with C
  const cplx z2(0, 2);
  double last = 1e300;
  for (int C : {8, 16, 32, 64}) {
    const EisensteinPartial E(0.0, triv, 2.0, C);
    const Sampler Es = [E](cplx u) { return E(u); };
    CHECK(std::abs(E(z2) - slash(Es, gen::S(), 0.0, triv, SlashVariant::Roelcke)(z2)) < 1e-13);
    const double res = std::abs(E(z2) - slash(Es, gen::T(), 0.0, triv, SlashVariant::Roelcke)(z2));
    CHECK(res < 0.5 * last);
    last = res;
  }
  CHECK_THROWS_AS(EisensteinPartial(0.0, triv, 1.0, 8), Error);
  try {
    EisensteinPartial(0.5, MultiplierSystem::eta_power(1.0, 0.5), 2.0, 8);
    FAIL("expected NonSingularCusp");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonSingularCusp);
  }
}

TEST_CASE("Eisenstein partial sums are eigenfunctions up to stencil error") {
  // every term is y^s slashed by M, so the residual sits at the stencil floor for all cutoffs
  const MultiplierSystem triv = MultiplierSystem::trivial(0.0);
  const MultiplierSystem triv2 = MultiplierSystem::trivial(2.0);
  const cplx z(0, 2), s = 2.0;
  for (int C : {8, 16, 32}) {
    const EisensteinPartial E(0.0, triv, s, C);
    const Sampler Es = [E](cplx u) { return E(u); };
    const cplx v = E(z);
    CHECK(std::abs(-laplacian(Es, 0.0, z) - s * (1.0 - s) * v) < 1e-7 * std::abs(v));
    const EisensteinPartial E2(2.0, triv2, s, C);
    CHECK(std::abs(maass_raise(Es, 0.0, z) - s * E2(z)) < 1e-8 * std::abs(v));
    CHECK(std::abs(maass_lower(Es, 0.0, z) + s * EisensteinPartial(-2.0, MultiplierSystem::trivial(-2.0), s, C)(z)) <
          1e-8 * std::abs(v));
  }
}

TEST_CASE("weight-shifted auxiliary integral") {
  const FourierForm delta = build_delta(64);
  const double r = -10.0;
  const Sampler poly = [](cplx z) { return z * z * z - 2.0 * z; };
  CHECK(std::abs(weight_shift_G(poly, r, {0.2, 1.3})) < 1e-9);
  QuadratureSpec q;
  q.abs_tol = 1e-16;
  q.rel_tol = 1e-12;
  const Sampler G = [&](cplx z) { return aux_integral(delta, r, z, q).value; };
  for (cplx z : {cplx(0.1, 1.1), cplx(-0.3, 0.8)}) {
    const cplx closed = weight_shift_G(delta, r, z);
    CHECK(std::abs(weight_shift_G(G, r, z) - closed) < 1e-6 * std::abs(closed));
    // closed form equals (2i)^{-r} y^{(2-r)/2} Δ(z)
    const cplx direct = principal_pow(cplx(0, 2), -r) * std::pow(z.imag(), (2 - r) / 2) * eval_anywhere(delta, z).value;
    CHECK(std::abs(closed - direct) < 1e-12 * std::abs(direct));
  }
  const Sampler Gs = [&](cplx z) { return weight_shift_G(delta, r, z); };
  const cplx z(0, 2);
  const cplx moved = slash(Gs, gen::S(), 2 - r, delta.multiplier, SlashVariant::Roelcke)(z);
  CHECK(std::abs(moved - Gs(z)) < 1e-6 * std::abs(Gs(z)));
}

TEST_CASE("pairing against the weight-shifted witness") {
  // (i / (2C)) (f, φ_g) = -(y^{k/2} f, G)^R with G the weight-shifted auxiliary integral
  for (const char* name : {"delta", "eta"}) {
    const FourierForm f = form_from_name(name, std::string(name) == "delta" ? 64 : 256);
    const double r = 2.0 - f.weight;
    QuadratureSpec q;
    q.abs_tol = 1e-9 * std::abs(petersson_direct(f, f).value);
    q.rel_tol = 1e-10;
    const PairingResult p = pair_cocycle(f, evaluator(make_cocycle(f, q)), sl2z_domain(), q);
    const Sampler G = [f, r](cplx z) { return weight_shift_G(f, r, z); };
    const cplx R = inner_product_R(y_half_weight(f), G, sl2z_domain(), q).value;
    const cplx lhs = kI / (2.0 * c_constant(r)) * p.value;
    CHECK(std::abs(lhs + R) < 1e-6 * std::abs(R));
  }
  // coboundary witness: G vanishes and so does the pairing
  const FourierForm delta = build_delta(64);
  const Sampler h = [](cplx z) { return z * z; };
  const Sampler G = [h](cplx z) { return weight_shift_G(h, -10.0, z); };
  QuadratureSpec q;
  q.abs_tol = 1e-17;
  QuadratureSpec qR;
  qR.abs_tol = 1e-10;  // G is stencil noise here
  const cplx R = inner_product_R(y_half_weight(delta), G, sl2z_domain(), qR).value;
  const PairingResult p = pair_cocycle(delta, coboundary_evaluator(h, -10.0, delta.multiplier.conj().reweighted(-10.0)),
                                       sl2z_domain(), q);
  CHECK(std::abs(R) < 1e-9);
  CHECK(std::abs(p.value) <= 10.0 * p.error_estimate);
}
