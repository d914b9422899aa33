#include "doctest.h"
#include "rwm/automorphy.hpp"

#include <random>

using namespace rwm;

namespace {

// eta by the product formula, independent of log_eta
cplx eta_product(cplx z) {
  const cplx q = std::exp(2.0 * kPi * kI * z);
  cplx p = std::exp(2.0 * kPi * kI * z / 24.0);
  cplx qn = q;
  for (int n = 1; n < 2000 && std::abs(qn) > 1e-20; ++n) {
    p *= 1.0 - qn;
    qn *= q;
  }
  return p;
}

cplx random_point(std::mt19937_64& rng, double ylo = 0.1, double yhi = 5.0) {
  std::uniform_real_distribution<double> x(-5.0, 5.0), y(ylo, yhi);
  return {x(rng), y(rng)};
}

}  // namespace

TEST_CASE("mobius and j on generators") {
  CHECK(std::abs(mobius(gen::T(), cplx(0, 2)) - cplx(1, 2)) < 1e-15);
  CHECK(std::abs(mobius(gen::S(), kI) - kI) < 1e-15);
  const ExtPoint s_inf = mobius(gen::S(), ExtPoint::infinity());
  CHECK_FALSE(s_inf.infinite);
  CHECK(std::abs(s_inf.value) == 0.0);
  CHECK(mobius(gen::S(), ExtPoint::finite(0.0)).infinite);
  CHECK(j_factor(gen::S(), cplx(0, 2)) == cplx(0, -2));
  CHECK(j_factor(gen::minus_identity(), cplx(0.3, 0.7)) == cplx(-1, 0));
  CHECK(std::abs(j_pow(gen::S(), cplx(0, 2), 0.5) - cplx(1, -1)) < 1e-15);
  CHECK(std::abs(j_pow(gen::minus_identity(), cplx(0.3, 0.7), 2.0) - 1.0) < 1e-15);
  CHECK(std::abs(j_pow(gen::T(), cplx(0.3, 0.7), 0.37) - 1.0) < 1e-15);
  CHECK_THROWS_AS(j_pow(gen::S(), cplx(0, 0), 0.5), Error);
}

TEST_CASE("omega values") {
  CHECK(omega(gen::T(), gen::T()) == 0);
  CHECK(omega(gen::S(), gen::S()) == -1);
  CHECK(omega(gen::T(), gen::S()) == 0);
  // direct evaluation of the three args at 2i
  const double direct = (-kPi - kPi / 2 - kPi / 2) / (2 * kPi);
  CHECK(direct == doctest::Approx(-1.0));
  CHECK(std::abs(sigma_r(gen::S(), gen::S(), 0.5) - cplx(-1, 0)) < 1e-15);
  CHECK(std::abs(sigma_r(gen::S(), gen::S(), 2.0) - 1.0) < 1e-14);
  CHECK(std::abs(sigma_r(gen::T(), gen::T(), 0.123) - 1.0) == 0.0);
}

TEST_CASE("omega is in {-1,0,1} and independent of the reference point") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const Mat2 g = random_sl2z(rng, 20), h = random_sl2z(rng, 20);
    const int w = omega(g, h);
    CHECK((w >= -1 && w <= 1));
    for (int k = 0; k < 10; ++k) CHECK(omega(g, h, random_point(rng)) == w);
  }
}

TEST_CASE("sigma_r measures the failure of j to be multiplicative") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rd(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat2 g = random_sl2z(rng, 20), h = random_sl2z(rng, 20);
    const cplx z = random_point(rng);
    const double r = rd(rng);
    const Mat2 gh = g * h;
    const cplx lhs = sigma_r(g, h, r) * j_pow(gh, z, r);
    const cplx rhs = j_pow(g, mobius(h, z), r) * j_pow(h, z, r);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("decompose_ST round trip") {
  CHECK(decompose_st(gen::T()) == Word{Letter::T});
  CHECK(word_product(decompose_st(gen::minus_identity())) == gen::minus_identity());
  CHECK(word_product(decompose_st(mat2(2, 1, 1, 1))) == mat2(2, 1, 1, 1));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 g = random_sl2z(rng, 50);
    CHECK(word_product(decompose_st(g)) == g);
  }
  CHECK_THROWS_AS(decompose_st(mat2(2, 0, 0, 1)), Error);
}

TEST_CASE("complete_bottom_row and random_sl2z stay in SL2(Z)") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Mat2 g = random_sl2z(rng, 20);
    CHECK(det(g) == 1);
    CHECK(g.cwiseAbs().maxCoeff() <= 20);
  }
  const Mat2 m = complete_bottom_row(-7, 12);
  CHECK(det(m) == 1);
  CHECK(m(1, 0) == -7);
  CHECK_THROWS_AS(complete_bottom_row(4, 6), Error);
}

TEST_CASE("eta multipliers against the product formula") {
  // t = 1: v(S) = eta(-1/z)/((-z)^{1/2} eta(z))
  const MultiplierSystem v1 = MultiplierSystem::eta_power(1.0, 0.5);
  const cplx z = kI;
  const cplx oracle_s = eta_product(-1.0 / z) / (std::sqrt(-z) * eta_product(z));
  CHECK(std::abs(v1(gen::S()) - oracle_s) < 1e-12);
  CHECK(std::abs(v1(gen::S()) - std::polar(1.0, kPi / 4)) < 1e-12);
  CHECK(std::abs(v1(gen::T()) - std::polar(1.0, 2 * kPi / 24)) < 1e-12);
  // t = 2: v(T) = (eta(z+1)/eta(z))^2
  const MultiplierSystem v2 = MultiplierSystem::eta_power(2.0, 1.0);
  const cplx ratio = eta_product(z + 1.0) / eta_product(z);
  CHECK(std::abs(v2(gen::T()) - ratio * ratio) < 1e-12);
  CHECK(std::abs(v2(gen::T()) - std::polar(1.0, 2 * kPi / 12)) < 1e-12);
  CHECK(v1.kappa() == doctest::Approx(1.0 / 24));
  CHECK(MultiplierSystem::eta_power(24.0, 12.0).kappa() == 0.0);
  CHECK_THROWS_AS(MultiplierSystem::eta_power(1.0, 1.0), Error);
  CHECK_THROWS_AS(MultiplierSystem::trivial(1.0), Error);
}

TEST_CASE("eta multiplier on arbitrary elements matches the product formula") {
  std::mt19937_64 rng(17);
  for (int t : {1, 3, 26}) {
    const MultiplierSystem v = MultiplierSystem::eta_power(t, t / 2.0);
    for (int i = 0; i < 40; ++i) {
      const Mat2 g = random_sl2z(rng, 12);
      const double c = static_cast<double>(g(1, 0)), d = static_cast<double>(g(1, 1));
      // Im z = Im gz = 1/|c| keeps both product formulas well conditioned
      const cplx z = c == 0.0 ? cplx(0.1, 1.0) : cplx(-d / c + 0.1 / c, 1.0 / std::abs(c));
      const cplx w = mobius(g, z);
      const cplx direct = std::pow(eta_product(w) / eta_product(z), t);
      CHECK(std::abs(direct - j_pow(g, z, t / 2.0) * v(g)) < 1e-9 * std::abs(direct));
    }
  }
}

TEST_CASE("multiplier chain consistency on random pairs") {
  std::mt19937_64 rng(19);
  for (double t : {1.0, 2.0, 3.0, 26.0}) {
    const MultiplierSystem v = MultiplierSystem::eta_power(t, t / 2);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Mat2 g = random_sl2z(rng, 20), h = random_sl2z(rng, 20);
      worst = std::max(worst, std::abs(v(g * h) - sigma_r(g, h, t / 2) * v(g) * v(h)));
      CHECK(std::abs(std::abs(v(g)) - 1.0) < 1e-10);
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("generator table validation") {
  CHECK_NOTHROW(MultiplierSystem::generator_table(0.0, 1.0, 1.0));
  CHECK_THROWS_AS(MultiplierSystem::generator_table(0.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(MultiplierSystem::generator_table(0.0, kI, 1.0), Error);
  const MultiplierSystem eta = MultiplierSystem::eta_power(3.0, 1.5);
  const MultiplierSystem copy =
      MultiplierSystem::generator_table(1.5, eta.generator_s(), eta.generator_t());
  CHECK(copy.same_values(eta));
  const MultiplierSystem c = eta.conj();
  CHECK(c.weight() == -1.5);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const Mat2 g = random_sl2z(rng, 15);
    CHECK(std::abs(c(g) - std::conj(eta(g))) < 1e-12);
  }
}

TEST_CASE("slash composition and y^{r/2} intertwining the two slashes") {
  std::mt19937_64 rng(29);
  const double r = 1.5;
  const MultiplierSystem v = MultiplierSystem::eta_power(3.0, r);
  const Sampler f = [](cplx z) { return std::exp(kI * z) / (z + cplx(0, 3)); };
  double worst_comp = 0.0, worst_lemma3 = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Mat2 g = random_sl2z(rng, 6), h = random_sl2z(rng, 6);
    const cplx z = random_point(rng, 0.5, 3.0);
    const cplx a = slash(slash(f, g, r, v), h, r, v)(z);
    const cplx b = slash(f, g * h, r, v)(z);
    worst_comp = std::max(worst_comp, rel_diff(a, b));
    const Sampler yf = [f, r](cplx w) { return std::pow(w.imag(), r / 2) * f(w); };
    const cplx lhs = std::pow(z.imag(), r / 2) * slash(f, g, r, v)(z);
    const cplx rhs = slash(yf, g, r, v, SlashVariant::Roelcke)(z);
    worst_lemma3 = std::max(worst_lemma3, rel_diff(lhs, rhs));
  }
  CHECK(worst_comp < 1e-10);
  CHECK(worst_lemma3 < 1e-12);
  // -I is where a literal principal power of j(g, zbar) would break the bridge
  const Sampler yf = [f, r](cplx w) { return std::pow(w.imag(), r / 2) * f(w); };
  const cplx z(0.2, 0.9);
  CHECK(rel_diff(std::pow(z.imag(), r / 2) * slash(f, gen::minus_identity(), r, v)(z),
                 slash(yf, gen::minus_identity(), r, v, SlashVariant::Roelcke)(z)) < 1e-14);
}

TEST_CASE("slash by identity and vector slash") {
  const MultiplierSystem v = MultiplierSystem::trivial(4.0);
  const Sampler f = [](cplx z) { return z * z; };
  const cplx z(0.3, 1.2);
  CHECK(slash(f, gen::identity(), 4.0, v)(z) == f(z));
  Eigen::MatrixXcd rs(2, 2), rt(2, 2);
  rs << 0, 1, -1, 0;  // S -> S mod 2 representation pieces are checked elsewhere
  rt << 1, 0, 0, 1;
  CHECK_THROWS_AS(v.with_representation(rs, rt), Error);
  // 2-dim irrep of S3 through SL2(Z/2)
  const double c = std::cos(2 * kPi / 3), s = std::sin(2 * kPi / 3);
  Eigen::MatrixXcd refl(2, 2), rot(2, 2);
  refl << 1, 0, 0, -1;
  rot << c, -s, s, c;
  Eigen::MatrixXcd rho_s = refl, rho_t = rot * refl;  // two reflections, product a rotation
  const MultiplierSystem vr = v.with_representation(rho_s, rho_t);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 50; ++i) {
    const Mat2 g = random_sl2z(rng, 10), h = random_sl2z(rng, 10);
    CHECK((vr.rho(g * h) - vr.rho(g) * vr.rho(h)).norm() < 1e-12);
  }
  const VectorSampler F = [](cplx w) {
    Eigen::VectorXcd out(2);
    out << w, w * w;
    return out;
  };
  const Mat2 g = mat2(2, 1, 1, 1), h = gen::S();
  const Eigen::VectorXcd a = slash(slash(F, g, 4.0, vr), h, 4.0, vr)(z);
  const Eigen::VectorXcd b = slash(F, g * h, 4.0, vr)(z);
  CHECK((a - b).norm() < 1e-10 * b.norm());
  const VectorSampler F3 = [](cplx w) { return Eigen::VectorXcd::Constant(3, w); };
  CHECK_THROWS_AS(slash(F3, g, 4.0, vr)(z), Error);
}

TEST_CASE("SL2Z context") {
  const GroupContext ctx = sl2z_context();
  CHECK(ctx.cusps.size() == 1);
  CHECK_NOTHROW(validate_context(ctx));
  GroupContext bad = ctx;
  bad.cusps[0].width = 2.0;
  CHECK_THROWS_AS(validate_context(bad), Error);
}
