#include "doctest.h"
#include "rwm/domain.hpp"
#include "rwm/forms.hpp"
#include "rwm/series.hpp"

#include <random>
#include <sstream>

using namespace rwm;

namespace {

// prod (1 - q^m)^24 by schoolbook integer multiplication
std::vector<long long> delta_oracle(int n) {
  std::vector<long long> p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int k = n; k >= m; --k) p[k] -= p[k - m];
    }
  }
  std::vector<long long> tau(n + 1, 0);
  for (int k = 1; k <= n; ++k) tau[k] = p[k - 1];
  return tau;
}

// Euler's pentagonal number theorem
std::vector<double> pentagonal(int n) {
  std::vector<double> p(n, 0.0);
  for (int k = -100; k <= 100; ++k) {
    const int e = k * (3 * k - 1) / 2;
    if (e >= 0 && e < n) p[e] += (k % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

cplx random_z(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> x(-0.5, 0.5), y(0.8, 1.5);
  return {x(rng), y(rng)};
}

}  // namespace

TEST_CASE("series log and exp against closed forms") {
  // exp(a q) = sum a^n q^n / n!
  const cplx a(0.3, -1.2);
  Series s(12, 0.0);
  s[1] = a;
  const Series e = series_exp(s);
  cplx term = 1.0;
  for (int n = 0; n < 12; ++n) {
    CHECK(std::abs(e[n] - term) < 1e-14);
    term *= a / static_cast<double>(n + 1);
  }
  // log(1/(1-q)) = sum q^n / n
  const Series geo(20, 1.0);
  const Series l = series_log(geo);
  for (int n = 1; n < 20; ++n) CHECK(std::abs(l[n] - 1.0 / n) < 1e-14);
  // exp(log a) = a
  Series b(15);
  for (int n = 0; n < 15; ++n) b[n] = n == 0 ? cplx(1.0) : cplx(std::sin(n), 1.0 / (n + 1));
  const Series round = series_exp(series_log(b));
  for (int n = 0; n < 15; ++n) CHECK(std::abs(round[n] - b[n]) < 1e-12);
  CHECK_THROWS_AS(series_log(Series{2.0, 1.0}), Error);
  CHECK_THROWS_AS(series_exp(Series{1.0, 1.0}), Error);
  const std::vector<double> pent = pentagonal(40);
  const Series euler = euler_product(40);
  for (int n = 0; n < 40; ++n) CHECK(euler[n].real() == pent[n]);
}

TEST_CASE("Delta coefficients") {
  const FourierForm d = build_delta(64);
  const auto tau = delta_oracle(64);
  CHECK(d.coeffs[0] == cplx(0.0));
  CHECK(d.coeffs[1] == cplx(1.0));
  CHECK(d.coeffs[2] == cplx(-24.0));
  for (int n = 1; n <= 64; ++n) CHECK(d.coeffs[n].real() == static_cast<double>(tau[n]));
  CHECK(d.weight == 12.0);
  CHECK(d.kappa == 0.0);
  CHECK(d.cusp_form);
  // the stated tail bound dominates the known coefficients
  for (int n = 1; n <= 64; ++n) CHECK(std::abs(d.coeffs[n]) <= 2.0 * std::pow(n, 6.0));
}

TEST_CASE("eta powers") {
  const FourierForm e24 = build_eta_power(24.0, 64);
  const FourierForm d = build_delta(64);
  CHECK(e24.kappa == 0.0);
  for (int n = 0; n <= 64; ++n) {
    CHECK(std::abs(e24.coeffs[n] - d.coeffs[n]) <= 1e-12 * std::max(1.0, std::abs(d.coeffs[n])));
  }
  const FourierForm e1 = build_eta_power(1.0, 64);
  CHECK(e1.coeffs[0] == cplx(1.0));
  CHECK(e1.kappa == doctest::Approx(1.0 / 24));
  CHECK(e1.weight == 0.5);
  // eta^2 from the squared pentagonal series
  const std::vector<double> pent = pentagonal(65);
  const FourierForm e2 = build_eta_power(2.0, 64);
  for (int n = 0; n <= 64; ++n) {
    double sq = 0.0;
    for (int k = 0; k <= n; ++k) sq += pent[k] * pent[n - k];
    CHECK(std::abs(e2.coeffs[n] - sq) < 1e-10);
  }
  CHECK(e2.coeffs[1].real() == doctest::Approx(-2.0));
  const FourierForm e26 = build_eta_power(26.0, 64);
  CHECK(e26.kappa == doctest::Approx(1.0 / 12));
  CHECK(e26.coeffs[0] == cplx(0.0));
  CHECK(e26.coeffs[1] == cplx(1.0));
  // eta^26 = eta^24 * eta^2: coefficient of q^{13/12 + 1} is -24 - 2
  CHECK(e26.coeffs[2].real() == doctest::Approx(-26.0));
  CHECK_THROWS_AS(build_eta_power(-1.0, 10), Error);
  CHECK_THROWS_AS(build_eta_power(1.0, 100000), Error);
}

TEST_CASE("evaluation matches independent summation") {
  const FourierForm d = build_delta(64);
  const auto tau = delta_oracle(200);
  double oracle = 0.0;
  for (int n = 200; n >= 1; --n) oracle += static_cast<double>(tau[n]) * std::exp(-2 * kPi * n);
  const FormValue v = eval_form(d, kI);
  CHECK(std::abs(v.value.imag()) < 1e-18);
  CHECK(v.value.real() > 0.0);
  CHECK(std::abs(v.value.real() - oracle) < 1e-12 * oracle);
  CHECK(v.error < 1e-15);
  const cplx z(0.25, 1.0);
  CHECK(std::abs(eval_form(d, z + 1.0).value - eval_form(d, z).value) < 1e-12 * std::abs(eval_form(d, z).value));
  const FourierForm e = build_eta_power(1.0, 64);
  CHECK(std::abs(eval_form(e, 10.0 * kI).value) <= std::exp(-2 * kPi * 10 / 24.0) * 1.1);
  CHECK_THROWS_AS(eval_form(d, cplx(0.0, 0.01)), Error);
}

TEST_CASE("tail bound dominates dropped terms") {
  const FourierForm small = build_delta(20);
  const FourierForm big = build_delta(120);
  for (double y : {0.3, 0.6, 1.0}) {
    const cplx z(0.1, y);
    const FormValue a = eval_series(small, z);
    const FormValue b = eval_series(big, z);
    CHECK(std::abs(a.value - b.value) <= a.error);
  }
  const FourierForm es = build_eta_power(3.0, 20);
  const FourierForm eb = build_eta_power(3.0, 200);
  for (double y : {0.2, 0.5}) {
    const cplx z(-0.3, y);
    CHECK(std::abs(eval_series(es, z).value - eval_series(eb, z).value) <= eval_series(es, z).error);
  }
}

TEST_CASE("modularity of Delta and eta powers through pure series evaluation") {
  std::mt19937_64 rng(41);
  const Mat2 S = gen::S(), T = gen::T();
  const std::vector<Mat2> gammas = {S, T, Mat2(T * S), Mat2(S * gen::T_inverse() * S)};
  std::vector<FourierForm> forms = {build_delta(800)};
  for (double t : {1.0, 2.0, 3.0, 26.0}) forms.push_back(build_eta_power(t, 800));
  for (const auto& f : forms) {
    const Sampler series_only = [&f](cplx z) { return eval_form(f, z, 1e-13).value; };
    double worst = 0.0;
    for (const Mat2& g : gammas) {
      for (int i = 0; i < 20; ++i) {
        const cplx z = random_z(rng);
        const cplx lhs = slash(series_only, g, f.weight, f.multiplier)(z);
        worst = std::max(worst, rel_diff(lhs, series_only(z)));
      }
    }
    CHECK_MESSAGE(worst < 1e-9, f.name);
  }
}

TEST_CASE("evaluation near the real axis through reduction") {
  const FourierForm d = build_delta(64);
  const FourierForm big = build_delta(3000);
  for (cplx z : {cplx(0.13, 0.05), cplx(-0.41, 0.02), cplx(2.3, 0.08)}) {
    const FormValue a = eval_anywhere(d, z);
    const FormValue b = eval_form(big, z, 1e-6);
    CHECK(std::abs(a.value - b.value) <= 1e-9 * std::abs(b.value) + 1e-12);
  }
  const FourierForm e = build_eta_power(3.0, 64);
  const FourierForm eb = build_eta_power(3.0, 3000);
  const cplx z(0.37, 0.03);
  CHECK(rel_diff(eval_anywhere(e, z).value, eval_form(eb, z, 1e-8).value) < 1e-9);
}

TEST_CASE("cusp decay") {
  for (const FourierForm& f : {build_delta(64), build_eta_power(1.0, 64), build_eta_power(3.0, 64)}) {
    const double rate = 0.9 * f.decay_rate();
    const double C = std::abs(eval_form(f, cplx(0.0, 2.0)).value) * std::exp(rate * 2.0) * 2.0;
    for (double y : {2.0, 3.0, 5.0, 8.0}) {
      for (double x : {-0.4, 0.0, 0.3}) {
        CHECK(std::abs(eval_form(f, cplx(x, y)).value) <= C * std::exp(-rate * y));
      }
    }
  }
}

TEST_CASE("derivative against finite differences") {
  const FourierForm d = build_delta(64);
  const cplx z(0.2, 0.9);
  const double h = 1e-5;
  const cplx fd = (eval_form(d, z + h).value - eval_form(d, z - h).value) / (2 * h);
  CHECK(rel_diff(eval_derivative(d, z).value, fd) < 1e-8);
}

TEST_CASE("validation hooks") {
  FourierForm f = build_delta(8);
  f.weight = -4.0;
  f.multiplier = MultiplierSystem::trivial(-4.0);
  CHECK_THROWS_AS(f.validate(), Error);
  try {
    f.validate();
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NegativeWeightForm);
  }
  FourierForm c = build_delta(8);
  c.coeffs[0] = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("descriptors and CSV") {
  CHECK(form_from_json(nlohmann::json::parse(R"({"form":"delta","N":32})")).truncation() == 32);
  const FourierForm e = form_from_json(nlohmann::json::parse(R"({"form":"eta_power","t":1,"N":128})"));
  CHECK(e.truncation() == 128);
  CHECK(e.weight == 0.5);
  CHECK(form_from_name("eta_power:3").weight == 1.5);
  CHECK_THROWS_AS(form_from_json(nlohmann::json::parse(R"({"form":"delta","bogus":1})")), Error);
  CHECK_THROWS_AS(form_from_name("nope"), Error);
  std::ostringstream os;
  write_coefficients_csv(build_delta(3), os);
  CHECK(os.str() == "n,re,im\n0,0,0\n1,1,0\n2,-24,0\n3,252,0\n");
}

TEST_CASE("vector forms") {
  const FourierForm d = build_delta(64);
  const MultiplierSystem triv2 = MultiplierSystem::trivial(12.0).with_representation(
      Eigen::MatrixXcd::Identity(2, 2), Eigen::MatrixXcd::Identity(2, 2));
  const VectorForm vf = make_vector_form({d, scaled(d, 2.0)}, triv2);
  const VectorSampler s = sampler(vf);
  const cplx z(0.1, 0.05);
  const Eigen::VectorXcd v = s(z);
  CHECK(rel_diff(v(0), eval_anywhere(d, z).value) < 1e-12);
  CHECK(rel_diff(v(1), 2.0 * eval_anywhere(d, z).value) < 1e-12);
  CHECK_THROWS_AS(make_vector_form({d}, triv2), Error);
}
