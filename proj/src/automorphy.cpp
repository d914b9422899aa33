#include "rwm/automorphy.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numeric>
#include <sstream>

namespace rwm {

Mat2 mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  Mat2 m;
  m << a, b, c, d;
  return m;
}

namespace gen {
Mat2 identity() { return mat2(1, 0, 0, 1); }
Mat2 minus_identity() { return mat2(-1, 0, 0, -1); }
Mat2 T() { return mat2(1, 1, 0, 1); }
Mat2 T_inverse() { return mat2(1, -1, 0, 1); }
Mat2 S() { return mat2(0, 1, -1, 0); }
}  // namespace gen

std::int64_t det(const Mat2& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

bool is_unimodular(const Mat2& m) { return det(m) == 1; }

Mat2 inverse(const Mat2& m) {
  if (!is_unimodular(m)) fail(ErrorKind::NotSL2Z, "determinant is not 1");
  return mat2(m(1, 1), -m(0, 1), -m(1, 0), m(0, 0));
}

namespace {

template <class A, class B>
int omega_impl(const A& g, const A& h, const B& gh, cplx z) {
  const double value = (-principal_arg(j_factor(gh, z)) +
                        principal_arg(j_factor(g, mobius(h, z))) +
                        principal_arg(j_factor(h, z))) /
                       (2.0 * kPi);
  const double n = std::round(value);
  if (std::abs(value - n) > 1e-6) {
    fail(ErrorKind::NonIntegerOmega, "omega evaluated to " + std::to_string(value));
  }
  return static_cast<int>(n);
}

}  // namespace

int omega(const RealMat2& g, const RealMat2& h, cplx z) {
  const RealMat2 gh = g * h;
  return omega_impl(g, h, gh, z);
}

int omega(const Mat2& g, const Mat2& h, cplx z) {
  const Mat2 gh = g * h;
  return omega_impl(g, h, gh, z);
}

cplx sigma_r(const Mat2& g, const Mat2& h, double r) {
  const int w = omega(g, h);
  if (w == 0) return 1.0;
  return std::polar(1.0, 2.0 * kPi * r * w);
}

cplx sigma_r(const RealMat2& g, const RealMat2& h, double r) {
  const int w = omega(g, h);
  if (w == 0) return 1.0;
  return std::polar(1.0, 2.0 * kPi * r * w);
}

Mat2 complete_bottom_row(std::int64_t c, std::int64_t d) {
  // extended Euclid: a d - b c = 1
  std::int64_t old_r = d, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  // old_s * d + old_t * c = old_r = ±1
  if (old_r != 1 && old_r != -1) fail(ErrorKind::InvalidArgument, "gcd(c, d) != 1");
  const std::int64_t a = old_s * old_r;
  const std::int64_t b = -old_t * old_r;
  Mat2 m = mat2(a, b, c, d);
  if (!is_unimodular(m)) fail(ErrorKind::InvalidArgument, "bottom row completion failed");
  return m;
}

Mat2 random_sl2z(std::mt19937_64& rng, std::int64_t max_entry) {
  std::uniform_int_distribution<std::int64_t> dist(-max_entry, max_entry);
  for (;;) {
    const std::int64_t c = dist(rng);
    const std::int64_t d = dist(rng);
    if (std::gcd(c, d) != 1) continue;
    Mat2 m = complete_bottom_row(c, d);
    // shift the top row by a random multiple of the bottom row
    const std::int64_t k = dist(rng) / std::max<std::int64_t>(1, max_entry / 3);
    m(0, 0) += k * c;
    m(0, 1) += k * d;
    if (m.cwiseAbs().maxCoeff() <= max_entry) return m;
  }
}

Word decompose_st(const Mat2& g) {
  if (!is_unimodular(g)) fail(ErrorKind::NotSL2Z, "determinant is not 1");
  Word word;
  auto push_power = [&word](std::int64_t n) {
    const Letter l = n > 0 ? Letter::T : Letter::TInverse;
    for (std::int64_t i = 0; i < std::abs(n); ++i) word.push_back(l);
  };
  std::int64_t a = g(0, 0), b = g(0, 1), c = g(1, 0), d = g(1, 1);
  // g = T^{n1} S T^{n2} S ... (±T^m)
  while (c != 0) {
    std::int64_t n = a / c;
    if ((a % c != 0) && ((a < 0) != (c < 0))) --n;
    a -= n * c;
    b -= n * d;
    push_power(n);
    word.push_back(Letter::S);
    // left-multiply by S^{-1} = [[0, -1], [1, 0]]
    const std::int64_t na = -c, nb = -d;
    c = a;
    d = b;
    a = na;
    b = nb;
  }
  if (a == 1) {
    push_power(b);
  } else {
    word.push_back(Letter::MinusI);
    push_power(-b);
  }
  return word;
}

namespace {
Mat2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::S: return gen::S();
    case Letter::T: return gen::T();
    case Letter::TInverse: return gen::T_inverse();
    case Letter::MinusI: return gen::minus_identity();
  }
  return gen::identity();
}
}  // namespace

Mat2 word_product(const Word& w) {
  Mat2 p = gen::identity();
  for (Letter l : w) p = p * letter_matrix(l);
  return p;
}

std::string to_string(Letter l) {
  switch (l) {
    case Letter::S: return "S";
    case Letter::T: return "T";
    case Letter::TInverse: return "T^-1";
    case Letter::MinusI: return "-I";
  }
  return "?";
}

// ---------------------------------------------------------------------------

cplx log_eta(cplx z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::InvalidArgument, "log_eta needs Im z > 0");
  const cplx q = std::exp(2.0 * kPi * kI * z);
  CompensatedSum<cplx> sum;
  sum += kPi * kI * z / 12.0;
  cplx qm = q;
  for (int m = 1; m < 10000000; ++m) {
    if (std::abs(qm) < 1e-18) return sum.value();
    sum += std::log(1.0 - qm);
    qm *= q;
  }
  fail(ErrorKind::NoConvergence, "log_eta: Im z too small");
}

namespace {

cplx eta_multiplier_at(double t, const Mat2& g, cplx z) {
  const cplx w = mobius(g, z);
  const cplx e = t * (log_eta(w) - log_eta(z)) - 0.5 * t * principal_log(j_factor(g, z));
  return std::exp(e);
}

void check_unitary(cplx v, const char* what) {
  if (std::abs(std::abs(v) - 1.0) > 1e-10) {
    fail(ErrorKind::NonUnitary, std::string(what) + " has modulus != 1");
  }
}

bool is_even_integer(double r) {
  return std::abs(r / 2.0 - std::round(r / 2.0)) < 1e-12;
}

}  // namespace

MultiplierSystem MultiplierSystem::trivial(double r) {
  if (!is_even_integer(r)) {
    fail(ErrorKind::InvalidArgument, "trivial multiplier needs even integer weight");
  }
  MultiplierSystem m;
  m.kind_ = Kind::Trivial;
  m.weight_ = r;
  return m;
}

MultiplierSystem MultiplierSystem::eta_power(double t, double r) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "eta_power needs t > 0");
  if (!is_even_integer(r - t / 2.0)) {
    fail(ErrorKind::InvalidArgument, "eta_power(t) needs weight r = t/2 mod 2");
  }
  MultiplierSystem m;
  m.kind_ = Kind::EtaPower;
  m.weight_ = r;
  m.eta_t_ = t;
  const Mat2 s = gen::S(), tt = gen::T();
  m.v_s_ = eta_multiplier_at(t, s, kReferencePoint);
  m.v_t_ = eta_multiplier_at(t, tt, kReferencePoint);
  const cplx vs1 = eta_multiplier_at(t, s, kCheckPoint);
  const cplx vt1 = eta_multiplier_at(t, tt, kCheckPoint);
  if (std::abs(vs1 - m.v_s_) > 1e-10 || std::abs(vt1 - m.v_t_) > 1e-10) {
    fail(ErrorKind::InconsistentMultiplier, "eta multiplier depends on z");
  }
  check_unitary(m.v_s_, "v(S)");
  check_unitary(m.v_t_, "v(T)");
  return m;
}

MultiplierSystem MultiplierSystem::generator_table(double r, cplx v_s, cplx v_t) {
  check_unitary(v_s, "v(S)");
  check_unitary(v_t, "v(T)");
  MultiplierSystem m;
  m.kind_ = Kind::GeneratorTable;
  m.weight_ = r;
  m.v_s_ = v_s;
  m.v_t_ = v_t;
  // relations S^4 = I and (ST)^3 = I (this S convention) must be respected by the chain rule
  const Word s4{Letter::S, Letter::S, Letter::S, Letter::S};
  const Word st3{Letter::S, Letter::T, Letter::S, Letter::T, Letter::S, Letter::T};
  auto chain = [&m](const Word& w) {
    Mat2 p = gen::identity();
    cplx v = 1.0;
    for (Letter l : w) {
      const Mat2 lm = letter_matrix(l);
      v = sigma_r(p, lm, m.weight_) * v * m.letter_value(l);
      p = p * lm;
    }
    return v;
  };
  if (std::abs(chain(s4) - 1.0) > 1e-10 ||
      std::abs(chain(st3) - 1.0) > 1e-10) {
    fail(ErrorKind::InconsistentMultiplier, "generator values violate the SL2(Z) relations");
  }
  return m;
}

MultiplierSystem MultiplierSystem::with_representation(const Eigen::MatrixXcd& rho_s,
                                                       const Eigen::MatrixXcd& rho_t) const {
  const auto n = rho_s.rows();
  if (rho_s.cols() != n || rho_t.rows() != n || rho_t.cols() != n || n < 1) {
    fail(ErrorKind::DimensionMismatch, "representation matrices must be square of equal size");
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  if ((rho_s.adjoint() * rho_s - id).norm() > 1e-10 ||
      (rho_t.adjoint() * rho_t - id).norm() > 1e-10) {
    fail(ErrorKind::NonUnitary, "representation is not unitary");
  }
  const Eigen::MatrixXcd s2 = rho_s * rho_s;
  const Eigen::MatrixXcd st = rho_s * rho_t;
  if ((s2 * s2 - id).norm() > 1e-10 || (st * st * st - id).norm() > 1e-10) {
    fail(ErrorKind::InconsistentMultiplier, "representation violates S^4 = 1, (ST)^3 = 1");
  }
  MultiplierSystem m = *this;
  m.rho_s_ = rho_s;
  m.rho_t_ = rho_t;
  return m;
}

cplx MultiplierSystem::letter_value(Letter l) const {
  switch (l) {
    case Letter::S: return v_s_;
    case Letter::T: return v_t_;
    case Letter::TInverse: return 1.0 / v_t_;
    case Letter::MinusI: return sigma_r(gen::S(), gen::S(), weight_) * v_s_ * v_s_;
  }
  return 1.0;
}

cplx MultiplierSystem::value(const Mat2& g) const {
  if (kind_ == Kind::Trivial) {
    if (!is_unimodular(g)) fail(ErrorKind::NotSL2Z, "determinant is not 1");
    return 1.0;
  }
  const Word w = decompose_st(g);
  Mat2 p = gen::identity();
  cplx v = 1.0;
  for (Letter l : w) {
    const Mat2 lm = letter_matrix(l);
    v = sigma_r(p, lm, weight_) * v * letter_value(l);
    p = p * lm;
  }
  return v;
}

Eigen::MatrixXcd MultiplierSystem::rho(const Mat2& g) const {
  const auto n = rho_s_.rows();
  if (n == 1) return Eigen::MatrixXcd::Identity(1, 1);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(n, n);
  for (Letter l : decompose_st(g)) {
    switch (l) {
      case Letter::S: p = p * rho_s_; break;
      case Letter::T: p = p * rho_t_; break;
      case Letter::TInverse: p = p * rho_t_.adjoint(); break;
      case Letter::MinusI: p = p * rho_s_ * rho_s_; break;
    }
  }
  return p;
}

MultiplierSystem MultiplierSystem::conj() const {
  MultiplierSystem m = *this;
  m.weight_ = -weight_;
  m.v_s_ = std::conj(v_s_);
  m.v_t_ = std::conj(v_t_);
  m.rho_s_ = rho_s_.conjugate();
  m.rho_t_ = rho_t_.conjugate();
  if (kind_ == Kind::EtaPower) {
    m.kind_ = Kind::GeneratorTable;
    m.eta_t_ = 0.0;
  }
  return m;
}

MultiplierSystem MultiplierSystem::reweighted(double r) const {
  if (!is_even_integer(r - weight_)) {
    fail(ErrorKind::InvalidArgument, "reweighting must change the weight by an even integer");
  }
  MultiplierSystem m = *this;
  m.weight_ = r;
  return m;
}

double MultiplierSystem::kappa() const {
  double k = std::arg(v_t_) / (2.0 * kPi);
  if (k < 0.0) k += 1.0;
  if (k > 1.0 - 1e-12 || k < 1e-12) k = 0.0;
  return k;
}

bool MultiplierSystem::same_values(const MultiplierSystem& other, double tol) const {
  if (dimension() != other.dimension()) return false;
  return std::abs(v_s_ - other.v_s_) <= tol && std::abs(v_t_ - other.v_t_) <= tol &&
         (rho_s_ - other.rho_s_).norm() <= tol && (rho_t_ - other.rho_t_).norm() <= tol;
}

std::string MultiplierSystem::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::Trivial: os << "trivial"; break;
    case Kind::EtaPower: os << "eta_power(t=" << eta_t_ << ")"; break;
    case Kind::GeneratorTable: os << "generator_table"; break;
  }
  os << ", weight " << weight_;
  if (dimension() > 1) os << ", dim " << dimension();
  return os.str();
}

// ---------------------------------------------------------------------------

GroupContext sl2z_context() {
  GroupContext ctx;
  ctx.name = "SL2Z";
  ctx.generators = {{"S", gen::S()}, {"T", gen::T()}};
  Cusp inf;
  inf.representative = ExtPoint::infinity();
  inf.width = 1.0;
  inf.scaling = RealMat2::Identity();
  inf.stabilizer = gen::T();
  ctx.cusps.push_back(inf);
  return ctx;
}

void validate_context(const GroupContext& ctx) {
  for (const Cusp& c : ctx.cusps) {
    if (!(c.width > 0.0)) fail(ErrorKind::InvalidArgument, "cusp width must be positive");
    const double dt = c.scaling.determinant();
    if (std::abs(dt - 1.0) > 1e-14) fail(ErrorKind::InvalidArgument, "scaling matrix det != 1");
    const RealMat2 conj = c.scaling * c.stabilizer.cast<double>() * c.scaling.inverse();
    RealMat2 expect;
    expect << 1.0, c.width, 0.0, 1.0;
    if ((conj - expect).cwiseAbs().maxCoeff() > 1e-12) {
      fail(ErrorKind::InvalidArgument, "A sigma A^-1 is not translation by the width");
    }
  }
}

Sampler slash(Sampler f, const Mat2& g, double r, const MultiplierSystem& v,
              SlashVariant variant) {
  if (v.dimension() != 1) fail(ErrorKind::DimensionMismatch, "scalar sampler, vector multiplier");
  const cplx vbar = std::conj(v(g));
  if (variant == SlashVariant::Classic) {
    return [f = std::move(f), g, r, vbar](cplx z) {
      return vbar * j_pow(g, z, -r) * f(mobius(g, z));
    };
  }
  return [f = std::move(f), g, r, vbar](cplx z) {
    return vbar * roelcke_factor(g, z, r) * f(mobius(g, z));
  };
}

VectorSampler slash(VectorSampler f, const Mat2& g, double r, const MultiplierSystem& v,
                    SlashVariant variant) {
  const cplx vbar = std::conj(v(g));
  const Eigen::MatrixXcd rinv = v.rho(g).adjoint();
  const int n = v.dimension();
  return [f = std::move(f), g, r, vbar, rinv, variant, n](cplx z) -> Eigen::VectorXcd {
    const Eigen::VectorXcd fz = f(mobius(g, z));
    if (fz.size() != n) fail(ErrorKind::DimensionMismatch, "sampler dimension != rho dimension");
    const cplx factor =
        variant == SlashVariant::Classic ? j_pow(g, z, -r) : roelcke_factor(g, z, r);
    return vbar * factor * (rinv * fz);
  };
}

}  // namespace rwm
