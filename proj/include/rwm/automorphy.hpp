#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rwm/errors.hpp"
#include "rwm/numeric.hpp"

namespace rwm {

template <class Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Integer 2x2 matrix, the element type of SL2(Z).
using Mat2 = Matrix2<std::int64_t>;
/// Real 2x2 matrix, used for scaling matrices A_q that need not be integral.
using RealMat2 = Matrix2<double>;

using Sampler = std::function<cplx(cplx)>;
using VectorSampler = std::function<Eigen::VectorXcd(cplx)>;

Mat2 mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

namespace gen {
Mat2 identity();
Mat2 minus_identity();
Mat2 T();
Mat2 T_inverse();
/// S = [[0, 1], [-1, 0]], so S z = -1/z and S^2 = -I.
Mat2 S();
}  // namespace gen

std::int64_t det(const Mat2& m);
bool is_unimodular(const Mat2& m);
/// Inverse of a determinant-one integer matrix.
Mat2 inverse(const Mat2& m);

/// A point of H ∪ R ∪ {∞}.
struct ExtPoint {
  bool infinite = false;
  cplx value{};

  static ExtPoint infinity() { return {true, {}}; }
  static ExtPoint finite(cplx z) { return {false, z}; }
};

template <class Derived>
cplx j_factor(const Eigen::MatrixBase<Derived>& g, cplx z) {
  const double c = static_cast<double>(g(1, 0));
  const double d = static_cast<double>(g(1, 1));
  return {c * z.real() + d, c * z.imag()};
}

/// j(g, z)^r = exp(r Log j(g, z)); throws ZeroBase when j vanishes.
template <class Derived>
cplx j_pow(const Eigen::MatrixBase<Derived>& g, cplx z, double r) {
  const cplx j = j_factor(g, z);
  if (j == cplx(0.0, 0.0)) fail(ErrorKind::ZeroBase, "j(gamma, z) = 0");
  return principal_pow(j, r);
}

/// (az + b)/(cz + d) for z ∈ H.
template <class Derived>
cplx mobius(const Eigen::MatrixBase<Derived>& g, cplx z) {
  const double a = static_cast<double>(g(0, 0));
  const double b = static_cast<double>(g(0, 1));
  return (a * z + b) / j_factor(g, z);
}

template <class Derived>
ExtPoint mobius(const Eigen::MatrixBase<Derived>& g, const ExtPoint& z) {
  const double a = static_cast<double>(g(0, 0));
  const double c = static_cast<double>(g(1, 0));
  if (z.infinite) {
    if (c == 0.0) return ExtPoint::infinity();
    return ExtPoint::finite(a / c);
  }
  const cplx j = j_factor(g, z.value);
  if (j == cplx(0.0, 0.0)) return ExtPoint::infinity();
  return ExtPoint::finite(mobius(g, z.value));
}

/// Reference point for omega and multiplier extraction.
inline constexpr cplx kReferencePoint{0.0, 2.0};
/// Second point used to confirm z-independence.
inline constexpr cplx kCheckPoint{1.0 / 3.0, 1.5};

/// Petersson's omega(g, h) ∈ {-1, 0, 1}, evaluated at `z` (default 2i).
/// Throws NonIntegerOmega if the arg combination is not within 1e-6 of an integer.
int omega(const RealMat2& g, const RealMat2& h, cplx z = kReferencePoint);
int omega(const Mat2& g, const Mat2& h, cplx z = kReferencePoint);

/// sigma_r(g, h) = exp(2 pi i r omega(g, h)).
cplx sigma_r(const Mat2& g, const Mat2& h, double r);
cplx sigma_r(const RealMat2& g, const RealMat2& h, double r);

enum class Letter { S, T, TInverse, MinusI };
using Word = std::vector<Letter>;

/// Some element of SL2(Z) with bottom row (c, d); requires gcd(c, d) = 1.
Mat2 complete_bottom_row(std::int64_t c, std::int64_t d);

/// Random SL2(Z) element with all entries bounded by max_entry in absolute value.
Mat2 random_sl2z(std::mt19937_64& rng, std::int64_t max_entry);

/// Euclidean decomposition of an SL2(Z) element as a word in S, T, T^-1, -I.
Word decompose_st(const Mat2& g);
Mat2 word_product(const Word& w);
std::string to_string(Letter l);

/// Weight-r unitary multiplier system on SL2(Z), optionally carrying a
/// unitary representation rho of dimension n > 1.
///
/// Values on arbitrary elements are built from the generator values through
/// decompose_st and the chain rule v(gh) = sigma_r(g, h) v(g) v(h).
class MultiplierSystem {
 public:
  enum class Kind { Trivial, EtaPower, GeneratorTable };

  MultiplierSystem() = default;

  static MultiplierSystem trivial(double r);
  /// Multiplier of eta^t: v(g) = eta^t(gz) / (j(g, z)^{t/2} eta^t(z)).
  static MultiplierSystem eta_power(double t, double r);
  static MultiplierSystem generator_table(double r, cplx v_s, cplx v_t);

  /// Copy with a unitary representation attached; rho_s, rho_t are the
  /// images of S and T.
  MultiplierSystem with_representation(const Eigen::MatrixXcd& rho_s,
                                       const Eigen::MatrixXcd& rho_t) const;

  double weight() const { return weight_; }
  int dimension() const { return static_cast<int>(rho_s_.rows()); }
  Kind kind() const { return kind_; }
  double eta_exponent() const { return eta_t_; }

  cplx value(const Mat2& g) const;
  cplx operator()(const Mat2& g) const { return value(g); }
  cplx generator_s() const { return v_s_; }
  cplx generator_t() const { return v_t_; }

  /// rho(g); the 1x1 identity for scalar systems.
  Eigen::MatrixXcd rho(const Mat2& g) const;

  /// Complex conjugate system, of weight -r.
  MultiplierSystem conj() const;
  /// Same values viewed as a system of weight r' ≡ r (mod 2).
  MultiplierSystem reweighted(double r) const;

  /// Cusp offset kappa ∈ [0, 1) at ∞, from v(T) = exp(2 pi i kappa).
  double kappa() const;

  /// True when both systems agree on S and T (and rho agrees) to `tol`.
  bool same_values(const MultiplierSystem& other, double tol = 1e-10) const;

  std::string describe() const;

 private:
  cplx letter_value(Letter l) const;

  Kind kind_ = Kind::Trivial;
  double weight_ = 0.0;
  double eta_t_ = 0.0;
  cplx v_s_{1.0, 0.0};
  cplx v_t_{1.0, 0.0};
  Eigen::MatrixXcd rho_s_ = Eigen::MatrixXcd::Identity(1, 1);
  Eigen::MatrixXcd rho_t_ = Eigen::MatrixXcd::Identity(1, 1);
};

struct Cusp {
  ExtPoint representative;
  double width = 1.0;
  RealMat2 scaling = RealMat2::Identity();
  Mat2 stabilizer;
};

struct GroupContext {
  std::string name;
  std::vector<std::pair<std::string, Mat2>> generators;
  std::vector<Cusp> cusps;
};

/// SL2(Z): generators S, T; the single cusp ∞ with width 1, A = I, stabilizer T.
GroupContext sl2z_context();
/// Checks A sigma A^{-1} = [[1, width], [0, 1]] for every cusp; InvalidArgument otherwise.
void validate_context(const GroupContext& ctx);

enum class SlashVariant { Classic, Roelcke };

/// (j(g, zbar)/j(g, z))^{r/2}, with j(g, zbar)^{r/2} read as conj(j(g, z)^{r/2}).
/// Equals exp(-i r Arg j(g, z)), which makes y^{r/2} intertwine the two slashes.
template <class Derived>
cplx roelcke_factor(const Eigen::MatrixBase<Derived>& g, cplx z, double r) {
  const cplx j = j_factor(g, z);
  if (j == cplx(0.0, 0.0)) fail(ErrorKind::ZeroBase, "j(gamma, z) = 0");
  if (r == 0.0) return 1.0;
  return std::polar(1.0, -r * principal_arg(j));
}

/// f|_{r,v} g (classic) or f|^R_{r,v} g (Roelcke), as a new sampler.
Sampler slash(Sampler f, const Mat2& g, double r, const MultiplierSystem& v,
              SlashVariant variant = SlashVariant::Classic);
VectorSampler slash(VectorSampler f, const Mat2& g, double r,
                    const MultiplierSystem& v,
                    SlashVariant variant = SlashVariant::Classic);

/// log eta(z) on the branch holomorphic in H with log eta(z) ~ pi i z / 12 at ∞.
cplx log_eta(cplx z);

}  // namespace rwm
