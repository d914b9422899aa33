#include "rwm/forms.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <set>

#include "rwm/domain.hpp"
#include "rwm/series.hpp"

namespace rwm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxTruncation = 5000;

double log_term(const TailBound& b, double n, double alpha, double kappa) {
  return std::log(b.M) + b.c * std::log(n) + b.beta * std::sqrt(n) - alpha * (n + kappa);
}

}  // namespace

double FourierForm::decay_rate() const {
  const int n0 = leading_index();
  return 2.0 * kPi * (n0 + kappa) / width;
}

int FourierForm::leading_index() const {
  for (int n = 0; n < static_cast<int>(coeffs.size()); ++n) {
    if (coeffs[n] != cplx(0.0, 0.0)) return n;
  }
  return static_cast<int>(coeffs.size());
}

void FourierForm::validate() const {
  if (!(width > 0.0)) fail(ErrorKind::InvalidArgument, "cusp width must be positive");
  if (kappa < 0.0 || kappa >= 1.0) fail(ErrorKind::InvalidArgument, "kappa must lie in [0, 1)");
  if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "form has no coefficients");
  if (tail.M < 0.0 || tail.c < 0.0 || tail.beta < 0.0) {
    fail(ErrorKind::InvalidArgument, "tail constants must be non-negative");
  }
  if (cusp_form && kappa == 0.0 && coeffs[0] != cplx(0.0, 0.0)) {
    fail(ErrorKind::InvalidArgument, "cusp form with a nonzero constant term");
  }
  if (modular && weight < 0.0 && leading_index() < static_cast<int>(coeffs.size())) {
    fail(ErrorKind::NegativeWeightForm, "a nonzero modular form of negative weight");
  }
  if (modular && std::abs(multiplier.weight() - weight) > 1e-12) {
    fail(ErrorKind::IncompatibleWeights, "multiplier weight differs from the form weight");
  }
}

FourierForm build_delta(int N) {
  if (N < 1) fail(ErrorKind::InvalidArgument, "build_delta needs N >= 1");
  const Series p = euler_product(N);
  const Series p2 = series_mul(p, p);
  const Series p4 = series_mul(p2, p2);
  const Series p8 = series_mul(p4, p4);
  const Series p16 = series_mul(p8, p8);
  const Series p24 = series_mul(p16, p8);
  FourierForm f;
  f.name = "delta";
  f.weight = 12.0;
  f.multiplier = MultiplierSystem::trivial(12.0);
  f.kappa = 0.0;
  f.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 1; n <= N; ++n) f.coeffs[n] = std::round(p24[n - 1].real());
  // |tau(n)| <= d(n) n^{11/2} <= 2 n^6
  f.tail = {2.0, 6.0, 0.0};
  f.cusp_form = true;
  f.modular = true;
  f.validate();
  return f;
}

FourierForm build_eta_power(double t, int N) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidArgument, "build_eta_power needs t > 0");
  if (N < 1) fail(ErrorKind::InvalidArgument, "build_eta_power needs N >= 1");
  if (N > kMaxTruncation) fail(ErrorKind::SeriesOverflow, "truncation too large for series exp");
  const double e = t / 24.0;
  double shift = std::floor(e);
  double kappa = e - shift;
  if (kappa > 1.0 - 1e-13) {
    shift += 1.0;
    kappa = 0.0;
  } else if (kappa < 1e-13) {
    kappa = 0.0;
  }
  const int s = static_cast<int>(shift);
  const Series b = series_pow(euler_product(N + 1), t);
  FourierForm f;
  f.name = "eta_power(" + std::to_string(t) + ")";
  f.weight = t / 2.0;
  f.multiplier = MultiplierSystem::eta_power(t, t / 2.0);
  f.kappa = kappa;
  f.coeffs.assign(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = s; n <= N; ++n) f.coeffs[n] = b[n - s];
  // majorant prod (1 - q^m)^{-t}, whose coefficients are at most e^{pi sqrt(2 t n / 3)}
  f.tail = {1.0, 0.0, kPi * std::sqrt(2.0 * t / 3.0)};
  for (int n = 1; n <= N; ++n) {
    const double bound = std::exp(f.tail.beta * std::sqrt(static_cast<double>(n))) * (1.0 + 1e-8);
    if (std::abs(f.coeffs[n]) > bound + 1e-8) {
      fail(ErrorKind::SeriesOverflow, "eta coefficients exceed their majorant; series unstable");
    }
  }
  f.cusp_form = true;
  f.modular = true;
  f.validate();
  return f;
}

double tail_estimate(const FourierForm& f, double y) {
  if (f.tail.M == 0.0) return 0.0;
  const double alpha = 2.0 * kPi * y / f.width;
  double sum = 0.0;
  const double start = static_cast<double>(f.truncation() + 1);
  double lt = log_term(f.tail, start, alpha, f.kappa);
  for (double n = start; n < start + 1e7; n += 1.0) {
    const double lnext = log_term(f.tail, n + 1.0, alpha, f.kappa);
    sum += std::exp(lt);
    const double q = std::exp(lnext - lt);
    // ratios decrease in n, so a geometric bound closes the sum
    if (q < 0.9) return sum + std::exp(lt) * q / (1.0 - q);
    lt = lnext;
  }
  return std::numeric_limits<double>::infinity();
}

FormValue eval_series(const FourierForm& f, cplx z) {
  const cplx q = std::exp(2.0 * kPi * kI * z / f.width);
  const cplx lead = std::exp(2.0 * kPi * kI * f.kappa * z / f.width);
  CompensatedSum<cplx> s;
  double mag = 0.0;
  cplx qn = lead;
  for (const cplx& a : f.coeffs) {
    const cplx term = a * qn;
    s += term;
    mag += std::abs(term);
    qn *= q;
  }
  const double tail = tail_estimate(f, z.imag());
  return {s.value(), tail + 8.0 * kEps * mag};
}

FormValue eval_form(const FourierForm& f, cplx z, double abs_tol) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::InvalidArgument, "form evaluated off H");
  const FormValue v = eval_series(f, z);
  if (!(v.error <= abs_tol)) {
    fail(ErrorKind::TailTooLarge, "tail bound " + std::to_string(v.error) + " exceeds tolerance");
  }
  return v;
}

FormValue eval_anywhere(const FourierForm& f, cplx z, double abs_tol) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::InvalidArgument, "form evaluated off H");
  // the reduction pays off only where the series is slow
  if (z.imag() >= 0.5 || !f.modular) {
    const FormValue v = eval_series(f, z);
    if (v.error <= std::max(abs_tol, 1e-13 * std::abs(v.value))) return v;
    if (!f.modular) fail(ErrorKind::TailTooLarge, "series tail too large and form not modular");
  }
  const Reduction red = reduce_to_domain(z);
  const FormValue w = eval_series(f, red.w);
  const cplx factor = std::conj(f.multiplier(red.gamma)) * j_pow(red.gamma, z, -f.weight);
  const double scale = std::abs(factor);
  const FormValue out{factor * w.value, scale * w.error};
  if (!(out.error <= std::max(abs_tol, 1e-12 * std::abs(out.value)))) {
    fail(ErrorKind::TailTooLarge, "tail bound too large even after reduction");
  }
  return out;
}

FormValue eval_derivative(const FourierForm& f, cplx z) {
  const cplx q = std::exp(2.0 * kPi * kI * z / f.width);
  const cplx lead = std::exp(2.0 * kPi * kI * f.kappa * z / f.width);
  CompensatedSum<cplx> s;
  double mag = 0.0;
  cplx qn = lead;
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    const cplx term = f.coeffs[n] * qn * (2.0 * kPi * kI * (static_cast<double>(n) + f.kappa) / f.width);
    s += term;
    mag += std::abs(term);
    qn *= q;
  }
  FourierForm d = f;
  d.tail = {f.tail.M * 2.0 * kPi * (1.0 + f.kappa) / f.width, f.tail.c + 1.0, f.tail.beta};
  return {s.value(), tail_estimate(d, z.imag()) + 8.0 * kEps * mag};
}

Sampler sampler(const FourierForm& f, double abs_tol) {
  return [f, abs_tol](cplx z) { return eval_anywhere(f, z, abs_tol).value; };
}

FourierForm scaled(const FourierForm& f, cplx a) {
  FourierForm g = f;
  for (cplx& c : g.coeffs) c *= a;
  g.tail.M *= std::abs(a);
  g.name = f.name + "*scaled";
  return g;
}

VectorForm make_vector_form(std::vector<FourierForm> components, const MultiplierSystem& rho_mult) {
  if (static_cast<int>(components.size()) != rho_mult.dimension()) {
    fail(ErrorKind::DimensionMismatch, "component count differs from the representation dimension");
  }
  for (const auto& c : components) {
    if (std::abs(c.weight - components.front().weight) > 1e-12) {
      fail(ErrorKind::IncompatibleWeights, "vector components of different weight");
    }
  }
  return {std::move(components), rho_mult};
}

VectorSampler sampler(const VectorForm& f, double abs_tol) {
  return [f, abs_tol](cplx z) -> Eigen::VectorXcd {
    const int n = f.dimension();
    Eigen::VectorXcd out(n);
    bool direct = z.imag() >= 0.5;
    if (direct) {
      for (int i = 0; i < n; ++i) {
        const FormValue v = eval_series(f.components[i], z);
        if (v.error > std::max(abs_tol, 1e-13 * std::abs(v.value))) {
          direct = false;
          break;
        }
        out(i) = v.value;
      }
    }
    if (direct) return out;
    // F(z) = conj(v(g)) j(g, z)^{-k} rho(g)^{-1} F(gz)
    const Reduction red = reduce_to_domain(z);
    Eigen::VectorXcd w(n);
    for (int i = 0; i < n; ++i) w(i) = eval_series(f.components[i], red.w).value;
    const cplx factor = std::conj(f.multiplier(red.gamma)) * j_pow(red.gamma, z, -f.weight());
    return factor * (f.multiplier.rho(red.gamma).adjoint() * w);
  };
}

FourierForm form_from_name(const std::string& name, int N) {
  if (name == "delta") return build_delta(N);
  if (name == "eta") return build_eta_power(1.0, N);
  if (name == "eta3") return build_eta_power(3.0, N);
  if (name == "eta26") return build_eta_power(26.0, N);
  const std::string prefix = "eta_power:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t pos = 0;
    double t = 0.0;
    try {
      t = std::stod(name.substr(prefix.size()), &pos);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "bad eta_power exponent in '" + name + "'");
    }
    if (pos != name.size() - prefix.size()) fail(ErrorKind::InvalidArgument, "bad form name '" + name + "'");
    return build_eta_power(t, N);
  }
  fail(ErrorKind::InvalidArgument, "unknown form '" + name + "'");
}

FourierForm form_from_json(const nlohmann::json& j) {
  if (j.is_string()) return form_from_name(j.get<std::string>());
  if (!j.is_object() || !j.contains("form")) {
    fail(ErrorKind::InvalidArgument, "form descriptor needs a \"form\" key");
  }
  const std::string kind = j.at("form").get<std::string>();
  const std::set<std::string> allowed = kind == "custom"
      ? std::set<std::string>{"form", "weight", "kappa", "width", "coeffs", "tail", "cusp"}
      : std::set<std::string>{"form", "t", "N"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) fail(ErrorKind::InvalidArgument, "unknown form key '" + it.key() + "'");
  }
  try {
    const int N = j.value("N", 64);
    if (kind == "eta_power") return build_eta_power(j.at("t").get<double>(), N);
    if (kind == "custom") {
      FourierForm f;
      f.name = "custom";
      f.weight = j.at("weight").get<double>();
      f.kappa = j.value("kappa", 0.0);
      f.width = j.value("width", 1.0);
      for (const auto& c : j.at("coeffs")) {
        if (c.is_array()) {
          f.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        } else {
          f.coeffs.emplace_back(c.get<double>(), 0.0);
        }
      }
      if (j.contains("tail")) {
        f.tail = {j["tail"].value("M", 0.0), j["tail"].value("c", 0.0), j["tail"].value("beta", 0.0)};
      }
      f.cusp_form = j.value("cusp", false);
      f.multiplier = MultiplierSystem::generator_table(0.0, 1.0, 1.0);
      f.modular = false;
      f.validate();
      return f;
    }
    if (j.contains("t")) fail(ErrorKind::InvalidArgument, "key 't' only applies to eta_power");
    return form_from_name(kind, N);
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidArgument, ex.what());
  }
}

void write_coefficients_csv(const FourierForm& f, std::ostream& os) {
  os.precision(17);
  os << "n,re,im\n";
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    os << n << ',' << f.coeffs[n].real() << ',' << f.coeffs[n].imag() << '\n';
  }
}

}  // namespace rwm
