#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwm/checks.hpp"
#include "rwm/domain.hpp"
#include "rwm/eichler.hpp"
#include "rwm/forms.hpp"
#include "rwm/pairing.hpp"
#include "rwm/spectral.hpp"

namespace {

using rwm::cplx;
using rwm::ErrorKind;
using ojson = nlohmann::ordered_json;

// --- serialization -------------------------------------------------------------

void emit(const ojson& j, std::string& out, int depth) {
  const std::string pad(2 * depth, ' '), inner(2 * depth + 2, ' ');
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
      out += "null";
      return;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += inner + ojson(k).dump() + ": ";
      emit(v, out, depth + 1);
    }
    out += "\n" + pad + "}";
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& v : j) flat = flat && v.is_primitive();
    out += "[";
    bool first = true;
    for (const auto& v : j) {
      if (!first) out += flat ? ", " : ",";
      first = false;
      if (!flat) out += "\n" + inner;
      emit(v, out, depth + 1);
    }
    if (!flat && !j.empty()) out += "\n" + pad;
    out += "]";
  } else {
    out += j.dump();
  }
}

ojson cj(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson matrix_json(const rwm::Mat2& m) {
  return ojson::array({ojson::array({m(0, 0), m(0, 1)}), ojson::array({m(1, 0), m(1, 1)})});
}

// --- parameter parsing -----------------------------------------------------------

[[noreturn]] void bad(const std::string& what) { rwm::fail(ErrorKind::InvalidArgument, what); }

std::vector<double> numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      bad("not a number: '" + item + "'");
    }
    while (pos < item.size() && item[pos] == ' ') ++pos;
    if (pos != item.size()) bad("not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

double as_double(const nlohmann::json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto v = numbers(j.get<std::string>());
    if (v.size() == 1) return v[0];
  }
  bad("'" + key + "' must be a number");
}

int as_int(const nlohmann::json& j, const std::string& key) {
  const double v = as_double(j, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) bad("'" + key + "' must be an integer");
  return static_cast<int>(v);
}

cplx as_complex(const nlohmann::json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  std::vector<double> v;
  if (j.is_string()) v = numbers(j.get<std::string>());
  if (j.is_array()) {
    for (const auto& e : j) v.push_back(as_double(e, key));
  }
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return {v[0], v[1]};
  bad("'" + key + "' must be x,y");
}

cplx as_point(const nlohmann::json& j, const std::string& key) {
  const cplx z = as_complex(j, key);
  if (!(z.imag() > 0.0)) bad("'" + key + "' must lie in the upper half-plane");
  return z;
}

rwm::Mat2 as_matrix(const nlohmann::json& j, const std::string& key) {
  std::vector<double> v;
  if (j.is_string()) v = numbers(j.get<std::string>());
  if (j.is_array()) {
    for (const auto& row : j) {
      if (row.is_array()) {
        for (const auto& e : row) v.push_back(as_double(e, key));
      } else {
        v.push_back(as_double(row, key));
      }
    }
  }
  if (v.size() != 4) bad("'" + key + "' needs four entries a,b,c,d");
  for (double e : v) {
    if (e != std::floor(e)) bad("'" + key + "' entries must be integers");
  }
  const rwm::Mat2 m = rwm::mat2(static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1]),
                                static_cast<std::int64_t>(v[2]), static_cast<std::int64_t>(v[3]));
  if (rwm::det(m) != 1) rwm::fail(ErrorKind::NotSL2Z, "'" + key + "' must have determinant 1");
  return m;
}

rwm::FourierForm as_form(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (!s.empty() && s.front() == '{') {
      nlohmann::json parsed;
      try {
        parsed = nlohmann::json::parse(s);
      } catch (const nlohmann::json::exception& e) {
        bad(std::string("bad form JSON: ") + e.what());
      }
      return rwm::form_from_json(parsed);
    }
  }
  return rwm::form_from_json(j);
}

// --- configuration -----------------------------------------------------------------

const std::map<std::string, std::set<std::string>> kParams{
    {"pair", {"f", "g"}},
    {"petersson", {"f", "g"}},
    {"cocycle", {"g", "gamma", "z"}},
    {"aux", {"g", "z"}},
    {"eisenstein", {"r", "s", "z", "cutoff", "multiplier"}},
    {"decompose", {"gamma"}},
    {"check", {"suite"}},
    {"laplacian-check", {"which", "r", "z", "f"}},
};
const std::set<std::string> kQuadKeys{"abs_tol", "rel_tol", "Y", "max_subdivisions"};

struct RunConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json quad = nlohmann::json::object();
  std::string output;
  std::string dump_grid;
  bool timings = false;
};

void check_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (!allowed.count(k)) bad("unknown key '" + k + "' in " + where);
  }
}

void merge_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("config is not valid JSON: ") + e.what());
  }
  std::set<std::string> top{"quadrature", "output", "dump_grid"};
  for (const auto& [k, v] : kParams) top.insert(k);
  check_keys(j, top, "config");
  for (const auto& [k, v] : j.items()) {
    if (k == "quadrature") {
      check_keys(v, kQuadKeys, "config.quadrature");
      for (const auto& [qk, qv] : v.items()) cfg.quad[qk] = qv;
    } else if (k == "output") {
      cfg.output = v.get<std::string>();
    } else if (k == "dump_grid") {
      cfg.dump_grid = v.get<std::string>();
    } else {
      check_keys(v, kParams.at(k), "config." + k);
      // sections for other subcommands are allowed and ignored
      if (k == cfg.command) {
        for (const auto& [pk, pv] : v.items()) cfg.params[pk] = pv;
      }
    }
  }
}

rwm::QuadratureSpec quadrature(const RunConfig& cfg) {
  rwm::QuadratureSpec q;
  if (cfg.quad.contains("abs_tol")) q.abs_tol = as_double(cfg.quad["abs_tol"], "abs_tol");
  if (cfg.quad.contains("rel_tol")) q.rel_tol = as_double(cfg.quad["rel_tol"], "rel_tol");
  if (cfg.quad.contains("Y")) q.Y = as_double(cfg.quad["Y"], "Y");
  if (cfg.quad.contains("max_subdivisions")) q.max_subdivisions = as_int(cfg.quad["max_subdivisions"], "max_subdivisions");
  q.validate();
  return q;
}

ojson quad_json(const rwm::QuadratureSpec& q) {
  return {{"abs_tol", q.abs_tol}, {"rel_tol", q.rel_tol}, {"Y", q.Y}, {"max_subdivisions", q.max_subdivisions}};
}

const nlohmann::json& need(const RunConfig& cfg, const std::string& key) {
  if (!cfg.params.contains(key)) bad("missing required parameter '" + key + "'");
  return cfg.params[key];
}

nlohmann::json get_or(const RunConfig& cfg, const std::string& key, nlohmann::json fallback) {
  return cfg.params.contains(key) ? cfg.params[key] : fallback;
}

ojson form_meta(const rwm::FourierForm& f) {
  return {{"name", f.name}, {"weight", f.weight}, {"truncation", f.truncation()}, {"kappa", f.kappa}};
}

// --- commands ------------------------------------------------------------------------

struct Outcome {
  ojson result;
  rwm::Sampler grid;  // sampled by --dump-grid
  int exit_code = 0;
};

// pair and petersson use a norm-relative abs_tol unless one was given
rwm::QuadratureSpec pairing_quadrature(const RunConfig& cfg, const rwm::FourierForm& f) {
  const rwm::QuadratureSpec q = quadrature(cfg);
  if (cfg.quad.contains("abs_tol")) return q;
  rwm::QuadratureSpec out = rwm::norm_relative_spec(f, 1e-10, q);
  if (cfg.quad.contains("rel_tol")) out.rel_tol = q.rel_tol;
  return out;
}

Outcome cmd_pair(const RunConfig& cfg) {
  const rwm::FourierForm f = as_form(need(cfg, "f"));
  const rwm::FourierForm g = as_form(get_or(cfg, "g", need(cfg, "f")));
  const rwm::QuadratureSpec q = pairing_quadrature(cfg, f);
  const rwm::PairingResult p = rwm::pair_cocycle(f, rwm::evaluator(rwm::make_cocycle(g, q)), rwm::sl2z_domain(), q);
  const rwm::ValueWithError pet = rwm::petersson_direct(f, g, rwm::sl2z_domain(), q);
  ojson edges = ojson::array();
  for (const auto& [e, v] : p.per_edge) edges.push_back({{"edge", e}, {"integral", cj(v)}});
  ojson res{{"command", "pair"},
            {"pair", cj(p.value)},
            {"pair_error", p.error_estimate},
            {"petersson", cj(pet.value)},
            {"petersson_error", pet.error},
            {"rel_diff", rwm::rel_diff(p.value, pet.value)},
            {"per_edge", edges},
            {"cusp_height", p.cusp_height},
            {"metadata", {{"f", form_meta(f)}, {"g", form_meta(g)}, {"quadrature", quad_json(q)}}}};
  if (std::abs(g.weight - 1.0) < 1e-12) res["metadata"]["weight_one"] = true;
  return {res, rwm::sampler(f, 1e-300)};
}

Outcome cmd_petersson(const RunConfig& cfg) {
  const rwm::FourierForm f = as_form(need(cfg, "f"));
  const rwm::FourierForm g = as_form(get_or(cfg, "g", need(cfg, "f")));
  const rwm::QuadratureSpec q = pairing_quadrature(cfg, f);
  const rwm::ValueWithError pet = rwm::petersson_direct(f, g, rwm::sl2z_domain(), q);
  ojson res{{"command", "petersson"},
            {"petersson", cj(pet.value)},
            {"error", pet.error},
            {"metadata", {{"f", form_meta(f)}, {"g", form_meta(g)}, {"quadrature", quad_json(q)}}}};
  return {res, rwm::sampler(f, 1e-300)};
}

Outcome cmd_cocycle(const RunConfig& cfg) {
  const rwm::FourierForm g = as_form(need(cfg, "g"));
  const rwm::Mat2 gamma = as_matrix(need(cfg, "gamma"), "gamma");
  const cplx z = as_point(need(cfg, "z"), "z");
  const rwm::QuadratureSpec q = quadrature(cfg);
  const rwm::CocycleHandle c = rwm::make_cocycle(g, q);
  const rwm::ValueWithError v = rwm::cocycle_eval(c, gamma, z);
  ojson res{{"command", "cocycle"},
            {"gamma", matrix_json(gamma)},
            {"z", cj(z)},
            {"value", cj(v.value)},
            {"re", v.value.real()},
            {"im", v.value.imag()},
            {"err", v.error},
            {"metadata", {{"g", form_meta(g)}, {"r", c.r}, {"weight_one", c.weight_one()}, {"quadrature", quad_json(q)}}}};
  return {res, [c, gamma](cplx w) { return rwm::cocycle_eval(c, gamma, w).value; }};
}

Outcome cmd_aux(const RunConfig& cfg) {
  const rwm::FourierForm g = as_form(need(cfg, "g"));
  const cplx z = as_point(need(cfg, "z"), "z");
  const rwm::QuadratureSpec q = quadrature(cfg);
  const double r = 2.0 - g.weight;
  const rwm::ValueWithError v = rwm::aux_integral(g, r, z, q);
  ojson res{{"command", "aux"},
            {"z", cj(z)},
            {"value", cj(v.value)},
            {"err", v.error},
            {"dzbar", cj(rwm::aux_integral_dzbar(g, r, z))},
            {"metadata", {{"g", form_meta(g)}, {"r", r}, {"quadrature", quad_json(q)}}}};
  return {res, [g, r, q](cplx w) { return rwm::aux_integral(g, r, w, q).value; }};
}

rwm::MultiplierSystem multiplier_from(const std::string& spec, double r) {
  if (spec == "trivial") return rwm::MultiplierSystem::trivial(r);
  if (spec.rfind("eta:", 0) == 0) {
    const auto t = numbers(spec.substr(4));
    if (t.size() == 1) return rwm::MultiplierSystem::eta_power(t[0], r);
  }
  bad("multiplier must be 'trivial' or 'eta:t'");
}

Outcome cmd_eisenstein(const RunConfig& cfg) {
  const double r = as_double(get_or(cfg, "r", 0.0), "r");
  const cplx s = as_complex(get_or(cfg, "s", 2.0), "s");
  const cplx z = as_point(get_or(cfg, "z", "0,1"), "z");
  const int cutoff = as_int(get_or(cfg, "cutoff", 64), "cutoff");
  const std::string mult = get_or(cfg, "multiplier", "trivial").get<std::string>();
  const rwm::EisensteinPartial E(r, multiplier_from(mult, r), s, cutoff);
  const rwm::Sampler Es = [E](cplx w) { return E(w); };
  const cplx value = E(z);
  const cplx residual = -rwm::laplacian(Es, r, z) - s * (1.0 - s) * value;
  ojson res{{"command", "eisenstein"},
            {"r", r},
            {"s", cj(s)},
            {"z", cj(z)},
            {"cutoff", cutoff},
            {"value", cj(value)},
            {"eigen_residual", std::abs(residual)},
            {"metadata", {{"terms", E.terms()}, {"multiplier", mult}}}};
  return {res, Es};
}

Outcome cmd_decompose(const RunConfig& cfg) {
  const rwm::Mat2 gamma = as_matrix(need(cfg, "gamma"), "gamma");
  const rwm::Word w = rwm::decompose_st(gamma);
  ojson letters = ojson::array();
  for (rwm::Letter l : w) letters.push_back(rwm::to_string(l));
  ojson res{{"command", "decompose"},
            {"gamma", matrix_json(gamma)},
            {"word", letters},
            {"length", w.size()},
            {"product_matches", rwm::word_product(w) == gamma}};
  return {res, nullptr};
}

Outcome cmd_check(const RunConfig& cfg) {
  const std::string suite = get_or(cfg, "suite", "all").get<std::string>();
  const std::vector<rwm::CheckResult> results = rwm::run_suite(suite);
  ojson checks = ojson::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    ojson c{{"id", r.id}, {"description", r.description}, {"pass", r.passed}};
    if (cfg.timings) c["seconds"] = r.seconds;
    c["detail"] = ojson::parse(r.detail.dump());
    checks.push_back(c);
  }
  ojson res{{"command", "check"}, {"suite", suite}, {"pass", ok}, {"checks", checks}};
  return {res, nullptr, ok ? 0 : 1};
}

Outcome cmd_laplacian_check(const RunConfig& cfg) {
  const std::string which = get_or(cfg, "which", "factorization").get<std::string>();
  const cplx z = as_point(get_or(cfg, "z", "0.1,1.1"), "z");
  ojson res{{"command", "laplacian-check"}, {"which", which}, {"z", cj(z)}};
  if (which == "factorization") {
    const double r = as_double(get_or(cfg, "r", 0.5), "r");
    const rwm::Sampler F = [](cplx w) { return std::pow(w.imag(), 1.0 / 3.0) * std::cos(w.real()); };
    const cplx lhs = -rwm::laplacian(F, r, z);
    const cplx rhs = rwm::maass_lower(rwm::raised(F, r), r + 2, z) - (r / 2) * (1 + r / 2) * F(z);
    res["r"] = r;
    res["lhs"] = cj(lhs);
    res["rhs"] = cj(rhs);
    res["residual"] = std::abs(lhs - rhs);
    return {res, F};
  }
  if (which == "eigenvalue" || which == "lowering") {
    const rwm::FourierForm f = as_form(get_or(cfg, "f", "delta"));
    const double k = f.weight, r = 2.0 - k;
    const rwm::Sampler F = [f, k](cplx w) {
      return std::pow(w.imag(), k / 2) * rwm::eval_anywhere(f, w, 1e-300).value;
    };
    res["f"] = form_meta(f);
    if (which == "eigenvalue") {
      const double expected = (r / 2) * (1 - r / 2);
      const cplx ratio = -rwm::laplacian(F, k, z) / F(z);
      res["ratio"] = cj(ratio);
      res["expected"] = expected;
      res["rel_diff"] = std::abs(ratio - expected) / std::abs(expected);
    } else {
      res["lowered"] = cj(rwm::maass_lower(F, k, z));
    }
    return {res, F};
  }
  bad("which must be factorization, eigenvalue or lowering");
}

using Command = Outcome (*)(const RunConfig&);
const std::map<std::string, Command> kCommands{
    {"pair", cmd_pair},           {"petersson", cmd_petersson}, {"cocycle", cmd_cocycle},
    {"aux", cmd_aux},             {"eisenstein", cmd_eisenstein}, {"decompose", cmd_decompose},
    {"check", cmd_check},         {"laplacian-check", cmd_laplacian_check},
};

void dump_grid(const rwm::Sampler& F, const std::string& path) {
  std::ofstream out(path);
  if (!out) bad("cannot write '" + path + "'");
  out << "x,y,re,im\n";
  char buf[128];
  for (int iy = 0; iy <= 14; ++iy) {
    for (int ix = 0; ix <= 10; ++ix) {
      const cplx z(-0.5 + 0.1 * ix, 0.6 + 0.1 * iy);
      const cplx v = F(z);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", z.real(), z.imag(), v.real(), v.imag());
      out << buf;
    }
  }
}

void error_json(const std::string& kind, const std::string& message) {
  std::string out;
  emit(ojson{{"error", kind}, {"message", message}}, out, 0);
  std::cerr << out << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"real-weight modular forms, Eichler cocycles and their pairing"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, output, grid;
  std::map<std::string, std::string> quad_flags;
  bool timings = false;
  app.add_option("--config", config_path, "JSON config merged under the flags");
  app.add_option("--output", output, "write the JSON result here instead of stdout");
  app.add_option("--dump-grid", grid, "CSV samples x,y,re,im of the main function on a grid");
  app.add_flag("--timings", timings, "include wall-clock seconds in check output");
  for (const std::string k : {"abs-tol", "rel-tol", "Y", "max-subdivisions"}) {
    app.add_option("--" + k, quad_flags[k], "quadrature override");
  }

  std::map<std::string, std::map<std::string, std::string>> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, keys] : kParams) {
    CLI::App* sub = app.add_subcommand(name);
    subs[name] = sub;
    for (const std::string& k : keys) sub->add_option("--" + k, flags[name][k]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) cfg.command = name;
  }
  cfg.timings = timings;

  try {
    if (const char* env = std::getenv("EICHLER_TOL")) cfg.quad["abs_tol"] = std::string(env);
    if (!config_path.empty()) merge_config_file(cfg, config_path);
    CLI::App* sub = subs.at(cfg.command);
    for (const auto& [k, v] : flags[cfg.command]) {
      if (sub->count("--" + k) > 0) cfg.params[k] = v;
    }
    for (const auto& [k, v] : quad_flags) {
      if (app.count("--" + k) > 0) {
        std::string key = k;
        std::replace(key.begin(), key.end(), '-', '_');
        cfg.quad[key] = v;
      }
    }
    if (!output.empty()) cfg.output = output;
    if (!grid.empty()) cfg.dump_grid = grid;

    const Outcome res = kCommands.at(cfg.command)(cfg);
    if (!cfg.dump_grid.empty()) {
      if (!res.grid) bad("--dump-grid is not available for '" + cfg.command + "'");
      dump_grid(res.grid, cfg.dump_grid);
    }
    std::string text;
    emit(res.result, text, 0);
    text += '\n';
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output);
      if (!out) bad("cannot write '" + cfg.output + "'");
      out << text;
    }
    return res.exit_code;
  } catch (const rwm::Error& e) {
    error_json(std::string(rwm::to_string(e.kind())), e.what());
    return e.kind() == ErrorKind::ToleranceNotMet ? 3 : 2;
  } catch (const nlohmann::json::exception& e) {
    error_json("InvalidArgument", e.what());
    return 2;
  }
}
