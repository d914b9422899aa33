#include "rwm/domain.hpp"

#include <cmath>
#include <set>

namespace rwm {

namespace {

const cplx kRho{-0.5, std::sqrt(3.0) / 2.0};

bool same_point(const ExtPoint& a, const ExtPoint& b, double tol) {
  if (a.infinite || b.infinite) return a.infinite && b.infinite;
  return std::abs(a.value - b.value) <= tol * std::max(1.0, std::abs(b.value));
}

bool on_geometry(const Edge& e, const ExtPoint& p, double tol) {
  if (p.infinite) return e.geometry == EdgeGeometry::Vertical;
  if (e.geometry == EdgeGeometry::Vertical) return std::abs(p.value.real() - e.center) <= tol;
  return std::abs(std::abs(p.value - e.center) - e.radius) <= tol * std::max(1.0, e.radius);
}

}  // namespace

FundamentalDomain sl2z_domain() {
  FundamentalDomain dom;
  dom.vertices = {
      {ExtPoint::infinity(), 0},
      {ExtPoint::finite(kRho), -1},
      {ExtPoint::finite(kI), -1},
      {ExtPoint::finite(kRho + 1.0), -1},
  };
  // edges [A1,A2], [A2,A3], [A3,A4], [A4,A1]; T pairs the verticals, S the arcs
  dom.edges = {
      {0, 1, gen::T(), 3},
      {1, 2, gen::S(), 2},
      {2, 3, inverse(gen::S()), 1},
      {3, 0, gen::T_inverse(), 0},
  };
  dom.representatives = {0, 1};
  infer_edge_geometry(dom);
  return dom;
}

void infer_edge_geometry(FundamentalDomain& dom) {
  const int nv = static_cast<int>(dom.vertices.size());
  for (Edge& e : dom.edges) {
    if (e.start < 0 || e.start >= nv || e.end < 0 || e.end >= nv) {
      fail(ErrorKind::InvalidDomain, "edge vertex index out of range");
    }
    const ExtPoint& a = dom.vertices[e.start].point;
    const ExtPoint& b = dom.vertices[e.end].point;
    if (a.infinite && b.infinite) fail(ErrorKind::InvalidDomain, "edge joins ∞ to itself");
    if (a.infinite || b.infinite) {
      e.geometry = EdgeGeometry::Vertical;
      e.center = (a.infinite ? b : a).value.real();
      e.radius = 0.0;
      continue;
    }
    const cplx p = a.value, q = b.value;
    if (std::abs(p.real() - q.real()) < 1e-14) {
      e.geometry = EdgeGeometry::Vertical;
      e.center = p.real();
      e.radius = 0.0;
    } else {
      e.geometry = EdgeGeometry::Arc;
      e.center = (std::norm(p) - std::norm(q)) / (2.0 * (p.real() - q.real()));
      e.radius = std::abs(p - e.center);
    }
  }
}

void validate_side_pairing(const FundamentalDomain& dom, double tol) {
  const int ne = static_cast<int>(dom.edges.size());
  if (ne == 0 || ne % 2 != 0) fail(ErrorKind::InvalidDomain, "need an even number of edges");
  for (int i = 0; i < ne; ++i) {
    const Edge& e = dom.edges[i];
    if (e.partner < 0 || e.partner >= ne) fail(ErrorKind::InvalidDomain, "partner out of range");
    if (e.partner == i) fail(ErrorKind::InvalidDomain, "tau has a fixed point");
    const Edge& p = dom.edges[e.partner];
    if (p.partner != i) fail(ErrorKind::InvalidDomain, "tau is not an involution");
    if (!is_unimodular(e.pairing)) fail(ErrorKind::InvalidDomain, "pairing not in SL2(Z)");
    if (p.pairing != inverse(e.pairing)) {
      fail(ErrorKind::InvalidDomain, "alpha_tau(i) != alpha_i^-1");
    }
    const ExtPoint a0 = mobius(e.pairing, dom.vertices[e.start].point);
    const ExtPoint a1 = mobius(e.pairing, dom.vertices[e.end].point);
    if (!same_point(a0, dom.vertices[p.end].point, tol) ||
        !same_point(a1, dom.vertices[p.start].point, tol)) {
      fail(ErrorKind::InvalidDomain, "alpha_i does not map the edge endpoints to its partner's");
    }
    for (double u : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const ExtPoint z = edge_path(dom, i, u);
      if (!on_geometry(e, z, tol)) fail(ErrorKind::InvalidDomain, "edge path leaves its geodesic");
      if (!on_geometry(p, mobius(e.pairing, z), tol)) {
        fail(ErrorKind::InvalidDomain, "alpha_i does not map the edge onto its partner's geodesic");
      }
    }
  }
  std::set<int> orbits;
  for (int r : dom.representatives) {
    if (r < 0 || r >= ne) fail(ErrorKind::InvalidDomain, "representative out of range");
    const int key = std::min(r, dom.edges[r].partner);
    if (!orbits.insert(key).second) fail(ErrorKind::InvalidDomain, "two representatives share an orbit");
  }
  if (static_cast<int>(orbits.size()) * 2 != ne) {
    fail(ErrorKind::InvalidDomain, "representatives do not cover every tau orbit");
  }
}

bool membership(cplx z, double tol) {
  return std::abs(z.real()) <= 0.5 + tol && std::norm(z) >= 1.0 - tol;
}

bool membership(cplx z, const GroupContext& ctx, const std::vector<Mat2>* gammas, double tol) {
  if (gammas == nullptr) {
    if (ctx.name == "SL2Z") return membership(z, tol);
    fail(ErrorKind::UnsupportedGroup, "generic membership needs a list of group elements");
  }
  const double width = ctx.cusps.empty() ? 1.0 : ctx.cusps.front().width;
  if (std::abs(z.real()) > width / 2 + tol) return false;
  for (const Mat2& g : *gammas) {
    if (g(1, 0) == 0) continue;
    if (std::abs(j_factor(g, z)) < 1.0 - tol) return false;
  }
  return true;
}

bool edge_reversed(const FundamentalDomain& dom, int e) {
  return dom.vertices.at(dom.edges.at(e).start).point.infinite;
}

namespace {

struct EdgeEnds {
  cplx from;
  cplx to;
  bool to_infinity;
};

EdgeEnds ends(const FundamentalDomain& dom, int e) {
  const Edge& ed = dom.edges.at(e);
  const ExtPoint& a = dom.vertices.at(ed.start).point;
  const ExtPoint& b = dom.vertices.at(ed.end).point;
  if (a.infinite) return {b.value, {}, true};
  if (b.infinite) return {a.value, {}, true};
  return {a.value, b.value, false};
}

}  // namespace

ExtPoint edge_path(const FundamentalDomain& dom, int e, double u) {
  const Edge& ed = dom.edges.at(e);
  const EdgeEnds en = ends(dom, e);
  if (en.to_infinity) {
    if (u >= 1.0) return ExtPoint::infinity();
    return ExtPoint::finite({en.from.real(), en.from.imag() * std::exp(u / (1.0 - u))});
  }
  if (ed.geometry == EdgeGeometry::Vertical) {
    return ExtPoint::finite(
        {en.from.real(), en.from.imag() + u * (en.to.imag() - en.from.imag())});
  }
  const double t0 = std::arg(en.from - ed.center), t1 = std::arg(en.to - ed.center);
  return ExtPoint::finite(ed.center + std::polar(ed.radius, t0 + u * (t1 - t0)));
}

cplx edge_tangent(const FundamentalDomain& dom, int e, double u) {
  const Edge& ed = dom.edges.at(e);
  const EdgeEnds en = ends(dom, e);
  if (en.to_infinity) {
    const double w = 1.0 - u;
    return kI * en.from.imag() * std::exp(u / w) / (w * w);
  }
  if (ed.geometry == EdgeGeometry::Vertical) return kI * (en.to.imag() - en.from.imag());
  const double t0 = std::arg(en.from - ed.center), t1 = std::arg(en.to - ed.center);
  const double t = t0 + u * (t1 - t0);
  return kI * std::polar(ed.radius, t) * (t1 - t0);
}

Reduction reduce_to_domain(cplx z) {
  if (!(z.imag() > 0.0)) fail(ErrorKind::InvalidArgument, "reduce_to_domain needs Im z > 0");
  Mat2 g = gen::identity();
  cplx w = z;
  for (int step = 0; step < 10000; ++step) {
    const double n = std::floor(w.real() + 0.5);
    if (n != 0.0) {
      w -= n;
      const auto k = static_cast<std::int64_t>(n);
      g = mat2(1, -k, 0, 1) * g;
    }
    if (std::norm(w) < 1.0 - 1e-15) {
      w = -1.0 / w;
      g = gen::S() * g;
    } else {
      return {g, w};
    }
  }
  fail(ErrorKind::NoConvergence, "reduce_to_domain did not terminate");
}

namespace {

ExtPoint point_from_json(const nlohmann::json& j) {
  if (j.is_object()) {
    if (j.value("cusp", std::string()) == "inf") return ExtPoint::infinity();
    fail(ErrorKind::InvalidDomain, "unknown vertex object");
  }
  if (j.is_array() && j.size() == 2) return ExtPoint::finite({j[0].get<double>(), j[1].get<double>()});
  fail(ErrorKind::InvalidDomain, "vertex must be [re, im] or {\"cusp\":\"inf\"}");
}

}  // namespace

FundamentalDomain domain_from_json(const nlohmann::json& j) {
  FundamentalDomain dom;
  try {
    for (const auto& v : j.at("vertices")) {
      BoundaryVertex bv{point_from_json(v), -1};
      if (bv.point.infinite) bv.cusp_index = 0;
      dom.vertices.push_back(bv);
    }
    for (const auto& e : j.at("edges")) {
      Edge ed;
      ed.start = e.at("start").get<int>();
      ed.end = e.at("end").get<int>();
      ed.partner = e.at("partner").get<int>();
      const auto& m = e.at("pairing");
      ed.pairing = mat2(m.at(0).at(0).get<std::int64_t>(), m.at(0).at(1).get<std::int64_t>(),
                        m.at(1).at(0).get<std::int64_t>(), m.at(1).at(1).get<std::int64_t>());
      dom.edges.push_back(ed);
    }
    dom.representatives = j.at("representatives").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& ex) {
    fail(ErrorKind::InvalidDomain, ex.what());
  }
  infer_edge_geometry(dom);
  validate_side_pairing(dom);
  return dom;
}

nlohmann::json domain_to_json(const FundamentalDomain& dom) {
  nlohmann::json out;
  out["vertices"] = nlohmann::json::array();
  for (const auto& v : dom.vertices) {
    if (v.point.infinite) {
      out["vertices"].push_back({{"cusp", "inf"}});
    } else {
      out["vertices"].push_back({v.point.value.real(), v.point.value.imag()});
    }
  }
  out["edges"] = nlohmann::json::array();
  for (const auto& e : dom.edges) {
    out["edges"].push_back({{"start", e.start},
                            {"end", e.end},
                            {"pairing",
                             {{e.pairing(0, 0), e.pairing(0, 1)}, {e.pairing(1, 0), e.pairing(1, 1)}}},
                            {"partner", e.partner}});
  }
  out["representatives"] = dom.representatives;
  return out;
}

}  // namespace rwm
