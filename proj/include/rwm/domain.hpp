#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rwm/automorphy.hpp"

namespace rwm {

struct BoundaryVertex {
  ExtPoint point;
  /// Index into GroupContext::cusps for cusp vertices, -1 otherwise.
  int cusp_index = -1;

  bool is_cusp() const { return point.infinite || point.value.imag() == 0.0; }
};

enum class EdgeGeometry { Vertical, Arc };

struct Edge {
  int start = 0;
  int end = 0;
  Mat2 pairing = Mat2::Identity();
  int partner = 0;
  EdgeGeometry geometry = EdgeGeometry::Vertical;
  /// Vertical: the line Re z = center. Arc: circle |z - center| = radius.
  double center = 0.0;
  double radius = 0.0;
};

struct FundamentalDomain {
  std::vector<BoundaryVertex> vertices;
  std::vector<Edge> edges;
  std::vector<int> representatives;
};

/// Closed Ford domain of SL2(Z) with the side pairing of the standard example:
/// vertices ∞, e^{2πi/3}, i, e^{2πi/3} + 1; edges 0..3 in that cyclic order.
FundamentalDomain sl2z_domain();

/// Geometric parameters (vertical line or circle) from the vertex positions.
void infer_edge_geometry(FundamentalDomain& dom);

/// Checks the side-pairing conditions; throws InvalidDomain with the failing condition.
void validate_side_pairing(const FundamentalDomain& dom, double tol = 1e-12);

/// SL2(Z) Ford domain membership: |Re z| <= 1/2 and |z| >= 1 (closed).
bool membership(cplx z, double tol = 1e-12);
/// Generic Ford-type test |Re z| <= width/2 and |j(g, z)| >= 1 over `gammas`.
/// SL2Z contexts without a list use the closed-form test; others throw UnsupportedGroup.
bool membership(cplx z, const GroupContext& ctx, const std::vector<Mat2>* gammas = nullptr,
                double tol = 1e-12);

/// Point on edge e at parameter u ∈ [0, 1]. Edges with a cusp endpoint run from
/// the finite vertex (u = 0) toward the cusp with Im = y0 e^{u/(1-u)}; u = 1 is the cusp.
ExtPoint edge_path(const FundamentalDomain& dom, int e, double u);
/// d/du edge_path, for finite points.
cplx edge_tangent(const FundamentalDomain& dom, int e, double u);
/// True when the finite-to-cusp orientation of edge_path is opposite to start -> end.
bool edge_reversed(const FundamentalDomain& dom, int e);

struct Reduction {
  Mat2 gamma;
  cplx w;
};

/// (gamma, w) with w = gamma z in the closed SL2(Z) Ford domain.
Reduction reduce_to_domain(cplx z);

/// Domain JSON with ∞ as {"cusp":"inf"}, finite points as [re, im].
FundamentalDomain domain_from_json(const nlohmann::json& j);
nlohmann::json domain_to_json(const FundamentalDomain& dom);

}  // namespace rwm
