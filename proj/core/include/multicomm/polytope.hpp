#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>

#include "multicomm/rational.hpp"

namespace multicomm {

struct PolytopeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnboundedError : PolytopeError {
  using PolytopeError::PolytopeError;
};
struct InfeasibleError : PolytopeError {
  using PolytopeError::PolytopeError;
};

/// H-representation: inequality rows [b, a1..ad] mean a.x <= b; equality rows
/// mean a.x == b. All data exact rationals.
struct HPolytope {
  RatMat ineqs;
  RatMat eqs;
  std::size_t dim() const {
    if (!ineqs.empty()) return ineqs[0].size() - 1;
    if (!eqs.empty()) return eqs[0].size() - 1;
    return 0;
  }
};

/// V-representation: a list of vertices.
struct VPolytope {
  std::vector<RatVec> vertices;
};

/// Extreme rays of the pointed cone {u : B u >= 0}, exact double description.
/// Throws PolytopeError if the cone is not pointed (rank(B) < dim).
std::vector<RatVec> dd_extreme_rays(const RatMat& B);

/// All vertices of a bounded H-polytope, exactly.
/// Throws UnboundedError / InfeasibleError.
VPolytope facets_to_vertices(const HPolytope& h);

/// Irredundant facet list (plus affine-hull equalities) of conv(V), each facet
/// in canonical coprime-integer form reduced modulo the hull equalities.
HPolytope vertices_to_facets(const VPolytope& v);

struct LpSolution {
  Rat value;
  RatVec argmax;
};

/// Exact LP: maximize objective . x over the H-polytope.
/// Throws InfeasibleError / UnboundedError.
LpSolution lp_max(const RatVec& objective, const HPolytope& h);

/// True iff p lies in conv(points) (exact feasibility LP).
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points);

/// Canonical form of an inequality row [b, a...]: reduced modulo the given
/// equality rows (also [b, a...] layout), then scaled to coprime integers.
RatVec canonical_inequality(const RatVec& row, const RatMat& eqs);

/// Text format: one row per line, whitespace-separated integers, first column
/// the constant term; '#' starts a comment. V-files carry a common-denominator
/// first column: row [q, p1..pd] is the vertex (p1/q, ..., pd/q).
void write_h_polytope(std::ostream& os, const HPolytope& h);
HPolytope read_h_polytope(std::istream& is);
void write_v_polytope(std::ostream& os, const VPolytope& v);
VPolytope read_v_polytope(std::istream& is);

}  // namespace multicomm
