#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "multicomm/polytope.hpp"

using namespace multicomm;

namespace {

// Unit square 0 <= x,y <= 1 as an H-polytope.
HPolytope unit_square() {
  HPolytope h;
  h.ineqs = {{1, 1, 0}, {1, 0, 1}, {0, -1, 0}, {0, 0, -1}};
  return h;
}

std::set<RatVec> vertex_set(const VPolytope& v) {
  return {v.vertices.begin(), v.vertices.end()};
}

}  // namespace

TEST_SUITE("polytope") {
  TEST_CASE("square: facets to vertices") {
    auto v = facets_to_vertices(unit_square());
    CHECK(vertex_set(v) ==
          std::set<RatVec>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  }

  TEST_CASE("square: vertices to facets and back") {
    VPolytope v;
    v.vertices = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    auto h = vertices_to_facets(v);
    CHECK(h.eqs.empty());
    CHECK(h.ineqs.size() == 4);
    auto v2 = facets_to_vertices(h);
    CHECK(vertex_set(v2) == vertex_set(v));
  }

  TEST_CASE("lower-dimensional hulls produce equalities") {
    // A segment in the plane: affine hull is a line.
    VPolytope v;
    v.vertices = {{0, 0}, {1, 1}};
    auto h = vertices_to_facets(v);
    CHECK(h.eqs.size() == 1);
    auto v2 = facets_to_vertices(h);
    CHECK(vertex_set(v2) == vertex_set(v));
  }

  TEST_CASE("exact LP over the square") {
    auto h = unit_square();
    auto s = lp_max({1, 1}, h);
    CHECK(s.value == 2);
    CHECK(s.argmax == RatVec{1, 1});
    CHECK(lp_max({Rat(1, 3), -1}, h).value == Rat(1, 3));
    // Infeasible and unbounded systems throw.
    HPolytope empty;
    empty.ineqs = {{0, 1}, {-1, -1}};  // x <= 0 and -x <= -1
    CHECK_THROWS_AS(lp_max({1}, empty), InfeasibleError);
    HPolytope half;
    half.ineqs = {{0, -1}};  // x >= 0
    CHECK_THROWS_AS(lp_max({1}, half), UnboundedError);
  }

  TEST_CASE("convex hull membership") {
    std::vector<RatVec> pts = {{0, 0}, {1, 0}, {0, 1}};
    CHECK(in_convex_hull({Rat(1, 3), Rat(1, 3)}, pts));
    CHECK(in_convex_hull({0, 1}, pts));
    CHECK_FALSE(in_convex_hull({1, 1}, pts));
    CHECK_FALSE(in_convex_hull({Rat(-1, 10), 0}, pts));
  }

  TEST_CASE("extreme rays of the positive orthant") {
    RatMat b = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto rays = dd_extreme_rays(b);
    CHECK(rays.size() == 3);
    for (auto r : rays) {
      r = scale_to_coprime_integers(r);
      CHECK(std::count(r.begin(), r.end(), Rat(1)) == 1);
      CHECK(std::count(r.begin(), r.end(), Rat(0)) == 2);
    }
    // A non-pointed cone (free line) is rejected.
    CHECK_THROWS_AS(dd_extreme_rays(RatMat{{1, 0}}), PolytopeError);
  }

  TEST_CASE("canonical inequality form") {
    // 2x + 4y <= 6 scales to x + 2y <= 3.
    CHECK(canonical_inequality({6, 2, 4}, {}) == RatVec{3, 1, 2});
    // Reduction modulo the equality x + y = 1 eliminates one coordinate.
    RatMat eqs = {{1, 1, 1}};
    auto r1 = canonical_inequality({1, 1, 0}, eqs);   // x <= 1
    auto r2 = canonical_inequality({0, 0, -1}, eqs);  // -y <= 0, same facet
    CHECK(r1 == r2);
  }

  TEST_CASE("random 0/1 polytopes round-trip") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 8; ++trial) {
      const int dim = 3 + trial % 3;
      const int max_pts = 1 << dim;
      const int n_pts = std::min(4 + static_cast<int>(rng() % 8), max_pts);
      std::set<RatVec> pts;
      while (static_cast<int>(pts.size()) < n_pts) {
        RatVec p(dim);
        for (auto& x : p) x = Rat(static_cast<int>(rng() % 2));
        pts.insert(p);
      }
      VPolytope v;
      v.vertices.assign(pts.begin(), pts.end());
      auto h = vertices_to_facets(v);
      auto v2 = facets_to_vertices(h);
      // The round trip keeps exactly the extreme points of the input.
      std::set<RatVec> expect;
      for (std::size_t i = 0; i < v.vertices.size(); ++i) {
        auto others = v.vertices;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
        if (!in_convex_hull(v.vertices[i], others))
          expect.insert(v.vertices[i]);
      }
      CHECK(vertex_set(v2) == expect);
    }
  }

  TEST_CASE("text format round trips") {
    auto h = unit_square();
    h.eqs = {{1, 1, 1}};
    std::stringstream sh;
    write_h_polytope(sh, h);
    auto h2 = read_h_polytope(sh);
    CHECK(h2.ineqs == h.ineqs);
    CHECK(h2.eqs == h.eqs);

    VPolytope v;
    v.vertices = {{Rat(1, 2), Rat(1, 3)}, {1, 0}};
    std::stringstream sv;
    write_v_polytope(sv, v);
    auto v2 = read_v_polytope(sv);
    CHECK(v2.vertices == v.vertices);
  }
}
