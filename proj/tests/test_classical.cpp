#include <doctest.h>

#include <algorithm>
#include <set>

#include "multicomm/classical.hpp"
#include "multicomm/corpus.hpp"

using namespace multicomm;

namespace {

Scenario dim_scenario(int nx, int ny, int nz) {
  Scenario s;
  s.nx = nx;
  s.ny = ny;
  s.nz = nz;
  return s;
}

// Maximum of f over the enumerated vertices: the brute-force oracle that
// tries every decoder explicitly instead of the greedy per-cell choice.
Rat brute_force_max(const Functional& f) {
  auto verts = enum_vertices_dim(f.scenario);
  Rat best;
  bool first = true;
  for (const auto& v : verts.raw) {
    Rat val = evaluate_functional_exact(f, v.behavior);
    if (first || val > best) best = val;
    first = false;
  }
  return best;
}

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("raw vertex counts follow 2^nx * 2^ny * nz^4") {
    CHECK(enum_vertices_dim(dim_scenario(2, 2, 2)).raw.size() == 256);
    CHECK(enum_vertices_dim(dim_scenario(3, 2, 2)).raw.size() == 512);
    CHECK(enum_vertices_dim(dim_scenario(4, 2, 2)).raw.size() == 1024);
  }

  TEST_CASE("deduplicated vertices are distinct valid behaviors") {
    auto e = enum_vertices_dim(dim_scenario(2, 2, 2));
    std::set<std::vector<Rat>> seen(e.deduped.begin(), e.deduped.end());
    CHECK(seen.size() == e.deduped.size());
    Scenario s = dim_scenario(2, 2, 2);
    for (const auto& v : e.deduped) {
      REQUIRE(v.size() == s.behavior_size());
      for (int x = 1; x <= s.nx; ++x)
        for (int y = 1; y <= s.ny; ++y) {
          Rat col = 0;
          for (int z = 1; z <= s.nz; ++z) {
            const Rat& p = v[s.index(x, y, z)];
            CHECK(p >= 0);
            CHECK(p <= 1);
            col += p;
          }
          CHECK(col == 1);
        }
    }
  }

  TEST_CASE("greedy decoder matches brute force on small scenarios") {
    for (auto s : {dim_scenario(2, 2, 2), dim_scenario(3, 2, 2)}) {
      // A handful of deterministic coefficient patterns plus signs.
      for (int pattern = 0; pattern < 16; ++pattern) {
        Functional f;
        f.scenario = s;
        f.coeffs.assign(s.behavior_size(), 0);
        for (std::size_t i = 0; i < f.coeffs.size(); ++i)
          f.coeffs[i] = ((pattern >> (i % 4)) & 1) ? Rat(1) : Rat(-1);
        CHECK(classical_bound(f).value == brute_force_max(f));
      }
    }
  }

  TEST_CASE("classical bound returns a witness that attains it") {
    auto i1 = find_inequality("I1");
    REQUIRE(i1.has_value());
    auto b = classical_bound(i1->functional);
    CHECK(b.value == 2);
    CHECK(evaluate_functional_exact(i1->functional, b.witness.behavior) ==
          b.value);
  }

  TEST_CASE("classical bound agrees with exact LP over the vertex hull") {
    auto i1 = find_inequality("I1");
    REQUIRE(i1.has_value());
    const auto& f = i1->functional;
    auto facets = facet_enumerate_dim(f.scenario);
    RatVec obj;
    for (const auto& c : f.coeffs) obj.push_back(c);
    CHECK(lp_max(obj, facets).value == classical_bound(f).value);
  }

  TEST_CASE("distinguishability encoder vertices respect the cap") {
    auto enc = enum_encoder_vertices_dist(3, Rat(2, 3));
    CHECK(!enc.empty());
    for (const auto& e : enc) {
      CHECK(e.distinguishability() <= Rat(2, 3));
      for (const auto& row : e.table) {
        Rat sum = 0;
        for (const auto& p : row) {
          CHECK(p >= 0);
          sum += p;
        }
        CHECK(sum == 1);
      }
    }
    // D = 1 imposes nothing, so all 4 deterministic maps {1,2} -> {1,2}
    // appear among the (lifted) encoder vertices.
    auto free_enc = enum_encoder_vertices_dist(2, Rat(1));
    std::set<RatMat> tables;
    for (const auto& e : free_enc) tables.insert(e.table);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        RatMat det = {{Rat(1 - a), Rat(a)}, {Rat(1 - b), Rat(b)}};
        CHECK(tables.count(det) == 1);
      }
  }

  TEST_CASE("classical bound grows with the distinguishability cap") {
    auto i6 = find_inequality("I6");
    REQUIRE(i6.has_value());
    Functional f = i6->functional;
    Rat prev;
    bool first = true;
    for (Rat d : {Rat(1, 2), Rat(2, 3), Rat(1)}) {
      f.scenario.D1 = f.scenario.D2 = d;
      Rat v = classical_bound(f).value;
      if (!first) CHECK(v >= prev);
      prev = v;
      first = false;
    }
  }

  TEST_CASE("facet_check classifies valid, facet, and invalid functionals") {
    auto i1 = find_inequality("I1");
    REQUIRE(i1.has_value());
    auto fc = facet_check(i1->functional);
    CHECK(fc.valid);
    CHECK(fc.facet);
    CHECK(fc.tight_dim == fc.polytope_dim - 1);

    // Shrinking the rhs below the classical maximum breaks validity.
    Functional bad = i1->functional;
    bad.rhs.constant = 1;
    CHECK_FALSE(facet_check(bad).valid);

    // A slack rhs stays valid but is no longer tight on a facet.
    Functional slack = i1->functional;
    slack.rhs.constant = 100;
    auto sc = facet_check(slack);
    CHECK(sc.valid);
    CHECK_FALSE(sc.facet);
  }
}
