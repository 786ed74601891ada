#include <doctest.h>

#include <cmath>

#include "multicomm/model.hpp"

using namespace multicomm;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
  ComplexMatrix m(4, 4);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  m(3, 3) = d;
  return m;
}

ComplexMatrix basis_state(int k) {
  ComplexMatrix m(2, 2);
  m(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = 1;
  return m;
}

// Both senders send their input through the computational basis; the
// receiver outputs 2 iff both inputs were 2 (an AND gate).
QuantumStrategy and_strategy() {
  QuantumStrategy s;
  s.alice_states = {basis_state(0), basis_state(1)};
  s.bob_states = {basis_state(0), basis_state(1)};
  s.povm = {diag4(1, 1, 1, 0), diag4(0, 0, 0, 1)};
  return s;
}

Scenario scenario222() {
  Scenario s;
  s.nx = s.ny = s.nz = 2;
  return s;
}

}  // namespace

TEST_SUITE("model") {
  TEST_CASE("behavior indexing is row-major over (x, y, z)") {
    Scenario s;
    s.nx = 3;
    s.ny = 2;
    s.nz = 2;
    CHECK(s.index(1, 1, 1) == 0);
    CHECK(s.index(1, 1, 2) == 1);
    CHECK(s.index(1, 2, 1) == 2);
    CHECK(s.index(2, 1, 1) == 4);
    CHECK(s.index(3, 2, 2) == 11);
    CHECK(s.behavior_size() == 12);
  }

  TEST_CASE("functional evaluation and affine rhs") {
    Functional f;
    f.scenario = scenario222();
    f.coeffs.assign(f.scenario.behavior_size(), 0);
    f.coeffs[f.scenario.index(1, 1, 1)] = 2;
    f.coeffs[f.scenario.index(2, 2, 2)] = -1;
    f.rhs.constant = 1;
    f.rhs.coefD1 = 3;
    f.rhs.coefD2 = Rat(1, 2);

    Behavior b;
    b.scenario = f.scenario;
    b.p.assign(f.scenario.behavior_size(), 0.5);
    CHECK(evaluate_functional(f, b) == doctest::Approx(0.5));

    std::vector<Rat> exact(f.scenario.behavior_size(), Rat(1, 2));
    CHECK(evaluate_functional_exact(f, exact) == Rat(1, 2));

    CHECK(rhs_value(f, 1.0, 1.0) == doctest::Approx(4.5));
    CHECK(rhs_value_exact(f, Rat(2, 3), Rat(2, 3)) == Rat(10, 3));
  }

  TEST_CASE("behavior from a deterministic strategy") {
    auto b = behavior_from_strategy(scenario222(), and_strategy());
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        const double expect2 = (x == 2 && y == 2) ? 1.0 : 0.0;
        CHECK(b.at(x, y, 2) == doctest::Approx(expect2));
        CHECK(b.at(x, y, 1) == doctest::Approx(1.0 - expect2));
      }
    CHECK_NOTHROW(b.validate());
  }

  TEST_CASE("valid strategies report no issues") {
    CHECK(and_strategy().validation_issues().empty());
  }

  TEST_CASE("validation flags broken invariants") {
    auto s = and_strategy();
    s.alice_states[0](0, 0) = 2;  // trace 2, eigenvalue > 1
    auto issues = s.validation_issues();
    CHECK(!issues.empty());

    auto t = and_strategy();
    t.povm[0](0, 0) = 1.5;  // effect above the identity, sum != I
    issues = t.validation_issues();
    REQUIRE(!issues.empty());
    bool saw_norm = false;
    for (const auto& msg : issues)
      if (msg.find("normalized") != std::string::npos) saw_norm = true;
    CHECK(saw_norm);

    auto u = and_strategy();
    u.povm[0](3, 3) = -0.5;
    u.povm[1](3, 3) = 1.5;  // sum is identity but element 0 is not PSD
    issues = u.validation_issues();
    REQUIRE(!issues.empty());
    bool saw_psd = false;
    for (const auto& msg : issues)
      if (msg.find("positive semidefinite") != std::string::npos)
        saw_psd = true;
    CHECK(saw_psd);

    CHECK_THROWS_AS(behavior_from_strategy(scenario222(), u), ModelError);
    CHECK_NOTHROW(behavior_from_strategy_raw(scenario222(), u));
  }

  TEST_CASE("scenario validation") {
    Scenario s = scenario222();
    CHECK_NOTHROW(s.validate());
    s.nx = 0;
    CHECK_THROWS_AS(s.validate(), ModelError);
  }
}
