#include "multicomm/model.hpp"

#include <cmath>
#include <sstream>

namespace multicomm {

void Scenario::validate() const {
  if (nx < 2 || ny < 2 || nz < 2)
    throw ModelError("scenario requires nx, ny >= 2 and nz >= 2");
  if (constraint == ConstraintType::Dimension) {
    if (d < 2) throw ModelError("dimension bound must be >= 2");
  } else {
    if (D1 < Rat(1, nx) || D1 > 1 || D2 < Rat(1, ny) || D2 > 1)
      throw ModelError("distinguishability bounds must lie in [1/n, 1]");
  }
}

void Functional::validate() const {
  scenario.validate();
  if (coeffs.size() != scenario.behavior_size())
    throw ModelError("coefficient tensor does not match scenario shape");
  if (scenario.constraint == ConstraintType::Dimension &&
      (rhs.coefD1 != 0 || rhs.coefD2 != 0))
    throw ModelError("dimension-bounded rhs must not depend on D1/D2");
}

void Behavior::validate() const {
  if (p.size() != scenario.behavior_size())
    throw ModelError("behavior table does not match scenario shape");
  for (double v : p)
    if (v < -kBehaviorTol || v > 1 + kBehaviorTol)
      throw ModelError("behavior entry outside [0,1]");
  for (int x = 1; x <= scenario.nx; ++x)
    for (int y = 1; y <= scenario.ny; ++y) {
      double s = 0;
      for (int z = 1; z <= scenario.nz; ++z) s += at(x, y, z);
      if (std::abs(s - 1.0) > kBehaviorTol)
        throw ModelError("behavior column is not normalized");
    }
}

std::vector<std::string> QuantumStrategy::validation_issues() const {
  std::vector<std::string> issues;
  auto check_states = [&](const std::vector<ComplexMatrix>& states,
                          const char* who) {
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& r = states[i];
      std::ostringstream tag;
      tag << who << " state " << (i + 1);
      if (r.rows() != r.cols() || r.rows() == 0) {
        issues.push_back(tag.str() + ": not square");
        continue;
      }
      if (!r.is_hermitian(kStrategyTol))
        issues.push_back(tag.str() + ": not Hermitian");
      const double tr = r.trace().real();
      if (std::abs(tr - 1.0) > kStrategyTol) {
        std::ostringstream msg;
        msg << tag.str() << ": trace is " << tr << ", expected 1 (state not normalized)";
        issues.push_back(msg.str());
      }
      if (r.is_hermitian(1e-6)) {
        const auto spec = hermitian_eig(r);
        if (!spec.eigenvalues.empty() && spec.eigenvalues.front() < -kStrategyTol)
          issues.push_back(tag.str() + ": not positive semidefinite");
      }
    }
  };
  check_states(alice_states, "Alice");
  check_states(bob_states, "Bob");

  const std::size_t dj = dim_a() * dim_b();
  ComplexMatrix sum(dj, dj);
  for (std::size_t z = 0; z < povm.size(); ++z) {
    const auto& m = povm[z];
    std::ostringstream tag;
    tag << "POVM element " << (z + 1);
    if (m.rows() != dj || m.cols() != dj) {
      issues.push_back(tag.str() + ": wrong size for the joint space");
      continue;
    }
    if (!m.is_hermitian(kStrategyTol))
      issues.push_back(tag.str() + ": not Hermitian");
    if (m.is_hermitian(1e-6)) {
      const auto spec = hermitian_eig(m);
      if (!spec.eigenvalues.empty() && spec.eigenvalues.front() < -kStrategyTol)
        issues.push_back(tag.str() + ": not positive semidefinite");
      if (!spec.eigenvalues.empty() &&
          spec.eigenvalues.back() > 1.0 + kStrategyTol)
        issues.push_back(tag.str() +
                         ": exceeds the identity (effect not normalized)");
    }
    sum += m;
  }
  sum -= ComplexMatrix::identity(dj);
  if (sum.max_abs() > kStrategyTol)
    issues.push_back("POVM elements do not sum to the identity");
  return issues;
}

double evaluate_functional(const Functional& f, const Behavior& b) {
  if (b.p.size() != f.coeffs.size())
    throw ModelError("evaluate_functional: shape mismatch");
  double s = 0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    s += f.coeffs[i].get_d() * b.p[i];
  return s;
}

Rat evaluate_functional_exact(const Functional& f,
                              const std::vector<Rat>& behavior) {
  if (behavior.size() != f.coeffs.size())
    throw ModelError("evaluate_functional_exact: shape mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    s += f.coeffs[i] * behavior[i];
  s.canonicalize();
  return s;
}

double rhs_value(const Functional& f, double D1, double D2) {
  return f.rhs.constant.get_d() + f.rhs.coefD1.get_d() * D1 +
         f.rhs.coefD2.get_d() * D2;
}

Rat rhs_value_exact(const Functional& f, const Rat& D1, const Rat& D2) {
  Rat s = f.rhs.constant + f.rhs.coefD1 * D1 + f.rhs.coefD2 * D2;
  s.canonicalize();
  return s;
}

namespace {

Behavior compute_behavior(const Scenario& s, const QuantumStrategy& strat) {
  if (static_cast<int>(strat.alice_states.size()) != s.nx ||
      static_cast<int>(strat.bob_states.size()) != s.ny ||
      static_cast<int>(strat.povm.size()) != s.nz)
    throw ModelError("strategy shape does not match scenario");
  Behavior b;
  b.scenario = s;
  b.p.assign(s.behavior_size(), 0.0);
  for (int x = 1; x <= s.nx; ++x)
    for (int y = 1; y <= s.ny; ++y) {
      const ComplexMatrix joint =
          kron(strat.alice_states[x - 1], strat.bob_states[y - 1]);
      for (int z = 1; z <= s.nz; ++z)
        b.p[s.index(x, y, z)] = (joint * strat.povm[z - 1]).trace().real();
    }
  return b;
}

}  // namespace

Behavior behavior_from_strategy(const Scenario& s, const QuantumStrategy& strat) {
  const auto issues = strat.validation_issues();
  if (!issues.empty()) {
    std::string msg = "invalid quantum strategy:";
    for (const auto& i : issues) msg += "\n  - " + i;
    throw ModelError(msg);
  }
  Behavior b = compute_behavior(s, strat);
  b.validate();
  return b;
}

Behavior behavior_from_strategy_raw(const Scenario& s,
                                    const QuantumStrategy& strat) {
  return compute_behavior(s, strat);
}

}  // namespace multicomm
