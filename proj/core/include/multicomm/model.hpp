#pragma once

#include <string>
#include <vector>

#include "multicomm/linalg.hpp"
#include "multicomm/rational.hpp"

namespace multicomm {

struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ConstraintType { Dimension, Distinguishability };

/// Two senders (inputs x in 1..n_x and y in 1..n_y), one receiver with
/// outcome z in 1..n_z, under either a message/state-dimension bound or a
/// distinguishability bound with uniform priors.
struct Scenario {
  int nx = 0;
  int ny = 0;
  int nz = 0;
  ConstraintType constraint = ConstraintType::Dimension;
  int d = 2;          // dimension bound (states); classical messages are binary
  Rat D1 = 1;         // distinguishability caps (uniform priors 1/nx, 1/ny)
  Rat D2 = 1;

  void validate() const;
  std::size_t behavior_size() const {
    return static_cast<std::size_t>(nx) * ny * nz;
  }
  /// Flat index of p(z|x,y); inputs are 1-based.
  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(x - 1) * ny + (y - 1)) * nz + (z - 1);
  }
};

/// Affine right-hand side const + coefD1*D1 + coefD2*D2.
struct AffineRhs {
  Rat constant = 0;
  Rat coefD1 = 0;
  Rat coefD2 = 0;
};

/// A linear functional sum c(x,y,z) p(z|x,y) with an affine bound.
struct Functional {
  Scenario scenario;
  std::vector<Rat> coeffs;  // indexed by scenario.index(x,y,z)
  AffineRhs rhs;
  std::string name;

  Rat coeff(int x, int y, int z) const { return coeffs[scenario.index(x, y, z)]; }
  void validate() const;
};

/// Conditional probability table p(z|x,y), floating point.
struct Behavior {
  Scenario scenario;
  std::vector<double> p;  // indexed by scenario.index(x,y,z)

  double at(int x, int y, int z) const { return p[scenario.index(x, y, z)]; }
  void validate() const;  // entries in [0,1], columns normalized (1e-9)
};

/// Quantum strategy: states per input for each sender, joint-space POVM.
struct QuantumStrategy {
  std::vector<ComplexMatrix> alice_states;  // dA x dA density matrices
  std::vector<ComplexMatrix> bob_states;    // dB x dB
  std::vector<ComplexMatrix> povm;          // (dA*dB) square, indexed by z-1

  std::size_t dim_a() const { return alice_states.empty() ? 0 : alice_states[0].rows(); }
  std::size_t dim_b() const { return bob_states.empty() ? 0 : bob_states[0].rows(); }
  /// Human-readable invariant violations (empty when valid within tolerance).
  std::vector<std::string> validation_issues() const;
};

double evaluate_functional(const Functional& f, const Behavior& b);
Rat evaluate_functional_exact(const Functional& f, const std::vector<Rat>& behavior);

double rhs_value(const Functional& f, double D1, double D2);
Rat rhs_value_exact(const Functional& f, const Rat& D1, const Rat& D2);

/// p(z|x,y) = Tr[(rho_x (x) sigma_y) M_z]. Throws ModelError when the
/// strategy violates its invariants beyond tolerance.
Behavior behavior_from_strategy(const Scenario& s, const QuantumStrategy& strat);

/// Same computation without validation, for strategy files that are known to
/// be inconsistent and must still be evaluated as printed.
Behavior behavior_from_strategy_raw(const Scenario& s, const QuantumStrategy& strat);

}  // namespace multicomm
