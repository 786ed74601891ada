#pragma once

// Numeric tolerances used across the library. Kept in one place so the
// acceptance thresholds and the implementation can never drift apart.

namespace multicomm {

// Hermiticity check for inputs to the eigensolver and strategy validation.
inline constexpr double kHermitianTol = 1e-10;

// Residual bound for eigendecomposition reconstruction ||A - V L V*||_max.
inline constexpr double kReconstructTol = 1e-10;

// Unit-norm tolerance for eigenvectors and pure states.
inline constexpr double kUnitNormTol = 1e-12;

// Entrywise tolerance for behaviors (probabilities, normalization).
inline constexpr double kBehaviorTol = 1e-9;

// Tolerance for POVM completeness and positivity of strategy operators.
inline constexpr double kStrategyTol = 1e-9;

}  // namespace multicomm
