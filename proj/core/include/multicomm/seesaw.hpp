#pragma once

#include <cstdint>

#include "multicomm/model.hpp"
#include "multicomm/sdp.hpp"

namespace multicomm {

struct SeesawConfig {
  int d = 2;                // state dimension for both senders
  int restarts = 100;
  int max_rounds = 300;
  double conv_tol = 1e-9;   // objective-change convergence threshold
  std::uint64_t seed = 1;
};

struct SeesawResult {
  double value = 0;         // recomputed from the returned strategy
  QuantumStrategy strategy;
  std::vector<double> trace;  // per-round objective of the winning restart
  int restart_index = 0;
};

/// Best-response update of one sender's states with the rest held fixed.
/// Dimension-bounded: top-eigenvector projector of each effective operator.
/// Distinguishability-bounded: one joint SDP coupling the sender's states
/// through the shared dominating operator. Returns the step objective.
double optimize_states_step(const Functional& f, QuantumStrategy& s, Side which);

/// Best-response POVM update (closed form for two outcomes, SDP otherwise).
/// Returns the step objective.
double optimize_measurement_step(const Functional& f, QuantumStrategy& s);

/// Alternating optimization with seeded Haar-random restarts; deterministic
/// for a fixed seed. Throws ModelError if every restart fails.
SeesawResult run_seesaw(const Functional& f, const SeesawConfig& cfg);

}  // namespace multicomm
