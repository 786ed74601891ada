#pragma once

#include "multicomm/model.hpp"
#include "multicomm/polytope.hpp"

namespace multicomm {

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Row-stochastic encoding table p(m|x), exact rationals.
struct Encoder {
  RatMat table;  // rows x, columns m
  /// Distinguishability value sum_m max_x q_x p(m|x) with uniform priors.
  Rat distinguishability() const;
};

/// Deterministic decoding map (m,n) -> z, stored row-major over (m,n).
struct Decoder {
  int n_m = 0;
  int n_n = 0;
  std::vector<int> choice;  // 1-based outcomes, size n_m*n_n
  int at(int m, int n) const { return choice[(m - 1) * n_n + (n - 1)]; }
};

/// A classical extreme-point behavior with the strategy that produced it.
struct ClassicalVertex {
  std::vector<Rat> behavior;  // indexed by Scenario::index
  Encoder encoder_a;
  Encoder encoder_b;
  Decoder decoder;
};

struct VertexEnumeration {
  std::vector<ClassicalVertex> raw;        // full strategy product
  std::vector<std::vector<Rat>> deduped;   // distinct behaviors, sorted
};

/// All deterministic (encoderA, encoderB, decoder) behaviors for a
/// dimension-bounded scenario with binary messages per sender.
/// Raw count = 2^nx * 2^ny * nz^4.
VertexEnumeration enum_vertices_dim(const Scenario& s);

/// Vertices of the single-sender encoder polytope under a distinguishability
/// cap D (uniform priors over n_inputs, message alphabet 2^(n_inputs-1)).
std::vector<Encoder> enum_encoder_vertices_dist(int n_inputs, const Rat& D);

struct ClassicalBound {
  Rat value;
  ClassicalVertex witness;
};

/// Exact maximum of f over classical behaviors for f's scenario (greedy
/// decoder over all encoder-vertex pairs).
ClassicalBound classical_bound(const Functional& f);

struct FacetCheck {
  bool valid = false;       // every vertex satisfies f <= rhs
  bool facet = false;       // valid and tight set spans a facet
  int tight_dim = -1;       // affine dimension of the tight vertex set
  int polytope_dim = -1;
};

/// Validity and tightness of f against the classical polytope of its
/// scenario (distinguishability scenarios use the D values in f.scenario).
FacetCheck facet_check(const Functional& f);

/// Full facet enumeration of the deduplicated classical polytope
/// (dimension-bounded scenarios up to (4,3,2) scale).
HPolytope facet_enumerate_dim(const Scenario& s);

}  // namespace multicomm
