#pragma once

#include <iosfwd>

#include "multicomm/linalg.hpp"

namespace multicomm {

/// One variable block of the problem: a size x size PSD matrix, Hermitian
/// complex or real symmetric. Complex blocks are embedded to real symmetric
/// form internally; callers state problems in natural complex form.
struct SdpBlock {
  std::size_t size = 0;
  bool complex = true;
};

/// One coefficient matrix acting on one block.
struct SdpTerm {
  std::size_t block = 0;
  ComplexMatrix a;  // Hermitian, sized to the block
};

/// sum_terms <a, X_block> (= rhs | <= rhs).
struct SdpConstraint {
  std::vector<SdpTerm> terms;
  double rhs = 0;
};

/// maximize sum <C_k, X_k> over PSD blocks X_k subject to the constraints.
struct SdpProblem {
  std::vector<SdpBlock> blocks;
  std::vector<SdpTerm> objective;
  std::vector<SdpConstraint> eqs;
  std::vector<SdpConstraint> ineqs;  // <= sense
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, MaxIter };

struct SdpSolution {
  std::vector<ComplexMatrix> blocks;
  double value = 0;       // primal objective <C, X>
  double dual_value = 0;  // dual objective b^T y
  SdpStatus status = SdpStatus::MaxIter;
  // Residuals recomputed from scratch on the returned blocks.
  double primal_residual = 0;  // max |<A_i,X> - b_i| (and ineq violation)
  double dual_residual = 0;
  double gap = 0;  // |value - dual_value| / (1 + |value|)
};

struct SdpOptions {
  double tol = 1e-8;         // target gap/residual
  double accept_tol = 1e-7;  // acceptance threshold for status Optimal
  int max_iter = 500;
};

const char* to_string(SdpStatus s);

/// Dense primal-dual interior-point solve (HKM direction, Mehrotra
/// predictor-corrector). Never returns a silently-wrong answer: when the
/// iteration cap is hit the status says so and residuals are reported.
SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts = {});

/// Plain-text problem dump (block sizes, then sparse entry triplets per
/// constraint) for debugging against external solvers.
void dump_sdp(std::ostream& os, const SdpProblem& p);

}  // namespace multicomm
