#include "multicomm/seesaw.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace multicomm {

namespace {

ComplexMatrix symmetrized(ComplexMatrix a) {
  const std::size_t n = a.rows();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return s;
}

/// Effective operators F_i for the states of one sender:
/// objective = sum_i Tr(state_i F_i) with the other pieces fixed.
std::vector<ComplexMatrix> effective_operators(const Functional& f,
                                               const QuantumStrategy& s,
                                               Side which) {
  const Scenario& sc = f.scenario;
  const std::size_t dA = s.dim_a();
  const std::size_t dB = s.dim_b();
  std::vector<ComplexMatrix> out;
  if (which == Side::A) {
    for (int x = 1; x <= sc.nx; ++x) {
      ComplexMatrix F(dA, dA);
      for (int y = 1; y <= sc.ny; ++y)
        for (int z = 1; z <= sc.nz; ++z) {
          const Rat& c = f.coeffs[sc.index(x, y, z)];
          if (c == 0) continue;
          ComplexMatrix t = partial_trace(
              kron(ComplexMatrix::identity(dA), s.bob_states[y - 1]) *
                  s.povm[z - 1],
              dA, dB, Side::B);
          t *= cplx(c.get_d(), 0);
          F += t;
        }
      out.push_back(symmetrized(F));
    }
  } else {
    for (int y = 1; y <= sc.ny; ++y) {
      ComplexMatrix F(dB, dB);
      for (int x = 1; x <= sc.nx; ++x)
        for (int z = 1; z <= sc.nz; ++z) {
          const Rat& c = f.coeffs[sc.index(x, y, z)];
          if (c == 0) continue;
          ComplexMatrix t = partial_trace(
              kron(s.alice_states[x - 1], ComplexMatrix::identity(dB)) *
                  s.povm[z - 1],
              dA, dB, Side::A);
          t *= cplx(c.get_d(), 0);
          F += t;
        }
      out.push_back(symmetrized(F));
    }
  }
  return out;
}

/// Hermitian basis elements (e_ii; symmetric and antisymmetric pairs) used to
/// express entrywise operator equalities as scalar SDP constraints.
std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      ComplexMatrix e(n, n);
      e(i, j) += 1.0;
      e(j, i) = std::conj(e(i, j));
      if (i == j) e(i, i) = 1.0;
      basis.push_back(e);
      if (i != j) {
        ComplexMatrix k(n, n);
        k(i, j) = cplx(0, 1);
        k(j, i) = cplx(0, -1);
        basis.push_back(k);
      }
    }
  return basis;
}

double states_step_dim(const Functional& f, QuantumStrategy& s, Side which) {
  const auto F = effective_operators(f, s, which);
  auto& states = (which == Side::A) ? s.alice_states : s.bob_states;
  double value = 0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    const Spectrum spec = hermitian_eig(F[i]);
    const std::size_t n = F[i].rows();
    const std::size_t top = n - 1;  // eigenvalues ascending
    ComplexMatrix proj(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        proj(a, b) = spec.eigenvectors(a, top) *
                     std::conj(spec.eigenvectors(b, top));
    states[i] = proj;
    value += spec.eigenvalues[top];
  }
  return value;
}

double states_step_dist(const Functional& f, QuantumStrategy& s, Side which) {
  const auto F = effective_operators(f, s, which);
  const int n_in = static_cast<int>(F.size());
  const std::size_t d = F[0].rows();
  const Rat cap = (which == Side::A) ? f.scenario.D1 : f.scenario.D2;

  // Blocks: states 0..n_in-1, dominating operator (n_in), slack operators
  // (n_in+1 .. 2n_in) with  dominator - state/n = slack.
  SdpProblem p;
  for (int i = 0; i < 2 * n_in + 1; ++i) p.blocks.push_back({d, true});
  const std::size_t theta = n_in;
  for (int i = 0; i < n_in; ++i)
    p.objective.push_back({static_cast<std::size_t>(i), F[i]});
  for (int i = 0; i < n_in; ++i) {
    SdpConstraint tr;
    tr.terms.push_back({static_cast<std::size_t>(i), ComplexMatrix::identity(d)});
    tr.rhs = 1.0;
    p.eqs.push_back(std::move(tr));
  }
  const auto basis = hermitian_basis(d);
  for (int i = 0; i < n_in; ++i)
    for (const auto& e : basis) {
      SdpConstraint c;
      c.terms.push_back({theta, e});
      ComplexMatrix scaled = e;
      scaled *= cplx(-1.0 / n_in, 0);
      c.terms.push_back({static_cast<std::size_t>(i), scaled});
      ComplexMatrix neg = e;
      neg *= cplx(-1.0, 0);
      c.terms.push_back({theta + 1 + i, neg});
      c.rhs = 0;
      p.eqs.push_back(std::move(c));
    }
  SdpConstraint trcap;
  trcap.terms.push_back({theta, ComplexMatrix::identity(d)});
  trcap.rhs = cap.get_d();
  p.ineqs.push_back(std::move(trcap));

  const SdpSolution sol = solve_sdp(p);
  if (sol.status != SdpStatus::Optimal)
    throw ModelError(std::string("state-step SDP failed: ") +
                     to_string(sol.status));
  auto& states = (which == Side::A) ? s.alice_states : s.bob_states;
  for (int i = 0; i < n_in; ++i) states[i] = symmetrized(sol.blocks[i]);
  return sol.value;
}

std::vector<ComplexMatrix> score_operators(const Functional& f,
                                           const QuantumStrategy& s) {
  const Scenario& sc = f.scenario;
  const std::size_t dj = s.dim_a() * s.dim_b();
  std::vector<ComplexMatrix> G(sc.nz, ComplexMatrix(dj, dj));
  for (int x = 1; x <= sc.nx; ++x)
    for (int y = 1; y <= sc.ny; ++y) {
      ComplexMatrix joint;
      bool have = false;
      for (int z = 1; z <= sc.nz; ++z) {
        const Rat& c = f.coeffs[sc.index(x, y, z)];
        if (c == 0) continue;
        if (!have) {
          joint = kron(s.alice_states[x - 1], s.bob_states[y - 1]);
          have = true;
        }
        ComplexMatrix t = joint;
        t *= cplx(c.get_d(), 0);
        G[z - 1] += t;
      }
    }
  for (auto& g : G) g = symmetrized(g);
  return G;
}

double measurement_step_binary(const QuantumStrategy& s,
                               const std::vector<ComplexMatrix>& G,
                               QuantumStrategy& out) {
  const std::size_t dj = G[0].rows();
  const ComplexMatrix diff = G[0] - G[1];
  const Spectrum spec = hermitian_eig(diff);
  ComplexMatrix m1(dj, dj);
  double value = G[1].trace().real();
  for (std::size_t k = 0; k < dj; ++k) {
    if (spec.eigenvalues[k] <= 0) continue;
    value += spec.eigenvalues[k];
    for (std::size_t a = 0; a < dj; ++a)
      for (std::size_t b = 0; b < dj; ++b)
        m1(a, b) += spec.eigenvectors(a, k) * std::conj(spec.eigenvectors(b, k));
  }
  out.povm.assign(2, ComplexMatrix());
  out.povm[0] = m1;
  out.povm[1] = ComplexMatrix::identity(dj) - m1;
  return value;
}

double measurement_step_sdp(const QuantumStrategy& s,
                            const std::vector<ComplexMatrix>& G,
                            QuantumStrategy& out) {
  const std::size_t dj = G[0].rows();
  const int nz = static_cast<int>(G.size());
  SdpProblem p;
  for (int z = 0; z < nz; ++z) p.blocks.push_back({dj, true});
  for (int z = 0; z < nz; ++z)
    p.objective.push_back({static_cast<std::size_t>(z), G[z]});
  for (const auto& e : hermitian_basis(dj)) {
    SdpConstraint c;
    for (int z = 0; z < nz; ++z)
      c.terms.push_back({static_cast<std::size_t>(z), e});
    c.rhs = (e * ComplexMatrix::identity(dj)).trace().real();
    p.eqs.push_back(std::move(c));
  }
  const SdpSolution sol = solve_sdp(p);
  if (sol.status != SdpStatus::Optimal)
    throw ModelError(std::string("measurement-step SDP failed: ") +
                     to_string(sol.status));
  out.povm.resize(nz);
  for (int z = 0; z < nz; ++z) out.povm[z] = symmetrized(sol.blocks[z]);
  return sol.value;
}

int worker_count() {
  if (const char* env = std::getenv("MULTICOMM_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

struct RestartOutcome {
  bool ok = false;
  double value = 0;
  QuantumStrategy strategy;
  std::vector<double> trace;
  std::string error;
};

RestartOutcome one_restart(const Functional& f, const SeesawConfig& cfg,
                           std::uint64_t seed) {
  RestartOutcome out;
  try {
    const Scenario& sc = f.scenario;
    HaarSampler rng(seed);
    QuantumStrategy s;
    for (int x = 0; x < sc.nx; ++x)
      s.alice_states.push_back(rng.pure_state(cfg.d));
    for (int y = 0; y < sc.ny; ++y)
      s.bob_states.push_back(rng.pure_state(cfg.d));
    optimize_measurement_step(f, s);  // feasible initial POVM

    double prev = 0;
    int flat = 0;
    for (int round = 0; round < cfg.max_rounds; ++round) {
      optimize_states_step(f, s, Side::A);
      optimize_states_step(f, s, Side::B);
      const double v = optimize_measurement_step(f, s);
      out.trace.push_back(v);
      if (round > 0 && v - prev < cfg.conv_tol) {
        if (++flat >= 3) break;
      } else {
        flat = 0;
      }
      prev = v;
    }
    out.value =
        evaluate_functional(f, behavior_from_strategy_raw(sc, s));
    out.strategy = std::move(s);
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

double optimize_states_step(const Functional& f, QuantumStrategy& s,
                            Side which) {
  if (f.scenario.constraint == ConstraintType::Dimension)
    return states_step_dim(f, s, which);
  return states_step_dist(f, s, which);
}

double optimize_measurement_step(const Functional& f, QuantumStrategy& s) {
  const auto G = score_operators(f, s);
  if (f.scenario.nz == 2) return measurement_step_binary(s, G, s);
  return measurement_step_sdp(s, G, s);
}

SeesawResult run_seesaw(const Functional& f, const SeesawConfig& cfg) {
  f.validate();
  if (cfg.restarts < 1 || cfg.conv_tol <= 0)
    throw ModelError("invalid seesaw configuration");

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int r = next.fetch_add(1);
      if (r >= cfg.restarts) return;
      // Per-restart seeds are decorrelated through the generator's own mixer.
      outcomes[r] = one_restart(f, cfg, cfg.seed + 0x9e3779b97f4a7c15ULL * (r + 1));
    }
  };
  const int nw = std::min(worker_count(), cfg.restarts);
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int best = -1;
  for (int r = 0; r < cfg.restarts; ++r) {
    if (!outcomes[r].ok) continue;
    if (best < 0 || outcomes[r].value > outcomes[best].value) best = r;
  }
  if (best < 0) {
    std::string msg = "all seesaw restarts failed:";
    for (int r = 0; r < cfg.restarts && r < 5; ++r)
      msg += "\n  restart " + std::to_string(r) + ": " + outcomes[r].error;
    throw ModelError(msg);
  }
  SeesawResult res;
  res.value = outcomes[best].value;
  res.strategy = std::move(outcomes[best].strategy);
  res.trace = std::move(outcomes[best].trace);
  res.restart_index = best;
  return res;
}

}  // namespace multicomm
