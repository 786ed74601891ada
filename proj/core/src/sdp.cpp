#include "multicomm/sdp.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace multicomm {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Real-symmetric embedding of a Hermitian matrix, scaled so that
/// Tr(embed(A) embed_full(X)) = Tr(A X) for Hermitian A, X.
MatrixXd embed_half(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  MatrixXd e(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = 0.5 * a(i, j).real();
      const double im = 0.5 * a(i, j).imag();
      e(i, j) = re;
      e(n + i, n + j) = re;
      e(i, n + j) = -im;
      e(n + i, j) = im;
    }
  return e;
}

MatrixXd real_part(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  MatrixXd e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = a(i, j).real();
  return 0.5 * (e + e.transpose());
}

struct InternalTerm {
  std::size_t block;
  MatrixXd a;
};

struct Internal {
  std::vector<std::size_t> sizes;            // real block sizes
  std::vector<MatrixXd> C;                   // objective per block
  std::vector<std::vector<InternalTerm>> A;  // per constraint
  VectorXd b;
};

void check_term_shapes(const SdpProblem& p, const std::vector<SdpTerm>& terms,
                       const char* what) {
  for (const auto& t : terms) {
    if (t.block >= p.blocks.size())
      throw std::invalid_argument(std::string(what) + ": block index out of range");
    if (t.a.rows() != p.blocks[t.block].size || t.a.cols() != t.a.rows())
      throw std::invalid_argument(std::string(what) + ": matrix shape mismatch");
    if (!t.a.is_hermitian(1e-12))
      throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
  }
}

Internal build_internal(const SdpProblem& p) {
  check_term_shapes(p, p.objective, "objective");
  for (const auto& c : p.eqs) check_term_shapes(p, c.terms, "eq constraint");
  for (const auto& c : p.ineqs) check_term_shapes(p, c.terms, "ineq constraint");

  Internal in;
  for (const auto& blk : p.blocks)
    in.sizes.push_back(blk.complex ? 2 * blk.size : blk.size);
  // One 1x1 slack block per inequality.
  const std::size_t slack0 = in.sizes.size();
  for (std::size_t i = 0; i < p.ineqs.size(); ++i) in.sizes.push_back(1);

  in.C.resize(in.sizes.size());
  for (std::size_t k = 0; k < in.sizes.size(); ++k)
    in.C[k] = MatrixXd::Zero(in.sizes[k], in.sizes[k]);
  auto embed = [&](const SdpTerm& t) {
    return p.blocks[t.block].complex ? embed_half(t.a) : real_part(t.a);
  };
  for (const auto& t : p.objective) in.C[t.block] += embed(t);

  const std::size_t m = p.eqs.size() + p.ineqs.size();
  in.A.resize(m);
  in.b.resize(m);
  std::size_t i = 0;
  for (const auto& c : p.eqs) {
    for (const auto& t : c.terms) in.A[i].push_back({t.block, embed(t)});
    in.b[i] = c.rhs;
    ++i;
  }
  for (std::size_t s = 0; s < p.ineqs.size(); ++s) {
    for (const auto& t : p.ineqs[s].terms)
      in.A[i].push_back({t.block, embed(t)});
    MatrixXd one(1, 1);
    one(0, 0) = 1.0;
    in.A[i].push_back({slack0 + s, one});
    in.b[i] = p.ineqs[s].rhs;
    ++i;
  }
  return in;
}

double dot_blocks(const std::vector<InternalTerm>& terms,
                  const std::vector<MatrixXd>& X) {
  double v = 0;
  for (const auto& t : terms) v += (t.a.cwiseProduct(X[t.block])).sum();
  return v;
}

/// Largest alpha in (0, 1] with M + alpha*dM positive definite (with margin).
double step_length(const MatrixXd& M, const MatrixXd& dM, double tau) {
  Eigen::LLT<MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) return 0.0;
  const MatrixXd L = llt.matrixL();
  const MatrixXd W = L.triangularView<Eigen::Lower>().solve(
      L.triangularView<Eigen::Lower>().solve(dM).transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (W + W.transpose()),
                                             Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return 1.0;
  return std::min(1.0, -tau / lmin);
}

}  // namespace

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Unbounded: return "unbounded";
    case SdpStatus::MaxIter: return "max_iter";
  }
  return "?";
}

SdpSolution solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
  Internal in = build_internal(p);
  // Drop linearly dependent equality rows (callers may emit redundant
  // identifications); dependent rows make the Schur complement singular.
  // The rhs takes part in the test so an inconsistent dependent row is kept
  // and surfaces as infeasibility instead of being silently discarded.
  // Inequality rows always carry a fresh slack and stay independent.
  {
    const std::size_t neq = p.eqs.size();
    std::size_t dim = 0;
    std::vector<std::size_t> offs;
    for (auto s : in.sizes) {
      offs.push_back(dim);
      dim += s * s;
    }
    std::vector<VectorXd> basis;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < neq; ++i) {
      VectorXd v = VectorXd::Zero(dim + 1);
      for (const auto& t : in.A[i]) {
        const std::size_t n = static_cast<std::size_t>(t.a.rows());
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c)
            v(offs[t.block] + r * n + c) += t.a(r, c);
      }
      v(dim) = in.b(i);
      const double norm0 = v.norm();
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : basis) v -= u.dot(v) * u;
      if (v.norm() > 1e-10 * std::max(1.0, norm0)) {
        basis.push_back(v / v.norm());
        keep.push_back(i);
      }
    }
    if (keep.size() < neq) {
      std::vector<std::vector<InternalTerm>> A2;
      VectorXd b2(keep.size() + p.ineqs.size());
      std::size_t j = 0;
      for (std::size_t i : keep) {
        A2.push_back(std::move(in.A[i]));
        b2(j++) = in.b(i);
      }
      for (std::size_t i = neq; i < in.A.size(); ++i) {
        A2.push_back(std::move(in.A[i]));
        b2(j++) = in.b(i);
      }
      in.A = std::move(A2);
      in.b = std::move(b2);
    }
  }
  const std::size_t nb = in.sizes.size();
  const std::size_t m = in.A.size();
  std::size_t ntot = 0;
  for (auto s : in.sizes) ntot += s;

  double data_scale = 1.0;
  for (std::size_t k = 0; k < nb; ++k)
    data_scale = std::max(data_scale, in.C[k].cwiseAbs().maxCoeff());
  if (m) data_scale = std::max(data_scale, in.b.cwiseAbs().maxCoeff());

  std::vector<MatrixXd> X(nb), Z(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    X[k] = 10.0 * data_scale * MatrixXd::Identity(in.sizes[k], in.sizes[k]);
    Z[k] = X[k];
  }
  VectorXd y = VectorXd::Zero(m);

  SdpSolution sol;
  sol.status = SdpStatus::MaxIter;

  std::vector<MatrixXd> Zinv(nb), Rd(nb), Maux(nb), dXa(nb), dZa(nb), dX(nb),
      dZ(nb);
  std::vector<std::vector<MatrixXd>> T(m);

  double pres = 0, dres = 0, relgap = 0;
  // The returned iterate is the best one seen, not the last: late interior
  // point steps on degenerate problems can lose primal feasibility after the
  // duality gap has already converged.
  std::vector<MatrixXd> Xbest = X;
  double best_score = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // Residuals.
    bool breakdown = false;
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<MatrixXd> llt(Z[k]);
      if (llt.info() != Eigen::Success) {
        breakdown = true;
        break;
      }
      Zinv[k] = llt.solve(MatrixXd::Identity(in.sizes[k], in.sizes[k]));
      Rd[k] = in.C[k] + Z[k];
    }
    if (breakdown) break;
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& t : in.A[i]) Rd[t.block] -= y[i] * t.a;

    VectorXd rp(m);
    for (std::size_t i = 0; i < m; ++i)
      rp[i] = in.b[i] - dot_blocks(in.A[i], X);

    double mu = 0;
    for (std::size_t k = 0; k < nb; ++k)
      mu += (X[k].cwiseProduct(Z[k])).sum();
    mu /= static_cast<double>(ntot);

    double pobj = 0;
    for (std::size_t k = 0; k < nb; ++k)
      pobj += (in.C[k].cwiseProduct(X[k])).sum();
    const double dobj = in.b.dot(y);

    pres = m ? rp.cwiseAbs().maxCoeff() / (1.0 + in.b.cwiseAbs().maxCoeff()) : 0;
    dres = 0;
    for (std::size_t k = 0; k < nb; ++k)
      dres = std::max(dres, Rd[k].cwiseAbs().maxCoeff());
    dres /= (1.0 + data_scale);
    relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    if (!std::isfinite(pobj) || !std::isfinite(mu)) break;
    const double score = std::max({pres, dres, relgap});
    if (score < best_score) {
      best_score = score;
      Xbest = X;
    }
    if (pres < opts.tol && dres < opts.tol && relgap < opts.tol) {
      sol.status = SdpStatus::Optimal;
      break;
    }
    if (std::abs(pobj) > 1e12 * data_scale && pres < 1e-6) {
      sol.status = SdpStatus::Unbounded;
      break;
    }
    if (y.size() && y.cwiseAbs().maxCoeff() > 1e12 * data_scale) {
      sol.status = SdpStatus::Infeasible;
      break;
    }

    // Schur complement S_ij = sum_k Tr(A_i X A_j Z^-1).
    for (std::size_t j = 0; j < m; ++j) {
      T[j].assign(nb, MatrixXd());
      for (const auto& t : in.A[j]) {
        MatrixXd& tj = T[j][t.block];
        if (tj.size() == 0)
          tj = X[t.block] * t.a * Zinv[t.block];
        else
          tj += X[t.block] * t.a * Zinv[t.block];
      }
    }
    MatrixXd S = MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& t : in.A[i])
        for (std::size_t j = 0; j < m; ++j)
          if (T[j][t.block].size() != 0)
            S(i, j) += (t.a.cwiseProduct(T[j][t.block].transpose())).sum();
    // Tiny static regularization guards the factorization when the Schur
    // complement turns near-singular close to the optimum.
    for (std::size_t i = 0; i < m; ++i) S(i, i) += 1e-13 * (1.0 + std::abs(S(i, i)));
    Eigen::PartialPivLU<MatrixXd> slu(S);
    auto solve_refined = [&](const VectorXd& r) {
      VectorXd v = slu.solve(r);
      v += slu.solve(r - S * v);  // one step of iterative refinement
      return v;
    };

    // Predictor (affine scaling, sigma = 0).
    for (std::size_t k = 0; k < nb; ++k) Maux[k] = X[k] * Rd[k] * Zinv[k];
    VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i)
      rhs[i] = dot_blocks(in.A[i], Maux) - in.b[i];
    VectorXd dya = solve_refined(rhs);
    for (std::size_t k = 0; k < nb; ++k) dZa[k] = -Rd[k];
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& t : in.A[i]) dZa[t.block] += dya[i] * t.a;
    for (std::size_t k = 0; k < nb; ++k) {
      const MatrixXd raw = -X[k] - X[k] * dZa[k] * Zinv[k];
      dXa[k] = 0.5 * (raw + raw.transpose());
    }
    double apa = 1, ada = 1;
    for (std::size_t k = 0; k < nb; ++k) {
      apa = std::min(apa, step_length(X[k], dXa[k], 1.0));
      ada = std::min(ada, step_length(Z[k], dZa[k], 1.0));
    }
    double mu_aff = 0;
    for (std::size_t k = 0; k < nb; ++k)
      mu_aff += ((X[k] + apa * dXa[k]).cwiseProduct(Z[k] + ada * dZa[k])).sum();
    mu_aff /= static_cast<double>(ntot);
    double sigma = std::pow(std::max(mu_aff, 0.0) / mu, 3.0);
    sigma = std::min(1.0, std::max(0.0, sigma));

    // Corrector.
    for (std::size_t k = 0; k < nb; ++k)
      Maux[k] = (X[k] * Rd[k] - dXa[k] * dZa[k]) * Zinv[k] +
                sigma * mu * Zinv[k];
    for (std::size_t i = 0; i < m; ++i)
      rhs[i] = dot_blocks(in.A[i], Maux) - in.b[i];
    VectorXd dy = solve_refined(rhs);
    for (std::size_t k = 0; k < nb; ++k) dZ[k] = -Rd[k];
    for (std::size_t i = 0; i < m; ++i)
      for (const auto& t : in.A[i]) dZ[t.block] += dy[i] * t.a;
    for (std::size_t k = 0; k < nb; ++k) {
      const MatrixXd raw = sigma * mu * Zinv[k] - X[k] -
                           dXa[k] * dZa[k] * Zinv[k] - X[k] * dZ[k] * Zinv[k];
      dX[k] = 0.5 * (raw + raw.transpose());
    }
    const double tau = 0.98;
    double ap = 1, ad = 1;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, step_length(X[k], dX[k], tau));
      ad = std::min(ad, step_length(Z[k], dZ[k], tau));
    }
    if (ap < 1e-12 && ad < 1e-12) break;  // stalled
    for (std::size_t k = 0; k < nb; ++k) {
      X[k] += ap * dX[k];
      Z[k] += ad * dZ[k];
    }
    y += ad * dy;
  }

  X = Xbest;

  // Recover user blocks (structured projection of the embedding).
  sol.blocks.resize(p.blocks.size());
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const std::size_t n = p.blocks[k].size;
    ComplexMatrix out(n, n);
    if (p.blocks[k].complex) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const double re = 0.5 * (X[k](i, j) + X[k](n + i, n + j));
          const double im = 0.5 * (X[k](n + i, j) - X[k](i, n + j));
          out(i, j) = cplx(re, im);
        }
    } else {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = X[k](i, j);
    }
    // Symmetrize exactly.
    ComplexMatrix sym = out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        sym(i, j) = 0.5 * (out(i, j) + std::conj(out(j, i)));
    sol.blocks[k] = std::move(sym);
  }

  // Residuals recomputed from scratch on the returned blocks.
  auto user_dot = [&](const std::vector<SdpTerm>& terms) {
    double v = 0;
    for (const auto& t : terms) v += (t.a * sol.blocks[t.block]).trace().real();
    return v;
  };
  sol.value = user_dot(p.objective);
  sol.dual_value = in.b.dot(y);
  sol.primal_residual = 0;
  double bmax = 1.0;
  for (const auto& c : p.eqs) bmax = std::max(bmax, std::abs(c.rhs));
  for (const auto& c : p.ineqs) bmax = std::max(bmax, std::abs(c.rhs));
  for (const auto& c : p.eqs)
    sol.primal_residual =
        std::max(sol.primal_residual, std::abs(user_dot(c.terms) - c.rhs) / bmax);
  for (const auto& c : p.ineqs)
    sol.primal_residual =
        std::max(sol.primal_residual, std::max(0.0, user_dot(c.terms) - c.rhs) / bmax);
  sol.dual_residual = dres;
  sol.gap = std::abs(sol.value - sol.dual_value) / (1.0 + std::abs(sol.value));

  if (sol.status == SdpStatus::Optimal &&
      (sol.primal_residual > opts.accept_tol * 10 ||
       sol.gap > opts.accept_tol * 10))
    sol.status = SdpStatus::MaxIter;
  // Conversely, a run that stalled (factorization breakdown or iteration
  // limit) but already satisfies the acceptance thresholds is reported as
  // optimal: interior-point progress often ends in a breakdown one step
  // after the iterate has converged to working precision.
  if (sol.status == SdpStatus::MaxIter && sol.primal_residual < opts.accept_tol * 10 &&
      sol.dual_residual < opts.accept_tol * 10 && sol.gap < opts.accept_tol * 10)
    sol.status = SdpStatus::Optimal;
  return sol;
}

void dump_sdp(std::ostream& os, const SdpProblem& p) {
  os << "blocks";
  for (const auto& b : p.blocks) os << " " << (b.complex ? "c" : "r") << b.size;
  os << "\n";
  auto dump_terms = [&](const std::vector<SdpTerm>& terms) {
    for (const auto& t : terms)
      for (std::size_t i = 0; i < t.a.rows(); ++i)
        for (std::size_t j = i; j < t.a.cols(); ++j)
          if (std::abs(t.a(i, j)) > 0)
            os << "  " << t.block << " " << i << " " << j << " "
               << t.a(i, j).real() << " " << t.a(i, j).imag() << "\n";
  };
  os << "objective\n";
  dump_terms(p.objective);
  for (const auto& c : p.eqs) {
    os << "eq " << c.rhs << "\n";
    dump_terms(c.terms);
  }
  for (const auto& c : p.ineqs) {
    os << "ineq " << c.rhs << "\n";
    dump_terms(c.terms);
  }
}

}  // namespace multicomm
