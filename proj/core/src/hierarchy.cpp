#include "multicomm/hierarchy.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace multicomm {

namespace {

bool idempotent(LetterKind k) {
  return k == LetterKind::AliceState || k == LetterKind::BobState ||
         k == LetterKind::Measurement;
}

bool word_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w) {
    if (!out.empty()) out += ".";
    switch (l.kind) {
      case LetterKind::Identity: out += "1"; break;
      case LetterKind::AliceState: out += "r" + std::to_string(l.index); break;
      case LetterKind::BobState: out += "s" + std::to_string(l.index); break;
      case LetterKind::Measurement: out += "M" + std::to_string(l.index); break;
      case LetterKind::Theta: out += "T"; break;
      case LetterKind::Phi: out += "F"; break;
    }
  }
  return out;
}

std::optional<Word> canonicalize_word(const Word& input) {
  Word start;
  for (const Letter& l : input)
    if (l.kind != LetterKind::Identity) start.push_back(l);

  std::set<Word> seen;
  std::vector<Word> frontier{start};
  seen.insert(start);
  Word best = start;

  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      auto visit = [&](Word v) {
        if (seen.insert(v).second) {
          if (word_less(v, best)) best = v;
          next.push_back(std::move(v));
        }
      };
      const std::size_t n = w.size();
      // Adjacent-pair rewrites.
      for (std::size_t i = 0; i + 1 < n; ++i) {
        const Letter &a = w[i], &b = w[i + 1];
        if (a.kind == LetterKind::Measurement &&
            b.kind == LetterKind::Measurement && a.index != b.index)
          return std::nullopt;  // orthogonal projectors annihilate
        if (a == b && idempotent(a.kind)) {
          Word v(w);
          v.erase(v.begin() + i);
          visit(std::move(v));
        }
        if (a.side() != b.side() && a.side() != LetterSide::Joint &&
            b.side() != LetterSide::Joint) {
          Word v(w);
          std::swap(v[i], v[i + 1]);
          visit(std::move(v));
        }
      }
      if (n > 1) {
        Word rot(w.begin() + 1, w.end());
        rot.push_back(w.front());
        visit(std::move(rot));
        Word rev(w.rbegin(), w.rend());
        visit(std::move(rev));
      }
    }
    frontier = std::move(next);
  }
  return best;
}

int MomentStructure::class_of(const Word& w) const {
  const auto c = canonicalize_word(w);
  if (!c) return -1;
  for (std::size_t i = 0; i < class_words.size(); ++i)
    if (class_words[i] == *c) return static_cast<int>(i);
  return -2;
}

MomentStructure build_moment_structure(const Scenario& s,
                                       HierarchyVariant /*variant*/) {
  MomentStructure ms;
  ms.monomials.push_back({});  // identity
  if (s.constraint == ConstraintType::Distinguishability) {
    ms.monomials.push_back({{LetterKind::Theta, 0}});
    ms.monomials.push_back({{LetterKind::Phi, 0}});
  }
  for (int x = 1; x <= s.nx; ++x)
    ms.monomials.push_back({{LetterKind::AliceState, x}});
  for (int y = 1; y <= s.ny; ++y)
    ms.monomials.push_back({{LetterKind::BobState, y}});
  for (int z = 1; z <= s.nz; ++z)
    ms.monomials.push_back({{LetterKind::Measurement, z}});
  for (int x = 1; x <= s.nx; ++x)
    for (int z = 1; z <= s.nz; ++z)
      ms.monomials.push_back(
          {{LetterKind::AliceState, x}, {LetterKind::Measurement, z}});
  for (int y = 1; y <= s.ny; ++y)
    for (int z = 1; z <= s.nz; ++z)
      ms.monomials.push_back(
          {{LetterKind::BobState, y}, {LetterKind::Measurement, z}});

  const std::size_t n = ms.monomials.size();
  ms.entry_class.assign(n, std::vector<int>(n, -1));
  std::map<Word, int> ids;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Word prod = ms.monomials[i];
      prod.insert(prod.end(), ms.monomials[j].rbegin(), ms.monomials[j].rend());
      const auto canon = canonicalize_word(prod);
      if (!canon) continue;  // zero class stays -1
      auto [it, inserted] =
          ids.emplace(*canon, static_cast<int>(ms.class_words.size()));
      if (inserted) ms.class_words.push_back(*canon);
      ms.entry_class[i][j] = it->second;
    }
  return ms;
}

namespace {

/// Representative Gamma position of each class plus symmetric coefficient
/// helpers used to express the hierarchy SDP over one real block.
struct GammaIndex {
  const MomentStructure& ms;
  std::size_t n;
  std::vector<std::pair<std::size_t, std::size_t>> rep;  // class -> (i,j)

  explicit GammaIndex(const MomentStructure& m)
      : ms(m), n(m.monomials.size()), rep(m.class_words.size(), {n, n}) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        const int c = ms.entry_class[i][j];
        if (c >= 0 && rep[c].first == n) rep[c] = {i, j};
      }
  }

  /// Adds coefficient w * Gamma_(i,j) to a symmetric coefficient matrix.
  static void add_coef(ComplexMatrix& a, std::size_t i, std::size_t j,
                       double w) {
    if (i == j) {
      a(i, i) += w;
    } else {
      a(i, j) += w / 2;
      a(j, i) += w / 2;
    }
  }

  void add_class(ComplexMatrix& a, int cls, double w) const {
    add_coef(a, rep[cls].first, rep[cls].second, w);
  }
};

}  // namespace

HierarchyResult hierarchy_upper_bound(const Functional& f,
                                      HierarchyVariant variant,
                                      const SdpOptions& opts) {
  f.validate();
  const Scenario& s = f.scenario;
  const bool dist = s.constraint == ConstraintType::Distinguishability;
  const MomentStructure ms = build_moment_structure(s, variant);
  const GammaIndex gi(ms);
  const std::size_t n = gi.n;

  SdpProblem p;
  p.blocks.push_back({n, false});  // Gamma is real symmetric by construction
  auto coef = [&] { return ComplexMatrix(n, n); };

  // Entry identification: every position equals its class representative;
  // zero-class positions vanish.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const int c = ms.entry_class[i][j];
      SdpConstraint eq;
      ComplexMatrix a = coef();
      if (c < 0) {
        GammaIndex::add_coef(a, i, j, 1.0);
      } else {
        if (gi.rep[c] == std::make_pair(i, j)) continue;
        GammaIndex::add_coef(a, i, j, 1.0);
        gi.add_class(a, c, -1.0);
      }
      eq.terms.push_back({0, std::move(a)});
      eq.rhs = 0;
      p.eqs.push_back(std::move(eq));
    }

  auto word_class = [&](const Word& w) {
    const int c = ms.class_of(w);
    if (c < 0)
      throw ModelError("hierarchy: required word has no home in the moment matrix: " +
                       word_to_string(w));
    return c;
  };
  auto fix_class = [&](int cls, double value) {
    SdpConstraint eq;
    ComplexMatrix a = coef();
    gi.add_class(a, cls, 1.0);
    eq.terms.push_back({0, std::move(a)});
    eq.rhs = value;
    p.eqs.push_back(std::move(eq));
  };

  // Trace nonnegativity. Gamma >= 0 alone does not force entries such as
  // p(z|x,y) to be nonnegative. A class is a trace of a product of PSD
  // operators and hence nonnegative whenever the word contains at most one
  // measurement letter and at most one letter per sender side (the word is
  // then Tr[(A (x) B) M] with A, B, M each PSD), or no measurement letter at
  // all (then it factors into per-side traces of at most two PSD operators).
  for (std::size_t c = 0; c < ms.class_words.size(); ++c) {
    int n_meas = 0, n_alice = 0, n_bob = 0;
    for (const Letter& l : ms.class_words[c]) {
      if (l.kind == LetterKind::Measurement)
        ++n_meas;
      else if (l.side() == LetterSide::Alice)
        ++n_alice;
      else if (l.side() == LetterSide::Bob)
        ++n_bob;
    }
    const bool safe =
        n_meas == 0 || (n_meas == 1 && n_alice <= 1 && n_bob <= 1);
    if (!safe) continue;
    SdpConstraint le;
    ComplexMatrix a = coef();
    gi.add_class(a, static_cast<int>(c), -1.0);
    le.terms.push_back({0, std::move(a)});
    le.rhs = 0;
    p.ineqs.push_back(std::move(le));

    // State monotonicity: a density matrix satisfies rho <= I, so removing
    // one state letter from such a word can only increase the trace
    // (sandwich with the square root of the remaining PSD factor).
    const Word& w = ms.class_words[c];
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].kind != LetterKind::AliceState &&
          w[k].kind != LetterKind::BobState)
        continue;
      Word shorter;
      for (std::size_t t = 0; t < w.size(); ++t)
        if (t != k) shorter.push_back(w[t]);
      const int c2 = ms.class_of(shorter);
      if (c2 < 0 || c2 == static_cast<int>(c)) continue;
      SdpConstraint mono;
      ComplexMatrix am = coef();
      gi.add_class(am, static_cast<int>(c), 1.0);
      gi.add_class(am, c2, -1.0);
      mono.terms.push_back({0, std::move(am)});
      mono.rhs = 0;
      p.ineqs.push_back(std::move(mono));
    }
  }

  const Letter I{LetterKind::Identity, 0};
  auto RHO = [](int x) { return Letter{LetterKind::AliceState, x}; };
  auto SIG = [](int y) { return Letter{LetterKind::BobState, y}; };
  auto MEA = [](int z) { return Letter{LetterKind::Measurement, z}; };

  // Purity: Gamma[rho_x sigma_y] = 1.
  for (int x = 1; x <= s.nx; ++x)
    for (int y = 1; y <= s.ny; ++y)
      fix_class(word_class({RHO(x), SIG(y)}), 1.0);

  // POVM completeness pushed through every monomial pair: whenever all the
  // words u M_z v~ have homes in Gamma, sum_z Gamma[u M_z v~] = Gamma[u v~].
  // (v~ is the reversal of v.) Duplicate constraints are emitted once.
  {
    std::set<std::vector<std::pair<int, double>>> seen;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::map<int, double> sig;
        bool ok = true;
        for (int z = 1; z <= s.nz; ++z) {
          Word w = ms.monomials[i];
          w.push_back(MEA(z));
          w.insert(w.end(), ms.monomials[j].rbegin(),
                   ms.monomials[j].rend());
          if (!canonicalize_word(w)) continue;  // annihilates to zero
          const int c = ms.class_of(w);
          if (c < 0) {
            ok = false;
            break;
          }
          sig[c] += 1.0;
        }
        if (!ok) continue;
        const int target = ms.entry_class[i][j];
        if (target >= 0) sig[target] -= 1.0;
        std::vector<std::pair<int, double>> key;
        for (const auto& [c, w] : sig)
          if (w != 0.0) key.emplace_back(c, w);
        if (key.empty() || !seen.insert(key).second) continue;
        SdpConstraint eq;
        ComplexMatrix a = coef();
        for (const auto& [c, w] : key) gi.add_class(a, c, w);
        eq.terms.push_back({0, std::move(a)});
        eq.rhs = 0;
        p.eqs.push_back(std::move(eq));
      }
  }

  if (!dist) {
    // Dimension traces.
    const double d = s.d;
    fix_class(word_class({}), d * d);
    for (int x = 1; x <= s.nx; ++x) fix_class(word_class({RHO(x)}), d);
    for (int y = 1; y <= s.ny; ++y) fix_class(word_class({SIG(y)}), d);
  } else {
    const Letter TH{LetterKind::Theta, 0};
    const Letter PH{LetterKind::Phi, 0};
    // All single-state traces on one side share a scalar (the unknown trace
    // of the other side's identity).
    for (int x = 2; x <= s.nx; ++x) {
      SdpConstraint eq;
      ComplexMatrix a = coef();
      gi.add_class(a, word_class({RHO(x)}), 1.0);
      gi.add_class(a, word_class({RHO(1)}), -1.0);
      eq.terms.push_back({0, std::move(a)});
      p.eqs.push_back(std::move(eq));
    }
    for (int y = 2; y <= s.ny; ++y) {
      SdpConstraint eq;
      ComplexMatrix a = coef();
      gi.add_class(a, word_class({SIG(y)}), 1.0);
      gi.add_class(a, word_class({SIG(1)}), -1.0);
      eq.terms.push_back({0, std::move(a)});
      p.eqs.push_back(std::move(eq));
    }
    if (variant == HierarchyVariant::Paper) {
      // Scalar dominance Gamma[Theta] >= Gamma[rho_x] and trace caps.
      for (int x = 1; x <= s.nx; ++x) {
        SdpConstraint le;
        ComplexMatrix a = coef();
        gi.add_class(a, word_class({RHO(x)}), 1.0);
        gi.add_class(a, word_class({TH}), -1.0);
        le.terms.push_back({0, std::move(a)});
        le.rhs = 0;
        p.ineqs.push_back(std::move(le));
      }
      for (int y = 1; y <= s.ny; ++y) {
        SdpConstraint le;
        ComplexMatrix a = coef();
        gi.add_class(a, word_class({SIG(y)}), 1.0);
        gi.add_class(a, word_class({PH}), -1.0);
        le.terms.push_back({0, std::move(a)});
        le.rhs = 0;
        p.ineqs.push_back(std::move(le));
      }
      SdpConstraint capA;
      ComplexMatrix a1 = coef();
      gi.add_class(a1, word_class({TH}), 1.0 / s.nx);
      capA.terms.push_back({0, std::move(a1)});
      capA.rhs = s.D1.get_d();
      p.ineqs.push_back(std::move(capA));
      SdpConstraint capB;
      ComplexMatrix a2 = coef();
      gi.add_class(a2, word_class({PH}), 1.0 / s.ny);
      capB.terms.push_back({0, std::move(a2)});
      capB.rhs = s.D2.get_d();
      p.ineqs.push_back(std::move(capB));
    } else {
      // Localizing blocks for Theta - rho_x and Phi - sigma_y over the basis
      // {1} + {M_z}; each block entry is a difference of Gamma classes.
      std::vector<Word> basis{{}};
      for (int z = 1; z <= s.nz; ++z) basis.push_back({MEA(z)});
      const std::size_t bs = basis.size();
      auto add_localizing = [&](const Letter& dominator, const Letter& state) {
        const std::size_t blk = p.blocks.size();
        p.blocks.push_back({bs, false});
        for (std::size_t i = 0; i < bs; ++i)
          for (std::size_t j = i; j < bs; ++j) {
            SdpConstraint eq;
            ComplexMatrix lb(bs, bs);
            GammaIndex::add_coef(lb, i, j, 1.0);
            ComplexMatrix ga = coef();
            for (int sgn = 0; sgn < 2; ++sgn) {
              Word w = basis[i];
              w.push_back(sgn == 0 ? dominator : state);
              w.insert(w.end(), basis[j].rbegin(), basis[j].rend());
              const auto canon = canonicalize_word(w);
              if (!canon) continue;  // zero contribution
              gi.add_class(ga, word_class(w), sgn == 0 ? -1.0 : 1.0);
            }
            eq.terms.push_back({blk, std::move(lb)});
            eq.terms.push_back({0, std::move(ga)});
            eq.rhs = 0;
            p.eqs.push_back(std::move(eq));
          }
      };
      for (int x = 1; x <= s.nx; ++x) add_localizing(TH, RHO(x));
      for (int y = 1; y <= s.ny; ++y) add_localizing(PH, SIG(y));
      // Linear trace caps through the shared identity-trace scalars.
      SdpConstraint capA;
      ComplexMatrix a1 = coef();
      gi.add_class(a1, word_class({TH}), 1.0);
      gi.add_class(a1, word_class({SIG(1)}), -s.nx * s.D1.get_d());
      capA.terms.push_back({0, std::move(a1)});
      capA.rhs = 0;
      p.ineqs.push_back(std::move(capA));
      SdpConstraint capB;
      ComplexMatrix a2 = coef();
      gi.add_class(a2, word_class({PH}), 1.0);
      gi.add_class(a2, word_class({RHO(1)}), -s.ny * s.D2.get_d());
      capB.terms.push_back({0, std::move(a2)});
      capB.rhs = 0;
      p.ineqs.push_back(std::move(capB));
    }
  }

  // Objective: sum c(x,y,z) Gamma[rho_x sigma_y M_z].
  {
    ComplexMatrix a = coef();
    for (int x = 1; x <= s.nx; ++x)
      for (int y = 1; y <= s.ny; ++y)
        for (int z = 1; z <= s.nz; ++z) {
          const Rat& c = f.coeffs[s.index(x, y, z)];
          if (c == 0) continue;
          gi.add_class(a, word_class({RHO(x), SIG(y), MEA(z)}), c.get_d());
        }
    p.objective.push_back({0, std::move(a)});
  }

  const SdpSolution sol = solve_sdp(p, opts);
  HierarchyResult res;
  res.status = sol.status;
  res.value = sol.value;
  res.gamma_size = n;
  res.gamma.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      res.gamma[i * n + j] = sol.blocks[0](i, j).real();
  for (const Word& w : ms.monomials) res.labels.push_back(word_to_string(w));
  return res;
}

void dump_gamma(std::ostream& os, const HierarchyResult& r) {
  const std::size_t n = r.gamma_size;
  std::size_t width = 9;
  for (const auto& l : r.labels) width = std::max(width, l.size() + 1);
  os << std::setw(static_cast<int>(width)) << "";
  for (const auto& l : r.labels) os << std::setw(static_cast<int>(width)) << l;
  os << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    os << std::setw(static_cast<int>(width)) << r.labels[i];
    for (std::size_t j = 0; j < n; ++j)
      os << std::setw(static_cast<int>(width)) << std::fixed
         << std::setprecision(4) << r.gamma[i * n + j];
    os << "\n";
  }
}

}  // namespace multicomm
