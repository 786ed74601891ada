#include "multicomm/polytope.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "multicomm/simplex_detail.hpp"

namespace multicomm {

namespace {

// Small dynamic bitset for tight-constraint sets.
struct Bits {
  std::vector<std::uint64_t> w;
  void resize(std::size_t n) { w.assign((n + 63) / 64, 0); }
  void set(std::size_t i) { w[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool get(std::size_t i) const {
    return (w[i / 64] >> (i % 64)) & 1;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
};

Bits bits_and(const Bits& a, const Bits& b) {
  Bits r;
  r.w.resize(a.w.size());
  for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
  return r;
}

bool bits_subset(const Bits& a, const Bits& b) {  // a subset of b
  for (std::size_t i = 0; i < a.w.size(); ++i)
    if (a.w[i] & ~b.w[i]) return false;
  return true;
}

struct Ray {
  RatVec v;
  Bits tight;
};

// Invert a nonsingular rational k x k matrix (Gauss-Jordan).
RatMat invert(RatMat m) {
  const std::size_t k = m.size();
  RatMat inv(k, RatVec(k, Rat(0)));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && m[piv][c] == 0) ++piv;
    if (piv == k) throw PolytopeError("singular matrix in DD initialization");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    const Rat d = m[c][c];
    for (std::size_t j = 0; j < k; ++j) {
      m[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (i == c || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = 0; j < k; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

// Indices of a maximal independent row subset (exactly k rows or fewer).
std::vector<std::size_t> independent_rows(const RatMat& B, std::size_t k) {
  std::vector<std::size_t> chosen;
  RatMat acc;  // row-echelon accumulator
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < B.size() && chosen.size() < k; ++r) {
    RatVec row = B[r];
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (row[pivots[i]] == 0) continue;
      const Rat f = row[pivots[i]] / acc[i][pivots[i]];
      for (std::size_t j = 0; j < k; ++j) row[j] -= f * acc[i][j];
    }
    std::size_t p = 0;
    while (p < k && row[p] == 0) ++p;
    if (p == k) continue;
    pivots.push_back(p);
    acc.push_back(std::move(row));
    chosen.push_back(r);
  }
  return chosen;
}

}  // namespace

std::vector<RatVec> dd_extreme_rays(const RatMat& B) {
  if (B.empty()) throw PolytopeError("dd_extreme_rays: no constraints");
  const std::size_t k = B[0].size();
  const std::vector<std::size_t> init = independent_rows(B, k);
  if (init.size() < k)
    throw PolytopeError("dd_extreme_rays: cone is not pointed");

  // Processed rows, initial basis first, the rest in lexicographic order.
  std::vector<std::size_t> rest;
  {
    std::vector<bool> used(B.size(), false);
    for (auto i : init) used[i] = true;
    for (std::size_t i = 0; i < B.size(); ++i)
      if (!used[i]) rest.push_back(i);
    std::sort(rest.begin(), rest.end(),
              [&](std::size_t a, std::size_t b) { return B[a] < B[b]; });
  }

  RatMat R(k);
  for (std::size_t i = 0; i < k; ++i) R[i] = B[init[i]];
  const RatMat Rinv = invert(R);

  std::vector<std::size_t> processed(init.begin(), init.end());
  const std::size_t total = B.size();

  std::vector<Ray> rays(k);
  for (std::size_t j = 0; j < k; ++j) {
    rays[j].v.resize(k);
    for (std::size_t i = 0; i < k; ++i) rays[j].v[i] = Rinv[i][j];
    rays[j].v = scale_to_coprime_integers(rays[j].v);
    rays[j].tight.resize(total);
    for (std::size_t i = 0; i < processed.size(); ++i)
      if (rat_dot(B[processed[i]], rays[j].v) == 0) rays[j].tight.set(i);
  }

  for (std::size_t row : rest) {
    const RatVec& cvec = B[row];
    std::vector<Rat> dots(rays.size());
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      dots[i] = rat_dot(cvec, rays[i].v);
      if (dots[i] > 0)
        pos.push_back(i);
      else if (dots[i] < 0)
        neg.push_back(i);
      else
        zero.push_back(i);
    }
    const std::size_t nproc = processed.size();
    std::vector<Ray> created;
    if (!neg.empty()) {
      for (std::size_t p : pos) {
        for (std::size_t n : neg) {
          Bits common = bits_and(rays[p].tight, rays[n].tight);
          if (common.count() + 2 < k) continue;
          // Exact combinatorial adjacency: no third ray's tight set contains
          // the common set.
          bool adjacent = true;
          for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
            if (o == p || o == n) continue;
            if (bits_subset(common, rays[o].tight)) adjacent = false;
          }
          if (!adjacent) continue;
          // Confirm by algebraic rank of the common tight rows.
          RatMat tight_rows;
          for (std::size_t i = 0; i < nproc; ++i)
            if (common.get(i)) tight_rows.push_back(B[processed[i]]);
          if (rat_rank(tight_rows) != static_cast<int>(k) - 2) continue;

          Ray w;
          w.v.resize(k);
          for (std::size_t i = 0; i < k; ++i)
            w.v[i] = dots[p] * rays[n].v[i] - dots[n] * rays[p].v[i];
          w.v = scale_to_coprime_integers(w.v);
          created.push_back(std::move(w));
        }
      }
    }
    // Keep nonnegative rays, add the new ones, then extend tight sets.
    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size() + created.size());
    for (std::size_t i : pos) {
      next.push_back(std::move(rays[i]));
    }
    for (std::size_t i : zero) {
      rays[i].tight.set(nproc);
      next.push_back(std::move(rays[i]));
    }
    processed.push_back(row);
    for (auto& w : created) {
      w.tight.resize(total);
      for (std::size_t i = 0; i < processed.size(); ++i)
        if (rat_dot(B[processed[i]], w.v) == 0) w.tight.set(i);
      next.push_back(std::move(w));
    }
    rays = std::move(next);
  }

  std::vector<RatVec> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool lp_feasible(const HPolytope& h) {
  try {
    RatVec obj(h.dim(), Rat(0));
    lp_max(obj, h);
    return true;
  } catch (const InfeasibleError&) {
    return false;
  } catch (const UnboundedError&) {
    return true;
  }
}

}  // namespace

VPolytope facets_to_vertices(const HPolytope& h) {
  const std::size_t d = h.dim();
  if (d == 0 || (h.ineqs.empty() && h.eqs.empty()))
    throw PolytopeError("facets_to_vertices: empty description");

  // Homogenize into cone coordinates y = (t, x): a.x <= b  ->  [b, -a].y >= 0.
  RatMat eqrows, inrows;
  for (const auto& row : h.eqs) {
    RatVec r(d + 1);
    r[0] = row[0];
    for (std::size_t j = 0; j < d; ++j) r[j + 1] = -row[j + 1];
    eqrows.push_back(std::move(r));
  }
  for (const auto& row : h.ineqs) {
    RatVec r(d + 1);
    r[0] = row[0];
    for (std::size_t j = 0; j < d; ++j) r[j + 1] = -row[j + 1];
    inrows.push_back(std::move(r));
  }
  {
    RatVec t0(d + 1, Rat(0));
    t0[0] = 1;
    inrows.push_back(std::move(t0));
  }

  // Restrict to the solution space of the equalities: y = F u.
  std::vector<RatVec> F;
  if (!eqrows.empty()) {
    F = rat_nullspace(eqrows);
    if (F.empty()) throw InfeasibleError("facets_to_vertices: empty polytope");
  } else {
    for (std::size_t i = 0; i <= d; ++i) {
      RatVec e(d + 1, Rat(0));
      e[i] = 1;
      F.push_back(std::move(e));
    }
  }
  const std::size_t q = F.size();
  RatMat Bm(inrows.size(), RatVec(q));
  for (std::size_t r = 0; r < inrows.size(); ++r)
    for (std::size_t j = 0; j < q; ++j) Bm[r][j] = rat_dot(inrows[r], F[j]);

  if (rat_rank(Bm) < static_cast<int>(q)) {
    // Lineality: the set contains a line (through the homogenization these
    // all have t = 0), so it is unbounded if nonempty.
    if (lp_feasible(h)) throw UnboundedError("facets_to_vertices: unbounded polyhedron");
    throw InfeasibleError("facets_to_vertices: empty polytope");
  }

  const std::vector<RatVec> urays = dd_extreme_rays(Bm);

  VPolytope out;
  bool saw_recession = false;
  for (const auto& u : urays) {
    RatVec y(d + 1, Rat(0));
    for (std::size_t j = 0; j < q; ++j)
      if (u[j] != 0)
        for (std::size_t i = 0; i <= d; ++i) y[i] += u[j] * F[j][i];
    if (y[0] == 0) {
      saw_recession = true;
      continue;
    }
    RatVec x(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = y[i + 1] / y[0];
      x[i].canonicalize();
    }
    out.vertices.push_back(std::move(x));
  }
  if (out.vertices.empty())
    throw InfeasibleError("facets_to_vertices: empty polytope");
  if (saw_recession)
    throw UnboundedError("facets_to_vertices: unbounded polyhedron");
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()),
                     out.vertices.end());
  return out;
}

RatVec canonical_inequality(const RatVec& row, const RatMat& eqs) {
  RatVec r = row;
  if (!eqs.empty()) {
    // Echelonize the equality normals, then eliminate their pivot coordinates
    // from the inequality normal.
    RatMat e = eqs;
    std::vector<std::size_t> pivots;
    std::size_t rr = 0;
    const std::size_t cols = r.size();
    for (std::size_t c = 1; c < cols && rr < e.size(); ++c) {
      std::size_t piv = rr;
      while (piv < e.size() && e[piv][c] == 0) ++piv;
      if (piv == e.size()) continue;
      std::swap(e[rr], e[piv]);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == rr || e[i][c] == 0) continue;
        const Rat f = e[i][c] / e[rr][c];
        for (std::size_t j = 0; j < cols; ++j) e[i][j] -= f * e[rr][j];
      }
      pivots.push_back(c);
      ++rr;
    }
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::size_t c = pivots[i];
      if (r[c] == 0) continue;
      const Rat f = r[c] / e[i][c];
      for (std::size_t j = 0; j < cols; ++j) r[j] -= f * e[i][j];
    }
  }
  return scale_to_coprime_integers(r);
}

HPolytope vertices_to_facets(const VPolytope& vin) {
  if (vin.vertices.empty())
    throw PolytopeError("vertices_to_facets: empty vertex list");
  std::vector<RatVec> verts = vin.vertices;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  const std::size_t d = verts[0].size();
  const RatVec& v0 = verts[0];

  RatMat diffs;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    RatVec dv(d);
    for (std::size_t j = 0; j < d; ++j) dv[j] = verts[i][j] - v0[j];
    diffs.push_back(std::move(dv));
  }

  HPolytope out;
  // Affine-hull equalities n.x = n.v0 from the nullspace of the differences.
  std::vector<RatVec> normals =
      diffs.empty() ? [&] {
        std::vector<RatVec> id;
        for (std::size_t i = 0; i < d; ++i) {
          RatVec e(d, Rat(0));
          e[i] = 1;
          id.push_back(std::move(e));
        }
        return id;
      }()
                    : rat_nullspace(diffs);
  for (const auto& n : normals) {
    RatVec row(d + 1);
    row[0] = rat_dot(n, v0);
    for (std::size_t j = 0; j < d; ++j) row[j + 1] = n[j];
    row = scale_to_coprime_integers(row);
    // Sign normalization for equalities: first nonzero normal entry positive.
    for (std::size_t j = 1; j <= d; ++j) {
      if (row[j] == 0) continue;
      if (row[j] < 0)
        for (auto& x : row) x = -x;
      break;
    }
    out.eqs.push_back(std::move(row));
  }

  const std::size_t r = d - normals.size();
  if (r == 0) return out;  // a single point: equalities only

  // Chart: pivot columns of the difference row space give injective
  // coordinates u = x_J on the affine hull.
  std::vector<std::size_t> J;
  {
    RatMat m = diffs;
    std::size_t rr = 0;
    for (std::size_t c = 0; c < d && rr < m.size(); ++c) {
      std::size_t piv = rr;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[rr], m[piv]);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == rr || m[i][c] == 0) continue;
        const Rat f = m[i][c] / m[rr][c];
        for (std::size_t j = 0; j < d; ++j) m[i][j] -= f * m[rr][j];
      }
      J.push_back(c);
      ++rr;
    }
  }

  std::vector<RatVec> u(verts.size(), RatVec(r));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) u[i][j] = verts[i][J[j]];

  RatVec centroid(r, Rat(0));
  for (const auto& ui : u)
    for (std::size_t j = 0; j < r; ++j) centroid[j] += ui[j];
  for (auto& c : centroid) {
    c /= Rat(static_cast<long>(verts.size()));
    c.canonicalize();
  }

  // Polar body {a : (u_i - centroid).a <= 1}; its vertices are the facets.
  HPolytope polar;
  for (const auto& ui : u) {
    RatVec row(r + 1);
    row[0] = 1;
    for (std::size_t j = 0; j < r; ++j) row[j + 1] = ui[j] - centroid[j];
    polar.ineqs.push_back(std::move(row));
  }
  const VPolytope pv = facets_to_vertices(polar);

  for (const auto& a : pv.vertices) {
    // a.(u - centroid) <= 1  lifted to x-space through u = x_J.
    RatVec row(d + 1, Rat(0));
    row[0] = 1 + rat_dot(a, centroid);
    for (std::size_t j = 0; j < r; ++j) row[J[j] + 1] = a[j];
    out.ineqs.push_back(canonical_inequality(row, out.eqs));
  }
  std::sort(out.ineqs.begin(), out.ineqs.end());
  out.ineqs.erase(std::unique(out.ineqs.begin(), out.ineqs.end()),
                  out.ineqs.end());
  return out;
}

LpSolution lp_max(const RatVec& objective, const HPolytope& h) {
  const std::size_t d = h.dim();
  if (objective.size() != d)
    throw PolytopeError("lp_max: objective dimension mismatch");
  const std::size_t ni = h.ineqs.size();
  // Variables: x = u - v with u, v >= 0, plus one slack per inequality.
  const std::size_t n = 2 * d + ni;
  RatMat A;
  RatVec b;
  for (std::size_t i = 0; i < ni; ++i) {
    RatVec row(n, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = h.ineqs[i][j + 1];
      row[d + j] = -h.ineqs[i][j + 1];
    }
    row[2 * d + i] = 1;
    A.push_back(std::move(row));
    b.push_back(h.ineqs[i][0]);
  }
  for (const auto& eq : h.eqs) {
    RatVec row(n, Rat(0));
    for (std::size_t j = 0; j < d; ++j) {
      row[j] = eq[j + 1];
      row[d + j] = -eq[j + 1];
    }
    A.push_back(std::move(row));
    b.push_back(eq[0]);
  }
  RatVec c(n, Rat(0));
  for (std::size_t j = 0; j < d; ++j) {
    c[j] = -objective[j];  // maximize -> minimize the negation
    c[d + j] = objective[j];
  }
  RatVec x;
  Rat value;
  switch (detail::solve_standard_lp(A, b, c, x, value)) {
    case detail::StdLpStatus::Infeasible:
      throw InfeasibleError("lp_max: infeasible");
    case detail::StdLpStatus::Unbounded:
      throw UnboundedError("lp_max: unbounded in objective direction");
    case detail::StdLpStatus::Optimal:
      break;
  }
  LpSolution sol;
  sol.value = -value;
  sol.value.canonicalize();
  sol.argmax.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    sol.argmax[j] = x[j] - x[d + j];
    sol.argmax[j].canonicalize();
  }
  return sol;
}

bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points) {
  if (points.empty()) return false;
  const std::size_t d = p.size();
  const std::size_t n = points.size();
  RatMat A(d + 1, RatVec(n));
  RatVec b(d + 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) A[i][j] = points[j][i];
    A[d][j] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = p[i];
  b[d] = 1;
  RatVec x;
  Rat value;
  return detail::solve_standard_lp(A, b, RatVec(n, Rat(0)), x, value) ==
         detail::StdLpStatus::Optimal;
}

namespace {

RatMat read_rows(std::istream& is, std::vector<bool>* eq_flags) {
  RatMat rows;
  std::string line;
  bool eq_section = false;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    std::string comment;
    if (hash != std::string::npos) {
      comment = line.substr(hash + 1);
      line = line.substr(0, hash);
    }
    if (comment.find("eq") != std::string::npos) eq_section = true;
    std::istringstream ls(line);
    RatVec row;
    std::string tok;
    while (ls >> tok) row.push_back(rat_from_string(tok));
    if (row.empty()) continue;
    rows.push_back(std::move(row));
    if (eq_flags) eq_flags->push_back(eq_section);
  }
  return rows;
}

}  // namespace

void write_h_polytope(std::ostream& os, const HPolytope& h) {
  os << "# h-representation: rows [b a1..ad] meaning a.x <= b\n";
  for (const auto& row : h.ineqs) {
    for (std::size_t j = 0; j < row.size(); ++j)
      os << (j ? " " : "") << row[j];
    os << "\n";
  }
  if (!h.eqs.empty()) {
    os << "# eq rows follow: a.x == b\n";
    for (const auto& row : h.eqs) {
      for (std::size_t j = 0; j < row.size(); ++j)
        os << (j ? " " : "") << row[j];
      os << "\n";
    }
  }
}

HPolytope read_h_polytope(std::istream& is) {
  std::vector<bool> eq_flags;
  RatMat rows = read_rows(is, &eq_flags);
  HPolytope h;
  for (std::size_t i = 0; i < rows.size(); ++i)
    (eq_flags[i] ? h.eqs : h.ineqs).push_back(std::move(rows[i]));
  return h;
}

void write_v_polytope(std::ostream& os, const VPolytope& v) {
  os << "# v-representation: rows [q p1..pd] meaning vertex (p1/q, ..., pd/q)\n";
  for (const auto& vert : v.vertices) {
    mpz_class q = 1;
    for (const auto& x : vert)
      mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.get_den().get_mpz_t());
    os << q;
    for (const auto& x : vert) {
      Rat s = x * Rat(q);
      s.canonicalize();
      os << " " << s;
    }
    os << "\n";
  }
}

VPolytope read_v_polytope(std::istream& is) {
  RatMat rows = read_rows(is, nullptr);
  VPolytope v;
  for (auto& row : rows) {
    if (row.size() < 2 || row[0] == 0)
      throw PolytopeError("read_v_polytope: bad vertex row");
    RatVec vert(row.size() - 1);
    for (std::size_t j = 1; j < row.size(); ++j) {
      vert[j - 1] = row[j] / row[0];
      vert[j - 1].canonicalize();
    }
    v.vertices.push_back(std::move(vert));
  }
  return v;
}

}  // namespace multicomm
