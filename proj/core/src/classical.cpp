#include "multicomm/classical.hpp"

#include <algorithm>

namespace multicomm {

namespace {

/// Incremental exact rank tracker over rational vectors.
class RankTracker {
 public:
  /// Adds v to the span; returns true if the rank grew.
  bool add(RatVec v) {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (v[pivots_[i]] == 0) continue;
      const Rat f = v[pivots_[i]] / basis_[i][pivots_[i]];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * basis_[i][j];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    pivots_.push_back(p);
    basis_.push_back(std::move(v));
    return true;
  }
  int rank() const { return static_cast<int>(basis_.size()); }

 private:
  std::vector<RatVec> basis_;
  std::vector<std::size_t> pivots_;
};

std::vector<Encoder> deterministic_binary_encoders(int n_inputs) {
  std::vector<Encoder> out;
  for (int mask = 0; mask < (1 << n_inputs); ++mask) {
    Encoder e;
    e.table.assign(n_inputs, RatVec(2, Rat(0)));
    for (int x = 0; x < n_inputs; ++x) e.table[x][(mask >> x) & 1] = 1;
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<Rat> behavior_of(const Scenario& s, const Encoder& ea,
                             const Encoder& eb, const Decoder& dec) {
  std::vector<Rat> p(s.behavior_size(), Rat(0));
  const int n_m = static_cast<int>(ea.table[0].size());
  const int n_n = static_cast<int>(eb.table[0].size());
  for (int x = 1; x <= s.nx; ++x)
    for (int y = 1; y <= s.ny; ++y)
      for (int m = 1; m <= n_m; ++m) {
        if (ea.table[x - 1][m - 1] == 0) continue;
        for (int n = 1; n <= n_n; ++n) {
          if (eb.table[y - 1][n - 1] == 0) continue;
          p[s.index(x, y, dec.at(m, n))] +=
              ea.table[x - 1][m - 1] * eb.table[y - 1][n - 1];
        }
      }
  for (auto& v : p) v.canonicalize();
  return p;
}

/// Value contributed by message pair (m,n) when decoded to z.
Rat block_value(const Functional& f, const Encoder& ea, const Encoder& eb,
                int m, int n, int z) {
  const Scenario& s = f.scenario;
  Rat v = 0;
  for (int x = 1; x <= s.nx; ++x) {
    if (ea.table[x - 1][m - 1] == 0) continue;
    for (int y = 1; y <= s.ny; ++y) {
      if (eb.table[y - 1][n - 1] == 0) continue;
      v += f.coeff(x, y, z) * ea.table[x - 1][m - 1] * eb.table[y - 1][n - 1];
    }
  }
  return v;
}

/// Greedy optimal decoder for a fixed encoder pair (argmax per message pair,
/// ties to the smallest outcome) and its exact value.
std::pair<Rat, Decoder> greedy_decode(const Functional& f, const Encoder& ea,
                                      const Encoder& eb) {
  const int n_m = static_cast<int>(ea.table[0].size());
  const int n_n = static_cast<int>(eb.table[0].size());
  Decoder dec;
  dec.n_m = n_m;
  dec.n_n = n_n;
  dec.choice.assign(static_cast<std::size_t>(n_m) * n_n, 1);
  Rat total = 0;
  for (int m = 1; m <= n_m; ++m)
    for (int n = 1; n <= n_n; ++n) {
      Rat best = block_value(f, ea, eb, m, n, 1);
      int best_z = 1;
      for (int z = 2; z <= f.scenario.nz; ++z) {
        const Rat v = block_value(f, ea, eb, m, n, z);
        if (v > best) {
          best = v;
          best_z = z;
        }
      }
      dec.choice[(m - 1) * n_n + (n - 1)] = best_z;
      total += best;
    }
  total.canonicalize();
  return {total, dec};
}

std::pair<std::vector<Encoder>, std::vector<Encoder>> encoder_sets(
    const Scenario& s) {
  if (s.constraint == ConstraintType::Dimension)
    return {deterministic_binary_encoders(s.nx),
            deterministic_binary_encoders(s.ny)};
  return {enum_encoder_vertices_dist(s.nx, s.D1),
          enum_encoder_vertices_dist(s.ny, s.D2)};
}

}  // namespace

Rat Encoder::distinguishability() const {
  const int n = static_cast<int>(table.size());
  Rat sum = 0;
  for (std::size_t m = 0; m < table[0].size(); ++m) {
    Rat mx = 0;
    for (int x = 0; x < n; ++x)
      if (table[x][m] > mx) mx = table[x][m];
    sum += mx / n;
  }
  sum.canonicalize();
  return sum;
}

VertexEnumeration enum_vertices_dim(const Scenario& s) {
  s.validate();
  if (s.constraint != ConstraintType::Dimension)
    throw ModelError("enum_vertices_dim requires a dimension-bounded scenario");
  const auto enc_a = deterministic_binary_encoders(s.nx);
  const auto enc_b = deterministic_binary_encoders(s.ny);
  const int n_dec = s.nz * s.nz * s.nz * s.nz;

  VertexEnumeration out;
  out.raw.reserve(enc_a.size() * enc_b.size() * n_dec);
  for (const auto& ea : enc_a)
    for (const auto& eb : enc_b)
      for (int code = 0; code < n_dec; ++code) {
        Decoder dec;
        dec.n_m = 2;
        dec.n_n = 2;
        dec.choice.resize(4);
        int c = code;
        for (int i = 0; i < 4; ++i) {
          dec.choice[i] = c % s.nz + 1;
          c /= s.nz;
        }
        ClassicalVertex v;
        v.behavior = behavior_of(s, ea, eb, dec);
        v.encoder_a = ea;
        v.encoder_b = eb;
        v.decoder = std::move(dec);
        out.raw.push_back(std::move(v));
      }
  for (const auto& v : out.raw) out.deduped.push_back(v.behavior);
  std::sort(out.deduped.begin(), out.deduped.end());
  out.deduped.erase(std::unique(out.deduped.begin(), out.deduped.end()),
                    out.deduped.end());
  return out;
}

std::vector<Encoder> enum_encoder_vertices_dist(int n_inputs, const Rat& D) {
  if (n_inputs < 2) throw ModelError("need at least two inputs");
  if (D < Rat(1, n_inputs) || D > 1)
    throw ModelError("distinguishability cap out of range [1/n, 1]");
  const int n_m = 1 << (n_inputs - 1);
  const std::size_t np = static_cast<std::size_t>(n_inputs) * n_m;
  const std::size_t dim = np + n_m;  // p(m|x) entries then auxiliary t_m

  // Lifted polytope: p >= 0, rows sum to 1, t_m >= (1/n) p(m|x), sum t <= D.
  HPolytope h;
  auto pidx = [&](int x, int m) { return static_cast<std::size_t>(x) * n_m + m; };
  for (std::size_t j = 0; j < np; ++j) {
    RatVec row(dim + 1, Rat(0));
    row[1 + j] = -1;  // -p <= 0
    h.ineqs.push_back(std::move(row));
  }
  for (int x = 0; x < n_inputs; ++x)
    for (int m = 0; m < n_m; ++m) {
      RatVec row(dim + 1, Rat(0));
      row[1 + pidx(x, m)] = Rat(1, n_inputs);
      row[1 + np + m] = -1;  // (1/n) p(m|x) - t_m <= 0
      h.ineqs.push_back(std::move(row));
    }
  {
    RatVec row(dim + 1, Rat(0));
    row[0] = D;
    for (int m = 0; m < n_m; ++m) row[1 + np + m] = 1;
    h.ineqs.push_back(std::move(row));
  }
  for (int x = 0; x < n_inputs; ++x) {
    RatVec row(dim + 1, Rat(0));
    row[0] = 1;
    for (int m = 0; m < n_m; ++m) row[1 + pidx(x, m)] = 1;
    h.eqs.push_back(std::move(row));
  }

  const VPolytope lifted = facets_to_vertices(h);

  // One encoder per lifted vertex. Distinct lifted vertices can share the
  // same p(m|x) table (they differ only in the auxiliary t); keeping the
  // full lifted vertex set matches the counting convention of the bundled
  // reference values, and redundant tables never change a maximum over the
  // encoder set.
  std::vector<Encoder> out;
  out.reserve(lifted.vertices.size());
  for (const auto& v : lifted.vertices) {
    Encoder e;
    e.table.assign(n_inputs, RatVec(n_m));
    for (int x = 0; x < n_inputs; ++x)
      for (int m = 0; m < n_m; ++m) e.table[x][m] = v[pidx(x, m)];
    out.push_back(std::move(e));
  }
  return out;
}

ClassicalBound classical_bound(const Functional& f) {
  f.validate();
  const auto [enc_a, enc_b] = encoder_sets(f.scenario);
  ClassicalBound best;
  bool first = true;
  for (const auto& ea : enc_a)
    for (const auto& eb : enc_b) {
      auto [value, dec] = greedy_decode(f, ea, eb);
      if (first || value > best.value) {
        first = false;
        best.value = value;
        best.witness.encoder_a = ea;
        best.witness.encoder_b = eb;
        best.witness.decoder = std::move(dec);
      }
    }
  best.witness.behavior = behavior_of(f.scenario, best.witness.encoder_a,
                                      best.witness.encoder_b,
                                      best.witness.decoder);
  return best;
}

FacetCheck facet_check(const Functional& f) {
  f.validate();
  const Scenario& s = f.scenario;
  const Rat rhs = rhs_value_exact(f, s.D1, s.D2);
  const int full_dim = s.nx * s.ny * (s.nz - 1);

  FacetCheck res;
  res.valid = true;

  const auto [enc_a, enc_b] = encoder_sets(s);
  RankTracker tight_rank, poly_rank;
  std::vector<Rat> tight_base, poly_base;
  auto add_affine = [](RankTracker& rk, std::vector<Rat>& base,
                       const std::vector<Rat>& v) {
    if (base.empty()) {
      base = v;
      return;
    }
    RatVec diff(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - base[i];
    rk.add(std::move(diff));
  };

  for (const auto& ea : enc_a)
    for (const auto& eb : enc_b) {
      auto [value, dec] = greedy_decode(f, ea, eb);
      if (value > rhs) res.valid = false;
      const std::vector<Rat> base = behavior_of(s, ea, eb, dec);
      if (poly_rank.rank() + 1 < full_dim + 1) {
        add_affine(poly_rank, poly_base, base);
        // Single-block decoder swaps span every vertex reachable from this
        // encoder pair, affinely.
        for (int m = 1; m <= dec.n_m && poly_rank.rank() < full_dim; ++m)
          for (int n = 1; n <= dec.n_n; ++n)
            for (int z = 1; z <= s.nz; ++z) {
              if (z == dec.at(m, n)) continue;
              Decoder alt = dec;
              alt.choice[(m - 1) * dec.n_n + (n - 1)] = z;
              add_affine(poly_rank, poly_base, behavior_of(s, ea, eb, alt));
            }
      }
      if (value == rhs) {
        add_affine(tight_rank, tight_base, base);
        for (int m = 1; m <= dec.n_m; ++m)
          for (int n = 1; n <= dec.n_n; ++n) {
            const Rat best = block_value(f, ea, eb, m, n, dec.at(m, n));
            for (int z = 1; z <= s.nz; ++z) {
              if (z == dec.at(m, n)) continue;
              if (block_value(f, ea, eb, m, n, z) != best) continue;
              Decoder alt = dec;
              alt.choice[(m - 1) * dec.n_n + (n - 1)] = z;
              add_affine(tight_rank, tight_base, behavior_of(s, ea, eb, alt));
            }
          }
      }
    }

  res.polytope_dim = poly_base.empty() ? -1 : poly_rank.rank();
  res.tight_dim = tight_base.empty() ? -1 : tight_rank.rank();
  res.facet = res.valid && res.tight_dim >= 0 &&
              res.tight_dim == res.polytope_dim - 1;
  return res;
}

HPolytope facet_enumerate_dim(const Scenario& s) {
  s.validate();
  if (s.constraint != ConstraintType::Dimension)
    throw ModelError("facet_enumerate_dim requires a dimension-bounded scenario");
  if (s.behavior_size() > 24)
    throw CapacityError(
        "facet enumeration supported up to behavior tables of 24 entries "
        "(e.g. (4,3,2)); larger scenarios exceed the exact-arithmetic budget");
  const VertexEnumeration verts = enum_vertices_dim(s);
  VPolytope v;
  v.vertices = verts.deduped;
  return vertices_to_facets(v);
}

}  // namespace multicomm
