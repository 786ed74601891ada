#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace multicomm {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

/// Rank of a rational matrix (Gaussian elimination, exact).
int rat_rank(RatMat a);

/// Basis of the null space {x : A x = 0}; each returned vector is one basis
/// element of length a[0].size().
std::vector<RatVec> rat_nullspace(const RatMat& a);

/// Scales a vector by a positive rational so all entries are coprime
/// integers. Zero vectors are returned unchanged.
RatVec scale_to_coprime_integers(const RatVec& v);

Rat rat_dot(const RatVec& a, const RatVec& b);

std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

/// Exact rational from a double (every finite double is a dyadic rational).
Rat rat_from_double(double x);

}  // namespace multicomm
