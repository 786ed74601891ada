#include "multicomm/rational.hpp"

#include <sstream>
#include <stdexcept>

namespace multicomm {

int rat_rank(RatMat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<RatVec> rat_nullspace(const RatMat& a) {
  if (a.empty()) return {};
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();
  RatMat m = a;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    const Rat d = m[r][c];
    for (std::size_t j = 0; j < cols; ++j) m[r][j] /= d;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<RatVec> basis;
  for (std::size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    RatVec v(cols, Rat(0));
    v[free_c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -m[i][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVec scale_to_coprime_integers(const RatVec& v) {
  mpz_class den_lcm = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                        x.get_den().get_mpz_t());
  mpz_class num_gcd = 0;
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(den_lcm);
    s.canonicalize();
    out[i] = s;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), s.get_num().get_mpz_t());
  }
  if (num_gcd == 0) return out;
  for (auto& x : out) {
    x /= Rat(num_gcd);
    x.canonicalize();
  }
  return out;
}

Rat rat_dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("rat_dot: size mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
  r.canonicalize();
  return r;
}

Rat rat_from_double(double x) {
  Rat r(x);
  r.canonicalize();
  return r;
}

}  // namespace multicomm
