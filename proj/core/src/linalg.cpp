#include "multicomm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace multicomm {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix shape mismatch in *");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA,
                            std::size_t dB, Side side) {
  if (m.rows() != m.cols() || m.rows() != dA * dB)
    throw std::invalid_argument("partial_trace: size mismatch");
  if (side == Side::B) {
    ComplexMatrix r(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j)
        for (std::size_t k = 0; k < dB; ++k)
          r(i, j) += m(i * dB + k, j * dB + k);
    return r;
  }
  ComplexMatrix r(dB, dB);
  for (std::size_t i = 0; i < dB; ++i)
    for (std::size_t j = 0; j < dB; ++j)
      for (std::size_t k = 0; k < dA; ++k) r(i, j) += m(k * dB + i, k * dB + j);
  return r;
}

void symmetric_eig(const std::vector<double>& a, std::size_t n,
                   std::vector<double>& values, std::vector<double>& vectors) {
  std::vector<double> m = a;  // working copy, row-major
  vectors.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) vectors[i * n + i] = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) scale = std::max(scale, std::abs(m[i]));
  if (scale == 0.0) scale = 1.0;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += m[p * n + q] * m[p * n + q];
    if (std::sqrt(off) <= 1e-15 * scale * n) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double app = m[p * n + p];
        const double aqq = m[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = vectors[k * n + p];
          const double vkq = vectors[k * n + q];
          vectors[k * n + p] = c * vkp - s * vkq;
          vectors[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
  }

  values.resize(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = m[i * n + i];

  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
  std::vector<double> sv(n), svec(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    sv[j] = values[order[j]];
    for (std::size_t i = 0; i < n; ++i) svec[i * n + j] = vectors[i * n + order[j]];
  }
  values = std::move(sv);
  vectors = std::move(svec);
}

Spectrum hermitian_eig(const ComplexMatrix& a) {
  if (!a.is_hermitian(kHermitianTol))
    throw std::invalid_argument("hermitian_eig: input is not Hermitian");
  const std::size_t n = a.rows();

  // Real-symmetric embedding [[Re, -Im], [Im, Re]]; every eigenvalue of the
  // complex matrix appears twice, paired below.
  std::vector<double> e(4 * n * n, 0.0);
  const std::size_t N = 2 * n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double re = a(i, j).real();
      const double im = a(i, j).imag();
      e[i * N + j] = re;
      e[(i + n) * N + (j + n)] = re;
      e[i * N + (j + n)] = -im;
      e[(i + n) * N + j] = im;
    }

  std::vector<double> vals, vecs;
  symmetric_eig(e, N, vals, vecs);

  double scale = std::max(1.0, a.max_abs());

  Spectrum s;
  s.eigenvalues.reserve(n);
  s.eigenvectors = ComplexMatrix(n, n);
  std::vector<std::vector<cplx>> accepted;

  std::size_t col = 0;
  std::size_t k = 0;
  while (k < N && col < n) {
    // Cluster of (numerically) equal eigenvalues; it has even size and
    // contributes half that many complex eigenvectors.
    std::size_t end = k + 1;
    while (end < N && std::abs(vals[end] - vals[k]) <= 1e-9 * scale) ++end;
    std::vector<std::vector<cplx>> cluster;
    for (std::size_t j = k; j < end && cluster.size() < (end - k) / 2; ++j) {
      std::vector<cplx> w(n);
      for (std::size_t i = 0; i < n; ++i)
        w[i] = cplx(vecs[i * N + j], vecs[(i + n) * N + j]);
      // Complex Gram-Schmidt against already accepted vectors in this cluster.
      for (const auto& u : cluster) {
        cplx ip = 0.0;
        for (std::size_t i = 0; i < n; ++i) ip += std::conj(u[i]) * w[i];
        for (std::size_t i = 0; i < n; ++i) w[i] -= ip * u[i];
      }
      double nrm2 = 0.0;
      for (const auto& v : w) nrm2 += std::norm(v);
      if (nrm2 < 0.25) continue;  // duplicate of an accepted vector (i*w copy)
      const double inv = 1.0 / std::sqrt(nrm2);
      for (auto& v : w) v *= inv;
      cluster.push_back(std::move(w));
    }
    for (std::size_t j = 0; j < cluster.size() && col < n; ++j) {
      double mean = 0.0;
      for (std::size_t t = k; t < end; ++t) mean += vals[t];
      mean /= static_cast<double>(end - k);
      s.eigenvalues.push_back(mean);
      for (std::size_t i = 0; i < n; ++i) s.eigenvectors(i, col) = cluster[j][i];
      ++col;
    }
    k = end;
  }
  if (col != n) throw std::runtime_error("hermitian_eig: eigenvector pairing failed");
  return s;
}

std::uint64_t HaarSampler::next() {
  // splitmix64: small, portable, identical output on every platform.
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double HaarSampler::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

ComplexMatrix HaarSampler::pure_state(std::size_t d) {
  if (d < 1) throw std::invalid_argument("pure_state: d must be >= 1");
  // Normalized complex Gaussian vector via Box-Muller.
  std::vector<cplx> psi(d);
  double nrm2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    psi[i] = cplx(r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2));
    nrm2 += std::norm(psi[i]);
  }
  const double inv = 1.0 / std::sqrt(nrm2);
  ComplexMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      rho(i, j) = psi[i] * std::conj(psi[j]) * (inv * inv);
  return rho;
}

ComplexMatrix random_pure_state(std::size_t d, std::uint64_t seed) {
  HaarSampler s(seed);
  return s.pure_state(d);
}

}  // namespace multicomm
