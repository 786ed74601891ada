#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "multicomm/tolerances.hpp"

namespace multicomm {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major. All matrices in this library are tiny
/// (at most a few thousand entries), so there is no sparse path.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  bool is_hermitian(double tol = kHermitianTol) const;

  const std::vector<cplx>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvectors are the unit-norm columns of `eigenvectors`.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

enum class Side { A, B };

/// Kronecker product; block (i,j) of the result equals a(i,j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a (dA*dB)x(dA*dB) matrix over the given side.
/// side == B traces out the second factor and returns a dA x dA matrix.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dA,
                            std::size_t dB, Side side);

/// Full spectrum of a Hermitian matrix via cyclic Jacobi on the 2n x 2n
/// real-symmetric embedding [[Re, -Im], [Im, Re]]. Throws std::invalid_argument
/// if the input is not Hermitian within kHermitianTol.
Spectrum hermitian_eig(const ComplexMatrix& a);

/// Haar-random rank-1 density matrix |psi><psi| in dimension d,
/// deterministic for a fixed seed.
ComplexMatrix random_pure_state(std::size_t d, std::uint64_t seed);

/// Same, drawing from a caller-owned generator state (for restart loops).
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  ComplexMatrix pure_state(std::size_t d);
  double uniform();  // in [0,1)

 private:
  std::uint64_t next();
  std::uint64_t state_;
};

/// Cyclic Jacobi eigensolver for a dense real symmetric matrix (row-major,
/// size n*n). Returns eigenvalues ascending; `vectors` gets the eigenvector
/// columns. Shared by hermitian_eig and the property tests.
void symmetric_eig(const std::vector<double>& a, std::size_t n,
                   std::vector<double>& values, std::vector<double>& vectors);

}  // namespace multicomm
