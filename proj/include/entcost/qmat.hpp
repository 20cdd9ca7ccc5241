#pragma once

// Dense complex linear algebra for small operators (dimension up to a few
// hundred). Row-major storage, value semantics.

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "entcost/errors.hpp"

namespace entcost {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenResidualTol = 1e-9;
inline constexpr double kPsdClipTol = 1e-10;
inline constexpr std::size_t kMaxDim = 4096;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Nested row lists, e.g. Matrix{{1, 0}, {0, 1}}.
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  /// |ket><bra|
  static Matrix outer(std::span<const cplx> ket, std::span<const cplx> bra);
  static Matrix projector(std::span<const cplx> ket) { return outer(ket, ket); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> data() { return data_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const cplx> v);

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  cplx trace() const;
  /// Frobenius norm.
  double norm() const;
  /// max_ij |M_ij - M_ji^*|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }
  bool all_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(Matrix m, cplx s);
Matrix operator*(cplx s, Matrix m);
Vector operator*(const Matrix& m, std::span<const cplx> v);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);  // <bra|ket>
double norm(std::span<const cplx> v);
Vector kron(std::span<const cplx> a, std::span<const cplx> b);

/// Bipartite factorisation of a dimension, d = dA * dB.
struct DimSplit {
  std::size_t dA = 1;
  std::size_t dB = 1;
  std::size_t total() const { return dA * dB; }
  bool operator==(const DimSplit&) const = default;
};

enum class Side { A, B };

Matrix kron(const Matrix& a, const Matrix& b);

/// Keeps the chosen factor and traces out the other one.
Matrix partial_trace(const Matrix& m, DimSplit split, Side keep);

/// Transposes the chosen tensor factor in place of the full operator.
Matrix partial_transpose(const Matrix& m, DimSplit split, Side side);

/// Reduces an operator on a multipartite space d[0] x d[1] x ... to the
/// factors listed in `keep` (ascending order of subsystem index).
Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep);

/// Reorders tensor factors: output factor k is input factor perm[k].
Matrix permute_subsystems(const Matrix& m, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Throws ContractError on non-Hermitian input.
HermitianEigen eig_hermitian(const Matrix& h);

std::vector<double> eigvals_hermitian(const Matrix& h);

/// V f(Lambda) V^dagger for Hermitian h.
Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f);

/// Singular values (descending) by one-sided Jacobi; absolute accuracy of
/// order machine epsilon times the norm, including for tiny values.
std::vector<double> singular_values(const Matrix& m);

/// Principal square root of a PSD matrix; eigenvalues in [-kPsdClipTol, 0)
/// are clipped to zero, anything lower throws ContractError.
Matrix psd_sqrt(const Matrix& h);

/// Closest isometry Z (Z^dagger Z)^{-1/2}. Requires full column rank.
Matrix polar_isometry(const Matrix& z);

}  // namespace entcost
