#include "entcost/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace entcost {

namespace {

void require_square(const Matrix& m, const char* op) {
  if (!m.square()) {
    throw DimensionError(std::string(op) + ": matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected square");
  }
}

void require_split(const Matrix& m, DimSplit split, const char* op) {
  require_square(m, op);
  if (split.dA == 0 || split.dB == 0 || split.total() != m.rows()) {
    throw DimensionError(std::string(op) + ": split " + std::to_string(split.dA) + "x" +
                         std::to_string(split.dB) + " does not match dimension " +
                         std::to_string(m.rows()));
  }
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Row-major strides of a multipartite index.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// Offsets into the full index for every combination of digits on `subset`.
std::vector<std::size_t> subset_offsets(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> strides,
                                        const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> offsets{0};
  for (std::size_t k : subset) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[k]);
    for (std::size_t off : offsets)
      for (std::size_t d = 0; d < dims[k]; ++d) next.push_back(off + d * strides[k]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: " + std::to_string(data_.size()) + " entries for " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  Matrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, std::span<const cplx> v) {
  if (v.size() != rows_) throw DimensionError("set_column: length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::conj() const {
  Matrix c = *this;
  for (auto& x : c.data_) x = std::conj(x);
  return c;
}

cplx Matrix::trace() const {
  require_square(*this, "trace");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double Matrix::hermiticity_defect() const {
  require_square(*this, "hermiticity_defect");
  double worst = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

bool Matrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator+: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionError("operator-: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(Matrix m, cplx s) { return m *= s; }
Matrix operator*(cplx s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("operator*: " + std::to_string(lhs.rows()) + "x" +
                         std::to_string(lhs.cols()) + " times " + std::to_string(rhs.rows()) +
                         "x" + std::to_string(rhs.cols()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const cplx a = lhs(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Vector operator*(const Matrix& m, std::span<const cplx> v) {
  if (m.cols() != v.size()) throw DimensionError("matrix-vector: length mismatch");
  Vector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
  if (bra.size() != ket.size()) throw DimensionError("inner: length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

Vector kron(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() * b.size() > kMaxDim) throw SizeError("kron: vector dimension exceeds cap");
  Vector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw SizeError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " exceeds cap " + std::to_string(kMaxDim));
  }
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx x = a(i, j);
      if (x == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return out;
}

Matrix partial_trace(const Matrix& m, DimSplit split, Side keep) {
  require_split(m, split, "partial_trace");
  const std::size_t dims[2] = {split.dA, split.dB};
  const std::size_t kept[1] = {keep == Side::A ? std::size_t{0} : std::size_t{1}};
  return partial_trace(m, dims, kept);
}

Matrix partial_trace(const Matrix& m, std::span<const std::size_t> dims,
                     std::span<const std::size_t> keep) {
  require_square(m, "partial_trace");
  if (product(dims) != m.rows()) throw DimensionError("partial_trace: dims do not match matrix");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  if (!std::is_sorted(kept.begin(), kept.end()) ||
      std::adjacent_find(kept.begin(), kept.end()) != kept.end() ||
      (!kept.empty() && kept.back() >= dims.size())) {
    throw DimensionError("partial_trace: keep list must be ascending subsystem indices");
  }
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

  const auto strides = strides_of(dims);
  const auto off_keep = subset_offsets(dims, strides, kept);
  const auto off_trace = subset_offsets(dims, strides, traced);
  const std::size_t n = off_keep.size();
  Matrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx s = 0.0;
      for (std::size_t t : off_trace) s += m(off_keep[r] + t, off_keep[c] + t);
      out(r, c) = s;
    }
  return out;
}

Matrix partial_transpose(const Matrix& m, DimSplit split, Side side) {
  require_split(m, split, "partial_transpose");
  const std::size_t dA = split.dA;
  const std::size_t dB = split.dB;
  Matrix out(m.rows(), m.cols());
  for (std::size_t ia = 0; ia < dA; ++ia)
    for (std::size_t ib = 0; ib < dB; ++ib)
      for (std::size_t ja = 0; ja < dA; ++ja)
        for (std::size_t jb = 0; jb < dB; ++jb) {
          const cplx v = m(ia * dB + ib, ja * dB + jb);
          if (side == Side::A)
            out(ja * dB + ib, ia * dB + jb) = v;
          else
            out(ia * dB + jb, ja * dB + ib) = v;
        }
  return out;
}

Matrix permute_subsystems(const Matrix& m, std::span<const std::size_t> dims,
                          std::span<const std::size_t> perm) {
  require_square(m, "permute_subsystems");
  if (product(dims) != m.rows() || perm.size() != dims.size())
    throw DimensionError("permute_subsystems: dims do not match matrix");
  std::vector<std::size_t> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k)
    if (check[k] != k) throw DimensionError("permute_subsystems: not a permutation");

  std::vector<std::size_t> out_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) out_dims[k] = dims[perm[k]];
  const auto in_strides = strides_of(dims);
  const auto out_strides = strides_of(out_dims);

  const std::size_t n = m.rows();
  std::vector<std::size_t> relabel(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t target = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const std::size_t digit = (idx / in_strides[perm[k]]) % dims[perm[k]];
      target += digit * out_strides[k];
    }
    relabel[idx] = target;
  }
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(relabel[i], relabel[j]) = m(i, j);
  return out;
}

HermitianEigen eig_hermitian(const Matrix& h) {
  require_square(h, "eig_hermitian");
  if (!h.all_finite()) throw ContractError("eig_hermitian: non-finite entries");
  const double defect = h.hermiticity_defect();
  if (defect > kHermitianTol) {
    throw ContractError("eig_hermitian: input not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const std::size_t n = h.rows();
  // Work on the exactly Hermitian part.
  Matrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  Matrix v = Matrix::identity(n);

  const double scale = std::max(a.norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Gauge the (p,q) block real, then a standard real rotation.
        const cplx phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
        const cplx g_pp = c;
        const cplx g_pq = s;
        const cplx g_qp = -s * std::conj(phase);
        const cplx g_qq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigen out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> eigvals_hermitian(const Matrix& h) { return eig_hermitian(h).values; }

Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  const auto eig = eig_hermitian(h);
  const std::size_t n = h.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

std::vector<double> singular_values(const Matrix& m) {
  // Work on the orientation with fewer columns.
  Matrix a = m.cols() <= m.rows() ? m : m.adjoint();
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  constexpr int kMaxSweeps = 60;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(a(k, i));
          beta += std::norm(a(k, j));
          gamma += std::conj(a(k, i)) * a(k, j);
        }
        const double g = std::abs(gamma);
        if (g <= 1e-300 || g <= 1e-16 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx phase = std::conj(gamma) / g;  // e^{-i phi}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const cplx ai = a(k, i);
          const cplx aj = a(k, j) * phase;
          a(k, i) = c * ai - s * aj;
          a(k, j) = s * ai + c * aj;
        }
      }
    if (!rotated) break;
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, j));
    out[j] = std::sqrt(s);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Matrix psd_sqrt(const Matrix& h) {
  const auto eig = eig_hermitian(h);
  if (!eig.values.empty() && eig.values.front() < -kPsdClipTol) {
    throw ContractError("psd_sqrt: eigenvalue " + std::to_string(eig.values.front()) +
                        " below PSD tolerance");
  }
  const std::size_t n = h.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

Matrix polar_isometry(const Matrix& z) {
  const Matrix gram = z.adjoint() * z;
  const auto eig = eig_hermitian(gram);
  if (eig.values.empty() || eig.values.front() <= 1e-14 * std::max(1.0, eig.values.back()))
    throw DomainError("polar_isometry: matrix is rank deficient");
  const Matrix inv_root =
      hermitian_function(gram, [](double x) { return 1.0 / std::sqrt(x); });
  return z * inv_root;
}

}  // namespace entcost
