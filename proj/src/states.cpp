#include "entcost/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entcost/rng.hpp"

namespace entcost {

namespace {

void require_split(std::size_t dim, DimSplit split, const char* what) {
  if (split.dA == 0 || split.dB == 0 || split.total() != dim) {
    throw DimensionError(std::string(what) + ": split " + std::to_string(split.dA) + "x" +
                         std::to_string(split.dB) + " does not match dimension " +
                         std::to_string(dim));
  }
}

// |a>_A |b>_B in dA x dB
Vector basis_ket(DimSplit split, std::size_t a, std::size_t b) {
  Vector v(split.total());
  v[a * split.dB + b] = 1.0;
  return v;
}

struct Term {
  double amp;
  std::size_t a;
  std::size_t b;
};

PureState from_terms(DimSplit split, std::initializer_list<Term> terms, double prefactor) {
  Vector v(split.total());
  for (const auto& t : terms) v[t.a * split.dB + t.b] += prefactor * t.amp;
  return PureState(std::move(v), split);
}

}  // namespace

PureState::PureState(Vector amplitudes, DimSplit split) : vec_(std::move(amplitudes)), split_(split) {
  require_split(vec_.size(), split_, "PureState");
  const double n = norm(vec_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kStateTol)
    throw ContractError("PureState: norm " + std::to_string(n) + " is not 1");
}

PureState PureState::normalized(Vector amplitudes, DimSplit split) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("PureState: cannot normalise a zero vector");
  for (auto& x : amplitudes) x /= n;
  return PureState(std::move(amplitudes), split);
}

DensityMatrix::DensityMatrix(Matrix mat, DimSplit split) : mat_(std::move(mat)), split_(split) {
  if (!mat_.square()) throw DimensionError("DensityMatrix: matrix not square");
  require_split(mat_.rows(), split_, "DensityMatrix");
  if (!mat_.all_finite()) throw ContractError("DensityMatrix: non-finite entries");
  if (!mat_.is_hermitian(kStateTol)) throw ContractError("DensityMatrix: not Hermitian");
  const cplx tr = mat_.trace();
  if (std::abs(tr - 1.0) > kStateTol)
    throw ContractError("DensityMatrix: trace " + std::to_string(tr.real()) + " is not 1");
  const auto vals = eigvals_hermitian(mat_);
  if (vals.front() < -kStateTol)
    throw ContractError("DensityMatrix: negative eigenvalue " + std::to_string(vals.front()));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), psi.split());
}

SubspaceBasis::SubspaceBasis(DimSplit ambient_, std::vector<PureState> vectors_, double tol)
    : ambient(ambient_), vectors(std::move(vectors_)) {
  if (vectors.empty()) throw DomainError("SubspaceBasis: empty basis");
  if (vectors.size() > ambient.total()) throw DomainError("SubspaceBasis: more vectors than dimension");
  for (const auto& v : vectors)
    if (v.split() != ambient) throw DomainError("SubspaceBasis: vector split differs from ambient split");
  const double defect = orthonormality_defect();
  if (defect > tol)
    throw DomainError("SubspaceBasis: vectors not orthonormal (defect " + std::to_string(defect) + ")");
}

double SubspaceBasis::orthonormality_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = 0; j < vectors.size(); ++j) {
      const cplx g = inner(vectors[i].vec(), vectors[j].vec());
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  return worst;
}

BellMixParam::BellMixParam(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 0.5)) throw DomainError("BellMixParam: p = " + std::to_string(p) + " outside [0, 1/2]");
}

PureState bell_state(BellKind kind) {
  const double h = std::numbers::sqrt2 / 2.0;
  const DimSplit qubits{2, 2};
  switch (kind) {
    case BellKind::PhiPlus: return PureState({h, 0.0, 0.0, h}, qubits);
    case BellKind::PhiMinus: return PureState({h, 0.0, 0.0, -h}, qubits);
    case BellKind::PsiPlus: return PureState({0.0, h, h, 0.0}, qubits);
    case BellKind::PsiMinus: return PureState({0.0, h, -h, 0.0}, qubits);
  }
  throw DomainError("bell_state: unknown kind");
}

DensityMatrix bell_mix(BellMixParam param) {
  const double p = param.p();
  Matrix m = (1.0 - p) * bell_state(BellKind::PhiPlus).projector() +
             p * bell_state(BellKind::PhiMinus).projector();
  return DensityMatrix(std::move(m), {2, 2});
}

SubspaceBasis subspace_basis(int example_id) {
  const double r2 = std::numbers::sqrt2;
  const double r3 = std::numbers::sqrt3;
  switch (example_id) {
    case 1: {
      const DimSplit s{2, 2};
      return SubspaceBasis(s, {PureState(basis_ket(s, 0, 0), s), PureState(basis_ket(s, 1, 1), s)});
    }
    case 2: {
      const DimSplit s{3, 3};
      return SubspaceBasis(s, {from_terms(s, {{1, 1, 2}, {-1, 2, 1}}, 1.0 / r2),
                               from_terms(s, {{1, 2, 0}, {-1, 0, 2}}, 1.0 / r2),
                               from_terms(s, {{1, 0, 1}, {-1, 1, 0}}, 1.0 / r2)});
    }
    case 3: {
      const DimSplit s{2, 3};
      return SubspaceBasis(s, {from_terms(s, {{1, 0, 2}, {-r2, 1, 0}}, 1.0 / r3),
                               from_terms(s, {{1, 1, 2}, {-r2, 0, 1}}, -1.0 / r3)});
    }
    case 4: {
      const DimSplit s{3, 6};
      return SubspaceBasis(s, {from_terms(s, {{1, 1, 2}, {1, 2, 1}, {r2, 0, 3}}, 0.5),
                               from_terms(s, {{1, 2, 0}, {1, 0, 2}, {r2, 1, 4}}, 0.5),
                               from_terms(s, {{1, 0, 1}, {1, 1, 0}, {r2, 2, 5}}, 0.5)});
    }
    default:
      throw DomainError("subspace_basis: unknown example id " + std::to_string(example_id));
  }
}

SubspaceBasis example4_literal_basis() {
  const double r2 = std::numbers::sqrt2;
  const DimSplit s{3, 6};
  return SubspaceBasis(s, {from_terms(s, {{1, 1, 2}, {1, 2, 1}, {r2, 0, 3}}, 0.5),
                           from_terms(s, {{1, 2, 0}, {1, 0, 2}, {r2, 1, 4}}, 0.5),
                           from_terms(s, {{1, 0, 1}, {1, 1, 0}, {r2, 0, 5}}, 0.5)});
}

PureState embed(std::span<const cplx> coeffs, const SubspaceBasis& basis) {
  if (coeffs.size() != basis.size())
    throw DomainError("embed: " + std::to_string(coeffs.size()) + " coefficients for a basis of size " +
                      std::to_string(basis.size()));
  Vector v(basis.ambient.total());
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    const auto& ket = basis.vectors[a].vec();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += coeffs[a] * ket[i];
  }
  return PureState::normalized(std::move(v), basis.ambient);
}

PureState random_pure(DimSplit split, std::uint64_t seed) {
  if (split.dA == 0 || split.dB == 0) throw DomainError("random_pure: zero dimension");
  Rng rng(seed);
  return PureState::normalized(rng.gaussian_vector(split.total()), split);
}

DensityMatrix random_density(DimSplit split, std::size_t rank, std::uint64_t seed) {
  const std::size_t d = split.total();
  if (d == 0) throw DomainError("random_density: zero dimension");
  if (rank == 0 || rank > d) throw DomainError("random_density: rank must lie in [1, dim]");
  Rng rng(seed);
  const Matrix g = rng.gaussian_matrix(d, rank);
  Matrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // Exact Hermitian symmetrisation against rounding.
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(std::move(rho), split);
}

}  // namespace entcost
