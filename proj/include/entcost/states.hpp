#pragma once

#include <cstdint>
#include <vector>

#include "entcost/qmat.hpp"

namespace entcost {

inline constexpr double kStateTol = 1e-10;

/// Unit-norm ket with a bipartite split.
class PureState {
 public:
  /// Validates the norm (within kStateTol) and the split.
  PureState(Vector amplitudes, DimSplit split);

  /// Scales a nonzero vector to unit norm first.
  static PureState normalized(Vector amplitudes, DimSplit split);

  const Vector& vec() const { return vec_; }
  DimSplit split() const { return split_; }
  std::size_t dim() const { return vec_.size(); }
  Matrix projector() const { return Matrix::projector(vec_); }

 private:
  Vector vec_;
  DimSplit split_;
};

/// Hermitian, unit-trace, PSD operator with a bipartite split.
class DensityMatrix {
 public:
  /// Throws ContractError if any invariant fails at kStateTol.
  DensityMatrix(Matrix mat, DimSplit split);

  static DensityMatrix from_pure(const PureState& psi);

  const Matrix& mat() const { return mat_; }
  DimSplit split() const { return split_; }
  std::size_t dim() const { return mat_.rows(); }

 private:
  Matrix mat_;
  DimSplit split_;
};

/// Ordered orthonormal vectors spanning a subspace of H_A (x) H_B.
struct SubspaceBasis {
  DimSplit ambient;
  std::vector<PureState> vectors;

  /// Validates shape and orthonormality within `tol`; throws DomainError.
  SubspaceBasis(DimSplit ambient, std::vector<PureState> vectors, double tol = kStateTol);

  std::size_t size() const { return vectors.size(); }
  /// max |<a|b> - delta_ab|
  double orthonormality_defect() const;
};

/// Mixing weight of the two-Bell-state family, restricted to [0, 1/2].
class BellMixParam {
 public:
  explicit BellMixParam(double p);
  double p() const { return p_; }

 private:
  double p_;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

PureState bell_state(BellKind kind);

/// (1-p)|Phi+><Phi+| + p|Phi-><Phi-|
DensityMatrix bell_mix(BellMixParam param);

/// Subspace bases used by the worked examples:
///  1: {|00>, |11>} in 2x2
///  2: antisymmetric subspace of 3x3
///  3: two vectors in 2x3
///  4: three vectors in 3x6; B basis |0>..|5>, third vector
///     (|01> + |10> + sqrt2 |2>_A|5>_B)/2
/// Throws DomainError for any other id.
SubspaceBasis subspace_basis(int example_id);

/// Example-4 basis with the third vector taken literally as
/// (|01> + |10> + sqrt2 |0>_A|5>_B)/2. Orthonormal, but tr_B is no longer
/// of the form (I + X^T)/4 and the reduced spectrum varies over the span.
SubspaceBasis example4_literal_basis();

/// Normalised sum_a c_a |a>. Throws DomainError on length mismatch or a
/// zero vector.
PureState embed(std::span<const cplx> coeffs, const SubspaceBasis& basis);

/// Haar-random ket: normalised vector of i.i.d. complex Gaussians drawn
/// from Rng(seed).
PureState random_pure(DimSplit split, std::uint64_t seed);

/// sum_i g_i g_i^dagger / tr over `rank` Gaussian vectors from Rng(seed).
DensityMatrix random_density(DimSplit split, std::size_t rank, std::uint64_t seed);

}  // namespace entcost
