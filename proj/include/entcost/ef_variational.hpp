#pragma once

#include <cstdint>
#include <vector>

#include "entcost/measures.hpp"
#include "entcost/states.hpp"

namespace entcost {

/// Pure-state ensemble {p_k, |psi_k>}.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  Matrix reconstruct() const;
  /// sum_k p_k E(psi_k)
  double average_entanglement() const;
};

struct OptimizerConfig {
  std::size_t ensemble_size = 0;  // 0 selects rank^2
  int restarts = 20;
  int max_iters = 3000;
  double step_tol = 1e-9;    // Riemannian gradient norm
  double value_tol = 1e-13;  // relative decrease per iteration
  std::uint64_t seed = 0;
  unsigned threads = 1;      // 0 selects hardware concurrency
};

struct EfResult {
  Ebits value;
  Decomposition decomposition;
  int restarts_converged = 0;
  std::vector<double> history;  // best value of each restart, by restart index
};

/// Numerical rank with the 1e-10 eigenvalue cut.
std::size_t numerical_rank(const DensityMatrix& rho);

/// Eigen-ensemble {lambda_i, |e_i>} over eigenvalues above 1e-10.
Decomposition decompose_sqrt(const DensityMatrix& rho);

/// |psi~_k> = sum_i U_ki sqrt(lambda_i) |e_i> for an m x r isometry U
/// (eigenvalues in descending order). Members with p_k <= 1e-12 are omitted.
Decomposition ensemble_from_isometry(const DensityMatrix& rho, const Matrix& u);

/// Feasible-point upper bound on the entanglement of formation, minimised
/// over m x r isometries by Riemannian conjugate gradient with polar
/// retraction. Restart 0 starts from the eigen-ensemble; restart k >= 1
/// from the polar factor of a Gaussian matrix drawn from Rng(seed, k).
EfResult ef_upper_bound(const DensityMatrix& rho, const OptimizerConfig& cfg);

/// rho (x) sigma regrouped as (A a | B b).
DensityMatrix tensor_product(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Closed form for two qubits and pure states, otherwise ef_upper_bound.
double ef_reference(const DensityMatrix& rho, const OptimizerConfig& cfg);

struct AdditivityResult {
  double gap = 0.0;
  EfResult joint;
  double reference_rho = 0.0;
  double reference_sigma = 0.0;
};

inline constexpr std::size_t kMaxJointDim = 256;

/// Ef upper bound of rho (x) sigma minus the sum of single-copy references.
/// Throws SizeError when the joint dimension exceeds kMaxJointDim.
AdditivityResult additivity_gap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const OptimizerConfig& cfg);

}  // namespace entcost
