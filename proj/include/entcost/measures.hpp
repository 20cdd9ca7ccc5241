#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "entcost/states.hpp"

namespace entcost {

/// Entanglement in ebits (log base 2). Values in [-1e-12, 0) clip to 0.
class Ebits {
 public:
  Ebits() = default;
  explicit Ebits(double v);
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

/// S(x, 1-x) in bits, 0 log 0 := 0.
Ebits binary_entropy(double x);

/// Shannon entropy of a spectrum; entries in [-1e-10, 0) count as 0.
double spectrum_entropy(std::span<const double> spectrum);

Ebits von_neumann_entropy(const DensityMatrix& rho);

/// A-side reduced state of a bipartite ket.
Matrix reduced_state(const PureState& psi, Side keep = Side::A);

/// S(tr_B |psi><psi|).
Ebits entropy_of_entanglement(const PureState& psi);

/// max(0, l1 - l2 - l3 - l4), l_i^2 the eigenvalues of
/// sqrt(rho) rho~ sqrt(rho), rho~ = (Y x Y) rho^* (Y x Y).
double concurrence(const DensityMatrix& rho);

/// H_2((1 + sqrt(1 - C^2)) / 2) for C the concurrence.
Ebits ef_two_qubit(const DensityMatrix& rho);
Ebits ef_from_concurrence(double c);

/// H_2(1/2 + sqrt(p(1-p)))
Ebits ec_bell_mix(BellMixParam param);

/// 1 - H_2(p), clipped at zero.
Ebits ed_hashing(BellMixParam param);

struct ConstantEntanglement {
  bool is_constant = false;
  std::vector<double> spectrum;  // ascending, length dA
  Ebits value;
};

/// Samples random superpositions of the basis and compares their
/// reduced A-side spectra (agreement within 1e-8).
ConstantEntanglement constant_entanglement_check(const SubspaceBasis& basis, int samples = 64,
                                                 std::uint64_t seed = 0);

/// S(12) + S(23) - S(123) - S(2) for a tripartite ket on d1 x d2 x d3.
double ssa_check(std::span<const cplx> psi, std::array<std::size_t, 3> dims);

}  // namespace entcost
