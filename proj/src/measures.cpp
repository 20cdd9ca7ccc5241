#include "entcost/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entcost/rng.hpp"

namespace entcost {

namespace {

double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double entropy_of(const Matrix& rho) {
  const auto vals = eigvals_hermitian(rho);
  return spectrum_entropy(vals);
}

}  // namespace

Ebits::Ebits(double v) {
  if (!std::isfinite(v)) throw ContractError("Ebits: non-finite value");
  if (v < -1e-12) throw ContractError("Ebits: negative value " + std::to_string(v));
  value_ = std::max(v, 0.0);
}

Ebits binary_entropy(double x) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw DomainError("binary_entropy: x = " + std::to_string(x) + " outside [0, 1]");
  x = std::clamp(x, 0.0, 1.0);
  return Ebits(-plogp(x) - plogp(1.0 - x));
}

double spectrum_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    if (l < -kPsdClipTol) throw ContractError("spectrum_entropy: negative eigenvalue " + std::to_string(l));
    s -= plogp(l);
  }
  return std::max(s, 0.0);
}

Ebits von_neumann_entropy(const DensityMatrix& rho) { return Ebits(entropy_of(rho.mat())); }

Matrix reduced_state(const PureState& psi, Side keep) {
  // tr_B |psi><psi| = Psi Psi^dagger with Psi the dA x dB coefficient matrix.
  const auto [dA, dB] = psi.split();
  const auto& v = psi.vec();
  if (keep == Side::A) {
    Matrix out(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
      for (std::size_t j = 0; j < dA; ++j) {
        cplx s = 0.0;
        for (std::size_t b = 0; b < dB; ++b) s += v[i * dB + b] * std::conj(v[j * dB + b]);
        out(i, j) = s;
      }
    return out;
  }
  Matrix out(dB, dB);
  for (std::size_t i = 0; i < dB; ++i)
    for (std::size_t j = 0; j < dB; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < dA; ++a) s += v[a * dB + i] * std::conj(v[a * dB + j]);
      out(i, j) = s;
    }
  return out;
}

Ebits entropy_of_entanglement(const PureState& psi) { return Ebits(entropy_of(reduced_state(psi, Side::A))); }

double concurrence(const DensityMatrix& rho) {
  if (rho.split() != DimSplit{2, 2}) throw DomainError("concurrence: requires a 2x2 split");
  // With rho = W W^dagger (W = [sqrt(l_i) e_i]), the nonzero eigenvalues of
  // sqrt(rho) rho~ sqrt(rho) are the squared singular values of the
  // symmetric matrix W^T (Y x Y) W. Taking singular values directly
  // avoids square roots of rounding noise in the null space.
  const auto eig = eig_hermitian(rho.mat());
  if (eig.values.front() < -kStateTol) throw ContractError("concurrence: state is not PSD");
  Matrix w(4, 4);
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t x = 0; x < 4; ++x) w(x, c) = std::sqrt(std::max(eig.values[c], 0.0)) * eig.vectors(x, c);
  const Matrix y{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}};
  const Matrix tau = w.transpose() * kron(y, y) * w;
  const std::vector<double> lambda = singular_values(tau);
  const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

Ebits ef_from_concurrence(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("ef_from_concurrence: C outside [0, 1]");
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
}

Ebits ef_two_qubit(const DensityMatrix& rho) { return ef_from_concurrence(concurrence(rho)); }

Ebits ec_bell_mix(BellMixParam param) {
  const double p = param.p();
  return binary_entropy(0.5 + std::sqrt(p * (1.0 - p)));
}

Ebits ed_hashing(BellMixParam param) {
  return Ebits(std::max(0.0, 1.0 - binary_entropy(param.p()).value()));
}

ConstantEntanglement constant_entanglement_check(const SubspaceBasis& basis, int samples,
                                                 std::uint64_t seed) {
  if (samples < 2) throw DomainError("constant_entanglement_check: need at least 2 samples");
  Rng rng(seed);
  ConstantEntanglement out;
  out.is_constant = true;
  for (int s = 0; s < samples; ++s) {
    const Vector c = rng.gaussian_vector(basis.size());
    const PureState phi = embed(c, basis);
    auto spec = eigvals_hermitian(reduced_state(phi, Side::A));
    for (auto& l : spec)
      if (std::abs(l) < kPsdClipTol) l = 0.0;
    if (s == 0) {
      out.spectrum = spec;
      continue;
    }
    for (std::size_t k = 0; k < spec.size(); ++k)
      if (std::abs(spec[k] - out.spectrum[k]) > 1e-8) out.is_constant = false;
  }
  out.value = Ebits(spectrum_entropy(out.spectrum));
  return out;
}

double ssa_check(std::span<const cplx> psi, std::array<std::size_t, 3> dims) {
  if (dims[0] * dims[1] * dims[2] != psi.size())
    throw DomainError("ssa_check: dims do not match the state length");
  const Matrix rho = Matrix::projector(psi);
  const std::size_t k12[] = {0, 1};
  const std::size_t k23[] = {1, 2};
  const std::size_t k2[] = {1};
  const double s12 = entropy_of(partial_trace(rho, dims, k12));
  const double s23 = entropy_of(partial_trace(rho, dims, k23));
  const double s2 = entropy_of(partial_trace(rho, dims, k2));
  const double s123 = entropy_of(rho);
  return s12 + s23 - s123 - s2;
}

}  // namespace entcost
