#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "entcost/states.hpp"

namespace entcost {

/// CPTP map B(C^din) -> B(C^dout) in Kraus form.
class QuantumChannel {
 public:
  /// Each Kraus operator is dout x din; sum K^dagger K = I within 1e-9.
  QuantumChannel(std::size_t din, std::size_t dout, std::vector<Matrix> kraus);

  std::size_t din() const { return din_; }
  std::size_t dout() const { return dout_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;

 private:
  std::size_t din_;
  std::size_t dout_;
  std::vector<Matrix> kraus_;
};

/// The map |a><b| -> tr_B(|a>_V <b|) on the coefficient space of V.
QuantumChannel trace_out_map(const SubspaceBasis& basis);

/// (id x N)(|Omega><Omega|), |Omega> = sum_i |ii> / sqrt(din). Split (din, dout).
DensityMatrix choi(const QuantumChannel& ch);

/// Kraus operators from a Choi state; eigenvalues below 1e-10 are dropped.
QuantumChannel channel_from_choi(const DensityMatrix& choi_state);

struct PptResult {
  bool passes = false;
  double min_eig = 0.0;
  Vector min_vec;  // eigenvector of the partial transpose for min_eig
};

/// Spectrum test on the B-side partial transpose; passes iff min_eig >= -1e-9.
PptResult is_ppt(const DensityMatrix& rho);

/// The d(d+1) vectors of a complete set of mutually unbiased bases of C^d.
/// Only d = 3 is supported: computational basis, then for b = 0, 1, 2 the
/// vectors (1/sqrt3) sum_j w^(b j^2 + m j) |j>, m = 0, 1, 2, w = e^(2 pi i/3).
std::vector<Vector> mub_two_design(int d = 3);

/// Normalised projector onto the symmetric subspace of C^d x C^d, P_+ / tr P_+.
Matrix symmetric_projector_state(std::size_t d);

enum class EbVerdict { Breaking, NotBreaking, Indeterminate };
enum class EbMethod { Ppt2x2, Ppt2x3, PptViolation, DesignDecomposition, HolevoForm };

std::string_view to_string(EbVerdict v);
std::string_view to_string(EbMethod m);

/// One term w |a><a| x |b><b| of a separable decomposition.
struct ProductTerm {
  double weight;
  Vector a;
  Vector b;
};

struct EbCertificate {
  EbVerdict verdict = EbVerdict::Indeterminate;
  std::optional<EbMethod> method;
  double min_pt_eig = 0.0;
  Vector pt_witness;                  // set for NotBreaking
  std::vector<ProductTerm> ensemble;  // set for DesignDecomposition
  /// max entrywise |sum_terms - Choi| for the ensemble, if any.
  double ensemble_residual = 0.0;
};

/// Decides entanglement breaking through the Choi state:
/// negative partial transpose -> NotBreaking; PPT in 2x2 / 2x3 -> Breaking;
/// Choi == P_+/6 on 3x3 -> Breaking via the MUB design; else Indeterminate.
EbCertificate eb_certify(const QuantumChannel& ch);
EbCertificate eb_certify_choi(const DensityMatrix& choi_state);

/// Measure-and-prepare term: outcome operator and prepared state.
struct HolevoTerm {
  Matrix measurement;
  Matrix output;
};

/// sum_k tr(M_k X) rho_k. Throws DomainError unless the M_k are PSD and
/// sum to the identity within 1e-9.
Matrix holevo_apply(std::span<const HolevoTerm> form, const Matrix& x);

/// {|a><a|, |a><a|}_{a=0,1}: the dephasing realisation of the example-1 map.
std::vector<HolevoTerm> example1_holevo_form();

}  // namespace entcost
