#include "entcost/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace entcost {

namespace {

constexpr double kTraceTol = 1e-9;
constexpr double kPptTol = 1e-9;
constexpr double kKrausDropTol = 1e-10;
constexpr double kDesignMatchTol = 1e-8;

// Choi state from the action on matrix units, J = (1/din) sum |i><j| x N(|i><j|).
template <typename Action>
Matrix choi_from_action(std::size_t din, std::size_t dout, Action&& unit_image) {
  Matrix j(din * dout, din * dout);
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b) {
      const Matrix img = unit_image(a, b);
      for (std::size_t x = 0; x < dout; ++x)
        for (std::size_t y = 0; y < dout; ++y) j(a * dout + x, b * dout + y) = img(x, y) / double(din);
    }
  return 0.5 * (j + j.adjoint());
}

QuantumChannel kraus_from_choi_matrix(const Matrix& j, std::size_t din, std::size_t dout) {
  const auto eig = eig_hermitian(j);
  std::vector<Matrix> kraus;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double lam = eig.values[k];
    if (lam <= kKrausDropTol) continue;
    const double scale = std::sqrt(lam * double(din));
    Matrix op(dout, din);
    for (std::size_t a = 0; a < din; ++a)
      for (std::size_t x = 0; x < dout; ++x) op(x, a) = scale * eig.vectors(a * dout + x, k);
    kraus.push_back(std::move(op));
  }
  return QuantumChannel(din, dout, std::move(kraus));
}

}  // namespace

QuantumChannel::QuantumChannel(std::size_t din, std::size_t dout, std::vector<Matrix> kraus)
    : din_(din), dout_(dout), kraus_(std::move(kraus)) {
  if (din_ == 0 || dout_ == 0) throw DomainError("QuantumChannel: zero dimension");
  if (kraus_.empty()) throw DomainError("QuantumChannel: no Kraus operators");
  Matrix sum(din_, din_);
  for (const auto& k : kraus_) {
    if (k.rows() != dout_ || k.cols() != din_) throw DimensionError("QuantumChannel: Kraus operator shape");
    sum += k.adjoint() * k;
  }
  const double defect = max_abs_diff(sum, Matrix::identity(din_));
  if (defect > kTraceTol)
    throw ContractError("QuantumChannel: not trace preserving (defect " + std::to_string(defect) + ")");
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  if (x.rows() != din_ || x.cols() != din_) throw DimensionError("QuantumChannel::apply: input shape");
  Matrix out(dout_, dout_);
  for (const auto& k : kraus_) out += k * x * k.adjoint();
  return out;
}

QuantumChannel trace_out_map(const SubspaceBasis& basis) {
  const std::size_t r = basis.size();
  const auto [dA, dB] = basis.ambient;
  const Matrix j = choi_from_action(r, dA, [&](std::size_t a, std::size_t b) {
    const auto& ka = basis.vectors[a].vec();
    const auto& kb = basis.vectors[b].vec();
    Matrix img(dA, dA);
    for (std::size_t x = 0; x < dA; ++x)
      for (std::size_t y = 0; y < dA; ++y) {
        cplx s = 0.0;
        for (std::size_t t = 0; t < dB; ++t) s += ka[x * dB + t] * std::conj(kb[y * dB + t]);
        img(x, y) = s;
      }
    return img;
  });
  return kraus_from_choi_matrix(j, r, dA);
}

DensityMatrix choi(const QuantumChannel& ch) {
  const Matrix j = choi_from_action(ch.din(), ch.dout(), [&](std::size_t a, std::size_t b) {
    Matrix unit(ch.din(), ch.din());
    unit(a, b) = 1.0;
    return ch.apply(unit);
  });
  return DensityMatrix(j, {ch.din(), ch.dout()});
}

QuantumChannel channel_from_choi(const DensityMatrix& choi_state) {
  const auto [din, dout] = choi_state.split();
  return kraus_from_choi_matrix(choi_state.mat(), din, dout);
}

PptResult is_ppt(const DensityMatrix& rho) {
  const auto eig = eig_hermitian(partial_transpose(rho.mat(), rho.split(), Side::B));
  PptResult out;
  out.min_eig = eig.values.front();
  out.passes = out.min_eig >= -kPptTol;
  out.min_vec = eig.vectors.column(0);
  return out;
}

std::vector<Vector> mub_two_design(int d) {
  if (d != 3) throw DomainError("mub_two_design: only d = 3 is supported");
  std::vector<Vector> out;
  for (int m = 0; m < 3; ++m) {
    Vector v(3);
    v[m] = 1.0;
    out.push_back(std::move(v));
  }
  const double inv = 1.0 / std::numbers::sqrt3;
  for (int b = 0; b < 3; ++b)
    for (int m = 0; m < 3; ++m) {
      Vector v(3);
      for (int j = 0; j < 3; ++j) {
        const int power = (b * j * j + m * j) % 3;
        v[j] = std::polar(inv, 2.0 * std::numbers::pi * power / 3.0);
      }
      out.push_back(std::move(v));
    }
  return out;
}

Matrix symmetric_projector_state(std::size_t d) {
  const std::size_t n = d * d;
  Matrix p(n, n);
  // (I + SWAP) / 2 normalised by its trace d(d+1)/2.
  const double norm = 1.0 / double(d * (d + 1));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      p(i * d + j, i * d + j) += norm;
      p(i * d + j, j * d + i) += norm;
    }
  return p;
}

std::string_view to_string(EbVerdict v) {
  switch (v) {
    case EbVerdict::Breaking: return "breaking";
    case EbVerdict::NotBreaking: return "not_breaking";
    case EbVerdict::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

std::string_view to_string(EbMethod m) {
  switch (m) {
    case EbMethod::Ppt2x2: return "ppt_2x2";
    case EbMethod::Ppt2x3: return "ppt_2x3";
    case EbMethod::PptViolation: return "ppt_violation";
    case EbMethod::DesignDecomposition: return "design_decomposition";
    case EbMethod::HolevoForm: return "holevo_form";
  }
  return "";
}

EbCertificate eb_certify_choi(const DensityMatrix& choi_state) {
  EbCertificate cert;
  const auto ppt = is_ppt(choi_state);
  cert.min_pt_eig = ppt.min_eig;
  if (!ppt.passes) {
    cert.verdict = EbVerdict::NotBreaking;
    cert.method = EbMethod::PptViolation;
    cert.pt_witness = ppt.min_vec;
    return cert;
  }
  const auto [d1, d2] = choi_state.split();
  if (d1 == 2 && d2 == 2) {
    cert.verdict = EbVerdict::Breaking;
    cert.method = EbMethod::Ppt2x2;
    return cert;
  }
  if ((d1 == 2 && d2 == 3) || (d1 == 3 && d2 == 2)) {
    cert.verdict = EbVerdict::Breaking;
    cert.method = EbMethod::Ppt2x3;
    return cert;
  }
  if (d1 == 3 && d2 == 3 && max_abs_diff(choi_state.mat(), symmetric_projector_state(3)) <= kDesignMatchTol) {
    const auto design = mub_two_design(3);
    const double w = 1.0 / double(design.size());
    Matrix sum(9, 9);
    for (const auto& phi : design) {
      cert.ensemble.push_back({w, phi, phi});
      const Vector prod = kron(std::span<const cplx>(phi), std::span<const cplx>(phi));
      sum += w * Matrix::projector(prod);
    }
    cert.ensemble_residual = max_abs_diff(sum, choi_state.mat());
    cert.verdict = EbVerdict::Breaking;
    cert.method = EbMethod::DesignDecomposition;
    return cert;
  }
  cert.verdict = EbVerdict::Indeterminate;
  return cert;
}

EbCertificate eb_certify(const QuantumChannel& ch) { return eb_certify_choi(choi(ch)); }

Matrix holevo_apply(std::span<const HolevoTerm> form, const Matrix& x) {
  if (form.empty()) throw DomainError("holevo_apply: empty form");
  const std::size_t din = form.front().measurement.rows();
  const std::size_t dout = form.front().output.rows();
  if (x.rows() != din || x.cols() != din) throw DimensionError("holevo_apply: input shape");
  Matrix completeness(din, din);
  for (const auto& t : form) {
    if (t.measurement.rows() != din || !t.measurement.square() || t.output.rows() != dout ||
        !t.output.square())
      throw DimensionError("holevo_apply: inconsistent term shapes");
    if (!t.measurement.is_hermitian(kTraceTol) || eigvals_hermitian(t.measurement).front() < -kTraceTol)
      throw DomainError("holevo_apply: measurement operator is not PSD");
    completeness += t.measurement;
  }
  if (max_abs_diff(completeness, Matrix::identity(din)) > kTraceTol)
    throw DomainError("holevo_apply: measurement operators do not sum to the identity");
  Matrix out(dout, dout);
  for (const auto& t : form) out += (t.measurement * x).trace() * t.output;
  return out;
}

std::vector<HolevoTerm> example1_holevo_form() {
  std::vector<HolevoTerm> form;
  for (std::size_t a = 0; a < 2; ++a) {
    Matrix p(2, 2);
    p(a, a) = 1.0;
    form.push_back({p, p});
  }
  return form;
}

}  // namespace entcost
