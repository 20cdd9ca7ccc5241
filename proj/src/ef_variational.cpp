#include "entcost/ef_variational.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "entcost/rng.hpp"

namespace entcost {

namespace {

constexpr double kRankCut = 1e-10;
constexpr double kWeightCut = 1e-12;

double real_inner(const Matrix& a, const Matrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    s += a.data()[k].real() * b.data()[k].real() + a.data()[k].imag() * b.data()[k].imag();
  return s;
}

// Projection onto the tangent space of the Stiefel manifold at u.
Matrix tangent_project(const Matrix& u, const Matrix& z) {
  Matrix uz = u.adjoint() * z;
  uz = 0.5 * (uz + uz.adjoint());
  return z - u * uz;
}

// Scaled eigenvectors sqrt(lambda_i) e_i as columns, eigenvalues descending.
struct Factorisation {
  Matrix w;  // d x r
  std::vector<double> lambda;
  std::vector<Vector> vecs;
};

Factorisation factorise(const DensityMatrix& rho) {
  const auto eig = eig_hermitian(rho.mat());
  Factorisation f;
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    if (eig.values[k] <= kRankCut) break;
    f.lambda.push_back(eig.values[k]);
    f.vecs.push_back(eig.vectors.column(k));
  }
  const std::size_t d = rho.dim();
  f.w = Matrix(d, f.lambda.size());
  for (std::size_t i = 0; i < f.lambda.size(); ++i)
    for (std::size_t x = 0; x < d; ++x) f.w(x, i) = std::sqrt(f.lambda[i]) * f.vecs[i][x];
  return f;
}

// f(U) = sum_k [ -tr s_k log s_k + t_k log t_k ],  s_k = tr_B |psi~_k><psi~_k|.
// Equals the ensemble average entanglement in bits.
class EnsembleObjective {
 public:
  EnsembleObjective(Matrix w, DimSplit split) : w_(std::move(w)), split_(split) {}

  double evaluate(const Matrix& u, Matrix* egrad) const {
    const std::size_t m = u.rows();
    const std::size_t r = u.cols();
    const std::size_t d = w_.rows();
    const auto [dA, dB] = split_;
    if (egrad) *egrad = Matrix(m, r);
    double total = 0.0;
    Vector psi(d);
    Matrix sigma(dA, dA);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t x = 0; x < d; ++x) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < r; ++i) s += u(k, i) * w_(x, i);
        psi[x] = s;
      }
      double t = 0.0;
      for (std::size_t a = 0; a < dA; ++a)
        for (std::size_t b = a; b < dA; ++b) {
          cplx s = 0.0;
          for (std::size_t y = 0; y < dB; ++y) s += psi[a * dB + y] * std::conj(psi[b * dB + y]);
          sigma(a, b) = s;
          sigma(b, a) = std::conj(s);
        }
      for (std::size_t a = 0; a < dA; ++a) t += sigma(a, a).real();
      if (t <= 1e-300) continue;
      const auto eig = eig_hermitian(sigma);
      double term = t * std::log2(t);
      for (double mu : eig.values)
        if (mu > 0.0) term -= mu * std::log2(mu);
      total += term;
      if (!egrad) continue;

      // G = log2(t) I - log2(s); zero eigenvalues floored relative to t.
      const double floor = t * 1e-14;
      Matrix g(dA, dA);
      for (std::size_t j = 0; j < dA; ++j) {
        const double coef = -std::log2(std::max(eig.values[j], floor));
        for (std::size_t a = 0; a < dA; ++a) {
          const cplx va = eig.vectors(a, j) * coef;
          for (std::size_t b = 0; b < dA; ++b) g(a, b) += va * std::conj(eig.vectors(b, j));
        }
      }
      const double lt = std::log2(t);
      for (std::size_t a = 0; a < dA; ++a) g(a, a) += lt;
      // (G x I_B) psi~, then project onto the columns of W.
      Vector gpsi(d);
      for (std::size_t a = 0; a < dA; ++a)
        for (std::size_t y = 0; y < dB; ++y) {
          cplx s = 0.0;
          for (std::size_t b = 0; b < dA; ++b) s += g(a, b) * psi[b * dB + y];
          gpsi[a * dB + y] = s;
        }
      for (std::size_t i = 0; i < r; ++i) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < d; ++x) s += std::conj(w_(x, i)) * gpsi[x];
        (*egrad)(k, i) = 2.0 * s;
      }
    }
    return std::max(total, 0.0);
  }

 private:
  Matrix w_;
  DimSplit split_;
};

struct RestartOutcome {
  Matrix u;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

RestartOutcome minimise(const EnsembleObjective& obj, Matrix u, const OptimizerConfig& cfg) {
  Matrix eg;
  double f = obj.evaluate(u, &eg);
  Matrix xi = tangent_project(u, eg);
  Matrix dir = -1.0 * xi;
  double step = 0.1;
  int flat = 0;
  RestartOutcome out;
  for (int it = 0; it < cfg.max_iters; ++it) {
    const double gnorm2 = real_inner(xi, xi);
    if (std::sqrt(gnorm2) <= cfg.step_tol) {
      out.converged = true;
      break;
    }
    double slope = real_inner(xi, dir);
    if (slope >= 0.0) {
      dir = -1.0 * xi;
      slope = -gnorm2;
    }
    double tau = std::min(step * 2.0, 1.0 / std::sqrt(real_inner(dir, dir)));
    Matrix trial;
    double f_trial = f;
    bool accepted = false;
    for (int bt = 0; bt < 50; ++bt) {
      trial = polar_isometry(u + tau * dir);
      f_trial = obj.evaluate(trial, nullptr);
      if (f_trial <= f + 1e-4 * tau * slope) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      if (slope != -gnorm2) {
        // Conjugate direction failed; retry along steepest descent once.
        dir = -1.0 * xi;
        continue;
      }
      out.converged = true;
      break;
    }
    step = tau;
    Matrix eg_new;
    const double f_new = obj.evaluate(trial, &eg_new);
    Matrix xi_new = tangent_project(trial, eg_new);
    const Matrix xi_moved = tangent_project(trial, xi);
    const Matrix dir_moved = tangent_project(trial, dir);
    const double beta = std::max(0.0, real_inner(xi_new, xi_new - xi_moved) / gnorm2);
    dir = beta * dir_moved - xi_new;

    const bool small = (f - f_new) <= cfg.value_tol * std::max(1.0, std::abs(f));
    u = std::move(trial);
    f = f_new;
    xi = std::move(xi_new);
    flat = small ? flat + 1 : 0;
    if (flat >= 5) {
      out.converged = true;
      break;
    }
  }
  out.u = std::move(u);
  out.value = f;
  return out;
}

}  // namespace

Matrix Decomposition::reconstruct() const {
  if (states.empty()) throw DomainError("Decomposition: empty ensemble");
  const std::size_t d = states.front().dim();
  Matrix rho(d, d);
  for (std::size_t k = 0; k < states.size(); ++k) rho += weights[k] * states[k].projector();
  return rho;
}

double Decomposition::average_entanglement() const {
  double s = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) s += weights[k] * entropy_of_entanglement(states[k]).value();
  return s;
}

std::size_t numerical_rank(const DensityMatrix& rho) {
  const auto vals = eigvals_hermitian(rho.mat());
  return static_cast<std::size_t>(std::count_if(vals.begin(), vals.end(), [](double x) { return x > kRankCut; }));
}

Decomposition decompose_sqrt(const DensityMatrix& rho) {
  const auto f = factorise(rho);
  Decomposition out;
  for (std::size_t i = 0; i < f.lambda.size(); ++i) {
    out.weights.push_back(f.lambda[i]);
    out.states.push_back(PureState::normalized(f.vecs[i], rho.split()));
  }
  return out;
}

namespace {

Decomposition ensemble_from_factor(const Factorisation& f, DimSplit split, const Matrix& u) {
  const std::size_t d = f.w.rows();
  Decomposition out;
  for (std::size_t k = 0; k < u.rows(); ++k) {
    Vector psi(d);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t i = 0; i < u.cols(); ++i) psi[x] += u(k, i) * f.w(x, i);
    const double p = std::pow(norm(psi), 2);
    if (p <= kWeightCut) continue;
    out.weights.push_back(p);
    out.states.push_back(PureState::normalized(std::move(psi), split));
  }
  return out;
}

}  // namespace

Decomposition ensemble_from_isometry(const DensityMatrix& rho, const Matrix& u) {
  const auto f = factorise(rho);
  if (u.cols() != f.lambda.size())
    throw DomainError("ensemble_from_isometry: isometry has " + std::to_string(u.cols()) +
                      " columns, rank is " + std::to_string(f.lambda.size()));
  if (max_abs_diff(u.adjoint() * u, Matrix::identity(u.cols())) > 1e-9)
    throw DomainError("ensemble_from_isometry: U is not an isometry");
  return ensemble_from_factor(f, rho.split(), u);
}

EfResult ef_upper_bound(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  const auto f = factorise(rho);
  const std::size_t r = f.lambda.size();
  const std::size_t m = cfg.ensemble_size == 0 ? r * r : cfg.ensemble_size;
  if (m < r) throw DomainError("ef_upper_bound: ensemble size below rank");
  if (cfg.restarts < 1) throw DomainError("ef_upper_bound: restarts must be >= 1");
  if (cfg.max_iters < 0) throw DomainError("ef_upper_bound: max_iters must be >= 0");
  if (!(cfg.step_tol >= 0.0) || !(cfg.value_tol >= 0.0)) throw DomainError("ef_upper_bound: negative tolerance");

  const EnsembleObjective obj(f.w, rho.split());
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  std::vector<RestartOutcome> outcomes(restarts);

  auto run = [&](std::size_t idx) {
    Matrix start(m, r);
    if (idx == 0) {
      for (std::size_t i = 0; i < r; ++i) start(i, i) = 1.0;
    } else {
      Rng rng(cfg.seed, idx);
      start = polar_isometry(rng.gaussian_matrix(m, r));
    }
    outcomes[idx] = minimise(obj, std::move(start), cfg);
  };

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, restarts));
  if (workers <= 1) {
    for (std::size_t i = 0; i < restarts; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < restarts; i = next++) run(i);
      });
  }

  EfResult result;
  std::size_t best = 0;
  for (std::size_t i = 0; i < restarts; ++i) {
    result.history.push_back(outcomes[i].value);
    if (outcomes[i].converged) ++result.restarts_converged;
    if (outcomes[i].value < outcomes[best].value) best = i;
  }
  result.decomposition = ensemble_from_factor(f, rho.split(), outcomes[best].u);
  result.value = Ebits(result.decomposition.average_entanglement());
  return result;
}

DensityMatrix tensor_product(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const std::size_t total = rho.dim() * sigma.dim();
  if (total > kMaxJointDim)
    throw SizeError("tensor_product: joint dimension " + std::to_string(total) + " exceeds " +
                    std::to_string(kMaxJointDim));
  const Matrix joint = kron(rho.mat(), sigma.mat());
  const auto [dA, dB] = rho.split();
  const auto [da, db] = sigma.split();
  const std::size_t dims[] = {dA, dB, da, db};
  const std::size_t perm[] = {0, 2, 1, 3};
  Matrix regrouped = permute_subsystems(joint, dims, perm);
  regrouped = 0.5 * (regrouped + regrouped.adjoint());
  return DensityMatrix(std::move(regrouped), {dA * da, dB * db});
}

double ef_reference(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  if (rho.split() == DimSplit{2, 2}) return ef_two_qubit(rho).value();
  const auto dec = decompose_sqrt(rho);
  if (dec.states.size() == 1) return entropy_of_entanglement(dec.states.front()).value();
  return ef_upper_bound(rho, cfg).value.value();
}

AdditivityResult additivity_gap(const DensityMatrix& rho, const DensityMatrix& sigma,
                                const OptimizerConfig& cfg) {
  const DensityMatrix joint = tensor_product(rho, sigma);
  AdditivityResult out;
  out.reference_rho = ef_reference(rho, cfg);
  out.reference_sigma = ef_reference(sigma, cfg);
  out.joint = ef_upper_bound(joint, cfg);
  out.gap = out.joint.value.value() - (out.reference_rho + out.reference_sigma);
  return out;
}

}  // namespace entcost
