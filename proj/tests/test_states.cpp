#include <doctest.h>

#include <cmath>
#include <numbers>

#include "entcost/rng.hpp"
#include "entcost/states.hpp"

using namespace entcost;

namespace {
const double kH = std::numbers::sqrt2 / 2;

// Norm of the component of v orthogonal to span(basis).
double off_span(const Vector& v, const SubspaceBasis& basis) {
  Vector rest = v;
  for (const auto& b : basis.vectors) {
    const cplx c = inner(b.vec(), v);
    for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= c * b.vec()[i];
  }
  return norm(rest);
}
}  // namespace

TEST_CASE("bell states") {
  const auto pp = bell_state(BellKind::PhiPlus);
  const auto pm = bell_state(BellKind::PhiMinus);
  CHECK(pp.vec() == Vector{kH, 0.0, 0.0, kH});
  CHECK(pm.vec() == Vector{kH, 0.0, 0.0, -kH});
  CHECK(std::abs(inner(pp.vec(), pm.vec())) < 1e-15);
  CHECK(pp.split() == DimSplit{2, 2});
  const BellKind all[] = {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};
  for (auto a : all)
    for (auto b : all)
      CHECK(std::abs(inner(bell_state(a).vec(), bell_state(b).vec()) - (a == b ? 1.0 : 0.0)) < 1e-15);
}

TEST_CASE("bell_mix") {
  CHECK(max_abs_diff(bell_mix(BellMixParam(0.0)).mat(), bell_state(BellKind::PhiPlus).projector()) < 1e-15);

  const double half[] = {0.5, 0, 0, 0.5};
  CHECK(max_abs_diff(bell_mix(BellMixParam(0.5)).mat(), Matrix::diagonal(half)) < 1e-15);

  const Matrix q = bell_mix(BellMixParam(0.25)).mat();
  CHECK(q(0, 0).real() == doctest::Approx(0.5));
  CHECK(q(3, 3).real() == doctest::Approx(0.5));
  CHECK(q(0, 3).real() == doctest::Approx(0.25));
  CHECK(q(3, 0).real() == doctest::Approx(0.25));
  CHECK(std::abs(q(1, 1)) + std::abs(q(2, 2)) + std::abs(q(0, 1)) == 0.0);

  for (int i = 0; i <= 50; ++i) {
    const double p = 0.01 * i;
    const auto vals = eigvals_hermitian(bell_mix(BellMixParam(p)).mat());
    CHECK(std::abs(vals[0]) < 1e-12);
    CHECK(std::abs(vals[1]) < 1e-12);
    CHECK(std::abs(vals[2] - std::min(p, 1 - p)) < 1e-12);
    CHECK(std::abs(vals[3] - std::max(p, 1 - p)) < 1e-12);
  }

  CHECK_THROWS_AS(BellMixParam(-0.01), DomainError);
  CHECK_THROWS_AS(BellMixParam(0.51), DomainError);
  CHECK_THROWS_AS(BellMixParam(std::nan("")), DomainError);
}

TEST_CASE("subspace bases") {
  const auto b1 = subspace_basis(1);
  CHECK(b1.vectors[0].vec() == Vector{1.0, 0.0, 0.0, 0.0});
  CHECK(b1.vectors[1].vec() == Vector{0.0, 0.0, 0.0, 1.0});

  const auto b2 = subspace_basis(2);
  CHECK(b2.ambient == DimSplit{3, 3});
  Vector expect(9);
  expect[0 * 3 + 1] = kH;
  expect[1 * 3 + 0] = -kH;
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(b2.vectors[2].vec()[i] - expect[i]) < 1e-15);

  CHECK(subspace_basis(3).ambient == DimSplit{2, 3});
  CHECK(subspace_basis(4).ambient == DimSplit{3, 6});
  CHECK(subspace_basis(4).size() == 3);

  for (int id = 1; id <= 4; ++id) CHECK(subspace_basis(id).orthonormality_defect() <= 1e-12);
  CHECK(example4_literal_basis().orthonormality_defect() <= 1e-12);

  CHECK_THROWS_AS(subspace_basis(0), DomainError);
  CHECK_THROWS_AS(subspace_basis(5), DomainError);
}

TEST_CASE("example-4 literal and corrected bases differ only in the third vector") {
  const auto fixed = subspace_basis(4);
  const auto literal = example4_literal_basis();
  CHECK(fixed.vectors[0].vec() == literal.vectors[0].vec());
  CHECK(fixed.vectors[1].vec() == literal.vectors[1].vec());
  CHECK(std::abs(fixed.vectors[2].vec()[2 * 6 + 5] - kH) < 1e-15);
  CHECK(std::abs(literal.vectors[2].vec()[0 * 6 + 5] - kH) < 1e-15);
}

TEST_CASE("SubspaceBasis rejects non-orthonormal input") {
  const DimSplit s{2, 2};
  const PureState a({1.0, 0.0, 0.0, 0.0}, s);
  const PureState b({kH, kH, 0.0, 0.0}, s);
  CHECK_THROWS_AS(SubspaceBasis(s, {a, b}), DomainError);
}

TEST_CASE("embed") {
  const auto b1 = subspace_basis(1);
  const cplx c10[] = {1.0, 0.0};
  CHECK(embed(c10, b1).vec() == Vector{1.0, 0.0, 0.0, 0.0});
  const cplx c11[] = {kH, kH};
  const auto phi = embed(c11, b1);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(phi.vec()[i] - bell_state(BellKind::PhiPlus).vec()[i]) < 1e-15);

  const cplx c100[] = {1.0, 0.0, 0.0};
  const auto v = embed(c100, subspace_basis(2));
  CHECK(std::abs(v.vec()[1 * 3 + 2] - kH) < 1e-15);
  CHECK(std::abs(v.vec()[2 * 3 + 1] + kH) < 1e-15);

  const cplx zero[] = {0.0, 0.0};
  CHECK_THROWS_AS(embed(zero, b1), DomainError);
  CHECK_THROWS_AS(embed(c100, b1), DomainError);

  for (int id = 1; id <= 4; ++id) {
    const auto basis = subspace_basis(id);
    Rng rng(900 + id);
    for (int s = 0; s < 20; ++s) {
      const auto psi = embed(rng.gaussian_vector(basis.size()), basis);
      CHECK(std::abs(norm(psi.vec()) - 1.0) < 1e-12);
      CHECK(off_span(psi.vec(), basis) <= 1e-12);
    }
  }
}

TEST_CASE("random states") {
  const auto psi = random_pure({2, 2}, 17);
  CHECK(std::abs(norm(psi.vec()) - 1.0) < 1e-12);
  CHECK(random_pure({2, 2}, 17).vec() == psi.vec());
  CHECK(random_pure({2, 2}, 18).vec() != psi.vec());

  const auto rho = random_density({2, 2}, 2, 5);
  const auto vals = eigvals_hermitian(rho.mat());
  CHECK(vals[0] <= 1e-10);
  CHECK(vals[1] <= 1e-10);
  CHECK(vals[2] > 1e-6);
  const auto again = random_density({2, 2}, 2, 5);
  CHECK(max_abs_diff(rho.mat(), again.mat()) == 0.0);

  CHECK_THROWS_AS(random_density({2, 2}, 5, 1), DomainError);
  CHECK_THROWS_AS(random_density({2, 2}, 0, 1), DomainError);
  CHECK_THROWS_AS(random_pure({0, 2}, 1), DomainError);
}

TEST_CASE("DensityMatrix invariants") {
  CHECK_THROWS_AS(DensityMatrix(Matrix::identity(2), {2, 1}), ContractError);
  const double neg[] = {1.5, -0.5};
  CHECK_THROWS_AS(DensityMatrix(Matrix::diagonal(neg), {2, 1}), ContractError);
  const Matrix nonherm{{0.5, 0.1}, {0.0, 0.5}};
  CHECK_THROWS_AS(DensityMatrix(nonherm, {2, 1}), ContractError);
  CHECK_THROWS_AS(DensityMatrix(0.25 * Matrix::identity(4), {2, 3}), DimensionError);
  CHECK_THROWS_AS(PureState({1.0, 1.0}, {2, 1}), ContractError);
}
