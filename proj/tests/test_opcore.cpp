#include "qlr/opcore.hpp"

#include "qlr/davies.hpp"
#include "qlr/dephasing.hpp"
#include "qlr/lindblad.hpp"
#include "qlr/pauli.hpp"

#include "support/oracles.hpp"
#include "support/random_models.hpp"

#include <doctest.h>

using namespace qlr;
namespace pt = qlr::pauli;

TEST_CASE("commutator: pauli algebra and identity case") {
  CHECK((commutator(pt::x(), pt::y()) - 2.0 * kI * pt::z())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  testing::Rng rng(11);
  const Matrix a = testing::random_matrix(rng, 3);
  CHECK(commutator(a, a).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("commutator: random 4x4 against entrywise brute force") {
  testing::Rng rng(12);
  const Matrix a = testing::random_matrix(rng, 4);
  const Matrix b = testing::random_matrix(rng, 4);
  const Matrix direct = testing::matmul_bruteforce(a, b) -
                        testing::matmul_bruteforce(b, a);
  CHECK((commutator(a, b) - direct).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("commutator: dimension mismatch throws") {
  CHECK_THROWS_AS(commutator(pt::x(), Matrix::Identity(3, 3)),
                  DimensionError);
}

TEST_CASE("weighted_inner: pinned qubit values") {
  testing::Rng rng(13);
  const DensityMatrix rho = testing::random_density(rng, 2);
  CHECK(std::abs(weighted_inner(rho, pt::id2(), pt::id2()) - 1.0) < 1e-14);

  const DensityMatrix maximally_mixed(0.5 * pt::id2());
  CHECK(std::abs(weighted_inner(maximally_mixed, pt::x(), pt::y())) < 1e-15);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.7;
  diag(1, 1) = 0.3;
  const DensityMatrix rho73(diag);
  CHECK(std::abs(weighted_inner(rho73, pt::z(), pt::z()) - 1.0) < 1e-15);
}

TEST_CASE("weighted_inner: conjugate symmetry and positivity") {
  testing::Rng rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = testing::random_density(rng, 3);
    const Matrix a = testing::random_matrix(rng, 3);
    const Matrix b = testing::random_matrix(rng, 3);
    CHECK(std::abs(weighted_inner(rho, b, a) -
                   std::conj(weighted_inner(rho, a, b))) < 1e-13);
    CHECK(weighted_inner(rho, a, a).real() > -1e-13);
    CHECK(std::abs(weighted_inner(rho, a, a).imag()) < 1e-13);
  }
  // rho = 1/d reduces to the Hilbert-Schmidt norm^2 / d
  const Index d = 3;
  const DensityMatrix mixed(Matrix::Identity(d, d) / double(d));
  const Matrix a = testing::random_matrix(rng, d);
  CHECK(std::abs(weighted_inner(mixed, a, a) -
                 a.squaredNorm() / double(d)) < 1e-13);
}

TEST_CASE("sharp_conjugate: identity map is fixed") {
  testing::Rng rng(15);
  const DensityMatrix rho = testing::random_density(rng, 2);
  const Matrix id = Matrix::Identity(4, 4);
  CHECK((sharp_conjugate(id, rho) - id).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sharp_conjugate: commutator map is anti-hermitean") {
  // H = i[H,.] with [H, rho] = 0 gives H# = -H
  Matrix rho_m = Matrix::Zero(2, 2);
  rho_m(0, 0) = 0.7;
  rho_m(1, 1) = 0.3;
  const DensityMatrix rho(rho_m);
  const Matrix h = 1.3 * pt::z();
  const Matrix commutator_map =
      kI * (left_mult_superop(h) - right_mult_superop(h));
  CHECK((sharp_conjugate(commutator_map, rho) + commutator_map)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  // and for a stationary state the sharp equals the Hilbert-Schmidt dual
  CHECK((sharp_conjugate(commutator_map, rho) - commutator_map.adjoint())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("sharp_conjugate: adjoint-defining identity on random maps") {
  testing::Rng rng(16);
  Matrix rho_m = Matrix::Zero(2, 2);
  rho_m(0, 0) = 0.7;
  rho_m(1, 1) = 0.3;
  const DensityMatrix rho(rho_m);
  const Matrix m = testing::random_matrix(rng, 4);
  const Matrix m_sharp = sharp_conjugate(m, rho);
  for (int rep = 0; rep < 20; ++rep) {
    const Matrix a = testing::random_matrix(rng, 2);
    const Matrix b = testing::random_matrix(rng, 2);
    const Complex lhs = weighted_inner(rho, a, unvec(m * vec(b)));
    const Complex rhs = weighted_inner(rho, unvec(m_sharp * vec(a)), b);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("sharp_conjugate: involution for full-rank rho") {
  testing::Rng rng(17);
  const DensityMatrix rho = testing::random_density(rng, 3);
  REQUIRE(rho.full_rank());
  const Matrix m = testing::random_matrix(rng, 9);
  const Matrix twice = sharp_conjugate(sharp_conjugate(m, rho), rho);
  CHECK((twice - m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sharp_conjugate: rank-deficient rho is rejected") {
  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  const DensityMatrix rho(pure);
  CHECK_FALSE(rho.full_rank());
  CHECK_THROWS_AS(sharp_conjugate(Matrix::Identity(4, 4), rho),
                  PreconditionError);
}

TEST_CASE("is_detailed_balance: dissipative Davies qubit satisfies it") {
  const DaviesQubit q(0.0, 0.8, 0.6, 0.9);
  const SuperOperator l = build_superoperator(q.generator());
  CHECK(is_detailed_balance(l.mat, q.gibbs_state(), 1e-10));
}

TEST_CASE("is_detailed_balance: unitary generator is anti-hermitean") {
  const SuperOperator l = hamiltonian_superoperator(pt::z());
  const DensityMatrix rho(0.5 * pt::id2());
  CHECK_FALSE(is_detailed_balance(l.mat, rho, 1e-10));
}

TEST_CASE("is_detailed_balance: real-rate dephasing with kernel state") {
  // commuting jumps with real Lambda; any commutant state works, including
  // rank-deficient ones
  const std::vector<Matrix> jumps = {std::sqrt(0.4) * pt::z()};
  const LindbladGenerator gen(Matrix::Zero(2, 2), jumps);
  const SuperOperator l = build_superoperator(gen);
  Matrix rho_m = Matrix::Zero(2, 2);
  rho_m(0, 0) = 1.0;  // projector, rank deficient, still in the kernel
  CHECK(is_detailed_balance(l.mat, DensityMatrix(rho_m), 1e-10));
}

TEST_CASE("DensityMatrix: invariant validation") {
  CHECK_THROWS_AS(DensityMatrix(pt::x()), PreconditionError);  // trace 0
  Matrix not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(not_psd), PreconditionError);
  Matrix not_herm(2, 2);
  not_herm << 0.5, 0.3, 0.1, 0.5;
  CHECK_THROWS_AS(DensityMatrix(not_herm), PreconditionError);
}

TEST_CASE("WeightedProduct wraps the state") {
  testing::Rng rng(18);
  const WeightedProduct inner(testing::random_density(rng, 2));
  const Matrix a = testing::random_matrix(rng, 2);
  CHECK(std::abs(inner(a, a) - weighted_inner(inner.state(), a, a)) == 0.0);
}

TEST_CASE("vec/unvec: column stacking convention") {
  Matrix m(2, 2);
  m << 1, Complex(2, 1), 3, 4;
  const Vector v = vec(m);
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(3, 0));  // column-major: (0,0),(1,0),(0,1),(1,1)
  CHECK(v(2) == Complex(2, 1));
  CHECK((unvec(v) - m).cwiseAbs().maxCoeff() == 0.0);

  // vec(L X R) = (R^T kron L) vec(X)
  testing::Rng rng(19);
  const Matrix l = testing::random_matrix(rng, 2);
  const Matrix r = testing::random_matrix(rng, 2);
  const Matrix x = testing::random_matrix(rng, 2);
  const Vector lhs = vec(Matrix(l * x * r));
  const Vector rhs = kron(r.transpose(), l) * vec(x);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
}
