#include "qlr/dephasing.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace qlr {

DephasingModel::DephasingModel(std::vector<Matrix> projectors, Matrix lambda)
    : projectors_(std::move(projectors)), lambda_(std::move(lambda)) {
  if (projectors_.empty())
    throw PreconditionError("DephasingModel: no projectors");
  const Index d = projectors_.front().rows();
  const Index n = static_cast<Index>(projectors_.size());
  if (lambda_.rows() != n || lambda_.cols() != n)
    throw DimensionError("DephasingModel: Lambda is not n_blocks x n_blocks");

  Matrix sum = Matrix::Zero(d, d);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Matrix prod = projectors_[a] * projectors_[b];
      const Matrix expect = (a == b) ? projectors_[a] : Matrix::Zero(d, d);
      if ((prod - expect).cwiseAbs().maxCoeff() > 1e-12)
        throw PreconditionError(
            "DephasingModel: projectors are not orthogonal idempotents");
    }
    sum += projectors_[a];
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("DephasingModel: projectors do not resolve 1");

  if (!is_hermitian(lambda_, 1e-10))
    throw PreconditionError("DephasingModel: Lambda is not hermitian");
  for (Index a = 0; a < n; ++a) {
    if (std::abs(lambda_(a, a)) > 1e-10)
      throw PreconditionError("DephasingModel: Lambda diagonal must vanish");
    for (Index b = 0; b < n; ++b)
      if (lambda_(a, b).real() > 1e-10)
        throw PreconditionError(
            "DephasingModel: Re lambda_nm must be non-positive");
  }
}

namespace {

// Refines an orthonormal block basis so every block is an eigenspace of the
// hermitian operator op; blocks split at eigenvalue clusters wider than tol.
void refine_blocks(std::vector<Matrix>& blocks, const Matrix& op,
                   double tol) {
  std::vector<Matrix> next;
  for (const auto& basis : blocks) {
    const Matrix reduced = basis.adjoint() * op * basis;
    Eigen::SelfAdjointEigenSolver<Matrix> es(reduced);
    const auto& evals = es.eigenvalues();
    const Matrix rotated = basis * es.eigenvectors();
    Index start = 0;
    for (Index k = 1; k <= evals.size(); ++k) {
      if (k == evals.size() || evals(k) - evals(k - 1) > tol) {
        next.push_back(rotated.middleCols(start, k - start));
        start = k;
      }
    }
  }
  blocks = std::move(next);
}

Matrix dual_generator_apply(const LindbladGenerator& gen, const Matrix& x) {
  Matrix out = kI * commutator(gen.hamiltonian, x);
  for (const auto& l : gen.jumps)
    out += l.adjoint() * x * l - 0.5 * anticommutator(l.adjoint() * l, x);
  return out;
}

}  // namespace

DephasingModel dephasing_from_commuting(const LindbladGenerator& gen,
                                        double degeneracy_tol) {
  const Index d = gen.dim();

  // the family {H} U {L, L^dag} must be mutually commuting
  std::vector<Matrix> family{gen.hamiltonian};
  for (const auto& l : gen.jumps) {
    family.push_back(l);
    family.push_back(l.adjoint());
  }
  double worst = 0.0;
  for (size_t a = 0; a < family.size(); ++a)
    for (size_t b = a + 1; b < family.size(); ++b)
      worst = std::max(worst,
                       commutator(family[a], family[b]).cwiseAbs().maxCoeff());
  if (worst > 1e-10)
    throw PreconditionError(
        "dephasing_from_commuting: Lindblad data does not commute "
        "(max commutator entry " +
        std::to_string(worst) + ")");

  // joint eigenspaces by iterative block refinement over the hermitian
  // generators of the abelian algebra
  std::vector<Matrix> hermitian_ops{gen.hamiltonian};
  for (const auto& l : gen.jumps) {
    hermitian_ops.push_back(0.5 * (l + l.adjoint()));
    hermitian_ops.push_back((l - l.adjoint()) / Complex(0, 2));
  }
  std::vector<Matrix> blocks{Matrix::Identity(d, d)};
  for (const auto& op : hermitian_ops) {
    const double scale = std::max(op.cwiseAbs().maxCoeff(), 1.0);
    refine_blocks(blocks, op, degeneracy_tol * scale);
  }

  std::vector<Matrix> projectors;
  projectors.reserve(blocks.size());
  for (const auto& basis : blocks)
    projectors.push_back(basis * basis.adjoint());

  // lambda_nm from the dual generator acting on u_n v_m^dag dyads
  const Index nb = static_cast<Index>(blocks.size());
  Matrix lambda(nb, nb);
  for (Index n = 0; n < nb; ++n) {
    const Vector u = blocks[n].col(0);
    for (Index m = 0; m < nb; ++m) {
      const Vector v = blocks[m].col(0);
      const Matrix dyad = u * v.adjoint();
      lambda(n, m) = u.dot(dual_generator_apply(gen, dyad) * v);
    }
  }
  // clean up rounding so the validated invariants hold exactly
  lambda = 0.5 * (lambda + lambda.adjoint().eval());
  lambda.diagonal().setZero();

  return DephasingModel(std::move(projectors), std::move(lambda));
}

Matrix dephasing_dual_map(const DephasingModel& model, double t,
                          const Matrix& x) {
  if (t < 0) throw PreconditionError("dephasing_dual_map: t < 0");
  if (x.rows() != model.dim() || x.cols() != model.dim())
    throw DimensionError("dephasing_dual_map: operator dimension mismatch");
  Matrix out = Matrix::Zero(model.dim(), model.dim());
  for (Index n = 0; n < model.blocks(); ++n)
    for (Index m = 0; m < model.blocks(); ++m)
      out += std::exp(model.lambda()(n, m) * t) *
             (model.projectors()[n] * x * model.projectors()[m]);
  return out;
}

Matrix kernel_projection(const DephasingModel& model, const Matrix& a) {
  if (a.rows() != model.dim() || a.cols() != model.dim())
    throw DimensionError("kernel_projection: operator dimension mismatch");
  Matrix out = Matrix::Zero(model.dim(), model.dim());
  for (const auto& pi : model.projectors()) out += pi * a * pi;
  return out;
}

ResponseSeries chi_dephasing(const DephasingModel& model,
                             const DensityMatrix& rho, const Matrix& a,
                             const Matrix& b, const RealVector& t_grid) {
  if (!is_hermitian(a) || !is_hermitian(b))
    throw PreconditionError("chi_dephasing: A and B must be hermitian");
  for (const auto& pi : model.projectors())
    if (commutator(pi, rho.matrix()).cwiseAbs().maxCoeff() > 1e-10)
      throw PreconditionError(
          "chi_dephasing: rho is not stationary ([Pi_n, rho] != 0)");

  const Complex chibar_c =
      -kI * (commutator(rho.matrix(), kernel_projection(model, a)) * b)
                .trace();
  const double chibar = chibar_c.real();

  struct Term {
    double amp, gamma, omega, theta;
  };
  std::vector<Term> terms;
  for (Index n = 0; n < model.blocks(); ++n) {
    for (Index m = 0; m < model.blocks(); ++m) {
      if (n == m) continue;
      const Matrix block_a =
          model.projectors()[n] * a * model.projectors()[m];
      const Complex overlap = weighted_inner(rho, block_a, b);
      if (std::abs(overlap) < 1e-14) continue;  // undefined phase of zero
      terms.push_back(Term{std::abs(overlap),
                           model.lambda()(m, n).real(),
                           model.lambda()(m, n).imag(),
                           std::arg(overlap)});
    }
  }

  ResponseSeries out;
  out.t = t_grid;
  out.values.resize(t_grid.size());
  out.observable = "A";
  out.perturbation = "-i[B,.]";
  for (Index k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid(k);
    double val = chibar;
    for (const auto& term : terms)
      val += 2.0 * term.amp * std::exp(-std::abs(term.gamma) * t) *
             std::sin(term.omega * t + term.theta);
    out.values(k) = val;
  }
  return out;
}

}  // namespace qlr
