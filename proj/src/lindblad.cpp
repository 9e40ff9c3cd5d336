#include "qlr/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <boost/numeric/odeint/external/eigen/eigen_algebra.hpp>
#include <boost/numeric/odeint/external/eigen/eigen_resize.hpp>
#include <boost/numeric/odeint/integrate/integrate_times.hpp>
#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include <algorithm>
#include <cmath>
#include <map>

// The stock Eigen adapter leaves norm_inf returning a complex scalar for
// complex state types; the error checker needs a real norm.
namespace boost::numeric::odeint {
template <>
struct vector_space_norm_inf<qlr::Vector> {
  typedef double result_type;
  double operator()(const qlr::Vector& v) const {
    return v.cwiseAbs().maxCoeff();
  }
};
}  // namespace boost::numeric::odeint

namespace qlr {

LindbladGenerator::LindbladGenerator(Matrix h, std::vector<Matrix> ls,
                                     const Tolerances& tol)
    : hamiltonian(std::move(h)), jumps(std::move(ls)) {
  if (hamiltonian.rows() != hamiltonian.cols())
    throw DimensionError("LindbladGenerator: H is not square");
  if (!is_hermitian(hamiltonian, tol.herm))
    throw PreconditionError("LindbladGenerator: H is not hermitian");
  for (const auto& l : jumps)
    if (l.rows() != hamiltonian.rows() || l.cols() != hamiltonian.cols())
      throw DimensionError("LindbladGenerator: jump dimension mismatch");
}

SuperOperator build_superoperator(const LindbladGenerator& gen,
                                  const Tolerances& tol) {
  const Index d = gen.dim();
  if (!is_hermitian(gen.hamiltonian, tol.herm))
    throw PreconditionError("build_superoperator: H is not hermitian");
  const Matrix id = Matrix::Identity(d, d);
  Matrix m = -kI * (kron(id, gen.hamiltonian) -
                    kron(gen.hamiltonian.transpose(), id));
  for (const auto& l : gen.jumps) {
    const Matrix ldl = l.adjoint() * l;
    m += kron(l.conjugate(), l) - 0.5 * kron(id, ldl) -
         0.5 * kron(ldl.transpose(), id);
  }
  return SuperOperator{std::move(m), d};
}

SuperOperator hamiltonian_superoperator(const Matrix& h,
                                        const Tolerances& tol) {
  return build_superoperator(LindbladGenerator(h, {}, tol), tol);
}

SuperOperator dissipator_superoperator(const std::vector<Matrix>& jumps) {
  if (jumps.empty())
    throw PreconditionError("dissipator_superoperator: no jump operators");
  const Index d = jumps.front().rows();
  return build_superoperator(
      LindbladGenerator(Matrix::Zero(d, d), jumps));
}

SuperOperator adjoint_superoperator(const SuperOperator& l) {
  return SuperOperator{l.mat.adjoint(), l.dim};
}

SpectralData analyze_spectrum(const SuperOperator& l) {
  Eigen::ComplexEigenSolver<Matrix> es(l.mat);
  if (es.info() != Eigen::Success)
    throw NumericalError("analyze_spectrum: eigensolver failed");
  SpectralData out;
  out.eigenvalues = es.eigenvalues();
  out.right = es.eigenvectors();
  const auto sv = Eigen::JacobiSVD<Matrix>(out.right).singularValues();
  out.cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
  out.diagonalizable = out.cond < kDefectiveCond;
  if (out.diagonalizable) out.right_inv = out.right.inverse();
  return out;
}

double spectral_span(const SpectralData& spec) {
  return spec.eigenvalues.cwiseAbs().maxCoeff();
}

Matrix propagator(const SuperOperator& l, double t) {
  return Matrix(t * l.mat).exp();
}

DensityMatrix propagate(const SuperOperator& l, const DensityMatrix& rho0,
                        double t) {
  if (t < 0)
    throw PreconditionError("propagate: t < 0 (semi-group only)");
  if (rho0.dim() != l.dim)
    throw DimensionError("propagate: state/superoperator dimension mismatch");
  const Vector v = propagator(l, t) * vec(rho0.matrix());
  Matrix rho = unvec(v);
  rho = 0.5 * (rho + rho.adjoint().eval());
  Tolerances tol;
  tol.herm = tol.trace = tol.psd = 1e-9;
  return DensityMatrix(rho, tol);
}

std::vector<DensityMatrix> propagate_time_dependent(
    const SuperOperator& l0, const SuperOperator& l1,
    const std::function<double(double)>& drive, const DensityMatrix& rho0,
    const RealVector& t_grid) {
  if (t_grid.size() == 0)
    throw PreconditionError("propagate_time_dependent: empty grid");
  if (std::abs(t_grid(0)) > 1e-14)
    throw PreconditionError("propagate_time_dependent: grid must start at 0");
  for (Index k = 1; k < t_grid.size(); ++k)
    if (t_grid(k) <= t_grid(k - 1))
      throw PreconditionError("propagate_time_dependent: non-monotone grid");
  if (l0.dim != l1.dim || rho0.dim() != l0.dim)
    throw DimensionError("propagate_time_dependent: dimension mismatch");

  namespace ode = boost::numeric::odeint;
  const auto rhs = [&](const Vector& x, Vector& dxdt, double t) {
    dxdt = l0.mat * x + drive(t) * (l1.mat * x);
  };
  ode::runge_kutta_dopri5<Vector, double, Vector, double,
                          ode::vector_space_algebra>
      stepper;
  auto controlled = ode::make_controlled(1e-12, 1e-10, stepper);

  std::vector<double> times(t_grid.data(), t_grid.data() + t_grid.size());
  std::vector<Vector> snapshots;
  snapshots.reserve(times.size());
  Vector state = vec(rho0.matrix());
  ode::integrate_times(controlled, rhs, state, times.begin(), times.end(),
                       1e-4,
                       [&](const Vector& x, double) { snapshots.push_back(x); });

  Tolerances tol;
  tol.herm = tol.trace = tol.psd = 1e-8;
  std::vector<DensityMatrix> out;
  out.reserve(snapshots.size());
  for (const auto& v : snapshots) {
    Matrix rho = unvec(v);
    const double trace_dev = std::abs(rho.trace() - Complex(1.0));
    if (trace_dev > 1e-8)
      throw NumericalError(
          "propagate_time_dependent: trace drifted by " +
          std::to_string(trace_dev));
    rho = 0.5 * (rho + rho.adjoint().eval());
    out.emplace_back(std::move(rho), tol);
  }
  return out;
}

namespace {

// Density matrices recovered from a kernel basis vector: hermitize, then
// offer the trace-normalized element and its positive/negative spectral
// parts. Only candidates that are genuinely steady and positive survive.
void collect_state_candidates(const Matrix& kernel_element,
                              const SuperOperator& l,
                              std::vector<DensityMatrix>& states,
                              const Tolerances& tol) {
  Matrix herm = 0.5 * (kernel_element + kernel_element.adjoint());
  if (herm.cwiseAbs().maxCoeff() <
      1e-12 * kernel_element.cwiseAbs().maxCoeff())
    herm = (kernel_element - kernel_element.adjoint()) / Complex(0, 2);

  Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
  const auto& evals = es.eigenvalues();
  const auto& evecs = es.eigenvectors();
  const Index d = herm.rows();

  std::vector<Matrix> candidates;
  if (std::abs(herm.trace()) > 1e-8) candidates.push_back(herm / herm.trace());
  Matrix pos = Matrix::Zero(d, d), neg = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    const Matrix proj = evecs.col(k) * evecs.col(k).adjoint();
    if (evals(k) > 0) pos += evals(k) * proj;
    if (evals(k) < 0) neg -= evals(k) * proj;
  }
  if (std::abs(pos.trace()) > 1e-10) candidates.push_back(pos / pos.trace());
  if (std::abs(neg.trace()) > 1e-10) candidates.push_back(neg / neg.trace());

  for (auto& c : candidates) {
    if ((l.mat * vec(c)).norm() > 1e-9) continue;
    bool duplicate = false;
    for (const auto& s : states)
      if ((s.matrix() - c).cwiseAbs().maxCoeff() < 1e-8) duplicate = true;
    if (duplicate) continue;
    try {
      Tolerances state_tol = tol;
      state_tol.psd = std::max(tol.psd, 1e-9);
      state_tol.trace = std::max(tol.trace, 1e-9);
      state_tol.herm = std::max(tol.herm, 1e-9);
      states.emplace_back(std::move(c), state_tol);
    } catch (const PreconditionError&) {
      // not a valid state (e.g. indefinite kernel element); skip
    }
  }
}

}  // namespace

SteadyStateResult steady_states(const SuperOperator& l,
                                const Tolerances& tol) {
  const SpectralData spec = analyze_spectrum(l);
  SteadyStateResult result;
  double min_nonkernel = std::numeric_limits<double>::infinity();
  std::vector<Index> kernel_idx;
  for (Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double mag = std::abs(spec.eigenvalues(k));
    if (mag <= tol.spec)
      kernel_idx.push_back(k);
    else
      min_nonkernel = std::min(min_nonkernel, mag);
  }
  result.kernel_dim = static_cast<int>(kernel_idx.size());
  result.unique = result.kernel_dim == 1;
  result.gap_warning = min_nonkernel < 1e-8;

  for (const Index k : kernel_idx)
    collect_state_candidates(unvec(spec.right.col(k)), l, result.states, tol);
  return result;
}

SuperOperator spectral_projector_p0(const SuperOperator& l) {
  return spectral_projector_p0(l, analyze_spectrum(l));
}

SuperOperator spectral_projector_p0(const SuperOperator& l,
                                    const SpectralData& spec) {
  if (!spec.diagonalizable)
    throw NumericalError(
        "spectral_projector_p0: defective generator (eigenvector condition "
        "number " +
        std::to_string(spec.cond) + "), spectral projection invalid");
  Vector gate = Vector::Zero(spec.eigenvalues.size());
  for (Index k = 0; k < spec.eigenvalues.size(); ++k)
    if (std::abs(spec.eigenvalues(k)) <= kDefaultTol.spec) gate(k) = 1.0;
  return SuperOperator{spec.right * gate.asDiagonal() * spec.right_inv, l.dim};
}

SuperOperator reduced_resolvent(const SuperOperator& l) {
  return reduced_resolvent(l, analyze_spectrum(l));
}

SuperOperator reduced_resolvent(const SuperOperator& l,
                                const SpectralData& spec) {
  if (!spec.diagonalizable)
    throw NumericalError(
        "reduced_resolvent: defective generator (eigenvector condition "
        "number " +
        std::to_string(spec.cond) + "), spectral representation invalid");
  Vector gate = Vector::Zero(spec.eigenvalues.size());
  for (Index k = 0; k < spec.eigenvalues.size(); ++k)
    if (std::abs(spec.eigenvalues(k)) > kDefaultTol.spec)
      gate(k) = 1.0 / spec.eigenvalues(k);
  return SuperOperator{spec.right * gate.asDiagonal() * spec.right_inv, l.dim};
}

}  // namespace qlr
