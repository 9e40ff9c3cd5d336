#include "qlr/response.hpp"

#include <Eigen/LU>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>

namespace qlr {

namespace {

void check_steady(const SuperOperator& l0, const DensityMatrix& rho) {
  const double residual = (l0.mat * vec(rho.matrix())).norm();
  if (residual > 1e-8)
    throw PreconditionError(
        "response: rho is not a steady state of L0 (||L0(rho)|| = " +
        std::to_string(residual) + " > 1e-8)");
}

void check_hermitian_observable(const Matrix& a, const char* who) {
  if (!is_hermitian(a))
    throw PreconditionError(std::string(who) + ": observable is not hermitian");
}

/// Observable shifted by a multiple of the identity so that its overlap with
/// the steady state vanishes. chi is invariant under A -> A + c 1 (the
/// propagated perturbation is traceless); the shift removes the spurious
/// kernel contribution from near-singular resolvent solves.
Matrix deflate_observable(const Matrix& a, const DensityMatrix& rho) {
  const Complex c = (rho.matrix() * a).trace();
  return a - c * Matrix::Identity(a.rows(), a.cols());
}

/// Solves (omega - i L0 + i eps) x = v, with a residual check. A singular
/// solve at eps = 0 asks for regularization.
Vector resolvent_solve(const SuperOperator& l0, double omega, double epsilon,
                       const Vector& v) {
  const Index n = l0.mat.rows();
  const Matrix m = Complex(omega, epsilon) * Matrix::Identity(n, n) -
                   kI * l0.mat;
  Eigen::PartialPivLU<Matrix> lu(m);
  const Vector x = lu.solve(v);
  const double residual = (m * x - v).norm();
  const double scale = v.norm() + m.cwiseAbs().maxCoeff() * x.norm();
  if (!(residual <= 1e-8 * std::max(scale, 1e-300))) {
    if (epsilon == 0.0)
      throw NumericalError(
          "resolvent solve singular at omega = " + std::to_string(omega) +
          " with epsilon = 0; pass a nonzero epsilon");
    throw NumericalError("resolvent solve failed (residual " +
                         std::to_string(residual) + ")");
  }
  return x;
}

}  // namespace

PerturbationSpec::PerturbationSpec(Kind kind, SuperOperator l1,
                                   std::string label)
    : kind_(kind), superop_(std::move(l1)), label_(std::move(label)) {
  const Index d = superop_.dim;
  const Vector trace_functional = vec(Matrix::Identity(d, d));
  const double dev =
      (trace_functional.adjoint() * superop_.mat).cwiseAbs().maxCoeff();
  if (dev > 1e-10)
    throw PreconditionError(
        "PerturbationSpec: superoperator does not annihilate the trace "
        "(deviation " +
        std::to_string(dev) + ")");
}

PerturbationSpec PerturbationSpec::hamiltonian(const Matrix& b,
                                               std::string label) {
  if (!is_hermitian(b))
    throw PreconditionError("PerturbationSpec::hamiltonian: B not hermitian");
  return PerturbationSpec(Kind::Hamiltonian, hamiltonian_superoperator(b),
                          std::move(label));
}

PerturbationSpec PerturbationSpec::generator(const LindbladGenerator& gen,
                                             std::string label) {
  return PerturbationSpec(Kind::Generator, build_superoperator(gen),
                          std::move(label));
}

PerturbationSpec PerturbationSpec::raw(SuperOperator l1, std::string label) {
  return PerturbationSpec(Kind::Raw, std::move(l1), std::move(label));
}

ResponseSeries chi_time(const SuperOperator& l0, const PerturbationSpec& pert,
                        const DensityMatrix& rho, const Matrix& a,
                        const RealVector& t_grid,
                        std::string observable_label) {
  check_steady(l0, rho);
  check_hermitian_observable(a, "chi_time");
  if (t_grid.size() == 0)
    throw PreconditionError("chi_time: empty grid");
  if (t_grid(0) < 0)
    throw PreconditionError("chi_time: grid must start at t >= 0");
  for (Index k = 1; k < t_grid.size(); ++k)
    if (t_grid(k) <= t_grid(k - 1))
      throw PreconditionError("chi_time: non-monotone grid");

  Vector w = pert.superop().mat * vec(rho.matrix());

  // step along the grid, caching the propagator per distinct step size
  std::map<double, Matrix> step_cache;
  const auto advance = [&](double dt) {
    if (dt == 0.0) return;
    auto it = step_cache.find(dt);
    if (it == step_cache.end())
      it = step_cache.emplace(dt, propagator(l0, dt)).first;
    w = it->second * w;
  };

  ResponseSeries out;
  out.t = t_grid;
  out.values.resize(t_grid.size());
  out.observable = std::move(observable_label);
  out.perturbation = pert.label();

  double t_prev = 0.0;
  for (Index k = 0; k < t_grid.size(); ++k) {
    advance(t_grid(k) - t_prev);
    t_prev = t_grid(k);
    const Complex val = trace_against(a, w);
    if (std::abs(val.imag()) > 1e-10)
      throw NumericalError("chi_time: imaginary residue " +
                           std::to_string(val.imag()));
    out.values(k) = val.real();
  }
  return out;
}

FrequencyResponse chi_freq(const SuperOperator& l0,
                           const PerturbationSpec& pert,
                           const DensityMatrix& rho, const Matrix& a,
                           const RealVector& omega_grid, double epsilon) {
  check_steady(l0, rho);
  check_hermitian_observable(a, "chi_freq");
  if (omega_grid.size() == 0)
    throw PreconditionError("chi_freq: empty frequency grid");

  const Vector v = pert.superop().mat * vec(rho.matrix());
  const Matrix a_eff = deflate_observable(a, rho);

  FrequencyResponse out;
  out.omega = omega_grid;
  out.epsilon = epsilon;
  out.values.resize(omega_grid.size());
  for (Index k = 0; k < omega_grid.size(); ++k) {
    const Vector x = resolvent_solve(l0, omega_grid(k), epsilon, v);
    out.values(k) = kI * trace_against(a_eff, x);
  }
  return out;
}

double mhr(const SuperOperator& l0, const PerturbationSpec& pert,
           const DensityMatrix& rho, double omega, double epsilon) {
  check_steady(l0, rho);
  const Vector v = pert.superop().mat * vec(rho.matrix());
  if (v.norm() == 0.0) return 0.0;
  const Vector x = resolvent_solve(l0, omega, epsilon, v);
  return trace_norm(unvec(x));
}

double thermal_susceptibility(const SuperOperator& l0,
                              const PerturbationSpec& pert,
                              const DensityMatrix& rho, const Matrix& a) {
  check_steady(l0, rho);
  check_hermitian_observable(a, "thermal_susceptibility");
  const SuperOperator s = reduced_resolvent(l0);
  const Vector w = s.mat * (pert.superop().mat * vec(rho.matrix()));
  const Complex val = -trace_against(a, w);
  if (std::abs(val.imag()) > 1e-9)
    throw NumericalError("thermal_susceptibility: imaginary residue " +
                         std::to_string(val.imag()));
  return val.real();
}

double dissipated_power(const SuperOperator& l0, const Matrix& b,
                        const DensityMatrix& rho, double omega,
                        double amplitude, double epsilon) {
  if (omega == 0.0) return 0.0;
  const auto pert = PerturbationSpec::hamiltonian(b);
  RealVector grid(1);
  grid(0) = omega;
  const FrequencyResponse fr = chi_freq(l0, pert, rho, b, grid, epsilon);
  return 0.5 * amplitude * amplitude * omega * fr.values(0).imag();
}

FrequencyResponse kramers_kronig(const FrequencyResponse& fr) {
  const Index n = fr.omega.size();
  if (n < 8) throw PreconditionError("kramers_kronig: grid too short");
  const double h = fr.omega(1) - fr.omega(0);
  for (Index k = 1; k < n; ++k)
    if (std::abs((fr.omega(k) - fr.omega(k - 1)) - h) > 1e-9 * std::abs(h))
      throw PreconditionError("kramers_kronig: grid must be uniform");

  const double peak = fr.values.cwiseAbs().maxCoeff();
  const double edge =
      std::max(std::abs(fr.values(0)), std::abs(fr.values(n - 1)));
  if (edge >= 1e-3 * peak) {
    // assuming a ~1/omega^2 tail, the span must grow by sqrt(edge ratio)
    const double span = fr.omega(n - 1) - fr.omega(0);
    const double needed = span * std::sqrt(edge / (1e-3 * peak));
    throw PreconditionError(
        "kramers_kronig: |chi| at the grid edge is " + std::to_string(edge) +
        " >= 1e-3 * max; increase the span to about " +
        std::to_string(needed));
  }

  // principal-value trapezoid, skipping the singular bin; the symmetric
  // differences around the pole realize the odd cancellation
  FrequencyResponse out;
  out.omega = fr.omega;
  out.epsilon = fr.epsilon;
  out.values.resize(n);
  for (Index i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (j == i) continue;
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      acc += w * fr.values(j).imag() / (fr.omega(j) - fr.omega(i));
    }
    out.values(i) = Complex(acc * h / M_PI, fr.values(i).imag());
  }
  return out;
}

double default_epsilon(const SuperOperator& l0) {
  return 1e-8 * spectral_span(analyze_spectrum(l0));
}

}  // namespace qlr
