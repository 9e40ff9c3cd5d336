#include "qlr/davies.hpp"

#include "qlr/pauli.hpp"

#include <cmath>

namespace qlr {

DaviesQubit::DaviesQubit(double delta_, double temperature_, double b_,
                         double gamma_)
    : delta(delta_), temperature(temperature_), b(b_), gamma(gamma_) {
  if (temperature <= 0)
    throw PreconditionError("DaviesQubit: temperature must be positive");
  if (!(gamma >= b / 2 && b >= 0))
    throw PreconditionError(
        "DaviesQubit: rates must satisfy Gamma >= b/2 >= 0");
}

double DaviesQubit::p() const {
  const double x = delta / (2 * temperature);
  return std::exp(x) / (2 * std::cosh(x));
}

double DaviesQubit::thermal_coherence_factor() const {
  return std::tanh(delta / (2 * temperature));
}

DensityMatrix DaviesQubit::gibbs_state() const {
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = p();
  rho(1, 1) = 1 - p();
  return DensityMatrix(rho);
}

LindbladGenerator DaviesQubit::generator() const {
  const double pp = p();
  std::vector<Matrix> jumps;
  if (b > 0) {
    // |1> -> |0| at rate b p and |0> -> |1> at rate b (1-p), so the
    // populations settle at diag(p, 1-p)
    jumps.push_back(std::sqrt(b * pp) * pauli::ketbra(0, 1, 2));
    jumps.push_back(std::sqrt(b * (1 - pp)) * pauli::ketbra(1, 0, 2));
  }
  const double dephasing_rate = gamma - b / 2;
  if (dephasing_rate > 0)
    jumps.push_back(std::sqrt(dephasing_rate / 2) * pauli::z());
  return LindbladGenerator(0.5 * delta * pauli::z(), std::move(jumps));
}

SuperOperator davies_map(const DaviesQubit& q, double t) {
  if (t < 0) throw PreconditionError("davies_map: t < 0");
  const double pp = q.p();
  const double relax = 1 - std::exp(-q.b * t);
  const Complex c = std::exp(-q.gamma * t);
  Matrix m = Matrix::Zero(4, 4);
  // populations; slot order (rho_00, rho_10, rho_01, rho_11)
  m(0, 0) = 1 - (1 - pp) * relax;
  m(0, 3) = pp * relax;
  m(3, 0) = (1 - pp) * relax;
  m(3, 3) = 1 - pp * relax;
  // coherences
  m(1, 1) = c * std::exp(kI * q.delta * t);
  m(2, 2) = c * std::exp(-kI * q.delta * t);
  return SuperOperator{std::move(m), 2};
}

namespace {

void check_qubit_observables(const Matrix& a, const Matrix& b,
                             const char* who) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw DimensionError(std::string(who) + ": operators must be 2x2");
  if (!is_hermitian(a) || !is_hermitian(b))
    throw PreconditionError(std::string(who) +
                            ": A and B must be hermitian");
}

}  // namespace

ResponseSeries chi_qubit_time(const DaviesQubit& q, const Matrix& a,
                              const Matrix& b, const RealVector& t_grid) {
  check_qubit_observables(a, b, "chi_qubit_time");
  const Complex coeff = a(0, 1) * b(1, 0);
  const double amp = std::abs(coeff);
  const double phi = amp > 0 ? std::arg(coeff) : 0.0;
  const double tau = q.thermal_coherence_factor();

  ResponseSeries out;
  out.t = t_grid;
  out.values.resize(t_grid.size());
  out.observable = "A";
  out.perturbation = "-i[B,.]";
  for (Index k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid(k);
    out.values(k) = t < 0 ? 0.0
                          : 2.0 * std::exp(-t * q.gamma) *
                                std::sin(t * q.delta + phi) * tau * amp;
  }
  return out;
}

FrequencyResponse chi_qubit_freq(const DaviesQubit& q, const Matrix& a,
                                 const Matrix& b,
                                 const RealVector& omega_grid) {
  check_qubit_observables(a, b, "chi_qubit_freq");
  const Complex coeff = a(0, 1) * b(1, 0);
  const double amp = std::abs(coeff);
  const double phi = amp > 0 ? std::arg(coeff) : 0.0;
  const double tau = q.thermal_coherence_factor();

  FrequencyResponse out;
  out.omega = omega_grid;
  out.values.resize(omega_grid.size());
  for (Index k = 0; k < omega_grid.size(); ++k) {
    const double w = omega_grid(k);
    out.values(k) =
        tau * amp *
        (std::exp(kI * phi) / Complex(w + q.delta, q.gamma) -
         std::exp(-kI * phi) / Complex(w - q.delta, q.gamma));
  }
  return out;
}

double mhr_qubit(double delta, double beta, double gamma_plus,
                 double gamma_minus, const Matrix& b, double omega) {
  if (b.rows() != 2 || b.cols() != 2)
    throw DimensionError("mhr_qubit: B must be 2x2");
  if (gamma_minus <= 0)
    throw PreconditionError("mhr_qubit: gamma_minus must be positive");
  const double expected = std::exp(-beta * delta);
  if (std::abs(gamma_plus / gamma_minus - expected) > 1e-9)
    throw PreconditionError(
        "mhr_qubit: rates violate thermal consistency "
        "gamma_plus/gamma_minus = e^{-beta Delta}");
  const double gbar = 0.5 * (gamma_plus + gamma_minus);
  const double amp = std::abs(b(0, 1)) * std::tanh(beta * delta / 2);
  double m = 0.0;
  for (const double alpha : {1.0, -1.0})
    m += amp / std::abs(Complex(omega + alpha * delta, gbar));
  return m;
}

RotationAxisAngle::RotationAxisAngle(Eigen::Vector3d axis_, double alpha_)
    : axis(std::move(axis_)), alpha(alpha_) {
  if (std::abs(axis.norm() - 1.0) > 1e-12)
    throw PreconditionError("RotationAxisAngle: axis must be a unit vector");
}

Matrix su2_rotation(const RotationAxisAngle& rot) {
  const double c = std::cos(rot.alpha / 2);
  const double s = std::sin(rot.alpha / 2);
  const Matrix n_sigma = rot.axis(0) * pauli::x() + rot.axis(1) * pauli::y() +
                         rot.axis(2) * pauli::z();
  return c * pauli::id2() + kI * s * n_sigma;
}

SuperOperator rotated_superoperator(const SuperOperator& l, const Matrix& u) {
  if (u.rows() != l.dim || u.cols() != l.dim)
    throw DimensionError("rotated_superoperator: dimension mismatch");
  const Matrix into = kron(u.conjugate(), u);       // rho -> U rho U^dag
  const Matrix outof = kron(u.transpose(), u.adjoint());  // X -> U^dag X U
  return SuperOperator{outof * l.mat * into, l.dim};
}

SuperOperator rotated_davies_perturbation(const DaviesQubit& q1,
                                          const RotationAxisAngle& rot) {
  const DaviesQubit dissipative_only(q1.delta, q1.temperature, q1.b, q1.gamma);
  LindbladGenerator gen = dissipative_only.generator();
  gen.hamiltonian.setZero();  // the perturbation carries no Hamiltonian part
  return rotated_superoperator(build_superoperator(gen), su2_rotation(rot));
}

ResponseSeries chi_rotated_davies(const DaviesQubit& q0, const DaviesQubit& q1,
                                  const RotationAxisAngle& rot,
                                  const Matrix& a, const RealVector& t_grid) {
  if ((rot.axis - Eigen::Vector3d::UnitX()).norm() > 1e-12)
    throw PreconditionError(
        "chi_rotated_davies: only the x-axis rotation has a printed closed "
        "form; use the generic engine for other axes");
  if (a.rows() != 2 || a.cols() != 2 || !is_hermitian(a))
    throw PreconditionError("chi_rotated_davies: A must be hermitian 2x2");

  const double alpha = rot.alpha;
  const double tau0 = q0.thermal_coherence_factor();
  const double tau1 = q1.thermal_coherence_factor();
  const double b1 = q1.b;
  const double g1 = q1.gamma;

  const double pop_bracket =
      (b1 + g1 + (b1 - g1) * std::cos(2 * alpha)) * tau0 -
      2 * b1 * std::cos(alpha) * tau1;
  const double coh_bracket = (b1 - g1) * std::sin(2 * alpha) * tau0 -
                             2 * b1 * std::sin(alpha) * tau1;

  const double pop_weight = (a(1, 1) - a(0, 0)).real();
  const double coh_amp = std::abs(a(0, 1));
  const double phi01 = coh_amp > 0 ? std::arg(a(0, 1)) : 0.0;

  ResponseSeries out;
  out.t = t_grid;
  out.values.resize(t_grid.size());
  out.observable = "A";
  out.perturbation = "rotated Davies";
  for (Index k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid(k);
    if (t < 0) {
      out.values(k) = 0.0;
      continue;
    }
    const double pop_term =
        std::exp(-q0.b * t) * pop_weight * pop_bracket;
    const double coh_term = 2 * std::exp(-t * q0.gamma) * coh_amp *
                            std::sin(t * q0.delta + phi01) * coh_bracket;
    out.values(k) = 0.25 * (pop_term - coh_term);
  }
  return out;
}

}  // namespace qlr
