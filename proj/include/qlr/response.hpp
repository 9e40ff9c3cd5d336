#pragma once

#include "qlr/lindblad.hpp"
#include "qlr/opcore.hpp"
#include "qlr/types.hpp"

#include <string>

namespace qlr {

/// A perturbation L1 of the generator. Hamiltonian type is -i[B, .];
/// generator type is a full Lindblad generator; raw accepts any
/// trace-annihilating superoperator. All kinds must satisfy
/// vec(1)^dag L1 = 0 within 1e-10.
class PerturbationSpec {
 public:
  enum class Kind { Hamiltonian, Generator, Raw };

  static PerturbationSpec hamiltonian(const Matrix& b,
                                      std::string label = "B");
  static PerturbationSpec generator(const LindbladGenerator& gen,
                                    std::string label = "L1");
  static PerturbationSpec raw(SuperOperator l1, std::string label = "L1");

  Kind kind() const { return kind_; }
  const SuperOperator& superop() const { return superop_; }
  const std::string& label() const { return label_; }

 private:
  PerturbationSpec(Kind kind, SuperOperator l1, std::string label);

  Kind kind_;
  SuperOperator superop_;
  std::string label_;
};

/// chi(t) sampled on a time grid; values are real for hermitian observables
/// under hermiticity-preserving dynamics.
struct ResponseSeries {
  RealVector t;
  RealVector values;
  std::string observable;
  std::string perturbation;
};

/// chi_hat(omega) on a frequency grid with the regularization used.
struct FrequencyResponse {
  RealVector omega;
  Vector values;
  double epsilon = 0.0;
};

/// chi(t) = Tr( e^{t L0} L1(rho) A ) on the grid (t >= 0, increasing).
/// rho must be a steady state of L0 (||L0(rho)|| <= 1e-8) and A hermitian.
ResponseSeries chi_time(const SuperOperator& l0, const PerturbationSpec& pert,
                        const DensityMatrix& rho, const Matrix& a,
                        const RealVector& t_grid,
                        std::string observable_label = "A");

/// chi_hat(omega) = i Tr( (omega - i L0 + i eps)^{-1} L1(rho) A ), one
/// linear solve per frequency.
FrequencyResponse chi_freq(const SuperOperator& l0,
                           const PerturbationSpec& pert,
                           const DensityMatrix& rho, const Matrix& a,
                           const RealVector& omega_grid, double epsilon);

/// Maximal harmonic response
/// M_HR(Omega) = || (Omega - i L0 + i eps)^{-1} L1(rho) ||_1,
/// an observable-free upper bound on any normalized harmonic response.
double mhr(const SuperOperator& l0, const PerturbationSpec& pert,
           const DensityMatrix& rho, double omega, double epsilon);

/// Out-of-equilibrium (isothermal-analog) susceptibility
/// chi^T = -Tr( S L1(rho) A ) with S the reduced resolvent.
double thermal_susceptibility(const SuperOperator& l0,
                              const PerturbationSpec& pert,
                              const DensityMatrix& rho, const Matrix& a);

/// Period-averaged dynamical power for the drive xi(t) = amplitude cos(Omega t)
/// of the Hamiltonian term B: (amplitude^2 / 2) * Omega * Im chi_BB(Omega).
double dissipated_power(const SuperOperator& l0, const Matrix& b,
                        const DensityMatrix& rho, double omega,
                        double amplitude, double epsilon = 0.0);

/// Reconstructs Re chi_hat from Im chi_hat by the principal-value Hilbert
/// transform on the (uniform, wide enough) grid. The returned values carry
/// the reconstructed real part together with the input imaginary part.
FrequencyResponse kramers_kronig(const FrequencyResponse& fr);

/// Default regularization, 1e-8 x spectral span of the generator.
double default_epsilon(const SuperOperator& l0);

}  // namespace qlr
