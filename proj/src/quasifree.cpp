#include "qlr/quasifree.hpp"

#include "qlr/opcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <iostream>
#include <limits>
#include <map>

namespace qlr {

namespace {

void require_even_square(const RealMatrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0)
    throw DimensionError(std::string(who) +
                         ": matrix must be square with even dimension");
}

double antisymmetry_deviation(const RealMatrix& m) {
  return (m + m.transpose()).cwiseAbs().maxCoeff();
}

/// Solves T_a D + D T_b = R with T_a upper and T_b lower triangular by
/// back-substitution (the core of the Bartels-Stewart scheme).
Matrix solve_triangular_pair(const Matrix& t_a, const Matrix& t_b,
                             const Matrix& r) {
  const Index n = r.rows();
  Matrix d = Matrix::Zero(n, n);
  for (Index i = n - 1; i >= 0; --i) {
    for (Index j = n - 1; j >= 0; --j) {
      Complex acc = r(i, j);
      const Index ni = n - 1 - i;
      const Index nj = n - 1 - j;
      if (ni > 0)
        acc -= (t_a.row(i).segment(i + 1, ni) *
                d.col(j).segment(i + 1, ni))
                   .value();
      if (nj > 0)
        acc -= (d.row(i).segment(j + 1, nj) *
                t_b.col(j).segment(j + 1, nj))
                   .value();
      const Complex denom = t_a(i, i) + t_b(j, j);
      if (std::abs(denom) < 1e-14)
        throw NumericalError(
            "triangular Sylvester solve: vanishing pole denominator; the "
            "resolvent is singular (nonzero epsilon required)");
      d(i, j) = acc / denom;
    }
  }
  return d;
}

struct SchurX {
  Matrix q;  // unitary
  Matrix t;  // upper triangular
};

SchurX schur_of(const RealMatrix& x) {
  Eigen::ComplexSchur<Matrix> schur(x.cast<Complex>());
  if (schur.info() != Eigen::Success)
    throw NumericalError("Schur decomposition failed");
  return SchurX{schur.matrixU(), schur.matrixT()};
}

/// X C + C X^T = Y via the complex Schur form of X.
RealMatrix lyapunov_solve(const SchurX& sx, const RealMatrix& y) {
  const Matrix r = sx.q.adjoint() * y.cast<Complex>() * sx.q.conjugate();
  const Matrix d = solve_triangular_pair(sx.t, sx.t.transpose(), r);
  const Matrix c = sx.q * d * sx.q.transpose();
  return c.real();
}

/// Z solving (omega + i eps) Z - i (X Z + Z X^T) = C.
Matrix sylvester_resolvent_solve(const SchurX& sx, double omega,
                                 double epsilon, const Matrix& c) {
  const Index n = sx.t.rows();
  const Matrix t_a = Complex(omega, epsilon) * Matrix::Identity(n, n) -
                     kI * sx.t;
  const Matrix t_b = -kI * sx.t.transpose();
  const Matrix r = sx.q.adjoint() * c * sx.q.conjugate();
  const Matrix d = solve_triangular_pair(t_a, t_b, r);
  return sx.q * d * sx.q.transpose();
}

RealMatrix c1_perturbation(const QuasiFreeGenerator& gen1,
                           const CovarianceMatrix& c0) {
  return gen1.x * c0.c + c0.c * gen1.x.transpose() - gen1.y;
}

void check_ness_input(const QuasiFreeGenerator& gen0,
                      const CovarianceMatrix& c0) {
  const double residual =
      (gen0.x * c0.c + c0.c * gen0.x.transpose() - gen0.y)
          .cwiseAbs()
          .maxCoeff();
  if (residual > 1e-8)
    throw PreconditionError(
        "quasifree response: C0 is not stationary for gen0 (residual " +
        std::to_string(residual) + ")");
}

Complex contract(const RealMatrix& a, const Matrix& z) {
  // Tr(A^T Z) = sum_ij A_ij Z_ij
  return (a.cast<Complex>().cwiseProduct(z)).sum();
}

}  // namespace

MajoranaQuadratic::MajoranaQuadratic(RealMatrix mat) : m(std::move(mat)) {
  require_even_square(m, "MajoranaQuadratic");
  if (antisymmetry_deviation(m) > 1e-12)
    throw PreconditionError("MajoranaQuadratic: matrix is not antisymmetric");
}

MajoranaQuadratic MajoranaQuadratic::site_z(Index n_modes, Index j) {
  if (j < 0 || j >= n_modes)
    throw DimensionError("MajoranaQuadratic::site_z: site out of range");
  RealMatrix m = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  m(2 * j, 2 * j + 1) = -2.0;
  m(2 * j + 1, 2 * j) = 2.0;
  return MajoranaQuadratic(std::move(m));
}

MajoranaQuadratic MajoranaQuadratic::total_z(Index n_modes) {
  RealMatrix m = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (Index j = 0; j < n_modes; ++j) {
    m(2 * j, 2 * j + 1) = -2.0;
    m(2 * j + 1, 2 * j) = 2.0;
  }
  return MajoranaQuadratic(std::move(m));
}

CovarianceMatrix::CovarianceMatrix(RealMatrix mat) : c(std::move(mat)) {
  require_even_square(c, "CovarianceMatrix");
  if (antisymmetry_deviation(c) > 1e-10)
    throw PreconditionError("CovarianceMatrix: matrix is not antisymmetric");
  // physical-state bound: spectrum of iC inside [-1, 1]
  Eigen::SelfAdjointEigenSolver<Matrix> es(kI * c.cast<Complex>());
  const double extreme = es.eigenvalues().cwiseAbs().maxCoeff();
  if (extreme > 1.0 + 1e-9)
    throw PreconditionError("CovarianceMatrix: unphysical (|iC| eigenvalue " +
                            std::to_string(extreme) + " > 1)");
}

CovarianceMatrix CovarianceMatrix::product_z(const RealVector& sz) {
  const Index n = sz.size();
  RealMatrix c = RealMatrix::Zero(2 * n, 2 * n);
  for (Index j = 0; j < n; ++j) {
    c(2 * j, 2 * j + 1) = -sz(j);
    c(2 * j + 1, 2 * j) = sz(j);
  }
  return CovarianceMatrix(std::move(c));
}

QuasiFreeGenerator build_xys(const MajoranaQuadratic& h,
                             const std::vector<Vector>& lvecs) {
  const Index n = h.m.rows();
  Matrix gram = Matrix::Zero(n, n);
  for (const auto& l : lvecs) {
    if (l.size() != n)
      throw DimensionError("build_xys: Lindblad vector dimension mismatch");
    gram += l * l.adjoint();
  }
  RealMatrix s = 2.0 * gram.real();   // |L><L| + |L*><L*|
  RealMatrix y = -4.0 * gram.imag();  // 2i (|L><L| - |L*><L*|)

  const double s_dev = (s - s.transpose()).cwiseAbs().maxCoeff();
  const double y_dev = antisymmetry_deviation(y);
  if (s_dev > 1e-10 || y_dev > 1e-10)
    throw NumericalError("build_xys: malformed S/Y (symmetry deviation)");
  s = 0.5 * (s + s.transpose()).eval();
  y = 0.5 * (y - y.transpose()).eval();

  QuasiFreeGenerator gen{h, lvecs, h.m - s, y, s, Vector()};
  Eigen::EigenSolver<RealMatrix> es(gen.x, /*computeEigenvectors=*/false);
  gen.x_eigenvalues = es.eigenvalues();
  const double max_re = gen.x_eigenvalues.real().maxCoeff();
  if (max_re > 1e-10)
    throw NumericalError(
        "build_xys: X has an eigenvalue with positive real part (" +
        std::to_string(max_re) + "); S is not positive semi-definite");
  return gen;
}

std::vector<CovarianceMatrix> covariance_flow(const QuasiFreeGenerator& gen,
                                              const CovarianceMatrix& c0,
                                              const RealVector& t_grid) {
  if (c0.c.rows() != gen.x.rows())
    throw DimensionError("covariance_flow: dimension mismatch");
  if (t_grid.size() == 0)
    throw PreconditionError("covariance_flow: empty grid");
  if (t_grid(0) < 0)
    throw PreconditionError("covariance_flow: grid must start at t >= 0");
  for (Index k = 1; k < t_grid.size(); ++k)
    if (t_grid(k) <= t_grid(k - 1))
      throw PreconditionError("covariance_flow: non-monotone grid");

  const Index n = gen.x.rows();
  struct Step {
    RealMatrix f;  // e^{dt X}
    RealMatrix j;  // int_0^dt e^{uX} Y e^{uX^T} du
  };
  std::map<double, Step> cache;
  const auto step_for = [&](double dt) -> const Step& {
    auto it = cache.find(dt);
    if (it == cache.end()) {
      RealMatrix block = RealMatrix::Zero(2 * n, 2 * n);
      block.topLeftCorner(n, n) = gen.x;
      block.topRightCorner(n, n) = gen.y;
      block.bottomRightCorner(n, n) = -gen.x.transpose();
      const RealMatrix eblock = RealMatrix(dt * block).exp();
      Step s;
      s.f = eblock.topLeftCorner(n, n);
      s.j = eblock.topRightCorner(n, n) * s.f.transpose();
      it = cache.emplace(dt, std::move(s)).first;
    }
    return it->second;
  };

  std::vector<CovarianceMatrix> out;
  out.reserve(t_grid.size());
  RealMatrix c = c0.c;
  double t_prev = 0.0;
  for (Index k = 0; k < t_grid.size(); ++k) {
    const double dt = t_grid(k) - t_prev;
    t_prev = t_grid(k);
    if (dt > 0) {
      const Step& s = step_for(dt);
      c = s.f * c * s.f.transpose() - s.j;
      c = 0.5 * (c - c.transpose()).eval();
    }
    out.emplace_back(c);
  }
  return out;
}

CovarianceMatrix ness_covariance(const QuasiFreeGenerator& gen) {
  const double max_re = gen.x_eigenvalues.real().maxCoeff();
  if (max_re >= -1e-12)
    throw PreconditionError(
        "ness_covariance: X has a spectral point on the imaginary axis "
        "(max Re lambda = " +
        std::to_string(max_re) + "), the steady state is not unique");
  const SchurX sx = schur_of(gen.x);
  RealMatrix c = lyapunov_solve(sx, gen.y);
  c = 0.5 * (c - c.transpose()).eval();
  const double residual =
      (gen.x * c + c * gen.x.transpose() - gen.y).cwiseAbs().maxCoeff();
  const double scale = std::max(
      1.0, gen.x.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff());
  if (residual > 1e-10 * scale)
    throw NumericalError("ness_covariance: Lyapunov residual " +
                         std::to_string(residual));
  return CovarianceMatrix(std::move(c));
}

ResponseSeries chi_quasifree_time(const QuasiFreeGenerator& gen0,
                                  const QuasiFreeGenerator& gen1,
                                  const CovarianceMatrix& c0,
                                  const MajoranaQuadratic& a,
                                  const RealVector& t_grid) {
  check_ness_input(gen0, c0);
  if (a.m.rows() != gen0.x.rows() || gen1.x.rows() != gen0.x.rows())
    throw DimensionError("chi_quasifree_time: dimension mismatch");
  if (t_grid.size() == 0)
    throw PreconditionError("chi_quasifree_time: empty grid");
  for (Index k = 1; k < t_grid.size(); ++k)
    if (t_grid(k) <= t_grid(k - 1))
      throw PreconditionError("chi_quasifree_time: non-monotone grid");

  // chi is independent of Y0: only the homogeneous flow acts on C1
  RealMatrix m = c1_perturbation(gen1, c0);
  std::map<double, RealMatrix> cache;
  const auto exp_for = [&](double dt) -> const RealMatrix& {
    auto it = cache.find(dt);
    if (it == cache.end())
      it = cache.emplace(dt, RealMatrix(dt * gen0.x).exp()).first;
    return it->second;
  };

  ResponseSeries out;
  out.t = t_grid;
  out.values.resize(t_grid.size());
  out.observable = "Gamma(A)";
  out.perturbation = "quasi-free L1";
  double t_prev = 0.0;
  for (Index k = 0; k < t_grid.size(); ++k) {
    if (t_grid(k) < 0) {
      out.values(k) = 0.0;
      continue;
    }
    const double dt = t_grid(k) - t_prev;
    t_prev = t_grid(k);
    if (dt > 0) {
      const RealMatrix& f = exp_for(dt);
      m = f * m * f.transpose();
    }
    out.values(k) = 0.25 * (a.m.cwiseProduct(m)).sum();
  }
  return out;
}

FrequencyResponse chi_quasifree_freq(const QuasiFreeGenerator& gen0,
                                     const QuasiFreeGenerator& gen1,
                                     const CovarianceMatrix& c0,
                                     const MajoranaQuadratic& a,
                                     const RealVector& omega_grid,
                                     double epsilon, QfFreqPath path) {
  check_ness_input(gen0, c0);
  const RealMatrix c1 = c1_perturbation(gen1, c0);

  FrequencyResponse out;
  out.omega = omega_grid;
  out.epsilon = epsilon;
  out.values.resize(omega_grid.size());

  bool use_spectral = path != QfFreqPath::Solve;
  Vector lambda;
  Matrix pole_weights;
  if (use_spectral) {
    Eigen::EigenSolver<RealMatrix> es(gen0.x);
    if (es.info() != Eigen::Success)
      throw NumericalError("chi_quasifree_freq: eigensolver failed");
    const Matrix v = es.eigenvectors();
    const auto sv = Eigen::JacobiSVD<Matrix>(v).singularValues();
    const double cond = sv(0) / std::max(sv(sv.size() - 1), 1e-300);
    if (cond >= 1e10) {
      if (path == QfFreqPath::Spectral)
        std::cerr << "chi_quasifree_freq: X0 eigenvector condition number "
                  << cond << ", falling back to the linear-solve path\n";
      use_spectral = false;
    } else {
      lambda = es.eigenvalues();
      const Matrix v_inv = v.inverse();
      const Matrix a_hat =
          v.transpose() * a.m.transpose().cast<Complex>() * v;
      const Matrix c1_hat = v_inv * c1.cast<Complex>() * v_inv.transpose();
      // chi(omega) = (i/4) sum_kq a_hat(k,q) c1_hat(q,k) / denom(k,q)
      pole_weights = a_hat.cwiseProduct(c1_hat.transpose());
    }
  }

  if (use_spectral) {
    const Index n = lambda.size();
    for (Index w = 0; w < omega_grid.size(); ++w) {
      Complex acc = 0;
      for (Index k = 0; k < n; ++k)
        for (Index q = 0; q < n; ++q)
          acc += pole_weights(k, q) /
                 (Complex(omega_grid(w), epsilon) -
                  kI * (lambda(k) + lambda(q)));
      out.values(w) = 0.25 * kI * acc;
    }
  } else {
    const SchurX sx = schur_of(gen0.x);
    for (Index w = 0; w < omega_grid.size(); ++w) {
      const Matrix z = sylvester_resolvent_solve(
          sx, omega_grid(w), epsilon, c1.cast<Complex>());
      out.values(w) = 0.25 * kI * contract(a.m, z);
    }
  }
  return out;
}

double single_particle_mhr(const QuasiFreeGenerator& gen0,
                           const QuasiFreeGenerator& gen1,
                           const CovarianceMatrix& c0, double omega,
                           double epsilon) {
  check_ness_input(gen0, c0);
  const RealMatrix c1 = c1_perturbation(gen1, c0);
  if (c1.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const SchurX sx = schur_of(gen0.x);
  const Matrix z =
      sylvester_resolvent_solve(sx, omega, epsilon, c1.cast<Complex>());
  return 0.25 * trace_norm(z);
}

QuasiFreeGenerator build_xy_chain(Index n_sites, double gamma, double h,
                                  const XYRates& rates) {
  if (n_sites < 2) throw PreconditionError("build_xy_chain: N < 2");
  for (const double g : {rates.gamma1_left, rates.gamma2_left,
                         rates.gamma1_right, rates.gamma2_right})
    if (g < 0) throw PreconditionError("build_xy_chain: negative rate");

  const Index n = 2 * n_sites;
  RealMatrix hm = RealMatrix::Zero(n, n);
  const auto add = [&](Index a, Index b, double val) {
    hm(a, b) += val;
    hm(b, a) -= val;
  };
  for (Index j = 0; j < n_sites; ++j) add(2 * j, 2 * j + 1, -2.0 * h);
  for (Index j = 0; j + 1 < n_sites; ++j) {
    // sx_j sx_{j+1} = -i m_{2,j} m_{1,j+1}; sy_j sy_{j+1} = i m_{1,j} m_{2,j+1}
    add(2 * j + 1, 2 * j + 2, -(1.0 + gamma));
    add(2 * j, 2 * j + 3, (1.0 - gamma));
  }

  // sigma^- = (m_1 - i m_2)/2, sigma^+ = (m_1 + i m_2)/2 at the two edges;
  // the right-edge Jordan-Wigner string stays in the even-parity sector
  std::vector<Vector> lvecs;
  const auto edge_vector = [&](Index site, double rate, double sign) {
    Vector v = Vector::Zero(n);
    v(2 * site) = 0.5 * std::sqrt(rate);
    v(2 * site + 1) = sign * 0.5 * kI * std::sqrt(rate);
    return v;
  };
  if (rates.gamma1_left > 0)
    lvecs.push_back(edge_vector(0, rates.gamma1_left, -1.0));
  if (rates.gamma2_left > 0)
    lvecs.push_back(edge_vector(0, rates.gamma2_left, +1.0));
  if (rates.gamma1_right > 0)
    lvecs.push_back(edge_vector(n_sites - 1, rates.gamma1_right, -1.0));
  if (rates.gamma2_right > 0)
    lvecs.push_back(edge_vector(n_sites - 1, rates.gamma2_right, +1.0));

  return build_xys(MajoranaQuadratic(std::move(hm)), lvecs);
}

XYRates xy_rates_from_temperatures(double h, double gamma1_left, double t_left,
                                   double gamma1_right, double t_right) {
  XYRates r;
  r.gamma1_left = gamma1_left;
  r.gamma2_left = gamma1_left * std::exp(-2.0 * h / t_left);
  r.gamma1_right = gamma1_right;
  r.gamma2_right = gamma1_right * std::exp(-2.0 * h / t_right);
  return r;
}

double liouvillian_gap(const QuasiFreeGenerator& gen) {
  return 2.0 * (-gen.x_eigenvalues.real().maxCoeff());
}

double xy_critical_field(double gamma) { return 1.0 - gamma * gamma; }

double correlation_length(double gamma, double h) {
  if (!(gamma > 0 && gamma < 1))
    throw PreconditionError("correlation_length: gamma must lie in (0,1)");
  const double hc = xy_critical_field(gamma);
  if (h < hc)
    throw PreconditionError(
        "correlation_length: formula holds on the gapped side h >= h_c");
  if (h == hc) return std::numeric_limits<double>::infinity();
  return 1.0 / (4.0 * std::acosh(h / hc));
}

std::vector<double> zz_correlations_from_covariance(const CovarianceMatrix& c,
                                                    Index n, Index r_max) {
  const Index sites = c.modes();
  if (n < 0 || n + r_max >= sites)
    throw DimensionError("zz_correlations: site range beyond the chain");
  std::vector<double> out;
  out.reserve(r_max);
  for (Index r = 1; r <= r_max; ++r) {
    const Index m = n + r;
    // <sz_n sz_m> - <sz_n><sz_m> =
    //   -C(1n,1m) C(2n,2m) + C(1n,2m) C(2n,1m)   (Wick)
    out.push_back(-c.c(2 * n, 2 * m) * c.c(2 * n + 1, 2 * m + 1) +
                  c.c(2 * n, 2 * m + 1) * c.c(2 * n + 1, 2 * m));
  }
  return out;
}

std::vector<double> ness_zz_correlations(const QuasiFreeGenerator& gen,
                                         Index n, Index r_max) {
  return zz_correlations_from_covariance(ness_covariance(gen), n, r_max);
}

}  // namespace qlr
