#pragma once

#include "qlr/lindblad.hpp"
#include "qlr/opcore.hpp"
#include "qlr/types.hpp"

#include <random>

namespace qlr::testing {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Index d) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

inline Matrix random_hermitian(Rng& rng, Index d) {
  const Matrix m = random_matrix(rng, d);
  return 0.5 * (m + m.adjoint());
}

inline DensityMatrix random_density(Rng& rng, Index d) {
  const Matrix g = random_matrix(rng, d);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint().eval());
  return DensityMatrix(rho);
}

/// Generic ergodic generator: random hermitian H and n_jumps random jumps.
inline LindbladGenerator random_generator(Rng& rng, Index d, int n_jumps,
                                          double jump_scale = 1.0) {
  std::vector<Matrix> jumps;
  for (int k = 0; k < n_jumps; ++k)
    jumps.push_back(jump_scale * random_matrix(rng, d));
  return LindbladGenerator(random_hermitian(rng, d), std::move(jumps));
}

}  // namespace qlr::testing
