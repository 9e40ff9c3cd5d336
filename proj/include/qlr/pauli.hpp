#pragma once

#include "qlr/types.hpp"

namespace qlr::pauli {

inline Matrix id2() { return Matrix::Identity(2, 2); }

inline Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// |i><j| in dimension d.
inline Matrix ketbra(Index i, Index j, Index d) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1;
  return m;
}

}  // namespace qlr::pauli
