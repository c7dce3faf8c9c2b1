#pragma once

#include <vector>

#include "repgeom/matrix.hpp"

namespace repgeom {

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Iterates until the
/// off-diagonal Frobenius norm falls below tol·‖A‖_F. Eigenpairs are sorted
/// by descending eigenvalue (stable for ties) and each eigenvector is signed
/// so its first nonzero component is positive.
///
/// Throws std::invalid_argument for non-square input and NumericalError if
/// max_sweeps is exhausted.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12, int max_sweeps = 100);

}  // namespace repgeom
