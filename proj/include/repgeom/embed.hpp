#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "repgeom/matrix.hpp"
#include "repgeom/metrics.hpp"

namespace repgeom {

/// 2D point configuration. Columns are centered and each column's first
/// nonzero coordinate is positive.
struct Embedding2D {
  Matrix coords;                   // n × 2
  double stress = 0.0;             // Σ_{i<j} (d_ij − δ_ij)²
  double normalized_stress = 0.0;  // sqrt(stress / Σ δ_ij²)
  int iterations = 0;
  bool converged = false;
  std::vector<double> stress_history;  // smacof: stress before and after each accepted step
  std::vector<double> eigenvalues;     // classical: full spectrum of B, descending
};

/// Raw and normalized stress of `coords` against target distances.
std::pair<double, double> embedding_stress(const Matrix& coords, const DistanceMatrix& target);

/// Centers columns and applies the sign convention.
void normalize_embedding(Matrix& coords);

/// Torgerson scaling: top-k eigenpairs of −½·J·D²·J (negative eigenvalues
/// clamped to zero). If n <= k the trailing coordinates are zero.
/// Throws std::invalid_argument for n < 2 or k < 1.
Embedding2D classical_mds(const DistanceMatrix& dm, int k = 2);

struct SmacofOptions {
  int max_iter = 300;
  double eps = 1e-6;
  std::uint64_t seed = 42;  // only used for random initialization
};

/// Metric SMACOF (unit weights) from the given initial configuration.
/// Converged iff the relative stress decrease of a step drops below eps.
Embedding2D smacof(const DistanceMatrix& dm, const Matrix& init, const SmacofOptions& options);

/// Same, starting from a seeded uniform random configuration.
Embedding2D smacof(const DistanceMatrix& dm, const SmacofOptions& options);

struct ClassEllipse {
  int class_id = 0;
  std::size_t count = 0;
  std::array<double, 2> center{};
  Matrix axes = Matrix::identity(2);  // columns are principal directions
  std::array<double, 2> radii{};      // population std along each axis, radii[0] >= radii[1]
};

/// One ellipse per class present, ordered by class id.
std::vector<ClassEllipse> class_ellipses(const Matrix& coords, std::span<const int> labels);

}  // namespace repgeom
