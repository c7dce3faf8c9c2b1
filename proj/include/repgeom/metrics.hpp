#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "repgeom/matrix.hpp"

namespace repgeom {

/// Symmetric n×n Euclidean distances with an exactly zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// Takes ownership of a square matrix; checks symmetry, zero diagonal and
  /// non-negativity, throwing std::invalid_argument on violation.
  explicit DistanceMatrix(Matrix d);

  std::size_t size() const noexcept { return d_.rows(); }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_(i, j); }
  const Matrix& matrix() const noexcept { return d_; }

  /// Strict upper triangle, row-major.
  std::vector<double> upper_triangle() const;

 private:
  Matrix d_;
};

/// Per-dimension s = 0.5·(x − μ)/σ with population σ. Zero-variance
/// dimensions become all zeros. Requires at least two rows.
Matrix zscale(const Matrix& points);

/// Pairwise Euclidean distances between rows.
DistanceMatrix distance_matrix(const Matrix& points);

/// Mean over the strict upper triangle. Requires n >= 2.
double mean_pairwise_distance(const DistanceMatrix& dm);

struct GdvResult {
  double value = 0.0;
  double mean_intra = 0.0;
  double mean_inter = 0.0;
  std::map<int, double> per_class_intra;
  std::map<std::pair<int, int>, double> per_pair_inter;  // key.first < key.second
  std::vector<int> singleton_classes;                    // contributed intra = 0
};

/// Generalized discrimination value of labeled points (rows). Negative values
/// indicate class separation; 0 means no label-related structure.
///
/// All reductions over pairs and classes are summed in sorted order, so the
/// result is exactly invariant to sample order and to relabeling of classes.
GdvResult gdv(const Matrix& points, std::span<const int> labels);

struct EddConfig {
  int bins = 100;
  int ref_draws = 20;
  std::uint64_t seed = 42;
};

struct EddResult {
  double value = 0.0;
  double data_entropy_bits = 0.0;
  double reference_entropy_bits = 0.0;
  int bins = 0;
  int ref_draws = 0;
  std::uint64_t seed = 0;
};

/// Shannon entropy (bits) of the `bins`-bin histogram of the given distances
/// after min-max normalization. Zero range gives 0.
double distance_entropy_bits(std::span<const double> distances, int bins);

/// Mean distance entropy of `config.ref_draws` standard-normal point sets of
/// shape n×dim. Draw r uses an mt19937_64 seeded with seed_seq{seed, r}.
double reference_entropy_bits(std::size_t n, std::size_t dim, const EddConfig& config);

/// Entropy of the distance distribution relative to an isotropic Gaussian
/// reference of the same shape. Requires at least three rows.
EddResult edd(const Matrix& points, const EddConfig& config);

/// Same, with a precomputed reference entropy (see reference_entropy_bits).
EddResult edd_with_reference(const DistanceMatrix& dm, double reference_bits,
                             const EddConfig& config);

}  // namespace repgeom
