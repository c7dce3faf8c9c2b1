#include "repgeom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "repgeom/simd/kernels.hpp"

namespace repgeom {

DistanceMatrix::DistanceMatrix(Matrix d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw std::invalid_argument("distance matrix must be square");
  for (std::size_t i = 0; i < d_.rows(); ++i) {
    if (d_(i, i) != 0.0) throw std::invalid_argument("distance matrix diagonal must be zero");
    for (std::size_t j = i + 1; j < d_.cols(); ++j) {
      const double a = d_(i, j);
      const double b = d_(j, i);
      if (!(a >= 0.0) || !(b >= 0.0)) {
        throw std::invalid_argument("distance matrix entries must be finite and non-negative");
      }
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
        throw std::invalid_argument("distance matrix is not symmetric");
      }
    }
  }
}

std::vector<double> DistanceMatrix::upper_triangle() const {
  const std::size_t n = size();
  std::vector<double> out;
  out.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back(d_(i, j));
  }
  return out;
}

Matrix zscale(const Matrix& points) {
  const std::size_t n = points.rows();
  const std::size_t dims = points.cols();
  if (n < 2) throw std::invalid_argument("zscale needs at least 2 points");

  Matrix out(n, dims);
  std::vector<double> column(n);
  std::vector<double> scaled(n);
  std::vector<double> squares(n);
  for (std::size_t d = 0; d < dims; ++d) {
    for (std::size_t i = 0; i < n; ++i) column[i] = points(i, d);
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    if (*lo == *hi) {
      for (std::size_t i = 0; i < n; ++i) out(i, d) = 0.0;
      continue;
    }
    const double mean = canonical_sum(column) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = column[i] - mean;
      squares[i] = c * c;
    }
    const double sigma = std::sqrt(canonical_sum(squares) / static_cast<double>(n));
    simd::center_scale(column, mean, 0.5 / sigma, scaled);
    for (std::size_t i = 0; i < n; ++i) out(i, d) = scaled[i];
  }
  return out;
}

DistanceMatrix distance_matrix(const Matrix& points) {
  const std::size_t n = points.rows();
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::sqrt(simd::squared_distance(points.row(i), points.row(j)));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d));
}

double mean_pairwise_distance(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  if (n < 2) throw std::invalid_argument("mean_pairwise_distance needs n >= 2");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return canonical_sum(dm.upper_triangle()) / pairs;
}

GdvResult gdv(const Matrix& points, std::span<const int> labels) {
  const std::size_t n = points.rows();
  if (labels.size() != n) throw std::invalid_argument("gdv: labels length != number of points");
  if (n < 2) throw std::invalid_argument("gdv needs at least 2 points");
  if (points.cols() == 0) throw std::invalid_argument("gdv needs at least 1 dimension");

  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  if (classes.size() < 2) throw std::invalid_argument("gdv needs at least 2 distinct labels");

  const auto class_index = [&](int label) {
    return static_cast<std::size_t>(std::lower_bound(classes.begin(), classes.end(), label) -
                                    classes.begin());
  };
  const std::size_t num_classes = classes.size();
  std::vector<std::size_t> idx(n);
  std::vector<std::size_t> class_size(num_classes, 0);
  for (std::size_t i = 0; i < n; ++i) {
    idx[i] = class_index(labels[i]);
    ++class_size[idx[i]];
  }

  const DistanceMatrix dm = distance_matrix(zscale(points));

  // Bucket every pair distance by (class, class), lower index first.
  std::vector<std::vector<double>> buckets(num_classes * num_classes);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t a = std::min(idx[i], idx[j]);
      const std::size_t b = std::max(idx[i], idx[j]);
      buckets[a * num_classes + b].push_back(dm(i, j));
    }
  }

  GdvResult r;
  std::vector<double> intra_means;
  std::vector<double> inter_means;
  for (std::size_t a = 0; a < num_classes; ++a) {
    const double na = static_cast<double>(class_size[a]);
    double intra = 0.0;
    if (class_size[a] >= 2) {
      intra = canonical_sum(std::move(buckets[a * num_classes + a])) / (na * (na - 1.0) / 2.0);
    } else {
      r.singleton_classes.push_back(classes[a]);
    }
    r.per_class_intra[classes[a]] = intra;
    intra_means.push_back(intra);
    for (std::size_t b = a + 1; b < num_classes; ++b) {
      const double nb = static_cast<double>(class_size[b]);
      const double inter = canonical_sum(std::move(buckets[a * num_classes + b])) / (na * nb);
      r.per_pair_inter[{classes[a], classes[b]}] = inter;
      inter_means.push_back(inter);
    }
  }

  const double num = static_cast<double>(num_classes);
  r.mean_intra = canonical_sum(std::move(intra_means)) / num;
  r.mean_inter = canonical_sum(std::move(inter_means)) / (num * (num - 1.0) / 2.0);
  r.value = (r.mean_intra - r.mean_inter) / std::sqrt(static_cast<double>(points.cols()));
  return r;
}

double distance_entropy_bits(std::span<const double> distances, int bins) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  if (distances.empty()) return 0.0;
  const auto [lo_it, hi_it] = std::minmax_element(distances.begin(), distances.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  if (!(range > 0.0)) return 0.0;

  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double d : distances) {
    const double t = (d - lo) / range;
    auto b = static_cast<std::size_t>(t * bins);
    if (b >= counts.size()) b = counts.size() - 1;
    ++counts[b];
  }
  const double total = static_cast<double>(distances.size());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h;
}

double reference_entropy_bits(std::size_t n, std::size_t dim, const EddConfig& config) {
  if (config.ref_draws < 1) throw std::invalid_argument("ref_draws must be >= 1");
  double sum = 0.0;
  for (int r = 0; r < config.ref_draws; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix sample(n, dim);
    for (double& v : sample.data()) v = normal(rng);
    sum += distance_entropy_bits(distance_matrix(sample).upper_triangle(), config.bins);
  }
  return sum / static_cast<double>(config.ref_draws);
}

EddResult edd_with_reference(const DistanceMatrix& dm, double reference_bits,
                             const EddConfig& config) {
  if (dm.size() < 3) throw std::invalid_argument("edd needs at least 3 points");
  EddResult r;
  r.bins = config.bins;
  r.ref_draws = config.ref_draws;
  r.seed = config.seed;
  r.data_entropy_bits = distance_entropy_bits(dm.upper_triangle(), config.bins);
  r.reference_entropy_bits = reference_bits;
  r.value = reference_bits > 0.0 ? r.data_entropy_bits / reference_bits : 0.0;
  return r;
}

EddResult edd(const Matrix& points, const EddConfig& config) {
  if (points.rows() < 3) throw std::invalid_argument("edd needs at least 3 points");
  if (config.bins < 1) throw std::invalid_argument("bins must be >= 1");
  const double ref = reference_entropy_bits(points.rows(), points.cols(), config);
  return edd_with_reference(distance_matrix(points), ref, config);
}

}  // namespace repgeom
