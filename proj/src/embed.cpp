#include "repgeom/embed.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "repgeom/eigen_sym.hpp"

namespace repgeom {

std::pair<double, double> embedding_stress(const Matrix& coords, const DistanceMatrix& target) {
  const std::size_t n = coords.rows();
  if (target.size() != n) throw std::invalid_argument("embedding_stress: size mismatch");
  double raw = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < coords.cols(); ++c) {
        const double diff = coords(i, c) - coords(j, c);
        sq += diff * diff;
      }
      const double delta = target(i, j);
      const double r = std::sqrt(sq) - delta;
      raw += r * r;
      norm += delta * delta;
    }
  }
  return {raw, norm > 0.0 ? std::sqrt(raw / norm) : 0.0};
}

void normalize_embedding(Matrix& coords) {
  const std::size_t n = coords.rows();
  if (n == 0) return;
  for (std::size_t c = 0; c < coords.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += coords(i, c);
    mean /= static_cast<double>(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      coords(i, c) -= mean;
      scale = std::max(scale, std::abs(coords(i, c)));
    }
    // Coordinates at rounding-noise level relative to the column do not
    // decide the sign.
    const double threshold = 1e-12 * scale;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(coords(i, c)) > threshold) {
        if (coords(i, c) < 0.0) {
          for (std::size_t r = 0; r < n; ++r) coords(r, c) = -coords(r, c);
        }
        break;
      }
    }
  }
}

Embedding2D classical_mds(const DistanceMatrix& dm, int k) {
  const std::size_t n = dm.size();
  if (k < 1) throw std::invalid_argument("classical_mds: k must be >= 1");
  if (n < 2) throw std::invalid_argument("classical_mds needs at least 2 points");

  Matrix sq(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) sq(i, j) = dm(i, j) * dm(i, j);
  }
  std::vector<double> row_mean(n, 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) row_mean[i] += sq(i, j);
    grand += row_mean[i];
    row_mean[i] /= static_cast<double>(n);
  }
  grand /= static_cast<double>(n * n);

  // Double centering; D² is symmetric so column means equal row means.
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + grand);
      b(i, j) = v;
      b(j, i) = v;
    }
  }

  const SymmetricEigen eig = jacobi_eigen(b);
  Embedding2D out;
  out.coords = Matrix(n, static_cast<std::size_t>(k));
  for (std::size_t c = 0; c < static_cast<std::size_t>(k) && c < n; ++c) {
    const double root = std::sqrt(std::max(eig.values[c], 0.0));
    for (std::size_t i = 0; i < n; ++i) out.coords(i, c) = eig.vectors(i, c) * root;
  }
  normalize_embedding(out.coords);
  std::tie(out.stress, out.normalized_stress) = embedding_stress(out.coords, dm);
  out.iterations = eig.sweeps;
  out.converged = true;
  out.eigenvalues = eig.values;
  return out;
}

namespace {

// One Guttman transform with unit weights: X⁺_i = (1/n) Σ_{j≠i} (δ_ij/d_ij)(x_i − x_j).
Matrix guttman_transform(const Matrix& x, const DistanceMatrix& target) {
  const std::size_t n = x.rows();
  const std::size_t dims = x.cols();
  Matrix next(n, dims);
  std::vector<double> diff(dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double sq = 0.0;
      for (std::size_t c = 0; c < dims; ++c) {
        diff[c] = x(i, c) - x(j, c);
        sq += diff[c] * diff[c];
      }
      if (sq == 0.0) continue;
      const double ratio = target(i, j) / std::sqrt(sq);
      for (std::size_t c = 0; c < dims; ++c) next(i, c) += ratio * diff[c];
    }
    for (std::size_t c = 0; c < dims; ++c) next(i, c) /= static_cast<double>(n);
  }
  return next;
}

}  // namespace

Embedding2D smacof(const DistanceMatrix& dm, const Matrix& init, const SmacofOptions& options) {
  const std::size_t n = dm.size();
  if (n < 3) throw std::invalid_argument("smacof needs at least 3 points");
  if (!(options.eps > 0.0)) throw std::invalid_argument("smacof: eps must be > 0");
  if (options.max_iter < 0) throw std::invalid_argument("smacof: max_iter must be >= 0");
  if (init.rows() != n || init.cols() == 0) {
    throw std::invalid_argument("smacof: initial configuration has the wrong shape");
  }
  bool informative = false;
  for (double v : dm.matrix().data()) informative = informative || v > 0.0;
  if (!informative) throw std::invalid_argument("smacof: all distances are zero");

  Embedding2D out;
  Matrix x = init;
  double prev = embedding_stress(x, dm).first;
  out.stress_history.push_back(prev);
  if (prev == 0.0) out.converged = true;

  while (!out.converged && out.iterations < options.max_iter) {
    Matrix next = guttman_transform(x, dm);
    const double cur = embedding_stress(next, dm).first;
    if (cur > prev) {
      // Majorization cannot increase stress in exact arithmetic; an increase
      // means the iteration is at rounding level. Keep the previous iterate.
      out.converged = true;
      break;
    }
    ++out.iterations;
    x = std::move(next);
    out.stress_history.push_back(cur);
    if (prev - cur < options.eps * prev || cur == 0.0) out.converged = true;
    prev = cur;
  }

  normalize_embedding(x);
  out.coords = std::move(x);
  std::tie(out.stress, out.normalized_stress) = embedding_stress(out.coords, dm);
  return out;
}

Embedding2D smacof(const DistanceMatrix& dm, const SmacofOptions& options) {
  const std::size_t n = dm.size();
  const double spread = n >= 2 ? mean_pairwise_distance(dm) : 1.0;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Matrix init(n, 2);
  for (double& v : init.data()) v = uniform(rng) * spread;
  return smacof(dm, init, options);
}

std::vector<ClassEllipse> class_ellipses(const Matrix& coords, std::span<const int> labels) {
  if (labels.size() != coords.rows()) {
    throw std::invalid_argument("class_ellipses: labels length != number of points");
  }
  if (coords.cols() != 2) throw std::invalid_argument("class_ellipses expects 2D coordinates");

  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

  std::vector<ClassEllipse> out;
  for (const auto& [label, rows] : members) {
    ClassEllipse e;
    e.class_id = label;
    e.count = rows.size();
    const double count = static_cast<double>(rows.size());
    for (std::size_t r : rows) {
      e.center[0] += coords(r, 0);
      e.center[1] += coords(r, 1);
    }
    e.center[0] /= count;
    e.center[1] /= count;

    Matrix cov(2, 2);
    for (std::size_t r : rows) {
      const double dx = coords(r, 0) - e.center[0];
      const double dy = coords(r, 1) - e.center[1];
      cov(0, 0) += dx * dx;
      cov(0, 1) += dx * dy;
      cov(1, 1) += dy * dy;
    }
    cov(0, 0) /= count;
    cov(0, 1) /= count;
    cov(1, 1) /= count;
    cov(1, 0) = cov(0, 1);

    const SymmetricEigen eig = jacobi_eigen(cov);
    e.axes = eig.vectors;
    e.radii = {std::sqrt(std::max(eig.values[0], 0.0)), std::sqrt(std::max(eig.values[1], 0.0))};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace repgeom
