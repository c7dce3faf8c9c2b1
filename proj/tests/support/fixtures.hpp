#pragma once

#include <cstdint>
#include <vector>

#include "repgeom/activation_store.hpp"
#include "repgeom/corpus.hpp"
#include "repgeom/matrix.hpp"

namespace repgeom::testing {

/// n×d matrix of i.i.d. N(0, sigma²) values from mt19937_64(seed).
Matrix gaussian_matrix(std::size_t n, std::size_t d, std::uint64_t seed, double sigma = 1.0);

/// Complete narratives×styles grid, narrative-major sample order, with
/// digests of placeholder texts.
CorpusManifest grid_manifest(int narratives, int styles);

/// Layer-dependent class structure: at layer l each sample is
///   style_scale[l]·c_style + narrative_scale[l]·c_narrative + noise·ε
/// with class centers and ε drawn i.i.d. standard normal.
struct LayeredFixtureSpec {
  int narratives = 10;
  int styles = 7;
  std::size_t hidden_dim = 64;
  std::vector<double> style_scale;
  std::vector<double> narrative_scale;
  double noise = 1.0;
  std::uint64_t seed = 7;
};

/// Twelve-layer spec whose style separation peaks at block 1 and narrative
/// separation at block 4.
LayeredFixtureSpec paper_like_spec(std::size_t hidden_dim = 64);

ActivationArchive layered_archive(const LayeredFixtureSpec& spec);

/// Every layer holds the same standard-normal point set.
ActivationArchive isotropic_archive(int narratives, int styles, std::size_t layers,
                                    std::size_t hidden_dim, std::uint64_t seed);

/// Rows permuted by `perm` (new row i = old row perm[i]); the manifest is
/// permuted accordingly and sample_ids renumbered.
ActivationArchive permuted_archive(const ActivationArchive& archive,
                                   const std::vector<std::size_t>& perm);

}  // namespace repgeom::testing
