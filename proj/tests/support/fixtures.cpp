#include "fixtures.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace repgeom::testing {

Matrix gaussian_matrix(std::size_t n, std::size_t d, std::uint64_t seed, double sigma) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  Matrix m(n, d);
  for (double& v : m.data()) v = normal(rng);
  return m;
}

CorpusManifest grid_manifest(int narratives, int styles) {
  CorpusManifest m = fable_grid_template();
  m.narratives.resize(static_cast<std::size_t>(std::min<int>(narratives, 10)));
  for (int n = static_cast<int>(m.narratives.size()) + 1; n <= narratives; ++n) {
    m.narratives.push_back({n, "Narrative " + std::to_string(n)});
  }
  m.styles.resize(static_cast<std::size_t>(std::min<int>(styles, 7)));
  for (int s = static_cast<int>(m.styles.size()) + 1; s <= styles; ++s) {
    m.styles.push_back({s, "Style " + std::to_string(s), "Rephrase the fable, variant " +
                                                             std::to_string(s)});
  }
  int id = 0;
  for (int n = 1; n <= narratives; ++n) {
    for (int s = 1; s <= styles; ++s) {
      const std::string text =
          "placeholder text for narrative " + std::to_string(n) + " style " + std::to_string(s);
      m.samples.push_back({id++, n, s, text_digest(text), count_words(text)});
    }
  }
  return m;
}

LayeredFixtureSpec paper_like_spec(std::size_t hidden_dim) {
  LayeredFixtureSpec spec;
  spec.hidden_dim = hidden_dim;
  spec.style_scale = {3.0, 1.2, 0.9, 0.7, 0.6, 0.6, 0.5, 0.5, 0.6, 0.7, 0.8, 0.9};
  spec.narrative_scale = {0.4, 1.0, 1.8, 3.0, 2.2, 1.5, 1.0, 0.8, 0.9, 1.1, 1.3, 1.5};
  return spec;
}

ActivationArchive layered_archive(const LayeredFixtureSpec& spec) {
  if (spec.style_scale.size() != spec.narrative_scale.size() || spec.style_scale.empty()) {
    throw std::invalid_argument("layered_archive: scale vectors must be non-empty and equal length");
  }
  const std::size_t layers = spec.style_scale.size();
  const std::size_t h = spec.hidden_dim;
  CorpusManifest manifest = grid_manifest(spec.narratives, spec.styles);
  const std::size_t n = manifest.samples.size();

  const Matrix style_centers = gaussian_matrix(static_cast<std::size_t>(spec.styles), h, spec.seed);
  const Matrix narrative_centers =
      gaussian_matrix(static_cast<std::size_t>(spec.narratives), h, spec.seed + 1);
  std::mt19937_64 rng(spec.seed + 2);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<float> data(n * layers * h);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = manifest.samples[i];
    for (std::size_t l = 0; l < layers; ++l) {
      for (std::size_t d = 0; d < h; ++d) {
        const double v = spec.style_scale[l] * style_centers(s.style_id - 1, d) +
                         spec.narrative_scale[l] * narrative_centers(s.narrative_id - 1, d) +
                         spec.noise * normal(rng);
        data[(i * layers + l) * h + d] = static_cast<float>(v);
      }
    }
  }
  return ActivationArchive(n, layers, h, std::move(data), std::move(manifest));
}

ActivationArchive isotropic_archive(int narratives, int styles, std::size_t layers,
                                    std::size_t hidden_dim, std::uint64_t seed) {
  CorpusManifest manifest = grid_manifest(narratives, styles);
  const std::size_t n = manifest.samples.size();
  const Matrix points = gaussian_matrix(n, hidden_dim, seed);
  std::vector<float> data(n * layers * hidden_dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < layers; ++l) {
      for (std::size_t d = 0; d < hidden_dim; ++d) {
        data[(i * layers + l) * hidden_dim + d] = static_cast<float>(points(i, d));
      }
    }
  }
  return ActivationArchive(n, layers, hidden_dim, std::move(data), std::move(manifest));
}

ActivationArchive permuted_archive(const ActivationArchive& archive,
                                   const std::vector<std::size_t>& perm) {
  const std::size_t n = archive.num_samples();
  const std::size_t stride = archive.num_layers() * archive.hidden_dim();
  if (perm.size() != n) throw std::invalid_argument("permuted_archive: bad permutation");
  std::vector<float> data(archive.data().size());
  CorpusManifest manifest = archive.manifest();
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = archive.data().subspan(perm[i] * stride, stride);
    std::copy(src.begin(), src.end(), data.begin() + static_cast<std::ptrdiff_t>(i * stride));
    manifest.samples[i] = archive.manifest().samples[perm[i]];
    manifest.samples[i].sample_id = static_cast<int>(i);
  }
  return ActivationArchive(n, archive.num_layers(), archive.hidden_dim(), std::move(data),
                           std::move(manifest));
}

}  // namespace repgeom::testing
