#include "repgeom/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "repgeom/corpus.hpp"
#include "repgeom/simd/kernels.hpp"

namespace repgeom {

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

int argmin_block(const std::vector<double>& values) {
  if (values.empty()) return 0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return static_cast<int>(best) + 1;
}

AnalysisReport analyze(const ActivationArchive& archive, const AnalysisConfig& config) {
  const std::size_t layers = archive.num_layers();
  if (layers == 0) throw std::invalid_argument("analyze: archive has no layers");
  const CorpusManifest& manifest = archive.manifest();
  const std::vector<int> narrative = label_vector(manifest, LabelKey::narrative);
  const std::vector<int> style = label_vector(manifest, LabelKey::style);

  AnalysisReport report;
  report.bins = config.edd.bins;
  report.ref_draws = config.edd.ref_draws;
  report.seed = config.edd.seed;
  report.simd_level = std::string(simd::to_string(simd::active_level()));
  report.num_samples = archive.num_samples();
  report.hidden_dim = archive.hidden_dim();
  for (const auto& w : validate_manifest(manifest).warnings) report.warnings.push_back(w);

  // Every layer shares N and H, so one reference ensemble serves all of them.
  const double reference =
      reference_entropy_bits(archive.num_samples(), archive.hidden_dim(), config.edd);

  report.per_layer.resize(layers);
  parallel_for(layers, config.threads, [&](std::size_t layer) {
    const LayerSlice slice = layer_slice(archive, layer);
    const DistanceMatrix dm = distance_matrix(slice.points);
    LayerMetrics& m = report.per_layer[layer];
    m.block = static_cast<int>(layer) + 1;
    m.edd = edd_with_reference(dm, reference, config.edd);
    m.gdv_narrative = gdv(slice.points, narrative);
    m.gdv_style = gdv(slice.points, style);
    m.mean_distance = mean_pairwise_distance(dm);
  });

  std::vector<double> gn;
  std::vector<double> gs;
  for (const auto& m : report.per_layer) {
    gn.push_back(m.gdv_narrative.value);
    gs.push_back(m.gdv_style.value);
  }
  report.argmin_gdv_narrative = argmin_block(gn);
  report.argmin_gdv_style = argmin_block(gs);

  const auto warn_singletons = [&](const GdvResult& g, const char* key) {
    for (int c : g.singleton_classes) {
      report.warnings.push_back(std::string(key) + " class " + std::to_string(c) +
                                " has a single sample; its intra-class distance is taken as 0");
    }
  };
  warn_singletons(report.per_layer.front().gdv_narrative, "narrative");
  warn_singletons(report.per_layer.front().gdv_style, "style");
  return report;
}

EmbedMethod parse_embed_method(std::string_view name) {
  if (name == "classical") return EmbedMethod::classical;
  if (name == "smacof") return EmbedMethod::smacof;
  throw std::invalid_argument("unknown embedding method '" + std::string(name) + "'");
}

std::string_view to_string(EmbedMethod method) {
  return method == EmbedMethod::classical ? "classical" : "smacof";
}

std::vector<Embedding2D> project_layers(const ActivationArchive& archive,
                                        const EmbedConfig& config) {
  std::vector<Embedding2D> out(archive.num_layers());
  parallel_for(archive.num_layers(), config.threads, [&](std::size_t layer) {
    const DistanceMatrix dm = distance_matrix(layer_slice(archive, layer).points);
    Embedding2D init = classical_mds(dm, 2);
    if (config.method == EmbedMethod::classical) {
      out[layer] = std::move(init);
    } else {
      out[layer] = smacof(dm, init.coords, config.smacof);
    }
  });
  return out;
}

}  // namespace repgeom
