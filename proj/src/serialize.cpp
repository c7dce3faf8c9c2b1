#include "repgeom/serialize.hpp"

#include <cstdio>
#include <fstream>

#include "repgeom/error.hpp"

namespace repgeom {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json gdv_to_json(const GdvResult& g) {
  json j{{"value", g.value}, {"mean_intra", g.mean_intra}, {"mean_inter", g.mean_inter}};
  j["per_class_intra"] = json::array();
  for (const auto& [c, v] : g.per_class_intra) j["per_class_intra"].push_back({{"class", c}, {"value", v}});
  j["per_pair_inter"] = json::array();
  for (const auto& [k, v] : g.per_pair_inter) {
    j["per_pair_inter"].push_back({{"a", k.first}, {"b", k.second}, {"value", v}});
  }
  j["singleton_classes"] = g.singleton_classes;
  return j;
}

GdvResult gdv_from_json(const json& j) {
  GdvResult g;
  g.value = j.at("value").get<double>();
  g.mean_intra = j.at("mean_intra").get<double>();
  g.mean_inter = j.at("mean_inter").get<double>();
  for (const auto& e : j.at("per_class_intra")) {
    g.per_class_intra[e.at("class").get<int>()] = e.at("value").get<double>();
  }
  for (const auto& e : j.at("per_pair_inter")) {
    g.per_pair_inter[{e.at("a").get<int>(), e.at("b").get<int>()}] = e.at("value").get<double>();
  }
  g.singleton_classes = j.at("singleton_classes").get<std::vector<int>>();
  return g;
}

json matrix_rows(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
  }
  return rows;
}

}  // namespace

std::string metrics_csv(const AnalysisReport& report) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  for (const auto& m : report.per_layer) {
    out += std::to_string(m.block) + "," + g17(m.edd.value) + "," + g17(m.gdv_narrative.value) +
           "," + g17(m.gdv_style.value) + "," + g17(m.mean_distance) + "\n";
  }
  return out;
}

json report_to_json(const AnalysisReport& r) {
  json j;
  j["format_version"] = 1;
  j["config"] = {{"bins", r.bins},
                 {"ref_draws", r.ref_draws},
                 {"seed", r.seed},
                 {"simd", r.simd_level},
                 {"num_samples", r.num_samples},
                 {"hidden_dim", r.hidden_dim}};
  j["argmin_gdv_narrative"] = r.argmin_gdv_narrative;
  j["argmin_gdv_style"] = r.argmin_gdv_style;
  j["argmin_tie_rule"] = "lowest block";
  j["warnings"] = r.warnings;
  j["per_layer"] = json::array();
  for (const auto& m : r.per_layer) {
    j["per_layer"].push_back({{"block", m.block},
                              {"edd",
                               {{"value", m.edd.value},
                                {"data_entropy_bits", m.edd.data_entropy_bits},
                                {"reference_entropy_bits", m.edd.reference_entropy_bits},
                                {"bins", m.edd.bins},
                                {"ref_draws", m.edd.ref_draws},
                                {"seed", m.edd.seed}}},
                              {"gdv_narrative", gdv_to_json(m.gdv_narrative)},
                              {"gdv_style", gdv_to_json(m.gdv_style)},
                              {"mean_distance", m.mean_distance}});
  }
  return j;
}

AnalysisReport report_from_json(const json& j) {
  try {
    if (j.at("format_version").get<int>() != 1) throw ValidationError("unsupported report version");
    AnalysisReport r;
    const auto& c = j.at("config");
    r.bins = c.at("bins").get<int>();
    r.ref_draws = c.at("ref_draws").get<int>();
    r.seed = c.at("seed").get<std::uint64_t>();
    r.simd_level = c.at("simd").get<std::string>();
    r.num_samples = c.at("num_samples").get<std::size_t>();
    r.hidden_dim = c.at("hidden_dim").get<std::size_t>();
    r.argmin_gdv_narrative = j.at("argmin_gdv_narrative").get<int>();
    r.argmin_gdv_style = j.at("argmin_gdv_style").get<int>();
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& e : j.at("per_layer")) {
      LayerMetrics m;
      m.block = e.at("block").get<int>();
      const auto& edd = e.at("edd");
      m.edd.value = edd.at("value").get<double>();
      m.edd.data_entropy_bits = edd.at("data_entropy_bits").get<double>();
      m.edd.reference_entropy_bits = edd.at("reference_entropy_bits").get<double>();
      m.edd.bins = edd.at("bins").get<int>();
      m.edd.ref_draws = edd.at("ref_draws").get<int>();
      m.edd.seed = edd.at("seed").get<std::uint64_t>();
      m.gdv_narrative = gdv_from_json(e.at("gdv_narrative"));
      m.gdv_style = gdv_from_json(e.at("gdv_style"));
      m.mean_distance = e.at("mean_distance").get<double>();
      r.per_layer.push_back(std::move(m));
    }
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report.json: ") + e.what());
  }
}

json embeddings_to_json(const std::vector<Embedding2D>& embeddings, std::string_view method) {
  json j;
  j["format_version"] = 1;
  j["method"] = method;
  j["layers"] = json::array();
  for (std::size_t l = 0; l < embeddings.size(); ++l) {
    const auto& e = embeddings[l];
    j["layers"].push_back({{"block", l + 1},
                           {"coords", matrix_rows(e.coords)},
                           {"stress", e.stress},
                           {"normalized_stress", e.normalized_stress},
                           {"iterations", e.iterations},
                           {"converged", e.converged},
                           {"stress_history", e.stress_history},
                           {"eigenvalues", e.eigenvalues}});
  }
  return j;
}

std::vector<Embedding2D> embeddings_from_json(const json& j) {
  try {
    if (j.at("format_version").get<int>() != 1) {
      throw ValidationError("unsupported embeddings version");
    }
    std::vector<Embedding2D> out;
    for (const auto& e : j.at("layers")) {
      Embedding2D emb;
      const auto rows = e.at("coords").get<std::vector<std::vector<double>>>();
      emb.coords = Matrix::from_rows(rows);
      if (!rows.empty() && emb.coords.cols() != 2) {
        throw ValidationError("embedding coords must be 2D");
      }
      emb.stress = e.at("stress").get<double>();
      emb.normalized_stress = e.at("normalized_stress").get<double>();
      emb.iterations = e.at("iterations").get<int>();
      emb.converged = e.at("converged").get<bool>();
      emb.stress_history = e.at("stress_history").get<std::vector<double>>();
      emb.eigenvalues = e.at("eigenvalues").get<std::vector<double>>();
      out.push_back(std::move(emb));
    }
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed embeddings.json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("malformed embeddings.json: ") + e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw ValidationError("invalid JSON in " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace repgeom
