#include "cli.hpp"

#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repgeom/activation_store.hpp"
#include "repgeom/corpus.hpp"
#include "repgeom/error.hpp"
#include "repgeom/pipeline.hpp"
#include "repgeom/render.hpp"
#include "repgeom/serialize.hpp"

namespace repgeom::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string archive;
  std::string out_dir;
  std::string report_dir;
  std::string texts_dir;
  std::string method = "smacof";
  std::string label_key = "both";
  int bins = 100;
  int ref_draws = 20;
  std::uint64_t seed = 42;
  int max_iter = 300;
  double eps = 1e-6;
  unsigned threads = 0;
};

void add_analysis_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--bins", o.bins, "EDD histogram bins")->check(CLI::PositiveNumber);
  cmd->add_option("--ref-draws", o.ref_draws, "EDD reference draws")->check(CLI::PositiveNumber);
}

void add_embed_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "Projection method")
      ->check(CLI::IsMember({"classical", "smacof"}));
  cmd->add_option("--max-iter", o.max_iter, "SMACOF iteration cap")->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps", o.eps, "SMACOF relative stress tolerance")->check(CLI::PositiveNumber);
}

void add_common_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_render_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--label-key", o.label_key, "Labels used for scatter and ellipse plots")
      ->check(CLI::IsMember({"narrative", "style", "both"}));
}

AnalysisConfig analysis_config(const Options& o) {
  AnalysisConfig c;
  c.edd.bins = o.bins;
  c.edd.ref_draws = o.ref_draws;
  c.edd.seed = o.seed;
  c.threads = o.threads;
  return c;
}

EmbedConfig embed_config(const Options& o) {
  EmbedConfig c;
  c.method = parse_embed_method(o.method);
  c.smacof.max_iter = o.max_iter;
  c.smacof.eps = o.eps;
  c.smacof.seed = o.seed;
  c.threads = o.threads;
  return c;
}

RenderOptions render_options(const Options& o) {
  RenderOptions r;
  if (o.label_key != "both") r.label_keys = {parse_label_key(o.label_key)};
  return r;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_analysis(const AnalysisReport& report, const CorpusManifest& manifest,
                    const fs::path& dir) {
  ensure_dir(dir);
  write_text_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_text_file(dir / "metrics.csv", metrics_csv(report));
  save_manifest(manifest, dir / "manifest.json");
}

void write_embeddings(const std::vector<Embedding2D>& embeddings, std::string_view method,
                      const CorpusManifest& manifest, const fs::path& dir) {
  ensure_dir(dir);
  write_text_file(dir / "embeddings.json", embeddings_to_json(embeddings, method).dump() + "\n");
  save_manifest(manifest, dir / "manifest.json");
}

void print_summary(const AnalysisReport& report, std::ostream& out) {
  out << "block  edd       gdv_narrative  gdv_style   mean_distance\n";
  for (const auto& m : report.per_layer) {
    char line[128];
    std::snprintf(line, sizeof line, "%5d  %.6f  %+.6f     %+.6f   %.6g\n", m.block, m.edd.value,
                  m.gdv_narrative.value, m.gdv_style.value, m.mean_distance);
    out << line;
  }
  out << "argmin gdv_narrative: block " << report.argmin_gdv_narrative << "\n"
      << "argmin gdv_style: block " << report.argmin_gdv_style << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
}

int cmd_validate(const Options& o, std::ostream& out) {
  const ActivationArchive archive = read_archive(o.archive);
  const ValidationReport report = validate_manifest(archive.manifest());
  out << "archive: " << archive.num_samples() << " samples x " << archive.num_layers()
      << " layers x " << archive.hidden_dim() << " dims\n";
  out << "grid complete: " << (report.grid_complete ? "yes" : "no") << "\n";
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  std::vector<std::string> problems = report.violations;
  if (!o.texts_dir.empty()) {
    if (!fs::is_directory(o.texts_dir)) throw IoError("text directory not found: " + o.texts_dir);
    for (auto& p : verify_texts(archive.manifest(), o.texts_dir)) problems.push_back(std::move(p));
  }
  for (const auto& v : problems) out << "violation: " << v << "\n";
  out << (problems.empty() ? "valid\n" : "invalid\n");
  return problems.empty() ? kOk : kValidationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layer-wise representation geometry of transformer CLS activations", "repgeom"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Check an activation archive and its manifest");
  validate->add_option("archive", o.archive, "Archive directory")->required();
  validate->add_option("--texts", o.texts_dir, "Verify text digests against DIR/<n>_<s>.txt");

  auto* analyze_cmd = app.add_subcommand("analyze", "Per-block EDD, GDV and mean distance");
  analyze_cmd->add_option("archive", o.archive, "Archive directory")->required();
  analyze_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  add_analysis_flags(analyze_cmd, o);
  add_common_flags(analyze_cmd, o);

  auto* embed_cmd = app.add_subcommand("embed", "Per-block 2D MDS projections");
  embed_cmd->add_option("archive", o.archive, "Archive directory")->required();
  embed_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  add_embed_flags(embed_cmd, o);
  add_common_flags(embed_cmd, o);

  auto* render_cmd = app.add_subcommand("render", "Write tables and SVG figures");
  render_cmd->add_option("reportdir", o.report_dir, "Directory written by analyze and embed")
      ->required();
  add_render_flags(render_cmd, o);

  auto* report_cmd = app.add_subcommand("report", "analyze + embed + render");
  report_cmd->add_option("archive", o.archive, "Archive directory")->required();
  report_cmd->add_option("--out", o.out_dir, "Output directory")->required();
  add_analysis_flags(report_cmd, o);
  add_embed_flags(report_cmd, o);
  add_common_flags(report_cmd, o);
  add_render_flags(report_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kBadArguments;
  }

  try {
    if (*validate) return cmd_validate(o, out);

    if (*analyze_cmd) {
      const ActivationArchive archive = read_archive(o.archive);
      const AnalysisReport report = analyze(archive, analysis_config(o));
      write_analysis(report, archive.manifest(), o.out_dir);
      print_summary(report, out);
      return kOk;
    }

    if (*embed_cmd) {
      const ActivationArchive archive = read_archive(o.archive);
      const auto embeddings = project_layers(archive, embed_config(o));
      write_embeddings(embeddings, o.method, archive.manifest(), o.out_dir);
      for (std::size_t l = 0; l < embeddings.size(); ++l) {
        out << "block " << l + 1 << ": normalized stress " << embeddings[l].normalized_stress
            << ", iterations " << embeddings[l].iterations
            << (embeddings[l].converged ? "" : " (not converged)") << "\n";
      }
      return kOk;
    }

    if (*render_cmd) {
      const fs::path dir = o.report_dir;
      const AnalysisReport report = report_from_json(read_json_file(dir / "report.json"));
      const auto embeddings = embeddings_from_json(read_json_file(dir / "embeddings.json"));
      const CorpusManifest manifest = load_manifest(dir / "manifest.json");
      for (const auto& p : render(report, embeddings, manifest, dir, render_options(o))) {
        out << "wrote " << p.string() << "\n";
      }
      return kOk;
    }

    if (*report_cmd) {
      const ActivationArchive archive = read_archive(o.archive);
      const AnalysisReport report = analyze(archive, analysis_config(o));
      const auto embeddings = project_layers(archive, embed_config(o));
      write_analysis(report, archive.manifest(), o.out_dir);
      write_embeddings(embeddings, o.method, archive.manifest(), o.out_dir);
      const auto files =
          render(report, embeddings, archive.manifest(), o.out_dir, render_options(o));
      print_summary(report, out);
      for (const auto& p : files) out << "wrote " << p.string() << "\n";
      return kOk;
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const ValidationError& e) {
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    // Preconditions the archive's contents fail (e.g. a single style class).
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  }
  return kBadArguments;
}

}  // namespace repgeom::cli
