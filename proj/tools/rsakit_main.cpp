// rsakit: compute RDMs from feature matrices, assemble task similarity
// matrices, cluster them into dendrograms, and rank candidate models for a
// probe task. All outputs are deterministic: identical inputs give
// byte-identical files regardless of --jobs.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rsa/clustering.hpp"
#include "rsa/core.hpp"
#include "rsa/io.hpp"
#include "rsa/rdm.hpp"
#include "rsa/selection.hpp"
#include "rsa/similarity.hpp"
#include "rsa/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 4;

std::string single_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

[[noreturn]] void die(int exit_code, std::string_view code,
                      const std::string& message) {
  std::cerr << "error: [" << code << "] " << single_line(message) << "\n";
  std::exit(exit_code);
}

[[noreturn]] void die(const rsa::Error& error) {
  die(rsa::cli_exit_code(error.code()), rsa::to_string(error.code()),
      error.what());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    die(kExitIo, "io_failure",
        "cannot create directory '" + dir.string() + "': " + ec.message());
  }
}

std::string sanitize_filename(const std::string& name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (c >= '0' && c <= '9') || c == '.' || c == '-' ||
                       c == '_';
    out += plain ? c : '_';
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    die(kExitIo, "io_failure",
        "cannot open '" + path.string() + "' for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) {
    die(kExitIo, "io_failure", "write failed for '" + path.string() + "'");
  }
}

// --- rdm -------------------------------------------------------------------

struct RdmOptions {
  std::vector<std::string> features;
  std::string out_dir;
  std::string degenerate = "error";
  unsigned jobs = 1;
};

int run_rdm(const RdmOptions& opts) {
  const rsa::DegeneratePolicy policy =
      opts.degenerate == "max" ? rsa::DegeneratePolicy::MaxDissimilarity
                               : rsa::DegeneratePolicy::Error;
  ensure_directory(opts.out_dir);

  std::vector<fs::path> outputs;
  outputs.reserve(opts.features.size());
  for (const auto& input : opts.features) {
    outputs.push_back(fs::path(opts.out_dir) /
                      (fs::path(input).stem().string() + ".rdm.csv"));
  }
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (outputs[i] == outputs[j]) {
        die(kExitUsage, "usage",
            "inputs '" + opts.features[i] + "' and '" + opts.features[j] +
                "' map to the same output file " + outputs[i].string());
      }
    }
  }

  const unsigned jobs = std::max(
      1u,
      std::min<unsigned>(opts.jobs, static_cast<unsigned>(outputs.size())));
  std::vector<std::optional<rsa::Error>> failures(outputs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < outputs.size();
         i = next.fetch_add(1)) {
      try {
        const rsa::FeatureMatrix features =
            rsa::read_features(opts.features[i]);
        rsa::write_matrix(rsa::compute_rdm(features, policy), outputs[i]);
      } catch (const rsa::Error& e) {
        failures[i] = rsa::Error(e.code(), opts.features[i] + ": " + e.what());
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  // Failures are reported by input order so the outcome does not depend on
  // worker timing.
  for (const auto& failure : failures) {
    if (failure) die(*failure);
  }
  return 0;
}

// --- simmat ----------------------------------------------------------------

int run_simmat(const std::vector<std::string>& rdm_paths,
               const std::string& out) {
  std::vector<rsa::RDM> rdms;
  rdms.reserve(rdm_paths.size());
  for (const auto& path : rdm_paths) rdms.push_back(rsa::read_rdm(path));
  rsa::write_matrix(rsa::similarity_matrix(rdms), out);
  return 0;
}

// --- cluster ---------------------------------------------------------------

int run_cluster(const std::string& simmat_path, const std::string& linkage,
                const std::string& out, std::optional<std::size_t> cut_k) {
  const rsa::SimilarityMatrix sim = rsa::read_similarity(simmat_path);
  const rsa::Dendrogram dend =
      rsa::cluster(sim, rsa::linkage_from_string(linkage));
  const fs::path out_path(out);
  const rsa::DendrogramFormat format = out_path.extension() == ".json"
                                           ? rsa::DendrogramFormat::Json
                                           : rsa::DendrogramFormat::Newick;
  rsa::write_dendrogram(dend, out_path, format);

  if (cut_k) {
    const std::vector<std::size_t> assignment = rsa::cut(dend, *cut_k);
    std::ostringstream csv;
    csv << "task,cluster\n";
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      csv << dend.leaves()[i].name() << ',' << assignment[i] << '\n';
    }
    fs::path cut_path = out_path;
    cut_path.replace_extension(".clusters.csv");
    write_text(cut_path, csv.str());
  }
  return 0;
}

// --- rank ------------------------------------------------------------------

struct RankOptions {
  std::string probe_rdm;
  std::vector<std::string> candidates;
  std::string out;
  std::string affinity;
  std::size_t topk = 5;
  bool have_affinity = false;
};

int run_rank(const RankOptions& opts) {
  const rsa::RDM probe = rsa::read_rdm(opts.probe_rdm);
  std::vector<rsa::RDM> candidates;
  candidates.reserve(opts.candidates.size());
  for (const auto& path : opts.candidates) {
    candidates.push_back(rsa::read_rdm(path));
  }
  const rsa::Ranking ranking = rsa::rank_by_similarity(probe, candidates);

  std::ostringstream csv;
  csv << "task,score,rank\n";
  for (std::size_t i = 0; i < ranking.ordered().size(); ++i) {
    const auto& entry = ranking.ordered()[i];
    csv << entry.task.name() << ',' << rsa::format_double(entry.score) << ','
        << i + 1 << '\n';
  }

  if (opts.have_affinity) {
    const rsa::AffinityTable table = rsa::read_affinity(opts.affinity);
    const bool agree = rsa::topk_agreement(ranking, table, opts.topk);
    const rsa::Ranking transfer = rsa::ranking_from_affinity(table);
    const double rho = rsa::ranking_correlation(ranking, transfer,
                                                rsa::CorrelationMethod::Pearson);
    const double rs = rsa::ranking_correlation(
        ranking, transfer, rsa::CorrelationMethod::Spearman);
    csv << "topk_agreement," << opts.topk << ',' << (agree ? "true" : "false")
        << '\n';
    csv << "ranking_correlation,pearson," << rsa::format_double(rho) << '\n';
    csv << "ranking_correlation,spearman," << rsa::format_double(rs) << '\n';
  }
  write_text(opts.out, csv.str());
  return 0;
}

// --- synth -----------------------------------------------------------------

int run_synth(const std::string& spec_path, const std::string& out_dir) {
  const rsa::SyntheticSpec spec = rsa::read_synthetic_spec(spec_path);
  ensure_directory(out_dir);
  const std::vector<rsa::FeatureMatrix> features = rsa::generate(spec);
  for (std::size_t i = 0; i < features.size(); ++i) {
    char prefix[8];
    std::snprintf(prefix, sizeof(prefix), "%03zu", i);
    const fs::path path =
        fs::path(out_dir) / (std::string(prefix) + "_" +
                             sanitize_filename(features[i].task().name()) +
                             ".rsaf");
    rsa::write_features(features[i], path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representational similarity toolkit: RDMs, task similarity "
               "matrices, dendrograms, and model-selection rankings"};
  app.require_subcommand(1);

  RdmOptions rdm_opts;
  CLI::App* rdm_cmd =
      app.add_subcommand("rdm", "Compute one RDM CSV per feature file");
  rdm_cmd
      ->add_option("--features", rdm_opts.features,
                   "Feature files (RSAF or CSV)")
      ->required()
      ->expected(-1);
  rdm_cmd->add_option("--out-dir", rdm_opts.out_dir, "Output directory")
      ->required();
  rdm_cmd
      ->add_option("--degenerate", rdm_opts.degenerate,
                   "Constant-row policy: error or max")
      ->check(CLI::IsMember({"error", "max"}));
  rdm_cmd->add_option("--jobs", rdm_opts.jobs, "Parallel input files")
      ->envname("RSA_JOBS")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> simmat_rdms;
  std::string simmat_out;
  CLI::App* simmat_cmd = app.add_subcommand(
      "simmat", "Assemble a task similarity matrix from RDM files");
  simmat_cmd->add_option("--rdm", simmat_rdms, "RDM CSV files")
      ->required()
      ->expected(-1);
  simmat_cmd->add_option("--out", simmat_out, "Output CSV")->required();

  std::string cluster_simmat;
  std::string cluster_linkage = "average";
  std::string cluster_out;
  std::optional<std::size_t> cluster_cut;
  CLI::App* cluster_cmd = app.add_subcommand(
      "cluster", "Agglomerative clustering of a similarity matrix");
  cluster_cmd->add_option("--simmat", cluster_simmat, "Similarity CSV")
      ->required();
  cluster_cmd
      ->add_option("--linkage", cluster_linkage,
                   "average, complete, or single")
      ->check(CLI::IsMember({"average", "complete", "single"}));
  cluster_cmd
      ->add_option("--out", cluster_out,
                   "Dendrogram path (.json for JSON, otherwise Newick)")
      ->required();
  cluster_cmd->add_option("--cut", cluster_cut,
                          "Also write a flat k-cluster assignment CSV");

  RankOptions rank_opts;
  CLI::App* rank_cmd = app.add_subcommand(
      "rank", "Rank candidate RDMs by similarity to a probe RDM");
  rank_cmd->add_option("--probe-rdm", rank_opts.probe_rdm, "Probe RDM CSV")
      ->required();
  rank_cmd
      ->add_option("--candidates", rank_opts.candidates, "Candidate RDM CSVs")
      ->required()
      ->expected(-1);
  rank_cmd->add_option("--out", rank_opts.out, "Ranking CSV")->required();
  CLI::Option* affinity_opt =
      rank_cmd->add_option("--affinity", rank_opts.affinity,
                           "Affinity CSV for agreement evaluation");
  rank_cmd->add_option("--topk", rank_opts.topk, "Agreement cutoff k")
      ->needs(affinity_opt)
      ->check(CLI::PositiveNumber);

  std::string synth_spec;
  std::string synth_out_dir;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate synthetic feature files from a study spec");
  synth_cmd->add_option("--spec", synth_spec, "Study spec JSON")->required();
  synth_cmd->add_option("--out-dir", synth_out_dir, "Output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: [usage] " << single_line(e.what()) << "\n";
    return kExitUsage;
  }

  try {
    if (rdm_cmd->parsed()) return run_rdm(rdm_opts);
    if (simmat_cmd->parsed()) {
      if (simmat_rdms.size() < 2) {
        die(kExitUsage, "usage", "simmat needs at least 2 RDM files");
      }
      return run_simmat(simmat_rdms, simmat_out);
    }
    if (cluster_cmd->parsed()) {
      return run_cluster(cluster_simmat, cluster_linkage, cluster_out,
                         cluster_cut);
    }
    if (rank_cmd->parsed()) {
      rank_opts.have_affinity = affinity_opt->count() > 0;
      return run_rank(rank_opts);
    }
    if (synth_cmd->parsed()) return run_synth(synth_spec, synth_out_dir);
  } catch (const rsa::Error& e) {
    die(e);
  } catch (const std::exception& e) {
    die(3, "internal", e.what());
  }
  return 0;
}
