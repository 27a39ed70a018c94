// ftsim: build corpus matrices, fuzzify them, and run the triadic similarity
// pipelines (single-site, sequential, merging, splitting).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftsim/corpus.hpp"
#include "ftsim/distributed.hpp"
#include "ftsim/engine.hpp"
#include "ftsim/fuzzy.hpp"
#include "ftsim/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string input;
  std::vector<std::string> sites;
  std::vector<std::string> merge_files;
  std::string output_dir = ".";
  std::string config_path;
  std::string stopwords_path;
  std::string bounds_strategy = "zero-max";
  std::size_t min_token_len = 1;
  int iterations = 4;
  double epsilon = 1e-4;
  std::size_t splits = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: default per architecture
};

// Config file mirrors the flags; explicitly passed flags win.
void apply_config(Options &opt, const CLI::App &cmd) {
  if (opt.config_path.empty()) return;
  std::ifstream in(opt.config_path);
  if (!in) throw ftsim::Error("cannot open config " + opt.config_path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception &e) {
    throw ftsim::Error("malformed config " + opt.config_path + ": " + e.what());
  }
  auto overridden = [&](const std::string &flag) {
    auto *o = cmd.get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  auto load = [&](const char *key, const std::string &flag, auto &field) {
    if (cfg.contains(key) && !overridden(flag)) field = cfg[key].get<std::decay_t<decltype(field)>>();
  };
  load("input", "--input", opt.input);
  load("sites", "--sites", opt.sites);
  load("output_dir", "--output-dir", opt.output_dir);
  load("stopwords", "--stopwords", opt.stopwords_path);
  load("bounds_strategy", "--bounds-strategy", opt.bounds_strategy);
  load("min_token_len", "--min-token-len", opt.min_token_len);
  load("iterations", "--iterations", opt.iterations);
  load("epsilon", "--epsilon", opt.epsilon);
  load("splits", "--splits", opt.splits);
  load("seed", "--seed", opt.seed);
  load("threads", "--threads", opt.threads);
}

void resolve_threads(Options &opt, const CLI::App &cmd) {
  auto *o = cmd.get_option_no_throw("--threads");
  const bool flag_set = o != nullptr && o->count() > 0;
  if (!flag_set && opt.threads == 0) {
    if (const char *env = std::getenv("FTSIM_THREADS")) opt.threads = std::atoi(env);
  }
  if (opt.threads < 0) throw CLI::ValidationError("--threads", "must be >= 0");
}

ftsim::TokenizerOptions tokenizer_options(const Options &opt) {
  ftsim::TokenizerOptions t;
  t.min_token_len = opt.min_token_len;
  if (!opt.stopwords_path.empty()) t = ftsim::load_stopwords(std::move(t), opt.stopwords_path);
  return t;
}

json config_echo(const Options &opt) {
  return json{{"iterations", opt.iterations},
              {"epsilon", opt.epsilon},
              {"bounds_strategy", opt.bounds_strategy},
              {"splits", opt.splits},
              {"seed", opt.seed},
              {"threads", opt.threads},
              {"min_token_len", opt.min_token_len},
              {"stopwords", opt.stopwords_path},
              {"sites", opt.sites}};
}

void write_manifest(const Options &opt, const std::string &command, json extra,
                    const std::vector<std::string> &artifacts) {
  json m{{"command", command},
         {"config", config_echo(opt)},
         {"artifacts", artifacts}};
  m.update(extra);
  for (const auto &a : artifacts)
    if (!fs::exists(a)) throw ftsim::Error("missing artifact " + a);
  std::ofstream out(fs::path(opt.output_dir) / "manifest.json");
  if (!out) throw ftsim::Error("cannot write manifest in " + opt.output_dir);
  out << m.dump(2) << "\n";
}

std::string out_path(const Options &opt, const std::string &name) {
  fs::create_directories(opt.output_dir);
  return (fs::path(opt.output_dir) / name).string();
}

json report_json(const ftsim::RunReport &report) {
  json deltas = json::array(), secs = json::array();
  for (const auto &it : report.iterations) {
    deltas.push_back(it.delta);
    secs.push_back(it.wall_seconds);
  }
  return json{{"deltas", deltas},
              {"iteration_seconds", secs},
              {"total_seconds", report.total_seconds}};
}

json report_json(const ftsim::DistributedReport &report) {
  return json{{"site_deltas", report.site_deltas},
              {"consensus_deltas", report.consensus_deltas},
              {"iteration_seconds", report.iteration_seconds},
              {"total_seconds", report.total_seconds}};
}

struct PreparedCorpus {
  ftsim::CorpusMatrices built;
  ftsim::FuzzyMatrix sdf;
  ftsim::FuzzyMatrix wsf;
};

PreparedCorpus prepare(const Options &opt, const std::string &input) {
  auto docs = ftsim::ingest(input);
  auto built = ftsim::build_matrices(docs, tokenizer_options(opt));
  auto strategy = ftsim::BoundsStrategy::parse(opt.bounds_strategy);
  PreparedCorpus p;
  p.sdf = ftsim::fuzzify(built.sd, strategy);
  p.wsf = ftsim::fuzzify(built.ws, strategy);
  p.built = std::move(built);
  return p;
}

int cmd_build(const Options &opt) {
  auto docs = ftsim::ingest(opt.input);
  auto built = ftsim::build_matrices(docs, tokenizer_options(opt));
  auto sd = out_path(opt, "SD.csv"), ws = out_path(opt, "WS.csv");
  ftsim::write_matrix(built.sd, sd);
  ftsim::write_matrix(built.ws, ws);
  write_manifest(opt, "build",
                 json{{"input", opt.input},
                      {"documents", built.index.documents.size()},
                      {"sentences", built.index.sentences.size()},
                      {"words", built.index.words.size()}},
                 {sd, ws});
  return 0;
}

int cmd_fuzzify(const Options &opt) {
  auto m = ftsim::read_matrix(opt.input);
  auto f = ftsim::fuzzify(m, ftsim::BoundsStrategy::parse(opt.bounds_strategy));
  auto path = out_path(opt, "fuzzified.csv");
  ftsim::write_matrix(f, path);
  write_manifest(opt, "fuzzify", json{{"input", opt.input}}, {path});
  return 0;
}

int cmd_run(const Options &opt) {
  auto p = prepare(opt, opt.input);
  ftsim::RunConfig cfg{opt.iterations, opt.epsilon};
  auto [state, report] = ft_sim_run(p.sdf, p.wsf, cfg, std::max(opt.threads, 1));
  auto d2 = out_path(opt, "D2.csv"), s2 = out_path(opt, "S2.csv"),
       w2 = out_path(opt, "W2.csv");
  ftsim::write_similarity(state.d2, d2);
  ftsim::write_similarity(state.s2, s2);
  ftsim::write_similarity(state.w2, w2);
  write_manifest(opt, "run", json{{"input", opt.input}, {"report", report_json(report)}},
                 {d2, s2, w2});
  return 0;
}

std::vector<ftsim::Site> load_sites(const Options &opt) {
  if (opt.sites.empty()) throw ftsim::Error("no sites given");
  std::vector<ftsim::Site> sites;
  int id = 1;
  for (const auto &path : opt.sites) {
    auto p = prepare(opt, path);
    sites.push_back(ftsim::Site::make(id++, std::move(p.sdf), std::move(p.wsf)));
  }
  return sites;
}

int cmd_run_distributed(const Options &opt, bool sequential) {
  auto sites = load_sites(opt);
  ftsim::RunConfig cfg{opt.iterations, opt.epsilon};
  auto [consensus, report] = sequential ? run_sequential(sites, cfg, opt.threads)
                                        : run_merging(std::move(sites), cfg, opt.threads);
  auto path = out_path(opt, "consensus.csv");
  ftsim::write_similarity(consensus.matrix, path);
  write_manifest(opt, sequential ? "run-seq" : "run-merge",
                 json{{"report", report_json(report)}}, {path});
  return 0;
}

int cmd_run_split(const Options &opt) {
  auto p = prepare(opt, opt.input);
  ftsim::RunConfig cfg{opt.iterations, opt.epsilon};
  ftsim::SplitConfig split{opt.splits, opt.seed};
  auto [consensus, report] = run_splitting(p.sdf, p.wsf, split, cfg, opt.threads);
  auto path = out_path(opt, "consensus.csv");
  ftsim::write_similarity(consensus.matrix, path);
  write_manifest(opt, "run-split",
                 json{{"input", opt.input}, {"report", report_json(report)}}, {path});
  return 0;
}

int cmd_merge(const Options &opt) {
  if (opt.merge_files.empty()) throw ftsim::Error("no matrix files given");
  std::vector<ftsim::SimilarityMatrix> mats;
  std::vector<std::vector<std::string>> sets;
  for (const auto &f : opt.merge_files) {
    mats.push_back(ftsim::read_similarity(f));
    sets.push_back(mats.back().labels);
  }
  auto consensus = ftsim::merge(mats, ftsim::label_union(sets));
  auto path = out_path(opt, "merged.csv");
  ftsim::write_similarity(consensus.matrix, path);
  write_manifest(opt, "merge", json{{"inputs", opt.merge_files}}, {path});
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Fuzzy triadic co-similarity over text corpora"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--output-dir", opt.output_dir, "Directory for artifacts");
    cmd->add_option("--config", opt.config_path, "JSON config file (flags override)");
    cmd->add_option("--threads", opt.threads, "Worker cap (0: architecture default)");
    return cmd;
  };
  auto add_tokenizer = [&](CLI::App *cmd) {
    cmd->add_option("--stopwords", opt.stopwords_path, "Stop-word file, one token per line");
    cmd->add_option("--min-token-len", opt.min_token_len, "Minimum token length");
  };
  auto add_engine = [&](CLI::App *cmd) {
    cmd->add_option("--iterations", opt.iterations, "Iteration bound T")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", opt.epsilon, "Early-stop tolerance (0 disables)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--bounds-strategy", opt.bounds_strategy,
                    "zero-max | minmax | global | fixed:L:U");
  };

  auto *build = add_common(app.add_subcommand("build", "Corpus to SD/WS count matrices"));
  build->add_option("--input", opt.input, "Corpus directory or JSON-lines file");
  add_tokenizer(build);

  auto *fuz = add_common(app.add_subcommand("fuzzify", "Fuzzify a crisp matrix"));
  fuz->add_option("--input", opt.input, "Crisp matrix CSV");
  fuz->add_option("--bounds-strategy", opt.bounds_strategy,
                  "zero-max | minmax | global | fixed:L:U");

  auto *run = add_common(app.add_subcommand("run", "Single-site pipeline"));
  run->add_option("--input", opt.input, "Corpus directory or JSON-lines file");
  add_tokenizer(run);
  add_engine(run);

  auto *seq = add_common(app.add_subcommand("run-seq", "Sequential chained sites"));
  seq->add_option("--sites", opt.sites, "Comma-separated site corpora")->delimiter(',');
  add_tokenizer(seq);
  add_engine(seq);

  auto *mrg = add_common(app.add_subcommand("run-merge", "Barrier-merged sites"));
  mrg->add_option("--sites", opt.sites, "Comma-separated site corpora")->delimiter(',');
  add_tokenizer(mrg);
  add_engine(mrg);

  auto *spl = add_common(app.add_subcommand("run-split", "Sentence-split single corpus"));
  spl->add_option("--input", opt.input, "Corpus directory or JSON-lines file");
  spl->add_option("--splits", opt.splits, "Number of splits H")->check(CLI::PositiveNumber);
  spl->add_option("--seed", opt.seed, "Partition RNG seed");
  add_tokenizer(spl);
  add_engine(spl);

  auto *merge_cmd = add_common(app.add_subcommand("merge", "Merge similarity matrix files"));
  merge_cmd->add_option("files", opt.merge_files, "Similarity CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  CLI::App *cmd = app.get_subcommands().front();
  try {
    apply_config(opt, *cmd);
    resolve_threads(opt, *cmd);
    if (cmd == build) return cmd_build(opt);
    if (cmd == fuz) return cmd_fuzzify(opt);
    if (cmd == run) return cmd_run(opt);
    if (cmd == seq) return cmd_run_distributed(opt, true);
    if (cmd == mrg) return cmd_run_distributed(opt, false);
    if (cmd == spl) return cmd_run_split(opt);
    if (cmd == merge_cmd) return cmd_merge(opt);
  } catch (const CLI::Error &e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
