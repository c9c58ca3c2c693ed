#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tweetmine/cli.hpp"

namespace {

using tweetmine::cli::RunConfig;

// Options shared by every subcommand; flags override values from --config.
void add_common(CLI::App& sub, RunConfig& cfg, std::string& config_path) {
  sub.add_option("--config", config_path, "flat key = value config file");
  sub.add_option("--in,--input", cfg.input, "input corpus (.jsonl or .csv)");
  sub.add_option("--format", cfg.format, "input format: jsonl | csv");
  sub.add_option("--out", cfg.out, "output directory");
  sub.add_option("--out-format", cfg.out_format, "corpus output format: jsonl | csv");
  sub.add_option("--keywords", cfg.keywords, "comma-separated keyword filter");
  sub.add_option("--match", cfg.match, "keyword matching: substring | token");
  sub.add_option("--lexicon", cfg.lexicon, "name lexicon file");
  sub.add_option("--stoplist", cfg.stoplist, "stop-word file");
  sub.add_option("--seed", cfg.seed, "random seed");
}

void add_time(CLI::App& sub, std::string& from, std::string& to) {
  sub.add_option("--from", from, "selection start (ISO-8601, inclusive)");
  sub.add_option("--to", to, "selection end (ISO-8601, exclusive)");
}

void add_graph(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--min-tweets", cfg.min_tweets, "keep users with at least this many tweets");
  sub.add_option("--min-mentions", cfg.min_mentions, "or at least this many mentions");
  sub.add_option("--popular", cfg.popular, "comma-separated popular-user removal thresholds");
  sub.add_option("--layout-width", cfg.layout_width);
  sub.add_option("--layout-height", cfg.layout_height);
  sub.add_option("--iterations", cfg.layout_iterations, "layout iterations");
}

// Finds `--config FILE` (or `--config=FILE`) ahead of the real parse.
std::string find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = tweetmine::cli;
  RunConfig cfg;
  std::string config_path = find_config(argc, argv);
  if (!config_path.empty()) {
    try {
      cli::apply_config_file(cfg, config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kInputError;
    }
  }

  CLI::App app{"tweetmine - keyword time series, frequent name sets and mention communities"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "validate, filter and sort a corpus");
  add_common(*ingest, cfg, config_path);

  auto* freq = app.add_subcommand("freq", "windowed name frequency series and jump detection");
  add_common(*freq, cfg, config_path);
  add_time(*freq, cfg.from, cfg.to);
  freq->add_option("--name", cfg.name, "name token");
  freq->add_option("--width", cfg.window_width, "window width in seconds");
  freq->add_option("--min-rise", cfg.min_rise, "minimum rise reported as a jump");

  auto* rank = app.add_subcommand("rank", "rank lexicon names by frequency");
  add_common(*rank, cfg, config_path);
  add_time(*rank, cfg.rank_from, cfg.rank_to);

  auto* items = app.add_subcommand("itemsets", "mine frequent name sets");
  add_common(*items, cfg, config_path);
  add_time(*items, cfg.itemsets_from, cfg.itemsets_to);
  items->add_option("--supp-min", cfg.supp_min, "minimum support (strict)");
  items->add_option("--min-size", cfg.min_size);
  items->add_option("--max-size", cfg.max_size);
  items->add_option("--k", cfg.top_k, "itemsets in the formation graph");

  auto* comm = app.add_subcommand("communities", "mention-graph communities");
  add_common(*comm, cfg, config_path);
  add_graph(*comm, cfg);

  auto* layout = app.add_subcommand("layout", "force-directed layout of the mention graph");
  add_common(*layout, cfg, config_path);
  add_graph(*layout, cfg);

  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  add_common(*synth, cfg, config_path);
  synth->add_option("--scenario", cfg.scenario, "namesets | ranking | step | hubs | demo | scenario.json");

  auto* pipeline = app.add_subcommand("pipeline", "run every stage from one config");
  add_common(*pipeline, cfg, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kInputError;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (*ingest) return cli::cmd_ingest(cfg, out, err);
  if (*freq) return cli::cmd_freq(cfg, out, err);
  if (*rank) return cli::cmd_rank(cfg, out, err);
  if (*items) return cli::cmd_itemsets(cfg, out, err);
  if (*comm) return cli::cmd_communities(cfg, out, err);
  if (*layout) return cli::cmd_layout(cfg, out, err);
  if (*synth) return cli::cmd_synth(cfg, out, err);
  return cli::cmd_pipeline(cfg, out, err);
}
