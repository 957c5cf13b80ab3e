// Command-line front end: train, summarize, evaluate, rules, approx.
// Errors are single-line "ERROR:<category>: <message>" on stderr, exit 1.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nler/corpus.hpp"
#include "nler/model_io.hpp"
#include "nler/roughset.hpp"
#include "nler/summarizer.hpp"
#include "nler/util.hpp"

namespace {

using nler::fail;

struct RunConfig {
  std::optional<std::string> corpus;
  std::optional<std::string> out;
  std::optional<std::string> model;
  std::optional<std::string> target;
  std::optional<std::string> post;
  std::optional<std::string> emit_order;
  std::optional<std::string> metric;
  std::optional<double> radius;
  std::optional<double> label_fraction;
  std::optional<std::size_t> summary_words;
  std::optional<unsigned> jobs;
  std::optional<bool> strip_tags;
};

std::size_t parse_count(const std::string& value, const char* category) {
  double v = nler::parse_double(value, category);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
    fail(category, "expected a non-negative integer, got '" + value + "'");
  return static_cast<std::size_t>(v);
}

bool parse_bool(const std::string& value, const char* category) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(category, "expected true or false, got '" + value + "'");
}

// Flat "key = value" files; flags override config values, which override
// defaults. Unknown keys are rejected with their line number.
void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) fail("config", "cannot read config file: " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = nler::trim(line);
    if (text.empty() || text[0] == '#') continue;
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      fail("config", "missing '=' at line " + std::to_string(line_no));
    std::string key = nler::trim(text.substr(0, eq));
    std::string value = nler::trim(text.substr(eq + 1));
    for (auto& c : key)
      if (c == '-') c = '_';

    if (key == "corpus") config.corpus = value;
    else if (key == "out") config.out = value;
    else if (key == "model") config.model = value;
    else if (key == "target") config.target = value;
    else if (key == "post") config.post = value;
    else if (key == "emit_order") config.emit_order = value;
    else if (key == "metric") config.metric = value;
    else if (key == "radius") config.radius = nler::parse_double(value, "config");
    else if (key == "label_fraction") config.label_fraction = nler::parse_double(value, "config");
    else if (key == "summary_words") config.summary_words = parse_count(value, "config");
    else if (key == "jobs") config.jobs = static_cast<unsigned>(parse_count(value, "config"));
    else if (key == "strip_tags") config.strip_tags = parse_bool(value, "config");
    else
      fail("config", "unknown key '" + key + "' at line " + std::to_string(line_no));
  }
}

struct ParsedArgs {
  RunConfig config;
  std::vector<std::string> positional;
};

ParsedArgs parse_args(int argc, char** argv, int first,
                      const std::set<std::string>& allowed_flags, std::size_t max_positional) {
  // Config files apply first so flags keep precedence.
  RunConfig flags;
  std::vector<std::string> positional;
  std::optional<std::string> config_path;

  auto next_value = [&](int& i, const std::string& flag) -> std::string {
    if (i + 1 >= argc) fail("usage", "flag " + flag + " needs a value");
    return argv[++i];
  };

  for (int i = first; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--", 0) != 0) {
      positional.push_back(arg);
      continue;
    }
    std::string name = arg.substr(2);
    if (name == "config") {
      config_path = next_value(i, arg);
      continue;
    }
    if (!allowed_flags.count(name))
      fail("usage", "unknown flag --" + name + " for this subcommand");
    if (name == "corpus") flags.corpus = next_value(i, arg);
    else if (name == "out") flags.out = next_value(i, arg);
    else if (name == "model") flags.model = next_value(i, arg);
    else if (name == "target") flags.target = next_value(i, arg);
    else if (name == "post") flags.post = next_value(i, arg);
    else if (name == "emit-order") flags.emit_order = next_value(i, arg);
    else if (name == "metric") flags.metric = next_value(i, arg);
    else if (name == "radius") flags.radius = nler::parse_double(next_value(i, arg), "usage");
    else if (name == "label-fraction")
      flags.label_fraction = nler::parse_double(next_value(i, arg), "usage");
    else if (name == "summary-words")
      flags.summary_words = parse_count(next_value(i, arg), "usage");
    else if (name == "jobs") flags.jobs = static_cast<unsigned>(parse_count(next_value(i, arg), "usage"));
    else if (name == "strip-tags") flags.strip_tags = true;
  }
  if (positional.size() > max_positional)
    fail("usage", "unexpected argument '" + positional[max_positional] + "'");

  ParsedArgs parsed;
  if (config_path) load_config_file(*config_path, parsed.config);
  // Flag > config > default.
  auto merge = [](auto& target, const auto& source) {
    if (source) target = source;
  };
  merge(parsed.config.corpus, flags.corpus);
  merge(parsed.config.out, flags.out);
  merge(parsed.config.model, flags.model);
  merge(parsed.config.target, flags.target);
  merge(parsed.config.post, flags.post);
  merge(parsed.config.emit_order, flags.emit_order);
  merge(parsed.config.metric, flags.metric);
  merge(parsed.config.radius, flags.radius);
  merge(parsed.config.label_fraction, flags.label_fraction);
  merge(parsed.config.summary_words, flags.summary_words);
  merge(parsed.config.jobs, flags.jobs);
  merge(parsed.config.strip_tags, flags.strip_tags);
  parsed.positional = std::move(positional);
  return parsed;
}

nler::NeighborhoodParams params_from(const RunConfig& config) {
  nler::NeighborhoodParams params;
  params.radius = config.radius.value_or(0.2);
  if (params.radius < 0) fail("config", "radius must be >= 0");
  params.metric = nler::parse_metric(config.metric.value_or("2"), "config");
  return params;
}

nler::EvalOptions eval_options_from(const RunConfig& config) {
  nler::EvalOptions options;
  options.summary_words = config.summary_words.value_or(100);
  options.post = nler::parse_post_processor(config.post.value_or("none"), "config");
  if (options.post == nler::PostProcessor::AggregateRankMeasure)
    fail("notimpl",
         "post-processor 'aggregate-rank-measure' is not implemented; it is defined externally "
         "in 'Rough Set based Aggregate Rank Measure' (arXiv:2002.03259)");
  options.emit_order = nler::parse_emit_order(config.emit_order.value_or("ranked"), "config");
  options.jobs = std::max(1u, config.jobs.value_or(1));
  return options;
}

std::string require(const std::optional<std::string>& value, const char* what) {
  if (!value) fail("usage", std::string("missing required --") + what);
  return *value;
}

int cmd_train(const RunConfig& config) {
  std::string corpus = require(config.corpus, "corpus");
  std::string out = config.out.value_or("model.nler");
  double rho = config.label_fraction.value_or(0.2);
  if (!(rho > 0.0 && rho < 1.0)) fail("config", "label-fraction must lie in (0,1)");

  nler::IngestOptions ingest{config.strip_tags.value_or(false)};
  auto clusters = nler::ingest_corpus(corpus, ingest);
  nler::Model model = nler::train(clusters, params_from(config), rho);
  nler::save_model(model, out);
  std::cout << "wrote " << out << " (" << model.run_label << ", rules=" << model.ruleset.rules.size()
            << ", covering=" << (model.ruleset.covering.attributes.empty()
                                     ? std::string("<none>")
                                     : nler::join(model.ruleset.covering.attributes, ","))
            << (model.ruleset.covering.consistent ? "" : ", inconsistent") << ")\n";
  return 0;
}

void write_summaries(const std::vector<nler::SummaryResult>& summaries,
                     const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  for (const auto& summary : summaries)
    nler::write_file_atomic(out_dir / (summary.cluster_id + ".sum.txt"), summary.text + "\n");
}

int cmd_summarize(const RunConfig& config) {
  std::string corpus = require(config.corpus, "corpus");
  std::string model_path = require(config.model, "model");
  std::string out = require(config.out, "out");
  nler::EvalOptions options = eval_options_from(config);

  nler::Model model = nler::load_model(model_path);
  nler::IngestOptions ingest{config.strip_tags.value_or(false)};
  auto clusters = nler::ingest_corpus(corpus, ingest);

  std::vector<nler::SummaryResult> summaries;
  summaries.reserve(clusters.size());
  for (const auto& cluster : clusters)
    summaries.push_back(nler::summarize_cluster(model, cluster, options));
  write_summaries(summaries, out);
  std::cout << "wrote " << summaries.size() << " summaries to " << out << "\n";
  return 0;
}

int cmd_evaluate(const RunConfig& config) {
  std::string corpus = require(config.corpus, "corpus");
  std::string model_path = require(config.model, "model");
  std::string out = require(config.out, "out");
  nler::EvalOptions options = eval_options_from(config);

  nler::Model model = nler::load_model(model_path);
  nler::IngestOptions ingest{config.strip_tags.value_or(false)};
  auto clusters = nler::ingest_corpus(corpus, ingest);
  nler::EvalReport report = nler::evaluate(model, clusters, options);

  std::filesystem::path out_dir = out;
  std::filesystem::create_directories(out_dir);
  std::vector<nler::SummaryResult> summaries;
  for (const auto& eval : report.clusters) summaries.push_back(eval.summary);
  write_summaries(summaries, out_dir);
  nler::write_file_atomic(out_dir / "scores.tsv", nler::render_scores_tsv(report, options));
  std::cout << "wrote " << (out_dir / "scores.tsv").string() << " and "
            << report.clusters.size() << " summaries\n";
  return 0;
}

int cmd_rules(const RunConfig& config) {
  nler::Model model = nler::load_model(require(config.model, "model"));
  std::cout << "model " << model.run_label << ": radius=" << nler::format_double(model.params.radius)
            << " metric=" << to_string(model.params.metric)
            << " label_fraction=" << nler::format_double(model.label_fraction) << "\n";
  std::cout << "covering: "
            << (model.ruleset.covering.attributes.empty()
                    ? std::string("<none>")
                    : nler::join(model.ruleset.covering.attributes, ","))
            << (model.ruleset.covering.consistent ? " (consistent)" : " (inconsistent)") << "\n";
  std::cout << "rules: " << model.ruleset.rules.size() << "\n";
  for (const auto& rule : model.ruleset.rules) std::cout << nler::format_rule(rule) << "\n";
  return 0;
}

// Comma-separated table with a header row; the target column (default
// "decision", else the last column) marks target membership with
// POSITIVE/NEGATIVE or 1/0.
int cmd_approx(const RunConfig& config, const std::vector<std::string>& positional) {
  if (positional.empty()) fail("usage", "approx needs a table file argument");
  std::ifstream in(positional[0]);
  if (!in) fail("io", "cannot read table file: " + positional[0]);

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> raw_rows;
  std::string line;
  while (std::getline(in, line)) {
    std::string text = nler::trim(line);
    if (text.empty()) continue;
    auto cells = nler::split(text, ',');
    for (auto& cell : cells) cell = nler::trim(cell);
    if (header.empty()) header = cells;
    else if (cells.size() != header.size())
      fail("argument", "row width mismatch in table file");
    else raw_rows.push_back(cells);
  }
  if (header.empty() || raw_rows.empty()) fail("argument", "table file has no data rows");

  std::size_t target_col = header.size();
  if (config.target) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == *config.target) target_col = i;
    if (target_col == header.size())
      fail("argument", "target column '" + *config.target + "' not found");
  } else {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == "decision") target_col = i;
    if (target_col == header.size()) target_col = header.size() - 1;
  }
  if (header.size() < 2) fail("argument", "table needs at least one attribute column");

  std::vector<std::string> attributes;
  for (std::size_t i = 0; i < header.size(); ++i)
    if (i != target_col) attributes.push_back(header[i]);

  std::vector<std::vector<double>> rows;
  nler::ObjectSet target;
  for (std::size_t r = 0; r < raw_rows.size(); ++r) {
    std::vector<double> row;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i == target_col) {
        const std::string& v = raw_rows[r][i];
        if (v == "1" || v == "POSITIVE") target.push_back(r);
        else if (v != "0" && v != "NEGATIVE")
          fail("argument", "invalid target value '" + v + "' (expected 1/0 or POSITIVE/NEGATIVE)");
      } else {
        row.push_back(nler::parse_double(raw_rows[r][i], "argument"));
      }
    }
    rows.push_back(std::move(row));
  }

  nler::InformationSystem sys(attributes, rows);
  nler::NeighborhoodParams params = params_from(config);

  auto name_set = [](const nler::ObjectSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ',';
      out += 'o' + std::to_string(set[i] + 1);
    }
    return out + "}";
  };

  std::cout << "objects " << sys.size() << ", attributes " << attributes.size() << ", metric "
            << to_string(params.metric) << ", radius " << nler::format_double(params.radius)
            << "\n";
  std::cout << "target " << name_set(target) << " (column '" << header[target_col] << "')\n";
  std::cout << "lower " << name_set(nler::lower_approximation(sys, target, params)) << "\n";
  std::cout << "upper " << name_set(nler::upper_approximation(sys, target, params)) << "\n";
  std::cout << "boundary " << name_set(nler::boundary_region(sys, target, params)) << "\n";
  std::cout << "negative " << name_set(nler::negative_region(sys, target, params)) << "\n";
  std::cout << "membership:\n";
  for (std::size_t x = 0; x < sys.size(); ++x)
    std::cout << "  o" << (x + 1) << " "
              << nler::format_double(nler::rough_membership(sys, x, target, params)) << "\n";
  return 0;
}

int usage() {
  std::cerr << "usage: nler <train|summarize|evaluate|rules|approx> [flags]\n"
            << "  train     --corpus DIR [--out FILE] [--radius R] [--metric 1|2|inf]\n"
            << "            [--label-fraction F] [--strip-tags] [--config FILE]\n"
            << "  summarize --corpus DIR --model FILE --out DIR [--summary-words N]\n"
            << "            [--post P] [--emit-order ranked|original] [--jobs K] [--strip-tags]\n"
            << "  evaluate  --corpus DIR --model FILE --out DIR [--summary-words N]\n"
            << "            [--post P] [--emit-order ranked|original] [--jobs K] [--strip-tags]\n"
            << "  rules     --model FILE\n"
            << "  approx    TABLE.csv [--radius R] [--metric 1|2|inf] [--target COLUMN]\n";
  return 1;
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) return usage();
  std::string command = argv[1];
  try {
    if (command == "train") {
      auto parsed = parse_args(argc, argv, 2,
                               {"corpus", "out", "radius", "metric", "label-fraction",
                                "strip-tags"},
                               0);
      return cmd_train(parsed.config);
    }
    if (command == "summarize") {
      auto parsed = parse_args(argc, argv, 2,
                               {"corpus", "model", "out", "summary-words", "post", "emit-order",
                                "jobs", "strip-tags"},
                               0);
      return cmd_summarize(parsed.config);
    }
    if (command == "evaluate") {
      auto parsed = parse_args(argc, argv, 2,
                               {"corpus", "model", "out", "summary-words", "post", "emit-order",
                                "jobs", "strip-tags"},
                               0);
      return cmd_evaluate(parsed.config);
    }
    if (command == "rules") {
      auto parsed = parse_args(argc, argv, 2, {"model"}, 0);
      return cmd_rules(parsed.config);
    }
    if (command == "approx") {
      auto parsed = parse_args(argc, argv, 2, {"radius", "metric", "target"}, 1);
      return cmd_approx(parsed.config, parsed.positional);
    }
    if (command == "--help" || command == "-h" || command == "help") return usage();
    fail("usage", "unknown subcommand '" + command + "'");
  } catch (const nler::Error& e) {
    std::cerr << "ERROR:" << e.category() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ERROR:internal: " << e.what() << "\n";
    return 1;
  }
}
