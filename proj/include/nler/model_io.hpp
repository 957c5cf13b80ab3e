#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nler/summarizer.hpp"
#include "nler/util.hpp"

namespace nler {

// Versioned plain-text model file: a fixed-order header followed by one rule
// per line in the rule export format. Numbers round-trip bit-exact.
inline std::string serialize_model(const Model& model) {
  std::string out;
  out += "nler-model v1\n";
  out += "radius = " + format_double(model.params.radius) + "\n";
  out += std::string("metric = ") + to_string(model.params.metric) + "\n";
  out += "label_fraction = " + format_double(model.label_fraction) + "\n";
  out += "run_label = " + model.run_label + "\n";
  out += "feature_schema = " + join(model.feature_schema, ",") + "\n";
  out += "covering = " + join(model.ruleset.covering.attributes, ",") + "\n";
  out += std::string("covering_consistent = ") +
         (model.ruleset.covering.consistent ? "true" : "false") + "\n";
  out += "corpus_digest = " + model.corpus_digest + "\n";
  out += "config_digest = " + model.config_digest + "\n";
  out += "rules = " + std::to_string(model.ruleset.rules.size()) + "\n";
  for (const auto& rule : model.ruleset.rules) out += format_rule(rule) + "\n";
  return out;
}

inline Model parse_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "nler-model v1")
    fail("model", "unsupported model file (expected header 'nler-model v1')");

  Model model;
  std::size_t rule_count = 0;
  auto expect = [&](const std::string& key) -> std::string {
    if (!std::getline(in, line)) fail("model", "truncated model file, missing '" + key + "'");
    std::string prefix = key + " = ";
    if (line.rfind(prefix, 0) != 0)
      fail("model", "expected '" + key + "' line, found '" + line + "'");
    return line.substr(prefix.size());
  };

  model.params.radius = parse_double(expect("radius"), "model");
  model.params.metric = parse_metric(expect("metric"), "model");
  model.label_fraction = parse_double(expect("label_fraction"), "model");
  model.run_label = expect("run_label");
  model.feature_schema = split(expect("feature_schema"), ',');
  std::string covering = expect("covering");
  if (!covering.empty()) model.ruleset.covering.attributes = split(covering, ',');
  std::string consistent = expect("covering_consistent");
  if (consistent != "true" && consistent != "false")
    fail("model", "invalid covering_consistent value '" + consistent + "'");
  model.ruleset.covering.consistent = consistent == "true";
  model.corpus_digest = expect("corpus_digest");
  model.config_digest = expect("config_digest");
  rule_count = static_cast<std::size_t>(parse_double(expect("rules"), "model"));
  model.ruleset.params = model.params;

  for (std::size_t i = 0; i < rule_count; ++i) {
    if (!std::getline(in, line)) fail("model", "truncated model file, missing rule lines");
    model.ruleset.rules.push_back(parse_rule(line));
  }
  return model;
}

// Outputs are atomic: write a temp sibling, then rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("io", "cannot write file: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline void save_model(const Model& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

inline Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("model", "cannot read model file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

} // namespace nler
