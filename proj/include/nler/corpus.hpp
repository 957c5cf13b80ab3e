#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nler/error.hpp"
#include "nler/text.hpp"

namespace nler {

struct IngestOptions {
  bool strip_tags = false;
};

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io", "cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return normalize_newlines(buf.str());
}

namespace detail {

inline std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& dir,
                                                       std::string_view extension) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

} // namespace detail

// Expects the documented cluster layout:
//   <dir>/docs/<doc_id>.txt   (required, >= 1)
//   <dir>/gold/<ref_id>.txt   (optional)
inline Cluster ingest_cluster(const std::filesystem::path& dir, const IngestOptions& options) {
  Cluster cluster;
  cluster.id = dir.filename().string();

  std::filesystem::path docs_dir = dir / "docs";
  if (!std::filesystem::is_directory(docs_dir))
    fail("ingest", "missing docs directory: " + docs_dir.string());

  for (const auto& path : detail::sorted_files(docs_dir, ".txt")) {
    std::string text = read_text_file(path);
    if (options.strip_tags) text = strip_markup(text);
    Document doc;
    doc.id = path.stem().string();
    std::vector<std::string> sentences = split_sentences(text);
    if (sentences.empty()) {
      std::cerr << "warning: skipping empty document " << path.string() << "\n";
      continue;
    }
    for (std::size_t pos = 0; pos < sentences.size(); ++pos) {
      SentenceRecord rec;
      rec.cluster_id = cluster.id;
      rec.doc_id = doc.id;
      rec.position = pos;
      rec.text = std::move(sentences[pos]);
      rec.tokens = tokenize(rec.text);
      rec.word_count = rec.tokens.size();
      doc.sentences.push_back(std::move(rec));
    }
    cluster.documents.push_back(std::move(doc));
  }
  if (cluster.documents.empty())
    fail("ingest", "cluster '" + cluster.id + "' has no usable documents under " +
                       docs_dir.string());

  std::filesystem::path gold_dir = dir / "gold";
  if (std::filesystem::is_directory(gold_dir)) {
    for (const auto& path : detail::sorted_files(gold_dir, ".txt")) {
      std::string text = read_text_file(path);
      if (options.strip_tags) text = strip_markup(text);
      cluster.gold_summaries.push_back(std::move(text));
    }
  }
  return cluster;
}

// Every subdirectory of the corpus root is a cluster; clusters come back in
// lexicographic id order.
inline std::vector<Cluster> ingest_corpus(const std::filesystem::path& root,
                                          const IngestOptions& options) {
  if (!std::filesystem::is_directory(root))
    fail("ingest", "corpus root is not a directory: " + root.string());
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root))
    if (entry.is_directory()) dirs.push_back(entry.path());
  std::sort(dirs.begin(), dirs.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  std::vector<Cluster> clusters;
  for (const auto& dir : dirs) clusters.push_back(ingest_cluster(dir, options));
  if (clusters.empty()) fail("ingest", "corpus has no clusters: " + root.string());
  return clusters;
}

} // namespace nler
