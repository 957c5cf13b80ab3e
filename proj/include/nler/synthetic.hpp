#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nler/error.hpp"
#include "nler/text.hpp"
#include "nler/util.hpp"

namespace nler {

// Deterministic corpus with planted "important" sentences: each cluster has a
// private topic vocabulary that only the planted sentences (and the gold
// summary built from them) use, while the remaining sentences draw from a
// large background pool. Sentence frames are stopwords only, so the planted
// sentences stand out on centroid similarity and gold overlap.
struct SyntheticSpec {
  std::size_t clusters = 10;
  std::size_t docs_per_cluster = 5;
  std::size_t sentences_per_doc = 8;
  std::size_t planted_per_cluster = 8;
  std::uint64_t seed = 42;
};

namespace detail {

inline std::vector<std::string> make_word_pool(SplitMix64& rng, std::size_t count) {
  static const std::vector<std::string> syllables = {
      "ka", "lor", "ven", "tis", "mar", "del", "rin", "sul", "ber", "tan", "gol", "mir",
      "zen", "pra", "lum", "vex", "dor", "fin", "hal", "net", "osk", "pel", "qua", "rud"};
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < count) {
    std::size_t parts = 2 + rng.next_index(2);
    std::string w;
    for (std::size_t i = 0; i < parts; ++i) w += syllables[rng.next_index(syllables.size())];
    if (is_stopword(w)) continue;
    if (seen.insert(w).second) words.push_back(std::move(w));
  }
  return words;
}

inline std::string capitalized(std::string word) {
  if (!word.empty() && word[0] >= 'a' && word[0] <= 'z')
    word[0] = static_cast<char>(word[0] - 32);
  return word;
}

inline std::string planted_sentence(SplitMix64& rng, const std::vector<std::string>& topic) {
  auto pick = [&]() { return topic[rng.next_index(topic.size())]; };
  return capitalized(pick()) + " " + pick() + " of " + pick() + " " + pick() + " was under the " +
         pick() + " " + pick() + " with " + pick() + " " + pick() + " " + pick() + ".";
}

inline std::string noise_sentence(SplitMix64& rng, const std::vector<std::string>& pool,
                                  bool with_numeral) {
  auto pick = [&]() { return pool[rng.next_index(pool.size())]; };
  std::string s = "The " + pick() + " " + pick() + " was " + pick() + " by the " + pick() + " " +
                  pick() + " during " + pick() + " and " + pick();
  if (with_numeral) s += " in " + std::to_string(1900 + rng.next_index(100));
  return s + ".";
}

} // namespace detail

inline void write_synthetic_corpus(const std::filesystem::path& root, const SyntheticSpec& spec) {
  if (spec.planted_per_cluster > spec.docs_per_cluster * (spec.sentences_per_doc - 1))
    fail("argument", "too many planted sentences for the corpus shape");

  SplitMix64 rng(spec.seed);
  std::vector<std::string> background = detail::make_word_pool(rng, 400);

  for (std::size_t c = 0; c < spec.clusters; ++c) {
    char cluster_name[32];
    std::snprintf(cluster_name, sizeof(cluster_name), "cluster_%02zu", c);
    std::filesystem::path cluster_dir = root / cluster_name;
    std::filesystem::create_directories(cluster_dir / "docs");
    std::filesystem::create_directories(cluster_dir / "gold");

    std::vector<std::string> topic = detail::make_word_pool(rng, 12);

    // Planted slots cycle over documents at mid-document positions.
    std::set<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t k = 0; k < spec.planted_per_cluster; ++k) {
      std::size_t doc = k % spec.docs_per_cluster;
      std::size_t pos = 1 + (2 + 2 * (k / spec.docs_per_cluster)) % (spec.sentences_per_doc - 1);
      while (slots.count({doc, pos})) pos = 1 + pos % (spec.sentences_per_doc - 1);
      slots.insert({doc, pos});
    }

    std::vector<std::string> gold_parts;
    for (std::size_t d = 0; d < spec.docs_per_cluster; ++d) {
      std::vector<std::string> sentences;
      for (std::size_t p = 0; p < spec.sentences_per_doc; ++p) {
        if (slots.count({d, p})) {
          std::string s = detail::planted_sentence(rng, topic);
          gold_parts.push_back(s);
          sentences.push_back(std::move(s));
        } else {
          sentences.push_back(detail::noise_sentence(rng, background, (d + p) % 3 == 0));
        }
      }
      std::ofstream out(cluster_dir / "docs" / ("doc_" + std::to_string(d) + ".txt"),
                        std::ios::binary);
      out << join(sentences, " ") << "\n";
    }
    std::ofstream gold(cluster_dir / "gold" / "ref_0.txt", std::ios::binary);
    gold << join(gold_parts, " ") << "\n";
  }
}

} // namespace nler
