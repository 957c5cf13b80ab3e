#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <unistd.h>

#include "nler/model_io.hpp"
#include "nler/summarizer.hpp"
#include "nler/synthetic.hpp"

using namespace nler;

namespace {

namespace fs = std::filesystem;

Cluster make_cluster(const std::string& id, const std::vector<std::string>& doc_texts,
                     const std::vector<std::string>& gold = {}) {
  Cluster cluster;
  cluster.id = id;
  for (std::size_t d = 0; d < doc_texts.size(); ++d) {
    Document doc;
    doc.id = "doc" + std::to_string(d);
    auto sentences = split_sentences(doc_texts[d]);
    for (std::size_t pos = 0; pos < sentences.size(); ++pos) {
      SentenceRecord rec;
      rec.cluster_id = id;
      rec.doc_id = doc.id;
      rec.position = pos;
      rec.text = sentences[pos];
      rec.tokens = tokenize(rec.text);
      rec.word_count = rec.tokens.size();
      doc.sentences.push_back(std::move(rec));
    }
    cluster.documents.push_back(std::move(doc));
  }
  cluster.gold_summaries = gold;
  return cluster;
}

std::vector<Cluster> synthetic_clusters(std::size_t clusters, std::uint64_t seed = 42) {
  static int counter = 0;
  fs::path dir = fs::temp_directory_path() /
                 ("nler_summ_test_" + std::to_string(::getpid()) + "_" +
                  std::to_string(counter++));
  SyntheticSpec spec;
  spec.clusters = clusters;
  spec.seed = seed;
  write_synthetic_corpus(dir, spec);
  auto result = ingest_corpus(dir, {});
  fs::remove_all(dir);
  return result;
}

NeighborhoodParams default_params(double radius = 0.2) {
  NeighborhoodParams p;
  p.metric = Metric::L2;
  p.radius = radius;
  return p;
}

} // namespace

TEST_CASE("labelling ranks verbatim gold sentences first") {
  Cluster cluster = make_cluster(
      "c1",
      {"Budget talks collapsed after midnight. Random chatter one. Random chatter two.",
       "Random chatter three. Random chatter four."},
      {"Budget talks collapsed after midnight."});
  auto labels = label_training(cluster, 0.2); // ceil(0.2 * 5) = 1 positive
  REQUIRE(labels.size() == 5);
  CHECK(labels[0] == Label::Positive);
  for (std::size_t i = 1; i < labels.size(); ++i) CHECK(labels[i] == Label::Negative);
}

TEST_CASE("labelling takes exactly ceil(rho * n) positives with deterministic tie-break") {
  std::vector<std::string> docs;
  for (int d = 0; d < 2; ++d)
    docs.push_back("Same words here. Same words here. Same words here. Same words here. "
                   "Same words here.");
  Cluster cluster = make_cluster("c1", docs, {"Same words here."});
  auto labels = label_training(cluster, 0.2); // ceil(0.2 * 10) = 2
  std::size_t positives = 0;
  for (auto l : labels)
    if (l == Label::Positive) ++positives;
  CHECK(positives == 2);
  // all recalls tie, so (doc_id, position) ascending wins
  CHECK(labels[0] == Label::Positive);
  CHECK(labels[1] == Label::Positive);
}

TEST_CASE("labelling requires gold summaries and a valid fraction") {
  Cluster cluster = make_cluster("c1", {"Some text here."});
  CHECK_THROWS_AS(label_training(cluster, 0.2), Error);
  Cluster with_gold = make_cluster("c1", {"Some text here."}, {"Some text here."});
  CHECK_THROWS_AS(label_training(with_gold, 0.0), Error);
  CHECK_THROWS_AS(label_training(with_gold, 1.0), Error);
}

TEST_CASE("training on the synthetic corpus produces a usable model") {
  auto clusters = synthetic_clusters(3);
  Model model = train(clusters, default_params(0.2), 0.2);
  CHECK(model.run_label == "Nbhd_0.2");
  CHECK(model.feature_schema == feature_schema());
  CHECK_FALSE(model.ruleset.rules.empty());
  CHECK_FALSE(model.corpus_digest.empty());

  Model other = train(clusters, default_params(0.3), 0.2);
  CHECK(other.run_label == "Nbhd_0.3");

  CHECK_THROWS_AS(train({}, default_params(), 0.2), Error);
}

TEST_CASE("sentence scoring orders by score then document then position") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  auto scored = score_sentences(model, clusters[0]);
  REQUIRE(scored.size() == clusters[0].sentence_count());
  for (std::size_t i = 1; i < scored.size(); ++i) {
    const auto& a = scored[i - 1];
    const auto& b = scored[i];
    bool ordered = a.score > b.score ||
                   (a.score == b.score && (a.sentence->doc_id < b.sentence->doc_id ||
                                           (a.sentence->doc_id == b.sentence->doc_id &&
                                            a.sentence->position < b.sentence->position)));
    CHECK(ordered);
  }
}

TEST_CASE("schema mismatch is rejected, never reindexed") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  model.feature_schema[0] = "renamed";
  CHECK_THROWS_AS(score_sentences(model, clusters[0]), Error);
}

TEST_CASE("membership post-processing pins lower approximation to 1 and negative region to 0") {
  // Five constant features plus one that mirrors the 1-D worked universe
  // (0.0, 0.1, 0.25, 0.9): constant attributes contribute nothing to the
  // distances, so the granules match the 1-D example exactly.
  std::vector<SentenceRecord> sentences(4);
  std::vector<double> line = {0.0, 0.1, 0.25, 0.9};
  ClusterFeatureTable table;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    sentences[i].cluster_id = "c";
    sentences[i].doc_id = "d";
    sentences[i].position = i;
    sentences[i].text = "s" + std::to_string(i);
    FeatureVector fv;
    fv.names = feature_schema();
    fv.values = {0.5, 0.5, line[i], 0.5, 0.5, 0.5};
    table.sentences.push_back(&sentences[i]);
    table.features.push_back(std::move(fv));
  }
  // raw scores make X = {o2, o3}
  std::vector<ScoredSentence> scored = {{&sentences[1], 2.0},
                                        {&sentences[2], 1.0},
                                        {&sentences[0], -1.0},
                                        {&sentences[3], -2.0}};
  auto rescored = post_process_membership(scored, table, default_params(0.2));
  REQUIRE(rescored.size() == 4);
  CHECK(rescored[0].sentence == &sentences[2]); // lower approximation member
  CHECK(rescored[0].score == 1.0);
  CHECK(rescored[1].sentence == &sentences[1]);
  CHECK(rescored[1].score == 2.0 / 3.0);
  CHECK(rescored[2].sentence == &sentences[0]); // boundary, strictly between
  CHECK(rescored[2].score == 0.5);
  CHECK(rescored[3].sentence == &sentences[3]); // negative region
  CHECK(rescored[3].score == 0.0);
}

TEST_CASE("membership post-processing with no positive scores keeps tie-break order") {
  std::vector<SentenceRecord> sentences(2);
  ClusterFeatureTable table;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    sentences[i].doc_id = "d";
    sentences[i].position = i;
    FeatureVector fv;
    fv.names = feature_schema();
    fv.values = {0.1, 0.2, 0.3, 0.4, 0.5, static_cast<double>(i)};
    table.sentences.push_back(&sentences[i]);
    table.features.push_back(std::move(fv));
  }
  std::vector<ScoredSentence> scored = {{&sentences[1], -1.0}, {&sentences[0], -3.0}};
  auto rescored = post_process_membership(scored, table, default_params(0.2));
  CHECK(rescored[0].sentence == &sentences[0]);
  CHECK(rescored[0].score == 0.0);
  CHECK(rescored[1].score == 0.0);
}

TEST_CASE("summary assembly crosses the budget on a token boundary") {
  std::vector<SentenceRecord> sentences(2);
  sentences[0].doc_id = "a";
  sentences[0].position = 0;
  sentences[0].text = "Alpha beta gamma delta.";
  sentences[0].tokens = tokenize(sentences[0].text);
  sentences[0].word_count = 4;
  sentences[1].doc_id = "a";
  sentences[1].position = 1;
  sentences[1].text = "One two three four five.";
  sentences[1].tokens = tokenize(sentences[1].text);
  sentences[1].word_count = 5;

  std::vector<ScoredSentence> scored = {{&sentences[0], 2.0}, {&sentences[1], 1.0}};

  SummaryResult full = assemble_summary("c", scored, 100);
  CHECK(full.text == "Alpha beta gamma delta. One two three four five.");
  CHECK(full.word_count == 9);

  SummaryResult cut = assemble_summary("c", scored, 7);
  CHECK(cut.text == "Alpha beta gamma delta. One two three");
  CHECK(cut.word_count == 7);

  SummaryResult none = assemble_summary("c", scored, 0);
  CHECK(none.text.empty());
  CHECK(none.word_count == 0);

  SummaryResult original = assemble_summary("c", {{&sentences[1], 5.0}, {&sentences[0], 1.0}},
                                            100, EmitOrder::Original);
  CHECK(original.text == "Alpha beta gamma delta. One two three four five.");
  REQUIRE(original.selected.size() == 2);
  CHECK(original.selected[0].sentence == &sentences[1]); // rank order kept in selected
}

TEST_CASE("summary budget law on random scored lists") {
  SplitMix64 rng(717);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<SentenceRecord> sentences(1 + rng.next_index(8));
    std::vector<ScoredSentence> scored;
    std::size_t total = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      sentences[i].doc_id = "d";
      sentences[i].position = i;
      std::string text;
      std::size_t words = rng.next_index(7);
      for (std::size_t w = 0; w < words; ++w) text += "w" + std::to_string(w) + " ";
      sentences[i].text = trim(text);
      sentences[i].tokens = tokenize(sentences[i].text);
      sentences[i].word_count = sentences[i].tokens.size();
      total += sentences[i].word_count;
      scored.push_back({&sentences[i], rng.next_double()});
    }
    std::size_t budget = rng.next_index(20);
    SummaryResult result = assemble_summary("c", scored, budget);
    CHECK(result.word_count == std::min(budget, total));
    CHECK(tokenize(result.text).size() == result.word_count);
    for (std::size_t i = 1; i < result.selected.size(); ++i)
      CHECK(result.selected[i - 1].score >= result.selected[i].score);
  }
}

TEST_CASE("evaluation scores a verbatim summary at exactly one") {
  Cluster cluster = make_cluster("c1", {"Budget talks collapsed after midnight."},
                                 {"Budget talks collapsed after midnight."});
  Model model = train({cluster}, default_params(), 0.2);
  EvalOptions options;
  options.summary_words = 50;
  EvalReport report = evaluate(model, {cluster}, options);
  REQUIRE(report.clusters.size() == 1);
  for (const auto& s : report.clusters[0].scores) {
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
  }
}

TEST_CASE("evaluation means are the arithmetic mean of cluster rows") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  EvalOptions options;
  EvalReport report = evaluate(model, clusters, options);
  REQUIRE(report.clusters.size() == 2);
  for (std::size_t m = 0; m < rouge_metric_names().size(); ++m) {
    double mean = (report.clusters[0].scores[m].recall + report.clusters[1].scores[m].recall) / 2.0;
    CHECK(report.means[m].recall == mean);
  }
}

TEST_CASE("evaluation requires gold and reports the first offender") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  clusters[0].gold_summaries.clear();
  try {
    evaluate(model, clusters, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(clusters[0].id) != std::string::npos);
  }
}

TEST_CASE("parallel evaluation merges deterministically") {
  auto clusters = synthetic_clusters(4);
  Model model = train(clusters, default_params(), 0.2);
  EvalOptions serial;
  serial.jobs = 1;
  EvalOptions parallel;
  parallel.jobs = 4;
  CHECK(render_scores_tsv(evaluate(model, clusters, serial), serial) ==
        render_scores_tsv(evaluate(model, clusters, parallel), parallel));
}

TEST_CASE("rank order is invariant under positive strength scaling") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  auto before = score_sentences(model, clusters[0]);
  Model scaled = model;
  for (auto& rule : scaled.ruleset.rules) rule.strength *= 5;
  auto after = score_sentences(scaled, clusters[0]);
  REQUIRE(before.size() == after.size());
  for (std::size_t i = 0; i < before.size(); ++i)
    CHECK(before[i].sentence == after[i].sentence);
}

TEST_CASE("model files round-trip byte-exactly") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(0.3), 0.25);
  std::string serialized = serialize_model(model);
  Model parsed = parse_model(serialized);
  CHECK(serialize_model(parsed) == serialized);
  CHECK(parsed.params.radius == model.params.radius);
  CHECK(parsed.ruleset.rules.size() == model.ruleset.rules.size());
  CHECK_THROWS_AS(parse_model("garbage"), Error);
}

TEST_CASE("aggregate-rank-measure hook refuses to run") {
  auto clusters = synthetic_clusters(1);
  Model model = train(clusters, default_params(), 0.2);
  EvalOptions options;
  options.post = PostProcessor::AggregateRankMeasure;
  try {
    summarize_cluster(model, clusters[0], options);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.category() == "notimpl");
    CHECK(std::string(e.what()).find("not implemented") != std::string::npos);
  }
}

TEST_CASE("classic membership post-processing is wired into evaluation") {
  auto clusters = synthetic_clusters(2);
  Model model = train(clusters, default_params(), 0.2);
  EvalOptions options;
  options.post = PostProcessor::ClassicMembership;
  EvalReport report = evaluate(model, clusters, options);
  REQUIRE(report.clusters.size() == 2);
  for (const auto& eval : report.clusters) {
    REQUIRE_FALSE(eval.summary.selected.empty());
    for (const auto& sel : eval.summary.selected) {
      CHECK(sel.score >= 0.0);
      CHECK(sel.score <= 1.0);
    }
  }
}
