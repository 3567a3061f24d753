// Copyright 2026 The Morphoton Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "morphoton/eval.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "morphoton/random.h"

namespace morphoton {
namespace {

// Exponential-time recursion, independent of the DP.
size_t brute_levenshtein(const SymbolSeq& a, size_t i, const SymbolSeq& b, size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  size_t sub = brute_levenshtein(a, i + 1, b, j + 1) + (a[i] == b[j] ? 0 : 1);
  size_t del = brute_levenshtein(a, i + 1, b, j) + 1;
  size_t ins = brute_levenshtein(a, i, b, j + 1) + 1;
  return std::min({sub, del, ins});
}

std::string random_word(Rng& rng, size_t max_len) {
  static const std::vector<std::string> alpha{"a", "b", "c", "ş", "ı"};
  std::string out;
  size_t n = rng.below(max_len + 1);
  for (size_t i = 0; i < n; ++i) out += alpha[rng.below(alpha.size())];
  return out;
}

TEST(EditDistance, Examples) {
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("olacak", "olacak"), 0u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
  EXPECT_EQ(edit_distance("ağ", "ag"), 1u);  // counted in symbols, not bytes
}

TEST(EditDistance, MatchesBruteForce) {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    std::string a = random_word(rng, 6), b = random_word(rng, 6);
    SymbolSeq sa = segment(a), sb = segment(b);
    EXPECT_EQ(edit_distance(a, b), brute_levenshtein(sa, 0, sb, 0)) << a << " / " << b;
  }
}

TEST(EditDistance, MetricAxioms) {
  Rng rng(9);
  for (int t = 0; t < 300; ++t) {
    std::string a = random_word(rng, 8), b = random_word(rng, 8), c = random_word(rng, 8);
    EXPECT_EQ(edit_distance(a, b), edit_distance(b, a));
    EXPECT_EQ(edit_distance(a, b) == 0, a == b);
    EXPECT_LE(edit_distance(a, c), edit_distance(a, b) + edit_distance(b, c));
  }
}

TEST(Evaluate, Examples) {
  std::vector<std::string> golds{"ab", "cd"};
  Scores all = evaluate(golds, golds);
  EXPECT_EQ(all.exact_match, 1.0);
  EXPECT_EQ(all.mean_edit_distance, 0.0);
  std::vector<std::string> preds{"ab", "ce"};
  Scores half = evaluate(preds, golds);
  EXPECT_DOUBLE_EQ(half.exact_match, 0.5);
  EXPECT_DOUBLE_EQ(half.mean_edit_distance, 0.5);
  EXPECT_EQ(half.n, 2u);
  std::vector<std::string> one{"ab"};
  EXPECT_THROW(evaluate(one, golds), Error);
}

TEST(Evaluate, HashNeverMatches) {
  std::vector<std::string> golds{"gel", "git"};
  std::vector<std::string> preds{"g#l", "#"};
  EXPECT_EQ(evaluate(preds, golds).exact_match, 0.0);
}

TEST(Evaluate, ExactIffZeroDistance) {
  Rng rng(10);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::string> p, g;
    for (int i = 0; i < 5; ++i) {
      g.push_back(random_word(rng, 3));
      p.push_back(rng.below(2) ? g.back() : random_word(rng, 3));
    }
    Scores s = evaluate(p, g);
    EXPECT_EQ(s.exact_match == 1.0, s.mean_edit_distance == 0.0);
  }
}

EvalResult row(std::string lang, std::string pos, std::string model, uint64_t seed,
               double em, double ed = 0.0, size_t size = 8000) {
  return {lang, pos, model, "baseline", seed, size, em, ed, 1000};
}

TEST(Aggregate, DatasetAverageBaselineColumn) {
  const double column[] = {96.6, 89.0, 94.2, 82.3, 88.1, 90.9, 90.2, 42.2,
                           88.4, 76.5, 84.3, 66.7, 90.9, 91.6, 82.5};
  std::vector<EvalResult> rs;
  int i = 0;
  for (double v : column) {
    rs.push_back(row("l" + std::to_string(i / 3), "p" + std::to_string(i % 3), "seq2seq", 0,
                     v / 100.0));
    ++i;
  }
  auto agg = aggregate(rs, {Field::kModel, Field::kMethod});
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_NEAR(agg[0].exact_match.mean * 100, 83.6, 0.05);
  EXPECT_EQ(agg[0].cells, 15u);
  EXPECT_EQ(agg[0].exact_match.stddev, 0.0);
}

TEST(Aggregate, SettingAverage) {
  std::vector<EvalResult> rs{row("a", "V", "transducer", 0, 0.836),
                             row("b", "V", "transducer", 0, 0.803),
                             row("c", "V", "transducer", 0, 0.808)};
  auto agg = aggregate(rs, {Field::kModel});
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_NEAR(agg[0].exact_match.mean * 100, 81.6, 0.05);
}

TEST(Aggregate, SeedsThenDatasets) {
  // dataset a: seeds 0.9/0.7; dataset b: seeds 0.5/0.3 -> group means 0.7 and 0.5
  std::vector<EvalResult> rs{row("a", "V", "seq2seq", 0, 0.9), row("a", "V", "seq2seq", 1, 0.7),
                             row("b", "V", "seq2seq", 0, 0.5), row("b", "V", "seq2seq", 1, 0.3)};
  auto agg = aggregate(rs, {Field::kModel});
  ASSERT_EQ(agg.size(), 1u);
  EXPECT_NEAR(agg[0].exact_match.mean, 0.6, 1e-12);
  EXPECT_NEAR(agg[0].exact_match.stddev, std::sqrt(0.02), 1e-12);
  EXPECT_EQ(agg[0].exact_match.n, 2u);
  auto per_dataset = aggregate(rs, {Field::kLanguage});
  ASSERT_EQ(per_dataset.size(), 2u);
  EXPECT_EQ(per_dataset[0].key.at(Field::kLanguage), "a");
  EXPECT_NEAR(per_dataset[0].exact_match.mean, 0.8, 1e-12);
}

TEST(Aggregate, UnequalSeedCountsWeighDatasetsEqually) {
  std::vector<EvalResult> rs{row("a", "V", "seq2seq", 0, 1.0), row("b", "V", "seq2seq", 0, 0.0),
                             row("b", "V", "seq2seq", 1, 0.0), row("b", "V", "seq2seq", 2, 0.0)};
  auto agg = aggregate(rs, {Field::kModel});
  EXPECT_NEAR(agg[0].exact_match.mean, 0.5, 1e-12);
}

TEST(Summarize, SampleStddev) {
  std::vector<double> v{1, 2, 3, 4};
  SummaryStat s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-12);
  std::vector<double> one{7};
  EXPECT_EQ(summarize(one).stddev, 0.0);
}

TEST(ResultsCsv, RoundTrip) {
  std::vector<EvalResult> rs{row("tr", "V", "seq2seq", 2, 0.8125, 0.3, 1000),
                             row("fi", "N", "transducer", 0, 1.0 / 3.0, 2.0 / 3.0, 8000)};
  std::string csv = format_results_csv(rs);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "language,pos,model,method,seed,train_size,exact_match,mean_edit_distance,"
            "n_samples");
  EXPECT_EQ(parse_results_csv(csv), rs);
  EXPECT_THROW(parse_results_csv("a,b\n"), Error);
}

TEST(PlotData, PercentSeries) {
  std::vector<EvalResult> rs{row("tr", "V", "seq2seq", 0, 0.5, 0, 1000),
                             row("tr", "V", "seq2seq", 1, 0.7, 0, 1000),
                             row("tr", "V", "seq2seq", 0, 0.9, 0, 2000)};
  std::string tsv = format_plot_data(rs);
  EXPECT_NE(tsv.find("tr\tV\tseq2seq\tbaseline\t1000\t60"), std::string::npos);
  EXPECT_NE(tsv.find("tr\tV\tseq2seq\tbaseline\t2000\t90"), std::string::npos);
}

TEST(NestedSubsample, PrefixProperty) {
  auto small = nested_subsample(100, 10, 4);
  auto large = nested_subsample(100, 40, 4);
  ASSERT_EQ(small.size(), 10u);
  EXPECT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
  auto full = nested_subsample(100, 100, 4);
  std::sort(full.begin(), full.end());
  for (size_t i = 0; i < 100; ++i) EXPECT_EQ(full[i], i);
  EXPECT_NE(nested_subsample(100, 10, 5), small);
  EXPECT_THROW(nested_subsample(10, 11, 0), Error);
}

TEST(LearningCurve, CellsSizesOuterSeedsInner) {
  LearningCurveConfig cfg;
  for (size_t s = 1000; s <= 8000; s += 1000) cfg.sizes.push_back(s);
  cfg.seeds = {0, 1, 2};
  auto cells = curve_cells(cfg);
  ASSERT_EQ(cells.size(), 24u);
  EXPECT_EQ(cells[0].train_size, 1000u);
  EXPECT_EQ(cells[2].seed, 2u);
  EXPECT_EQ(cells[3].train_size, 2000u);
}

class TinyCurve : public ::testing::Test {
 protected:
  void SetUp() override {
    res_ = load_resources("tr");
    ParseReport parsed = parse_unimorph(data_dir() + "/unimorph/tr.tsv", pos_filter("V"));
    auto samples = sample_reinflection(parsed.forms, 120, 3).samples;
    data_ = split_by_lemma(samples, {0.8, 0.1, 0.1}, 0);
    cfg_.seeds = {0, 1};
    cfg_.hp.embed_dim = 8;
    cfg_.hp.hidden_dim = 8;
    cfg_.hp.fusion_dim = 8;
    cfg_.hp.max_epochs = 2;
    cfg_.pos = "V";
  }
  LanguageResources res_;
  SplitDataset data_;
  LearningCurveConfig cfg_;
};

TEST_F(TinyCurve, DeterministicAcrossJobCounts) {
  cfg_.sizes = {10, data_.train.size()};
  cfg_.method = Method::kFusion;
  auto a = learning_curve(data_, cfg_, res_);
  cfg_.jobs = 3;
  auto b = learning_curve(data_, cfg_, res_);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(format_results_csv(a), format_results_csv(b));
  EXPECT_EQ(a[3].train_size, data_.train.size());
  EXPECT_EQ(a[0].n_samples, data_.test.size());
}

TEST_F(TinyCurve, SkipAndDoneHooks) {
  cfg_.sizes = {10, 20};
  size_t done = 0;
  auto out = learning_curve(
      data_, cfg_, res_, [](const CurveCell& c) { return c.train_size == 10; },
      [&](const CurveCell&, const EvalResult&) { ++done; });
  EXPECT_EQ(out.size(), 2u);
  EXPECT_EQ(done, 2u);
  for (const auto& r : out) EXPECT_EQ(r.train_size, 20u);
}

TEST_F(TinyCurve, SizeBeyondTrainFails) {
  cfg_.sizes = {data_.train.size() + 1};
  EXPECT_THROW(learning_curve(data_, cfg_, res_), Error);
}

}  // namespace
}  // namespace morphoton
