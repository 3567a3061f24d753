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
//
// Grapheme-level metrics, seed/dataset aggregation, results CSV and the
// learning-curve harness.

#ifndef MORPHOTON_EVAL_H_
#define MORPHOTON_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphoton/corpus.h"
#include "morphoton/reinflect.h"

namespace morphoton {

/// Levenshtein distance (unit insert, delete, substitute) over symbols.
size_t edit_distance(std::span<const Symbol> a, std::span<const Symbol> b);
/// Segments both strings first.
size_t edit_distance(std::string_view a, std::string_view b);

struct Scores {
  double exact_match = 0;
  double mean_edit_distance = 0;
  size_t n = 0;
};

/// Throws Error when the lists differ in length. Empty lists score (0, 0).
Scores evaluate(std::span<const std::string> predictions, std::span<const std::string> golds);

struct EvalResult {
  std::string language;
  std::string pos;
  std::string model;
  std::string method;
  uint64_t seed = 0;
  size_t train_size = 0;
  double exact_match = 0;
  double mean_edit_distance = 0;
  size_t n_samples = 0;

  bool operator==(const EvalResult&) const = default;
};

std::string_view results_csv_header();
std::string format_result_row(const EvalResult& r);
/// Header line plus one row per result.
std::string format_results_csv(std::span<const EvalResult> rows);
std::vector<EvalResult> parse_results_csv(std::string_view text);

struct SummaryStat {
  double mean = 0;
  double stddev = 0;  // sample (n - 1); 0 for fewer than two values
  size_t n = 0;
};

SummaryStat summarize(std::span<const double> values);

enum class Field { kLanguage, kPos, kModel, kMethod, kTrainSize };

std::string_view field_name(Field f);

struct AggregateRow {
  std::map<Field, std::string> key;
  SummaryStat exact_match;
  SummaryStat edit_distance;
  size_t cells = 0;  // (language, pos, model, method, size) cells averaged
};

/// Two-level average. Results are first grouped into cells by every field
/// and averaged over seeds; cells are then grouped by `group_by` and their
/// means averaged with equal weight. The reported stddev is taken across
/// seeds of the per-seed group means.
std::vector<AggregateRow> aggregate(std::span<const EvalResult> results,
                                    const std::set<Field>& group_by);

/// TSV rows `language pos model method train_size mean stddev`, exact match
/// in percent, one series per (dataset, model, method).
std::string format_plot_data(std::span<const EvalResult> results);

/// The first `size` items of a seeded permutation of [0, n). Smaller sizes
/// under the same seed are prefixes of larger ones.
std::vector<size_t> nested_subsample(size_t n, size_t size, uint64_t seed);

struct LearningCurveConfig {
  std::vector<size_t> sizes;
  std::vector<uint64_t> seeds;
  ModelKind model = ModelKind::kSeq2Seq;
  Method method = Method::kBaseline;
  Hyperparameters hp;
  std::string pos;
  int jobs = 1;  // cells trained concurrently
};

struct CurveCell {
  size_t train_size = 0;
  uint64_t seed = 0;
};

/// Cells in output order: sizes outer, seeds inner.
std::vector<CurveCell> curve_cells(const LearningCurveConfig& cfg);

/// Trains on the nested subsample and evaluates on data.test.
EvalResult run_curve_cell(const SplitDataset& data, const LearningCurveConfig& cfg,
                          const CurveCell& cell, const LanguageResources& res);

using CellSkip = std::function<bool(const CurveCell&)>;
using CellDone = std::function<void(const CurveCell&, const EvalResult&)>;

/// Runs every cell not skipped. Results come back in cell order regardless
/// of `cfg.jobs`. Throws Error if a size exceeds the training set.
std::vector<EvalResult> learning_curve(const SplitDataset& data, const LearningCurveConfig& cfg,
                                       const LanguageResources& res, const CellSkip& skip = {},
                                       const CellDone& done = {});

}  // namespace morphoton

#endif  // MORPHOTON_EVAL_H_
