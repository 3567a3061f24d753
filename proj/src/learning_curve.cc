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

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "morphoton/eval.h"
#include "morphoton/random.h"

namespace morphoton {

std::vector<size_t> nested_subsample(size_t n, size_t size, uint64_t seed) {
  if (size > n) {
    throw Error("subsample size " + std::to_string(size) + " exceeds " + std::to_string(n) +
                " training samples");
  }
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng(seed ^ 0x9c1a55e5ULL);
  rng.shuffle(idx);
  idx.resize(size);
  return idx;
}

std::vector<CurveCell> curve_cells(const LearningCurveConfig& cfg) {
  std::vector<CurveCell> out;
  for (size_t size : cfg.sizes) {
    for (uint64_t seed : cfg.seeds) out.push_back({size, seed});
  }
  return out;
}

EvalResult run_curve_cell(const SplitDataset& data, const LearningCurveConfig& cfg,
                          const CurveCell& cell, const LanguageResources& res) {
  std::vector<ReinflectionSample> train;
  for (size_t i : nested_subsample(data.train.size(), cell.train_size, cell.seed)) {
    train.push_back(data.train[i]);
  }
  TrainRequest req{cfg.model, cfg.method, cfg.hp, cfg.pos};
  req.hp.seed = cell.seed;
  TrainOutcome trained = train_reinflector(train, data.dev, req, res);
  std::vector<Prediction> preds = predict(trained.checkpoint, data.test, res);
  std::vector<std::string> forms, golds;
  for (size_t i = 0; i < preds.size(); ++i) {
    forms.push_back(preds[i].form);
    golds.push_back(data.test[i].trg_form);
  }
  Scores s = evaluate(forms, golds);
  EvalResult r;
  r.language = res.language;
  r.pos = cfg.pos;
  r.model = std::string(model_kind_name(cfg.model));
  r.method = std::string(method_name(cfg.method));
  r.seed = cell.seed;
  r.train_size = cell.train_size;
  r.exact_match = s.exact_match;
  r.mean_edit_distance = s.mean_edit_distance;
  r.n_samples = s.n;
  return r;
}

std::vector<EvalResult> learning_curve(const SplitDataset& data, const LearningCurveConfig& cfg,
                                       const LanguageResources& res, const CellSkip& skip,
                                       const CellDone& done) {
  if (data.test.empty()) throw Error("learning curve needs a non-empty test set");
  for (size_t size : cfg.sizes) {
    if (size == 0 || size > data.train.size()) {
      throw Error("train size " + std::to_string(size) + " is outside [1, " +
                  std::to_string(data.train.size()) + "]");
    }
  }
  std::vector<CurveCell> cells = curve_cells(cfg);
  std::vector<size_t> todo;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!skip || !skip(cells[i])) todo.push_back(i);
  }
  std::vector<std::optional<EvalResult>> results(cells.size());
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (failure) return;
      }
      const CurveCell& cell = cells[todo[k]];
      try {
        EvalResult r = run_curve_cell(data, cfg, cell, res);
        std::lock_guard<std::mutex> lock(mu);
        results[todo[k]] = r;
        if (done) done(cell, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  size_t jobs = std::clamp<size_t>(static_cast<size_t>(std::max(cfg.jobs, 1)), 1,
                                   std::max<size_t>(todo.size(), 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<EvalResult> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

}  // namespace morphoton
