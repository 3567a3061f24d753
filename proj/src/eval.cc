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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <tuple>

namespace morphoton {

size_t edit_distance(std::span<const Symbol> a, std::span<const Symbol> b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

size_t edit_distance(std::string_view a, std::string_view b) {
  SymbolSeq sa = segment(a), sb = segment(b);
  return edit_distance(std::span<const Symbol>(sa), std::span<const Symbol>(sb));
}

Scores evaluate(std::span<const std::string> predictions, std::span<const std::string> golds) {
  if (predictions.size() != golds.size()) {
    throw Error("evaluate: " + std::to_string(predictions.size()) + " predictions vs " +
                std::to_string(golds.size()) + " gold forms");
  }
  Scores s;
  s.n = golds.size();
  if (s.n == 0) return s;
  size_t hits = 0, dist = 0;
  for (size_t i = 0; i < s.n; ++i) {
    if (predictions[i] == golds[i]) ++hits;
    dist += edit_distance(std::string_view(predictions[i]), std::string_view(golds[i]));
  }
  s.exact_match = static_cast<double>(hits) / static_cast<double>(s.n);
  s.mean_edit_distance = static_cast<double>(dist) / static_cast<double>(s.n);
  return s;
}

std::string_view results_csv_header() {
  return "language,pos,model,method,seed,train_size,exact_match,mean_edit_distance,n_samples";
}

namespace {

// Shortest text that parses back to the same double.
std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(std::string("results CSV: bad ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_result_row(const EvalResult& r) {
  for (const std::string* f : {&r.language, &r.pos, &r.model, &r.method}) {
    if (f->find(',') != std::string::npos) throw Error("comma in results field '" + *f + "'");
  }
  return r.language + "," + r.pos + "," + r.model + "," + r.method + "," +
         std::to_string(r.seed) + "," + std::to_string(r.train_size) + "," +
         fmt_double(r.exact_match) + "," + fmt_double(r.mean_edit_distance) + "," +
         std::to_string(r.n_samples);
}

std::string format_results_csv(std::span<const EvalResult> rows) {
  std::string out(results_csv_header());
  out += '\n';
  for (const EvalResult& r : rows) {
    out += format_result_row(r);
    out += '\n';
  }
  return out;
}

std::vector<EvalResult> parse_results_csv(std::string_view text) {
  std::vector<EvalResult> out;
  bool header = true;
  for (const std::string& raw : split(text, '\n')) {
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (header) {
      if (line != results_csv_header()) throw Error("results CSV: unexpected header");
      header = false;
      continue;
    }
    std::vector<std::string> c = split(line, ',');
    if (c.size() != 9) throw Error("results CSV: expected 9 columns");
    EvalResult r;
    r.language = c[0];
    r.pos = c[1];
    r.model = c[2];
    r.method = c[3];
    r.seed = parse_number<uint64_t>(c[4], "seed");
    r.train_size = parse_number<size_t>(c[5], "train_size");
    r.exact_match = parse_number<double>(c[6], "exact_match");
    r.mean_edit_distance = parse_number<double>(c[7], "mean_edit_distance");
    r.n_samples = parse_number<size_t>(c[8], "n_samples");
    out.push_back(std::move(r));
  }
  return out;
}

SummaryStat summarize(std::span<const double> values) {
  SummaryStat s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  return s;
}

std::string_view field_name(Field f) {
  switch (f) {
    case Field::kLanguage: return "language";
    case Field::kPos: return "pos";
    case Field::kModel: return "model";
    case Field::kMethod: return "method";
    case Field::kTrainSize: return "train_size";
  }
  return "?";
}

namespace {

std::string field_value(const EvalResult& r, Field f) {
  switch (f) {
    case Field::kLanguage: return r.language;
    case Field::kPos: return r.pos;
    case Field::kModel: return r.model;
    case Field::kMethod: return r.method;
    case Field::kTrainSize: return std::to_string(r.train_size);
  }
  return {};
}

constexpr Field kAllFields[] = {Field::kLanguage, Field::kPos, Field::kModel, Field::kMethod,
                                Field::kTrainSize};

}  // namespace

std::vector<AggregateRow> aggregate(std::span<const EvalResult> results,
                                    const std::set<Field>& group_by) {
  using Key = std::vector<std::string>;
  struct Cell {
    std::map<uint64_t, std::pair<double, double>> by_seed;  // last row per seed wins
  };
  std::map<Key, std::map<Key, Cell>> groups;  // group key -> cell key -> cell
  for (const EvalResult& r : results) {
    Key gk, ck;
    for (Field f : kAllFields) {
      ck.push_back(field_value(r, f));
      if (group_by.count(f)) gk.push_back(field_value(r, f));
    }
    groups[gk][ck].by_seed[r.seed] = {r.exact_match, r.mean_edit_distance};
  }
  std::vector<AggregateRow> out;
  for (const auto& [gk, cells] : groups) {
    AggregateRow row;
    size_t k = 0;
    for (Field f : kAllFields) {
      if (group_by.count(f)) row.key[f] = gk[k++];
    }
    row.cells = cells.size();
    std::vector<double> em_means, ed_means;
    std::map<uint64_t, std::pair<std::vector<double>, std::vector<double>>> per_seed;
    for (const auto& [ck, cell] : cells) {
      std::vector<double> em, ed;
      for (const auto& [seed, v] : cell.by_seed) {
        em.push_back(v.first);
        ed.push_back(v.second);
        per_seed[seed].first.push_back(v.first);
        per_seed[seed].second.push_back(v.second);
      }
      em_means.push_back(summarize(em).mean);
      ed_means.push_back(summarize(ed).mean);
    }
    row.exact_match = summarize(em_means);
    row.edit_distance = summarize(ed_means);
    std::vector<double> em_seed, ed_seed;
    for (const auto& [seed, v] : per_seed) {
      em_seed.push_back(summarize(v.first).mean);
      ed_seed.push_back(summarize(v.second).mean);
    }
    row.exact_match.stddev = summarize(em_seed).stddev;
    row.edit_distance.stddev = summarize(ed_seed).stddev;
    row.exact_match.n = row.edit_distance.n = per_seed.size();
    out.push_back(std::move(row));
  }
  return out;
}

std::string format_plot_data(std::span<const EvalResult> results) {
  std::vector<AggregateRow> rows = aggregate(
      results, {Field::kLanguage, Field::kPos, Field::kModel, Field::kMethod, Field::kTrainSize});
  std::sort(rows.begin(), rows.end(), [](const AggregateRow& a, const AggregateRow& b) {
    auto key = [](const AggregateRow& r) {
      return std::make_tuple(r.key.at(Field::kLanguage), r.key.at(Field::kPos),
                             r.key.at(Field::kModel), r.key.at(Field::kMethod),
                             std::stoull(r.key.at(Field::kTrainSize)));
    };
    return key(a) < key(b);
  });
  std::string out = "language\tpos\tmodel\tmethod\ttrain_size\tmean\tstddev\n";
  char buf[64];
  for (const AggregateRow& r : rows) {
    out += r.key.at(Field::kLanguage) + "\t" + r.key.at(Field::kPos) + "\t" +
           r.key.at(Field::kModel) + "\t" + r.key.at(Field::kMethod) + "\t" +
           r.key.at(Field::kTrainSize);
    std::snprintf(buf, sizeof buf, "\t%.4f\t%.4f\n", 100 * r.exact_match.mean,
                  100 * r.exact_match.stddev);
    out += buf;
  }
  return out;
}

}  // namespace morphoton
