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

#include "morphoton/corpus.h"

#include <algorithm>
#include <map>
#include <numeric>

namespace morphoton {

std::string format_tags(const TagSet& tags) {
  std::string out;
  for (size_t i = 0; i < tags.size(); ++i) {
    if (i) out += ';';
    out += tags[i];
  }
  return out;
}

TagSet parse_tags(std::string_view text) {
  TagSet out;
  for (const std::string& t : split(text, ';')) {
    std::string_view tt = trim(t);
    if (!tt.empty()) out.emplace_back(tt);
  }
  return out;
}

TagPredicate pos_filter(std::string pos) {
  return [pos = std::move(pos)](const TagSet& tags) {
    return std::find(tags.begin(), tags.end(), pos) != tags.end();
  };
}

ParseReport parse_unimorph_text(std::string_view text, const TagPredicate& keep) {
  ParseReport report;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    auto warn = [&](const std::string& why) {
      report.warnings.push_back("line " + std::to_string(line_no) + ": " + why);
    };
    if (cols.size() < 3) {
      warn("expected 3 columns, got " + std::to_string(cols.size()));
      continue;
    }
    InflectedForm f;
    f.lemma = std::string(trim(cols[0]));
    f.form = std::string(trim(cols[1]));
    f.tags = parse_tags(cols[2]);
    if (f.lemma.empty() || f.form.empty() || f.tags.empty()) {
      warn("empty lemma, form or tag field");
      continue;
    }
    if (keep && !keep(f.tags)) continue;
    report.forms.push_back(std::move(f));
  }
  return report;
}

ParseReport parse_unimorph(const std::string& path, const TagPredicate& keep) {
  return parse_unimorph_text(read_file(path), keep);
}

SampleReport sample_reinflection(std::span<const InflectedForm> forms, size_t n,
                                 uint64_t seed) {
  // lemma -> distinct tag bundles (first occurrence wins), lemma order sorted
  std::map<std::string, std::vector<const InflectedForm*>> paradigms;
  for (const InflectedForm& f : forms) {
    auto& cell = paradigms[f.lemma];
    bool dup = std::any_of(cell.begin(), cell.end(),
                           [&](const InflectedForm* g) { return g->tags == f.tags; });
    if (!dup) cell.push_back(&f);
  }
  SampleReport report;
  struct Triple {
    const std::vector<const InflectedForm*>* paradigm;
    uint32_t src;
    uint32_t trg;
  };
  std::vector<Triple> pool;
  for (const auto& [lemma, cell] : paradigms) {
    if (cell.size() < 2) {
      report.warnings.push_back("lemma '" + lemma + "' has a single form; dropped");
      continue;
    }
    for (uint32_t i = 0; i < cell.size(); ++i) {
      for (uint32_t j = 0; j < cell.size(); ++j) {
        if (i != j) pool.push_back({&cell, i, j});
      }
    }
  }
  if (pool.empty()) throw EmptyCorpus("no lemma has two or more distinct tag bundles");
  report.distinct_triples = pool.size();

  Rng rng(seed);
  std::vector<size_t> chosen;
  chosen.reserve(n);
  // partial Fisher-Yates over the pool, then draws with replacement
  std::vector<size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  size_t without = std::min(n, pool.size());
  for (size_t i = 0; i < without; ++i) {
    size_t j = i + static_cast<size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
    chosen.push_back(order[i]);
  }
  for (size_t i = without; i < n; ++i) {
    chosen.push_back(static_cast<size_t>(rng.below(pool.size())));
  }
  report.samples.reserve(n);
  for (size_t idx : chosen) {
    const Triple& t = pool[idx];
    const InflectedForm& s = *(*t.paradigm)[t.src];
    const InflectedForm& g = *(*t.paradigm)[t.trg];
    report.samples.push_back({s.lemma, s.tags, s.form, g.tags, g.form});
  }
  return report;
}

SplitDataset split_by_lemma(std::span<const ReinflectionSample> samples,
                            std::array<double, 3> ratios, uint64_t seed) {
  double total_ratio = ratios[0] + ratios[1] + ratios[2];
  if (std::abs(total_ratio - 1.0) > 1e-9 ||
      std::any_of(ratios.begin(), ratios.end(), [](double r) { return r < 0; })) {
    throw SplitError("split ratios must be nonnegative and sum to 1");
  }
  std::map<std::string, std::vector<size_t>> by_lemma;
  for (size_t i = 0; i < samples.size(); ++i) by_lemma[samples[i].lemma].push_back(i);
  if (by_lemma.size() < 3) {
    throw SplitError("need at least 3 lemmas for a lemma-disjoint split, got " +
                     std::to_string(by_lemma.size()));
  }
  std::vector<const std::string*> lemmas;
  for (const auto& [lemma, idx] : by_lemma) lemmas.push_back(&lemma);
  Rng rng(seed);
  rng.shuffle(lemmas);

  const double n = static_cast<double>(samples.size());
  std::array<double, 3> target = {ratios[0] * n, ratios[1] * n, ratios[2] * n};
  std::array<size_t, 3> count = {0, 0, 0};
  std::array<std::vector<ReinflectionSample>*, 3> buckets;
  SplitDataset out;
  out.seed = seed;
  buckets = {&out.train, &out.dev, &out.test};
  for (const std::string* lemma : lemmas) {
    size_t best = 0;
    double best_deficit = -1e300;
    for (size_t b = 0; b < 3; ++b) {
      double deficit = target[b] - static_cast<double>(count[b]);
      if (deficit > best_deficit) {
        best_deficit = deficit;
        best = b;
      }
    }
    for (size_t i : by_lemma[*lemma]) buckets[best]->push_back(samples[i]);
    count[best] += by_lemma[*lemma].size();
  }
  for (size_t b = 0; b < 3; ++b) {
    if (ratios[b] > 0 && buckets[b]->empty()) {
      throw SplitError("lemma sizes are too uneven to fill every split");
    }
  }
  return out;
}

std::string format_samples(std::span<const ReinflectionSample> samples) {
  std::string out;
  for (const ReinflectionSample& s : samples) {
    out += format_tags(s.src_tags);
    out += '\t';
    out += s.src_form;
    out += '\t';
    out += format_tags(s.trg_tags);
    out += '\t';
    out += s.trg_form;
    out += '\t';
    out += s.lemma;
    out += '\n';
  }
  return out;
}

std::vector<ReinflectionSample> parse_samples(std::string_view text,
                                              const std::string& origin) {
  std::vector<ReinflectionSample> out;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 5) {
      throw Error(origin + ":" + std::to_string(line_no) + ": expected 5 columns");
    }
    ReinflectionSample s;
    s.src_tags = parse_tags(cols[0]);
    s.src_form = cols[1];
    s.trg_tags = parse_tags(cols[2]);
    s.trg_form = cols[3];
    s.lemma = cols[4];
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<ReinflectionSample> read_samples(const std::string& path) {
  return parse_samples(read_file(path), path);
}

void write_samples(const std::string& path, std::span<const ReinflectionSample> samples) {
  write_file(path, format_samples(samples));
}

}  // namespace morphoton
