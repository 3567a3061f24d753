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
// UniMorph ingestion and reinflection dataset construction.

#ifndef MORPHOTON_CORPUS_H_
#define MORPHOTON_CORPUS_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "morphoton/random.h"
#include "morphoton/text.h"

namespace morphoton {

/// Tags in file order, e.g. {"V", "FUT", "3", "SG"}.
using TagSet = std::vector<std::string>;

std::string format_tags(const TagSet& tags);
TagSet parse_tags(std::string_view text);

struct InflectedForm {
  std::string lemma;
  std::string form;
  TagSet tags;
};

struct ReinflectionSample {
  std::string lemma;
  TagSet src_tags;
  std::string src_form;
  TagSet trg_tags;
  std::string trg_form;

  bool operator==(const ReinflectionSample&) const = default;
};

struct SplitDataset {
  std::vector<ReinflectionSample> train;
  std::vector<ReinflectionSample> dev;
  std::vector<ReinflectionSample> test;
  uint64_t seed = 0;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

struct ParseReport {
  std::vector<InflectedForm> forms;
  std::vector<std::string> warnings;
};

using TagPredicate = std::function<bool(const TagSet&)>;

/// Keeps forms whose tag set contains `pos` (e.g. "V", "N", "ADJ").
TagPredicate pos_filter(std::string pos);

/// Reads UniMorph TSV (`lemma<TAB>form<TAB>tag;tag;...`). Malformed lines
/// are skipped with a warning. Throws Error if the file cannot be read.
ParseReport parse_unimorph(const std::string& path, const TagPredicate& keep = {});
ParseReport parse_unimorph_text(std::string_view text, const TagPredicate& keep = {});

struct SampleReport {
  std::vector<ReinflectionSample> samples;
  std::vector<std::string> warnings;  // dropped single-form lemmas
  size_t distinct_triples = 0;
};

/// Draws `n` ordered (source, target) pairs of distinct tag bundles of the
/// same lemma. Triples are drawn without replacement until the pool is
/// exhausted and with replacement after that.
SampleReport sample_reinflection(std::span<const InflectedForm> forms, size_t n,
                                 uint64_t seed);

/// Lemma-disjoint split. Lemmas are shuffled with `seed` and each goes to
/// the bucket furthest below its target sample count.
SplitDataset split_by_lemma(std::span<const ReinflectionSample> samples,
                            std::array<double, 3> ratios = {0.8, 0.1, 0.1},
                            uint64_t seed = 0);

/// Dataset TSV: `src_tags<TAB>src_form<TAB>trg_tags<TAB>trg_form<TAB>lemma`.
std::string format_samples(std::span<const ReinflectionSample> samples);
std::vector<ReinflectionSample> parse_samples(std::string_view text,
                                              const std::string& origin = "<samples>");
std::vector<ReinflectionSample> read_samples(const std::string& path);
void write_samples(const std::string& path, std::span<const ReinflectionSample> samples);

}  // namespace morphoton

#endif  // MORPHOTON_CORPUS_H_
