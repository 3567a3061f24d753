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

#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "morphoton/resources.h"

namespace morphoton {
namespace {

std::vector<InflectedForm> paradigm(const std::string& lemma, int cells) {
  std::vector<InflectedForm> out;
  for (int i = 0; i < cells; ++i) {
    out.push_back({lemma, lemma + std::to_string(i), {"V", "T" + std::to_string(i)}});
  }
  return out;
}

std::set<std::string> lemmas(const std::vector<ReinflectionSample>& s) {
  std::set<std::string> out;
  for (const auto& x : s) out.insert(x.lemma);
  return out;
}

bool disjoint(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const auto& x : a) {
    if (b.count(x)) return false;
  }
  return true;
}

TEST(Unimorph, ParsesLine) {
  ParseReport r = parse_unimorph_text("ol\tolacak\tV;FUT;3;SG\n");
  ASSERT_EQ(r.forms.size(), 1u);
  EXPECT_EQ(r.forms[0].lemma, "ol");
  EXPECT_EQ(r.forms[0].form, "olacak");
  EXPECT_EQ(r.forms[0].tags, (TagSet{"V", "FUT", "3", "SG"}));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Unimorph, EmptyInput) {
  ParseReport r = parse_unimorph_text("");
  EXPECT_TRUE(r.forms.empty());
  EXPECT_TRUE(r.warnings.empty());
}

TEST(Unimorph, MalformedLinesWarn) {
  ParseReport r = parse_unimorph_text("ol\tolacak\nol\tolur\tV;PRS\n\t\tV\n");
  EXPECT_EQ(r.forms.size(), 1u);
  ASSERT_EQ(r.warnings.size(), 2u);
  EXPECT_NE(r.warnings[0].find("line 1"), std::string::npos);
}

TEST(Unimorph, PosFilter) {
  ParseReport r = parse_unimorph_text("ev\tevler\tN;NOM;PL\nol\tolur\tV;PRS;3;SG\n",
                                      pos_filter("V"));
  ASSERT_EQ(r.forms.size(), 1u);
  EXPECT_EQ(r.forms[0].lemma, "ol");
}

TEST(Unimorph, MissingFileThrows) {
  EXPECT_THROW(parse_unimorph("/nonexistent/unimorph.tsv"), Error);
}

TEST(Sampling, TwoFormLemmaHasTwoOrderedPairs) {
  auto forms = paradigm("x", 2);
  SampleReport r = sample_reinflection(forms, 10, 1);
  EXPECT_EQ(r.distinct_triples, 2u);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : r.samples) seen.insert({s.src_form, s.trg_form});
  EXPECT_EQ(seen.size(), 2u);
  EXPECT_EQ(r.samples.size(), 10u);
}

TEST(Sampling, WithoutReplacementUntilExhausted) {
  std::vector<InflectedForm> forms;
  for (const char* l : {"a", "b", "c"}) {
    auto p = paradigm(l, 4);
    forms.insert(forms.end(), p.begin(), p.end());
  }
  SampleReport r = sample_reinflection(forms, 36, 3);
  ASSERT_EQ(r.distinct_triples, 36u);
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (const auto& s : r.samples) seen.insert({s.lemma, s.src_form, s.trg_form});
  EXPECT_EQ(seen.size(), 36u);
}

TEST(Sampling, NeverPairsIdenticalTags) {
  auto forms = paradigm("a", 5);
  forms.push_back({"a", "dup", {"V", "T0"}});  // duplicate bundle is ignored
  for (const auto& s : sample_reinflection(forms, 100, 9).samples) {
    EXPECT_NE(s.src_tags, s.trg_tags);
  }
}

TEST(Sampling, DeterministicGivenSeed) {
  auto forms = paradigm("a", 6);
  auto more = paradigm("b", 3);
  forms.insert(forms.end(), more.begin(), more.end());
  EXPECT_EQ(sample_reinflection(forms, 20, 4).samples,
            sample_reinflection(forms, 20, 4).samples);
  EXPECT_NE(sample_reinflection(forms, 20, 4).samples,
            sample_reinflection(forms, 20, 5).samples);
}

TEST(Sampling, SingleFormLemmasDroppedWithWarning) {
  auto forms = paradigm("a", 3);
  forms.push_back({"lonely", "lonely", {"N", "SG"}});
  SampleReport r = sample_reinflection(forms, 5, 1);
  EXPECT_EQ(r.warnings.size(), 1u);
  for (const auto& s : r.samples) EXPECT_EQ(s.lemma, "a");
}

TEST(Sampling, EmptyCorpus) {
  EXPECT_THROW(sample_reinflection({}, 5, 1), EmptyCorpus);
  auto one = paradigm("a", 1);
  EXPECT_THROW(sample_reinflection(one, 5, 1), EmptyCorpus);
}

TEST(Split, FinnishNounsTenThousand) {
  ParseReport parsed = parse_unimorph(data_dir() + "/unimorph/fi.tsv", pos_filter("N"));
  SampleReport sampled = sample_reinflection(parsed.forms, 10000, 0);
  ASSERT_EQ(sampled.samples.size(), 10000u);
  SplitDataset d = split_by_lemma(sampled.samples, {0.8, 0.1, 0.1}, 0);
  EXPECT_EQ(d.train.size() + d.dev.size() + d.test.size(), 10000u);
  EXPECT_NEAR(d.train.size() / 10000.0, 0.8, 0.02);
  EXPECT_NEAR(d.dev.size() / 10000.0, 0.1, 0.02);
  EXPECT_NEAR(d.test.size() / 10000.0, 0.1, 0.02);
  auto tr = lemmas(d.train), dv = lemmas(d.dev), te = lemmas(d.test);
  EXPECT_TRUE(disjoint(tr, dv));
  EXPECT_TRUE(disjoint(tr, te));
  EXPECT_TRUE(disjoint(dv, te));
}

TEST(Split, OneLemmaFails) {
  auto forms = paradigm("a", 5);
  auto s = sample_reinflection(forms, 20, 1).samples;
  EXPECT_THROW(split_by_lemma(s), SplitError);
}

TEST(Split, RatiosMustSumToOne) {
  std::vector<ReinflectionSample> s;
  EXPECT_THROW(split_by_lemma(s, {0.5, 0.1, 0.1}), SplitError);
  EXPECT_THROW(split_by_lemma(s, {1.2, -0.1, -0.1}), SplitError);
}

TEST(Split, Deterministic) {
  std::vector<InflectedForm> forms;
  for (int i = 0; i < 30; ++i) {
    auto p = paradigm("l" + std::to_string(i), 3);
    forms.insert(forms.end(), p.begin(), p.end());
  }
  auto s = sample_reinflection(forms, 150, 2).samples;
  SplitDataset a = split_by_lemma(s, {0.8, 0.1, 0.1}, 8);
  SplitDataset b = split_by_lemma(s, {0.8, 0.1, 0.1}, 8);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
}

TEST(SampleFiles, FormatParseRoundTrip) {
  std::vector<ReinflectionSample> s{{"ol", {"V", "FUT", "3", "SG"}, "olacak",
                                     {"V", "PST", "3", "SG"}, "oldu"},
                                    {"ev", {}, "ev", {"N", "PL"}, "evler"}};
  std::string text = format_samples(s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "V;FUT;3;SG\tolacak\tV;PST;3;SG\toldu\tol");
  EXPECT_EQ(parse_samples(text), s);
  EXPECT_THROW(parse_samples("a\tb\tc\n"), Error);
}

}  // namespace
}  // namespace morphoton
