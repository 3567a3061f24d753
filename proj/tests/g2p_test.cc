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

#include "morphoton/g2p.h"

#include <gtest/gtest.h>

#include <set>

#include "morphoton/corpus.h"
#include "morphoton/random.h"
#include "morphoton/resources.h"

namespace morphoton {
namespace {

const char* kToy = R"(language: xx
direction: g2p
alphabet: a b c n k q
a -> a
b -> B / # _   ; word-initial, ahead of the general rule
b -> b
c -> t͡s
n -> ŋ / _ k
n -> n
k -> k
ab -> X        ; longer pattern wins
q ->
)";

Grammar toy() { return parse_grammar(kToy, "toy"); }

SymbolSeq g(std::string_view word, const Grammar& gr) { return transduce(word, gr); }

TEST(GrammarParse, Headers) {
  Grammar gr = toy();
  EXPECT_EQ(gr.language, "xx");
  EXPECT_EQ(gr.direction, Direction::kG2P);
  EXPECT_EQ(gr.alphabet.size(), 6u);
  EXPECT_EQ(gr.rules.size(), 9u);
}

TEST(GrammarParse, EmptyReplacementIsDeletion) {
  EXPECT_EQ(g("aqa", toy()), (SymbolSeq{"a", "a"}));
}

TEST(GrammarParse, CompletenessNamesMissingSymbol) {
  try {
    parse_grammar("language: tr\ndirection: g2p\nalphabet: s ş\ns -> s\nş -> ʃ / _ a\n");
    FAIL();
  } catch (const CompletenessError& e) {
    EXPECT_EQ(e.missing(), std::vector<std::string>{"ş"});
  }
}

TEST(GrammarParse, ErrorsCarryLineNumber) {
  try {
    parse_grammar("language: xx\ndirection: g2p\n\na => b\n");
    FAIL();
  } catch (const GrammarParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
  EXPECT_THROW(parse_grammar("language: xx\ndirection: sideways\n"), GrammarParseError);
  EXPECT_THROW(parse_grammar("direction: g2p\n"), GrammarParseError);
  EXPECT_THROW(parse_grammar("language: xx\ndirection: g2p\na -> b / _ _\n"),
               GrammarParseError);
  EXPECT_THROW(parse_grammar("language: xx\ndirection: g2p\n -> b\n"), GrammarParseError);
}

TEST(Transduce, LongestMatchAndContexts) {
  Grammar gr = toy();
  EXPECT_EQ(g("cab", gr), (SymbolSeq{"t͡s", "X"}));
  EXPECT_EQ(g("bab", gr), (SymbolSeq{"B", "X"}));
  EXPECT_EQ(g("nak", gr), (SymbolSeq{"n", "a", "k"}));
  EXPECT_EQ(g("ank", gr), (SymbolSeq{"a", "ŋ", "k"}));
  EXPECT_EQ(g("an", gr), (SymbolSeq{"a", "n"}));
}

TEST(Transduce, ContextsReadInputTapeOnly) {
  // `n` sees the original `k`, even though nothing rewrites it here; and a
  // rewritten symbol never feeds a later context.
  Grammar gr = parse_grammar(
      "language: xx\ndirection: g2p\nalphabet: a b\na -> b\nb -> c / a _\nb -> a\n");
  EXPECT_EQ(g("ab", gr), (SymbolSeq{"b", "c"}));
  EXPECT_EQ(g("bb", gr), (SymbolSeq{"a", "a"}));
}

TEST(Transduce, EmptyWord) { EXPECT_TRUE(g("", toy()).empty()); }

TEST(Transduce, UnknownSymbolReportsPosition) {
  try {
    g("abz", toy());
    FAIL();
  } catch (const ConversionError& e) {
    EXPECT_EQ(e.position(), 2u);
    EXPECT_EQ(e.symbol(), "z");
  }
  SymbolSeq word{"a", "z", "a"};
  EXPECT_EQ(transduce_lenient(word, toy()), (SymbolSeq{"a", "#", "a"}));
}

TEST(Transduce, OverrideBreaksTies) {
  Grammar gr = parse_grammar(
      "language: xx\ndirection: p2g\nalphabet: k\nk -> c\nk -> k\noverride: k -> k\n");
  EXPECT_EQ(g("k", gr), (SymbolSeq{"k"}));
  Grammar plain = parse_grammar("language: xx\ndirection: p2g\nalphabet: k\nk -> c\nk -> k\n");
  EXPECT_EQ(g("k", plain), (SymbolSeq{"c"}));
}

TEST(Transduce, PrefixStability) {
  Grammar gr = toy();
  const size_t L = gr.max_lookahead();
  Rng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    SymbolSeq w;
    size_t len = rng.below(8);
    for (size_t i = 0; i < len; ++i) w.push_back(gr.alphabet[rng.below(gr.alphabet.size())]);
    SymbolSeq wx = w;
    wx.push_back(gr.alphabet[rng.below(gr.alphabet.size())]);
    auto a = transduce_trace(w, gr);
    auto b = transduce_trace(wx, gr);
    for (size_t k = 0; k < a.size() && a[k].begin + L <= w.size(); ++k) {
      ASSERT_LT(k, b.size());
      EXPECT_EQ(a[k].begin, b[k].begin);
      EXPECT_EQ(a[k].rule, b[k].rule);
    }
  }
}

class ShippedGrammars : public ::testing::TestWithParam<std::string> {};

TEST_P(ShippedGrammars, LoadAndRoundTripCorpus) {
  LanguageResources res = load_resources(GetParam());
  EXPECT_EQ(res.g2p.language, GetParam());
  // every phoneme the g2p grammar can emit is in the inventory
  for (const RewriteRule& r : res.g2p.rules) {
    for (const Symbol& p : r.replacement) EXPECT_TRUE(res.inventory.contains(p)) << p;
  }
  ParseReport parsed = parse_unimorph(data_dir() + "/unimorph/" + GetParam() + ".tsv");
  std::set<std::string> unique;
  for (const auto& f : parsed.forms) unique.insert(f.form);
  std::vector<std::string> words(unique.begin(), unique.end());
  AuditReport report = roundtrip_audit(res.g2p, res.p2g, words);
  EXPECT_GT(report.count(), 500u);
  EXPECT_GE(report.rate(), 0.99);
}

INSTANTIATE_TEST_SUITE_P(Languages, ShippedGrammars, ::testing::Values("tr", "fi", "ka"));

TEST(Turkish, TableOneTranscriptions) {
  LanguageResources tr = load_resources("tr");
  EXPECT_EQ(join(transduce("olacak", tr.g2p), " "), "o l a d͡ʒ a k");
  EXPECT_EQ(join(transduce("ölecek", tr.g2p), " "), "œ l ɛ d͡ʒ ɛ k");
  EXPECT_EQ(join(transduce("olmuyor", tr.g2p), " "), "o l m u j o r");
}

TEST(Turkish, SoftGLengthensVowel) {
  LanguageResources tr = load_resources("tr");
  EXPECT_EQ(join(transduce("dağ", tr.g2p), " "), "d aː");
  EXPECT_EQ(join(transduce(join(transduce("dağ", tr.g2p)), tr.p2g)), "dağ");
}

TEST(Georgian, FullRoundTrip) {
  LanguageResources ka = load_resources("ka");
  ParseReport parsed = parse_unimorph(data_dir() + "/unimorph/ka.tsv", pos_filter("N"));
  std::vector<std::string> words;
  for (const auto& f : parsed.forms) words.push_back(f.form);
  AuditReport report = roundtrip_audit(ka.g2p, ka.p2g, words);
  EXPECT_EQ(report.rate(), 1.0);
}

TEST(Audit, EmptyCorpusIsVacuousPass) {
  Grammar gr = toy();
  AuditReport r = roundtrip_audit(gr, gr, {});
  EXPECT_EQ(r.count(), 0u);
  EXPECT_EQ(r.rate(), 1.0);
}

TEST(Audit, FailuresAreListed) {
  LanguageResources fi = load_resources("fi");
  std::vector<std::string> words{"talo", "wc", "kissa"};
  AuditReport r = roundtrip_audit(fi.g2p, fi.p2g, words);
  ASSERT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(r.failures()[0]->word, "wc");
  EXPECT_EQ(r.failures()[0]->round_trip, "vk");
}

TEST(Overrides, SuggestedFromCorpusCounts) {
  LanguageResources tr = load_resources("tr");
  std::vector<std::string> words{"dağ", "yağ", "kâr"};
  auto s = suggest_overrides(tr.g2p, tr.p2g, words);
  EXPECT_EQ(s.at(SymbolSeq{"aː"}), (SymbolSeq{"a", "ğ"}));
}

}  // namespace
}  // namespace morphoton
