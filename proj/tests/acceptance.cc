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
// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (capped at 1 for ctest).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "morphoton/corpus.h"
#include "morphoton/encoding.h"
#include "morphoton/eval.h"
#include "morphoton/g2p.h"
#include "morphoton/phonology.h"
#include "morphoton/random.h"
#include "morphoton/reinflect.h"
#include "morphoton/resources.h"
#include "morphoton/seq2seq.h"
#include "morphoton/transducer.h"

namespace morphoton {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  bool skipped = false;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const std::vector<std::string> kLanguages{"tr", "fi", "ka"};
const std::vector<std::string> kPos{"V", "N"};

struct Prepared {
  std::string lang, pos;
  SplitDataset split;
};

// Every language/POS pair the shipped corpora support, prepared with the
// command-line defaults (10,000 samples, seed 0).
const std::vector<Prepared>& prepared() {
  static const std::vector<Prepared> all = [] {
    std::vector<Prepared> out;
    for (const std::string& lang : kLanguages) {
      for (const std::string& pos : kPos) {
        ParseReport parsed =
            parse_unimorph(data_dir() + "/unimorph/" + lang + ".tsv", pos_filter(pos));
        if (parsed.forms.empty()) continue;
        auto samples = sample_reinflection(parsed.forms, 10000, 0).samples;
        out.push_back({lang, pos, split_by_lemma(samples, {0.8, 0.1, 0.1}, 0)});
      }
    }
    return out;
  }();
  return all;
}

Outcome phonology_bijection() {
  PhonemeInventory inv = PhonemeInventory::load(data_dir() + "/phonology/inventory.tsv");
  size_t ok = 0;
  std::set<std::vector<std::string>> valid;
  for (const Phoneme& p : inv.phonemes()) {
    ok += inv.compose(inv.decompose(p.symbol)) == p.symbol;
    auto sorted = p.features;
    std::sort(sorted.begin(), sorted.end());
    valid.insert(sorted);
  }
  // random bundles; an invalid one must compose to "#"
  std::vector<std::string> names = inv.feature_names();
  Rng rng(1);
  size_t invalid = 0, invalid_ok = 0;
  for (int t = 0; t < 20000; ++t) {
    std::vector<std::string> b;
    size_t len = 1 + rng.below(5);
    for (size_t i = 0; i < len; ++i) b.push_back(names[rng.below(names.size())]);
    auto sorted = b;
    std::sort(sorted.begin(), sorted.end());
    if (valid.count(sorted)) continue;
    ++invalid;
    invalid_ok += inv.compose(b) == "#";
  }
  std::vector<std::string> trill{"voiceless", "velar", "trill"};
  bool named = inv.compose(trill) == "#";
  Outcome o;
  o.pass = ok == inv.phonemes().size() && invalid_ok == invalid && named;
  o.detail = std::to_string(ok) + "/" + std::to_string(inv.phonemes().size()) +
             " phonemes round-trip, " + std::to_string(invalid_ok) + "/" +
             std::to_string(invalid) + " invalid bundles give #";
  return o;
}

Outcome grammar_round_trip() {
  Outcome o{true, ""};
  for (const std::string& lang : kLanguages) {
    auto start = std::chrono::steady_clock::now();
    LanguageResources res = load_resources(lang);
    for (const std::string& pos : kPos) {
      ParseReport parsed =
          parse_unimorph(data_dir() + "/unimorph/" + lang + ".tsv", pos_filter(pos));
      if (parsed.forms.empty()) continue;
      std::set<std::string> unique;
      for (const auto& f : parsed.forms) unique.insert(f.form);
      std::vector<std::string> words(unique.begin(), unique.end());
      AuditReport r = roundtrip_audit(res.g2p, res.p2g, words);
      o.pass = o.pass && r.rate() >= 0.99;
      o.detail += lang + "/" + pos + " " + fmt("%.2f%% ", 100 * r.rate());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.pass = o.pass && secs < 30;
  }
  return o;
}

Outcome table1_fidelity() {
  LanguageResources res = load_resources("tr");
  auto joined = [&](const char* w) {
    std::string s;
    for (const Symbol& x : transduce(std::string_view(w), res.g2p)) s += x;
    return s;
  };
  std::string a = joined("olacak"), b = joined("ölecek");
  return {a == "olad͡ʒak" && b == "œlɛd͡ʒɛk", "olacak -> /" + a + "/, ölecek -> /" + b + "/"};
}

Outcome aggregation_arithmetic() {
  const double column[] = {96.6, 89.0, 94.2, 82.3, 88.1, 90.9, 90.2, 42.2,
                           88.4, 76.5, 84.3, 66.7, 90.9, 91.6, 82.5};
  std::vector<EvalResult> rows;
  int i = 0;
  for (double v : column) {
    rows.push_back({"lang" + std::to_string(i), "POS", "seq2seq", "baseline", 0, 8000,
                    v / 100, 0, 1000});
    ++i;
  }
  double baseline = aggregate(rows, {Field::kModel, Field::kMethod})[0].exact_match.mean * 100;
  std::vector<EvalResult> trans;
  i = 0;
  for (double v : {83.6, 80.3, 80.8}) {
    trans.push_back({"set" + std::to_string(i++), "POS", "transducer", "baseline", 0, 8000,
                     v / 100, 0, 1000});
  }
  double transduce = aggregate(trans, {Field::kModel})[0].exact_match.mean * 100;
  return {std::abs(baseline - 83.6) <= 0.05 && std::abs(transduce - 81.6) <= 0.05,
          fmt("baseline column %.3f", baseline) + fmt(", transducer row %.3f", transduce)};
}

Outcome feature_length_ratio() {
  Outcome o{true, ""};
  std::map<std::string, LanguageResources> res;
  for (const Prepared& p : prepared()) {
    if (!res.count(p.lang)) res.emplace(p.lang, load_resources(p.lang));
    double total = 0;
    size_t n = 0;
    for (const auto* part : {&p.split.train, &p.split.dev, &p.split.test}) {
      for (const ReinflectionSample& s : *part) {
        for (const std::string* f : {&s.src_form, &s.trg_form}) {
          total += static_cast<double>(
                       form_symbols(*f, Method::kFeatures, res.at(p.lang)).size()) /
                   static_cast<double>(segment(*f).size());
          ++n;
        }
      }
    }
    double mean = total / static_cast<double>(n);
    o.pass = o.pass && mean >= 2.5 && mean <= 5.0;
    o.detail += p.lang + "_" + p.pos + fmt(" %.2f ", mean);
  }
  return o;
}

Outcome gradient_correctness() {
  Hyperparameters hp;
  hp.embed_dim = 6;
  hp.hidden_dim = 5;
  hp.fusion_dim = 4;
  hp.fusion_heads = 2;
  hp.seed = 11;
  std::vector<int> src{kBos, 10, 11, kSep, 6, 7, 8, kSep, 12, kEos};
  std::vector<std::vector<int>> groups{{6, 7, 8}, {9, 6, 7, 10}, {8, 9, 10}};
  std::vector<int> trg{kBos, 6, 8, 7, 7, kEos};
  ModelConfig plain;
  plain.hp = hp;
  plain.src_vocab = 13;
  plain.trg_vocab = 9;
  ModelConfig fused = plain;
  fused.feat_vocab = 11;
  double a = grad_check(Seq2SeqModel(plain), {src, {}, 4, 7}, trg).max_rel_error;
  double f = grad_check(Seq2SeqModel(fused), {src, groups, 4, 7}, trg).max_rel_error;
  return {a < 1e-4 && f < 1e-4, fmt("attention %.2e", a) + fmt(", fusion %.2e", f)};
}

Outcome memorization() {
  LanguageResources res = load_resources("tr");
  ParseReport parsed = parse_unimorph(data_dir() + "/unimorph/tr.tsv", pos_filter("V"));
  auto samples = sample_reinflection(parsed.forms, 32, 7).samples;
  Outcome o{true, ""};
  for (ModelKind kind : {ModelKind::kSeq2Seq, ModelKind::kTransducer}) {
    for (Method method : {Method::kBaseline, Method::kFeatures, Method::kFusion}) {
      TrainRequest req;
      req.kind = kind;
      req.method = method;
      req.pos = "V";
      req.hp.learning_rate = 0.005;
      req.hp.batch_size = 2;
      req.hp.max_epochs = 100;
      req.hp.patience = 100;
      req.hp.seed = 1;
      TrainOutcome out = train_reinflector(samples, samples, req, res);
      auto preds = predict(out.checkpoint, samples, res);
      size_t correct = 0;
      for (size_t i = 0; i < samples.size(); ++i) correct += preds[i].form == samples[i].trg_form;
      o.pass = o.pass && correct == samples.size();
      o.detail += std::string(model_kind_name(kind)) + "/" + std::string(method_name(method)) +
                  " " + std::to_string(correct) + "/32@" +
                  std::to_string(out.result.epochs_run) + " ";
    }
  }
  return o;
}

size_t indel_oracle(const SymbolSeq& a, const SymbolSeq& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] : 1 + std::min(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<SymbolSeq> all_strings(const std::vector<Symbol>& alpha, size_t max_len) {
  std::vector<SymbolSeq> out{{}};
  for (size_t start = 0; start < out.size(); ++start) {
    if (out[start].size() == max_len) continue;
    for (const Symbol& c : alpha) {
      SymbolSeq w = out[start];
      w.push_back(c);
      out.push_back(w);
    }
  }
  return out;
}

Outcome transducer_oracle() {
  size_t checked = 0, bad = 0;
  auto check = [&](const SymbolSeq& a, const SymbolSeq& b) {
    ++checked;
    EditScript s = oracle_align(a, b);
    size_t consumed = 0;
    for (const EditAction& x : s.actions) consumed += x.kind != EditKind::kInsert;
    if (consumed != a.size() || apply_script(s, a) != b || s.cost() != indel_oracle(a, b)) ++bad;
  };
  auto words = all_strings({"a", "b"}, 4);
  for (const auto& a : words) {
    for (const auto& b : words) check(a, b);
  }
  Rng rng(2024);
  const std::vector<Symbol> alpha{"a", "e", "ı", "k", "l", "d͡ʒ", "ː", "¦"};
  for (int t = 0; t < 10000; ++t) {
    SymbolSeq a, b;
    size_t la = rng.below(16), lb = rng.below(16);
    for (size_t i = 0; i < la; ++i) a.push_back(alpha[rng.below(alpha.size())]);
    for (size_t i = 0; i < lb; ++i) b.push_back(alpha[rng.below(alpha.size())]);
    check(a, b);
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " pairs"};
}

// Top-down recursion with memoization on (i, j); shares nothing with the
// library's row-by-row table.
size_t levenshtein_recursive(const SymbolSeq& a, const SymbolSeq& b, size_t i, size_t j,
                             std::vector<int>& memo) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  int& m = memo[i * (b.size() + 1) + j];
  if (m >= 0) return static_cast<size_t>(m);
  size_t best = std::min({levenshtein_recursive(a, b, i + 1, j + 1, memo) + (a[i] != b[j]),
                          levenshtein_recursive(a, b, i + 1, j, memo) + 1,
                          levenshtein_recursive(a, b, i, j + 1, memo) + 1});
  m = static_cast<int>(best);
  return best;
}

Outcome metric_oracle() {
  auto words = all_strings({"a", "b", "c"}, 6);
  size_t pairs = 0, bad = 0;
  std::vector<int> memo;
  for (const auto& a : words) {
    for (const auto& b : words) {
      memo.assign((a.size() + 1) * (b.size() + 1), -1);
      bad += edit_distance(a, b) != levenshtein_recursive(a, b, 0, 0, memo);
      ++pairs;
    }
  }
  Rng rng(99);
  size_t axiom_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    SymbolSeq x[3];
    for (auto& w : x) {
      size_t len = rng.below(10);
      for (size_t i = 0; i < len; ++i) w.push_back(words[1 + rng.below(3)][0]);
    }
    size_t ab = edit_distance(x[0], x[1]), ba = edit_distance(x[1], x[0]);
    size_t bc = edit_distance(x[1], x[2]), ac = edit_distance(x[0], x[2]);
    axiom_bad += ab != ba || (ab == 0) != (x[0] == x[1]) || ac > ab + bc ||
                 edit_distance(x[0], x[0]) != 0;
  }
  return {bad == 0 && axiom_bad == 0, std::to_string(pairs - bad) + "/" +
                                          std::to_string(pairs) + " pairs, " +
                                          std::to_string(1000 - axiom_bad) + "/1000 triples"};
}

Outcome split_hygiene() {
  Outcome o{true, ""};
  for (const Prepared& p : prepared()) {
    std::set<std::string> lem[3];
    const std::vector<ReinflectionSample>* parts[3] = {&p.split.train, &p.split.dev,
                                                       &p.split.test};
    double total = 0;
    for (int k = 0; k < 3; ++k) {
      for (const auto& s : *parts[k]) lem[k].insert(s.lemma);
      total += static_cast<double>(parts[k]->size());
    }
    bool disjoint = true;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        for (const auto& l : lem[a]) disjoint = disjoint && !lem[b].count(l);
      }
    }
    const double target[3] = {0.8, 0.1, 0.1};
    bool ratios = true;
    for (int k = 0; k < 3; ++k) {
      ratios = ratios && std::abs(static_cast<double>(parts[k]->size()) / total - target[k]) <= 0.02;
    }
    o.pass = o.pass && disjoint && ratios;
    o.detail += p.lang + "_" + p.pos + " " + std::to_string(p.split.train.size()) + "/" +
                std::to_string(p.split.dev.size()) + "/" + std::to_string(p.split.test.size()) +
                (disjoint ? "" : " OVERLAP") + " ";
  }
  return o;
}

Outcome desk_scale_trend() {
  const char* env = std::getenv("MORPHOTON_TREND_SIZE");
  size_t size = env ? std::strtoul(env, nullptr, 10) : 1000;
  const Prepared* ds = nullptr;
  for (const Prepared& p : prepared()) {
    if (p.lang == "tr" && p.pos == "V") ds = &p;
  }
  LanguageResources res = load_resources("tr");
  LearningCurveConfig cfg;
  cfg.sizes = {size};
  cfg.seeds = {1};
  cfg.pos = "V";
  // The fixture corpus has about 220 training lemmas, too few for the plain
  // seq2seq to learn stem copying at this size; the edit-action model copies
  // by construction.
  cfg.model = ModelKind::kTransducer;
  cfg.hp.embed_dim = 32;
  cfg.hp.hidden_dim = 64;
  cfg.hp.fusion_dim = 32;
  cfg.hp.learning_rate = 3e-3;
  cfg.hp.batch_size = 8;
  cfg.hp.max_epochs = 40;
  cfg.hp.patience = 10;
  SplitDataset data = ds->split;
  data.test.resize(std::min<size_t>(data.test.size(), 500));
  double lo = 1, hi = 0;
  Outcome o;
  for (Method m : {Method::kBaseline, Method::kFeatures, Method::kFusion}) {
    cfg.method = m;
    EvalResult r = learning_curve(data, cfg, res)[0];
    lo = std::min(lo, r.exact_match);
    hi = std::max(hi, r.exact_match);
    o.detail += std::string(method_name(m)) + fmt(" %.1f%% ", 100 * r.exact_match);
  }
  // A spread between models that learned nothing is no evidence either way.
  constexpr double kFloor = 0.10;
  o.pass = (hi - lo) * 100 <= 15.0 && lo >= kFloor;
  if (lo < kFloor) o.detail += "[a method is below 10%] ";
  o.detail += "(tr_V transducer, " + std::to_string(size) + " train, spread " +
              fmt("%.1f points)", (hi - lo) * 100);
  return o;
}

}  // namespace
}  // namespace morphoton

int main() {
  using namespace morphoton;
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
    bool optional = false;  // reported, but does not set the exit status
  };
  const std::vector<Criterion> criteria{
      {1, "phonology bijection", phonology_bijection, 1},
      {2, "grammar round trip", grammar_round_trip, 90},
      {3, "table-1 fidelity", table1_fidelity, 0},
      {4, "aggregation arithmetic", aggregation_arithmetic, 0},
      {5, "feature-length ratio", feature_length_ratio, 0},
      {6, "gradient correctness", gradient_correctness, 60},
      {7, "memorization sanity", memorization, 300},
      {8, "transducer oracle", transducer_oracle, 30},
      {9, "metric oracle", metric_oracle, 0},
      {10, "split hygiene", split_hygiene, 0},
      {11, "desk-scale trend", desk_scale_trend, 0, true},
  };
  int failed = 0;
  int required_failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.pass = false;
      o.detail += " [over the " + fmt("%.0f s budget]", c.budget_s);
    }
    failed += !o.pass;
    required_failed += !o.pass && !c.optional;
    std::printf("%s criterion %d (%s): %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.optional ? " (optional)" : "");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  if (required_failed == 0 && failed > 0) std::printf("only optional criteria failed\n");
  return required_failed == 0 ? 0 : 1;
}
