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

#include "morphoton/reinflect.h"

#include <optional>

#include "morphoton/eval.h"

namespace morphoton {
namespace {

struct Prepared {
  std::vector<EncodedSample> encoded;
  std::vector<TrainExample> examples;
  size_t skipped = 0;
};

Prepared prepare(std::span<const ReinflectionSample> samples, const Vocabularies& v,
                 const Vocabulary* actions, const LanguageResources& res) {
  Prepared p;
  p.encoded.reserve(samples.size());
  for (const ReinflectionSample& s : samples) {
    try {
      p.encoded.push_back(encode(s, res, v));
    } catch (const Error&) {
      ++p.skipped;
    }
  }
  // Spans into `encoded` stay valid: the vector is not touched again.
  for (const EncodedSample& e : p.encoded) {
    TrainExample ex{ModelInput::from(e), e.trg};
    if (actions) ex.target = script_ids(oracle_align(e.src_form, e.trg_form), *actions);
    p.examples.push_back(std::move(ex));
  }
  return p;
}

SymbolSeq predicted_symbols(const Seq2SeqModel& model, const EncodedSample& e,
                            const ModelCheckpoint& ckpt, bool* truncated) {
  DecodeResult r = model.decode_greedy(ModelInput::from(e));
  if (truncated) *truncated = r.truncated;
  if (ckpt.kind == ModelKind::kTransducer) {
    return apply_repaired(ids_to_actions(r.tokens, ckpt.actions), e.src_form);
  }
  return prediction_symbols(r.tokens, ckpt.vocabs.target);
}

DevScore symbol_dev_score(const Seq2SeqModel& model, const Prepared& dev,
                          const ModelCheckpoint& shell) {
  if (dev.encoded.empty()) return {};
  size_t hits = 0, distance = 0;
  for (const EncodedSample& e : dev.encoded) {
    SymbolSeq pred = predicted_symbols(model, e, shell, nullptr);
    hits += pred == e.trg_form;
    distance += edit_distance(pred, e.trg_form);
  }
  const double n = static_cast<double>(dev.encoded.size());
  return {static_cast<double>(hits) / n, static_cast<double>(distance) / n};
}

}  // namespace

TrainOutcome train_reinflector(std::span<const ReinflectionSample> train_set,
                               std::span<const ReinflectionSample> dev_set,
                               const TrainRequest& req, const LanguageResources& res,
                               const EpochCallback& on_epoch) {
  req.hp.validate();
  TrainOutcome out;
  ModelCheckpoint& ckpt = out.checkpoint;
  ckpt.kind = req.kind;
  ckpt.language = res.language;
  ckpt.pos = req.pos;
  ckpt.vocabs = build_vocabularies(train_set, req.method, res);
  const bool transducer = req.kind == ModelKind::kTransducer;
  if (transducer) ckpt.actions = action_vocabulary(ckpt.vocabs.target);

  Prepared tr = prepare(train_set, ckpt.vocabs, transducer ? &ckpt.actions : nullptr, res);
  Prepared dv = prepare(dev_set, ckpt.vocabs, transducer ? &ckpt.actions : nullptr, res);
  out.skipped = tr.skipped + dv.skipped;
  if (tr.examples.empty()) throw Error("no trainable samples after encoding");
  if (dv.examples.empty()) throw Error("no usable dev samples after encoding");

  ModelConfig& cfg = ckpt.config;
  cfg.hp = req.hp;
  cfg.src_vocab = static_cast<int>(ckpt.vocabs.source.size());
  cfg.trg_vocab = static_cast<int>(transducer ? ckpt.actions.size() : ckpt.vocabs.target.size());
  cfg.feat_vocab = req.method == Method::kFusion ? static_cast<int>(ckpt.vocabs.features.size())
                                                 : 0;
  if (transducer) {
    cfg.pointer = true;
    cfg.copy_token = *ckpt.actions.find("C");
    cfg.delete_token = *ckpt.actions.find("D");
  }
  Seq2SeqModel model(cfg);
  DevScorer scorer = [&](const Seq2SeqModel& m) { return symbol_dev_score(m, dv, ckpt); };
  out.result = train(model, tr.examples, scorer, on_epoch);
  ckpt.params = model.params();
  ckpt.training.epochs = out.result.epochs_run;
  ckpt.training.best_epoch = out.result.best_epoch;
  ckpt.training.best_dev = out.result.best_dev;
  ckpt.training.seed = req.hp.seed;
  ckpt.training.train_size = tr.examples.size();
  return out;
}

std::vector<Prediction> predict(const ModelCheckpoint& ckpt,
                                std::span<const ReinflectionSample> samples,
                                const LanguageResources& res) {
  check_compatible(ckpt, res);
  Seq2SeqModel model = ckpt.model();
  std::vector<Prediction> out;
  out.reserve(samples.size());
  for (const ReinflectionSample& s : samples) {
    Prediction p;
    std::optional<EncodedSample> e;
    try {
      e = encode(s, res, ckpt.vocabs);
    } catch (const Error&) {
      p.unconvertible = true;
      p.form = std::string(kOovSymbol);
      out.push_back(std::move(p));
      continue;
    }
    p.symbols = predicted_symbols(model, *e, ckpt, &p.truncated);
    p.form = symbols_to_graphemes(p.symbols, ckpt.vocabs.method, res);
    out.push_back(std::move(p));
  }
  return out;
}

void check_compatible(const ModelCheckpoint& ckpt, const LanguageResources& res) {
  if (!ckpt.language.empty() && ckpt.language != res.language) {
    throw VocabularyError("checkpoint was trained for '" + ckpt.language +
                          "' but resources are for '" + res.language + "'");
  }
  if (ckpt.vocabs.method == Method::kBaseline) return;
  // Feature and phoneme alphabets come from the inventory, so they must agree.
  Vocabularies fresh = build_vocabularies({}, ckpt.vocabs.method, res);
  if (fresh.target != ckpt.vocabs.target) {
    throw VocabularyError("checkpoint vocabulary does not match the phoneme inventory");
  }
}

}  // namespace morphoton
