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
// End-to-end reinflection: encode a split, train either model kind, and
// turn predictions back into grapheme strings.

#ifndef MORPHOTON_REINFLECT_H_
#define MORPHOTON_REINFLECT_H_

#include <span>
#include <string>
#include <vector>

#include "morphoton/checkpoint.h"
#include "morphoton/corpus.h"
#include "morphoton/resources.h"
#include "morphoton/seq2seq.h"
#include "morphoton/transducer.h"

namespace morphoton {

struct TrainRequest {
  ModelKind kind = ModelKind::kSeq2Seq;
  Method method = Method::kBaseline;
  Hyperparameters hp;
  std::string pos;
};

struct TrainOutcome {
  ModelCheckpoint checkpoint;
  TrainResult result;
  size_t skipped = 0;  // samples whose forms could not be converted
};

/// Builds vocabularies from `train`, trains with early stopping on `dev`
/// exact match, and returns the best-dev checkpoint.
TrainOutcome train_reinflector(std::span<const ReinflectionSample> train,
                               std::span<const ReinflectionSample> dev,
                               const TrainRequest& req, const LanguageResources& res,
                               const EpochCallback& on_epoch = {});

struct Prediction {
  std::string form;        // graphemes
  SymbolSeq symbols;       // form region symbols before conversion
  bool truncated = false;  // decode cap hit
  bool unconvertible = false;
};

/// Greedy predictions. Samples whose source cannot be encoded yield "#".
std::vector<Prediction> predict(const ModelCheckpoint& ckpt,
                                std::span<const ReinflectionSample> samples,
                                const LanguageResources& res);

/// Vocabularies rebuilt from a checkpoint must match the ones a dataset
/// encodes with; this checks the method and grammar alphabets.
void check_compatible(const ModelCheckpoint& ckpt, const LanguageResources& res);

}  // namespace morphoton

#endif  // MORPHOTON_REINFLECT_H_
