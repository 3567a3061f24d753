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
// Checkpoint container and hyperparameter config files.
//
// Layout: 8-byte magic "MRPHCKPT", u32 version, u64 header length, a JSON
// header (hyperparameters, vocabularies, model config, training metadata,
// tensor directory), then every tensor as little-endian f64, column-major,
// in directory order.

#ifndef MORPHOTON_CHECKPOINT_H_
#define MORPHOTON_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "morphoton/encoding.h"
#include "morphoton/seq2seq.h"

namespace morphoton {

inline constexpr uint32_t kCheckpointVersion = 1;
inline constexpr int kConfigVersion = 1;

enum class ModelKind { kSeq2Seq, kTransducer };

std::string_view model_kind_name(ModelKind k);
ModelKind parse_model_kind(std::string_view text);

struct TrainingMetadata {
  int epochs = 0;
  int best_epoch = 0;
  double best_dev = 0;
  uint64_t seed = 0;
  size_t train_size = 0;
};

struct ModelCheckpoint {
  ModelKind kind = ModelKind::kSeq2Seq;
  std::string language;
  std::string pos;
  ModelConfig config;
  Vocabularies vocabs;
  Vocabulary actions{VocabKind::kAction};  // transducer only
  Params params;
  TrainingMetadata training;

  Seq2SeqModel model() const { return Seq2SeqModel(config, params); }
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

std::string serialize_checkpoint(const ModelCheckpoint& ckpt);
ModelCheckpoint deserialize_checkpoint(std::string_view bytes);
void save_checkpoint(const std::string& path, const ModelCheckpoint& ckpt);
ModelCheckpoint load_checkpoint(const std::string& path);

/// {"version": 1, "embed_dim": 64, ...}. Missing keys keep their defaults;
/// unknown keys and other versions are rejected.
Hyperparameters parse_hyperparameters(std::string_view json_text);
std::string format_hyperparameters(const Hyperparameters& hp);

}  // namespace morphoton

#endif  // MORPHOTON_CHECKPOINT_H_
