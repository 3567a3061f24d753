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

#include "morphoton/checkpoint.h"

#include <bit>
#include <cstring>
#include <map>

#include "json.hpp"

namespace morphoton {
namespace {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr std::string_view kMagic = "MRPHCKPT";

json hp_json(const Hyperparameters& hp) {
  return json{{"version", kConfigVersion},
              {"embed_dim", hp.embed_dim},
              {"hidden_dim", hp.hidden_dim},
              {"fusion_dim", hp.fusion_dim},
              {"fusion_heads", hp.fusion_heads},
              {"learning_rate", hp.learning_rate},
              {"batch_size", hp.batch_size},
              {"max_epochs", hp.max_epochs},
              {"patience", hp.patience},
              {"max_decode_len_factor", hp.max_decode_len_factor},
              {"clip_norm", hp.clip_norm},
              {"seed", hp.seed}};
}

Hyperparameters hp_from_json(const json& j) {
  if (!j.is_object()) throw Error("hyperparameters must be a JSON object");
  if (!j.contains("version") || j["version"] != kConfigVersion) {
    throw Error("unsupported hyperparameter config version (expected " +
                std::to_string(kConfigVersion) + ")");
  }
  Hyperparameters hp;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "version") continue;
      else if (key == "embed_dim") hp.embed_dim = value.get<int>();
      else if (key == "hidden_dim") hp.hidden_dim = value.get<int>();
      else if (key == "fusion_dim") hp.fusion_dim = value.get<int>();
      else if (key == "fusion_heads") hp.fusion_heads = value.get<int>();
      else if (key == "learning_rate") hp.learning_rate = value.get<double>();
      else if (key == "batch_size") hp.batch_size = value.get<int>();
      else if (key == "max_epochs") hp.max_epochs = value.get<int>();
      else if (key == "patience") hp.patience = value.get<int>();
      else if (key == "max_decode_len_factor") hp.max_decode_len_factor = value.get<double>();
      else if (key == "clip_norm") hp.clip_norm = value.get<double>();
      else if (key == "seed") hp.seed = value.get<uint64_t>();
      else throw Error("unknown hyperparameter '" + key + "'");
    } catch (const json::exception& e) {
      throw Error("hyperparameter '" + key + "': " + e.what());
    }
  }
  hp.validate();
  return hp;
}

std::vector<std::string> user_tokens(const Vocabulary& v) {
  return {v.tokens().begin() + kNumSpecials, v.tokens().end()};
}

Vocabulary vocab_from(const json& j, VocabKind kind) {
  Vocabulary v(kind);
  for (const auto& t : j) {
    std::string s = t.get<std::string>();
    if (v.contains(s)) throw CheckpointError("duplicate vocabulary token '" + s + "'");
    v.add(s);
  }
  return v;
}

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(std::string_view bytes, size_t& pos) {
  if (pos + sizeof(T) > bytes.size()) throw CheckpointError("truncated checkpoint");
  T value;
  std::memcpy(&value, bytes.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

}  // namespace

std::string_view model_kind_name(ModelKind k) {
  return k == ModelKind::kSeq2Seq ? "seq2seq" : "transducer";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "seq2seq") return ModelKind::kSeq2Seq;
  if (text == "transducer") return ModelKind::kTransducer;
  throw Error("unknown model '" + std::string(text) + "' (expected seq2seq or transducer)");
}

Hyperparameters parse_hyperparameters(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed hyperparameter file: ") + e.what());
  }
  return hp_from_json(j);
}

std::string format_hyperparameters(const Hyperparameters& hp) {
  return hp_json(hp).dump(2) + "\n";
}

std::string serialize_checkpoint(const ModelCheckpoint& ckpt) {
  json header;
  header["model"] = model_kind_name(ckpt.kind);
  header["method"] = method_name(ckpt.vocabs.method);
  header["language"] = ckpt.language;
  header["pos"] = ckpt.pos;
  header["hyperparameters"] = hp_json(ckpt.config.hp);
  header["config"] = {{"src_vocab", ckpt.config.src_vocab},
                      {"trg_vocab", ckpt.config.trg_vocab},
                      {"feat_vocab", ckpt.config.feat_vocab},
                      {"pointer", ckpt.config.pointer},
                      {"copy_token", ckpt.config.copy_token},
                      {"delete_token", ckpt.config.delete_token}};
  header["vocabularies"] = {{"source", user_tokens(ckpt.vocabs.source)},
                            {"source_kind", vocab_kind_name(ckpt.vocabs.source.kind())},
                            {"target", user_tokens(ckpt.vocabs.target)},
                            {"features", user_tokens(ckpt.vocabs.features)},
                            {"actions", user_tokens(ckpt.actions)}};
  header["training"] = {{"epochs", ckpt.training.epochs},
                        {"best_epoch", ckpt.training.best_epoch},
                        {"best_dev", ckpt.training.best_dev},
                        {"seed", ckpt.training.seed},
                        {"train_size", ckpt.training.train_size}};
  json dir = json::array();
  ckpt.params.for_each([&](const char* name, const Mat& m) {
    dir.push_back({{"name", name}, {"rows", m.rows()}, {"cols", m.cols()}});
  });
  header["tensors"] = dir;
  std::string head = header.dump();

  std::string out(kMagic);
  put<uint32_t>(out, kCheckpointVersion);
  put<uint64_t>(out, head.size());
  out += head;
  ckpt.params.for_each([&](const char*, const Mat& m) {
    out.append(reinterpret_cast<const char*>(m.data()),
               static_cast<size_t>(m.size()) * sizeof(double));
  });
  return out;
}

ModelCheckpoint deserialize_checkpoint(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) != kMagic) throw CheckpointError("not a checkpoint file");
  size_t pos = kMagic.size();
  uint32_t version = take<uint32_t>(bytes, pos);
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  uint64_t head_len = take<uint64_t>(bytes, pos);
  if (pos + head_len > bytes.size()) throw CheckpointError("truncated checkpoint header");
  ModelCheckpoint ckpt;
  try {
    json h = json::parse(bytes.substr(pos, head_len));
    pos += head_len;
    ckpt.kind = parse_model_kind(h.at("model").get<std::string>());
    ckpt.language = h.at("language").get<std::string>();
    ckpt.pos = h.at("pos").get<std::string>();
    ckpt.config.hp = hp_from_json(h.at("hyperparameters"));
    const json& c = h.at("config");
    ckpt.config.src_vocab = c.at("src_vocab").get<int>();
    ckpt.config.trg_vocab = c.at("trg_vocab").get<int>();
    ckpt.config.feat_vocab = c.at("feat_vocab").get<int>();
    ckpt.config.pointer = c.at("pointer").get<bool>();
    ckpt.config.copy_token = c.at("copy_token").get<int>();
    ckpt.config.delete_token = c.at("delete_token").get<int>();
    const json& v = h.at("vocabularies");
    Method method = parse_method(h.at("method").get<std::string>());
    VocabKind kind = method == Method::kBaseline  ? VocabKind::kGrapheme
                     : method == Method::kFusion ? VocabKind::kPhoneme
                                                 : VocabKind::kFeature;
    ckpt.vocabs.method = method;
    ckpt.vocabs.source = vocab_from(v.at("source"), kind);
    ckpt.vocabs.target = vocab_from(v.at("target"), kind);
    ckpt.vocabs.features = vocab_from(v.at("features"), VocabKind::kFeature);
    ckpt.actions = vocab_from(v.at("actions"), VocabKind::kAction);
    const json& t = h.at("training");
    ckpt.training.epochs = t.at("epochs").get<int>();
    ckpt.training.best_epoch = t.at("best_epoch").get<int>();
    ckpt.training.best_dev = t.at("best_dev").get<double>();
    ckpt.training.seed = t.at("seed").get<uint64_t>();
    ckpt.training.train_size = t.at("train_size").get<size_t>();

    std::map<std::string, std::pair<Eigen::Index, Eigen::Index>> shapes;
    std::vector<std::string> order;
    for (const json& e : h.at("tensors")) {
      std::string name = e.at("name").get<std::string>();
      shapes[name] = {e.at("rows").get<Eigen::Index>(), e.at("cols").get<Eigen::Index>()};
      order.push_back(name);
    }
    size_t k = 0;
    ckpt.params.for_each([&](const char* name, Mat& m) {
      if (k >= order.size() || order[k] != name) {
        throw CheckpointError(std::string("tensor directory does not match at '") + name + "'");
      }
      ++k;
      auto [rows, cols] = shapes[name];
      m.resize(rows, cols);
      size_t n = static_cast<size_t>(m.size()) * sizeof(double);
      if (pos + n > bytes.size()) throw CheckpointError("truncated tensor data");
      std::memcpy(m.data(), bytes.data() + pos, n);
      pos += n;
    });
  } catch (const json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint header: ") + e.what());
  }
  if (pos != bytes.size()) throw CheckpointError("trailing bytes after tensor data");
  if (static_cast<size_t>(ckpt.config.src_vocab) != ckpt.vocabs.source.size()) {
    throw CheckpointError("source vocabulary size does not match the model");
  }
  ckpt.model();  // validates tensor shapes
  return ckpt;
}

void save_checkpoint(const std::string& path, const ModelCheckpoint& ckpt) {
  write_file(path, serialize_checkpoint(ckpt));
}

ModelCheckpoint load_checkpoint(const std::string& path) {
  try {
    return deserialize_checkpoint(read_file(path));
  } catch (const CheckpointError& e) {
    throw CheckpointError(path + ": " + e.what());
  }
}

}  // namespace morphoton
