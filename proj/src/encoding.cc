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

#include "morphoton/encoding.h"

#include <algorithm>
#include <array>

namespace morphoton {
namespace {

constexpr std::array<std::string_view, kNumSpecials> kSpecials = {
    kPadToken, kBosToken, kEosToken, kUnkToken, kSepToken, kBoundaryToken};

void append_tags(const TagSet& tags, const Vocabulary& v, std::vector<int>& out,
                 size_t& unk) {
  for (const std::string& t : tags) {
    int id = v.index(t);
    if (id == kUnk) ++unk;
    out.push_back(id);
  }
}

// Shared layout; `form_ids` is already indexed in the source vocabulary.
EncodedSample assemble(const ReinflectionSample& s, Method method, const Vocabularies& v,
                       SymbolSeq src_form, SymbolSeq trg_form) {
  EncodedSample e;
  e.method = method;
  e.src.push_back(kBos);
  append_tags(s.src_tags, v.source, e.src, e.unk_count);
  e.src.push_back(kSep);
  e.form_begin = e.src.size();
  for (const Symbol& sym : src_form) {
    int id = v.source.index(sym);
    if (id == kUnk) ++e.unk_count;
    e.src.push_back(id);
  }
  e.form_end = e.src.size();
  e.src.push_back(kSep);
  append_tags(s.trg_tags, v.source, e.src, e.unk_count);
  e.src.push_back(kEos);

  e.trg.push_back(kBos);
  for (const Symbol& sym : trg_form) {
    int id = v.target.index(sym);
    if (id == kUnk) ++e.unk_count;
    e.trg.push_back(id);
  }
  e.trg.push_back(kEos);
  e.src_form = std::move(src_form);
  e.trg_form = std::move(trg_form);
  return e;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::kBaseline: return "baseline";
    case Method::kFeatures: return "feat_seq";
    case Method::kFusion: return "fusion";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "baseline") return Method::kBaseline;
  if (text == "feat_seq" || text == "feat") return Method::kFeatures;
  if (text == "fusion" || text == "fuse") return Method::kFusion;
  throw Error("unknown method '" + std::string(text) +
              "' (expected baseline, feat or fuse)");
}

std::string_view vocab_kind_name(VocabKind k) {
  switch (k) {
    case VocabKind::kGrapheme: return "grapheme";
    case VocabKind::kPhoneme: return "phoneme";
    case VocabKind::kFeature: return "feature";
    case VocabKind::kTag: return "tag";
    case VocabKind::kAction: return "action";
  }
  return "?";
}

Vocabulary::Vocabulary(VocabKind kind) : kind_(kind) {
  for (std::string_view s : kSpecials) add(s);
}

Vocabulary Vocabulary::build(VocabKind kind, std::vector<std::string> tokens) {
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  Vocabulary v(kind);
  for (const std::string& t : tokens) v.add(t);
  return v;
}

int Vocabulary::add(std::string_view token) {
  if (auto id = find(token)) return *id;
  if (token.empty() || token.find('\n') != std::string_view::npos) {
    throw VocabularyError("invalid token '" + std::string(token) + "'");
  }
  int id = static_cast<int>(tokens_.size());
  tokens_.emplace_back(token);
  index_.emplace(tokens_.back(), id);
  return id;
}

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::index(std::string_view token) const {
  return find(token).value_or(kUnk);
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || static_cast<size_t>(id) >= tokens_.size()) {
    throw VocabularyError("token index " + std::to_string(id) + " out of range");
  }
  return tokens_[static_cast<size_t>(id)];
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (const std::string& t : tokens_) {
    out += t;
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::deserialize(std::string_view text, VocabKind kind) {
  std::vector<std::string> lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < kNumSpecials) throw VocabularyError("vocabulary is missing specials");
  for (size_t i = 0; i < kNumSpecials; ++i) {
    if (lines[i] != kSpecials[i]) {
      throw VocabularyError("line " + std::to_string(i + 1) + ": expected special '" +
                            std::string(kSpecials[i]) + "'");
    }
  }
  Vocabulary v(kind);
  for (size_t i = kNumSpecials; i < lines.size(); ++i) {
    if (v.contains(lines[i])) {
      throw VocabularyError("duplicate token '" + lines[i] + "' on line " +
                            std::to_string(i + 1));
    }
    v.add(lines[i]);
  }
  return v;
}

void Vocabulary::save(const std::string& path) const { write_file(path, serialize()); }

Vocabulary Vocabulary::load(const std::string& path, VocabKind kind) {
  return deserialize(read_file(path), kind);
}

Vocabularies build_vocabularies(std::span<const ReinflectionSample> train, Method method,
                                const LanguageResources& res) {
  std::vector<std::string> alphabet;
  VocabKind kind = VocabKind::kGrapheme;
  switch (method) {
    case Method::kBaseline:
      for (const ReinflectionSample& s : train) {
        for (const std::string* f : {&s.src_form, &s.trg_form}) {
          for (Symbol& g : segment(*f)) alphabet.push_back(std::move(g));
        }
      }
      break;
    case Method::kFeatures:
      kind = VocabKind::kFeature;
      alphabet = res.inventory.feature_names();
      break;
    case Method::kFusion:
      kind = VocabKind::kPhoneme;
      alphabet = res.inventory.phoneme_symbols();
      break;
  }
  std::vector<std::string> source = alphabet;
  for (const ReinflectionSample& s : train) {
    for (const TagSet* tags : {&s.src_tags, &s.trg_tags}) {
      source.insert(source.end(), tags->begin(), tags->end());
    }
  }
  Vocabularies v;
  v.method = method;
  v.source = Vocabulary::build(kind, std::move(source));
  v.target = Vocabulary::build(kind, std::move(alphabet));
  if (method == Method::kFusion) {
    v.features = Vocabulary::build(VocabKind::kFeature, res.inventory.feature_names());
  }
  return v;
}

SymbolSeq form_symbols(std::string_view form, Method method, const LanguageResources& res) {
  if (method == Method::kBaseline) return segment(form);
  SymbolSeq phonemes = transduce(form, res.g2p);
  if (method == Method::kFusion) {
    for (const Symbol& p : phonemes) res.inventory.decompose(p);  // validates
    return phonemes;
  }
  SymbolSeq out;
  for (size_t i = 0; i < phonemes.size(); ++i) {
    if (i) out.emplace_back(kBoundaryToken);
    const FeatureBundle& bundle = res.inventory.decompose(phonemes[i]);
    out.insert(out.end(), bundle.begin(), bundle.end());
  }
  return out;
}

EncodedSample encode_baseline(const ReinflectionSample& s, const Vocabularies& v) {
  return assemble(s, Method::kBaseline, v, segment(s.src_form), segment(s.trg_form));
}

EncodedSample encode_features(const ReinflectionSample& s, const LanguageResources& res,
                              const Vocabularies& v) {
  return assemble(s, Method::kFeatures, v, form_symbols(s.src_form, Method::kFeatures, res),
                  form_symbols(s.trg_form, Method::kFeatures, res));
}

EncodedSample encode_fusion(const ReinflectionSample& s, const LanguageResources& res,
                            const Vocabularies& v) {
  EncodedSample e =
      assemble(s, Method::kFusion, v, form_symbols(s.src_form, Method::kFusion, res),
               form_symbols(s.trg_form, Method::kFusion, res));
  e.src_feature_groups.reserve(e.src_form.size());
  for (const Symbol& p : e.src_form) {
    std::vector<int> group;
    for (const std::string& f : res.inventory.decompose(p)) {
      int id = v.features.index(f);
      if (id == kUnk) ++e.unk_count;
      group.push_back(id);
    }
    e.src_feature_groups.push_back(std::move(group));
  }
  return e;
}

EncodedSample encode(const ReinflectionSample& s, const LanguageResources& res,
                     const Vocabularies& v) {
  switch (v.method) {
    case Method::kBaseline: return encode_baseline(s, v);
    case Method::kFeatures: return encode_features(s, res, v);
    case Method::kFusion: return encode_fusion(s, res, v);
  }
  throw Error("bad method");
}

std::vector<EncodedSample> encode_all(std::span<const ReinflectionSample> samples,
                                      const LanguageResources& res, const Vocabularies& v) {
  std::vector<EncodedSample> out;
  out.reserve(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    try {
      out.push_back(encode(samples[i], res, v));
    } catch (const Error& e) {
      throw EncodingError("sample " + std::to_string(i) + " (" + samples[i].src_form +
                          " -> " + samples[i].trg_form + "): " + e.what());
    }
  }
  return out;
}

SymbolSeq prediction_symbols(std::span<const int> prediction, const Vocabulary& target) {
  SymbolSeq out;
  for (int id : prediction) {
    if (id == kEos) break;
    if (id == kBos || id == kPad) continue;
    if (id < 0 || static_cast<size_t>(id) >= target.size()) {
      out.emplace_back(kUnkToken);
      continue;
    }
    out.push_back(target.token(id));
  }
  return out;
}

std::string symbols_to_graphemes(std::span<const Symbol> symbols, Method method,
                                 const LanguageResources& res) {
  auto special = [](const Symbol& s) {
    return std::find(kSpecials.begin(), kSpecials.end(), s) != kSpecials.end();
  };
  if (method == Method::kBaseline) {
    std::string out;
    for (const Symbol& s : symbols) {
      if (!special(s)) out += s;
    }
    return out;
  }
  SymbolSeq phonemes;
  if (method == Method::kFusion) {
    for (const Symbol& s : symbols) {
      phonemes.push_back(res.inventory.contains(s) ? s : std::string(kOovSymbol));
    }
  } else if (!symbols.empty()) {
    std::vector<std::string> bundle;
    for (const Symbol& s : symbols) {
      if (s == kBoundaryToken) {
        phonemes.push_back(res.inventory.compose_lenient(bundle));
        bundle.clear();
      } else {
        bundle.push_back(s);
      }
    }
    phonemes.push_back(res.inventory.compose_lenient(bundle));
  }
  return join(transduce_lenient(phonemes, res.p2g));
}

std::string decode_to_graphemes(std::span<const int> prediction, const Vocabularies& v,
                                const LanguageResources& res) {
  SymbolSeq symbols = prediction_symbols(prediction, v.target);
  return symbols_to_graphemes(symbols, v.method, res);
}

}  // namespace morphoton
