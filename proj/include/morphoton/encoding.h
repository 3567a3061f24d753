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
// Turning reinflection samples into token-index sequences.
//
// Source layout, for every method:
//   <s> src_tags <sep> form <sep> trg_tags </s>
// Target layout:
//   <s> form </s>
//
// The form region holds graphemes (baseline), distinctive-feature tokens
// with a `¦` between phonemes (feat_seq), or phoneme tokens each carrying
// its own feature group (fusion).

#ifndef MORPHOTON_ENCODING_H_
#define MORPHOTON_ENCODING_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphoton/corpus.h"
#include "morphoton/resources.h"

namespace morphoton {

enum class Method { kBaseline, kFeatures, kFusion };

/// "baseline", "feat_seq", "fusion".
std::string_view method_name(Method m);
/// Also accepts the short forms "feat" and "fuse".
Method parse_method(std::string_view text);

enum class VocabKind { kGrapheme, kPhoneme, kFeature, kTag, kAction };

std::string_view vocab_kind_name(VocabKind k);

inline constexpr std::string_view kPadToken = "<pad>";
inline constexpr std::string_view kBosToken = "<s>";
inline constexpr std::string_view kEosToken = "</s>";
inline constexpr std::string_view kUnkToken = "<unk>";
inline constexpr std::string_view kSepToken = "<sep>";
inline constexpr std::string_view kBoundaryToken = "¦";

inline constexpr int kPad = 0;
inline constexpr int kBos = 1;
inline constexpr int kEos = 2;
inline constexpr int kUnk = 3;
inline constexpr int kSep = 4;
inline constexpr int kBoundary = 5;
inline constexpr int kNumSpecials = 6;

class VocabularyError : public Error {
 public:
  using Error::Error;
};

/// Dense token <-> index map. The six specials always occupy 0..5.
class Vocabulary {
 public:
  explicit Vocabulary(VocabKind kind = VocabKind::kGrapheme);

  /// Specials, then the distinct non-special `tokens` in sorted order.
  static Vocabulary build(VocabKind kind, std::vector<std::string> tokens);

  /// Returns the existing index if present.
  int add(std::string_view token);
  /// kUnk for unknown tokens.
  int index(std::string_view token) const;
  std::optional<int> find(std::string_view token) const;
  const std::string& token(int id) const;
  bool contains(std::string_view token) const { return find(token).has_value(); }

  size_t size() const { return tokens_.size(); }
  VocabKind kind() const { return kind_; }
  const std::vector<std::string>& tokens() const { return tokens_; }
  static bool is_special(int id) { return id >= 0 && id < kNumSpecials; }

  /// One token per line; line number is the index.
  std::string serialize() const;
  static Vocabulary deserialize(std::string_view text, VocabKind kind);
  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path, VocabKind kind);

  bool operator==(const Vocabulary& other) const {
    return kind_ == other.kind_ && tokens_ == other.tokens_;
  }

 private:
  VocabKind kind_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

/// Source vocabulary: specials, form alphabet, tags. Target: specials and
/// form alphabet. `features` is only populated for fusion.
struct Vocabularies {
  Method method = Method::kBaseline;
  Vocabulary source;
  Vocabulary target;
  Vocabulary features{VocabKind::kFeature};
};

/// Graphemes are collected from `train`; phonemes and features come from
/// the whole inventory. Tags always come from `train`.
Vocabularies build_vocabularies(std::span<const ReinflectionSample> train, Method method,
                                const LanguageResources& res);

struct EncodedSample {
  Method method = Method::kBaseline;
  std::vector<int> src;
  std::vector<int> trg;
  /// Fusion only: feature-vocabulary indices for src[form_begin + i].
  std::vector<std::vector<int>> src_feature_groups;
  size_t form_begin = 0;  // first form position in src
  size_t form_end = 0;    // one past the last
  SymbolSeq src_form;     // form region as symbols
  SymbolSeq trg_form;
  size_t unk_count = 0;
};

/// Form region symbols of `form` under `method`. Throws ConversionError
/// when g2p fails and UnknownPhoneme when it produces a symbol outside the
/// inventory.
SymbolSeq form_symbols(std::string_view form, Method method, const LanguageResources& res);

EncodedSample encode_baseline(const ReinflectionSample& s, const Vocabularies& v);
EncodedSample encode_features(const ReinflectionSample& s, const LanguageResources& res,
                              const Vocabularies& v);
EncodedSample encode_fusion(const ReinflectionSample& s, const LanguageResources& res,
                            const Vocabularies& v);
EncodedSample encode(const ReinflectionSample& s, const LanguageResources& res,
                     const Vocabularies& v);

class EncodingError : public Error {
 public:
  using Error::Error;
};

/// Encodes a whole split. Conversion failures are rethrown as EncodingError
/// naming the sample.
std::vector<EncodedSample> encode_all(std::span<const ReinflectionSample> samples,
                                      const LanguageResources& res, const Vocabularies& v);

/// Tokens of a predicted target sequence up to the first EOS. BOS and PAD
/// are dropped; other specials are kept as tokens.
SymbolSeq prediction_symbols(std::span<const int> prediction, const Vocabulary& target);

/// Maps form-region symbols of `method` back to a grapheme string. Never
/// throws on malformed input: bad segments become "#".
std::string symbols_to_graphemes(std::span<const Symbol> symbols, Method method,
                                 const LanguageResources& res);

std::string decode_to_graphemes(std::span<const int> prediction, const Vocabularies& v,
                                const LanguageResources& res);

}  // namespace morphoton

#endif  // MORPHOTON_ENCODING_H_
