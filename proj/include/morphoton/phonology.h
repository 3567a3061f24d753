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
// Phoneme inventory and the phoneme <-> distinctive-feature bijection.
//
// The inventory is read from a tab-separated table (one phoneme per row).
// Feature categories are not declared separately: a feature's category is
// the slot it occupies in a row (consonants: voicing, place, manner; vowels:
// height, backness, roundness), with the literal `long` as the only length
// value. Loading fails if a feature name shows up in two different slots.

#ifndef MORPHOTON_PHONOLOGY_H_
#define MORPHOTON_PHONOLOGY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphoton/text.h"

namespace morphoton {

enum class FeatureCategory {
  kVoicing,
  kPlace,
  kManner,
  kHeight,
  kBackness,
  kRoundness,
  kLength,
};

std::string_view category_name(FeatureCategory c);

enum class PhonemeKind { kVowel, kConsonant };

struct DistinctiveFeature {
  std::string name;
  FeatureCategory category;
};

using FeatureBundle = std::vector<std::string>;

struct Phoneme {
  std::string symbol;
  PhonemeKind kind;
  FeatureBundle features;  // canonical category order
};

class UnknownPhoneme : public Error {
 public:
  explicit UnknownPhoneme(const std::string& symbol)
      : Error("unknown phoneme '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class UnknownFeature : public Error {
 public:
  explicit UnknownFeature(const std::string& name)
      : Error("unknown feature '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class InventoryError : public Error {
 public:
  using Error::Error;
};

/// The out-of-vocabulary grapheme emitted when a bundle matches no phoneme.
inline constexpr std::string_view kOovSymbol = "#";

class PhonemeInventory {
 public:
  static PhonemeInventory load(const std::string& path);
  static PhonemeInventory parse(std::string_view tsv);

  /// Canonical-order feature bundle of a phoneme symbol.
  const FeatureBundle& decompose(std::string_view symbol) const;

  /// Phoneme whose bundle equals `bundle` up to reordering, or "#" if none.
  /// Throws UnknownFeature for names outside the feature inventory.
  std::string compose(std::span<const std::string> bundle) const;

  /// Like compose(), but unknown feature names also map to "#".
  std::string compose_lenient(std::span<const std::string> bundle) const;

  bool contains(std::string_view symbol) const;
  bool is_feature(std::string_view name) const;
  std::optional<FeatureCategory> category_of(std::string_view feature) const;

  const std::vector<Phoneme>& phonemes() const { return phonemes_; }
  /// All feature names, sorted.
  std::vector<std::string> feature_names() const;
  std::vector<std::string> phoneme_symbols() const;

 private:
  static std::string bundle_key(std::span<const std::string> canonical);

  std::vector<Phoneme> phonemes_;
  std::unordered_map<std::string, size_t> by_symbol_;
  std::unordered_map<std::string, size_t> by_bundle_;
  std::map<std::string, FeatureCategory, std::less<>> categories_;
};

}  // namespace morphoton

#endif  // MORPHOTON_PHONOLOGY_H_
