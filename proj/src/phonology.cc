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

#include "morphoton/phonology.h"

#include <algorithm>
#include <array>

namespace morphoton {
namespace {

constexpr std::string_view kLong = "long";

constexpr std::array<FeatureCategory, 3> kConsonantSlots = {
    FeatureCategory::kVoicing, FeatureCategory::kPlace,
    FeatureCategory::kManner};
constexpr std::array<FeatureCategory, 3> kVowelSlots = {
    FeatureCategory::kHeight, FeatureCategory::kBackness,
    FeatureCategory::kRoundness};

int category_rank(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::kVoicing:
    case FeatureCategory::kHeight:
      return 0;
    case FeatureCategory::kPlace:
    case FeatureCategory::kBackness:
      return 1;
    case FeatureCategory::kManner:
    case FeatureCategory::kRoundness:
      return 2;
    case FeatureCategory::kLength:
      return 3;
  }
  return 4;
}

bool is_vowel_category(FeatureCategory c) {
  return c == FeatureCategory::kHeight || c == FeatureCategory::kBackness ||
         c == FeatureCategory::kRoundness;
}

}  // namespace

std::string_view category_name(FeatureCategory c) {
  switch (c) {
    case FeatureCategory::kVoicing: return "voicing";
    case FeatureCategory::kPlace: return "place";
    case FeatureCategory::kManner: return "manner";
    case FeatureCategory::kHeight: return "height";
    case FeatureCategory::kBackness: return "backness";
    case FeatureCategory::kRoundness: return "roundness";
    case FeatureCategory::kLength: return "length";
  }
  return "?";
}

PhonemeInventory PhonemeInventory::load(const std::string& path) {
  try {
    return parse(read_file(path));
  } catch (const InventoryError& e) {
    throw InventoryError(path + ": " + e.what());
  }
}

PhonemeInventory PhonemeInventory::parse(std::string_view tsv) {
  PhonemeInventory inv;
  inv.categories_.emplace(std::string(kLong), FeatureCategory::kLength);
  int line_no = 0;
  for (const std::string& raw : split(tsv, '\n')) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3) {
      throw InventoryError(where() + "expected 3 tab-separated columns");
    }
    Phoneme p;
    p.symbol = std::string(trim(cols[0]));
    if (segment(p.symbol).size() != 1) {
      throw InventoryError(where() + "'" + p.symbol +
                           "' is not a single segment");
    }
    std::string kind(trim(cols[1]));
    if (kind == "vowel") {
      p.kind = PhonemeKind::kVowel;
    } else if (kind == "consonant") {
      p.kind = PhonemeKind::kConsonant;
    } else {
      throw InventoryError(where() + "unknown kind '" + kind + "'");
    }
    for (const std::string& f : split(cols[2], ',')) {
      p.features.emplace_back(trim(f));
    }
    const auto& slots =
        p.kind == PhonemeKind::kVowel ? kVowelSlots : kConsonantSlots;
    if (p.features.size() < 3 || p.features.size() > 4 ||
        (p.features.size() == 4 && p.features[3] != kLong)) {
      throw InventoryError(where() + "bundle must be 3 features plus an "
                                     "optional trailing 'long'");
    }
    for (size_t i = 0; i < 3; ++i) {
      const std::string& name = p.features[i];
      if (name.empty() || name == kLong) {
        throw InventoryError(where() + "bad feature in slot " +
                             std::to_string(i + 1));
      }
      auto [it, inserted] = inv.categories_.emplace(name, slots[i]);
      if (!inserted && it->second != slots[i]) {
        throw InventoryError(where() + "feature '" + name +
                             "' used as both " +
                             std::string(category_name(it->second)) + " and " +
                             std::string(category_name(slots[i])));
      }
    }
    if (inv.by_symbol_.count(p.symbol)) {
      throw InventoryError(where() + "duplicate phoneme '" + p.symbol + "'");
    }
    std::string key = bundle_key(p.features);
    if (inv.by_bundle_.count(key)) {
      throw InventoryError(where() + "'" + p.symbol + "' has the same bundle as '" +
                           inv.phonemes_[inv.by_bundle_[key]].symbol + "'");
    }
    inv.by_symbol_.emplace(p.symbol, inv.phonemes_.size());
    inv.by_bundle_.emplace(key, inv.phonemes_.size());
    inv.phonemes_.push_back(std::move(p));
  }
  return inv;
}

const FeatureBundle& PhonemeInventory::decompose(std::string_view symbol) const {
  auto it = by_symbol_.find(std::string(symbol));
  if (it == by_symbol_.end()) throw UnknownPhoneme(std::string(symbol));
  return phonemes_[it->second].features;
}

std::string PhonemeInventory::compose(std::span<const std::string> bundle) const {
  std::vector<std::pair<FeatureCategory, const std::string*>> tagged;
  tagged.reserve(bundle.size());
  for (const std::string& f : bundle) {
    auto it = categories_.find(f);
    if (it == categories_.end()) throw UnknownFeature(f);
    tagged.emplace_back(it->second, &f);
  }
  if (tagged.size() < 3 || tagged.size() > 4) return std::string(kOovSymbol);
  // A bundle mixing vowel and consonant categories, or repeating a
  // category, cannot match any row.
  size_t non_length = 0;
  bool vowel = false, consonant = false;
  for (const auto& [cat, name] : tagged) {
    if (cat == FeatureCategory::kLength) continue;
    ++non_length;
    (is_vowel_category(cat) ? vowel : consonant) = true;
  }
  if (non_length != 3 || (vowel && consonant)) return std::string(kOovSymbol);
  std::stable_sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    return category_rank(a.first) < category_rank(b.first);
  });
  for (size_t i = 1; i < tagged.size(); ++i) {
    if (tagged[i].first == tagged[i - 1].first) return std::string(kOovSymbol);
  }
  std::vector<std::string> canonical;
  canonical.reserve(tagged.size());
  for (const auto& t : tagged) canonical.push_back(*t.second);
  auto it = by_bundle_.find(bundle_key(canonical));
  if (it == by_bundle_.end()) return std::string(kOovSymbol);
  return phonemes_[it->second].symbol;
}

std::string PhonemeInventory::compose_lenient(
    std::span<const std::string> bundle) const {
  for (const std::string& f : bundle) {
    if (!is_feature(f)) return std::string(kOovSymbol);
  }
  return compose(bundle);
}

bool PhonemeInventory::contains(std::string_view symbol) const {
  return by_symbol_.count(std::string(symbol)) > 0;
}

bool PhonemeInventory::is_feature(std::string_view name) const {
  return categories_.find(name) != categories_.end();
}

std::optional<FeatureCategory> PhonemeInventory::category_of(
    std::string_view feature) const {
  auto it = categories_.find(feature);
  if (it == categories_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> PhonemeInventory::feature_names() const {
  std::vector<std::string> out;
  for (const auto& [name, cat] : categories_) out.push_back(name);
  return out;
}

std::vector<std::string> PhonemeInventory::phoneme_symbols() const {
  std::vector<std::string> out;
  for (const Phoneme& p : phonemes_) out.push_back(p.symbol);
  std::sort(out.begin(), out.end());
  return out;
}

std::string PhonemeInventory::bundle_key(std::span<const std::string> canonical) {
  std::string key;
  for (const std::string& f : canonical) {
    key += f;
    key += ',';
  }
  return key;
}

}  // namespace morphoton
