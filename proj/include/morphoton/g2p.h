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
// Rule-based grapheme <-> phoneme conversion for shallow orthographies.
//
// A grammar is an ordered list of contextual rewrite rules applied in one
// left-to-right pass. At each input position the longest pattern whose
// contexts hold wins; ties go to an override for that pattern if one is
// declared, otherwise to the earliest rule in the file, so a contextual rule
// has to precede the general rule for the same pattern. Contexts are tested
// against the input tape, never against output already produced.
//
// File format (UTF-8, `;` starts a comment):
//
//   language: tr
//   direction: g2p
//   alphabet: a b c ç ...
//   c -> d͡ʒ
//   ağ -> aː
//   n -> ŋ / _ k
//   override: aː -> ağ
//
// Pattern, replacement and context fields are segmented into symbols;
// whitespace inside a field only separates symbols. In contexts `#` marks
// the word boundary.

#ifndef MORPHOTON_G2P_H_
#define MORPHOTON_G2P_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphoton/text.h"

namespace morphoton {

enum class Direction { kG2P, kP2G };

std::string_view direction_name(Direction d);
Direction parse_direction(std::string_view text);

struct RuleContext {
  SymbolSeq symbols;
  bool boundary = false;  // left: word start before symbols; right: word end after
};

struct RewriteRule {
  SymbolSeq pattern;
  SymbolSeq replacement;
  std::optional<RuleContext> left;
  std::optional<RuleContext> right;
  int rank = 0;  // position in file order
  int line = 0;
};

struct Grammar {
  std::string language;
  Direction direction = Direction::kG2P;
  SymbolSeq alphabet;
  std::vector<RewriteRule> rules;
  std::map<SymbolSeq, SymbolSeq> frequency_overrides;

  /// Longest pattern plus right context, counting a boundary as one slot.
  size_t max_lookahead() const;
};

class GrammarParseError : public Error {
 public:
  GrammarParseError(const std::string& origin, int line, const std::string& msg)
      : Error(origin + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class CompletenessError : public Error {
 public:
  CompletenessError(const std::string& origin, std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

 private:
  std::vector<std::string> missing_;
};

class ConversionError : public Error {
 public:
  ConversionError(size_t position, const std::string& symbol)
      : Error("no rule for '" + symbol + "' at position " +
              std::to_string(position)),
        position_(position),
        symbol_(symbol) {}
  size_t position() const { return position_; }
  const std::string& symbol() const { return symbol_; }

 private:
  size_t position_;
  std::string symbol_;
};

/// Parses grammar text. Every alphabet symbol must have an unconditioned
/// single-symbol rule; otherwise CompletenessError lists the missing ones.
Grammar parse_grammar(std::string_view text, const std::string& origin = "<grammar>");
Grammar load_grammar(const std::string& path);

/// One applied rule: input span [begin, end) rewritten by rules[rule].
struct TransductionStep {
  size_t begin;
  size_t end;
  size_t rule;
};

SymbolSeq transduce(std::span<const Symbol> word, const Grammar& grammar);
/// Segments `word` first.
SymbolSeq transduce(std::string_view word, const Grammar& grammar);
/// Positions with no applicable rule emit "#" and advance one symbol.
SymbolSeq transduce_lenient(std::span<const Symbol> word, const Grammar& grammar);
std::vector<TransductionStep> transduce_trace(std::span<const Symbol> word,
                                              const Grammar& grammar);

struct AuditEntry {
  std::string word;
  std::string round_trip;  // empty when conversion failed
  bool pass = false;
  std::string error;
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  size_t passed = 0;

  size_t count() const { return entries.size(); }
  /// 1.0 for an empty corpus (vacuous pass).
  double rate() const;
  std::vector<const AuditEntry*> failures() const;
};

/// Checks p2g(g2p(w)) == w for every word. Conversion errors are failures.
AuditReport roundtrip_audit(const Grammar& g2p, const Grammar& p2g,
                            std::span<const std::string> corpus);

/// For every phoneme pattern that the p2g grammar can spell more than one
/// way, counts which g2p source spelling produced it in `corpus` and
/// returns the most frequent spelling.
std::map<SymbolSeq, SymbolSeq> suggest_overrides(const Grammar& g2p, const Grammar& p2g,
                                                 std::span<const std::string> corpus);

}  // namespace morphoton

#endif  // MORPHOTON_G2P_H_
