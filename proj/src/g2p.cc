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

#include "morphoton/g2p.h"

#include <algorithm>
#include <set>

namespace morphoton {
namespace {

constexpr std::string_view kArrow = "->";
constexpr std::string_view kBoundary = "#";

std::string strip_comment(std::string_view line) {
  size_t pos = line.find(';');
  return std::string(trim(line.substr(0, pos)));
}

struct RuleText {
  SymbolSeq pattern;
  SymbolSeq replacement;
  std::optional<RuleContext> left;
  std::optional<RuleContext> right;
};

RuleText parse_rule(std::string_view text, const std::string& origin, int line) {
  size_t arrow = text.find(kArrow);
  if (arrow == std::string_view::npos) {
    throw GrammarParseError(origin, line, "expected 'pattern -> replacement'");
  }
  RuleText r;
  r.pattern = segment(text.substr(0, arrow));
  if (r.pattern.empty()) throw GrammarParseError(origin, line, "empty pattern");
  for (const Symbol& s : r.pattern) {
    if (s == kBoundary) {
      throw GrammarParseError(origin, line, "'#' is not allowed in a pattern");
    }
  }
  std::string_view rhs = text.substr(arrow + kArrow.size());
  size_t slash = rhs.find('/');
  r.replacement = segment(rhs.substr(0, slash));
  if (slash == std::string_view::npos) return r;

  std::string_view ctx = rhs.substr(slash + 1);
  size_t focus = ctx.find('_');
  if (focus == std::string_view::npos || ctx.find('_', focus + 1) != std::string_view::npos) {
    throw GrammarParseError(origin, line, "context needs exactly one '_'");
  }
  SymbolSeq left = segment(ctx.substr(0, focus));
  SymbolSeq right = segment(ctx.substr(focus + 1));
  if (!left.empty()) {
    RuleContext c;
    if (left.front() == kBoundary) {
      c.boundary = true;
      left.erase(left.begin());
    }
    c.symbols = std::move(left);
    r.left = std::move(c);
  }
  if (!right.empty()) {
    RuleContext c;
    if (right.back() == kBoundary) {
      c.boundary = true;
      right.pop_back();
    }
    c.symbols = std::move(right);
    r.right = std::move(c);
  }
  for (const auto* c : {&r.left, &r.right}) {
    if (!*c) continue;
    for (const Symbol& s : (*c)->symbols) {
      if (s == kBoundary) {
        throw GrammarParseError(origin, line,
                                "'#' may only sit at the outer edge of a context");
      }
    }
  }
  return r;
}

bool left_holds(const RuleContext& ctx, std::span<const Symbol> word, size_t pos) {
  size_t n = ctx.symbols.size();
  if (n > pos) return false;
  if (ctx.boundary && pos != n) return false;
  return std::equal(ctx.symbols.begin(), ctx.symbols.end(), word.begin() + (pos - n));
}

bool right_holds(const RuleContext& ctx, std::span<const Symbol> word, size_t pos) {
  size_t n = ctx.symbols.size();
  if (pos + n > word.size()) return false;
  if (ctx.boundary && pos + n != word.size()) return false;
  return std::equal(ctx.symbols.begin(), ctx.symbols.end(), word.begin() + pos);
}

bool applies(const RewriteRule& rule, std::span<const Symbol> word, size_t pos) {
  size_t len = rule.pattern.size();
  if (pos + len > word.size()) return false;
  if (!std::equal(rule.pattern.begin(), rule.pattern.end(), word.begin() + pos)) {
    return false;
  }
  if (rule.left && !left_holds(*rule.left, word, pos)) return false;
  if (rule.right && !right_holds(*rule.right, word, pos + len)) return false;
  return true;
}

// Index of the winning rule at `pos`, or -1.
long select_rule(const Grammar& g, std::span<const Symbol> word, size_t pos) {
  long best = -1;
  size_t best_len = 0;
  bool best_is_override = false;
  for (size_t i = 0; i < g.rules.size(); ++i) {
    const RewriteRule& r = g.rules[i];
    if (r.pattern.size() < best_len) continue;
    if (!applies(r, word, pos)) continue;
    auto ov = g.frequency_overrides.find(r.pattern);
    bool is_override = ov != g.frequency_overrides.end() && ov->second == r.replacement;
    if (r.pattern.size() > best_len) {
      best = static_cast<long>(i);
      best_len = r.pattern.size();
      best_is_override = is_override;
    } else if (is_override && !best_is_override) {
      best = static_cast<long>(i);
      best_is_override = true;
    }
  }
  return best;
}

template <typename OnMiss>
SymbolSeq run(std::span<const Symbol> word, const Grammar& g,
              std::vector<TransductionStep>* trace, OnMiss on_miss) {
  SymbolSeq out;
  size_t pos = 0;
  while (pos < word.size()) {
    long r = select_rule(g, word, pos);
    if (r < 0) {
      on_miss(pos, out);
      ++pos;
      continue;
    }
    const RewriteRule& rule = g.rules[static_cast<size_t>(r)];
    out.insert(out.end(), rule.replacement.begin(), rule.replacement.end());
    if (trace) {
      trace->push_back({pos, pos + rule.pattern.size(), static_cast<size_t>(r)});
    }
    pos += rule.pattern.size();
  }
  return out;
}

}  // namespace

std::string_view direction_name(Direction d) {
  return d == Direction::kG2P ? "g2p" : "p2g";
}

Direction parse_direction(std::string_view text) {
  if (text == "g2p") return Direction::kG2P;
  if (text == "p2g") return Direction::kP2G;
  throw Error("unknown direction '" + std::string(text) + "'");
}

size_t Grammar::max_lookahead() const {
  size_t best = 0;
  for (const RewriteRule& r : rules) {
    size_t n = r.pattern.size();
    if (r.right) n += r.right->symbols.size() + (r.right->boundary ? 1 : 0);
    best = std::max(best, n);
  }
  return best;
}

CompletenessError::CompletenessError(const std::string& origin,
                                     std::vector<std::string> missing)
    : Error([&] {
        std::string msg = origin + ": no unconditioned rule for";
        for (const auto& m : missing) msg += " '" + m + "'";
        return msg;
      }()),
      missing_(std::move(missing)) {}

Grammar parse_grammar(std::string_view text, const std::string& origin) {
  Grammar g;
  bool have_direction = false;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = strip_comment(raw);
    if (line.empty()) continue;
    auto header = [&](std::string_view key) -> std::optional<std::string> {
      if (line.rfind(key, 0) != 0) return std::nullopt;
      return std::string(trim(std::string_view(line).substr(key.size())));
    };
    if (auto v = header("language:")) {
      g.language = *v;
    } else if (auto v = header("direction:")) {
      try {
        g.direction = parse_direction(*v);
      } catch (const Error& e) {
        throw GrammarParseError(origin, line_no, e.what());
      }
      have_direction = true;
    } else if (auto v = header("alphabet:")) {
      for (const std::string& tok : split_ws(*v)) {
        SymbolSeq seg = segment(tok);
        if (seg.size() != 1) {
          throw GrammarParseError(origin, line_no,
                                  "alphabet entry '" + tok + "' is not one symbol");
        }
        g.alphabet.push_back(seg.front());
      }
    } else if (auto v = header("override:")) {
      RuleText r = parse_rule(*v, origin, line_no);
      if (r.left || r.right) {
        throw GrammarParseError(origin, line_no, "overrides take no context");
      }
      g.frequency_overrides[r.pattern] = r.replacement;
    } else {
      RuleText r = parse_rule(line, origin, line_no);
      RewriteRule rule;
      rule.pattern = std::move(r.pattern);
      rule.replacement = std::move(r.replacement);
      rule.left = std::move(r.left);
      rule.right = std::move(r.right);
      rule.rank = static_cast<int>(g.rules.size());
      rule.line = line_no;
      g.rules.push_back(std::move(rule));
    }
  }
  if (g.language.empty()) throw GrammarParseError(origin, line_no, "missing 'language:'");
  if (!have_direction) throw GrammarParseError(origin, line_no, "missing 'direction:'");

  // An override with no matching rule becomes a rule of its own.
  for (const auto& [pattern, replacement] : g.frequency_overrides) {
    bool found = std::any_of(g.rules.begin(), g.rules.end(), [&](const RewriteRule& r) {
      return r.pattern == pattern && r.replacement == replacement;
    });
    if (!found) {
      RewriteRule rule;
      rule.pattern = pattern;
      rule.replacement = replacement;
      rule.rank = static_cast<int>(g.rules.size());
      g.rules.push_back(std::move(rule));
    }
  }

  std::vector<std::string> missing;
  for (const Symbol& a : g.alphabet) {
    bool covered = std::any_of(g.rules.begin(), g.rules.end(), [&](const RewriteRule& r) {
      return r.pattern.size() == 1 && r.pattern[0] == a && !r.left && !r.right;
    });
    if (!covered) missing.push_back(a);
  }
  if (!missing.empty()) throw CompletenessError(origin, std::move(missing));
  return g;
}

Grammar load_grammar(const std::string& path) {
  return parse_grammar(read_file(path), path);
}

SymbolSeq transduce(std::span<const Symbol> word, const Grammar& grammar) {
  return run(word, grammar, nullptr, [&](size_t pos, SymbolSeq&) {
    throw ConversionError(pos, word[pos]);
  });
}

SymbolSeq transduce(std::string_view word, const Grammar& grammar) {
  SymbolSeq symbols = segment(word);
  return transduce(std::span<const Symbol>(symbols), grammar);
}

SymbolSeq transduce_lenient(std::span<const Symbol> word, const Grammar& grammar) {
  return run(word, grammar, nullptr, [](size_t, SymbolSeq& out) {
    out.emplace_back(kBoundary);  // same glyph as the OOV marker
  });
}

std::vector<TransductionStep> transduce_trace(std::span<const Symbol> word,
                                              const Grammar& grammar) {
  std::vector<TransductionStep> trace;
  run(word, grammar, &trace, [&](size_t pos, SymbolSeq&) {
    throw ConversionError(pos, word[pos]);
  });
  return trace;
}

double AuditReport::rate() const {
  if (entries.empty()) return 1.0;
  return static_cast<double>(passed) / static_cast<double>(entries.size());
}

std::vector<const AuditEntry*> AuditReport::failures() const {
  std::vector<const AuditEntry*> out;
  for (const AuditEntry& e : entries) {
    if (!e.pass) out.push_back(&e);
  }
  return out;
}

AuditReport roundtrip_audit(const Grammar& g2p, const Grammar& p2g,
                            std::span<const std::string> corpus) {
  AuditReport report;
  report.entries.reserve(corpus.size());
  for (const std::string& word : corpus) {
    AuditEntry e;
    e.word = word;
    try {
      SymbolSeq graphemes = segment(word);
      SymbolSeq phonemes = transduce(std::span<const Symbol>(graphemes), g2p);
      SymbolSeq back = transduce(std::span<const Symbol>(phonemes), p2g);
      e.round_trip = join(back);
      e.pass = (back == graphemes);
    } catch (const Error& err) {
      e.error = err.what();
    }
    if (e.pass) ++report.passed;
    report.entries.push_back(std::move(e));
  }
  return report;
}

std::map<SymbolSeq, SymbolSeq> suggest_overrides(const Grammar& g2p, const Grammar& p2g,
                                                 std::span<const std::string> corpus) {
  // p2g patterns with more than one unconditioned spelling
  std::map<SymbolSeq, std::vector<SymbolSeq>> candidates;
  for (const RewriteRule& r : p2g.rules) {
    if (r.left || r.right) continue;
    auto& spellings = candidates[r.pattern];
    if (std::find(spellings.begin(), spellings.end(), r.replacement) == spellings.end()) {
      spellings.push_back(r.replacement);
    }
  }
  std::map<std::pair<SymbolSeq, SymbolSeq>, size_t> counts;
  for (const std::string& word : corpus) {
    SymbolSeq graphemes = segment(word);
    std::vector<TransductionStep> trace;
    try {
      trace = transduce_trace(graphemes, g2p);
    } catch (const ConversionError&) {
      continue;
    }
    for (const TransductionStep& step : trace) {
      const RewriteRule& rule = g2p.rules[step.rule];
      SymbolSeq source(graphemes.begin() + static_cast<long>(step.begin),
                       graphemes.begin() + static_cast<long>(step.end));
      ++counts[{rule.replacement, source}];
    }
  }
  std::map<SymbolSeq, SymbolSeq> out;
  for (const auto& [pattern, spellings] : candidates) {
    if (spellings.size() < 2) continue;
    const SymbolSeq* best = &spellings.front();
    size_t best_count = 0;
    for (const SymbolSeq& s : spellings) {
      auto it = counts.find({pattern, s});
      size_t c = it == counts.end() ? 0 : it->second;
      if (c > best_count) {
        best = &s;
        best_count = c;
      }
    }
    out[pattern] = *best;
  }
  return out;
}

}  // namespace morphoton
