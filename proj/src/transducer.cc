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

#include "morphoton/transducer.h"

#include <algorithm>

namespace morphoton {

size_t EditScript::cost() const {
  return static_cast<size_t>(std::count_if(actions.begin(), actions.end(), [](const auto& a) {
    return a.kind != EditKind::kCopy;
  }));
}

EditScript oracle_align(std::span<const Symbol> src, std::span<const Symbol> trg) {
  const size_t n = src.size(), m = trg.size();
  // cost[i][j]: cheapest script turning src[i:] into trg[j:]
  std::vector<std::vector<size_t>> cost(n + 1, std::vector<size_t>(m + 1, 0));
  for (size_t i = n + 1; i-- > 0;) {
    for (size_t j = m + 1; j-- > 0;) {
      if (i == n && j == m) continue;
      size_t best = SIZE_MAX;
      if (i < n && j < m && src[i] == trg[j]) best = cost[i + 1][j + 1];
      if (i < n) best = std::min(best, cost[i + 1][j] + 1);
      if (j < m) best = std::min(best, cost[i][j + 1] + 1);
      cost[i][j] = best;
    }
  }
  EditScript script;
  script.src_len = n;
  size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && src[i] == trg[j] && cost[i][j] == cost[i + 1][j + 1]) {
      script.actions.push_back(EditAction::copy());
      ++i;
      ++j;
    } else if (i < n && cost[i][j] == cost[i + 1][j] + 1) {
      script.actions.push_back(EditAction::del());
      ++i;
    } else {
      script.actions.push_back(EditAction::insert(trg[j]));
      ++j;
    }
  }
  return script;
}

SymbolSeq apply_script(const EditScript& script, std::span<const Symbol> src) {
  if (script.src_len != src.size()) {
    throw MalformedScript("script expects " + std::to_string(script.src_len) +
                          " source symbols, got " + std::to_string(src.size()));
  }
  SymbolSeq out;
  size_t i = 0;
  for (const EditAction& a : script.actions) {
    if (a.kind == EditKind::kInsert) {
      out.push_back(a.symbol);
      continue;
    }
    if (i >= src.size()) throw MalformedScript("script reads past the end of the source");
    if (a.kind == EditKind::kCopy) out.push_back(src[i]);
    ++i;
  }
  if (i != src.size()) {
    throw MalformedScript("script consumes " + std::to_string(i) + " of " +
                          std::to_string(src.size()) + " source symbols");
  }
  return out;
}

SymbolSeq apply_repaired(std::span<const EditAction> actions, std::span<const Symbol> src) {
  SymbolSeq out;
  size_t i = 0;
  for (const EditAction& a : actions) {
    if (a.kind == EditKind::kInsert) {
      out.push_back(a.symbol);
    } else if (i < src.size()) {
      if (a.kind == EditKind::kCopy) out.push_back(src[i]);
      ++i;
    }
  }
  return out;
}

std::string action_token(const EditAction& a) {
  switch (a.kind) {
    case EditKind::kCopy: return "C";
    case EditKind::kDelete: return "D";
    case EditKind::kInsert: return "I(" + a.symbol + ")";
  }
  return "?";
}

EditAction parse_action(std::string_view token) {
  if (token == "C") return EditAction::copy();
  if (token == "D") return EditAction::del();
  if (token.size() > 3 && token.substr(0, 2) == "I(" && token.back() == ')') {
    return EditAction::insert(std::string(token.substr(2, token.size() - 3)));
  }
  throw MalformedScript("bad action '" + std::string(token) + "'");
}

std::string format_script(const EditScript& script) {
  std::string out;
  for (const EditAction& a : script.actions) {
    if (!out.empty()) out += ' ';
    out += action_token(a);
  }
  return out;
}

EditScript parse_script(std::string_view text, size_t src_len) {
  EditScript s;
  s.src_len = src_len;
  size_t consumed = 0;
  for (const std::string& tok : split_ws(text)) {
    s.actions.push_back(parse_action(tok));
    consumed += s.actions.back().kind != EditKind::kInsert;
  }
  if (consumed != src_len) {
    throw MalformedScript("script consumes " + std::to_string(consumed) + " symbols, source has " +
                          std::to_string(src_len));
  }
  return s;
}

Vocabulary action_vocabulary(const Vocabulary& target) {
  Vocabulary v(VocabKind::kAction);
  v.add("C");
  v.add("D");
  for (size_t i = kNumSpecials; i < target.size(); ++i) {
    v.add(action_token(EditAction::insert(target.token(static_cast<int>(i)))));
  }
  // The boundary token is a legitimate insert for feature sequences.
  v.add(action_token(EditAction::insert(std::string(kBoundaryToken))));
  return v;
}

std::vector<int> script_ids(const EditScript& script, const Vocabulary& actions) {
  std::vector<int> ids{kBos};
  for (const EditAction& a : script.actions) ids.push_back(actions.index(action_token(a)));
  ids.push_back(kEos);
  return ids;
}

std::vector<EditAction> ids_to_actions(std::span<const int> ids, const Vocabulary& actions) {
  std::vector<EditAction> out;
  for (int id : ids) {
    if (id == kEos) break;
    if (Vocabulary::is_special(id) || id < 0 || static_cast<size_t>(id) >= actions.size()) {
      continue;
    }
    out.push_back(parse_action(actions.token(id)));
  }
  return out;
}

}  // namespace morphoton
