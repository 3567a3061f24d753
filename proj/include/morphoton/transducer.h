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
// Edit-action reinflection: a static-oracle stand-in for a neural
// transducer. Gold scripts come from a deterministic insert/delete
// alignment; the seq2seq backbone then learns to emit action tokens.

#ifndef MORPHOTON_TRANSDUCER_H_
#define MORPHOTON_TRANSDUCER_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphoton/encoding.h"

namespace morphoton {

enum class EditKind { kCopy, kDelete, kInsert };

struct EditAction {
  EditKind kind = EditKind::kCopy;
  Symbol symbol;  // INSERT only

  static EditAction copy() { return {EditKind::kCopy, {}}; }
  static EditAction del() { return {EditKind::kDelete, {}}; }
  static EditAction insert(Symbol s) { return {EditKind::kInsert, std::move(s)}; }
  bool operator==(const EditAction&) const = default;
};

struct EditScript {
  std::vector<EditAction> actions;
  size_t src_len = 0;

  /// Number of DELETE and INSERT actions.
  size_t cost() const;
  bool operator==(const EditScript&) const = default;
};

class MalformedScript : public Error {
 public:
  using Error::Error;
};

/// Minimum-cost script with free COPY and unit DELETE/INSERT. Ties are
/// broken COPY > DELETE > INSERT, scanning left to right.
EditScript oracle_align(std::span<const Symbol> src, std::span<const Symbol> trg);

/// Replays `script` over `src`. Throws MalformedScript unless the script
/// consumes exactly |src| symbols.
SymbolSeq apply_script(const EditScript& script, std::span<const Symbol> src);

/// Like apply_script() but never fails: COPY/DELETE past the end of the
/// source are ignored and unconsumed source symbols are deleted.
SymbolSeq apply_repaired(std::span<const EditAction> actions, std::span<const Symbol> src);

/// "C C I(a) D".
std::string format_script(const EditScript& script);
std::string action_token(const EditAction& a);
/// Inverse of action_token(); throws MalformedScript.
EditAction parse_action(std::string_view token);
EditScript parse_script(std::string_view text, size_t src_len);

/// Action vocabulary: specials, "C", "D", then "I(x)" for every non-special
/// token of `target`.
Vocabulary action_vocabulary(const Vocabulary& target);
std::vector<int> script_ids(const EditScript& script, const Vocabulary& actions);
/// Specials other than EOS are skipped; decoding stops at EOS.
std::vector<EditAction> ids_to_actions(std::span<const int> ids, const Vocabulary& actions);

}  // namespace morphoton

#endif  // MORPHOTON_TRANSDUCER_H_
