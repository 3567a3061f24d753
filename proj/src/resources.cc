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

#include "morphoton/resources.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

namespace morphoton {

namespace fs = std::filesystem;

std::string data_dir() {
  if (const char* env = std::getenv("MORPHOTON_DATA_DIR"); env && *env) return env;
  return MORPHOTON_DEFAULT_DATA_DIR;
}

std::vector<std::string> known_languages(const std::string& dir) {
  std::vector<std::string> out;
  fs::path grammars = fs::path(dir) / "grammars";
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(grammars, ec)) {
    if (entry.path().extension() != ".g2p") continue;
    fs::path p2g = entry.path();
    p2g.replace_extension(".p2g");
    if (fs::exists(p2g)) out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

LanguageResources load_resources(const std::string& language, const std::string& dir) {
  fs::path root(dir);
  fs::path g2p = root / "grammars" / (language + ".g2p");
  fs::path p2g = root / "grammars" / (language + ".p2g");
  if (language.empty() || !fs::exists(g2p) || !fs::exists(p2g)) {
    throw ResourceError("no grammars for language '" + language + "' under " +
                        (root / "grammars").string());
  }
  fs::path inv = root / "phonology" / "inventory.tsv";
  if (!fs::exists(inv)) throw ResourceError("missing " + inv.string());
  LanguageResources r{language, PhonemeInventory::load(inv.string()),
                      load_grammar(g2p.string()), load_grammar(p2g.string())};
  if (r.g2p.direction != Direction::kG2P || r.p2g.direction != Direction::kP2G) {
    throw ResourceError("grammar direction mismatch for '" + language + "'");
  }
  return r;
}

}  // namespace morphoton
