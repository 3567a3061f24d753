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
// Locating and loading the per-language data files (phoneme inventory and
// conversion grammars).

#ifndef MORPHOTON_RESOURCES_H_
#define MORPHOTON_RESOURCES_H_

#include <string>
#include <vector>

#include "morphoton/g2p.h"
#include "morphoton/phonology.h"

namespace morphoton {

class ResourceError : public Error {
 public:
  using Error::Error;
};

/// $MORPHOTON_DATA_DIR if set, otherwise the data directory of the source tree.
std::string data_dir();

/// Language codes with both a .g2p and a .p2g grammar, sorted.
std::vector<std::string> known_languages(const std::string& dir = data_dir());

struct LanguageResources {
  std::string language;
  PhonemeInventory inventory;
  Grammar g2p;
  Grammar p2g;
};

/// Throws ResourceError for a language without grammars.
LanguageResources load_resources(const std::string& language,
                                 const std::string& dir = data_dir());

}  // namespace morphoton

#endif  // MORPHOTON_RESOURCES_H_
