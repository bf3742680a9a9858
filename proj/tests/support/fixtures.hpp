// Copyright 2026 The morphdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MORPHDEC_TESTS_FIXTURES_HPP_
#define MORPHDEC_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <sstream>
#include <string>

#include "morphdec/pipeline.hpp"

namespace morphdec::testing {

inline std::filesystem::path data_dir() { return MORPHDEC_DATA_DIR; }

// The bundled resources, loaded once per process.
inline const Resources& bundled() {
  static const Resources r = load_resources(ResourcePaths::from_dirs(data_dir(), data_dir()));
  return r;
}

inline std::size_t entry_index(const Resources& r, const std::string& surface, const std::string& left_pos) {
  for (std::size_t k = 0; k < r.model.entries.size(); ++k) {
    const UpmEntry& e = r.model.entries[k];
    if (e.surface_header == surface && e.left_pos == left_pos) return k;
  }
  throw std::out_of_range("no entry " + surface + "/" + left_pos);
}

inline ObservationSeq observe(const Resources& r, const std::string& yale) {
  ObservationSeq obs;
  for (const Diphone& d : diphonize(r.inventory, tokenize_yale(r.phonemes, yale))) {
    obs.symbols.push_back(*r.inventory.id_of(d.symbol));
  }
  return obs;
}

inline std::istringstream stream(const std::string& s) { return std::istringstream(s); }

}  // namespace morphdec::testing

#endif  // MORPHDEC_TESTS_FIXTURES_HPP_
