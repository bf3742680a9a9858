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

// Generates the bundled gold corpus and its ambiguity manifest.
//
//   make_corpus --data data/korean [--count N] [--seed S]
//
// An eonjeol goes into the manifest when its clean diphone stream has more
// than one distinct zero-mismatch rendering. Records whose own rendering is
// not among those readings are dropped.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "exact_segmenter.hpp"
#include "morphdec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace morphdec;

int main(int argc, char** argv) {
  CLI::App app{"generate the gold corpus and ambiguity manifest"};
  std::string data;
  CorpusGenConfig cfg;
  app.add_option("--data", data, "resource directory")->required()->check(CLI::ExistingDirectory);
  app.add_option("--count", cfg.count, "eonjeols to generate")->capture_default_str();
  app.add_option("--seed", cfg.seed, "generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const Resources res = load_resources(ResourcePaths::from_dirs(data, data));
    const auto& entries = res.model.entries;
    const auto generated = generate_corpus(res.model, res.phonemes, res.inventory, cfg);

    std::string corpus = "# eonjeol\tgold rendering (orthographic, '+' inside an eojeol)\n# seed=" +
                         std::to_string(cfg.seed) + " count=" + std::to_string(cfg.count) + "\n";
    std::string manifest = "# eonjeol\tdistinct zero-mismatch renderings, '|' separated\n";
    std::size_t kept = 0, ambiguous = 0, dropped = 0;
    for (const GeneratedEonjeol& g : generated) {
      const auto clean = diphonize(res.inventory, tokenize_yale(res.phonemes, g.text));
      const auto readings =
          oracle::renderings(oracle::segmentations(clean, entries, res.model.grammar, res.inventory),
                             entries, res.model.grammar.tags);
      if (!readings.count(g.rendering)) {
        ++dropped;
        continue;
      }
      corpus += g.text + '\t' + g.rendering + '\n';
      ++kept;
      if (readings.size() > 1) {
        manifest += g.text + '\t' + join(std::vector<std::string>(readings.begin(), readings.end()), "|") + '\n';
        ++ambiguous;
      }
    }
    write_file_atomic(fs::path(data) / "corpus.tsv", corpus);
    write_file_atomic(fs::path(data) / "ambiguous.tsv", manifest);
    std::cerr << "kept " << kept << ", ambiguous " << ambiguous << ", dropped " << dropped << "\n";
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  return 0;
}
