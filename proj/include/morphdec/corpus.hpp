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

#ifndef MORPHDEC_CORPUS_HPP_
#define MORPHDEC_CORPUS_HPP_

// Gold corpora and observation files.
//
// Gold corpus: `eonjeol_text<TAB>gold_morpheme_rendering` per line.
// Observation file: one eonjeol per line, diphone symbols separated by
// spaces, '#' lines are comments. A blank line is an eonjeol whose
// observation stream came out empty.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "morphdec/analyzer.hpp"
#include "morphdec/error.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/text.hpp"

namespace morphdec {

struct CorpusRecord {
  std::string text;
  std::string rendering;
};

inline std::vector<CorpusRecord> read_corpus(std::istream& in, const std::string& source = "corpus") {
  std::vector<CorpusRecord> out;
  for (const RecordLine& rec : read_records(in)) {
    auto f = split(rec.text, '\t');
    if (f.size() != 2 || f[0].empty()) {
      throw ParseError(source, rec.number, 1, "expected eonjeol_text<TAB>rendering");
    }
    out.push_back({f[0], f[1]});
  }
  return out;
}

inline std::string write_corpus(std::span<const CorpusRecord> records) {
  std::string out;
  for (const CorpusRecord& r : records) out += r.text + '\t' + r.rendering + '\n';
  return out;
}

// One symbol list per eonjeol line; blank lines give empty lists.
inline std::vector<std::vector<std::string>> read_observation_lines(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = trim(line);
    if (!v.empty() && v.front() == '#') continue;
    out.push_back(split_ws(v));
  }
  // a trailing newline does not start another record
  return out;
}

inline std::string observation_line(const ObservationSeq& obs, const DiphoneInventory& inventory) {
  return join(observation_symbols(obs, inventory), " ");
}

struct CorpusGenConfig {
  std::size_t count = 240;
  std::uint64_t seed = 1;
  std::size_t max_morphemes_per_eojeol = 4;
  std::size_t max_eojeols = 2;
  std::size_t max_diphones = 14;
  double continue_prob = 0.45;  // chance of another eojeol after a word-final morpheme
  std::vector<std::string> initial_tags = {"N_CMN", "V", "ADV"};
};

// Builds the eonjeol text for a morpheme sequence: surfaces are joined
// syllable by syllable and a vowel-less morpheme becomes the coda of the
// preceding open syllable. Returns an empty string when that is impossible.
inline std::string assemble_text(std::span<const std::size_t> seq, std::span<const UpmEntry> entries,
                                 const PhonemeTable& phonemes) {
  std::vector<std::string> syllables;
  for (std::size_t k : seq) {
    const UpmEntry& e = entries[k];
    if (!e.diphone_header.empty() && e.diphone_header.front().kind == DiphoneKind::kCoda) {
      if (syllables.empty()) return {};
      auto ph = phonemes.tokenize_segment(syllables.back());
      if (ph.empty() || !ph.back().is_vowel()) return {};
      syllables.back() += e.surface_header;
      continue;
    }
    for (const std::string& s : split(e.surface_header, '-')) syllables.push_back(s);
  }
  return join(syllables, "-");
}

struct GeneratedEonjeol {
  std::string text;
  std::vector<std::size_t> entries;
  std::string rendering;
};

// Random walks over the connectivity table. Each eojeol starts from an
// entry whose left tag descends from one of `initial_tags` and ends on a
// word-final class.
inline std::vector<GeneratedEonjeol> generate_corpus(const AnalysisModel& model,
                                                     const PhonemeTable& phonemes,
                                                     const DiphoneInventory& inventory,
                                                     const CorpusGenConfig& cfg) {
  const auto& entries = model.entries;
  const TagSet& tags = model.grammar.tags;
  auto descends = [&](const std::string& tag) {
    for (const std::string& t : tags.lineage(tag)) {
      for (const std::string& want : cfg.initial_tags) {
        if (t == want) return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> initial;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const bool coda = entries[k].diphone_header.front().kind == DiphoneKind::kCoda;
    if (!coda && descends(entries[k].left_pos)) initial.push_back(k);
  }
  if (initial.empty()) throw ValidationError("no eojeol-initial entries");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](const std::vector<std::size_t>& v) {
    std::uniform_int_distribution<std::size_t> d(0, v.size() - 1);
    return v[d(rng)];
  };

  std::vector<GeneratedEonjeol> out;
  std::set<std::string> seen;
  std::size_t attempts = 0;
  while (out.size() < cfg.count) {
    if (++attempts > cfg.count * 1000) throw ValidationError("corpus generation did not converge");
    std::vector<std::size_t> seq{pick(initial)};
    std::size_t eojeols = 1;
    std::size_t in_eojeol = 1;
    bool ok = false;
    while (true) {
      const UpmEntry& last = entries[seq.back()];
      const bool final = tags.is_final(last.right_pos);
      if (final && (eojeols == cfg.max_eojeols || unit(rng) >= cfg.continue_prob)) {
        ok = true;
        break;
      }
      std::vector<std::size_t> next;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (!model.conn.allowed(seq.back(), k)) continue;
        const bool starts_word = final;
        if (starts_word != (std::find(initial.begin(), initial.end(), k) != initial.end())) continue;
        next.push_back(k);
      }
      if (next.empty()) break;
      if (final) {
        ++eojeols;
        in_eojeol = 0;
      }
      if (++in_eojeol > cfg.max_morphemes_per_eojeol) break;
      seq.push_back(pick(next));
    }
    if (!ok) continue;
    std::string text = assemble_text(seq, entries, phonemes);
    if (text.empty()) continue;
    if (diphonize(inventory, tokenize_yale(phonemes, text)).size() > cfg.max_diphones) continue;
    if (!seen.insert(text).second) continue;
    std::vector<MorphemeCandidate> ms;
    for (std::size_t k : seq) ms.push_back(MorphemeCandidate{k, 0, 0, 0.0, 0});
    out.push_back({text, seq, render_morphemes(ms, entries, tags).first});
  }
  return out;
}

}  // namespace morphdec

#endif  // MORPHDEC_CORPUS_HPP_
