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

#ifndef MORPHDEC_PIPELINE_HPP_
#define MORPHDEC_PIPELINE_HPP_

// Loading the bundled resources and running whole corpora through the
// simulate -> decode -> analyze -> evaluate chain.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "morphdec/analyzer.hpp"
#include "morphdec/corpus.hpp"
#include "morphdec/decoder.hpp"
#include "morphdec/error.hpp"
#include "morphdec/evaluation.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/phonology.hpp"
#include "morphdec/simulator.hpp"
#include "morphdec/text.hpp"
#include "morphdec/trie_hmm.hpp"

namespace morphdec {

namespace fs = std::filesystem;

struct ResourcePaths {
  fs::path phonemes;
  fs::path inventory;
  fs::path lexicon;
  fs::path tags;
  fs::path morph_conn;
  fs::path phon_conn;

  // The layout of data/korean, of a compiled index directory plus a
  // matrices directory.
  static ResourcePaths from_dirs(const fs::path& index_dir, const fs::path& matrices_dir) {
    return {index_dir / "phonemes.tsv", index_dir / "inventory.tsv", index_dir / "lexicon.tsv",
            matrices_dir / "tags.tsv",   matrices_dir / "morph_conn.tsv", matrices_dir / "phon_conn.tsv"};
  }
};

struct Resources {
  PhonemeTable phonemes;
  DiphoneInventory inventory;
  AnalysisModel model;
};

inline PhonemeTable load_phonemes(const fs::path& p) {
  auto in = open_input(p);
  return PhonemeTable::load(in, p.string());
}

inline DiphoneInventory load_inventory(const fs::path& p, const PhonemeTable& phonemes) {
  auto in = open_input(p);
  return DiphoneInventory::load(in, phonemes, p.string());
}

// Loads, validates, canonicalizes and compiles the lexicon and builds the
// index. Grammar files are optional here; `compile` does not need them.
inline Resources load_lexical_resources(const fs::path& phonemes_path, const fs::path& inventory_path,
                                        const fs::path& lexicon_path) {
  Resources r;
  r.phonemes = load_phonemes(phonemes_path);
  r.inventory = load_inventory(inventory_path, r.phonemes);
  auto in = open_input(lexicon_path);
  Lexicon lex = load_lexicon(in, r.phonemes, lexicon_path.string());
  canonicalize(lex);
  compile_headers(lex.entries, r.phonemes, r.inventory);
  r.model.entries = std::move(lex.entries);
  r.model.index = build_index(r.model.entries, r.inventory);
  return r;
}

inline Grammar load_grammar(const ResourcePaths& paths, const std::vector<UpmEntry>& entries) {
  Grammar g;
  {
    auto in = open_input(paths.tags);
    g.tags = TagSet::load(in, paths.tags.string());
  }
  Lexicon lex;
  lex.entries = entries;
  for (const UpmEntry& e : entries) {
    lex.tags.insert(e.left_pos);
    lex.tags.insert(e.right_pos);
  }
  validate_tags(lex, g.tags);
  {
    auto in = open_input(paths.morph_conn);
    g.morph = MorphConnMatrix::load(in, g.tags, paths.morph_conn.string());
  }
  {
    auto in = open_input(paths.phon_conn);
    g.phon = PhonConnMatrix::load(in, lex, paths.phon_conn.string());
  }
  return g;
}

inline Resources load_resources(const ResourcePaths& paths) {
  Resources r = load_lexical_resources(paths.phonemes, paths.inventory, paths.lexicon);
  r.model.grammar = load_grammar(paths, r.model.entries);
  r.model.conn = ConnectivityTable(r.model.entries, r.model.grammar);
  return r;
}

// Flat `key=value` settings; '#' starts a comment line.
class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "config") {
    Config c;
    for (const RecordLine& rec : read_records(in)) {
      auto eq = rec.text.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError(source, rec.number, 1, "expected key=value");
      c.values_[std::string(trim(rec.text.substr(0, eq)))] = std::string(trim(rec.text.substr(eq + 1)));
    }
    return c;
  }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t used = 0;
      double v = std::stod(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("config key " + key + " is not a number: '" + it->second + "'");
    }
  }

  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t used = 0;
      auto v = std::stoull(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("config key " + key + " is not an unsigned integer: '" + it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "1" || it->second == "true" || it->second == "on") return true;
    if (it->second == "0" || it->second == "false" || it->second == "off") return false;
    throw ValidationError("config key " + key + " is not a boolean: '" + it->second + "'");
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// Analyzer settings from config keys alpha, beta, normalize_emissions,
// prune, prune_min_mismatch, prune_mismatch_fraction, prune_floor, cap.
inline AnalyzerConfig analyzer_config_from(const Config& c, std::size_t inventory_size) {
  AnalyzerConfig a;
  a.hmm.alpha = c.get_double("alpha", 0.8);
  a.hmm.beta = c.get_double("beta", 0.99);
  a.hmm.m = inventory_size;
  a.hmm.normalize_emissions = c.get_bool("normalize_emissions", false);
  a.hmm.validate();
  a.prune.enabled = c.get_bool("prune", true);
  a.prune.min_mismatch_allowance = c.get_uint("prune_min_mismatch", 1);
  a.prune.mismatch_fraction = c.get_double("prune_mismatch_fraction", 0.34);
  if (c.has("prune_floor")) a.prune.per_symbol_floor = c.get_double("prune_floor", 0.0);
  const std::uint64_t cap = c.get_uint("cap", 16);
  a.cap = cap == 0 ? kUnlimited : cap;
  const std::string mode = c.get("decode_mode", "viterbi");
  if (mode == "viterbi") {
    a.mode = DecodeMode::kViterbi;
  } else if (mode == "exact") {
    a.mode = DecodeMode::kExact;
  } else {
    throw ValidationError("decode_mode must be viterbi or exact");
  }
  return a;
}

// Noise settings: `preset=paper-fig10` or explicit del_rate / sub_rate /
// ins_rate, plus confusion, seed and noise_scale.
inline NoiseConfig noise_config_from(const Config& c) {
  NoiseConfig n;
  const std::string preset = c.get("preset", "none");
  if (preset == "paper-fig10") {
    n = paper_fig10_preset();
  } else if (preset != "none") {
    throw ValidationError("unknown preset '" + preset + "'");
  }
  n.del_rate = c.get_double("del_rate", n.del_rate);
  n.sub_rate = c.get_double("sub_rate", n.sub_rate);
  n.ins_rate = c.get_double("ins_rate", n.ins_rate);
  n.confusion = parse_confusion(c.get("confusion", confusion_name(n.confusion)));
  n.seed = c.get_uint("seed", 0);
  n = n.scaled(c.get_double("noise_scale", 1.0));
  n.validate();
  return n;
}

struct FrameMode {
  std::size_t min_rep = 1;
  std::size_t max_rep = 1;
  bool active() const { return !(min_rep == 1 && max_rep == 1); }
};

struct EonjeolResult {
  std::vector<DiphoneId> observation;  // empty when the channel deleted everything
  std::vector<EojeolOutput> outputs;   // empty when nothing could be analyzed
};

// Simulates a noisy stream for every record and analyzes it. Records are
// independent; workers pick them up in any order but results keep input
// order, so the output does not depend on `threads`.
inline std::vector<EonjeolResult> process_corpus(const Resources& res, std::span<const GoldRecord> gold,
                                                 const NoiseConfig& noise, const FrameMode& frames,
                                                 const AnalyzerConfig& acfg, std::size_t threads = 1,
                                                 CorruptionStats* stats = nullptr) {
  NoiseChannel channel(res.inventory);
  std::vector<EonjeolResult> results(gold.size());
  std::vector<CorruptionStats> per_record(gold.size());
  std::vector<std::exception_ptr> errors(gold.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < gold.size(); i = next++) {
      try {
        NoiseConfig rec = noise;
        rec.seed = derive_seed(noise.seed, i);
        ObservationSeq obs;
        try {
          obs = channel.corrupt(gold[i].reference_diphones, rec, &per_record[i]);
        } catch (const EmptyResult&) {
          continue;
        }
        if (frames.active()) obs = frame_expand(obs, frames.min_rep, frames.max_rep, derive_seed(~noise.seed, i));
        results[i].observation = obs.symbols;
        try {
          results[i].outputs = analyze(obs, res.model, acfg);
        } catch (const NoAnalysis&) {
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(threads, gold.size()));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  if (stats) {
    for (const auto& s : per_record) *stats += s;
  }
  return results;
}

inline std::vector<std::string> top_morphemes(const EonjeolResult& r) {
  if (r.outputs.empty()) return {};
  return rendering_morphemes(r.outputs.front().rendering);
}

inline EvalCounts evaluate_morphemes(std::span<const GoldRecord> gold, std::span<const EonjeolResult> results) {
  EvalCounts c;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    c += align_and_count(gold[i].gold_morphemes, top_morphemes(results[i]));
  }
  return c;
}

inline std::vector<GoldRecord> make_gold_records(const Resources& res, std::span<const CorpusRecord> corpus) {
  std::vector<GoldRecord> out;
  out.reserve(corpus.size());
  for (const CorpusRecord& r : corpus) out.push_back(make_gold(r.text, r.rendering, res.phonemes, res.inventory));
  return out;
}

// Rank-1 rendering per eonjeol from an analyses file, or the rendering
// column of a gold corpus, or one bare rendering per line.
inline std::vector<std::string> read_renderings(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto f = split(line, '\t');
    if (f.size() >= 3 && !f[0].empty() && std::all_of(f[0].begin(), f[0].end(), ::isdigit)) {
      if (f[0] == "1") out.push_back(f[1]);
    } else if (f.size() == 2) {
      out.push_back(f[1]);
    } else {
      out.push_back(f[0]);
    }
  }
  return out;
}

inline std::string render_analyses(std::span<const EojeolOutput> outputs, std::span<const UpmEntry> entries,
                                   std::size_t topk, bool verbose) {
  std::string out;
  if (outputs.empty()) return "1\t\t-inf" + std::string(verbose ? "\tno-analysis" : "") + "\n";
  for (std::size_t r = 0; r < outputs.size() && r < topk; ++r) {
    out += std::to_string(r + 1) + '\t' + outputs[r].rendering + '\t' + format_double(outputs[r].score);
    if (verbose) out += '\t' + outputs[r].surface_rendering + verbose_fields(outputs[r], entries);
    out += '\n';
  }
  return out;
}

struct RunOutputs {
  std::string observations;
  std::string analyses;
  std::string eval_morpheme;
  std::string eval_morpheme_json;
  std::string eval_diphone;
  std::string eval_diphone_json;
  EvalCounts morpheme_counts;
  EvalCounts diphone_counts;
  std::size_t records = 0;
  std::size_t no_analysis = 0;
};

// The whole experiment described by `cfg`. Relative paths resolve against
// `base_dir`.
inline RunOutputs run_experiment(const Config& cfg, const fs::path& base_dir) {
  auto path_of = [&](const std::string& key, const std::string& fallback) {
    fs::path p = cfg.get(key, fallback);
    return p.is_absolute() ? p : base_dir / p;
  };
  const fs::path data = path_of("data", ".");
  ResourcePaths paths = ResourcePaths::from_dirs(data, data);
  if (cfg.has("index")) {
    const fs::path idx = path_of("index", ".");
    paths.phonemes = idx / "phonemes.tsv";
    paths.inventory = idx / "inventory.tsv";
    paths.lexicon = idx / "lexicon.tsv";
  }
  if (cfg.has("matrices")) {
    const fs::path m = path_of("matrices", ".");
    paths.tags = m / "tags.tsv";
    paths.morph_conn = m / "morph_conn.tsv";
    paths.phon_conn = m / "phon_conn.tsv";
  }
  if (cfg.has("lexicon")) paths.lexicon = path_of("lexicon", "");
  if (cfg.has("inventory")) paths.inventory = path_of("inventory", "");
  if (cfg.has("phonemes")) paths.phonemes = path_of("phonemes", "");
  const Resources res = load_resources(paths);
  std::vector<CorpusRecord> corpus;
  {
    const fs::path cp = path_of("corpus", (data / "corpus.tsv").string());
    auto in = open_input(cp);
    corpus = read_corpus(in, cp.string());
  }
  const auto gold = make_gold_records(res, corpus);
  const NoiseConfig noise = noise_config_from(cfg);
  const AnalyzerConfig acfg = analyzer_config_from(cfg, res.inventory.size());
  FrameMode frames{cfg.get_uint("frame_min", 1), cfg.get_uint("frame_max", 1)};
  if (frames.min_rep < 1 || frames.max_rep < frames.min_rep) throw ValidationError("bad frame_min/frame_max");
  const std::size_t threads = cfg.get_uint("threads", 1);
  const std::size_t topk = cfg.get_uint("topk", 1);
  const bool verbose = cfg.get_bool("verbose", false);

  const auto results = process_corpus(res, gold, noise, frames, acfg, threads);

  RunOutputs out;
  out.observations = "# seed=" + std::to_string(noise.seed) + " cfg=" + noise.render() +
                     ",frames=" + std::to_string(frames.min_rep) + "-" + std::to_string(frames.max_rep) + "\n";
  out.records = results.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    ObservationSeq obs{results[i].observation, {}};
    out.observations += observation_line(obs, res.inventory) + '\n';
    out.analyses += "# eonjeol " + std::to_string(i + 1) + '\n';
    out.analyses += render_analyses(results[i].outputs, res.model.entries, topk, verbose);
    if (results[i].outputs.empty()) ++out.no_analysis;
    out.diphone_counts += align_and_count(gold[i].reference_diphones, results[i].observation);
  }
  out.morpheme_counts = evaluate_morphemes(gold, results);
  out.eval_morpheme = render_eval_table(out.morpheme_counts);
  out.eval_morpheme_json = eval_json(out.morpheme_counts, "morpheme").dump(2) + "\n";
  out.eval_diphone = render_eval_table(out.diphone_counts);
  out.eval_diphone_json = eval_json(out.diphone_counts, "diphone").dump(2) + "\n";
  return out;
}

}  // namespace morphdec

#endif  // MORPHDEC_PIPELINE_HPP_
