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

// Command-line driver: compile, simulate, decode, analyze, evaluate, run.
//
// Exit codes: 0 success, 2 usage, 3 data or validation error, 4 a record
// had no analysis and --strict was given.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphdec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace morphdec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNoAnalysis = 4;

std::string slurp(const fs::path& p) {
  auto in = open_input(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to stdout when `path` is empty or "-".
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& what) {
  auto f = split(s, ',');
  std::vector<double> out;
  if (f.size() != n) throw ValidationError(what + " expects " + std::to_string(n) + " comma-separated values");
  for (const auto& x : f) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(x, &used));
      if (used != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw ValidationError(what + ": not a number '" + x + "'");
    }
  }
  return out;
}

struct IndexOptions {
  std::string index_dir;
  std::string matrices_dir;
};

Resources load_index_only(const std::string& dir) {
  return load_lexical_resources(fs::path(dir) / "phonemes.tsv", fs::path(dir) / "inventory.tsv",
                                fs::path(dir) / "lexicon.tsv");
}

Resources load_full(const IndexOptions& o) {
  return load_resources(ResourcePaths::from_dirs(o.index_dir, o.matrices_dir.empty() ? o.index_dir : o.matrices_dir));
}

std::vector<ObservationSeq> load_observations(const std::string& path, const DiphoneInventory& inventory) {
  auto in = open_input(path);
  std::vector<ObservationSeq> out;
  std::size_t k = 0;
  for (const auto& symbols : read_observation_lines(in)) {
    ++k;
    ObservationSeq obs;
    obs.source_tag = path + ":" + std::to_string(k);
    for (const auto& s : symbols) obs.symbols.push_back(inventory.require(s));
    out.push_back(std::move(obs));
  }
  return out;
}

struct HmmOptions {
  double alpha = 0.8;
  double beta = 0.99;
  bool normalize = false;
  bool no_prune = false;
  std::size_t cap = 16;
  bool exact = false;

  AnalyzerConfig config(std::size_t m) const {
    Config c;
    c.set("alpha", format_double(alpha, 17));
    c.set("beta", format_double(beta, 17));
    c.set("normalize_emissions", normalize ? "1" : "0");
    c.set("prune", no_prune ? "0" : "1");
    c.set("cap", std::to_string(cap));
    c.set("decode_mode", exact ? "exact" : "viterbi");
    return analyzer_config_from(c, m);
  }
};

void add_hmm_options(CLI::App* cmd, HmmOptions& h) {
  cmd->add_option("--alpha", h.alpha, "self-loop probability")->capture_default_str();
  cmd->add_option("--beta", h.beta, "matching emission probability")->capture_default_str();
  cmd->add_flag("--normalize-emissions", h.normalize, "spread mismatch mass over M-1 symbols");
  cmd->add_flag("--no-prune", h.no_prune, "disable candidate pruning");
  cmd->add_option("--cap", h.cap, "analyses kept per cell, 0 for unlimited")->capture_default_str();
  cmd->add_flag("--exact", h.exact, "exact-match lookup instead of Viterbi");
}

int cmd_compile(const std::string& lexicon, const std::string& inventory, const std::string& phonemes,
                const std::string& out_dir) {
  Resources r = load_lexical_resources(phonemes, inventory, lexicon);
  fs::create_directories(out_dir);
  Lexicon lex;
  lex.entries = r.model.entries;
  std::string lex_text = "# surface\torth\tleft_pos\tright_pos\tleft_phon\tright_phon[\tIDIOM]\n" + serialize_lexicon(lex);
  std::ostringstream info;
  info << "entries\t" << r.model.entries.size() << "\n"
       << "states\t" << r.model.index.size() << "\n"
       << "terminals\t" << r.model.index.terminal_count() << "\n"
       << "junctions\t" << r.model.index.junction_count() << "\n"
       << "inventory\t" << r.inventory.size() << "\n";
  for (DiphoneKind k : {DiphoneKind::kV, DiphoneKind::kC1V, DiphoneKind::kVC2, DiphoneKind::kC2C1}) {
    info << "inventory." << kind_name(k) << "\t" << r.inventory.count(k) << "\n";
  }
  const fs::path out(out_dir);
  write_file_atomic(out / "lexicon.tsv", lex_text);
  write_file_atomic(out / "inventory.tsv", slurp(inventory));
  write_file_atomic(out / "phonemes.tsv", slurp(phonemes));
  write_file_atomic(out / "trie.dot", to_dot(r.model.index, r.model.entries));
  write_file_atomic(out / "index.info", info.str());
  std::cerr << info.str();
  return kExitOk;
}

int cmd_simulate(const std::string& corpus_path, const std::string& index_dir, const std::string& preset,
                 const std::string& rates, const std::string& confusion, std::uint64_t seed,
                 const std::string& frame_mode, const std::string& out) {
  Resources r = load_index_only(index_dir);
  auto in = open_input(corpus_path);
  const auto gold = make_gold_records(r, read_corpus(in, corpus_path));
  Config c;
  c.set("preset", preset.empty() ? "none" : preset);
  if (!rates.empty()) {
    auto v = parse_list(rates, 3, "--rates");
    c.set("del_rate", format_double(v[0], 17));
    c.set("sub_rate", format_double(v[1], 17));
    c.set("ins_rate", format_double(v[2], 17));
  }
  if (!confusion.empty()) c.set("confusion", confusion);
  c.set("seed", std::to_string(seed));
  NoiseConfig noise = noise_config_from(c);
  FrameMode frames;
  if (!frame_mode.empty()) {
    auto v = parse_list(frame_mode, 2, "--frame-mode");
    if (v[0] < 1 || v[1] < v[0]) throw ValidationError("--frame-mode needs 1 <= min <= max");
    frames = {static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
  }
  NoiseChannel channel(r.inventory);
  std::string text = "# seed=" + std::to_string(seed) + " cfg=" + noise.render() + ",frames=" +
                     std::to_string(frames.min_rep) + "-" + std::to_string(frames.max_rep) + "\n";
  for (std::size_t i = 0; i < gold.size(); ++i) {
    NoiseConfig rec = noise;
    rec.seed = derive_seed(seed, i);
    ObservationSeq obs;
    try {
      obs = channel.corrupt(gold[i].reference_diphones, rec);
      if (frames.active()) obs = frame_expand(obs, frames.min_rep, frames.max_rep, derive_seed(~seed, i));
    } catch (const EmptyResult&) {
      obs = {};
    }
    text += observation_line(obs, r.inventory) + "\n";
  }
  emit(out, text);
  return kExitOk;
}

int cmd_decode(const IndexOptions& io, const std::string& obs_path, const HmmOptions& h, bool dump,
               const std::string& out) {
  Resources r = load_index_only(io.index_dir);
  const AnalyzerConfig cfg = h.config(r.inventory.size());
  std::string text;
  std::size_t k = 0;
  for (const ObservationSeq& obs : load_observations(obs_path, r.inventory)) {
    ++k;
    if (obs.size() == 0) {
      text += "# eonjeol " + std::to_string(k) + "\tlength=0\tcandidates=0\n";
      continue;
    }
    CandidateLattice lattice = decode(obs, r.model.index, cfg.hmm, cfg.prune, cfg.mode);
    text += "# eonjeol " + std::to_string(k) + "\tlength=" + std::to_string(obs.size()) +
            "\tcandidates=" + std::to_string(lattice.size()) + "\n";
    if (dump) text += dump_lattice(lattice, r.model.entries);
  }
  emit(out, text);
  return kExitOk;
}

int cmd_analyze(const IndexOptions& io, const std::string& obs_path, const HmmOptions& h, bool verbose,
                std::size_t topk, bool strict, const std::string& out) {
  Resources r = load_full(io);
  const AnalyzerConfig cfg = h.config(r.inventory.size());
  std::string text;
  std::size_t k = 0;
  std::size_t failures = 0;
  for (const ObservationSeq& obs : load_observations(obs_path, r.inventory)) {
    ++k;
    text += "# eonjeol " + std::to_string(k) + "\n";
    std::vector<EojeolOutput> outputs;
    if (obs.size() > 0) {
      try {
        outputs = analyze(obs, r.model, cfg);
      } catch (const NoAnalysis&) {
      }
    }
    if (outputs.empty()) ++failures;
    text += render_analyses(outputs, r.model.entries, topk, verbose);
  }
  emit(out, text);
  if (failures > 0) {
    std::cerr << "NoAnalysis: " << failures << " of " << k << " records had no analysis\n";
    if (strict) return kExitNoAnalysis;
  }
  return kExitOk;
}

int cmd_evaluate(const std::string& gold_path, const std::string& hyp_path, const std::string& unit,
                 const std::string& index_dir, bool json, int decimals, const std::string& out) {
  EvalCounts counts;
  if (unit == "morpheme") {
    auto gin = open_input(gold_path);
    auto hin = open_input(hyp_path);
    const auto gold = read_renderings(gin);
    const auto hyp = read_renderings(hin);
    if (gold.size() != hyp.size()) {
      throw ValidationError("gold has " + std::to_string(gold.size()) + " records, hypothesis has " +
                            std::to_string(hyp.size()));
    }
    for (std::size_t i = 0; i < gold.size(); ++i) {
      counts += align_and_count(rendering_morphemes(gold[i]), rendering_morphemes(hyp[i]));
    }
  } else {
    // Gold may be a corpus (text column diphonized) or an observation file.
    std::vector<std::vector<std::string>> gold;
    {
      auto gin = open_input(gold_path);
      std::string first;
      std::string content((std::istreambuf_iterator<char>(gin)), std::istreambuf_iterator<char>());
      if (content.find('\t') != std::string::npos) {
        if (index_dir.empty()) throw ValidationError("--unit diphone with a corpus gold file needs --index");
        Resources r = load_index_only(index_dir);
        std::istringstream cin(content);
        for (const GoldRecord& g : make_gold_records(r, read_corpus(cin, gold_path))) {
          std::vector<std::string> syms;
          for (DiphoneId d : g.reference_diphones) syms.push_back(r.inventory.at(d).symbol);
          gold.push_back(std::move(syms));
        }
      } else {
        std::istringstream cin(content);
        gold = read_observation_lines(cin);
      }
    }
    auto hin = open_input(hyp_path);
    const auto hyp = read_observation_lines(hin);
    if (gold.size() != hyp.size()) {
      throw ValidationError("gold has " + std::to_string(gold.size()) + " records, hypothesis has " +
                            std::to_string(hyp.size()));
    }
    for (std::size_t i = 0; i < gold.size(); ++i) counts += align_and_count(gold[i], hyp[i]);
  }
  emit(out, json ? eval_json(counts, unit, decimals).dump(2) + "\n" : render_eval_table(counts, decimals));
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides, const std::string& out_dir,
            bool strict) {
  auto in = open_input(config_path);
  Config cfg = Config::parse(in, config_path);
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const fs::path base = fs::absolute(config_path).parent_path();
  fs::path out = out_dir.empty() ? fs::path(cfg.get("out", "")) : fs::path(out_dir);
  if (out.empty()) throw ValidationError("run needs an output directory (--out or out=)");
  if (out_dir.empty() && out.is_relative()) out = base / out;
  RunOutputs r = run_experiment(cfg, base);
  fs::create_directories(out);
  write_file_atomic(out / "observations.txt", r.observations);
  write_file_atomic(out / "analyses.txt", r.analyses);
  write_file_atomic(out / "eval_morpheme.txt", r.eval_morpheme);
  write_file_atomic(out / "eval_morpheme.json", r.eval_morpheme_json);
  write_file_atomic(out / "eval_diphone.txt", r.eval_diphone);
  write_file_atomic(out / "eval_diphone.json", r.eval_diphone_json);
  std::cout << "morpheme\n" << r.eval_morpheme << "diphone\n" << r.eval_diphone;
  if (r.no_analysis > 0) {
    std::cerr << "NoAnalysis: " << r.no_analysis << " of " << r.records << " records had no analysis\n";
    if (strict) return kExitNoAnalysis;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morpheme-level decoder for Korean diphone streams"};
  app.require_subcommand(1);

  std::string out;

  auto* compile = app.add_subcommand("compile", "validate a lexicon and build the trie index");
  std::string c_lexicon, c_inventory, c_phonemes;
  compile->add_option("--lexicon", c_lexicon, "UPM lexicon TSV")->required()->check(CLI::ExistingFile);
  compile->add_option("--inventory", c_inventory, "diphone inventory TSV")->required()->check(CLI::ExistingFile);
  compile->add_option("--phonemes", c_phonemes, "phoneme table TSV (default: next to the inventory)");
  compile->add_option("--out", out, "output directory")->required();

  auto* simulate = app.add_subcommand("simulate", "corrupt gold diphone streams");
  std::string s_corpus, s_index, s_preset, s_rates, s_confusion, s_frames;
  std::uint64_t s_seed = 0;
  simulate->add_option("--corpus", s_corpus, "gold corpus TSV")->required()->check(CLI::ExistingFile);
  simulate->add_option("--index", s_index, "compiled index directory")->required()->check(CLI::ExistingDirectory);
  auto* preset_opt = simulate->add_option("--preset", s_preset, "named noise preset")
                         ->check(CLI::IsMember({"paper-fig10", "none"}));
  simulate->add_option("--rates", s_rates, "del,sub,ins")->excludes(preset_opt);
  simulate->add_option("--confusion", s_confusion, "uniform|same_vowel_group");
  simulate->add_option("--seed", s_seed, "base seed")->capture_default_str();
  simulate->add_option("--frame-mode", s_frames, "min,max repetitions per symbol");
  simulate->add_option("--out", out, "observation file (default stdout)");

  HmmOptions hmm;
  IndexOptions io;
  std::string obs_path;

  auto* decode_cmd = app.add_subcommand("decode", "emit morpheme candidate lattices");
  bool dump = false;
  decode_cmd->add_option("--index", io.index_dir, "compiled index directory")->required()->check(CLI::ExistingDirectory);
  decode_cmd->add_option("--obs", obs_path, "observation file")->required()->check(CLI::ExistingFile);
  decode_cmd->add_flag("--dump-lattice", dump, "print every candidate");
  decode_cmd->add_option("--out", out, "output file (default stdout)");
  add_hmm_options(decode_cmd, hmm);

  auto* analyze_cmd = app.add_subcommand("analyze", "emit ranked morpheme analyses");
  bool verbose = false, strict = false;
  std::size_t topk = 1;
  analyze_cmd->add_option("--index", io.index_dir, "compiled index directory")->required()->check(CLI::ExistingDirectory);
  analyze_cmd->add_option("--matrices", io.matrices_dir, "tags and connectivity directory")->required()->check(CLI::ExistingDirectory);
  analyze_cmd->add_option("--obs", obs_path, "observation file")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_flag("--verbose", verbose, "print per-morpheme details");
  analyze_cmd->add_option("--topk", topk, "analyses per record")->check(CLI::PositiveNumber)->capture_default_str();
  analyze_cmd->add_flag("--strict", strict, "exit 4 if any record has no analysis");
  analyze_cmd->add_option("--out", out, "output file (default stdout)");
  add_hmm_options(analyze_cmd, hmm);

  auto* evaluate = app.add_subcommand("evaluate", "count correct, deleted and inserted units");
  std::string e_gold, e_hyp, e_unit = "morpheme", e_index;
  bool json = false;
  int decimals = 2;
  evaluate->add_option("--gold", e_gold, "gold file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--hyp", e_hyp, "hypothesis file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--unit", e_unit, "diphone|morpheme")->check(CLI::IsMember({"diphone", "morpheme"}))->capture_default_str();
  evaluate->add_option("--index", e_index, "index directory, for a diphone gold corpus");
  evaluate->add_flag("--json", json, "machine-readable output");
  evaluate->add_option("--decimals", decimals, "percentage decimals")->check(CLI::Range(0, 6))->capture_default_str();
  evaluate->add_option("--out", out, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "simulate, decode, analyze and evaluate from a config file");
  std::string r_config;
  std::vector<std::string> overrides;
  run->add_option("--config", r_config, "key=value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", overrides, "override a config key (key=value)");
  run->add_option("--out", out, "output directory (overrides out=)");
  run->add_flag("--strict", strict, "exit 4 if any record has no analysis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compile) {
      if (c_phonemes.empty()) c_phonemes = (fs::path(c_inventory).parent_path() / "phonemes.tsv").string();
      return cmd_compile(c_lexicon, c_inventory, c_phonemes, out);
    }
    if (*simulate) return cmd_simulate(s_corpus, s_index, s_preset, s_rates, s_confusion, s_seed, s_frames, out);
    if (*decode_cmd) return cmd_decode(io, obs_path, hmm, dump, out);
    if (*analyze_cmd) return cmd_analyze(io, obs_path, hmm, verbose, topk, strict, out);
    if (*evaluate) return cmd_evaluate(e_gold, e_hyp, e_unit, e_index, json, decimals, out);
    if (*run) return cmd_run(r_config, overrides, out, strict);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.category() == ErrorCategory::kNoAnalysis ? kExitNoAnalysis : kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
