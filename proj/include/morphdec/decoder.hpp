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

#ifndef MORPHDEC_DECODER_HPP_
#define MORPHDEC_DECODER_HPP_

// Time-synchronous Viterbi lexical decoding over the trie index. Every
// observation position starts a fresh search from the root; every time a
// surviving path sits on a state that completes a header, the entries it
// spells become span-annotated candidates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "morphdec/error.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/phonology.hpp"
#include "morphdec/text.hpp"
#include "morphdec/trie_hmm.hpp"

namespace morphdec {

struct ObservationSeq {
  std::vector<DiphoneId> symbols;
  std::string source_tag;

  std::size_t size() const { return symbols.size(); }
};

inline ObservationSeq make_observation(const DiphoneInventory& inventory,
                                       std::span<const std::string> symbols,
                                       std::string source_tag = {}) {
  if (symbols.empty()) throw EmptyObservation("observation sequence is empty");
  ObservationSeq obs;
  obs.source_tag = std::move(source_tag);
  obs.symbols.reserve(symbols.size());
  for (const std::string& s : symbols) obs.symbols.push_back(inventory.require(s));
  return obs;
}

inline std::vector<std::string> observation_symbols(const ObservationSeq& obs,
                                                    const DiphoneInventory& inventory) {
  std::vector<std::string> out;
  for (DiphoneId id : obs.symbols) out.push_back(inventory.at(id).symbol);
  return out;
}

struct MorphemeCandidate {
  std::size_t entry = 0;  // index into the lexicon entry vector
  std::size_t start = 0;  // 1-based, inclusive
  std::size_t end = 0;    // 1-based, inclusive
  double log_score = 0.0;
  std::size_t mismatches = 0;

  auto identity() const { return std::tie(entry, start, end); }
};

struct PruneConfig {
  bool enabled = true;
  std::size_t min_mismatch_allowance = 1;
  double mismatch_fraction = 0.34;
  // Lower bound on log_score / path_len. Unset means the default derived
  // from the HMM parameters: log((1 - beta) / M) + log(beta).
  std::optional<double> per_symbol_floor;

  PruneConfig resolved(const HmmParams& p) const {
    PruneConfig out = *this;
    if (!out.per_symbol_floor) out.per_symbol_floor = std::log(mismatch_prob(p)) + std::log(p.beta);
    return out;
  }

  static PruneConfig disabled() {
    PruneConfig c;
    c.enabled = false;
    return c;
  }
};

inline std::size_t mismatch_allowance(std::size_t path_len, const PruneConfig& cfg) {
  // the epsilon keeps e.g. 0.34 * 50 from rounding up to 18
  const double scaled = cfg.mismatch_fraction * static_cast<double>(path_len) - 1e-9;
  const auto frac = static_cast<std::size_t>(std::max(0.0, std::ceil(scaled)));
  return std::max(cfg.min_mismatch_allowance, frac);
}

inline bool prune_check(std::size_t path_len, double log_score, std::size_t mismatches,
                        const PruneConfig& cfg) {
  if (!cfg.enabled) return true;
  if (mismatches > mismatch_allowance(path_len, cfg)) return false;
  if (cfg.per_symbol_floor &&
      log_score < static_cast<double>(path_len) * *cfg.per_symbol_floor) {
    return false;
  }
  return true;
}

class CandidateLattice {
 public:
  explicit CandidateLattice(std::size_t length = 0) : length_(length) {}

  // Set semantics on (entry, start, end); a repeat keeps the better score.
  void add(const MorphemeCandidate& c) {
    auto& cell = by_span_[{c.start, c.end}];
    for (MorphemeCandidate& have : cell) {
      if (have.entry == c.entry) {
        if (c.log_score > have.log_score) have = c;
        return;
      }
    }
    cell.push_back(c);
  }

  std::size_t length() const { return length_; }
  const std::map<std::pair<std::size_t, std::size_t>, std::vector<MorphemeCandidate>>& by_span() const {
    return by_span_;
  }

  std::vector<MorphemeCandidate> all() const {
    std::vector<MorphemeCandidate> out;
    for (const auto& [span, cell] : by_span_) out.insert(out.end(), cell.begin(), cell.end());
    return out;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [span, cell] : by_span_) n += cell.size();
    return n;
  }

  const MorphemeCandidate* find(std::size_t entry, std::size_t start, std::size_t end) const {
    auto it = by_span_.find({start, end});
    if (it == by_span_.end()) return nullptr;
    for (const MorphemeCandidate& c : it->second) {
      if (c.entry == entry) return &c;
    }
    return nullptr;
  }

 private:
  std::size_t length_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<MorphemeCandidate>> by_span_;
};

enum class DecodeMode {
  kViterbi,  // self loops and smoothed emissions
  kExact,    // exact header spelling only; the no-smoothing baseline
};

inline CandidateLattice decode(const ObservationSeq& obs, const TrieHmmIndex& index,
                               const HmmParams& params, const PruneConfig& prune,
                               DecodeMode mode = DecodeMode::kViterbi) {
  if (obs.symbols.empty()) throw EmptyObservation("observation sequence is empty");
  params.validate();
  const PruneConfig cfg = prune.resolved(params);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  const std::size_t n_states = index.size();
  const std::size_t T = obs.size();
  const double log_self = std::log(params.alpha);
  const double log_match = std::log(params.beta);
  const double log_miss = std::log(mismatch_prob(params));
  std::vector<double> log_advance(n_states, kNegInf);
  for (const TrieState& s : index.states()) {
    if (!s.children.empty()) {
      log_advance[s.id] = std::log((1.0 - params.alpha) / static_cast<double>(s.children.size()));
    }
  }
  const bool exact = mode == DecodeMode::kExact;

  CandidateLattice lattice(T);
  std::vector<double> cur(n_states), next(n_states);
  std::vector<std::size_t> cur_mm(n_states), next_mm(n_states);
  std::vector<StateId> active, next_active;
  std::vector<char> in_next(n_states, 0);

  auto relax = [&](StateId j, double score, std::size_t mm) {
    if (score > next[j] || (score == next[j] && mm < next_mm[j])) {
      next[j] = score;
      next_mm[j] = mm;
    }
    if (!in_next[j]) {
      in_next[j] = 1;
      next_active.push_back(j);
    }
  };

  for (std::size_t s = 0; s < T; ++s) {
    std::fill(next.begin(), next.end(), kNegInf);
    next_active.clear();
    const auto& root = index.state(TrieHmmIndex::kRoot);
    for (StateId c : root.children) relax(c, log_advance[TrieHmmIndex::kRoot], 0);

    for (std::size_t t = s; t < T; ++t) {
      if (t > s) {
        std::fill(next.begin(), next.end(), kNegInf);
        next_active.clear();
        for (StateId i : active) {
          if (!exact) relax(i, cur[i] + log_self, cur_mm[i]);
          for (StateId c : index.state(i).children) relax(c, cur[i] + log_advance[i], cur_mm[i]);
        }
      }
      // emit the observation at t into every reached state
      active.clear();
      const DiphoneId o = obs.symbols[t];
      for (StateId j : next_active) {
        in_next[j] = 0;
        const bool hit = index.matches(j, o);
        if (exact && !hit) continue;
        cur[j] = next[j] + (hit ? log_match : log_miss);
        cur_mm[j] = next_mm[j] + (hit ? 0 : 1);
        active.push_back(j);
      }
      std::sort(active.begin(), active.end());
      if (active.empty()) break;
      for (StateId j : active) {
        const TrieState& st = index.state(j);
        if (st.terminals.empty()) continue;
        const std::size_t len = t - s + 1;
        if (!prune_check(len, cur[j], cur_mm[j], cfg)) continue;
        for (std::size_t e : st.terminals) {
          lattice.add(MorphemeCandidate{e, s + 1, t + 1, cur[j], cur_mm[j]});
        }
      }
    }
  }
  return lattice;
}

// `start<TAB>end<TAB>orthographic<TAB>log_score<TAB>mismatches`, sorted by
// (start, end, orthographic).
inline std::string dump_lattice(const CandidateLattice& lattice, std::span<const UpmEntry> entries) {
  auto all = lattice.all();
  std::sort(all.begin(), all.end(), [&](const MorphemeCandidate& a, const MorphemeCandidate& b) {
    return std::make_tuple(a.start, a.end, std::cref(entries[a.entry].orthographic), a.entry) <
           std::make_tuple(b.start, b.end, std::cref(entries[b.entry].orthographic), b.entry);
  });
  std::string out;
  for (const MorphemeCandidate& c : all) {
    out += std::to_string(c.start) + '\t' + std::to_string(c.end) + '\t' +
           entries[c.entry].orthographic + '\t' + format_double(c.log_score) + '\t' +
           std::to_string(c.mismatches) + '\n';
  }
  return out;
}

}  // namespace morphdec

#endif  // MORPHDEC_DECODER_HPP_
