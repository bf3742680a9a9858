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

#ifndef MORPHDEC_TRIE_HMM_HPP_
#define MORPHDEC_TRIE_HMM_HPP_

// Trie-structured diphone HMM index over compiled lexicon headers.
//
// Every state is a left-to-right HMM state with a self loop. Headers share
// prefixes; the state that completes a header lists the entries it spells.
// Junction states are extra root children labeled with a C2C1 diphone whose
// second consonant starts a header: they let a morpheme absorb the
// co-articulation diphone in front of it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "morphdec/error.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/phonology.hpp"

namespace morphdec {

using StateId = std::size_t;

struct HmmParams {
  double alpha = 0.8;  // self-transition probability
  double beta = 0.99;  // emission probability of the state's own diphone
  std::size_t m = 1;   // number of diphones in the model
  bool normalize_emissions = false;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must be in (0,1)");
    if (!(beta > 0.0 && beta < 1.0)) throw ValidationError("beta must be in (0,1)");
    if (m < 1) throw ValidationError("M must be at least 1");
  }
};

struct TrieState {
  StateId id = 0;
  std::string label;  // empty for the root
  DiphoneKind kind = DiphoneKind::kV;
  std::optional<DiphoneId> diphone;  // unset for the root and coda pseudo-states
  std::vector<StateId> children;
  std::vector<std::size_t> terminals;  // indices into the entry vector
  bool junction = false;
};

class TrieHmmIndex {
 public:
  static constexpr StateId kRoot = 0;

  std::span<const TrieState> states() const { return states_; }
  const TrieState& state(StateId id) const { return states_.at(id); }
  std::size_t size() const { return states_.size(); }
  std::size_t inventory_size() const { return inventory_size_; }
  std::size_t terminal_count() const {
    std::size_t n = 0;
    for (const TrieState& s : states_) n += s.terminals.size();
    return n;
  }
  std::size_t junction_count() const {
    return std::count_if(states_.begin(), states_.end(), [](const TrieState& s) { return s.junction; });
  }

  bool is_child(StateId parent, StateId child) const {
    const auto& c = states_.at(parent).children;
    return std::find(c.begin(), c.end(), child) != c.end();
  }

  // True when `state` emits its matching probability for `observed`.
  bool matches(StateId state, DiphoneId observed) const {
    const TrieState& s = states_[state];
    if (s.diphone) return *s.diphone == observed;
    auto it = coda_masks_.find(state);
    return it != coda_masks_.end() && it->second[observed];
  }

  friend TrieHmmIndex build_index(std::span<const UpmEntry> entries,
                                  const DiphoneInventory& inventory);

 private:
  StateId add_state(StateId parent, const Diphone& d, bool junction,
                    const DiphoneInventory& inventory) {
    TrieState s;
    s.id = states_.size();
    s.label = d.symbol;
    s.kind = d.kind;
    s.junction = junction;
    if (d.kind == DiphoneKind::kCoda) {
      std::vector<char> mask(inventory.size(), 0);
      for (DiphoneId k = 0; k < inventory.size(); ++k) {
        const Diphone& o = inventory.at(k);
        if ((o.kind == DiphoneKind::kVC2 && o.right->symbol == d.left->symbol) ||
            (o.kind == DiphoneKind::kC2C1 && o.left->symbol == d.left->symbol)) {
          mask[k] = 1;
        }
      }
      coda_masks_.emplace(s.id, std::move(mask));
    } else {
      s.diphone = inventory.require(d.symbol);
    }
    states_.push_back(std::move(s));
    states_[parent].children.push_back(states_.back().id);
    return states_.back().id;
  }

  std::optional<StateId> find_child(StateId parent, const std::string& label, bool junction) const {
    for (StateId c : states_[parent].children) {
      if (states_[c].label == label && states_[c].junction == junction) return c;
    }
    return std::nullopt;
  }

  std::vector<TrieState> states_;
  std::map<StateId, std::vector<char>> coda_masks_;
  std::size_t inventory_size_ = 0;
};

// Builds the index. State numbering follows entry order, so callers that
// canonicalize first get identical numbering for identical inputs.
inline TrieHmmIndex build_index(std::span<const UpmEntry> entries,
                                const DiphoneInventory& inventory) {
  TrieHmmIndex idx;
  idx.inventory_size_ = inventory.size();
  idx.states_.push_back(TrieState{});
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const UpmEntry& e = entries[k];
    if (e.diphone_header.empty()) {
      throw ValidationError("entry " + e.surface_header + " has no compiled header");
    }
    StateId cur = TrieHmmIndex::kRoot;
    for (const Diphone& d : e.diphone_header) {
      auto next = idx.find_child(cur, d.symbol, false);
      cur = next ? *next : idx.add_state(cur, d, false, inventory);
    }
    idx.states_[cur].terminals.push_back(k);
  }
  // Junction states for every consonant-initial header start.
  const std::vector<StateId> firsts = idx.states_[TrieHmmIndex::kRoot].children;
  for (StateId f : firsts) {
    const TrieState& first = idx.states_[f];
    if (first.kind != DiphoneKind::kC1V) continue;
    const std::string onset = inventory.at(*first.diphone).left->symbol;
    for (const Diphone& d : inventory.entries()) {
      if (d.kind != DiphoneKind::kC2C1 || d.right->symbol != onset) continue;
      auto j = idx.find_child(TrieHmmIndex::kRoot, d.symbol, true);
      StateId jid = j ? *j : idx.add_state(TrieHmmIndex::kRoot, d, true, inventory);
      idx.states_[jid].children.push_back(f);
    }
  }
  return idx;
}

// a_ij: alpha on the self loop, (1 - alpha) / N to each of the N children.
inline double transition_prob(const TrieHmmIndex& index, StateId i, StateId j, const HmmParams& p) {
  if (i == j) return p.alpha;
  if (index.is_child(i, j)) {
    return (1.0 - p.alpha) / static_cast<double>(index.state(i).children.size());
  }
  return 0.0;
}

// b_i(k): beta for the state's own diphone, (1 - beta) / M otherwise. The
// mass over the inventory is 1 - (1 - beta) / M unless normalize_emissions
// spreads the mismatch mass over the M - 1 other diphones.
inline double mismatch_prob(const HmmParams& p) {
  if (p.normalize_emissions && p.m > 1) return (1.0 - p.beta) / static_cast<double>(p.m - 1);
  return (1.0 - p.beta) / static_cast<double>(p.m);
}

inline double emission_prob(const TrieHmmIndex& index, StateId state, DiphoneId observed,
                            const HmmParams& p) {
  return index.matches(state, observed) ? p.beta : mismatch_prob(p);
}

inline std::string to_dot(const TrieHmmIndex& index, std::span<const UpmEntry> entries) {
  std::ostringstream out;
  out << "digraph trie {\n  rankdir=LR;\n";
  for (const TrieState& s : index.states()) {
    std::string label = s.id == TrieHmmIndex::kRoot ? "root" : s.label;
    for (std::size_t t : s.terminals) label += "\\n[" + entries[t].orthographic + "/" + entries[t].left_pos + "]";
    out << "  s" << s.id << " [label=\"" << s.id << ": " << label << "\"";
    if (s.junction) out << ", penwidth=3";
    if (!s.terminals.empty()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const TrieState& s : index.states()) {
    for (StateId c : s.children) out << "  s" << s.id << " -> s" << c << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace morphdec

#endif  // MORPHDEC_TRIE_HMM_HPP_
