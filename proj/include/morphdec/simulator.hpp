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

#ifndef MORPHDEC_SIMULATOR_HPP_
#define MORPHDEC_SIMULATOR_HPP_

// Seeded error channel standing in for the acoustic front end: deletes,
// substitutes and inserts diphones in a reference stream, and optionally
// repeats symbols to mimic a sliding-window spotter.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "morphdec/decoder.hpp"
#include "morphdec/error.hpp"
#include "morphdec/phonology.hpp"
#include "morphdec/text.hpp"

namespace morphdec {

enum class ConfusionMode { kUniform, kSameVowelGroup };

inline std::string confusion_name(ConfusionMode m) {
  return m == ConfusionMode::kUniform ? "uniform" : "same_vowel_group";
}

inline ConfusionMode parse_confusion(const std::string& s) {
  if (s == "uniform") return ConfusionMode::kUniform;
  if (s == "same_vowel_group") return ConfusionMode::kSameVowelGroup;
  throw ValidationError("unknown confusion mode '" + s + "'");
}

struct NoiseConfig {
  double del_rate = 0.0;  // per reference diphone
  double sub_rate = 0.0;  // per surviving diphone
  double ins_rate = 0.0;  // expected insertions per reference diphone
  ConfusionMode confusion = ConfusionMode::kUniform;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(del_rate >= 0.0 && del_rate <= 1.0)) throw ValidationError("del_rate must be in [0,1]");
    if (!(sub_rate >= 0.0 && sub_rate <= 1.0)) throw ValidationError("sub_rate must be in [0,1]");
    if (!(ins_rate >= 0.0)) throw ValidationError("ins_rate must be >= 0");
  }

  NoiseConfig scaled(double factor) const {
    NoiseConfig c = *this;
    c.del_rate = std::min(1.0, del_rate * factor);
    c.sub_rate = std::min(1.0, sub_rate * factor);
    c.ins_rate = ins_rate * factor;
    return c;
  }

  std::string render() const {
    return "del=" + format_double(del_rate) + ",sub=" + format_double(sub_rate) +
           ",ins=" + format_double(ins_rate) + ",confusion=" + confusion_name(confusion);
  }
};

// Continuous spotting error profile: 6.4% of reference diphones lost
// (deletions and substitutions together, split evenly) and 38.6%
// insertions per reference diphone.
inline NoiseConfig paper_fig10_preset(std::uint64_t seed = 0) {
  constexpr double kDeleteClass = 0.064;
  NoiseConfig c;
  c.del_rate = kDeleteClass / 2.0;
  c.sub_rate = (kDeleteClass / 2.0) / (1.0 - c.del_rate);
  c.ins_rate = 0.386;
  c.seed = seed;
  return c;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t record_index) {
  return seed ^ record_index;
}

struct CorruptionStats {
  std::size_t reference = 0;
  std::size_t deleted = 0;
  std::size_t substituted = 0;
  std::size_t inserted = 0;

  CorruptionStats& operator+=(const CorruptionStats& o) {
    reference += o.reference;
    deleted += o.deleted;
    substituted += o.substituted;
    inserted += o.inserted;
    return *this;
  }
};

class NoiseChannel {
 public:
  explicit NoiseChannel(const DiphoneInventory& inventory) : inventory_(&inventory) {
    for (DiphoneId id = 0; id < inventory.size(); ++id) {
      groups_[group_of(inventory.at(id))].push_back(id);
    }
  }

  // Vowel group of a diphone; C2C1 diphones form their own group.
  static std::string group_of(const Diphone& d) {
    switch (d.kind) {
      case DiphoneKind::kV:
      case DiphoneKind::kVC2: return d.left->symbol;
      case DiphoneKind::kC1V: return d.right->symbol;
      default: return "cc";
    }
  }

  ObservationSeq corrupt(std::span<const DiphoneId> reference, const NoiseConfig& cfg,
                         CorruptionStats* stats = nullptr) const {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double insert_slot = cfg.ins_rate / (1.0 + cfg.ins_rate);
    CorruptionStats local;
    ObservationSeq out;
    out.source_tag = "seed=" + std::to_string(cfg.seed);
    for (DiphoneId ref : reference) {
      ++local.reference;
      if (unit(rng) < cfg.del_rate) {
        ++local.deleted;
      } else if (unit(rng) < cfg.sub_rate) {
        out.symbols.push_back(substitute(ref, cfg.confusion, rng));
        ++local.substituted;
      } else {
        out.symbols.push_back(ref);
      }
      // geometric number of insertions with mean ins_rate
      while (insert_slot > 0.0 && unit(rng) < insert_slot) {
        out.symbols.push_back(random_symbol(rng));
        ++local.inserted;
      }
    }
    if (stats) *stats += local;
    if (out.symbols.empty()) throw EmptyResult("every reference diphone was deleted");
    return out;
  }

 private:
  DiphoneId random_symbol(std::mt19937_64& rng) const {
    std::uniform_int_distribution<DiphoneId> pick(0, static_cast<DiphoneId>(inventory_->size() - 1));
    return pick(rng);
  }

  DiphoneId substitute(DiphoneId ref, ConfusionMode mode, std::mt19937_64& rng) const {
    if (inventory_->size() < 2) return ref;
    if (mode == ConfusionMode::kSameVowelGroup) {
      const auto& group = groups_.at(group_of(inventory_->at(ref)));
      if (group.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, group.size() - 2);
        std::size_t k = pick(rng);
        if (group[k] == ref) k = group.size() - 1;
        return group[k];
      }
    }
    std::uniform_int_distribution<DiphoneId> pick(0, static_cast<DiphoneId>(inventory_->size() - 2));
    DiphoneId k = pick(rng);
    return k >= ref ? k + 1 : k;
  }

  const DiphoneInventory* inventory_;
  std::map<std::string, std::vector<DiphoneId>> groups_;
};

struct GoldRecord {
  std::string eonjeol_text;
  std::vector<DiphoneId> reference_diphones;
  std::vector<std::string> gold_morphemes;  // orthographic, in order
  std::string gold_rendering;
};

inline std::vector<std::string> rendering_morphemes(std::string_view rendering) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : rendering) {
    if (ch == '+' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline GoldRecord make_gold(const std::string& text, const std::string& rendering,
                            const PhonemeTable& phonemes, const DiphoneInventory& inventory) {
  GoldRecord g;
  g.eonjeol_text = text;
  for (const Diphone& d : diphonize(inventory, tokenize_yale(phonemes, text))) {
    g.reference_diphones.push_back(inventory.require(d.symbol));
  }
  g.gold_rendering = rendering;
  g.gold_morphemes = rendering_morphemes(rendering);
  return g;
}

inline ObservationSeq corrupt(const GoldRecord& gold, const NoiseConfig& cfg,
                              const DiphoneInventory& inventory, CorruptionStats* stats = nullptr) {
  return NoiseChannel(inventory).corrupt(gold.reference_diphones, cfg, stats);
}

// Repeats each symbol r times, r uniform in [min_rep, max_rep].
inline ObservationSeq frame_expand(const ObservationSeq& obs, std::size_t min_rep,
                                   std::size_t max_rep, std::uint64_t seed) {
  if (min_rep < 1 || max_rep < min_rep) throw ValidationError("need 1 <= min_rep <= max_rep");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> reps(min_rep, max_rep);
  ObservationSeq out;
  out.source_tag = obs.source_tag;
  for (DiphoneId s : obs.symbols) {
    const std::size_t r = min_rep == max_rep ? min_rep : reps(rng);
    out.symbols.insert(out.symbols.end(), r, s);
  }
  return out;
}

}  // namespace morphdec

#endif  // MORPHDEC_SIMULATOR_HPP_
