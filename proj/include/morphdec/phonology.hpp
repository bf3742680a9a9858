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

#ifndef MORPHDEC_PHONOLOGY_HPP_
#define MORPHDEC_PHONOLOGY_HPP_

// Phonemes, syllables and diphones over Yale romanization.
//
// The phoneme table and the diphone inventory are data assets: one
// record per line, '#' comments. Phoneme records are
// `symbol<TAB>vowel|consonant<TAB>sonorant(0|1)<TAB>nucleus|onset|coda`; a
// consonant that may occupy both syllable positions has one record per
// role. Inventory records are `symbol<TAB>kind<TAB>left<TAB>right` with '-'
// for an absent phoneme.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphdec/error.hpp"
#include "morphdec/text.hpp"

namespace morphdec {

enum class PhonemeClass { kVowel, kConsonant };
enum class PhonemeRole { kNucleus, kOnset, kCoda };

struct Phoneme {
  std::string symbol;
  PhonemeClass klass = PhonemeClass::kVowel;
  bool sonorant = false;

  bool is_vowel() const { return klass == PhonemeClass::kVowel; }
  friend bool operator==(const Phoneme&, const Phoneme&) = default;
};

struct Syllable {
  std::optional<Phoneme> onset;
  Phoneme nucleus;
  std::optional<Phoneme> coda;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// kCoda is not an inventory kind: it is the one-phoneme header of a
// vowel-less morpheme that attaches to the preceding syllable's coda.
enum class DiphoneKind { kV, kC1V, kVC2, kC2C1, kCoda };

inline std::string_view kind_name(DiphoneKind kind) {
  switch (kind) {
    case DiphoneKind::kV: return "V";
    case DiphoneKind::kC1V: return "C1V";
    case DiphoneKind::kVC2: return "VC2";
    case DiphoneKind::kC2C1: return "C2C1";
    case DiphoneKind::kCoda: return "CODA";
  }
  return "?";
}

inline std::optional<DiphoneKind> parse_kind(std::string_view s) {
  if (s == "V") return DiphoneKind::kV;
  if (s == "C1V") return DiphoneKind::kC1V;
  if (s == "VC2") return DiphoneKind::kVC2;
  if (s == "C2C1") return DiphoneKind::kC2C1;
  return std::nullopt;
}

struct Diphone {
  DiphoneKind kind = DiphoneKind::kV;
  std::optional<Phoneme> left;
  std::optional<Phoneme> right;
  std::string symbol;

  friend bool operator==(const Diphone&, const Diphone&) = default;
};

class PhonemeTable {
 public:
  static PhonemeTable load(std::istream& in, const std::string& source = "phonemes") {
    PhonemeTable table;
    for (const RecordLine& rec : read_records(in)) {
      auto f = split(rec.text, '\t');
      if (f.size() != 4) throw ParseError(source, rec.number, 1, "expected 4 fields");
      Phoneme p{f[0], PhonemeClass::kVowel, false};
      if (f[0].empty() || f[0].find('-') != std::string::npos) {
        throw ParseError(source, rec.number, 1, "bad phoneme symbol '" + f[0] + "'");
      }
      if (f[1] == "vowel") {
        p.klass = PhonemeClass::kVowel;
      } else if (f[1] == "consonant") {
        p.klass = PhonemeClass::kConsonant;
      } else {
        throw ParseError(source, rec.number, 2, "bad class '" + f[1] + "'");
      }
      if (f[2] != "0" && f[2] != "1") throw ParseError(source, rec.number, 3, "bad sonorant flag");
      p.sonorant = f[2] == "1";
      PhonemeRole role;
      if (f[3] == "nucleus") {
        role = PhonemeRole::kNucleus;
      } else if (f[3] == "onset") {
        role = PhonemeRole::kOnset;
      } else if (f[3] == "coda") {
        role = PhonemeRole::kCoda;
      } else {
        throw ParseError(source, rec.number, 4, "bad role '" + f[3] + "'");
      }
      if ((role == PhonemeRole::kNucleus) != p.is_vowel()) {
        throw ParseError(source, rec.number, 4, "role does not match class");
      }
      auto it = table.by_symbol_.find(p.symbol);
      if (it != table.by_symbol_.end()) {
        const Phoneme& prev = table.phonemes_[it->second];
        if (prev.klass != p.klass || prev.sonorant != p.sonorant) {
          throw ParseError(source, rec.number, 1, "conflicting records for '" + p.symbol + "'");
        }
      } else {
        table.by_symbol_.emplace(p.symbol, table.phonemes_.size());
        table.phonemes_.push_back(p);
      }
      if (!table.roles_.insert({p.symbol, role}).second) {
        throw ParseError(source, rec.number, 1, "duplicate record for '" + p.symbol + "'");
      }
    }
    table.by_length_.clear();
    for (const Phoneme& p : table.phonemes_) table.by_length_.push_back(p.symbol);
    std::stable_sort(table.by_length_.begin(), table.by_length_.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    return table;
  }

  const Phoneme* find(std::string_view symbol) const {
    auto it = by_symbol_.find(std::string(symbol));
    return it == by_symbol_.end() ? nullptr : &phonemes_[it->second];
  }

  bool has_role(std::string_view symbol, PhonemeRole role) const {
    return roles_.count({std::string(symbol), role}) > 0;
  }

  // Number of (symbol, role) records; 46 for the bundled Korean table.
  std::size_t record_count() const { return roles_.size(); }
  std::span<const Phoneme> phonemes() const { return phonemes_; }

  // Longest-match split of a separator-free segment into phonemes.
  std::vector<Phoneme> tokenize_segment(std::string_view segment) const {
    std::vector<Phoneme> out;
    std::size_t pos = 0;
    while (pos < segment.size()) {
      const Phoneme* hit = nullptr;
      for (const std::string& sym : by_length_) {
        if (segment.substr(pos, sym.size()) == sym) {
          hit = find(sym);
          break;
        }
      }
      if (!hit) {
        throw UnknownSymbol("cannot tokenize '" + std::string(segment.substr(pos)) + "' in '" +
                            std::string(segment) + "'");
      }
      out.push_back(*hit);
      pos += hit->symbol.size();
    }
    return out;
  }

 private:
  std::vector<Phoneme> phonemes_;
  std::unordered_map<std::string, std::size_t> by_symbol_;
  std::set<std::pair<std::string, PhonemeRole>> roles_;
  std::vector<std::string> by_length_;  // longest first
};

using DiphoneId = std::uint32_t;

class DiphoneInventory {
 public:
  static DiphoneInventory load(std::istream& in, const PhonemeTable& phonemes,
                               const std::string& source = "inventory") {
    DiphoneInventory inv;
    for (const RecordLine& rec : read_records(in)) {
      auto f = split(rec.text, '\t');
      if (f.size() != 4) throw ParseError(source, rec.number, 1, "expected 4 fields");
      auto kind = parse_kind(f[1]);
      if (!kind) throw ParseError(source, rec.number, 2, "bad diphone kind '" + f[1] + "'");
      Diphone d{*kind, std::nullopt, std::nullopt, f[0]};
      auto resolve = [&](const std::string& sym, std::size_t col) -> std::optional<Phoneme> {
        if (sym == "-") return std::nullopt;
        const Phoneme* p = phonemes.find(sym);
        if (!p) throw ParseError(source, rec.number, col, "unknown phoneme '" + sym + "'");
        return *p;
      };
      d.left = resolve(f[2], 3);
      d.right = resolve(f[3], 4);
      if (!shape_ok(d)) {
        throw ParseError(source, rec.number, 2, "phonemes do not fit kind " + f[1]);
      }
      std::string rendered = d.left->symbol + (d.right ? d.right->symbol : "");
      if (rendered != d.symbol) {
        throw ParseError(source, rec.number, 1, "symbol '" + d.symbol + "' != '" + rendered + "'");
      }
      if (d.symbol.find('-') != std::string::npos) {
        throw ParseError(source, rec.number, 1, "'-' in diphone symbol");
      }
      if (!inv.by_symbol_.emplace(d.symbol, static_cast<DiphoneId>(inv.entries_.size())).second) {
        throw ParseError(source, rec.number, 1, "duplicate diphone '" + d.symbol + "'");
      }
      inv.counts_[static_cast<std::size_t>(d.kind)]++;
      inv.entries_.push_back(std::move(d));
    }
    return inv;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t count(DiphoneKind kind) const { return counts_[static_cast<std::size_t>(kind)]; }
  std::span<const Diphone> entries() const { return entries_; }
  const Diphone& at(DiphoneId id) const { return entries_.at(id); }

  std::optional<DiphoneId> id_of(std::string_view symbol) const {
    auto it = by_symbol_.find(std::string(symbol));
    if (it == by_symbol_.end()) return std::nullopt;
    return it->second;
  }

  DiphoneId require(std::string_view symbol) const {
    auto id = id_of(symbol);
    if (!id) throw InventoryMiss("diphone '" + std::string(symbol) + "' not in inventory");
    return *id;
  }

 private:
  static bool shape_ok(const Diphone& d) {
    if (!d.left) return false;
    const bool lv = d.left->is_vowel();
    switch (d.kind) {
      case DiphoneKind::kV: return lv && !d.right;
      case DiphoneKind::kC1V: return !lv && d.right && d.right->is_vowel();
      case DiphoneKind::kVC2: return lv && d.right && !d.right->is_vowel();
      case DiphoneKind::kC2C1:
        return !lv && d.left->sonorant && d.right && !d.right->is_vowel();
      case DiphoneKind::kCoda: return false;
    }
    return false;
  }

  std::vector<Diphone> entries_;
  std::unordered_map<std::string, DiphoneId> by_symbol_;
  std::array<std::size_t, 5> counts_{};
};

// Splits Yale text into syllables. '-' closes a syllable; each syllable has
// exactly one vowel, with at most one consonant on either side of it.
inline std::vector<Syllable> tokenize_yale(const PhonemeTable& table, std::string_view input) {
  std::vector<Syllable> out;
  for (const std::string& segment : split(input, '-')) {
    std::vector<Phoneme> ph = table.tokenize_segment(segment);
    std::size_t vowels = 0;
    std::size_t vowel_at = 0;
    for (std::size_t i = 0; i < ph.size(); ++i) {
      if (ph[i].is_vowel()) {
        ++vowels;
        vowel_at = i;
      }
    }
    if (vowels != 1) {
      throw MalformedSyllable("syllable '" + segment + "' has " + std::to_string(vowels) +
                              " vowels in '" + std::string(input) + "'");
    }
    if (vowel_at > 1 || ph.size() - vowel_at > 2) {
      throw MalformedSyllable("consonant cluster in syllable '" + segment + "'");
    }
    Syllable syl;
    syl.nucleus = ph[vowel_at];
    if (vowel_at == 1) syl.onset = ph[0];
    if (vowel_at + 1 < ph.size()) syl.coda = ph[vowel_at + 1];
    out.push_back(std::move(syl));
  }
  return out;
}

// Per syllable: C1V (or V), then VC2 when there is a coda; between
// syllables a C2C1 when the coda is sonorant and the next syllable has an
// onset.
inline std::vector<Diphone> diphonize(const DiphoneInventory& inventory,
                                      std::span<const Syllable> syllables) {
  std::vector<Diphone> out;
  auto emit = [&](const std::string& symbol) { out.push_back(inventory.at(inventory.require(symbol))); };
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    const Syllable& s = syllables[i];
    emit((s.onset ? s.onset->symbol : std::string()) + s.nucleus.symbol);
    if (s.coda) {
      emit(s.nucleus.symbol + s.coda->symbol);
      if (i + 1 < syllables.size() && s.coda->sonorant && syllables[i + 1].onset) {
        emit(s.coda->symbol + syllables[i + 1].onset->symbol);
      }
    }
  }
  return out;
}

inline Diphone diphone_class(const DiphoneInventory& inventory, std::string_view symbol) {
  return inventory.at(inventory.require(symbol));
}

inline std::vector<std::string> diphone_symbols(std::span<const Diphone> diphones) {
  std::vector<std::string> out;
  out.reserve(diphones.size());
  for (const Diphone& d : diphones) out.push_back(d.symbol);
  return out;
}

}  // namespace morphdec

#endif  // MORPHDEC_PHONOLOGY_HPP_
