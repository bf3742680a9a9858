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

#ifndef MORPHDEC_LEXICON_HPP_
#define MORPHDEC_LEXICON_HPP_

// The unified phonetic-morpheme (UPM) dictionary and its two connectivity
// matrices.
//
// Lexicon records:
//   surface<TAB>orthographic<TAB>left_pos<TAB>right_pos<TAB>left_phon<TAB>right_phon[<TAB>IDIOM]
// where a phonemic class is `p:none` or `p>q` (p changed to q on the
// surface). Tag records: `tag[<TAB>parent|-[<TAB>final]]`. Matrix records:
// `left<TAB>right<TAB>allow|deny`.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "morphdec/error.hpp"
#include "morphdec/phonology.hpp"
#include "morphdec/text.hpp"

namespace morphdec {

class TagSet {
 public:
  static TagSet load(std::istream& in, const std::string& source = "tags") {
    TagSet tags;
    std::vector<std::pair<std::string, std::size_t>> pending_parents;
    for (const RecordLine& rec : read_records(in)) {
      auto f = split(rec.text, '\t');
      if (f.empty() || f.size() > 3 || f[0].empty()) {
        throw ParseError(source, rec.number, 1, "expected tag[<TAB>parent[<TAB>final]]");
      }
      if (tags.ids_.count(f[0])) throw ParseError(source, rec.number, 1, "duplicate tag " + f[0]);
      Tag tag{f[0], std::nullopt, false};
      if (f.size() >= 2 && !f[1].empty() && f[1] != "-") tag.parent_name = f[1];
      if (f.size() == 3) {
        if (f[2] != "final") throw ParseError(source, rec.number, 3, "expected 'final'");
        tag.final = true;
      }
      tags.ids_.emplace(tag.name, tags.tags_.size());
      tags.tags_.push_back(std::move(tag));
    }
    for (const Tag& t : tags.tags_) {
      if (t.parent_name && !tags.ids_.count(*t.parent_name)) {
        throw ValidationError("tag " + t.name + " has unknown parent " + *t.parent_name);
      }
    }
    for (const Tag& t : tags.tags_) {
      // acyclic: the ancestor walk must terminate within |tags| steps
      std::size_t steps = 0;
      const Tag* cur = &t;
      while (cur->parent_name) {
        cur = &tags.tags_[tags.ids_.at(*cur->parent_name)];
        if (++steps > tags.tags_.size()) throw ValidationError("tag hierarchy cycle at " + t.name);
      }
    }
    return tags;
  }

  bool contains(std::string_view name) const { return ids_.count(std::string(name)) > 0; }
  std::size_t size() const { return tags_.size(); }

  std::optional<std::string> parent(std::string_view name) const {
    return get(name).parent_name;
  }

  // The tag followed by its ancestors, most specific first.
  std::vector<std::string> lineage(std::string_view name) const {
    std::vector<std::string> out{std::string(name)};
    const Tag* cur = &get(name);
    while (cur->parent_name) {
      out.push_back(*cur->parent_name);
      cur = &get(*cur->parent_name);
    }
    return out;
  }

  // Word-final classes close an eojeol; the flag is inherited.
  bool is_final(std::string_view name) const {
    for (const std::string& t : lineage(name)) {
      if (get(t).final) return true;
    }
    return false;
  }

 private:
  struct Tag {
    std::string name;
    std::optional<std::string> parent_name;
    bool final = false;
  };

  const Tag& get(std::string_view name) const {
    auto it = ids_.find(std::string(name));
    if (it == ids_.end()) throw ValidationError("unknown tag " + std::string(name));
    return tags_[it->second];
  }

  std::vector<Tag> tags_;
  std::unordered_map<std::string, std::size_t> ids_;
};

struct PhonClass {
  std::string phoneme;
  std::optional<std::string> target;  // set when the phoneme is altered

  // The phoneme actually heard at the morpheme edge.
  const std::string& surface() const { return target ? *target : phoneme; }
  bool unchanged() const { return !target; }

  std::string render() const { return target ? phoneme + ">" + *target : phoneme + ":none"; }

  static std::optional<PhonClass> parse(std::string_view s) {
    if (auto pos = s.find(":none"); pos != std::string_view::npos && pos + 5 == s.size() && pos > 0) {
      return PhonClass{std::string(s.substr(0, pos)), std::nullopt};
    }
    auto gt = s.find('>');
    if (gt == std::string_view::npos || gt == 0 || gt + 1 == s.size()) return std::nullopt;
    return PhonClass{std::string(s.substr(0, gt)), std::string(s.substr(gt + 1))};
  }

  friend auto operator<=>(const PhonClass&, const PhonClass&) = default;
};

struct UpmEntry {
  std::string surface_header;
  std::string orthographic;
  std::string left_pos;
  std::string right_pos;
  PhonClass left_phon;
  PhonClass right_phon;
  bool idiom = false;
  std::vector<Diphone> diphone_header;  // filled by compile_headers

  auto key() const {
    return std::tie(surface_header, orthographic, left_pos, right_pos, left_phon, right_phon, idiom);
  }
};

inline std::string render_entry(const UpmEntry& e) {
  std::string out = e.surface_header + '\t' + e.orthographic + '\t' + e.left_pos + '\t' +
                    e.right_pos + '\t' + e.left_phon.render() + '\t' + e.right_phon.render();
  if (e.idiom) out += "\tIDIOM";
  return out;
}

struct Lexicon {
  std::vector<UpmEntry> entries;
  std::set<std::string> tags;  // every POS tag referenced by an entry
};

namespace detail {

inline std::vector<Phoneme> surface_phonemes(const PhonemeTable& table, std::string_view surface) {
  std::vector<Phoneme> out;
  for (const std::string& seg : split(surface, '-')) {
    auto ph = table.tokenize_segment(seg);
    out.insert(out.end(), ph.begin(), ph.end());
  }
  return out;
}

}  // namespace detail

// Parses and validates a lexicon. Entries are unique on (surface,
// orthographic, left_pos, right_pos): homographs with different tags are
// distinct morphemes.
inline Lexicon load_lexicon(std::istream& in, const PhonemeTable& phonemes,
                            const std::string& source = "lexicon") {
  Lexicon lex;
  std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
  for (const RecordLine& rec : read_records(in)) {
    auto f = split(rec.text, '\t');
    if (f.size() != 6 && f.size() != 7) {
      throw ParseError(source, rec.number, 1, "expected 6 or 7 tab-separated fields");
    }
    for (std::size_t i = 0; i < 6; ++i) {
      if (f[i].empty()) throw ParseError(source, rec.number, i + 1, "empty field");
    }
    UpmEntry e;
    e.surface_header = f[0];
    e.orthographic = f[1];
    e.left_pos = f[2];
    e.right_pos = f[3];
    auto lp = PhonClass::parse(f[4]);
    if (!lp) throw ParseError(source, rec.number, 5, "bad phonemic class '" + f[4] + "'");
    auto rp = PhonClass::parse(f[5]);
    if (!rp) throw ParseError(source, rec.number, 6, "bad phonemic class '" + f[5] + "'");
    e.left_phon = *lp;
    e.right_phon = *rp;
    if (f.size() == 7) {
      if (f[6] != "IDIOM") throw ParseError(source, rec.number, 7, "expected IDIOM");
      e.idiom = true;
    }
    const std::string where = source + ":" + std::to_string(rec.number) + " (" + e.surface_header + ")";
    if (!e.idiom && e.left_pos != e.right_pos) {
      throw ValidationError(where + ": left_pos != right_pos on a non-idiom entry");
    }
    for (const PhonClass* pc : {&e.left_phon, &e.right_phon}) {
      if (!phonemes.find(pc->phoneme)) {
        throw ValidationError(where + ": unknown phoneme '" + pc->phoneme + "' in phonemic class");
      }
      if (pc->target && !phonemes.find(*pc->target)) {
        throw ValidationError(where + ": unknown altered target '" + *pc->target + "'");
      }
    }
    std::vector<Phoneme> ph;
    try {
      ph = detail::surface_phonemes(phonemes, e.surface_header);
    } catch (const Error& err) {
      throw ValidationError(where + ": " + err.what());
    }
    if (ph.empty()) throw ValidationError(where + ": empty surface");
    if (e.left_phon.surface() != ph.front().symbol) {
      throw ValidationError(where + ": left phonemic class " + e.left_phon.render() +
                            " does not match first phoneme '" + ph.front().symbol + "'");
    }
    if (e.right_phon.surface() != ph.back().symbol) {
      throw ValidationError(where + ": right phonemic class " + e.right_phon.render() +
                            " does not match last phoneme '" + ph.back().symbol + "'");
    }
    if (!seen.insert({e.surface_header, e.orthographic, e.left_pos, e.right_pos}).second) {
      throw ValidationError(where + ": duplicate entry");
    }
    lex.tags.insert(e.left_pos);
    lex.tags.insert(e.right_pos);
    lex.entries.push_back(std::move(e));
  }
  return lex;
}

inline void validate_tags(const Lexicon& lex, const TagSet& tags) {
  for (const std::string& t : lex.tags) {
    if (!tags.contains(t)) throw ValidationError("lexicon uses undeclared tag " + t);
  }
}

// Sorts entries into the canonical order used for serialization and index
// construction.
inline void canonicalize(Lexicon& lex) {
  std::stable_sort(lex.entries.begin(), lex.entries.end(),
                   [](const UpmEntry& a, const UpmEntry& b) { return a.key() < b.key(); });
}

inline std::string serialize_lexicon(const Lexicon& lex) {
  std::vector<const UpmEntry*> sorted;
  for (const UpmEntry& e : lex.entries) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const UpmEntry* a, const UpmEntry* b) { return a->key() < b->key(); });
  std::string out;
  for (const UpmEntry* e : sorted) out += render_entry(*e) + '\n';
  return out;
}

// Fills diphone_header. A vowel-less surface made of a single consonant
// compiles to a one-element coda pseudo-diphone.
inline void compile_headers(std::vector<UpmEntry>& entries, const PhonemeTable& phonemes,
                            const DiphoneInventory& inventory) {
  for (UpmEntry& e : entries) {
    const std::string who = "entry " + e.surface_header + "/" + e.orthographic + ": ";
    try {
      if (e.surface_header.find('-') == std::string::npos) {
        auto ph = phonemes.tokenize_segment(e.surface_header);
        if (ph.size() == 1 && !ph[0].is_vowel()) {
          e.diphone_header = {Diphone{DiphoneKind::kCoda, ph[0], std::nullopt, ph[0].symbol}};
          continue;
        }
      }
      e.diphone_header = diphonize(inventory, tokenize_yale(phonemes, e.surface_header));
    } catch (const UnknownSymbol& err) {
      throw UnknownSymbol(who + err.message());
    } catch (const MalformedSyllable& err) {
      throw MalformedSyllable(who + err.message());
    } catch (const InventoryMiss& err) {
      throw InventoryMiss(who + err.message());
    }
  }
}

enum class Verdict { kAllow, kDeny };

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "allow") return Verdict::kAllow;
  if (s == "deny") return Verdict::kDeny;
  return std::nullopt;
}

// Morphotactic connectivity over POS tag pairs with hierarchical fallback:
// the most specific generalization level that has any record decides, deny
// winning ties within a level. No record at any level means not allowed.
class MorphConnMatrix {
 public:
  static MorphConnMatrix load(std::istream& in, const TagSet& tags,
                              const std::string& source = "morph_conn") {
    MorphConnMatrix m;
    for (const RecordLine& rec : read_records(in)) {
      auto f = split(rec.text, '\t');
      if (f.size() != 3) throw ParseError(source, rec.number, 1, "expected left<TAB>right<TAB>verdict");
      for (std::size_t i = 0; i < 2; ++i) {
        if (!tags.contains(f[i])) {
          throw ValidationError(source + ":" + std::to_string(rec.number) + ": unknown tag " + f[i]);
        }
      }
      auto v = parse_verdict(f[2]);
      if (!v) throw ParseError(source, rec.number, 3, "expected allow|deny");
      if (!m.records_.emplace(std::make_pair(f[0], f[1]), *v).second) {
        throw ValidationError(source + ":" + std::to_string(rec.number) + ": duplicate pair");
      }
    }
    return m;
  }

  void set(const std::string& left, const std::string& right, Verdict v) {
    records_[{left, right}] = v;
  }

  bool allowed(std::string_view left_right_pos, std::string_view right_left_pos,
               const TagSet& tags) const {
    const auto a = tags.lineage(left_right_pos);
    const auto b = tags.lineage(right_left_pos);
    for (std::size_t level = 0; level + 1 < a.size() + b.size(); ++level) {
      bool any = false;
      bool deny = false;
      for (std::size_t i = 0; i < a.size() && i <= level; ++i) {
        std::size_t j = level - i;
        if (j >= b.size()) continue;
        auto it = records_.find({a[i], b[j]});
        if (it == records_.end()) continue;
        any = true;
        deny |= it->second == Verdict::kDeny;
      }
      if (any) return !deny;
    }
    return false;
  }

  std::size_t size() const { return records_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, Verdict> records_;
};

// Phonological junction legality. Explicit records win over the default;
// '*' in place of a phoneme matches any phoneme with the same change part.
// Exact records beat one-wildcard records beat two-wildcard records; deny
// wins within a level. Unrecorded (x:none, y:none) junctions are allowed,
// every other unrecorded junction is not.
class PhonConnMatrix {
 public:
  static PhonConnMatrix load(std::istream& in, const Lexicon& lex,
                             const std::string& source = "phon_conn") {
    std::set<std::string> declared;
    for (const UpmEntry& e : lex.entries) {
      declared.insert(e.left_phon.render());
      declared.insert(e.right_phon.render());
    }
    PhonConnMatrix p;
    for (const RecordLine& rec : read_records(in)) {
      auto f = split(rec.text, '\t');
      if (f.size() != 3) throw ParseError(source, rec.number, 1, "expected left<TAB>right<TAB>verdict");
      for (std::size_t i = 0; i < 2; ++i) {
        auto pc = PhonClass::parse(f[i]);
        if (!pc) throw ParseError(source, rec.number, i + 1, "bad phonemic class '" + f[i] + "'");
        if (pc->phoneme != "*" && !declared.count(f[i])) {
          throw ValidationError(source + ":" + std::to_string(rec.number) + ": class " + f[i] +
                                " is not declared by any entry");
        }
      }
      auto v = parse_verdict(f[2]);
      if (!v) throw ParseError(source, rec.number, 3, "expected allow|deny");
      if (!p.records_.emplace(std::make_pair(f[0], f[1]), *v).second) {
        throw ValidationError(source + ":" + std::to_string(rec.number) + ": duplicate pair");
      }
    }
    return p;
  }

  void set(const PhonClass& left, const PhonClass& right, Verdict v) {
    records_[{left.render(), right.render()}] = v;
  }

  bool allowed(const PhonClass& left, const PhonClass& right) const {
    const std::string l = left.render();
    const std::string r = right.render();
    const std::string lw = wildcard(left);
    const std::string rw = wildcard(right);
    const std::vector<std::vector<std::pair<std::string, std::string>>> levels = {
        {{l, r}}, {{l, rw}, {lw, r}}, {{lw, rw}}};
    for (const auto& level : levels) {
      bool any = false;
      bool deny = false;
      for (const auto& key : level) {
        auto it = records_.find(key);
        if (it == records_.end()) continue;
        any = true;
        deny |= it->second == Verdict::kDeny;
      }
      if (any) return !deny;
    }
    return left.unchanged() && right.unchanged();
  }

  std::size_t size() const { return records_.size(); }

 private:
  static std::string wildcard(const PhonClass& c) {
    return PhonClass{"*", c.target}.render();
  }

  std::map<std::pair<std::string, std::string>, Verdict> records_;
};

inline bool morph_connect_allowed(const UpmEntry& left, const UpmEntry& right,
                                  const MorphConnMatrix& m, const TagSet& tags) {
  return m.allowed(left.right_pos, right.left_pos, tags);
}

inline bool phon_connect_allowed(const UpmEntry& left, const UpmEntry& right,
                                 const PhonConnMatrix& p) {
  return p.allowed(left.right_phon, right.left_phon);
}

// Tag hierarchy plus both matrices.
struct Grammar {
  TagSet tags;
  MorphConnMatrix morph;
  PhonConnMatrix phon;
};

// Both predicates evaluated once for every ordered entry pair.
class ConnectivityTable {
 public:
  ConnectivityTable() = default;
  ConnectivityTable(const std::vector<UpmEntry>& entries, const Grammar& g) : n_(entries.size()) {
    morph_.assign(n_ * n_, false);
    phon_.assign(n_ * n_, false);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        morph_[i * n_ + j] = morph_connect_allowed(entries[i], entries[j], g.morph, g.tags);
        phon_[i * n_ + j] = phon_connect_allowed(entries[i], entries[j], g.phon);
      }
    }
  }

  bool morph(std::size_t left, std::size_t right) const { return morph_[left * n_ + right]; }
  bool phon(std::size_t left, std::size_t right) const { return phon_[left * n_ + right]; }
  bool allowed(std::size_t left, std::size_t right) const {
    return morph(left, right) && phon(left, right);
  }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<bool> morph_;
  std::vector<bool> phon_;
};

}  // namespace morphdec

#endif  // MORPHDEC_LEXICON_HPP_
