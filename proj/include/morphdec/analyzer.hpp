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

#ifndef MORPHDEC_ANALYZER_HPP_
#define MORPHDEC_ANALYZER_HPP_

// Tabular morphological and phonological co-analysis. Lattice candidates
// are enrolled into a triangular table indexed by (start, end) and
// combined bottom-up, CYK style, under both connectivity matrices.

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "morphdec/decoder.hpp"
#include "morphdec/error.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/text.hpp"

namespace morphdec {

struct Analysis {
  std::vector<MorphemeCandidate> morphemes;
  double log_score = 0.0;

  std::size_t start() const { return morphemes.front().start; }
  std::size_t end() const { return morphemes.back().end; }

  std::vector<std::array<std::size_t, 3>> identity() const {
    std::vector<std::array<std::size_t, 3>> id;
    id.reserve(morphemes.size());
    for (const MorphemeCandidate& m : morphemes) id.push_back({m.entry, m.start, m.end});
    return id;
  }
};

// Left-to-right sum, so that equal morpheme sequences always get
// bit-identical scores whatever split produced them.
inline double sum_scores(std::span<const MorphemeCandidate> morphemes) {
  double s = 0.0;
  for (const MorphemeCandidate& m : morphemes) s += m.log_score;
  return s;
}

inline std::pair<std::string, std::string> boundary_tags(const Analysis& a,
                                                         std::span<const UpmEntry> entries) {
  return {entries[a.morphemes.front().entry].left_pos, entries[a.morphemes.back().entry].right_pos};
}

inline std::string plain_rendering(const Analysis& a, std::span<const UpmEntry> entries) {
  std::string out;
  for (std::size_t i = 0; i < a.morphemes.size(); ++i) {
    if (i) out += '+';
    out += entries[a.morphemes[i].entry].orthographic;
  }
  return out;
}

class TriangularTable {
 public:
  explicit TriangularTable(std::size_t n = 0) : n_(n), cells_(n * n) {}

  std::size_t n() const { return n_; }

  // 1-based, i <= j
  std::vector<Analysis>& cell(std::size_t i, std::size_t j) { return cells_[(i - 1) * n_ + (j - 1)]; }
  const std::vector<Analysis>& cell(std::size_t i, std::size_t j) const {
    return cells_[(i - 1) * n_ + (j - 1)];
  }

  bool empty() const {
    return std::all_of(cells_.begin(), cells_.end(), [](const auto& c) { return c.empty(); });
  }

  std::size_t analysis_count() const {
    std::size_t k = 0;
    for (const auto& c : cells_) k += c.size();
    return k;
  }

 private:
  std::size_t n_;
  std::vector<std::vector<Analysis>> cells_;
};

inline TriangularTable enroll(const CandidateLattice& lattice) {
  TriangularTable table(lattice.length());
  for (const auto& [span, cands] : lattice.by_span()) {
    auto& cell = table.cell(span.first, span.second);
    for (const MorphemeCandidate& c : cands) {
      bool dup = std::any_of(cell.begin(), cell.end(), [&](const Analysis& a) {
        return a.morphemes.front().entry == c.entry;
      });
      if (!dup) cell.push_back(Analysis{{c}, c.log_score});
    }
  }
  return table;
}

inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

// Best first: higher score, then fewer morphemes, then rendering, then
// spans.
inline void rank_analyses(std::vector<Analysis>& analyses, std::span<const UpmEntry> entries) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(analyses.size());
  for (std::size_t i = 0; i < analyses.size(); ++i) keys.emplace_back(plain_rendering(analyses[i], entries), i);
  std::vector<std::size_t> order(analyses.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Analysis& a = analyses[x];
    const Analysis& b = analyses[y];
    if (a.log_score != b.log_score) return a.log_score > b.log_score;
    if (a.morphemes.size() != b.morphemes.size()) return a.morphemes.size() < b.morphemes.size();
    if (keys[x].first != keys[y].first) return keys[x].first < keys[y].first;
    return a.identity() < b.identity();
  });
  std::vector<Analysis> sorted;
  sorted.reserve(analyses.size());
  for (std::size_t i : order) sorted.push_back(std::move(analyses[i]));
  analyses = std::move(sorted);
}

// Fills every cell (i,j) with a (+) b for a in (i,k), b in (k+1,j) whenever
// the junction between a's last and b's first morpheme passes both
// connectivity checks. Cells are deduplicated and cut to `cap`.
inline TriangularTable combine(TriangularTable table, std::span<const UpmEntry> entries,
                               const ConnectivityTable& conn, std::size_t cap = 16) {
  const std::size_t n = table.n();
  auto finish = [&](std::vector<Analysis>& cell) {
    rank_analyses(cell, entries);
    if (cell.size() > cap) cell.resize(cap);
  };
  for (std::size_t i = 1; i <= n; ++i) finish(table.cell(i, i));
  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 1; i + len - 1 <= n; ++i) {
      const std::size_t j = i + len - 1;
      auto& out = table.cell(i, j);
      std::set<std::vector<std::array<std::size_t, 3>>> seen;
      for (const Analysis& a : out) seen.insert(a.identity());
      for (std::size_t k = i; k < j; ++k) {
        const auto& left = table.cell(i, k);
        const auto& right = table.cell(k + 1, j);
        if (left.empty() || right.empty()) continue;
        for (const Analysis& a : left) {
          for (const Analysis& b : right) {
            if (!conn.allowed(a.morphemes.back().entry, b.morphemes.front().entry)) continue;
            Analysis ab;
            ab.morphemes.reserve(a.morphemes.size() + b.morphemes.size());
            ab.morphemes.insert(ab.morphemes.end(), a.morphemes.begin(), a.morphemes.end());
            ab.morphemes.insert(ab.morphemes.end(), b.morphemes.begin(), b.morphemes.end());
            if (!seen.insert(ab.identity()).second) continue;
            ab.log_score = sum_scores(ab.morphemes);
            out.push_back(std::move(ab));
          }
        }
      }
      finish(out);
    }
  }
  return table;
}

inline TriangularTable combine(TriangularTable table, std::span<const UpmEntry> entries,
                               const Grammar& grammar, std::size_t cap = 16) {
  std::vector<UpmEntry> copy(entries.begin(), entries.end());
  return combine(std::move(table), entries, ConnectivityTable(copy, grammar), cap);
}

struct EojeolOutput {
  std::string rendering;          // orthographic, '+' inside an eojeol, ' ' between
  std::string surface_rendering;  // same layout with surface forms
  double score = 0.0;
  std::size_t span_start = 1;
  std::size_t span_end = 1;
  std::vector<MorphemeCandidate> morphemes;
  bool partial = false;  // true for the gap-tolerant fallback cover
  std::size_t gaps = 0;  // uncovered observation positions
};

// Joins morphemes with '+', breaking the eojeol after word-final classes.
inline std::pair<std::string, std::string> render_morphemes(std::span<const MorphemeCandidate> ms,
                                                            std::span<const UpmEntry> entries,
                                                            const TagSet& tags) {
  std::string orth, surf;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const UpmEntry& e = entries[ms[i].entry];
    orth += e.orthographic;
    surf += e.surface_header;
    if (i + 1 < ms.size()) {
      const char sep = tags.is_final(e.right_pos) ? ' ' : '+';
      orth += sep;
      surf += sep;
    }
  }
  return {orth, surf};
}

struct AnalyzerConfig {
  HmmParams hmm;
  PruneConfig prune;
  std::size_t cap = 16;
  DecodeMode mode = DecodeMode::kViterbi;
};

// Everything the analyzer needs, built once and shared read-only.
struct AnalysisModel {
  std::vector<UpmEntry> entries;  // compiled, canonical order
  TrieHmmIndex index;
  Grammar grammar;
  ConnectivityTable conn;
};

namespace detail {

inline std::vector<EojeolOutput> best_cover(const TriangularTable& table,
                                            std::span<const UpmEntry> entries, const TagSet& tags) {
  const std::size_t n = table.n();
  struct Best {
    std::size_t gaps = 0;
    double score = 0.0;
    std::size_t from = 0;           // previous boundary
    const Analysis* piece = nullptr;  // null for a gap position
    bool reachable = false;
  };
  std::vector<Best> best(n + 1);
  best[0].reachable = true;
  auto better = [](std::size_t g, double s, const Best& b) {
    return !b.reachable || g < b.gaps || (g == b.gaps && s > b.score);
  };
  for (std::size_t t = 1; t <= n; ++t) {
    {
      const Best& prev = best[t - 1];
      Best cand{prev.gaps + 1, prev.score, t - 1, nullptr, true};
      best[t] = cand;
    }
    for (std::size_t i = 1; i <= t; ++i) {
      const auto& cell = table.cell(i, t);
      if (cell.empty()) continue;
      const Best& prev = best[i - 1];
      const std::size_t g = prev.gaps;
      const double s = prev.score + cell.front().log_score;
      if (better(g, s, best[t])) best[t] = Best{g, s, i - 1, &cell.front(), true};
    }
  }
  std::vector<const Analysis*> pieces;
  for (std::size_t t = n; t > 0; t = best[t].from) {
    if (best[t].piece) pieces.push_back(best[t].piece);
  }
  std::reverse(pieces.begin(), pieces.end());
  EojeolOutput out;
  out.partial = true;
  out.gaps = best[n].gaps;
  out.score = best[n].score;
  out.span_end = n;
  std::vector<std::string> orth, surf;
  for (const Analysis* a : pieces) {
    auto [o, s] = render_morphemes(a->morphemes, entries, tags);
    orth.push_back(o);
    surf.push_back(s);
    out.morphemes.insert(out.morphemes.end(), a->morphemes.begin(), a->morphemes.end());
  }
  out.rendering = join(orth, " ");
  out.surface_rendering = join(surf, " ");
  return {out};
}

}  // namespace detail

// Outputs ranked best first, one per distinct rendering. Falls back to the
// best gap-tolerant cover when no analysis spans the whole eonjeol.
inline std::vector<EojeolOutput> analyze_table(const TriangularTable& table,
                                               std::span<const UpmEntry> entries, const TagSet& tags) {
  if (table.n() == 0 || table.empty()) throw NoAnalysis("no morpheme candidates");
  const auto& full = table.cell(1, table.n());
  if (full.empty()) return detail::best_cover(table, entries, tags);
  std::vector<EojeolOutput> out;
  std::set<std::string> seen;
  for (const Analysis& a : full) {
    auto [orth, surf] = render_morphemes(a.morphemes, entries, tags);
    if (!seen.insert(orth).second) continue;
    out.push_back(EojeolOutput{orth, surf, a.log_score, 1, table.n(), a.morphemes, false, 0});
  }
  return out;
}

inline std::vector<EojeolOutput> analyze(const ObservationSeq& obs, const AnalysisModel& model,
                                         const AnalyzerConfig& cfg) {
  CandidateLattice lattice = decode(obs, model.index, cfg.hmm, cfg.prune, cfg.mode);
  TriangularTable table = combine(enroll(lattice), model.entries, model.conn, cfg.cap);
  return analyze_table(table, model.entries, model.grammar.tags);
}

// `orthographic|surface|left_pos|right_pos|start|end` per morpheme.
inline std::string verbose_fields(const EojeolOutput& out, std::span<const UpmEntry> entries) {
  std::string s;
  if (out.partial) s += "\tpartial:gaps=" + std::to_string(out.gaps);
  for (const MorphemeCandidate& m : out.morphemes) {
    const UpmEntry& e = entries[m.entry];
    s += '\t' + e.orthographic + '|' + e.surface_header + '|' + e.left_pos + '|' + e.right_pos + '|' +
         std::to_string(m.start) + '|' + std::to_string(m.end);
  }
  return s;
}

}  // namespace morphdec

#endif  // MORPHDEC_ANALYZER_HPP_
