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

#ifndef MORPHDEC_TESTS_ORACLES_HPP_
#define MORPHDEC_TESTS_ORACLES_HPP_

// Brute-force reference implementations. Each one enumerates explicitly
// what the production code computes by dynamic programming.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "morphdec/analyzer.hpp"
#include "morphdec/decoder.hpp"
#include "morphdec/evaluation.hpp"
#include "morphdec/lexicon.hpp"
#include "morphdec/phonology.hpp"
#include "exact_segmenter.hpp"

namespace morphdec::oracle {

// ---------------------------------------------------------------------------
// Decoder

struct BruteCandidate {
  double score;
  std::set<std::size_t> mismatches;  // over all paths within 1e-9 of score
};

// Fan-out of every header prefix, computed from the entries alone. The key
// is the list of labels from the root; junction labels are prefixed '^'.
inline std::map<std::vector<std::string>, std::size_t> fanouts(std::span<const UpmEntry> entries,
                                                               const DiphoneInventory& inventory) {
  std::map<std::vector<std::string>, std::set<std::string>> kids;
  std::set<std::string> c1v_firsts;
  for (const UpmEntry& e : entries) {
    std::vector<std::string> prefix;
    for (const Diphone& d : e.diphone_header) {
      kids[prefix].insert(d.symbol);
      prefix.push_back(d.symbol);
    }
    kids[prefix];
    if (e.diphone_header.front().kind == DiphoneKind::kC1V) c1v_firsts.insert(e.diphone_header.front().symbol);
  }
  for (const std::string& f : c1v_firsts) {
    const Diphone& first = inventory.at(*inventory.id_of(f));
    for (const Diphone& d : inventory.entries()) {
      if (d.kind == DiphoneKind::kC2C1 && d.right->symbol == first.left->symbol) {
        kids[{}].insert("^" + d.symbol);
        kids[{"^" + d.symbol}].insert(f);
      }
    }
  }
  std::map<std::vector<std::string>, std::size_t> out;
  for (const auto& [k, v] : kids) out[k] = v.size();
  return out;
}

// Best score of every (entry, start, end) reachable by any path, found by
// enumerating all ways to stretch every header element over the span.
inline std::map<std::tuple<std::size_t, std::size_t, std::size_t>, BruteCandidate> brute_decode(
    const std::vector<DiphoneId>& obs, std::span<const UpmEntry> entries, const DiphoneInventory& inventory,
    const HmmParams& p, bool exact = false) {
  const auto fan = fanouts(entries, inventory);
  const double log_self = std::log(p.alpha);
  const double log_hit = std::log(p.beta);
  const double log_miss = std::log(p.normalize_emissions ? (1.0 - p.beta) / static_cast<double>(p.m - 1)
                                                         : (1.0 - p.beta) / static_cast<double>(p.m));
  auto advance = [&](const std::vector<std::string>& prefix) {
    return std::log((1.0 - p.alpha) / static_cast<double>(fan.at(prefix)));
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, BruteCandidate> out;
  auto record = [&](std::size_t k, std::size_t s, std::size_t t, double score, std::size_t mm) {
    auto key = std::make_tuple(k, s + 1, t);
    auto it = out.find(key);
    if (it == out.end() || score > it->second.score + 1e-9) {
      out[key] = BruteCandidate{score, {mm}};
    } else if (std::abs(score - it->second.score) <= 1e-9) {
      it->second.mismatches.insert(mm);
      it->second.score = std::max(it->second.score, score);
    }
  };
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& h = entries[k].diphone_header;
    struct Path {
      std::vector<Diphone> elements;
      std::vector<std::vector<std::string>> prefixes;  // fan-out key before each element
    };
    std::vector<Path> paths;
    {
      Path direct;
      std::vector<std::string> prefix;
      for (const Diphone& d : h) {
        direct.elements.push_back(d);
        direct.prefixes.push_back(prefix);
        prefix.push_back(d.symbol);
      }
      paths.push_back(direct);
      if (h.front().kind == DiphoneKind::kC1V) {
        for (const Diphone& d : inventory.entries()) {
          if (d.kind != DiphoneKind::kC2C1 || d.right->symbol != h.front().left->symbol) continue;
          Path j;
          j.elements.push_back(d);
          j.prefixes.push_back({});
          j.elements.push_back(h.front());
          j.prefixes.push_back({"^" + d.symbol});
          std::vector<std::string> pre{h.front().symbol};
          for (std::size_t i = 1; i < h.size(); ++i) {
            j.elements.push_back(h[i]);
            j.prefixes.push_back(pre);
            pre.push_back(h[i].symbol);
          }
          paths.push_back(j);
        }
      }
    }
    for (const Path& path : paths) {
      for (std::size_t s = 0; s < obs.size(); ++s) {
        std::function<void(std::size_t, std::size_t, double, std::size_t)> walk =
            [&](std::size_t el, std::size_t pos, double score, std::size_t mm) {
              // element `el` starts at `pos`
              double sc = score + advance(path.prefixes[el]);
              std::size_t m = mm;
              for (std::size_t q = pos; q < obs.size(); ++q) {
                if (q > pos) {
                  if (exact) break;
                  sc += log_self;
                }
                const bool hit = element_matches(path.elements[el], inventory.at(obs[q]));
                if (!hit && exact) break;
                sc += hit ? log_hit : log_miss;
                m += hit ? 0 : 1;
                if (el + 1 == path.elements.size()) {
                  record(k, s, q + 1, sc, m);
                } else {
                  walk(el + 1, q + 1, sc, m);
                }
              }
            };
        walk(0, s, 0.0, 0);
      }
    }
  }
  return out;
}

struct RandomLexicon {
  std::vector<UpmEntry> entries;
  std::vector<DiphoneId> alphabet;  // symbols worth drawing observations from
};

// Up to `max_entries` entries with headers of 1..`max_header` elements drawn
// from a small pool, so prefixes and junctions are shared often.
inline RandomLexicon random_lexicon(std::mt19937_64& rng, const DiphoneInventory& inventory,
                                    const PhonemeTable& phonemes, std::size_t max_entries = 10,
                                    std::size_t max_header = 4) {
  std::vector<DiphoneId> c1v, vc2, c2c1, v;
  for (DiphoneId id = 0; id < inventory.size(); ++id) {
    switch (inventory.at(id).kind) {
      case DiphoneKind::kC1V: c1v.push_back(id); break;
      case DiphoneKind::kVC2: vc2.push_back(id); break;
      case DiphoneKind::kC2C1: c2c1.push_back(id); break;
      default: v.push_back(id); break;
    }
  }
  auto draw = [&](const std::vector<DiphoneId>& from, std::size_t n) {
    std::vector<DiphoneId> out;
    std::sample(from.begin(), from.end(), std::back_inserter(out), n, rng);
    return out;
  };
  std::vector<DiphoneId> pool;
  for (auto* part : {&c1v, &vc2, &v}) {
    auto d = draw(*part, 3);
    pool.insert(pool.end(), d.begin(), d.end());
  }
  RandomLexicon lex;
  std::set<DiphoneId> alphabet(pool.begin(), pool.end());
  const std::vector<std::string> codas = {"l", "n"};
  std::uniform_int_distribution<std::size_t> n_entries(1, max_entries), n_len(1, max_header);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::bernoulli_distribution coin(0.15);
  const std::size_t n = n_entries(rng);
  for (std::size_t k = 0; k < n; ++k) {
    UpmEntry e;
    if (coin(rng)) {
      const std::string c = codas[k % codas.size()];
      e.diphone_header = {Diphone{DiphoneKind::kCoda, *phonemes.find(c), std::nullopt, c}};
      for (DiphoneId id : vc2) {
        if (inventory.at(id).right->symbol == c) {
          alphabet.insert(id);
          break;
        }
      }
    } else {
      const std::size_t len = n_len(rng);
      for (std::size_t i = 0; i < len; ++i) e.diphone_header.push_back(inventory.at(pool[pick(rng)]));
    }
    std::vector<std::string> labels = diphone_symbols(e.diphone_header);
    e.surface_header = join(labels, ".") + "#" + std::to_string(k);
    e.orthographic = e.surface_header;
    e.left_pos = e.right_pos = "X";
    lex.entries.push_back(std::move(e));
  }
  // a couple of junction symbols that lead into the pool's onsets
  for (DiphoneId id : c2c1) {
    const std::string& r = inventory.at(id).right->symbol;
    for (DiphoneId f : pool) {
      if (inventory.at(f).kind == DiphoneKind::kC1V && inventory.at(f).left->symbol == r) {
        alphabet.insert(id);
        break;
      }
    }
  }
  lex.alphabet.assign(alphabet.begin(), alphabet.end());
  return lex;
}

// ---------------------------------------------------------------------------
// Analyzer

// Every chain of lattice candidates covering 1..n whose junctions pass the
// connectivity table, with its summed score.
inline std::map<std::vector<std::array<std::size_t, 3>>, double> brute_chains(
    const std::vector<MorphemeCandidate>& cands, std::size_t n, const std::function<bool(std::size_t, std::size_t)>& ok) {
  std::map<std::vector<std::array<std::size_t, 3>>, double> out;
  std::vector<const MorphemeCandidate*> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == n + 1) {
      std::vector<std::array<std::size_t, 3>> id;
      double s = 0.0;
      for (const auto* c : cur) {
        id.push_back({c->entry, c->start, c->end});
        s += c->log_score;
      }
      out.emplace(id, s);
      return;
    }
    for (const MorphemeCandidate& c : cands) {
      if (c.start != pos) continue;
      if (!cur.empty() && !ok(cur.back()->entry, c.entry)) continue;
      cur.push_back(&c);
      rec(c.end + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

// Tries every monotone alignment: each gold symbol is deleted or paired
// with a later hyp symbol. Minimum edit cost first, then most matches.
template <typename T>
EvalCounts brute_align(const std::vector<T>& gold, const std::vector<T>& hyp) {
  std::size_t best_cost = static_cast<std::size_t>(-1), best_match = 0;
  std::function<void(std::size_t, std::size_t, std::size_t, std::size_t)> rec =
      [&](std::size_t i, std::size_t j, std::size_t cost, std::size_t match) {
        if (i == gold.size()) {
          cost += hyp.size() - j;
          if (cost < best_cost || (cost == best_cost && match > best_match)) {
            best_cost = cost;
            best_match = match;
          }
          return;
        }
        rec(i + 1, j, cost + 1, match);  // delete gold[i]
        for (std::size_t k = j; k < hyp.size(); ++k) {
          // insert hyp[j..k), then pair gold[i] with hyp[k]
          const bool eq = gold[i] == hyp[k];
          rec(i + 1, k + 1, cost + (k - j) + (eq ? 0 : 1), match + (eq ? 1 : 0));
        }
      };
  rec(0, 0, 0, 0);
  EvalCounts c;
  c.total = gold.size();
  c.correct = best_match;
  c.del = c.total - c.correct;
  c.ins = hyp.size() - c.correct;
  return c;
}

}  // namespace morphdec::oracle

#endif  // MORPHDEC_TESTS_ORACLES_HPP_
