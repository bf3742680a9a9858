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

#ifndef MORPHDEC_EVALUATION_HPP_
#define MORPHDEC_EVALUATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace morphdec {

// correct + delete == total. A substitution counts as one delete and one
// insert.
struct EvalCounts {
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t del = 0;
  std::size_t ins = 0;

  EvalCounts& operator+=(const EvalCounts& o) {
    total += o.total;
    correct += o.correct;
    del += o.del;
    ins += o.ins;
    return *this;
  }
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

// Minimum unit-cost edit alignment. Among minimum-cost alignments the one
// with the most equal pairs is counted.
template <typename T>
EvalCounts align_and_count(std::span<const T> gold, std::span<const T> hyp) {
  const std::size_t n = gold.size();
  const std::size_t m = hyp.size();
  // cost first, then negated matches
  using Cell = std::pair<std::size_t, std::int64_t>;
  std::vector<Cell> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& { return dp[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = {i, 0};
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = {j, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool eq = gold[i - 1] == hyp[j - 1];
      Cell diag = at(i - 1, j - 1);
      diag.first += eq ? 0 : 1;
      diag.second -= eq ? 1 : 0;
      Cell up = at(i - 1, j);
      up.first += 1;
      Cell left = at(i, j - 1);
      left.first += 1;
      Cell best = diag;
      if (up < best) best = up;
      if (left < best) best = left;
      at(i, j) = best;
    }
  }
  EvalCounts c;
  c.total = n;
  c.correct = static_cast<std::size_t>(-at(n, m).second);
  c.del = n - c.correct;
  c.ins = m - c.correct;
  return c;
}

template <typename T>
EvalCounts align_and_count(const std::vector<T>& gold, const std::vector<T>& hyp) {
  return align_and_count(std::span<const T>(gold), std::span<const T>(hyp));
}

// count / total as a percentage with `decimals` digits, rounded half up in
// integer arithmetic.
inline std::string format_rate(std::size_t count, std::size_t total, int decimals = 2) {
  if (total == 0) return "n/a";
  std::uint64_t scale = 100;
  for (int i = 0; i < decimals; ++i) scale *= 10;
  const std::uint64_t num = static_cast<std::uint64_t>(count) * scale;
  const std::uint64_t q = (2 * num + total) / (2 * static_cast<std::uint64_t>(total));
  std::uint64_t unit = 1;
  for (int i = 0; i < decimals; ++i) unit *= 10;
  std::string out = std::to_string(q / unit);
  if (decimals > 0) {
    std::string frac = std::to_string(q % unit);
    out += '.' + std::string(static_cast<std::size_t>(decimals) - frac.size(), '0') + frac;
  }
  return out + "%";
}

// The total / correct / delete / insert table layout.
inline std::string render_eval_table(const EvalCounts& c, int decimals = 2) {
  return "\ttotal\tcorrect\tdelete\tinsert\n"
         "pattern size (rec. rate)\t" +
         std::to_string(c.total) + '\t' + std::to_string(c.correct) + " (" +
         format_rate(c.correct, c.total, decimals) + ")\t" + std::to_string(c.del) + " (" +
         format_rate(c.del, c.total, decimals) + ")\t" + std::to_string(c.ins) + '\n';
}

inline nlohmann::ordered_json eval_json(const EvalCounts& c, const std::string& unit, int decimals = 2) {
  nlohmann::ordered_json j;
  j["unit"] = unit;
  j["total"] = c.total;
  j["correct"] = c.correct;
  j["delete"] = c.del;
  j["insert"] = c.ins;
  j["correct_rate"] = format_rate(c.correct, c.total, decimals);
  j["delete_rate"] = format_rate(c.del, c.total, decimals);
  j["insert_rate"] = format_rate(c.ins, c.total, decimals);
  return j;
}

}  // namespace morphdec

#endif  // MORPHDEC_EVALUATION_HPP_
