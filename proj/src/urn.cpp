/*
 * Copyright 2026 The mst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mst/urn.hpp"

#include <string>

#include "mst/error.hpp"
#include "mst/random.hpp"

namespace mst {

ReplacementMatrix::ReplacementMatrix(unsigned m) : m_(m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter,
                "branching factor must be at least 2, got " + std::to_string(m));
  }
  entries_.assign(static_cast<std::size_t>(colors()) * colors(), 0);
  if (m == 2) {
    // binary search trees: colors 1 (one empty slot) and 2 (leaf)
    cell(1, 1) = -1;
    cell(1, 2) = 2;
    cell(2, 1) = 1;
    cell(2, 2) = 0;
    return;
  }
  // A gap in a filled node with i empty slots: the slot becomes a one-key
  // leaf (two gaps of color m+1) and the node drops to i-1 empty slots.
  cell(1, 1) = -1;
  cell(1, m + 1) += 2;
  for (unsigned i = 2; i <= m; ++i) {
    cell(i, i) = -static_cast<std::int64_t>(i);
    cell(i, i - 1) = i - 1;
    cell(i, m + 1) += 2;
  }
  // A gap in a leaf with i-1 keys: the leaf grows to i keys.
  for (unsigned i = 2; i + 2 <= m; ++i) {
    cell(m + i - 1, m + i - 1) = -static_cast<std::int64_t>(i);
    cell(m + i - 1, m + i) = i + 1;
  }
  // The leaf with m-2 keys fills up and exposes m empty child slots.
  cell(2 * m - 2, 2 * m - 2) -= m - 1;
  cell(2 * m - 2, m) += m;
}

std::span<const std::int64_t> ReplacementMatrix::row(unsigned color) const {
  if (color < 1 || color > colors()) {
    throw Error(ErrorKind::kOutOfRange, "color " + std::to_string(color));
  }
  return {entries_.data() + static_cast<std::size_t>(color - 1) * colors(),
          colors()};
}

std::int64_t ReplacementMatrix::at(unsigned row_color, unsigned col_color) const {
  return row(row_color)[col_color - 1];
}

std::vector<double> ReplacementMatrix::transposed_as_double() const {
  const unsigned c = colors();
  std::vector<double> out(static_cast<std::size_t>(c) * c);
  for (unsigned r = 0; r < c; ++r) {
    for (unsigned k = 0; k < c; ++k) {
      out[static_cast<std::size_t>(k) * c + r] =
          static_cast<double>(entries_[static_cast<std::size_t>(r) * c + k]);
    }
  }
  return out;
}

ReplacementMatrix replacement_matrix(unsigned m) { return ReplacementMatrix(m); }

std::int64_t UrnState::total() const noexcept {
  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

UrnState initial_state(unsigned m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter,
                "branching factor must be at least 2, got " + std::to_string(m));
  }
  UrnState s{m, std::vector<std::int64_t>(2 * m - 2, 0), 0};
  // m = 2: a one-key node is already a filled leaf (color m = 2)
  s.counts[m == 2 ? 1 : m] = 2;
  return s;
}

UrnState draw_and_replace(UrnState state, const ReplacementMatrix& matrix,
                          unsigned color) {
  if (state.m != matrix.m() || state.counts.size() != matrix.colors()) {
    throw Error(ErrorKind::kInvalidParameter, "urn and matrix disagree on m");
  }
  const auto row = matrix.row(color);
  if (state.counts[color - 1] < 1) {
    throw Error(ErrorKind::kTenabilityViolation,
                "no ball of color " + std::to_string(color) + " to draw");
  }
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (state.counts[c] + row[c] < 0) {
      throw Error(ErrorKind::kTenabilityViolation,
                  "drawing color " + std::to_string(color) +
                      " drives color " + std::to_string(c + 1) + " negative");
    }
  }
  for (std::size_t c = 0; c < row.size(); ++c) state.counts[c] += row[c];
  ++state.drawn;
  return state;
}

UrnState simulate(unsigned m, std::uint64_t steps, std::uint64_t seed) {
  const ReplacementMatrix matrix(m);
  UrnState state = initial_state(m);
  Xoshiro256 rng(seed);
  for (std::uint64_t step = 0; step < steps; ++step) {
    auto ball = static_cast<std::int64_t>(
        rng.bounded(static_cast<std::uint64_t>(state.total())));
    unsigned color = 1;
    while (ball >= state.counts[color - 1]) {
      ball -= state.counts[color - 1];
      ++color;
    }
    state = draw_and_replace(std::move(state), matrix, color);
  }
  return state;
}

CoupledStep coupled_step(MaryTree& tree, std::size_t gap_index) {
  const Gap gap = tree.locate_gap(gap_index);
  const GapProfile before = gap_profile(tree);
  tree.spread_ranks();
  tree.insert(2 * static_cast<Key>(gap_index) + 1);
  const GapProfile after = gap_profile(tree);
  CoupledStep step{gap.color, std::vector<std::int64_t>(before.x.size())};
  for (std::size_t c = 0; c < before.x.size(); ++c) {
    step.delta[c] = after.x[c] - before.x[c];
  }
  return step;
}

CoupledStep coupled_insert_delta(const MaryTree& tree, std::size_t gap_index) {
  MaryTree copy = tree;
  return coupled_step(copy, gap_index);
}

}  // namespace mst
