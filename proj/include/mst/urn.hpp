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

// The (2m-2)-color Polya urn whose balls are the insertion gaps of an m-ary
// search tree. Colors are 1-based throughout: color c lives at index c-1.

#ifndef MST_URN_HPP
#define MST_URN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mst/tree.hpp"

namespace mst {

class ReplacementMatrix {
 public:
  explicit ReplacementMatrix(unsigned m);

  unsigned m() const noexcept { return m_; }
  unsigned colors() const noexcept { return 2 * m_ - 2; }

  /// Change in ball counts when a ball of `color` is drawn.
  std::span<const std::int64_t> row(unsigned color) const;
  std::int64_t at(unsigned row_color, unsigned col_color) const;

  /// Row-major entries as doubles, for the eigensolver.
  std::vector<double> transposed_as_double() const;

 private:
  std::int64_t& cell(unsigned r, unsigned c) {
    return entries_[(r - 1) * colors() + (c - 1)];
  }

  unsigned m_;
  std::vector<std::int64_t> entries_;
};

ReplacementMatrix replacement_matrix(unsigned m);

struct UrnState {
  unsigned m = 0;
  std::vector<std::int64_t> counts;  // counts[c-1] = balls of color c
  std::uint64_t drawn = 0;

  std::int64_t total() const noexcept;

  friend bool operator==(const UrnState&, const UrnState&) = default;
};

/// Urn of a one-key tree: two gaps in the lone leaf (color m+1, or color 2
/// when m = 2).
UrnState initial_state(unsigned m);

/// Applies the row of `color`. Throws kTenabilityViolation if no ball of
/// that color is present or a count would go negative.
UrnState draw_and_replace(UrnState state, const ReplacementMatrix& matrix,
                          unsigned color);

/// Starting from initial_state, draws `steps` balls uniformly at random
/// (probability counts[c]/total) and applies each draw.
UrnState simulate(unsigned m, std::uint64_t steps, std::uint64_t seed);

struct CoupledStep {
  unsigned color = 0;
  std::vector<std::int64_t> delta;  // gap profile change, indexed like counts
};

/// Inserts a key into the gap_index-th gap (canonical order) of `tree` and
/// reports the gap's color and the resulting gap profile change. The tree's
/// keys are re-ranked (order preserved) so that the gap always admits an
/// integer key.
CoupledStep coupled_step(MaryTree& tree, std::size_t gap_index);

/// coupled_step on a copy; `tree` is left untouched.
CoupledStep coupled_insert_delta(const MaryTree& tree, std::size_t gap_index);

}  // namespace mst

#endif  // MST_URN_HPP
