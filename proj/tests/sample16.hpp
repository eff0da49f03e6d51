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


#ifndef MST_TESTS_SAMPLE16_HPP
#define MST_TESTS_SAMPLE16_HPP

#include <array>

#include "mst/tree.hpp"

namespace mst::testing {

// The sixteen-key quaternary example used throughout the tests.
inline constexpr std::array<Key, 16> kSample16Perm{12, 16, 11, 9, 13, 7, 3, 5,
                                                  15, 1,  4,  14, 10, 8, 2, 6};

inline MaryTree sample16_tree() { return build_from_permutation(4, kSample16Perm); }

}  // namespace mst::testing

#endif  // MST_TESTS_SAMPLE16_HPP
