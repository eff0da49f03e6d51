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

// Compact m-ary tree images.
//
// Nodes are stored as variable-size records that keep only what their type
// needs: a type descriptor, a child bitmap for partially filled internal
// nodes, the occupied key slots and the non-nil links.
//
// File layout (all integers little-endian):
//
//   offset  size  field
//   0       4     magic "CMST"
//   4       1     version = 1
//   5       2     m
//   7       1     k, bytes per key
//   8       1     p, bytes per link
//   9       3     reserved, zero
//   12      8     n, number of keys
//   20      p     root offset
//   20+p    ...   node records in preorder
//
// Record by descriptor t:
//   1..m-1   descriptor | bitmap | m-1 keys | m-t links (left to right)
//   m        descriptor | m-1 keys
//   m+j      descriptor | j keys                       (j = 1..m-2)
//   2m-1     descriptor | m-1 keys | m links
//
// Links are absolute byte offsets into the image. The bitmap is the integer
// sum of 2^(m-j) over present children j = 1..m, so child 1 is the most
// significant of the m bits.

#ifndef MST_CODEC_HPP
#define MST_CODEC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mst/tree.hpp"

namespace mst {

struct SizeParams {
  unsigned m = 0;
  unsigned key_bytes = 0;      // k
  unsigned link_bytes = 0;     // p
  unsigned bits_per_byte = 8;  // b
  /// ceil(log2(2m-2) / b): the descriptor width of the analytic model.
  unsigned delta = 0;
  /// ceil(m / b): bitmap width.
  unsigned bitmap_bytes = 0;
  /// max(delta, ceil(log2(2m-1) / b)): what the codec writes, since the
  /// full-node code 2m-1 must fit too.
  unsigned descriptor_bytes = 0;
};

/// Throws kInvalidParameter unless m in 2..65535, k and p in 1..8, b = 8.
SizeParams size_params(unsigned m, unsigned k, unsigned p, unsigned b = 8);

/// Bytes of the uncompressed layout: every node has m-1 key slots and m
/// links.
std::uint64_t plain_size(std::uint64_t nodes, const SizeParams& params);

struct SizeBreakdown {
  std::uint64_t full_nodes_bytes = 0;
  std::uint64_t internal_bytes = 0;
  std::uint64_t full_leaf_bytes = 0;
  std::uint64_t partial_leaf_bytes = 0;
  std::uint64_t total = 0;

  friend bool operator==(const SizeBreakdown&, const SizeBreakdown&) = default;
};

enum class DescriptorWidth { kAnalytic, kCodec };

/// Compact size from the gap profile and the full-node count. Throws
/// kInconsistentProfile if a gap count is not a multiple of its group size.
SizeBreakdown compact_size_formula(
    const GapProfile& profile, std::int64_t full_nodes,
    const SizeParams& params,
    DescriptorWidth width = DescriptorWidth::kAnalytic);

SizeBreakdown compact_size(const MaryTree& tree, const SizeParams& params,
                           DescriptorWidth width = DescriptorWidth::kAnalytic);

inline constexpr std::array<std::uint8_t, 4> kImageMagic{'C', 'M', 'S', 'T'};
inline constexpr std::uint8_t kImageVersion = 1;

struct ImageHeader {
  unsigned m = 0;
  unsigned key_bytes = 0;
  unsigned link_bytes = 0;
  std::uint64_t n = 0;
  std::uint64_t root_offset = 0;

  std::size_t size() const noexcept { return 20 + link_bytes; }
};

struct CompactImage {
  std::vector<std::uint8_t> bytes;

  std::span<const std::uint8_t> view() const noexcept { return bytes; }
  ImageHeader header() const;
  /// Bytes after the header.
  std::span<const std::uint8_t> payload() const;
};

/// Throws kEmptyTree for n = 0, kKeyOverflow if a key does not fit in k
/// bytes or an offset does not fit in p bytes.
CompactImage encode(const MaryTree& tree, const SizeParams& params);

ImageHeader parse_header(std::span<const std::uint8_t> image);

/// Exact inverse of encode. Parse failures raise kBadMagic, kBadVersion,
/// kTruncated, kDanglingOffset, kInvalidType or kCorruptImage.
MaryTree decode(std::span<const std::uint8_t> image);

/// Membership test that walks the records directly, following links by
/// bitmap rank. Never builds the tree.
bool lookup(std::span<const std::uint8_t> image, Key key);

/// Limit of compact bytes over plain bytes as n grows.
double relative_limit_exact(unsigned m, unsigned k, unsigned p, unsigned b = 8);

/// (2k+b) ln m / ((k+p) m), the large-m behaviour of relative_limit_exact.
double relative_limit_asymptotic(unsigned m, unsigned k, unsigned p,
                                 unsigned b = 8);

}  // namespace mst

#endif  // MST_CODEC_HPP
