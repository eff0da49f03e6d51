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

#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "sample16.hpp"
#include "mst/codec.hpp"
#include "mst/error.hpp"
#include "mst/random.hpp"

using namespace mst;
using mst::testing::sample16_tree;

namespace {

std::uint64_t le(const std::vector<std::uint8_t>& b, std::size_t at,
                 unsigned width) {
  std::uint64_t v = 0;
  for (unsigned i = 0; i < width; ++i) v |= std::uint64_t{b[at + i]} << (8 * i);
  return v;
}

ErrorKind decode_error(const std::vector<std::uint8_t>& bytes) {
  try {
    decode(bytes);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("image decoded");
  return ErrorKind::kInvalidParameter;
}

}  // namespace

TEST_CASE("size params") {
  SizeParams s = size_params(4, 4, 4);
  CHECK(s.delta == 1);
  CHECK(s.bitmap_bytes == 1);
  CHECK(s.descriptor_bytes == 1);
  s = size_params(10, 4, 4);
  CHECK(s.delta == 1);
  CHECK(s.bitmap_bytes == 2);
  s = size_params(2, 4, 4);
  CHECK(s.delta == 1);
  CHECK(s.bitmap_bytes == 1);
  // 2m-2 = 256 fits one byte, code 2m-1 = 257 does not
  s = size_params(129, 4, 4);
  CHECK(s.delta == 1);
  CHECK(s.descriptor_bytes == 2);
  for (unsigned m = 2; m <= 128; ++m) {
    const SizeParams p = size_params(m, 4, 4);
    CHECK(p.delta == p.descriptor_bytes);
  }
  CHECK_THROWS_AS(size_params(1, 4, 4), Error);
  CHECK_THROWS_AS(size_params(4, 0, 4), Error);
  CHECK_THROWS_AS(size_params(4, 4, 9), Error);
  CHECK_THROWS_AS(size_params(4, 4, 4, 7), Error);
}

TEST_CASE("plain size") {
  CHECK(plain_size(7, size_params(4, 4, 4)) == 196);
  CHECK(plain_size(0, size_params(4, 4, 4)) == 0);
  CHECK(plain_size(1, size_params(2, 4, 4)) == 12);
}

TEST_CASE("size formula on the sample tree") {
  const MaryTree t = sample16_tree();
  const SizeParams s = size_params(4, 4, 4);
  const SizeBreakdown b = compact_size_formula(gap_profile(t), 1, s);
  CHECK(b.full_nodes_bytes == 29);
  CHECK(b.internal_bytes == 22);
  CHECK(b.full_leaf_bytes == 26);
  CHECK(b.partial_leaf_bytes == 19);
  CHECK(b.total == 96);
  CHECK(compact_size(t, s) == b);

  MaryTree one(4);
  one.insert(3);
  CHECK(compact_size(one, s).total == 5);

  GapProfile zero{4, std::vector<std::int64_t>(6, 0)};
  CHECK(compact_size_formula(zero, 0, s).total == 0);
  GapProfile bad{4, {0, 3, 0, 0, 0, 0}};
  try {
    compact_size_formula(bad, 0, s);
    FAIL("inconsistent profile accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInconsistentProfile);
  }
}

TEST_CASE("sample tree image layout") {
  const MaryTree t = sample16_tree();
  const CompactImage img = encode(t, size_params(4, 4, 4));
  const auto& b = img.bytes;
  REQUIRE(b.size() == 24 + 96);
  CHECK(std::vector<std::uint8_t>(b.begin(), b.begin() + 4) ==
        std::vector<std::uint8_t>{'C', 'M', 'S', 'T'});
  CHECK(b[4] == 1);
  CHECK(le(b, 5, 2) == 4);
  CHECK(b[7] == 4);
  CHECK(b[8] == 4);
  CHECK(le(b, 9, 3) == 0);
  CHECK(le(b, 12, 8) == 16);
  CHECK(le(b, 20, 4) == 24);
  CHECK(img.payload().size() == 96);

  // root: descriptor 2, bitmap 1010b = 10, keys 11 12 16, links
  CHECK(b[24] == 2);
  CHECK(b[25] == 10);
  CHECK(le(b, 26, 4) == 11);
  CHECK(le(b, 30, 4) == 12);
  CHECK(le(b, 34, 4) == 16);
  CHECK(le(b, 38, 4) == 46);   // (3,7,9)
  CHECK(le(b, 42, 4) == 107);  // (13,14,15)
  // full node: descriptor 7, three keys, four links, no bitmap
  CHECK(b[46] == 7);
  CHECK(le(b, 47, 4) == 3);
  CHECK(le(b, 59, 4) == 75);
  CHECK(le(b, 63, 4) == 84);
  CHECK(le(b, 67, 4) == 97);
  CHECK(le(b, 71, 4) == 102);
  CHECK(b[75] == 6);   // (1,2)
  CHECK(b[84] == 4);   // (4,5,6)
  CHECK(b[97] == 5);   // (8)
  CHECK(le(b, 98, 4) == 8);
  CHECK(b[102] == 5);  // (10)
  CHECK(b[107] == 4);  // (13,14,15)
}

TEST_CASE("decode and lookup on the sample tree") {
  const MaryTree t = sample16_tree();
  const CompactImage img = encode(t, size_params(4, 4, 4));
  const MaryTree back = decode(img.bytes);
  CHECK(back == t);
  CHECK(gap_profile(back).x == std::vector<std::int64_t>{0, 2, 0, 8, 4, 3});
  for (Key k = 1; k <= 16; ++k) CHECK(lookup(img.bytes, k));
  CHECK_FALSE(lookup(img.bytes, 0));
  CHECK_FALSE(lookup(img.bytes, 17));
  CHECK_FALSE(lookup(img.bytes, 1u << 31));
}

TEST_CASE("roundtrip, size identity and lookup on random trees") {
  Xoshiro256 rng(123);
  for (unsigned m : {2u, 3u, 5u, 8u, 9u, 17u, 40u}) {
    for (unsigned k : {2u, 4u}) {
      for (unsigned p : {2u, 3u, 4u}) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.bounded(300));
        std::vector<Key> keys = random_permutation(n, rng);
        for (Key& key : keys) key *= 2;
        const MaryTree t = build_from_permutation(m, keys);
        const SizeParams s = size_params(m, k, p);
        const CompactImage img = encode(t, s);
        CAPTURE(m);
        CAPTURE(k);
        CAPTURE(p);
        CHECK(img.payload().size() ==
              compact_size(t, s, DescriptorWidth::kCodec).total);
        CHECK(decode(img.bytes) == t);
        for (Key key : keys) CHECK(lookup(img.bytes, key));
        for (Key probe = 1; probe <= 2 * n + 1; probe += 2) {
          CHECK_FALSE(lookup(img.bytes, probe));
        }
      }
    }
  }
}

TEST_CASE("bitmap integer convention") {
  Xoshiro256 rng(8);
  const unsigned m = 11;  // two bitmap bytes
  const MaryTree t = build_from_permutation(m, random_permutation(400, rng));
  const SizeParams s = size_params(m, 4, 4);
  const CompactImage img = encode(t, s);
  std::uint64_t at = 24;
  for (NodeId id : t.preorder()) {
    const NodeView v = t.node(id);
    const unsigned type = classify_node(v, m).value;
    CHECK(img.bytes[at] == type);
    if (type < m) {
      std::uint64_t expect = 0;
      for (unsigned j = 1; j <= m; ++j) {
        if (v.children[j - 1] != kNoNode) expect += std::uint64_t{1} << (m - j);
      }
      CHECK(le(img.bytes, at + 1, 2) == expect);
    }
    at += 1 + (type < m ? 2 : 0) + 4 * v.keys.size() + 4 * v.child_count();
  }
  CHECK(at == img.bytes.size());
}

TEST_CASE("sorted input image") {
  std::vector<Key> perm(100);
  std::iota(perm.begin(), perm.end(), Key{1});
  const MaryTree t = build_from_permutation(5, perm);
  const SizeParams s = size_params(5, 4, 4);
  const CompactImage img = encode(t, s);
  CHECK(img.payload().size() == compact_size(t, s).total);
  CHECK(decode(img.bytes) == t);
}

TEST_CASE("encode errors") {
  MaryTree empty(4);
  CHECK_THROWS_AS(encode(empty, size_params(4, 4, 4)), Error);
  MaryTree big(4);
  big.insert(70000);
  try {
    encode(big, size_params(4, 2, 4));
    FAIL("oversized key encoded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kKeyOverflow);
  }
  // 1-byte links cannot address past offset 255
  Xoshiro256 rng(1);
  const MaryTree wide = build_from_permutation(4, random_permutation(200, rng));
  CHECK_THROWS_AS(encode(wide, size_params(4, 4, 1)), Error);
}

TEST_CASE("corrupt images are rejected with distinct errors") {
  const CompactImage img = encode(sample16_tree(), size_params(4, 4, 4));

  auto bytes = img.bytes;
  bytes[0] = 'X';
  CHECK(decode_error(bytes) == ErrorKind::kBadMagic);

  bytes = img.bytes;
  bytes[4] = 2;
  CHECK(decode_error(bytes) == ErrorKind::kBadVersion);

  bytes = img.bytes;
  bytes.resize(bytes.size() - 3);
  CHECK(decode_error(bytes) == ErrorKind::kTruncated);
  bytes.resize(10);
  CHECK(decode_error(bytes) == ErrorKind::kTruncated);
  CHECK_THROWS_AS(lookup(bytes, 3), Error);

  bytes = img.bytes;
  bytes[24] = 0;
  CHECK(decode_error(bytes) == ErrorKind::kInvalidType);
  bytes[24] = 8;
  CHECK(decode_error(bytes) == ErrorKind::kInvalidType);

  bytes = img.bytes;
  bytes[38] = 10;  // root link points into the header
  CHECK(decode_error(bytes) == ErrorKind::kDanglingOffset);
  bytes = img.bytes;
  bytes[38] = 200;  // past the end
  CHECK(decode_error(bytes) == ErrorKind::kDanglingOffset);
  bytes = img.bytes;
  bytes[20] = 5;  // root offset inside the header
  CHECK(decode_error(bytes) == ErrorKind::kDanglingOffset);

  bytes = img.bytes;
  bytes[25] = 11;  // three children marked, descriptor says two
  CHECK(decode_error(bytes) == ErrorKind::kCorruptImage);

  bytes = img.bytes;
  bytes.push_back(0);  // trailing garbage
  CHECK(decode_error(bytes) == ErrorKind::kCorruptImage);

  bytes = img.bytes;
  bytes[26] = 13;  // root key 11 -> 13 breaks ordering
  CHECK(decode_error(bytes) == ErrorKind::kCorruptImage);

  bytes = img.bytes;
  bytes[12] = 15;  // n disagrees with the stored keys
  CHECK(decode_error(bytes) == ErrorKind::kCorruptImage);
}

TEST_CASE("relative size limits") {
  CHECK(std::abs(relative_limit_exact(2, 4, 4) - 0.778) <= 0.001);
  CHECK(std::abs(relative_limit_exact(10, 4, 4) - 0.273) <= 0.001);
  CHECK(std::abs(relative_limit_exact(27, 4, 4) - 0.134) <= 0.001);
  for (unsigned m = 3; m <= 27; ++m) {
    CHECK(relative_limit_exact(m, 4, 4) < relative_limit_exact(m - 1, 4, 4));
  }
  CHECK(relative_limit_asymptotic(3, 4, 4) ==
        doctest::Approx(16 * std::log(3.0) / 24).epsilon(1e-14));
  CHECK(relative_limit_asymptotic(100, 4, 4) ==
        doctest::Approx(2 * std::log(100.0) / 100).epsilon(1e-14));
}

TEST_CASE("exact limit matches the measured ratio of large trees") {
  // independent route: build trees and measure compact/plain bytes
  for (unsigned m : {3u, 6u}) {
    const SizeParams s = size_params(m, 4, 4);
    Xoshiro256 rng(derive_seed(31, m));
    const MaryTree t = build_from_permutation(m, random_permutation(200000, rng));
    const double measured = static_cast<double>(compact_size(t, s).total) /
                            static_cast<double>(plain_size(t.node_count(), s));
    CHECK(std::abs(measured - relative_limit_exact(m, 4, 4)) < 0.005);
  }
}

TEST_CASE("large-m behaviour of the exact limit") {
  // The descriptor grows like log2(m)/b bytes, so the exact limit behaves
  // like (2k + 1/(b ln 2)) ln m / ((k+p) m): the closed-form
  // (2k+b) ln m / ((k+p) m) overstates it by roughly a factor of two.
  const double leading = (8.0 + 1.0 / (8.0 * std::log(2.0))) / 16.0;
  const double ratio =
      relative_limit_exact(60000, 4, 4) / relative_limit_asymptotic(60000, 4, 4);
  CHECK(std::abs(ratio - leading) < 0.03);
  // both decay like ln m / m
  CHECK(relative_limit_exact(60000, 4, 4) < relative_limit_exact(1000, 4, 4));
}
