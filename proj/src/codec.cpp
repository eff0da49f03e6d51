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

#include "mst/codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <unordered_map>

#include "mst/error.hpp"
#include "mst/spectra.hpp"

namespace mst {

namespace {

// ceil(log2(x) / b) for x >= 1, in integers.
unsigned bytes_for_codes(std::uint64_t x, unsigned b) {
  const auto bits = static_cast<unsigned>(std::bit_width(x - 1));
  return std::max(1u, (bits + b - 1) / b);
}

std::uint64_t max_for_width(unsigned bytes) {
  return bytes >= 8 ? ~std::uint64_t{0} : (std::uint64_t{1} << (8 * bytes)) - 1;
}

void put_uint(std::vector<std::uint8_t>& out, std::uint64_t value,
              unsigned width) {
  for (unsigned i = 0; i < width; ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

void write_uint(std::uint8_t* dst, std::uint64_t value, unsigned width) {
  for (unsigned i = 0; i < width; ++i) {
    dst[i] = static_cast<std::uint8_t>(value >> (8 * i));
  }
}

// Bounds-checked little-endian reader over an image.
class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t size() const noexcept { return bytes_.size(); }

  std::uint64_t uint(std::uint64_t offset, unsigned width) const {
    require(offset, width);
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      v |= std::uint64_t{bytes_[offset + i]} << (8 * i);
    }
    return v;
  }

  std::uint8_t byte(std::uint64_t offset) const {
    require(offset, 1);
    return bytes_[offset];
  }

  void require(std::uint64_t offset, std::uint64_t width) const {
    if (offset > bytes_.size() || width > bytes_.size() - offset) {
      throw Error(ErrorKind::kTruncated,
                  "image ends inside a field at offset " +
                      std::to_string(offset));
    }
  }

 private:
  std::span<const std::uint8_t> bytes_;
};

// Field positions of one record.
struct Layout {
  unsigned type = 0;
  std::uint64_t bitmap_at = 0;
  std::uint64_t keys_at = 0;
  unsigned key_count = 0;
  std::uint64_t links_at = 0;
  unsigned link_count = 0;
  std::uint64_t end = 0;
};

class RecordParser {
 public:
  explicit RecordParser(std::span<const std::uint8_t> image)
      : reader_(image), header_(parse_header(image)),
        params_(size_params(header_.m, header_.key_bytes, header_.link_bytes)) {
  }

  const ImageHeader& header() const noexcept { return header_; }

  Layout layout(std::uint64_t offset) const {
    const unsigned m = header_.m;
    if (offset < header_.size() || offset >= reader_.size()) {
      throw Error(ErrorKind::kDanglingOffset,
                  "record offset " + std::to_string(offset) +
                      " outside the payload");
    }
    Layout l;
    const std::uint64_t type = reader_.uint(offset, params_.descriptor_bytes);
    if (type < 1 || type > 2 * m - 1) {
      throw Error(ErrorKind::kInvalidType,
                  "descriptor " + std::to_string(type) + " at offset " +
                      std::to_string(offset));
    }
    l.type = static_cast<unsigned>(type);
    std::uint64_t at = offset + params_.descriptor_bytes;
    l.key_count = m - 1;
    if (l.type < m) {
      l.bitmap_at = at;
      at += params_.bitmap_bytes;
      reader_.require(l.bitmap_at, params_.bitmap_bytes);
      unsigned ones = 0;
      for (unsigned bit = 0; bit < 8 * params_.bitmap_bytes; ++bit) {
        if (!bitmap_bit(l, bit)) continue;
        if (bit >= m) throw Error(ErrorKind::kCorruptImage, "bitmap bit beyond m");
        ++ones;
      }
      if (ones != m - l.type) {
        throw Error(ErrorKind::kCorruptImage,
                    "bitmap disagrees with descriptor " +
                        std::to_string(l.type));
      }
      l.link_count = ones;
    } else if (l.type == 2 * m - 1) {
      l.link_count = m;
    } else if (l.type > m) {
      l.key_count = l.type - m;
    }
    l.keys_at = at;
    l.links_at = at + std::uint64_t{l.key_count} * header_.key_bytes;
    l.end = l.links_at + std::uint64_t{l.link_count} * header_.link_bytes;
    reader_.require(offset, l.end - offset);
    return l;
  }

  bool bitmap_bit(const Layout& l, unsigned bit) const {
    return (reader_.byte(l.bitmap_at + bit / 8) >> (bit % 8)) & 1u;
  }

  /// Whether child slot `slot` (0-based, i.e. child j = slot+1) is present.
  bool has_child(const Layout& l, unsigned slot) const {
    const unsigned m = header_.m;
    if (l.type == 2 * m - 1) return true;
    if (l.type >= m) return false;
    return bitmap_bit(l, m - 1 - slot);
  }

  /// Index among stored links of child `slot`: the number of present
  /// children to its left.
  unsigned link_rank(const Layout& l, unsigned slot) const {
    const unsigned m = header_.m;
    if (l.type == 2 * m - 1) return slot;
    unsigned rank = 0;
    for (unsigned s = 0; s < slot; ++s) rank += bitmap_bit(l, m - 1 - s);
    return rank;
  }

  Key key(const Layout& l, unsigned i) const {
    return reader_.uint(l.keys_at + std::uint64_t{i} * header_.key_bytes,
                        header_.key_bytes);
  }

  // Links must point past the record that holds them, which rules out
  // cycles.
  std::uint64_t link(const Layout& l, std::uint64_t offset, unsigned rank) const {
    const std::uint64_t target = reader_.uint(
        l.links_at + std::uint64_t{rank} * header_.link_bytes,
        header_.link_bytes);
    if (target <= offset || target >= reader_.size()) {
      throw Error(ErrorKind::kDanglingOffset,
                  "link " + std::to_string(target) + " from record at " +
                      std::to_string(offset));
    }
    return target;
  }

 private:
  Reader reader_;
  ImageHeader header_;
  SizeParams params_;
};

}  // namespace

SizeParams size_params(unsigned m, unsigned k, unsigned p, unsigned b) {
  if (m < 2 || m > 65535) {
    throw Error(ErrorKind::kInvalidParameter,
                "m must be in 2..65535, got " + std::to_string(m));
  }
  if (k < 1 || k > 8 || p < 1 || p > 8) {
    throw Error(ErrorKind::kInvalidParameter,
                "key and link widths must be 1..8 bytes");
  }
  if (b != 8) {
    throw Error(ErrorKind::kInvalidParameter,
                "only 8-bit bytes are supported, got b = " + std::to_string(b));
  }
  SizeParams s;
  s.m = m;
  s.key_bytes = k;
  s.link_bytes = p;
  s.bits_per_byte = b;
  s.delta = bytes_for_codes(2 * std::uint64_t{m} - 2, b);
  s.bitmap_bytes = (m + b - 1) / b;
  s.descriptor_bytes = std::max(s.delta, bytes_for_codes(2 * std::uint64_t{m} - 1, b));
  return s;
}

std::uint64_t plain_size(std::uint64_t nodes, const SizeParams& params) {
  const std::uint64_t m = params.m;
  return (m * params.link_bytes + (m - 1) * params.key_bytes) * nodes;
}

SizeBreakdown compact_size_formula(const GapProfile& profile,
                                   std::int64_t full_nodes,
                                   const SizeParams& params,
                                   DescriptorWidth width) {
  const std::int64_t m = params.m;
  if (profile.m != params.m || profile.x.size() != 2 * params.m - 2) {
    throw Error(ErrorKind::kInvalidParameter, "profile and params disagree on m");
  }
  if (full_nodes < 0) {
    throw Error(ErrorKind::kInconsistentProfile, "negative full-node count");
  }
  const std::int64_t d = width == DescriptorWidth::kAnalytic
                             ? params.delta
                             : params.descriptor_bytes;
  const std::int64_t bm = params.bitmap_bytes;
  const std::int64_t k = params.key_bytes;
  const std::int64_t p = params.link_bytes;

  auto groups = [&](unsigned color, std::int64_t group) {
    const std::int64_t x = profile.color(color);
    if (x < 0 || x % group != 0) {
      throw Error(ErrorKind::kInconsistentProfile,
                  "gap count " + std::to_string(x) + " of color " +
                      std::to_string(color) + " is not a multiple of " +
                      std::to_string(group));
    }
    return x / group;
  };

  SizeBreakdown s;
  s.full_nodes_bytes =
      static_cast<std::uint64_t>((d + (m - 1) * k + m * p) * full_nodes);
  for (std::int64_t i = 1; i <= m - 1; ++i) {
    s.internal_bytes += static_cast<std::uint64_t>(
        (d + bm + (m - 1) * k + (m - i) * p) *
        groups(static_cast<unsigned>(i), i));
  }
  s.full_leaf_bytes = static_cast<std::uint64_t>(
      (d + (m - 1) * k) * groups(static_cast<unsigned>(m), m));
  for (std::int64_t j = 1; j <= m - 2; ++j) {
    s.partial_leaf_bytes += static_cast<std::uint64_t>(
        (d + j * k) * groups(static_cast<unsigned>(m + j), j + 1));
  }
  s.total = s.full_nodes_bytes + s.internal_bytes + s.full_leaf_bytes +
            s.partial_leaf_bytes;
  return s;
}

SizeBreakdown compact_size(const MaryTree& tree, const SizeParams& params,
                           DescriptorWidth width) {
  const DegreeProfile d = degree_profile(tree);
  return compact_size_formula(gap_profile(tree), d.by_degree[tree.m()], params,
                              width);
}

ImageHeader CompactImage::header() const { return parse_header(bytes); }

std::span<const std::uint8_t> CompactImage::payload() const {
  return view().subspan(header().size());
}

CompactImage encode(const MaryTree& tree, const SizeParams& params) {
  if (tree.empty()) {
    throw Error(ErrorKind::kEmptyTree, "an empty tree has no compact image");
  }
  if (tree.m() != params.m) {
    throw Error(ErrorKind::kInvalidParameter, "tree and params disagree on m");
  }
  const unsigned m = params.m;
  const unsigned kw = params.key_bytes;
  const unsigned lw = params.link_bytes;
  const std::uint64_t key_limit = max_for_width(kw);
  const std::uint64_t link_limit = max_for_width(lw);

  const std::vector<NodeId> order = tree.preorder();
  const std::size_t header_size = 20 + lw;

  auto record_size = [&](const NodeView& v) -> std::uint64_t {
    const unsigned t = classify_node(v, m).value;
    std::uint64_t size = params.descriptor_bytes + v.keys.size() * kw;
    if (t < m) size += params.bitmap_bytes;
    return size + v.child_count() * lw;
  };

  std::unordered_map<NodeId, std::uint64_t> offset_of;
  offset_of.reserve(order.size());
  std::uint64_t cursor = header_size;
  for (NodeId id : order) {
    offset_of[id] = cursor;
    cursor += record_size(tree.node(id));
  }
  if (order.size() > 0 && offset_of[order.back()] > link_limit) {
    throw Error(ErrorKind::kKeyOverflow,
                "image offsets do not fit in " + std::to_string(lw) +
                    "-byte links");
  }

  CompactImage image;
  auto& out = image.bytes;
  out.reserve(cursor);
  out.insert(out.end(), kImageMagic.begin(), kImageMagic.end());
  out.push_back(kImageVersion);
  put_uint(out, m, 2);
  out.push_back(static_cast<std::uint8_t>(kw));
  out.push_back(static_cast<std::uint8_t>(lw));
  put_uint(out, 0, 3);
  put_uint(out, tree.size(), 8);
  put_uint(out, offset_of[tree.root()], lw);

  for (NodeId id : order) {
    const NodeView v = tree.node(id);
    const unsigned t = classify_node(v, m).value;
    put_uint(out, t, params.descriptor_bytes);
    if (t < m) {
      const std::size_t at = out.size();
      out.resize(at + params.bitmap_bytes, 0);
      for (unsigned j = 1; j <= m; ++j) {
        if (v.children[j - 1] == kNoNode) continue;
        const unsigned bit = m - j;
        out[at + bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
      }
    }
    for (Key key : v.keys) {
      if (key > key_limit) {
        throw Error(ErrorKind::kKeyOverflow,
                    "key " + std::to_string(key) + " does not fit in " +
                        std::to_string(kw) + " bytes");
      }
      put_uint(out, key, kw);
    }
    for (NodeId child : v.children) {
      if (child != kNoNode) put_uint(out, offset_of[child], lw);
    }
  }
  return image;
}

ImageHeader parse_header(std::span<const std::uint8_t> image) {
  const Reader r(image);
  r.require(0, 4);
  if (!std::equal(kImageMagic.begin(), kImageMagic.end(), image.begin())) {
    throw Error(ErrorKind::kBadMagic, "not a compact tree image");
  }
  if (r.byte(4) != kImageVersion) {
    throw Error(ErrorKind::kBadVersion,
                "unsupported image version " + std::to_string(r.byte(4)));
  }
  ImageHeader h;
  h.m = static_cast<unsigned>(r.uint(5, 2));
  h.key_bytes = r.byte(7);
  h.link_bytes = r.byte(8);
  if (h.m < 2 || h.key_bytes < 1 || h.key_bytes > 8 || h.link_bytes < 1 ||
      h.link_bytes > 8) {
    throw Error(ErrorKind::kCorruptImage, "header parameters out of range");
  }
  if (r.uint(9, 3) != 0) {
    throw Error(ErrorKind::kCorruptImage, "reserved header bytes are not zero");
  }
  h.n = r.uint(12, 8);
  h.root_offset = r.uint(20, h.link_bytes);
  return h;
}

MaryTree decode(std::span<const std::uint8_t> image) {
  const RecordParser parser(image);
  const ImageHeader& h = parser.header();
  if (h.n == 0) {
    throw Error(ErrorKind::kCorruptImage, "image declares zero keys");
  }
  MaryTree tree(h.m);
  std::unordered_map<std::uint64_t, NodeId> seen;
  std::uint64_t payload_bytes = 0;
  std::vector<Key> keys;

  struct Pending {
    std::uint64_t offset;
    NodeId parent;
    unsigned slot;
  };
  std::vector<Pending> stack{{h.root_offset, kNoNode, 0}};
  NodeId root = kNoNode;
  while (!stack.empty()) {
    const Pending next = stack.back();
    stack.pop_back();
    if (seen.contains(next.offset)) {
      throw Error(ErrorKind::kCorruptImage,
                  "record at " + std::to_string(next.offset) +
                      " is linked twice");
    }
    const Layout l = parser.layout(next.offset);
    payload_bytes += l.end - next.offset;
    keys.clear();
    for (unsigned i = 0; i < l.key_count; ++i) keys.push_back(parser.key(l, i));
    const NodeId id = tree.add_node(keys);
    seen.emplace(next.offset, id);
    if (next.parent == kNoNode) {
      root = id;
    } else {
      tree.set_child(next.parent, next.slot, id);
    }
    unsigned rank = l.link_count;
    for (unsigned slot = h.m; slot-- > 0;) {
      if (!parser.has_child(l, slot)) continue;
      stack.push_back({parser.link(l, next.offset, --rank), id, slot});
    }
  }
  if (payload_bytes != image.size() - h.size()) {
    throw Error(ErrorKind::kCorruptImage,
                "payload holds bytes not reachable from the root");
  }
  tree.set_root(root, h.n);
  tree.validate();
  return tree;
}

bool lookup(std::span<const std::uint8_t> image, Key key) {
  const RecordParser parser(image);
  std::uint64_t offset = parser.header().root_offset;
  for (;;) {
    const Layout l = parser.layout(offset);
    // binary search over the stored keys
    unsigned lo = 0;
    unsigned hi = l.key_count;
    while (lo < hi) {
      const unsigned mid = lo + (hi - lo) / 2;
      if (parser.key(l, mid) < key) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < l.key_count && parser.key(l, lo) == key) return true;
    if (!parser.has_child(l, lo)) return false;
    offset = parser.link(l, offset, parser.link_rank(l, lo));
  }
}

double relative_limit_exact(unsigned m, unsigned k, unsigned p, unsigned b) {
  const SizeParams s = size_params(m, k, p, b);
  const double md = m;
  const double kd = k;
  const double pd = p;
  const double d = s.delta;
  const double bm = s.bitmap_bytes;
  const double h = harmonic(m);
  const double numerator = 2 * md * md * kd * h + md * md * d -
                           2 * md * md * kd + md * md * pd + 2 * md * kd * h +
                           md * d + 2 * md * bm + md * pd - 2 * md * kd -
                           2 * bm;
  return numerator / (md * (md + 1) * (md * pd + (md - 1) * kd));
}

double relative_limit_asymptotic(unsigned m, unsigned k, unsigned p,
                                 unsigned b) {
  if (m < 2 || k < 1 || p < 1 || b < 1) {
    throw Error(ErrorKind::kInvalidParameter,
                "need m >= 2 and positive k, p, b");
  }
  const double md = m;
  return (2.0 * k + b) * std::log(md) / ((static_cast<double>(k) + p) * md);
}

}  // namespace mst
