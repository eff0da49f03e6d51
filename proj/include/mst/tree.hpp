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

// Random m-ary search trees: insertion, node typing and exact profile
// counters.
//
// A node holds 1..m-1 ascending keys and m child slots. A node only acquires
// children once it holds m-1 keys; until then it is a leaf and new keys land
// in it directly.

#ifndef MST_TREE_HPP
#define MST_TREE_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace mst {

using Key = std::uint64_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Read-only view of one node. `children` always has m entries; empty slots
/// hold kNoNode.
struct NodeView {
  std::span<const Key> keys;
  std::span<const NodeId> children;

  std::size_t child_count() const noexcept;
  bool is_leaf() const noexcept { return child_count() == 0; }
};

/// Node type code in 1..2m-1.
///   1..m-1   filled node with that many empty child slots (and >= 1 child)
///   m        filled leaf
///   m+j      leaf holding j keys, j in 1..m-2
///   2m-1     full node, all m children present
struct NodeTypeCode {
  unsigned value = 0;

  friend bool operator==(NodeTypeCode, NodeTypeCode) = default;
};

/// Location of one insertion position (gap).
struct Gap {
  NodeId node = kNoNode;
  unsigned slot = 0;   // child slot for filled nodes, key position for leaves
  unsigned color = 0;  // 1..2m-2
};

class MaryTree {
 public:
  explicit MaryTree(unsigned m);

  unsigned m() const noexcept { return m_; }
  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }
  std::size_t node_count() const noexcept { return key_count_.size(); }
  NodeId root() const noexcept { return root_; }

  NodeView node(NodeId id) const;

  /// Inserts one key; throws kDuplicateKey if it is already present.
  void insert(Key key);
  bool contains(Key key) const noexcept;

  /// Keys in ascending order.
  std::vector<Key> in_order() const;

  /// Node ids in preorder (node, then child slots left to right).
  std::vector<NodeId> preorder() const;

  /// Visits every gap in canonical order: the left-to-right order of the
  /// key intervals they represent. Exactly n+1 gaps on a nonempty tree.
  void for_each_gap(const std::function<void(const Gap&)>& visit) const;

  /// The gap_index-th gap in canonical order.
  Gap locate_gap(std::size_t gap_index) const;

  /// Order-preserving relabel: the i-th smallest key (0-based) becomes
  /// 2(i+1). Afterwards the g-th gap contains exactly the odd key 2g+1.
  void spread_ranks();

  // Raw construction, used by the compact decoder. The result must be
  // checked with validate() before use.
  NodeId add_node(std::span<const Key> keys);
  void set_child(NodeId parent, unsigned slot, NodeId child);
  void set_root(NodeId root, std::size_t n);

  /// Throws kCorruptImage describing the first violated structural
  /// invariant (ordering, fill-before-children, key count, reachability).
  void validate() const;

  /// Structural equality: same shape, same keys, same child positions.
  friend bool operator==(const MaryTree& a, const MaryTree& b);

 private:
  std::span<Key> keys_of(NodeId id) noexcept;
  NodeId new_leaf(Key key);

  unsigned m_;
  std::size_t n_ = 0;
  NodeId root_ = kNoNode;
  std::vector<Key> keys_;          // (m-1) slots per node
  std::vector<std::uint32_t> key_count_;
  std::vector<NodeId> children_;   // m slots per node
};

/// Folds insert over perm in order.
MaryTree build_from_permutation(unsigned m, std::span<const Key> perm);

NodeTypeCode classify_node(const NodeView& node, unsigned m) noexcept;

/// Gap counts by color; x[c-1] holds color c, c in 1..2m-2.
struct GapProfile {
  unsigned m = 0;
  std::vector<std::int64_t> x;

  std::int64_t color(unsigned c) const { return x.at(c - 1); }
  std::int64_t total() const noexcept;

  friend bool operator==(const GapProfile&, const GapProfile&) = default;
};

struct DegreeProfile {
  unsigned m = 0;
  std::vector<std::int64_t> by_degree;  // size m+1
  std::int64_t nodes = 0;
  std::int64_t leaves = 0;
  std::int64_t protected_nodes = 0;  // non-leaves

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// Node counts by type code; entry t-1 counts code t, t in 1..2m-1.
std::vector<std::int64_t> type_counts(const MaryTree& tree);

/// Throws kEmptyTree on an empty tree.
GapProfile gap_profile(const MaryTree& tree);
DegreeProfile degree_profile(const MaryTree& tree);

}  // namespace mst

#endif  // MST_TREE_HPP
