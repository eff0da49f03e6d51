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

#include "mst/tree.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "mst/error.hpp"

namespace mst {

std::size_t NodeView::child_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(children.begin(), children.end(),
                    [](NodeId c) { return c != kNoNode; }));
}

MaryTree::MaryTree(unsigned m) : m_(m) {
  if (m < 2) {
    throw Error(ErrorKind::kInvalidParameter,
                "branching factor must be at least 2, got " + std::to_string(m));
  }
}

NodeView MaryTree::node(NodeId id) const {
  if (id >= node_count()) {
    throw Error(ErrorKind::kOutOfRange, "node id " + std::to_string(id));
  }
  const std::size_t key_base = static_cast<std::size_t>(id) * (m_ - 1);
  const std::size_t child_base = static_cast<std::size_t>(id) * m_;
  return NodeView{
      std::span<const Key>(keys_.data() + key_base, key_count_[id]),
      std::span<const NodeId>(children_.data() + child_base, m_)};
}

std::span<Key> MaryTree::keys_of(NodeId id) noexcept {
  return {keys_.data() + static_cast<std::size_t>(id) * (m_ - 1),
          key_count_[id]};
}

NodeId MaryTree::new_leaf(Key key) {
  const auto id = static_cast<NodeId>(node_count());
  keys_.resize(keys_.size() + (m_ - 1), 0);
  children_.resize(children_.size() + m_, kNoNode);
  key_count_.push_back(1);
  keys_[static_cast<std::size_t>(id) * (m_ - 1)] = key;
  return id;
}

void MaryTree::insert(Key key) {
  if (root_ == kNoNode) {
    root_ = new_leaf(key);
    n_ = 1;
    return;
  }
  NodeId cur = root_;
  for (;;) {
    const std::uint32_t count = key_count_[cur];
    Key* first = keys_.data() + static_cast<std::size_t>(cur) * (m_ - 1);
    Key* last = first + count;
    Key* pos = std::lower_bound(first, last, key);
    if (pos != last && *pos == key) {
      throw Error(ErrorKind::kDuplicateKey,
                  "key " + std::to_string(key) + " already present");
    }
    const auto slot = static_cast<std::size_t>(pos - first);
    if (count < m_ - 1) {
      std::copy_backward(pos, last, last + 1);
      *pos = key;
      ++key_count_[cur];
      ++n_;
      return;
    }
    const std::size_t child_index = static_cast<std::size_t>(cur) * m_ + slot;
    const NodeId child = children_[child_index];
    if (child == kNoNode) {
      const NodeId leaf = new_leaf(key);
      children_[child_index] = leaf;
      ++n_;
      return;
    }
    cur = child;
  }
}

bool MaryTree::contains(Key key) const noexcept {
  NodeId cur = root_;
  while (cur != kNoNode) {
    const Key* first = keys_.data() + static_cast<std::size_t>(cur) * (m_ - 1);
    const Key* last = first + key_count_[cur];
    const Key* pos = std::lower_bound(first, last, key);
    if (pos != last && *pos == key) return true;
    cur = children_[static_cast<std::size_t>(cur) * m_ +
                    static_cast<std::size_t>(pos - first)];
  }
  return false;
}

namespace {

// In-order walk state: a node plus the next slot to process.
struct Frame {
  NodeId node;
  unsigned slot;
};

}  // namespace

std::vector<Key> MaryTree::in_order() const {
  std::vector<Key> out;
  out.reserve(n_);
  if (root_ == kNoNode) return out;
  std::vector<Frame> stack{{root_, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    const NodeView v = node(top.node);
    if (top.slot > v.keys.size()) {
      stack.pop_back();
      continue;
    }
    const unsigned slot = top.slot++;
    if (slot > 0) out.push_back(v.keys[slot - 1]);
    const NodeId child = v.children[slot];
    if (child != kNoNode) stack.push_back({child, 0});
  }
  return out;
}

std::vector<NodeId> MaryTree::preorder() const {
  std::vector<NodeId> out;
  out.reserve(node_count());
  if (root_ == kNoNode) return out;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const NodeView v = node(id);
    for (auto it = v.children.rbegin(); it != v.children.rend(); ++it) {
      if (*it != kNoNode) stack.push_back(*it);
    }
  }
  return out;
}

void MaryTree::for_each_gap(const std::function<void(const Gap&)>& visit) const {
  if (root_ == kNoNode) return;
  std::vector<Frame> stack{{root_, 0}};
  while (!stack.empty()) {
    Frame& top = stack.back();
    const NodeId id = top.node;
    const NodeView v = node(id);
    if (v.keys.size() < m_ - 1) {
      // partial leaf: j keys, j+1 gaps of color m+j
      const auto j = static_cast<unsigned>(v.keys.size());
      for (unsigned s = 0; s <= j; ++s) visit(Gap{id, s, m_ + j});
      stack.pop_back();
      continue;
    }
    if (top.slot == m_) {
      stack.pop_back();
      continue;
    }
    const unsigned slot = top.slot++;
    const NodeId child = v.children[slot];
    if (child != kNoNode) {
      stack.push_back({child, 0});
    } else {
      const auto empty = static_cast<unsigned>(m_ - v.child_count());
      visit(Gap{id, slot, empty});
    }
  }
}

Gap MaryTree::locate_gap(std::size_t gap_index) const {
  if (empty() || gap_index > n_) {
    throw Error(ErrorKind::kOutOfRange,
                "gap index " + std::to_string(gap_index) + " not in [0, " +
                    std::to_string(n_ + 1) + ")");
  }
  std::size_t seen = 0;
  Gap found;
  for_each_gap([&](const Gap& g) {
    if (seen++ == gap_index) found = g;
  });
  return found;
}

void MaryTree::spread_ranks() {
  std::vector<Key> sorted = in_order();
  for (std::size_t id = 0; id < node_count(); ++id) {
    for (Key& k : keys_of(static_cast<NodeId>(id))) {
      const auto rank = static_cast<Key>(
          std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin());
      k = 2 * (rank + 1);
    }
  }
}

NodeId MaryTree::add_node(std::span<const Key> keys) {
  if (keys.empty() || keys.size() > m_ - 1) {
    throw Error(ErrorKind::kCorruptImage,
                "node with " + std::to_string(keys.size()) + " keys");
  }
  const NodeId id = new_leaf(keys[0]);
  std::copy(keys.begin(), keys.end(),
            keys_.begin() + static_cast<std::ptrdiff_t>(id) * (m_ - 1));
  key_count_[id] = static_cast<std::uint32_t>(keys.size());
  return id;
}

void MaryTree::set_child(NodeId parent, unsigned slot, NodeId child) {
  if (parent >= node_count() || slot >= m_ ||
      (child != kNoNode && child >= node_count())) {
    throw Error(ErrorKind::kOutOfRange, "set_child out of range");
  }
  children_[static_cast<std::size_t>(parent) * m_ + slot] = child;
}

void MaryTree::set_root(NodeId root, std::size_t n) {
  if (root != kNoNode && root >= node_count()) {
    throw Error(ErrorKind::kOutOfRange, "root out of range");
  }
  root_ = root;
  n_ = n;
}

void MaryTree::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorKind::kCorruptImage, what);
  };
  if (root_ == kNoNode) {
    if (n_ != 0 || node_count() != 0) fail("empty tree with stray nodes");
    return;
  }
  struct Bounds {
    NodeId node;
    bool has_lo, has_hi;
    Key lo, hi;
  };
  std::vector<char> visited(node_count(), 0);
  std::vector<Bounds> stack{{root_, false, false, 0, 0}};
  std::size_t keys_seen = 0;
  std::size_t nodes_seen = 0;
  while (!stack.empty()) {
    const Bounds b = stack.back();
    stack.pop_back();
    if (visited[b.node]) fail("node reachable twice");
    visited[b.node] = 1;
    ++nodes_seen;
    const NodeView v = node(b.node);
    if (v.keys.empty() || v.keys.size() > m_ - 1) fail("bad key count");
    for (std::size_t i = 1; i < v.keys.size(); ++i) {
      if (v.keys[i - 1] >= v.keys[i]) fail("keys not ascending");
    }
    if ((b.has_lo && v.keys.front() <= b.lo) ||
        (b.has_hi && v.keys.back() >= b.hi)) {
      fail("key outside its parent interval");
    }
    keys_seen += v.keys.size();
    const bool filled = v.keys.size() == m_ - 1;
    for (unsigned s = 0; s < m_; ++s) {
      const NodeId c = v.children[s];
      if (c == kNoNode) continue;
      if (!filled) fail("child under a node that is not filled");
      Bounds cb = b;
      cb.node = c;
      if (s > 0) {
        cb.has_lo = true;
        cb.lo = v.keys[s - 1];
      }
      if (s < v.keys.size()) {
        cb.has_hi = true;
        cb.hi = v.keys[s];
      }
      stack.push_back(cb);
    }
  }
  if (nodes_seen != node_count()) fail("unreachable nodes");
  if (keys_seen != n_) fail("key count does not match n");
}

bool operator==(const MaryTree& a, const MaryTree& b) {
  if (a.m_ != b.m_ || a.n_ != b.n_) return false;
  if ((a.root_ == kNoNode) != (b.root_ == kNoNode)) return false;
  if (a.root_ == kNoNode) return true;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root_, b.root_}};
  while (!stack.empty()) {
    const auto [ia, ib] = stack.back();
    stack.pop_back();
    const NodeView va = a.node(ia);
    const NodeView vb = b.node(ib);
    if (!std::equal(va.keys.begin(), va.keys.end(), vb.keys.begin(),
                    vb.keys.end())) {
      return false;
    }
    for (unsigned s = 0; s < a.m_; ++s) {
      const NodeId ca = va.children[s];
      const NodeId cb = vb.children[s];
      if ((ca == kNoNode) != (cb == kNoNode)) return false;
      if (ca != kNoNode) stack.emplace_back(ca, cb);
    }
  }
  return true;
}

MaryTree build_from_permutation(unsigned m, std::span<const Key> perm) {
  MaryTree tree(m);
  for (Key k : perm) tree.insert(k);
  return tree;
}

NodeTypeCode classify_node(const NodeView& node, unsigned m) noexcept {
  const auto keys = static_cast<unsigned>(node.keys.size());
  if (keys < m - 1) return {m + keys};
  const auto children = static_cast<unsigned>(node.child_count());
  if (children == 0) return {m};
  if (children == m) return {2 * m - 1};
  return {m - children};
}

std::int64_t GapProfile::total() const noexcept {
  std::int64_t sum = 0;
  for (auto c : x) sum += c;
  return sum;
}

std::vector<std::int64_t> type_counts(const MaryTree& tree) {
  const unsigned m = tree.m();
  std::vector<std::int64_t> counts(2 * m - 1, 0);
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    ++counts[classify_node(tree.node(id), m).value - 1];
  }
  return counts;
}

namespace {

void require_nonempty(const MaryTree& tree) {
  if (tree.empty()) {
    throw Error(ErrorKind::kEmptyTree, "profile of an empty tree is undefined");
  }
}

}  // namespace

GapProfile gap_profile(const MaryTree& tree) {
  require_nonempty(tree);
  const unsigned m = tree.m();
  const std::vector<std::int64_t> types = type_counts(tree);
  GapProfile profile{m, std::vector<std::int64_t>(2 * m - 2, 0)};
  for (unsigned t = 1; t <= m; ++t) profile.x[t - 1] = t * types[t - 1];
  for (unsigned j = 1; j + 2 <= m; ++j) {
    profile.x[m + j - 1] = (j + 1) * types[m + j - 1];
  }
  return profile;
}

DegreeProfile degree_profile(const MaryTree& tree) {
  require_nonempty(tree);
  const unsigned m = tree.m();
  DegreeProfile d{m, std::vector<std::int64_t>(m + 1, 0)};
  for (NodeId id = 0; id < tree.node_count(); ++id) {
    ++d.by_degree[tree.node(id).child_count()];
  }
  d.nodes = static_cast<std::int64_t>(tree.node_count());
  d.leaves = d.by_degree[0];
  d.protected_nodes = d.nodes - d.leaves;
  return d;
}

}  // namespace mst
