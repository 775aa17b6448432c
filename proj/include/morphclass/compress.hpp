// Copyright 2026 The morphclass Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "morphclass/common.hpp"
#include "morphclass/label_grid.hpp"

namespace mc {

// ---- rectangle sets --------------------------------------------------------

/// Axis-aligned block of cells [corner, corner + extent) with one label.
struct Rect {
  std::vector<std::int64_t> corner;
  std::vector<std::int64_t> extent;  // cells per axis, each >= 1
  Label label = kNoLabel;
  friend bool operator==(const Rect&, const Rect&) = default;
};

using RectSet = std::vector<Rect>;

/// Greedy decomposition in row-major order: each uncovered cell starts a
/// rectangle that is widened along x, then grown along y while the whole
/// strip keeps the label.
RectSet to_rects(const LabelGrid& model);

/// Rebuilds a grid from a tiling. Throws InputError when the rectangles leave
/// a cell uncovered, overlap, or fall outside `spec`.
LabelGrid from_rects(const RectSet& rects, const GridSpec& spec,
                     std::size_t num_classes);

/// Storage cost of `r` rectangles in p dimensions with k bits per value:
/// r * (2pk + k).
std::int64_t rect_bits(std::size_t r, std::size_t p, int k);
std::int64_t rect_bits(const RectSet& rects, int k);

/// Storage cost of n raw p-dimensional points with k bits per value.
std::int64_t raw_set_bits(std::size_t n, std::size_t p, int k);

// ---- 2^p-trees -------------------------------------------------------------

/// Label used for cells added when padding the grid to a power-of-two side.
inline constexpr Label kOutLabel = 0;

/// Leaf when `children` is empty. Child index bit j selects the upper half
/// along axis j.
struct TreeNode {
  Label label = kOutLabel;
  std::vector<TreeNode> children;
  bool leaf() const noexcept { return children.empty(); }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct OrthantTree {
  std::size_t rank = 2;
  std::int64_t side = 1;  // power of two covering every axis
  TreeNode root;
  friend bool operator==(const OrthantTree&, const OrthantTree&) = default;
};

std::int64_t tree_side(const GridSpec& spec);

OrthantTree build_tree(const LabelGrid& model);

/// Label stored for `coords` (each in [0, side)).
Label tree_lookup(const OrthantTree& tree, std::span<const std::int64_t> coords,
                  std::size_t* visited_internal = nullptr);

std::size_t tree_node_count(const TreeNode& node);
std::size_t tree_depth(const TreeNode& node);

/// Decimal width of leaf tokens for labels 0..num_classes.
int leaf_width(std::size_t num_classes);

/// Pre-order tokens: 'X' for an internal node, a fixed-width decimal label
/// for a leaf.
std::string serialize_tree(const OrthantTree& tree, std::size_t num_classes);

/// Inverse of serialize_tree. Throws FormatError with the character offset
/// of the first bad token.
OrthantTree deserialize_tree(std::string_view text, std::size_t rank,
                             std::size_t num_classes, std::int64_t side);

/// Rebuilds the grid described by `spec`, dropping the padding.
LabelGrid grid_from_tree(const OrthantTree& tree, const GridSpec& spec,
                         std::size_t num_classes);

/// Bit-packed pre-order form: one flag bit per node (1 = internal), then
/// ceil(log2(L + 1)) bits per leaf label, most significant bit first.
std::vector<std::uint8_t> pack_tree(const OrthantTree& tree, std::size_t num_classes);
OrthantTree unpack_tree(std::span<const std::uint8_t> bytes, std::size_t rank,
                        std::size_t num_classes, std::int64_t side);
int packed_label_bits(std::size_t num_classes);

// ---- run-length encoding ---------------------------------------------------

/// Maximal runs become <count><char>; the count is always written.
/// Throws InputError when `text` contains a digit.
std::string rle_encode(std::string_view text);

/// Throws FormatError on a character without a count, a zero count, or a
/// trailing count.
std::string rle_decode(std::string_view text);

}  // namespace mc
