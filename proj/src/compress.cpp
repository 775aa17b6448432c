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

#include "morphclass/compress.hpp"

#include <algorithm>
#include <cctype>

namespace mc {

// ---- rectangle sets --------------------------------------------------------

namespace {

void check_planar(const GridSpec& spec, const char* what) {
  if (spec.rank() < 1 || spec.rank() > 2) {
    throw InputError(std::string(what) + " supports 1D and 2D grids only");
  }
}

}  // namespace

RectSet to_rects(const LabelGrid& model) {
  check_planar(model.spec(), "rectangle coding");
  const std::int64_t w = static_cast<std::int64_t>(model.width());
  const std::int64_t h = static_cast<std::int64_t>(model.height());
  const std::size_t rank = model.spec().rank();
  std::vector<char> covered(static_cast<std::size_t>(w * h), 0);
  auto free_with = [&](std::int64_t x, std::int64_t y, Label l) {
    const auto c = static_cast<std::size_t>(y * w + x);
    return !covered[c] && model.at(c) == l;
  };
  RectSet out;
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      const auto c = static_cast<std::size_t>(y * w + x);
      if (covered[c]) continue;
      const Label l = model.at(c);
      std::int64_t tx = 1;
      while (x + tx < w && free_with(x + tx, y, l)) ++tx;
      std::int64_t ty = 1;
      while (y + ty < h) {
        bool ok = true;
        for (std::int64_t i = 0; i < tx && ok; ++i) ok = free_with(x + i, y + ty, l);
        if (!ok) break;
        ++ty;
      }
      for (std::int64_t j = 0; j < ty; ++j) {
        std::fill_n(covered.begin() + (y + j) * w + x, tx, 1);
      }
      Rect r;
      r.label = l;
      r.corner = {x};
      r.extent = {tx};
      if (rank == 2) {
        r.corner.push_back(y);
        r.extent.push_back(ty);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

LabelGrid from_rects(const RectSet& rects, const GridSpec& spec,
                     std::size_t num_classes) {
  check_planar(spec, "rectangle coding");
  const std::int64_t w = spec.dims[0];
  const std::int64_t h = spec.rank() == 2 ? spec.dims[1] : 1;
  std::vector<Label> labels(static_cast<std::size_t>(w * h), kNoLabel);
  for (std::size_t i = 0; i < rects.size(); ++i) {
    const Rect& r = rects[i];
    const std::string where = "rectangle " + std::to_string(i);
    if (r.corner.size() != spec.rank() || r.extent.size() != spec.rank()) {
      throw InputError(where + " has the wrong number of axes");
    }
    if (r.label < 1 || r.label > num_classes) {
      throw InputError(where + " has label " + std::to_string(r.label) +
                       " outside 1.." + std::to_string(num_classes));
    }
    const std::int64_t x0 = r.corner[0];
    const std::int64_t tx = r.extent[0];
    const std::int64_t y0 = spec.rank() == 2 ? r.corner[1] : 0;
    const std::int64_t ty = spec.rank() == 2 ? r.extent[1] : 1;
    if (tx < 1 || ty < 1 || x0 < 0 || y0 < 0 || x0 + tx > w || y0 + ty > h) {
      throw InputError(where + " lies outside the grid");
    }
    for (std::int64_t y = y0; y < y0 + ty; ++y) {
      for (std::int64_t x = x0; x < x0 + tx; ++x) {
        Label& cell = labels[static_cast<std::size_t>(y * w + x)];
        if (cell != kNoLabel) throw InputError(where + " overlaps another rectangle");
        cell = r.label;
      }
    }
  }
  if (std::find(labels.begin(), labels.end(), kNoLabel) != labels.end()) {
    throw InputError("rectangles leave cells uncovered");
  }
  return LabelGrid(spec, num_classes, std::move(labels));
}

std::int64_t rect_bits(std::size_t r, std::size_t p, int k) {
  if (k < 1) throw InputError("bits per value must be at least 1");
  const auto kk = static_cast<std::int64_t>(k);
  return static_cast<std::int64_t>(r) * (2 * static_cast<std::int64_t>(p) * kk + kk);
}

std::int64_t rect_bits(const RectSet& rects, int k) {
  const std::size_t p = rects.empty() ? 0 : rects.front().corner.size();
  return rect_bits(rects.size(), p, k);
}

std::int64_t raw_set_bits(std::size_t n, std::size_t p, int k) {
  return static_cast<std::int64_t>(p * n) * k;
}

// ---- 2^p-trees -------------------------------------------------------------

std::int64_t tree_side(const GridSpec& spec) {
  const std::int64_t longest = *std::max_element(spec.dims.begin(), spec.dims.end());
  std::int64_t side = 1;
  while (side < longest) side *= 2;
  return side;
}

namespace {

TreeNode build_node(const LabelGrid& model, std::vector<std::int64_t>& corner,
                    std::int64_t size) {
  const GridSpec& spec = model.spec();
  for (std::size_t j = 0; j < corner.size(); ++j) {
    if (corner[j] >= spec.dims[j]) return TreeNode{kOutLabel, {}};
  }
  if (size == 1) return TreeNode{model.at(linear_index(corner, spec)), {}};
  const std::int64_t half = size / 2;
  const std::size_t arity = std::size_t{1} << corner.size();
  TreeNode node;
  node.children.reserve(arity);
  for (std::size_t c = 0; c < arity; ++c) {
    for (std::size_t j = 0; j < corner.size(); ++j) {
      if (c >> j & 1u) corner[j] += half;
    }
    node.children.push_back(build_node(model, corner, half));
    for (std::size_t j = 0; j < corner.size(); ++j) {
      if (c >> j & 1u) corner[j] -= half;
    }
  }
  const Label first = node.children.front().label;
  const bool uniform = std::all_of(node.children.begin(), node.children.end(),
                                   [&](const TreeNode& n) { return n.leaf() && n.label == first; });
  if (uniform) return TreeNode{first, {}};
  return node;
}

}  // namespace

OrthantTree build_tree(const LabelGrid& model) {
  OrthantTree tree;
  tree.rank = model.spec().rank();
  if (tree.rank == 0 || tree.rank > 16) throw InputError("unsupported tree rank");
  tree.side = tree_side(model.spec());
  std::vector<std::int64_t> corner(tree.rank, 0);
  tree.root = build_node(model, corner, tree.side);
  return tree;
}

Label tree_lookup(const OrthantTree& tree, std::span<const std::int64_t> coords,
                  std::size_t* visited_internal) {
  std::vector<std::int64_t> local(coords.begin(), coords.end());
  const TreeNode* node = &tree.root;
  std::int64_t size = tree.side;
  std::size_t visited = 0;
  while (!node->leaf()) {
    ++visited;
    const std::int64_t half = size / 2;
    std::size_t index = 0;
    for (std::size_t j = 0; j < local.size(); ++j) {
      if (local[j] >= half) {
        index |= std::size_t{1} << j;
        local[j] -= half;
      }
    }
    node = &node->children[index];
    size = half;
  }
  if (visited_internal != nullptr) *visited_internal = visited;
  return node->label;
}

std::size_t tree_node_count(const TreeNode& node) {
  std::size_t n = 1;
  for (const TreeNode& c : node.children) n += tree_node_count(c);
  return n;
}

std::size_t tree_depth(const TreeNode& node) {
  std::size_t d = 0;
  for (const TreeNode& c : node.children) d = std::max(d, 1 + tree_depth(c));
  return d;
}

int leaf_width(std::size_t num_classes) {
  int width = 1;
  for (std::size_t v = num_classes; v >= 10; v /= 10) ++width;
  return width;
}

namespace {

void write_node(const TreeNode& node, int width, std::string& out) {
  if (!node.leaf()) {
    out += 'X';
    for (const TreeNode& c : node.children) write_node(c, width, out);
    return;
  }
  std::string digits = std::to_string(node.label);
  out.append(static_cast<std::size_t>(width) - digits.size(), '0');
  out += digits;
}

class TreeReader {
 public:
  TreeReader(std::string_view text, std::size_t rank, std::size_t num_classes)
      : text_(text), arity_(std::size_t{1} << rank), classes_(num_classes),
        width_(static_cast<std::size_t>(leaf_width(num_classes))) {}

  TreeNode node(std::int64_t size) {
    if (pos_ >= text_.size()) throw FormatError("truncated tree", pos_);
    if (text_[pos_] == 'X') {
      if (size == 1) throw FormatError("internal node below cell level", pos_);
      ++pos_;
      TreeNode n;
      n.children.reserve(arity_);
      for (std::size_t c = 0; c < arity_; ++c) n.children.push_back(node(size / 2));
      return n;
    }
    if (pos_ + width_ > text_.size()) throw FormatError("truncated leaf label", pos_);
    std::size_t value = 0;
    for (std::size_t i = 0; i < width_; ++i) {
      const char ch = text_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw FormatError(std::string("unexpected character '") + ch + "' in tree", pos_ + i);
      }
      value = value * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (value > classes_) {
      throw FormatError("leaf label " + std::to_string(value) + " exceeds " +
                            std::to_string(classes_),
                        pos_);
    }
    pos_ += width_;
    return TreeNode{static_cast<Label>(value), {}};
  }

  std::size_t position() const noexcept { return pos_; }

 private:
  std::string_view text_;
  std::size_t arity_;
  std::size_t classes_;
  std::size_t width_;
  std::size_t pos_ = 0;
};

void check_side(std::int64_t side) {
  if (side < 1 || (side & (side - 1)) != 0) {
    throw InputError("tree side must be a power of two");
  }
}

}  // namespace

std::string serialize_tree(const OrthantTree& tree, std::size_t num_classes) {
  std::string out;
  write_node(tree.root, leaf_width(num_classes), out);
  return out;
}

OrthantTree deserialize_tree(std::string_view text, std::size_t rank,
                             std::size_t num_classes, std::int64_t side) {
  check_side(side);
  if (rank == 0 || rank > 16) throw InputError("unsupported tree rank");
  TreeReader reader(text, rank, num_classes);
  OrthantTree tree;
  tree.rank = rank;
  tree.side = side;
  tree.root = reader.node(side);
  if (reader.position() != text.size()) {
    throw FormatError("trailing data after tree", reader.position());
  }
  return tree;
}

LabelGrid grid_from_tree(const OrthantTree& tree, const GridSpec& spec,
                         std::size_t num_classes) {
  if (tree.rank != spec.rank() || tree.side < tree_side(spec)) {
    throw InputError("tree does not cover the grid");
  }
  std::vector<Label> labels(spec.cell_count());
  std::vector<std::int64_t> coords(spec.rank(), 0);
  for (std::size_t cell = 0; cell < labels.size(); ++cell) {
    std::size_t rest = cell;
    for (std::size_t j = 0; j < spec.rank(); ++j) {
      coords[j] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(spec.dims[j]));
      rest /= static_cast<std::size_t>(spec.dims[j]);
    }
    const Label l = tree_lookup(tree, coords);
    if (l == kOutLabel || l > num_classes) {
      throw InputError("tree stores an invalid label inside the grid");
    }
    labels[cell] = l;
  }
  return LabelGrid(spec, num_classes, std::move(labels));
}

int packed_label_bits(std::size_t num_classes) {
  int bits = 0;
  while ((std::size_t{1} << bits) < num_classes + 1) ++bits;
  return std::max(bits, 1);
}

namespace {

class BitWriter {
 public:
  void put(std::uint32_t value, int bits) {
    for (int b = bits - 1; b >= 0; --b) {
      if (used_ % 8 == 0) bytes_.push_back(0);
      if (value >> b & 1u) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (used_ % 8));
      ++used_;
    }
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t used_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  std::uint32_t get(int bits) {
    std::uint32_t v = 0;
    for (int b = 0; b < bits; ++b) {
      if (pos_ / 8 >= bytes_.size()) throw FormatError("truncated packed tree", pos_);
      v = v << 1 | ((bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u);
      ++pos_;
    }
    return v;
  }
  std::size_t position() const noexcept { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void pack_node(const TreeNode& node, int bits, BitWriter& out) {
  out.put(node.leaf() ? 0 : 1, 1);
  if (node.leaf()) {
    out.put(node.label, bits);
    return;
  }
  for (const TreeNode& c : node.children) pack_node(c, bits, out);
}

TreeNode unpack_node(BitReader& in, std::size_t arity, int bits,
                     std::size_t num_classes, std::int64_t size) {
  const std::size_t at = in.position();
  if (in.get(1) == 1) {
    if (size == 1) throw FormatError("internal node below cell level", at);
    TreeNode n;
    for (std::size_t c = 0; c < arity; ++c) {
      n.children.push_back(unpack_node(in, arity, bits, num_classes, size / 2));
    }
    return n;
  }
  const std::uint32_t label = in.get(bits);
  if (label > num_classes) throw FormatError("leaf label out of range", at);
  return TreeNode{static_cast<Label>(label), {}};
}

}  // namespace

std::vector<std::uint8_t> pack_tree(const OrthantTree& tree, std::size_t num_classes) {
  BitWriter out;
  pack_node(tree.root, packed_label_bits(num_classes), out);
  return out.take();
}

OrthantTree unpack_tree(std::span<const std::uint8_t> bytes, std::size_t rank,
                        std::size_t num_classes, std::int64_t side) {
  check_side(side);
  if (rank == 0 || rank > 16) throw InputError("unsupported tree rank");
  BitReader in(bytes);
  OrthantTree tree;
  tree.rank = rank;
  tree.side = side;
  tree.root = unpack_node(in, std::size_t{1} << rank, packed_label_bits(num_classes),
                          num_classes, side);
  return tree;
}

// ---- run-length encoding ---------------------------------------------------

std::string rle_encode(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      throw InputError("run-length input contains a digit at position " + std::to_string(i));
    }
    std::size_t j = i + 1;
    while (j < text.size() && text[j] == c) ++j;
    out += std::to_string(j - i);
    out += c;
    i = j;
  }
  return out;
}

std::string rle_decode(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const std::size_t start = i;
    std::size_t count = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (count > (std::size_t{1} << 40)) throw FormatError("run length too large", start);
      count = count * 10 + static_cast<std::size_t>(text[i] - '0');
      ++i;
    }
    if (i == start) throw FormatError("missing run length", start);
    if (i == text.size()) throw FormatError("run length without a character", start);
    if (count == 0) throw FormatError("zero run length", start);
    out.append(count, text[i]);
    ++i;
  }
  return out;
}

}  // namespace mc
