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

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "morphclass/compress.hpp"
#include "morphclass/container.hpp"
#include "test_support.hpp"

namespace mc {
namespace {

using test::unit_spec;

LabelGrid grid_from_rows(std::int64_t w, std::int64_t h, std::size_t L,
                         const std::vector<Label>& rows_top_down) {
  // Rows are listed top row first to match how the figure is drawn.
  std::vector<Label> labels(static_cast<std::size_t>(w * h));
  for (std::int64_t y = 0; y < h; ++y) {
    for (std::int64_t x = 0; x < w; ++x) {
      labels[static_cast<std::size_t>(y * w + x)] =
          rows_top_down[static_cast<std::size_t>((h - 1 - y) * w + x)];
    }
  }
  return LabelGrid(unit_spec(w, h), L, std::move(labels));
}

// Counts quadtree nodes straight from the cells, without the library.
void count_nodes(const LabelGrid& g, std::int64_t x0, std::int64_t y0, std::int64_t size,
                 std::size_t& internal, std::size_t& leaves) {
  bool uniform = true;
  for (std::int64_t y = y0; y < y0 + size; ++y) {
    for (std::int64_t x = x0; x < x0 + size; ++x) {
      uniform = uniform && g.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) ==
                               g.at(static_cast<std::size_t>(x0), static_cast<std::size_t>(y0));
    }
  }
  if (uniform) {
    ++leaves;
    return;
  }
  ++internal;
  const std::int64_t h = size / 2;
  count_nodes(g, x0, y0, h, internal, leaves);
  count_nodes(g, x0 + h, y0, h, internal, leaves);
  count_nodes(g, x0, y0 + h, h, internal, leaves);
  count_nodes(g, x0 + h, y0 + h, h, internal, leaves);
}

LabelGrid quadrant_example() {
  return grid_from_rows(4, 4, 2,
                        {1, 2, 2, 2,  //
                         2, 1, 2, 2,  //
                         1, 1, 2, 1,  //
                         1, 1, 1, 1});
}

LabelGrid random_grid(std::mt19937_64& rng, std::int64_t max_side, std::size_t max_labels) {
  const auto w = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(max_side));
  const auto h = static_cast<std::int64_t>(1 + rng() % static_cast<std::uint64_t>(max_side));
  const auto L = static_cast<std::size_t>(1 + rng() % max_labels);
  return test::random_label_grid(rng, w, h, L, static_cast<int>(rng() % 100));
}

TEST(Rects, GreedyCoverAndRoundTrip) {
  const LabelGrid g = grid_from_rows(3, 2, 2, {1, 1, 2,  //
                                               1, 1, 2});
  const RectSet rects = to_rects(g);
  ASSERT_EQ(rects.size(), 2u);
  EXPECT_EQ(rects[0], (Rect{{0, 0}, {2, 2}, 1}));
  EXPECT_EQ(rects[1], (Rect{{2, 0}, {1, 2}, 2}));
  EXPECT_EQ(from_rects(rects, g.spec(), 2), g);
}

TEST(Rects, BitCounts) {
  EXPECT_EQ(rect_bits(2, 2, 8), 2 * (2 * 2 * 8 + 8));
  EXPECT_EQ(rect_bits(1, 3, 1), 7);
  EXPECT_EQ(raw_set_bits(100, 2, 8), 1600);
  EXPECT_THROW(rect_bits(1, 2, 0), InputError);
  const LabelGrid uniform(unit_spec(5, 7), 1, std::vector<Label>(35, 1));
  const RectSet one = to_rects(uniform);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(rect_bits(one, 8), 40);
}

TEST(Rects, RejectsBadSets) {
  const GridSpec spec = unit_spec(2, 2);
  EXPECT_THROW(from_rects({Rect{{0, 0}, {2, 1}, 1}}, spec, 1), InputError);
  EXPECT_THROW(from_rects({Rect{{0, 0}, {2, 2}, 1}, Rect{{1, 1}, {1, 1}, 1}}, spec, 1),
               InputError);
  EXPECT_THROW(from_rects({Rect{{0, 0}, {3, 2}, 1}}, spec, 1), InputError);
  EXPECT_THROW(from_rects({Rect{{0, 0}, {2, 2}, 2}}, spec, 1), InputError);
}

TEST(Tree, UniformGridIsOneLeaf) {
  const LabelGrid g(unit_spec(8, 8), 3, std::vector<Label>(64, 2));
  const OrthantTree t = build_tree(g);
  EXPECT_TRUE(t.root.leaf());
  EXPECT_EQ(serialize_tree(t, 3), "2");
}

TEST(Tree, PreOrderTokens) {
  OrthantTree t;
  t.rank = 2;
  t.side = 2;
  t.root.children = {TreeNode{0, {}}, TreeNode{1, {}}, TreeNode{1, {}}, TreeNode{0, {}}};
  EXPECT_EQ(serialize_tree(t, 1), "X0110");
  EXPECT_EQ(deserialize_tree("X0110", 2, 1, 2), t);
  OrthantTree leaf;
  leaf.root.label = 1;
  EXPECT_EQ(serialize_tree(leaf, 1), "1");
}

TEST(Tree, QuadrantExampleHasThirteenTokens) {
  const LabelGrid g = quadrant_example();
  std::size_t internal = 0;
  std::size_t leaves = 0;
  count_nodes(g, 0, 0, 4, internal, leaves);
  EXPECT_EQ(internal, 3u);
  EXPECT_EQ(leaves, 10u);
  const OrthantTree t = build_tree(g);
  EXPECT_EQ(tree_node_count(t.root), internal + leaves);
  const std::string s = serialize_tree(t, 2);
  EXPECT_EQ(s.size(), 13u);
  EXPECT_EQ(16 - s.size(), 3u);
  EXPECT_EQ(grid_from_tree(deserialize_tree(s, 2, 2, 4), g.spec(), 2), g);
}

TEST(Tree, PaddingAndLookupDepth) {
  std::mt19937_64 rng(3);
  const LabelGrid g = test::random_label_grid(rng, 13, 5, 4, 60);
  const OrthantTree t = build_tree(g);
  EXPECT_EQ(t.side, 16);
  for (std::int64_t y = 0; y < 16; ++y) {
    for (std::int64_t x = 0; x < 16; ++x) {
      const std::vector<std::int64_t> c{x, y};
      std::size_t visited = 0;
      const Label l = tree_lookup(t, c, &visited);
      EXPECT_LE(visited, 4u);
      if (x < 13 && y < 5) {
        EXPECT_EQ(l, g.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
      } else {
        EXPECT_EQ(l, kOutLabel);
      }
    }
  }
  EXPECT_LE(tree_depth(t.root), 4u);
}

TEST(Tree, WideLabelsUseFixedWidth) {
  EXPECT_EQ(leaf_width(9), 1);
  EXPECT_EQ(leaf_width(10), 2);
  EXPECT_EQ(leaf_width(120), 3);
  const LabelGrid g = grid_from_rows(2, 1, 12, {12, 3});
  const OrthantTree t = build_tree(g);
  EXPECT_EQ(serialize_tree(t, 12), "X12030000");
  EXPECT_EQ(grid_from_tree(deserialize_tree("X12030000", 2, 12, 2), g.spec(), 12), g);
}

TEST(Tree, DecodeErrorsCarryPosition) {
  try {
    deserialize_tree("X01", 2, 1, 2);
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 3u);
  }
  EXPECT_THROW(deserialize_tree("X0110X", 2, 1, 2), FormatError);
  EXPECT_THROW(deserialize_tree("X01q0", 2, 1, 2), FormatError);
  EXPECT_THROW(deserialize_tree("X0130", 2, 2, 2), FormatError);
  EXPECT_THROW(deserialize_tree("XX1111111", 2, 1, 2), FormatError);
}

TEST(Tree, PackedRoundTrip) {
  EXPECT_EQ(packed_label_bits(1), 1);
  EXPECT_EQ(packed_label_bits(3), 2);
  EXPECT_EQ(packed_label_bits(4), 3);
  const LabelGrid g = quadrant_example();
  const OrthantTree t = build_tree(g);
  const auto bytes = pack_tree(t, 2);
  // 13 flag bits plus 2 bits for each of the 10 leaves.
  EXPECT_EQ(bytes.size(), (13u + 20u + 7u) / 8u);
  EXPECT_EQ(unpack_tree(bytes, 2, 2, 4), t);
  EXPECT_THROW(unpack_tree(std::span(bytes).first(1), 2, 2, 4), FormatError);
}

TEST(Rle, Examples) {
  EXPECT_EQ(rle_encode("AAAABBC"), "4A2B1C");
  EXPECT_EQ(rle_encode(""), "");
  EXPECT_EQ(rle_decode(""), "");
  EXPECT_EQ(rle_decode("4A2B1C"), "AAAABBC");
  EXPECT_EQ(rle_decode("12x"), std::string(12, 'x'));
  const std::string e = rle_encode("XXYZZZ");
  EXPECT_EQ(rle_encode(rle_decode(e)), e);
}

TEST(Rle, Errors) {
  EXPECT_THROW(rle_encode("A1"), InputError);
  EXPECT_THROW(rle_decode("A"), FormatError);
  EXPECT_THROW(rle_decode("3"), FormatError);
  EXPECT_THROW(rle_decode("0A"), FormatError);
  try {
    rle_decode("2AB");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Container, RoundTripEveryCodec) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    LabelGrid g = random_grid(rng, 40, 16);
    const GridSpec spec{{2.5, 0.125}, {-3, 7}, g.spec().dims};
    g = LabelGrid(spec, g.num_classes(), std::vector<Label>(g.labels().begin(), g.labels().end()));
    for (Codec c : {Codec::kRaw, Codec::kRle, Codec::kTree, Codec::kRect}) {
      const std::string text = write_model(g, c);
      EXPECT_EQ(model_codec(text), c);
      const LabelGrid back = read_model(text);
      EXPECT_EQ(back, g) << codec_name(c);
      EXPECT_EQ(write_model(back, c), text);
    }
  }
}

TEST(Container, RejectsMalformedInput) {
  const LabelGrid g = quadrant_example();
  EXPECT_THROW(read_model("MCMODEL 2\n"), FormatError);
  EXPECT_THROW(read_model(""), FormatError);
  for (Codec c : {Codec::kRaw, Codec::kRle, Codec::kTree, Codec::kRect}) {
    const std::string text = write_model(g, c);
    const std::string cut = text.substr(0, text.size() - 3);
    EXPECT_THROW(read_model(cut), InputError) << codec_name(c);
  }
  EXPECT_THROW(parse_codec("zip"), InputError);
  const LabelGrid many(unit_spec(60, 1), 60, [] {
    std::vector<Label> v(60);
    for (std::size_t i = 0; i < 60; ++i) v[i] = static_cast<Label>(i + 1);
    return v;
  }());
  EXPECT_THROW(write_model(many, Codec::kRle), InputError);
  EXPECT_EQ(read_model(write_model(many, Codec::kTree)), many);
}

TEST(Codecs, FuzzedGridsAreLossless) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 150; ++trial) {
    const LabelGrid g = random_grid(rng, trial < 10 ? 256 : 64, 16);
    const RectSet rects = to_rects(g);
    EXPECT_EQ(from_rects(rects, g.spec(), g.num_classes()), g);
    EXPECT_EQ(rect_bits(rects, 8),
              static_cast<std::int64_t>(rects.size()) * (2 * 2 * 8 + 8));
    const OrthantTree t = build_tree(g);
    const std::string s = serialize_tree(t, g.num_classes());
    EXPECT_EQ(grid_from_tree(deserialize_tree(s, 2, g.num_classes(), t.side), g.spec(),
                             g.num_classes()),
              g);
    EXPECT_EQ(unpack_tree(pack_tree(t, g.num_classes()), 2, g.num_classes(), t.side), t);
    std::string letters;
    for (Label l : g.labels()) letters += static_cast<char>('A' + l - 1);
    EXPECT_EQ(rle_decode(rle_encode(letters)), letters);
  }
}

}  // namespace
}  // namespace mc
