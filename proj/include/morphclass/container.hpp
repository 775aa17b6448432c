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

#include <string>
#include <string_view>

#include "morphclass/label_grid.hpp"

namespace mc {

enum class Codec { kRaw, kRle, kTree, kRect };

/// "raw", "rle", "tree" or "rect". Throws InputError otherwise.
Codec parse_codec(std::string_view name);
const char* codec_name(Codec codec);

/// MCMODEL text container for a 2D label grid:
///   MCMODEL 1
///   dims <x> <y>
///   origin <ox> <oy>
///   precision <vx> <vy>
///   labels <L>
///   codec <raw|rle|tree|rect>
///   <payload>
/// raw: one line per row y, labels separated by spaces. rle: one line, the
/// run-length code of the label stream with labels 1..52 written as A..Z,
/// a..z. tree: one line of pre-order tree tokens. rect: one line per
/// rectangle, `label x y extent_x extent_y`.
std::string write_model(const LabelGrid& model, Codec codec);

/// Throws FormatError carrying the byte offset of the offending line.
LabelGrid read_model(std::string_view text);

/// Codec named in a container header.
Codec model_codec(std::string_view text);

void save_model(const std::string& path, const LabelGrid& model, Codec codec);
LabelGrid load_model(const std::string& path);

/// Whole file as a string. Throws InputError when it cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mc
