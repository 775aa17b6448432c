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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "morphclass/distance.hpp"
#include "morphclass/grid.hpp"
#include "morphclass/label_grid.hpp"

namespace mc {

/// Orientation mask for dilation cones. y grows upward.
enum Direction : std::uint8_t {
  kLeft = 1u << 0,    // e.x <= -|e.y|
  kBottom = 1u << 1,  // e.y <= -|e.x|
  kRight = 1u << 2,   // e.x >= |e.y|
  kTop = 1u << 3,     // e.y >= |e.x|
};

inline constexpr std::uint8_t kAllDirections = kLeft | kBottom | kRight | kTop;

/// Parses a subset of "LRTB" (case-insensitive). Throws InputError on an
/// unknown letter or an empty mask.
std::uint8_t parse_beta(const std::string& text);
std::string format_beta(std::uint8_t beta);

bool orientation_allows(Offset e, std::uint8_t beta) noexcept;

struct MDCParams {
  int gamma = 0;
  double tau = 1.0;
  std::uint8_t beta = kAllDirections;
  /// Seeds claim shells 0..sigma-1. Unset means worst_case_steps(dims) + 1.
  std::optional<std::int64_t> sigma;
  /// Complement class. Unset means choose_complement.
  std::optional<Label> q;
  /// A class stops expanding once this many of its seeds have failed.
  /// 0 disables the class-level stop.
  int t_err = 1;
};

/// 1 when tau * T[l] < T[u] for some u != l. `counters` is indexed l - 1.
int inst_err(std::span<const double> counters, Label l, double tau) noexcept;

struct SeedState {
  Point2 cell;
  Label label = kNoLabel;
  std::vector<double> counters;  // T_1..T_L
  std::int64_t radius = 0;       // last shell claimed
  bool active = true;
  bool failed = false;           // stopped by inst_err
};

/// Sum of inst_err over `seeds`.
int partition_err(std::span<const SeedState> seeds, double tau) noexcept;

/// Full dilation state, kept for diagnostics and property checks.
struct MDCExpansion {
  GridSpec spec;
  std::size_t num_classes = 0;
  Label complement = kNoLabel;
  std::vector<SeedState> seeds;
  /// Owning seed index per cell, -1 for cells left to the complement.
  std::vector<std::int32_t> owner;
  std::int64_t iterations = 0;
  std::int64_t sigma = 0;
  std::vector<int> partition_errors;  // per class, index l - 1
};

/// Synchronous oriented dilation of every non-complement class. Seeds advance
/// one staircase shell per global iteration; contended cells go to the
/// smaller class id, then the smaller seed cell index.
MDCExpansion expand_mdc(const CountGrid& grid, const MDCParams& params,
                        Label complement);

/// Labels from an expansion; unclaimed cells take the complement label.
LabelGrid realize(const MDCExpansion& expansion, std::string provenance = {});

LabelGrid train_mdc(const CountGrid& grid, const MDCParams& params);

/// Fraction of the grid's training instances whose cell carries their label.
double training_accuracy(const LabelGrid& model, const CountGrid& grid);

/// Trains once per candidate complement and returns the most accurate one on
/// the training counts (smallest label on ties).
Label choose_complement(const CountGrid& grid, const MDCParams& params,
                        std::vector<double>* accuracies = nullptr);

}  // namespace mc
