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

#include <iosfwd>
#include <string>
#include <vector>

#include "morphclass/config.hpp"
#include "morphclass/dataset.hpp"
#include "morphclass/trainer.hpp"

namespace mc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the `mcls` command line. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Trainer settings from merged config keys (algo, mode, k, gamma, tau,
/// beta, sigma, terr, q, topn, precision, scale, padding, seed).
TrainerConfig trainer_from_config(const ConfigMap& config);

/// Loads `data`, applies `preset` and the comma-separated `attrs` selection.
Dataset load_input(const ConfigMap& config);

}  // namespace mc::cli
