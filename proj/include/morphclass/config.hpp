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

#include <map>
#include <string>

namespace mc {

/// `key = value` lines; `#` starts a comment; blank lines are skipped.
/// Keys are case-sensitive. A repeated key keeps the last value.
using ConfigMap = std::map<std::string, std::string>;

/// Throws InputError naming the line number of a line without '='.
ConfigMap parse_config(const std::string& text);

/// Throws InputError when the file cannot be read.
ConfigMap load_config(const std::string& path);

/// Sorted `key = value` lines.
std::string format_config(const ConfigMap& config);

}  // namespace mc
