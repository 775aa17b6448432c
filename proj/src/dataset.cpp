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

#include "morphclass/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "text_util.hpp"

namespace mc {

Dataset::Dataset(std::vector<std::string> attribute_names,
                 std::vector<std::string> class_names,
                 std::vector<Instance> instances, bool require_all_classes)
    : attribute_names_(std::move(attribute_names)),
      class_names_(std::move(class_names)),
      instances_(std::move(instances)) {
  if (attribute_names_.empty()) {
    throw InputError("dataset needs at least one attribute");
  }
  if (class_names_.empty()) throw InputError("dataset needs at least one class");
  std::vector<std::size_t> seen(class_names_.size(), 0);
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const Instance& inst = instances_[i];
    if (inst.features.size() != attribute_names_.size()) {
      throw InputError("instance " + std::to_string(i) + " has " +
                       std::to_string(inst.features.size()) +
                       " features, expected " +
                       std::to_string(attribute_names_.size()));
    }
    for (double v : inst.features) {
      if (!std::isfinite(v)) {
        throw InputError("non-finite value in instance " + std::to_string(i));
      }
    }
    if (inst.label < 1 || inst.label > class_names_.size()) {
      throw InputError("instance " + std::to_string(i) + " has label " +
                       std::to_string(inst.label) + " outside 1.." +
                       std::to_string(class_names_.size()));
    }
    ++seen[inst.label - 1];
  }
  if (require_all_classes) {
    for (std::size_t l = 0; l < seen.size(); ++l) {
      if (seen[l] == 0) {
        throw InputError("class '" + class_names_[l] + "' has no instances");
      }
    }
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(num_classes(), 0);
  for (const Instance& inst : instances_) ++counts[inst.label - 1];
  return counts;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  std::vector<Instance> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(instances_.at(i));
  return Dataset(attribute_names_, class_names_, std::move(picked), false);
}

std::uint64_t Dataset::fingerprint() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  for (const auto& name : attribute_names_) mix(name.data(), name.size() + 1);
  for (const auto& name : class_names_) mix(name.data(), name.size() + 1);
  for (const Instance& inst : instances_) {
    mix(inst.features.data(), inst.features.size() * sizeof(double));
    mix(&inst.label, sizeof inst.label);
  }
  return h;
}

namespace {

double parse_number(std::string_view field, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || field.empty()) {
    throw InputError("line " + std::to_string(line) + ": '" +
                     std::string(field) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw InputError("line " + std::to_string(line) + ": non-finite value");
  }
  return value;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') &&
      s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

}  // namespace

Dataset parse_csv(std::string_view text) {
  std::vector<std::string> header;
  std::vector<std::string> class_names;
  std::map<std::string, Label> class_ids;
  std::vector<Instance> instances;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (header.empty()) {
      if (fields.size() < 2) {
        throw InputError("CSV header needs at least one attribute and a class");
      }
      for (auto f : fields) header.push_back(unquote(f));
      continue;
    }
    if (fields.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    Instance inst;
    inst.features.reserve(fields.size() - 1);
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
      inst.features.push_back(parse_number(fields[j], line_no));
    }
    std::string cls = unquote(fields.back());
    auto [it, inserted] =
        class_ids.try_emplace(cls, static_cast<Label>(class_names.size() + 1));
    if (inserted) class_names.push_back(cls);
    inst.label = it->second;
    instances.push_back(std::move(inst));
  }
  if (header.empty()) throw InputError("empty CSV input");
  header.pop_back();
  return Dataset(std::move(header), std::move(class_names), std::move(instances));
}

Dataset parse_arff(std::string_view text) {
  struct Attribute {
    std::string name;
    bool nominal = false;
    std::vector<std::string> values;
  };
  std::vector<Attribute> attributes;
  std::vector<Instance> instances;
  bool in_data = false;
  std::size_t line_no = 0;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '%') continue;
    if (!in_data) {
      const std::string lower = to_lower(line.substr(0, std::min<std::size_t>(line.size(), 10)));
      if (lower.starts_with("@relation")) continue;
      if (lower.starts_with("@data")) {
        in_data = true;
        continue;
      }
      if (!lower.starts_with("@attribute")) {
        throw InputError("line " + std::to_string(line_no) +
                         ": unexpected header line");
      }
      std::string_view rest = trim(line.substr(10));
      Attribute attr;
      if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
        const auto close = rest.find(rest.front(), 1);
        if (close == std::string_view::npos) {
          throw InputError("line " + std::to_string(line_no) + ": unterminated name");
        }
        attr.name = std::string(rest.substr(1, close - 1));
        rest = trim(rest.substr(close + 1));
      } else {
        const auto end = rest.find_first_of(" \t");
        if (end == std::string_view::npos) {
          throw InputError("line " + std::to_string(line_no) + ": missing type");
        }
        attr.name = std::string(rest.substr(0, end));
        rest = trim(rest.substr(end));
      }
      if (!rest.empty() && rest.front() == '{') {
        const auto close = rest.find('}');
        if (close == std::string_view::npos) {
          throw InputError("line " + std::to_string(line_no) + ": unterminated nominal list");
        }
        attr.nominal = true;
        for (auto v : split(rest.substr(1, close - 1), ',')) {
          attr.values.push_back(unquote(v));
        }
      } else {
        const std::string type = to_lower(rest.substr(0, rest.find_first_of(" \t[")));
        if (type != "numeric" && type != "real" && type != "integer") {
          throw InputError("line " + std::to_string(line_no) +
                           ": unsupported attribute type '" + type + "'");
        }
      }
      attributes.push_back(std::move(attr));
      continue;
    }
    if (attributes.empty() || !attributes.back().nominal) {
      throw InputError("ARFF needs a trailing nominal class attribute");
    }
    const auto fields = split(line, ',');
    if (fields.size() != attributes.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(attributes.size()) + " values, got " +
                       std::to_string(fields.size()));
    }
    Instance inst;
    for (std::size_t j = 0; j + 1 < fields.size(); ++j) {
      if (trim(fields[j]) == "?") {
        throw InputError("line " + std::to_string(line_no) + ": missing value");
      }
      inst.features.push_back(parse_number(fields[j], line_no));
    }
    const std::string cls = unquote(fields.back());
    const auto& values = attributes.back().values;
    const auto it = std::find(values.begin(), values.end(), cls);
    if (it == values.end()) {
      throw InputError("line " + std::to_string(line_no) + ": unknown class '" +
                       cls + "'");
    }
    inst.label = static_cast<Label>(it - values.begin() + 1);
    instances.push_back(std::move(inst));
  }
  if (attributes.size() < 2 || !attributes.back().nominal) {
    throw InputError("ARFF needs numeric attributes and a trailing nominal class");
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j + 1 < attributes.size(); ++j) {
    if (attributes[j].nominal) {
      throw InputError("nominal feature '" + attributes[j].name +
                       "' is not supported");
    }
    names.push_back(attributes[j].name);
  }
  return Dataset(std::move(names), attributes.back().values, std::move(instances));
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (to_lower(path).ends_with(".arff")) return parse_arff(text);
  return parse_csv(text);
}

void write_csv(std::ostream& out, const Dataset& dataset) {
  for (const auto& name : dataset.attribute_names()) out << name << ',';
  out << "class\n";
  for (const Instance& inst : dataset.instances()) {
    for (double v : inst.features) out << format_double(v) << ',';
    out << dataset.class_names()[inst.label - 1] << '\n';
  }
}

Dataset drop_class(const Dataset& dataset, Label label) {
  std::vector<std::string> classes;
  std::vector<Label> remap(dataset.num_classes() + 1, kNoLabel);
  for (std::size_t l = 1; l <= dataset.num_classes(); ++l) {
    if (l == label) continue;
    classes.push_back(dataset.class_names()[l - 1]);
    remap[l] = static_cast<Label>(classes.size());
  }
  std::vector<Instance> kept;
  for (const Instance& inst : dataset.instances()) {
    if (inst.label == label) continue;
    kept.push_back({inst.features, remap[inst.label]});
  }
  return Dataset(dataset.attribute_names(), std::move(classes), std::move(kept));
}

Dataset select_attributes(const Dataset& dataset,
                          std::span<const std::size_t> attributes) {
  std::vector<std::string> names;
  for (std::size_t a : attributes) {
    if (a >= dataset.dims()) {
      throw InputError("attribute index " + std::to_string(a) + " out of range");
    }
    names.push_back(dataset.attribute_names()[a]);
  }
  std::vector<Instance> out;
  out.reserve(dataset.size());
  for (const Instance& inst : dataset.instances()) {
    Instance picked{{}, inst.label};
    picked.features.reserve(attributes.size());
    for (std::size_t a : attributes) picked.features.push_back(inst.features[a]);
    out.push_back(std::move(picked));
  }
  return Dataset(std::move(names), dataset.class_names(), std::move(out), false);
}

Dataset binarize(const Dataset& dataset, Label target) {
  if (target < 1 || target > dataset.num_classes()) {
    throw InputError("target class out of range");
  }
  std::vector<Instance> out;
  out.reserve(dataset.size());
  for (const Instance& inst : dataset.instances()) {
    out.push_back({inst.features, static_cast<Label>(inst.label == target ? 1 : 2)});
  }
  const std::string& name = dataset.class_names()[target - 1];
  return Dataset(dataset.attribute_names(), {name, "not-" + name}, std::move(out),
                 false);
}

}  // namespace mc
