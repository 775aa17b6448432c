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

#include "morphclass/ensemble.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "morphclass/eval.hpp"
#include "morphclass/parallel.hpp"
#include "text_util.hpp"

namespace mc {

std::vector<PairModel> build_pair_models(const Dataset& binary, const TrainerConfig& config) {
  if (binary.dims() < 2) throw InputError("pair models need at least 2 attributes");
  if (binary.empty()) throw InputError("empty dataset");
  const auto axes = axis_pairs(binary.dims());
  TrainerConfig base = config;
  base.algo = base_algorithm(config.algo);
  const std::size_t folds = std::min(config.inner_folds, binary.size());
  FoldPlan plan;
  if (folds >= 2) plan = kfold(binary, folds, config.seed);

  std::vector<PairModel> models(axes.size());
  parallel_for(axes.size(), [&](std::size_t i) {
    PairModel& pm = models[i];
    pm.first = axes[i].first;
    pm.second = axes[i].second;
    const Dataset projected = project(binary, pm.first, pm.second);
    pm.model = fit_grid(projected, base);
    pm.oof.assign(binary.size(), kNoLabel);
    if (folds >= 2) {
      pm.oof = cross_val_predict(projected, base, plan);
    } else {
      for (std::size_t j = 0; j < binary.size(); ++j) {
        pm.oof[j] = pm.model.classify(projected[j].features);
      }
    }
    std::size_t hits = 0;
    for (std::size_t j = 0; j < binary.size(); ++j) hits += pm.oof[j] == binary[j].label;
    pm.cv_accuracy = static_cast<double>(hits) / static_cast<double>(binary.size());
  });
  std::stable_sort(models.begin(), models.end(), [](const PairModel& a, const PairModel& b) {
    return a.cv_accuracy > b.cv_accuracy;
  });
  return models;
}

bool majority_in(std::span<const bool> votes) {
  const auto in = static_cast<std::size_t>(std::count(votes.begin(), votes.end(), true));
  return 2 * in > votes.size();
}

bool binary_vote(const BinaryEnsemble& ensemble, std::span<const double> features) {
  const std::size_t n = std::min(ensemble.top_n, ensemble.pairs.size());
  std::size_t in = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const PairModel& pm = ensemble.pairs[i];
    const double xy[2] = {features[pm.first], features[pm.second]};
    in += pm.model.classify(xy) == 1;
  }
  return 2 * in > n;
}

Label multilabel_classify(const MultiLabelModel& model, std::span<const double> features) {
  if (features.size() != model.num_features) {
    throw InputError("expected " + std::to_string(model.num_features) + " attributes, got " +
                     std::to_string(features.size()));
  }
  std::vector<bool> ruled_out(model.binaries.size(), false);
  for (std::size_t b = 0; b < model.binaries.size(); ++b) {
    const BinaryEnsemble& be = model.binaries[b];
    const bool in = binary_vote(be, features);
    if (in && !be.invert) return be.target;
    if (!in) ruled_out[b] = true;
  }
  for (std::size_t b = 0; b < model.binaries.size(); ++b) {
    if (!ruled_out[b]) return model.binaries[b].target;
  }
  return model.fallback;
}

namespace {

BinaryEnsemble assemble_binary(Label target, std::vector<PairModel> pairs,
                               const Dataset& binary, std::optional<std::size_t> top_n) {
  BinaryEnsemble be;
  be.target = target;
  be.top_n = std::clamp<std::size_t>(top_n.value_or(pairs.size()), 1, pairs.size());
  std::size_t pos = 0, neg = 0, tp = 0, tn = 0;
  for (std::size_t j = 0; j < binary.size(); ++j) {
    std::size_t in = 0;
    for (std::size_t i = 0; i < be.top_n; ++i) in += pairs[i].oof[j] == 1;
    const bool vote = 2 * in > be.top_n;
    if (binary[j].label == 1) {
      ++pos;
      tp += vote;
    } else {
      ++neg;
      tn += !vote;
    }
  }
  be.tp_rate = pos > 0 ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0;
  be.tn_rate = neg > 0 ? static_cast<double>(tn) / static_cast<double>(neg) : 0.0;
  be.cv_accuracy = static_cast<double>(tp + tn) / static_cast<double>(binary.size());
  be.invert = be.tn_rate > be.tp_rate;
  be.pairs = std::move(pairs);
  return be;
}

}  // namespace

MultiLabelModel train_multilabel(const Dataset& dataset, const TrainerConfig& config) {
  if (dataset.dims() < 2) throw InputError("ensembles need at least 2 attributes");
  if (dataset.num_classes() < 2) throw InputError("ensembles need at least 2 classes");
  MultiLabelModel model;
  model.num_classes = dataset.num_classes();
  model.num_features = dataset.dims();
  model.dataset_hash = dataset.fingerprint();
  const std::size_t pairs = dataset.dims() * (dataset.dims() - 1) / 2;
  model.top_n = std::clamp<std::size_t>(config.top_n.value_or(pairs), 1, pairs);
  for (std::size_t t = 1; t <= dataset.num_classes(); ++t) {
    const auto target = static_cast<Label>(t);
    const Dataset binary = binarize(dataset, target);
    model.binaries.push_back(
        assemble_binary(target, build_pair_models(binary, config), binary, config.top_n));
  }
  std::stable_sort(model.binaries.begin(), model.binaries.end(),
                   [](const BinaryEnsemble& a, const BinaryEnsemble& b) {
                     return a.cv_accuracy > b.cv_accuracy;
                   });
  model.fallback = model.binaries.back().target;
  return model;
}

// ---- manifest --------------------------------------------------------------

std::string write_ensemble(const MultiLabelModel& model, Codec codec) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(model.dataset_hash));
  std::string out = "MCENSEMBLE 1\n";
  out += std::string("hash ") + hash + "\n";
  out += "classes " + std::to_string(model.num_classes) + "\n";
  out += "features " + std::to_string(model.num_features) + "\n";
  out += "topn " + std::to_string(model.top_n) + "\n";
  out += "order";
  for (const BinaryEnsemble& be : model.binaries) out += " " + std::to_string(be.target);
  out += "\nfallback " + std::to_string(model.fallback) + "\n";
  for (const BinaryEnsemble& be : model.binaries) {
    out += "binary " + std::to_string(be.target) + " " + (be.invert ? "1" : "0") + " " +
           format_double(be.cv_accuracy) + " " + format_double(be.tp_rate) + " " +
           format_double(be.tn_rate) + " " + std::to_string(be.top_n) + " " +
           std::to_string(be.pairs.size()) + "\n";
    for (const PairModel& pm : be.pairs) {
      const std::string body = write_model(pm.model, codec);
      const auto lines = static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n'));
      out += "pair " + std::to_string(pm.first) + " " + std::to_string(pm.second) + " " +
             format_double(pm.cv_accuracy) + " " + std::to_string(lines) + "\n";
      out += body;
    }
  }
  out += "end\n";
  return out;
}

namespace {

class ManifestReader {
 public:
  explicit ManifestReader(std::string_view text) : text_(text) {}

  std::string_view line(const char* what) {
    if (pos_ >= text_.size()) throw FormatError(std::string("missing ") + what, pos_);
    start_ = pos_;
    const auto end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    std::string_view s = text_.substr(start_, stop - start_);
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    return s;
  }

  std::vector<std::string_view> fields(const char* key, std::size_t min_values) {
    auto f = split_ws(line(key));
    if (f.empty() || f[0] != key || f.size() < min_values + 1) {
      throw FormatError(std::string("expected '") + key + "' line", start_);
    }
    f.erase(f.begin());
    return f;
  }

  std::string_view block(std::size_t lines) {
    const std::size_t begin = pos_;
    for (std::size_t i = 0; i < lines; ++i) line("model line");
    return text_.substr(begin, pos_ - begin);
  }

  template <typename T>
  T number(std::string_view token) const {
    T v{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      throw FormatError("bad number '" + std::string(token) + "'", start_);
    }
    return v;
  }

  std::uint64_t hex(std::string_view token) const {
    std::uint64_t v = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), v, 16);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
      throw FormatError("bad hash", start_);
    }
    return v;
  }

  std::size_t start() const noexcept { return start_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t start_ = 0;
};

}  // namespace

MultiLabelModel read_ensemble(std::string_view text) {
  ManifestReader in(text);
  if (trim(in.line("header")) != "MCENSEMBLE 1") {
    throw FormatError("not an MCENSEMBLE 1 manifest", 0);
  }
  MultiLabelModel model;
  model.dataset_hash = in.hex(in.fields("hash", 1)[0]);
  model.num_classes = in.number<std::size_t>(in.fields("classes", 1)[0]);
  model.num_features = in.number<std::size_t>(in.fields("features", 1)[0]);
  model.top_n = in.number<std::size_t>(in.fields("topn", 1)[0]);
  const auto order = in.fields("order", 1);
  model.fallback = in.number<Label>(in.fields("fallback", 1)[0]);
  if (model.num_classes < 2 || model.num_features < 2) {
    throw FormatError("manifest needs 2+ classes and 2+ features", in.start());
  }
  if (order.size() != model.num_classes) {
    throw FormatError("order line must list every class once", in.start());
  }
  if (model.fallback < 1 || model.fallback > model.num_classes) {
    throw FormatError("fallback class out of range", in.start());
  }
  std::vector<bool> listed(model.num_classes + 1, false);
  for (std::size_t b = 0; b < order.size(); ++b) {
    const auto f = in.fields("binary", 7);
    BinaryEnsemble be;
    be.target = in.number<Label>(f[0]);
    be.invert = f[1] == "1";
    be.cv_accuracy = in.number<double>(f[2]);
    be.tp_rate = in.number<double>(f[3]);
    be.tn_rate = in.number<double>(f[4]);
    be.top_n = in.number<std::size_t>(f[5]);
    const auto npairs = in.number<std::size_t>(f[6]);
    if (be.target < 1 || be.target > model.num_classes || be.target != in.number<Label>(order[b])) {
      throw FormatError("binary target does not match the order line", in.start());
    }
    if (listed[be.target]) throw FormatError("class listed twice in the order line", in.start());
    listed[be.target] = true;
    if (npairs == 0 || be.top_n < 1 || be.top_n > npairs) {
      throw FormatError("bad pair count", in.start());
    }
    for (std::size_t i = 0; i < npairs; ++i) {
      const auto pf = in.fields("pair", 4);
      PairModel pm;
      pm.first = in.number<std::size_t>(pf[0]);
      pm.second = in.number<std::size_t>(pf[1]);
      pm.cv_accuracy = in.number<double>(pf[2]);
      const auto lines = in.number<std::size_t>(pf[3]);
      if (pm.first >= model.num_features || pm.second >= model.num_features ||
          pm.first == pm.second) {
        throw FormatError("pair axes out of range", in.start());
      }
      const std::size_t at = in.start();
      try {
        pm.model = read_model(in.block(lines));
      } catch (const FormatError& e) {
        throw FormatError(std::string("bad embedded model: ") + e.what(), at);
      }
      if (pm.model.num_classes() != 2) {
        throw FormatError("pair model must have 2 labels", at);
      }
      be.pairs.push_back(std::move(pm));
    }
    model.binaries.push_back(std::move(be));
  }
  if (trim(in.line("end")) != "end") throw FormatError("expected 'end'", in.start());
  return model;
}

}  // namespace mc
