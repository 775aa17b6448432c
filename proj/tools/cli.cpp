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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "morphclass/compress.hpp"
#include "morphclass/container.hpp"
#include "morphclass/ensemble.hpp"
#include "morphclass/eval.hpp"
#include "morphclass/mdc.hpp"
#include "morphclass/mknn.hpp"
#include "morphclass/render.hpp"
#include "morphclass/tune.hpp"

namespace mc::cli {
namespace {

std::string get(const ConfigMap& c, const std::string& key, const std::string& fallback = {}) {
  const auto it = c.find(key);
  return it == c.end() ? fallback : it->second;
}

bool has(const ConfigMap& c, const std::string& key) { return c.count(key) != 0; }

std::string require(const ConfigMap& c, const std::string& key) {
  const auto it = c.find(key);
  if (it == c.end() || it->second.empty()) throw InputError("missing --" + key);
  return it->second;
}

template <typename T>
T number(const ConfigMap& c, const std::string& key) {
  const std::string text = require(c, key);
  T v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InputError("--" + key + ": bad value '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

TrainerConfig trainer_from_config(const ConfigMap& c) {
  TrainerConfig t;
  t.algo = parse_algorithm(get(c, "algo", "mknn"));
  t.grid.mode = parse_mode(get(c, "mode", "multiset"));
  if (has(c, "padding")) {
    t.grid.padding = number<int>(c, "padding");
    if (t.grid.padding < 0) throw InputError("--padding must be non-negative");
  }
  if (has(c, "scale")) t.grid.scale = number<double>(c, "scale");
  if (has(c, "precision")) {
    for (const std::string& v : split_list(get(c, "precision"))) {
      ConfigMap one{{"precision", v}};
      const double p = number<double>(one, "precision");
      if (!(p > 0.0)) throw InputError("--precision entries must be positive");
      t.grid.precision.push_back(p);
    }
  }
  if (has(c, "k")) t.mknn.k = number<int>(c, "k");
  if (has(c, "gamma")) {
    t.mknn.gamma = number<int>(c, "gamma");
    t.mdc.gamma = t.mknn.gamma;
  }
  if (has(c, "sigma")) {
    t.mknn.sigma = number<std::int64_t>(c, "sigma");
    t.mdc.sigma = t.mknn.sigma;
  }
  if (has(c, "tau")) t.mdc.tau = number<double>(c, "tau");
  if (has(c, "beta")) t.mdc.beta = parse_beta(get(c, "beta"));
  if (has(c, "terr")) t.mdc.t_err = number<int>(c, "terr");
  if (has(c, "q") && get(c, "q") != "auto") t.mdc.q = number<Label>(c, "q");
  if (has(c, "topn")) t.top_n = number<std::size_t>(c, "topn");
  if (has(c, "seed")) t.seed = number<std::uint64_t>(c, "seed");
  return t;
}

Dataset load_input(const ConfigMap& c) {
  Dataset ds = apply_preset(load_dataset(require(c, "data")), get(c, "preset", "none"));
  if (has(c, "attrs")) {
    std::vector<std::size_t> axes;
    for (const std::string& name : split_list(get(c, "attrs"))) {
      const auto& names = ds.attribute_names();
      const auto it = std::find(names.begin(), names.end(), name);
      if (it == names.end()) throw InputError("dataset has no attribute '" + name + "'");
      axes.push_back(static_cast<std::size_t>(it - names.begin()));
    }
    ds = select_attributes(ds, axes);
  }
  return ds;
}

namespace {

// Options shared by the subcommands, collected as config keys so that flags
// override a --config file.
class Options {
 public:
  void flag(CLI::App* app, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        "--" + key, [this, key](const std::string& v) { flags_[key] = v; }, help);
  }

  ConfigMap merged() const {
    ConfigMap m;
    if (const auto it = flags_.find("config"); it != flags_.end()) m = load_config(it->second);
    for (const auto& [k, v] : flags_) m[k] = v;
    return m;
  }

 private:
  ConfigMap flags_;
};

void add_data_flags(Options& o, CLI::App* app) {
  o.flag(app, "data", "dataset file (.csv or .arff)");
  o.flag(app, "preset", "iris2d, iris, diabetes2d, haberman or none");
  o.flag(app, "attrs", "comma-separated attribute names to keep");
  o.flag(app, "config", "key = value file; flags override it");
}

void add_trainer_flags(Options& o, CLI::App* app) {
  o.flag(app, "algo", "mknn, mdc, ensemble-mknn or ensemble-mdc");
  o.flag(app, "mode", "multiset (Rep) or dedup");
  o.flag(app, "k", "MkNN: instances to reach");
  o.flag(app, "gamma", "weight of a cell's own instances");
  o.flag(app, "sigma", "largest shell index");
  o.flag(app, "tau", "MDC: error scaling factor");
  o.flag(app, "beta", "MDC: growth directions, subset of LRTB");
  o.flag(app, "terr", "MDC: failed seeds that stop a class (0 = never)");
  o.flag(app, "q", "MDC: complement class or auto");
  o.flag(app, "topn", "ensemble: voting pair models");
  o.flag(app, "precision", "cells per unit, one value or one per attribute");
  o.flag(app, "scale", "multiplier of the default 64-cell precision");
  o.flag(app, "padding", "empty cells around the data");
  o.flag(app, "seed", "seed for folds and search");
}

void print_binary_summary(const MultiLabelModel& m, std::ostream& out) {
  for (const BinaryEnsemble& be : m.binaries) {
    out << "binary class " << be.target << ": cv accuracy " << be.cv_accuracy << ", tp "
        << be.tp_rate << ", tn " << be.tn_rate << ", top_n " << be.top_n
        << (be.invert ? ", inverted" : "") << "\n";
  }
  out << "fallback class " << m.fallback << "\n";
}

int cmd_train(const ConfigMap& c, std::ostream& out) {
  const Dataset ds = load_input(c);
  const TrainerConfig t = trainer_from_config(c);
  const Codec codec = parse_codec(get(c, "codec", "rle"));
  const std::string path = require(c, "out");
  if (is_ensemble(t.algo)) {
    const MultiLabelModel m = train_multilabel(ds, t);
    print_binary_summary(m, out);
    out << "pair models: " << m.binaries.size() * m.binaries.front().pairs.size() << "\n";
    write_text_file(path, write_ensemble(m, codec));
  } else {
    const GridSpec spec = make_spec(ds, t.grid);
    const CountGrid grid = discretize(ds, spec, t.grid.mode);
    LabelGrid model;
    out << "grid " << spec.dims[0] << "x" << spec.dims[1] << ", instances " << grid.total()
        << ", clamped " << grid.clamp_events() << "\n";
    if (t.algo == Algorithm::kMkNN) {
      MkNNStats stats;
      model = train_mknn(grid, t.mknn, &stats);
      out << "convergence_reached " << (stats.converged() ? "yes" : "no")
          << " (unconverged cells " << stats.unconverged_cells << ", sigma " << stats.sigma
          << ", max shell " << stats.max_shell << ", fallback cells " << stats.fallback_cells
          << ")\n";
    } else {
      std::vector<double> accuracies;
      const Label q = t.mdc.q ? *t.mdc.q : choose_complement(grid, t.mdc, &accuracies);
      for (std::size_t i = 0; i < accuracies.size(); ++i) {
        out << "complement " << i + 1 << ": training accuracy " << accuracies[i] << "\n";
      }
      const MDCExpansion ex = expand_mdc(grid, t.mdc, q);
      model = realize(ex);
      out << "complement class " << q << ", seeds " << ex.seeds.size() << ", iterations "
          << ex.iterations << ", sigma " << ex.sigma << "\n";
    }
    out << "coverage " << (model.fully_covered() ? "100%" : "incomplete") << "\n";
    out << "training accuracy " << training_accuracy(model, grid) << "\n";
    save_model(path, model, codec);
  }
  out << "wrote " << path << "\n";
  return kExitOk;
}

// Either kind of model file.
struct LoadedModel {
  FittedModel model;
  bool ensemble = false;
};

LoadedModel load_any_model(const std::string& path) {
  const std::string text = read_text_file(path);
  if (text.rfind("MCENSEMBLE", 0) == 0) return {FittedModel(read_ensemble(text)), true};
  return {FittedModel(read_model(text)), false};
}

int cmd_predict(const ConfigMap& c, std::ostream& out) {
  const LoadedModel loaded = load_any_model(require(c, "model"));
  const Dataset ds = load_input(c);
  const std::size_t p = loaded.model.num_features();
  if (ds.dims() != p) {
    throw InputError("model expects p=" + std::to_string(p) + " attributes, data has " +
                     std::to_string(ds.dims()));
  }
  std::string buf;
  for (const Instance& inst : ds.instances()) {
    buf += std::to_string(loaded.model.classify(inst.features));
    buf += '\n';
  }
  out << buf;
  return kExitOk;
}

int cmd_crossval(const ConfigMap& c, std::ostream& out) {
  const Dataset ds = load_input(c);
  const TrainerConfig t = trainer_from_config(c);
  const std::size_t folds = has(c, "folds") ? number<std::size_t>(c, "folds") : 10;
  const std::uint64_t seed =
      has(c, "seed") ? number<std::uint64_t>(c, "seed") : kDefaultFoldSeed;
  const std::string name = get(c, "name", get(c, "preset", "data"));
  const ExperimentResult r = run_experiment(ds, t, kfold(ds, folds, seed), name);
  out << r.row() << "\n";
  if (has(c, "csv")) {
    const std::string path = get(c, "csv");
    const bool fresh = !std::filesystem::exists(path);
    std::ofstream csv(path, std::ios::app);
    if (!csv) throw Error("cannot write '" + path + "'");
    if (fresh) csv << ExperimentResult::csv_header() << "\n";
    csv << r.csv() << "\n";
  }
  return kExitOk;
}

std::string describe(const ParamSpace& space, const Genome& genes) {
  const auto values = decode(space, genes);
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) s += ' ';
    std::ostringstream v;
    v << space.params[i].name << '=' << values[i];
    s += v.str();
  }
  return s;
}

int cmd_tune(const ConfigMap& c, std::ostream& out) {
  const Dataset ds = load_input(c);
  const TrainerConfig base = trainer_from_config(c);
  const std::size_t folds = has(c, "folds") ? number<std::size_t>(c, "folds") : 10;
  const std::uint64_t seed = has(c, "seed") ? number<std::uint64_t>(c, "seed") : 1;
  TuneOptions options;
  options.seed = seed;
  if (has(c, "generations")) options.generations = number<std::size_t>(c, "generations");
  if (has(c, "seconds")) options.seconds = number<double>(c, "seconds");
  const ParamSpace space = trainer_space(ds, base);

  std::unique_ptr<std::ofstream> log_file;
  std::ostream* log = &out;
  if (has(c, "log")) {
    log_file = std::make_unique<std::ofstream>(get(c, "log"));
    if (!*log_file) throw Error("cannot write '" + get(c, "log") + "'");
    log = log_file.get();
  }
  const std::size_t every = has(c, "log-every") ? number<std::size_t>(c, "log-every") : 50;
  options.on_generation = [&](std::size_t gen, const std::vector<Individual>&,
                              const Individual& best) {
    if (gen % std::max<std::size_t>(every, 1) == 0 || gen == options.generations) {
      *log << "generation " << gen << " best " << best.fitness << " " << describe(space, best.genes)
           << "\n";
    }
  };
  TrainerConfig best;
  const TuneResult r = tune_trainer(ds, base, options, folds, kDefaultFoldSeed, &best);
  out << "best cv accuracy " << r.best.fitness << " after " << r.generations << " generations ("
      << r.evaluations << " evaluations)\n";
  ConfigMap entries = config_entries(best);
  if (has(c, "preset")) entries["preset"] = get(c, "preset");
  if (has(c, "attrs")) entries["attrs"] = get(c, "attrs");
  const std::string text = "# best cv accuracy " + std::to_string(r.best.fitness) + "\n" +
                           format_config(entries);
  if (has(c, "out")) {
    write_text_file(get(c, "out"), text);
    out << "wrote " << get(c, "out") << "\n";
  } else {
    out << text;
  }
  return kExitOk;
}

int cmd_compress(const ConfigMap& c, std::ostream& out) {
  const std::string in_path = require(c, "model");
  const std::string text = read_text_file(in_path);
  const Codec codec = parse_codec(require(c, "codec"));
  std::string encoded;
  std::string raw;
  if (text.rfind("MCENSEMBLE", 0) == 0) {
    const MultiLabelModel m = read_ensemble(text);
    encoded = write_ensemble(m, codec);
    raw = write_ensemble(m, Codec::kRaw);
  } else {
    const LabelGrid m = read_model(text);
    encoded = write_model(m, codec);
    raw = write_model(m, Codec::kRaw);
    if (codec == Codec::kRect) {
      const RectSet rects = to_rects(m);
      out << "rectangles " << rects.size() << ", rect bits (k=32) " << rect_bits(rects, 32)
          << "\n";
    }
    if (codec == Codec::kTree) {
      const OrthantTree tree = build_tree(m);
      out << "tree tokens " << tree_node_count(tree.root) << " for "
          << m.labels().size() << " cells\n";
    }
  }
  out << "input " << text.size() << " bytes, raw " << raw.size() << " bytes, "
      << codec_name(codec) << " " << encoded.size() << " bytes\n";
  if (has(c, "out")) {
    write_text_file(get(c, "out"), encoded);
    out << "wrote " << get(c, "out") << "\n";
  }
  return kExitOk;
}

int cmd_render(const ConfigMap& c, std::ostream& out) {
  const LabelGrid model = load_model(require(c, "model"));
  RenderOptions options;
  if (has(c, "cell-pixels")) options.cell_pixels = number<int>(c, "cell-pixels");
  Dataset overlay;
  if (has(c, "data")) {
    overlay = load_input(c);
    options.overlay = &overlay;
  }
  const std::string path = require(c, "out");
  const std::string pgm = render_pgm(model, options);
  write_text_file(path, pgm);
  out << "wrote " << path << " (" << model.width() * static_cast<std::size_t>(options.cell_pixels)
      << "x" << model.height() * static_cast<std::size_t>(options.cell_pixels) << ")\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morphological grid classifiers", "mcls"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  Options o;
  CLI::App* train = app.add_subcommand("train", "Train a model and write its container");
  add_data_flags(o, train);
  add_trainer_flags(o, train);
  o.flag(train, "out", "output model file");
  o.flag(train, "codec", "raw, rle, tree or rect (default rle)");

  CLI::App* predict = app.add_subcommand("predict", "Print one predicted label per instance");
  add_data_flags(o, predict);
  o.flag(predict, "model", "model file");

  CLI::App* crossval = app.add_subcommand("crossval", "Cross-validate and print a table row");
  add_data_flags(o, crossval);
  add_trainer_flags(o, crossval);
  o.flag(crossval, "folds", "number of folds (default 10)");
  o.flag(crossval, "name", "dataset name in the row");
  o.flag(crossval, "csv", "append the result to this CSV file");

  CLI::App* tune = app.add_subcommand("tune", "Evolutionary parameter search");
  add_data_flags(o, tune);
  add_trainer_flags(o, tune);
  o.flag(tune, "folds", "folds of the objective (default 10)");
  o.flag(tune, "generations", "generation budget (default 500)");
  o.flag(tune, "seconds", "wall-clock budget");
  o.flag(tune, "out", "write the best parameters as a config file");
  o.flag(tune, "log", "write the search log to this file");
  o.flag(tune, "log-every", "log every n generations (default 50)");

  CLI::App* compress = app.add_subcommand("compress", "Transcode a model file");
  o.flag(compress, "model", "model or ensemble file");
  o.flag(compress, "codec", "raw, rle, tree or rect");
  o.flag(compress, "out", "output file");
  o.flag(compress, "config", "key = value file; flags override it");

  CLI::App* render = app.add_subcommand("render", "Write a model as a PGM image");
  o.flag(render, "model", "model file");
  o.flag(render, "out", "output .pgm");
  o.flag(render, "data", "overlay these instances");
  o.flag(render, "preset", "preset for the overlay data");
  o.flag(render, "attrs", "attributes of the overlay data");
  o.flag(render, "cell-pixels", "pixels per cell (default 1)");
  o.flag(render, "config", "key = value file; flags override it");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'mcls --help' for usage\n";
    return kExitUsage;
  }

  try {
    const ConfigMap c = o.merged();
    if (train->parsed()) return cmd_train(c, out);
    if (predict->parsed()) return cmd_predict(c, out);
    if (crossval->parsed()) return cmd_crossval(c, out);
    if (tune->parsed()) return cmd_tune(c, out);
    if (compress->parsed()) return cmd_compress(c, out);
    if (render->parsed()) return cmd_render(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace mc::cli
