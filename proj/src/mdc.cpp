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

#include "morphclass/mdc.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "text_util.hpp"

namespace mc {

std::uint8_t parse_beta(const std::string& text) {
  std::uint8_t mask = 0;
  for (char c : text) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'L': mask |= kLeft; break;
      case 'R': mask |= kRight; break;
      case 'T': mask |= kTop; break;
      case 'B': mask |= kBottom; break;
      default:
        throw InputError(std::string("unknown orientation '") + c +
                         "' (expected a subset of LRTB)");
    }
  }
  if (mask == 0) throw InputError("orientation mask is empty");
  return mask;
}

std::string format_beta(std::uint8_t beta) {
  std::string out;
  if (beta & kLeft) out += 'L';
  if (beta & kRight) out += 'R';
  if (beta & kTop) out += 'T';
  if (beta & kBottom) out += 'B';
  return out;
}

bool orientation_allows(Offset e, std::uint8_t beta) noexcept {
  if (e.dx == 0 && e.dy == 0) return true;
  const std::int64_t ax = e.dx < 0 ? -e.dx : e.dx;
  const std::int64_t ay = e.dy < 0 ? -e.dy : e.dy;
  return ((beta & kLeft) && e.dx <= -ay) || ((beta & kRight) && e.dx >= ay) ||
         ((beta & kTop) && e.dy >= ax) || ((beta & kBottom) && e.dy <= -ax);
}

int inst_err(std::span<const double> counters, Label l, double tau) noexcept {
  const double own = tau * counters[l - 1];
  for (std::size_t u = 0; u < counters.size(); ++u) {
    if (u + 1 != l && own < counters[u]) return 1;
  }
  return 0;
}

int partition_err(std::span<const SeedState> seeds, double tau) noexcept {
  int total = 0;
  for (const SeedState& s : seeds) total += inst_err(s.counters, s.label, tau);
  return total;
}

namespace {

void check_params(const CountGrid& grid, const MDCParams& params) {
  if (grid.spec().rank() != 2) throw InputError("MDC needs a 2D grid");
  if (grid.total() == 0) throw InputError("empty training grid");
  if (grid.num_classes() < 2) throw InputError("complement undefined");
  if (params.gamma < 0) throw InputError("gamma must be non-negative");
  if (!(params.tau > 0.0)) throw InputError("tau must be positive");
  if ((params.beta & kAllDirections) == 0 || (params.beta & ~kAllDirections) != 0) {
    throw InputError("orientation mask must use 1..15");
  }
  if (params.sigma && *params.sigma < 1) throw InputError("sigma must be at least 1");
  if (params.t_err < 0) throw InputError("t_err must be non-negative");
}

// Flattened ring offsets for shells 0..last.
struct RingTable {
  std::vector<Offset> offsets;
  std::vector<std::size_t> start;  // start[i]..start[i+1]

  explicit RingTable(std::int64_t last) {
    start.reserve(static_cast<std::size_t>(last) + 2);
    for (std::int64_t i = 0; i <= last; ++i) {
      start.push_back(offsets.size());
      const auto ring = ring_offsets(i);
      offsets.insert(offsets.end(), ring.begin(), ring.end());
    }
    start.push_back(offsets.size());
  }
};

std::string describe(const MDCParams& params, std::int64_t sigma, Label q) {
  return "mdc gamma=" + std::to_string(params.gamma) +
         " tau=" + format_double(params.tau) +
         " beta=" + format_beta(params.beta) + " sigma=" + std::to_string(sigma) +
         " q=" + std::to_string(q) + " terr=" + std::to_string(params.t_err);
}

}  // namespace

MDCExpansion expand_mdc(const CountGrid& grid, const MDCParams& params,
                        Label complement) {
  check_params(grid, params);
  const std::size_t L = grid.num_classes();
  if (complement < 1 || complement > L) {
    throw InputError("complement class " + std::to_string(complement) +
                     " out of range 1.." + std::to_string(L));
  }
  const std::int64_t w = grid.spec().dims[0];
  const std::int64_t h = grid.spec().dims[1];
  const std::int64_t worst = worst_case_steps(w, h);
  const std::int64_t sigma = params.sigma.value_or(worst + 1);

  MDCExpansion ex;
  ex.spec = grid.spec();
  ex.num_classes = L;
  ex.complement = complement;
  ex.sigma = sigma;
  ex.owner.assign(grid.cell_count(), -1);
  ex.partition_errors.assign(L, 0);

  std::vector<std::uint32_t> totals(grid.cell_count());
  for (std::size_t c = 0; c < totals.size(); ++c) totals[c] = grid.cell_total(c);

  // Seeds: training cells of non-complement classes. A mixed cell belongs to
  // the non-complement class with the most instances there.
  for (std::size_t c = 0; c < totals.size(); ++c) {
    if (totals[c] == 0) continue;
    Label best = kNoLabel;
    std::uint32_t best_count = 0;
    for (std::size_t l = 1; l <= L; ++l) {
      const auto label = static_cast<Label>(l);
      if (label == complement) continue;
      const std::uint32_t n = grid.count(c, label);
      if (n > best_count) {
        best_count = n;
        best = label;
      }
    }
    if (best == kNoLabel) continue;
    SeedState seed;
    seed.cell = Point2{static_cast<std::int64_t>(c) % w, static_cast<std::int64_t>(c) / w};
    seed.label = best;
    seed.counters.assign(L, 0.0);
    seed.counters[best - 1] = static_cast<double>(params.gamma) * best_count;
    ex.seeds.push_back(std::move(seed));
  }
  std::stable_sort(ex.seeds.begin(), ex.seeds.end(),
                   [](const SeedState& a, const SeedState& b) { return a.label < b.label; });
  std::size_t unclaimed = ex.owner.size();
  for (std::size_t s = 0; s < ex.seeds.size(); ++s) {
    const Point2 p = ex.seeds[s].cell;
    ex.owner[static_cast<std::size_t>(p.y * w + p.x)] = static_cast<std::int32_t>(s);
    --unclaimed;
  }

  std::vector<std::int64_t> reach(ex.seeds.size());
  for (std::size_t s = 0; s < ex.seeds.size(); ++s) {
    const Point2 p = ex.seeds[s].cell;
    reach[s] = dt(Offset{std::max(p.x, w - 1 - p.x), std::max(p.y, h - 1 - p.y)});
  }
  std::vector<int> failed_in_class(L, 0);
  std::vector<bool> class_stopped(L, false);

  const std::int64_t last = std::min(sigma - 1, worst);
  const RingTable rings(last);
  const auto* counts = grid.raw().data();
  std::size_t active = ex.seeds.size();
  for (std::int64_t i = 0; i <= last && active > 0 && unclaimed > 0; ++i) {
    ex.iterations = i + 1;
    const Offset* first = rings.offsets.data() + rings.start[i];
    const Offset* end = rings.offsets.data() + rings.start[i + 1];
    for (std::size_t s = 0; s < ex.seeds.size(); ++s) {
      SeedState& seed = ex.seeds[s];
      if (!seed.active) continue;
      if (i > reach[s]) {
        seed.active = false;
        --active;
        continue;
      }
      for (const Offset* o = first; o != end; ++o) {
        const std::int64_t x = seed.cell.x + o->dx;
        const std::int64_t y = seed.cell.y + o->dy;
        if (x < 0 || y < 0 || x >= w || y >= h) continue;
        const auto cell = static_cast<std::size_t>(y * w + x);
        if (totals[cell] == 0) continue;
        for (std::size_t l = 0; l < L; ++l) seed.counters[l] += counts[cell * L + l];
      }
      if (inst_err(seed.counters, seed.label, params.tau) != 0) {
        seed.failed = true;
        seed.active = false;
        --active;
        ++failed_in_class[seed.label - 1];
        continue;
      }
      seed.radius = i;
      for (const Offset* o = first; o != end; ++o) {
        const std::int64_t x = seed.cell.x + o->dx;
        const std::int64_t y = seed.cell.y + o->dy;
        if (x < 0 || y < 0 || x >= w || y >= h) continue;
        const auto cell = static_cast<std::size_t>(y * w + x);
        if (ex.owner[cell] >= 0 || !orientation_allows(*o, params.beta)) continue;
        ex.owner[cell] = static_cast<std::int32_t>(s);
        --unclaimed;
      }
    }
    if (params.t_err > 0) {
      for (std::size_t l = 0; l < L; ++l) {
        if (class_stopped[l] || failed_in_class[l] < params.t_err) continue;
        class_stopped[l] = true;
        for (SeedState& seed : ex.seeds) {
          if (seed.label == l + 1 && seed.active) {
            seed.active = false;
            --active;
          }
        }
      }
    }
  }
  for (std::size_t l = 0; l < L; ++l) ex.partition_errors[l] = failed_in_class[l];
  return ex;
}

LabelGrid realize(const MDCExpansion& expansion, std::string provenance) {
  std::vector<Label> labels(expansion.owner.size(), expansion.complement);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const std::int32_t s = expansion.owner[c];
    if (s >= 0) labels[c] = expansion.seeds[static_cast<std::size_t>(s)].label;
  }
  return LabelGrid(expansion.spec, expansion.num_classes, std::move(labels),
                   std::move(provenance));
}

double training_accuracy(const LabelGrid& model, const CountGrid& grid) {
  if (grid.total() == 0) return 0.0;
  std::uint64_t hits = 0;
  for (std::size_t c = 0; c < grid.cell_count(); ++c) hits += grid.count(c, model.at(c));
  return static_cast<double>(hits) / static_cast<double>(grid.total());
}

Label choose_complement(const CountGrid& grid, const MDCParams& params,
                        std::vector<double>* accuracies) {
  check_params(grid, params);
  Label best = 1;
  double best_acc = -1.0;
  if (accuracies != nullptr) accuracies->clear();
  for (std::size_t q = 1; q <= grid.num_classes(); ++q) {
    const auto label = static_cast<Label>(q);
    const double acc = training_accuracy(realize(expand_mdc(grid, params, label)), grid);
    if (accuracies != nullptr) accuracies->push_back(acc);
    if (acc > best_acc) {
      best_acc = acc;
      best = label;
    }
  }
  return best;
}

LabelGrid train_mdc(const CountGrid& grid, const MDCParams& params) {
  check_params(grid, params);
  const Label q = params.q ? *params.q : choose_complement(grid, params);
  MDCExpansion ex = expand_mdc(grid, params, q);
  std::string provenance = describe(params, ex.sigma, q);
  return realize(ex, std::move(provenance));
}

}  // namespace mc
