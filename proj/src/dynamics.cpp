#include "hamming_boot/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hamming_boot {

namespace {

// Open-neighbor count of v, straight off the definition: scan the d lines
// through v and subtract v's own state once per line.
int64_t open_neighbors(const Configuration& config, int64_t flat) {
  const TorusShape& shape = config.shape();
  int64_t total = 0;
  int64_t rest = flat;
  for (int axis = 1; axis <= shape.d(); ++axis) {
    const int64_t stride = shape.stride(axis);
    const int64_t coord = rest % shape.n();
    rest /= shape.n();
    const int64_t start = flat - coord * stride;
    for (int64_t c = 0; c < shape.n(); ++c) total += config.test(start + c * stride);
    total -= config.test(flat);
  }
  return total;
}

}  // namespace

Configuration step(const Configuration& config) {
  const TorusShape& shape = config.shape();
  Configuration next = config;
  for (int64_t f = 0; f < shape.vertex_count(); ++f) {
    if (config.test(f)) continue;
    if (open_neighbors(config, f) >= shape.theta()) next.set(f);
  }
  return next;
}

DynamicsResult evolve(const Configuration& initial) {
  const TorusShape& shape = initial.shape();
  DynamicsResult result{initial};
  result.above_threshold_initial = above_threshold(initial);
  const int64_t generation_bound = shape.vertex_count() + 1;
  int64_t generations = 0;
  for (;;) {
    Configuration next = step(result.final);
    if (next == result.final) break;
    result.final = std::move(next);
    ++result.rounds;
    if (++generations > generation_bound)
      throw std::logic_error("evolve: exceeded generation bound (engine bug)");
  }
  result.newly_opened = result.final.open_count() - initial.open_count();
  result.spanned = result.final.open_count() == shape.vertex_count();
  for (int64_t l = 0; l < shape.line_count() && !result.open_line_found; ++l) {
    const LineId line = line_of_index(shape, l);
    result.open_line_found =
        result.final.count_on_line(line) == shape.n();
  }
  for (int64_t p = 0; p < shape.plane_count() && !result.open_plane_found; ++p) {
    const PlaneId plane = plane_of_index(shape, p);
    bool all = true;
    for (const Vertex& v : plane_vertices(shape, plane))
      if (!result.final.is_open(v)) {
        all = false;
        break;
      }
    result.open_plane_found = all;
  }
  return result;
}

bool above_threshold(const Configuration& config) {
  const TorusShape& shape = config.shape();
  for (int64_t f = 0; f < shape.vertex_count(); ++f)
    if (open_neighbors(config, f) >= shape.theta()) return true;
  return false;
}

bool open_line_exists(const Configuration& config) {
  const TorusShape& shape = config.shape();
  for (int64_t l = 0; l < shape.line_count(); ++l)
    if (config.count_on_line(line_of_index(shape, l)) == shape.n()) return true;
  return false;
}

bool open_plane_exists(const Configuration& config) {
  const TorusShape& shape = config.shape();
  for (int64_t p = 0; p < shape.plane_count(); ++p) {
    bool all = true;
    for (const Vertex& v : plane_vertices(shape, plane_of_index(shape, p)))
      if (!config.is_open(v)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

GrowthEngine::GrowthEngine(const TorusShape& shape)
    : shape_(shape),
      line_weight_(static_cast<size_t>(shape.d()) * shape.d(), 0),
      words_(static_cast<size_t>((shape.vertex_count() + 63) / 64), 0),
      counts_(static_cast<size_t>(shape.line_count()), 0),
      dirty_epoch_(static_cast<size_t>(shape.line_count()), 0) {
  // Weight of coordinate j inside the base packing of axis-b lines:
  // product of n over axes before j, skipping b.
  const int d = shape.d();
  for (int b = 1; b <= d; ++b) {
    int64_t w = 1;
    for (int j = 1; j <= d; ++j) {
      if (j == b) continue;
      line_weight_[static_cast<size_t>(b - 1) * d + (j - 1)] = w;
      w *= shape.n();
    }
  }
}

void GrowthEngine::decode_line(int64_t line, int* axis, int64_t* first_flat,
                               int64_t* other_ids, int64_t* other_steps) const {
  const int d = shape_.d();
  const int64_t n = shape_.n();
  const int a = static_cast<int>(line / shape_.lines_per_axis()) + 1;
  *axis = a;
  int64_t local = line % shape_.lines_per_axis();
  int64_t coords[64];  // 0-based, coord of axis a is 0 (first vertex)
  for (int j = 1; j <= d; ++j) {
    if (j == a) {
      coords[j - 1] = 0;
    } else {
      coords[j - 1] = local % n;
      local /= n;
    }
  }
  int64_t flat = 0;
  for (int j = 1; j <= d; ++j) flat += coords[j - 1] * shape_.stride(j);
  *first_flat = flat;
  int k = 0;
  for (int b = 1; b <= d; ++b) {
    if (b == a) continue;
    int64_t id = (b - 1) * shape_.lines_per_axis();
    for (int j = 1; j <= d; ++j) {
      if (j == b) continue;
      id += coords[j - 1] * line_weight_[static_cast<size_t>(b - 1) * d + (j - 1)];
    }
    other_ids[k] = id;
    other_steps[k] = line_weight_[static_cast<size_t>(b - 1) * d + (a - 1)];
    ++k;
  }
}

void GrowthEngine::mark_dirty(int64_t line) {
  if (dirty_epoch_[static_cast<size_t>(line)] != epoch_) {
    dirty_epoch_[static_cast<size_t>(line)] = epoch_;
    next_dirty_.push_back(line);
  }
}

void GrowthEngine::open_vertex(int64_t flat) {
  int64_t rest = flat;
  const int d = shape_.d();
  const int64_t n = shape_.n();
  int64_t coords[64];
  for (int j = 0; j < d; ++j) {
    coords[j] = rest % n;
    rest /= n;
  }
  for (int b = 1; b <= d; ++b) {
    int64_t id = (b - 1) * shape_.lines_per_axis();
    for (int j = 1; j <= d; ++j) {
      if (j == b) continue;
      id += coords[j - 1] * line_weight_[static_cast<size_t>(b - 1) * d + (j - 1)];
    }
    const uint32_t c = ++counts_[static_cast<size_t>(id)];
    if (c == static_cast<uint32_t>(n)) any_full_line_ = true;
    mark_dirty(id);
  }
}

void GrowthEngine::load(const Configuration& initial) {
  words_.assign(initial.words().begin(), initial.words().end());
  std::fill(counts_.begin(), counts_.end(), 0);
  dirty_.clear();
  next_dirty_.clear();
  pending_.clear();
  any_full_line_ = false;
  ++epoch_;
  for (size_t wi = 0; wi < words_.size(); ++wi) {
    uint64_t w = words_[wi];
    while (w) {
      const int b = std::countr_zero(w);
      open_vertex(static_cast<int64_t>(wi) * 64 + b);
      w &= w - 1;
    }
  }
  std::swap(dirty_, next_dirty_);
}

bool GrowthEngine::scan_above_threshold() const {
  // Any vertex with >= theta open neighbors lies on a line with an open
  // vertex (theta >= 1), and those are exactly the current dirty lines.
  const int d = shape_.d();
  const int64_t theta = shape_.theta();
  int64_t other_ids[64], other_steps[64];
  for (int64_t line : dirty_) {
    int axis;
    int64_t flat;
    decode_line(line, &axis, &flat, other_ids, other_steps);
    const int64_t stride = shape_.stride(axis);
    const int64_t own = counts_[static_cast<size_t>(line)];
    for (int64_t c = 0; c < shape_.n(); ++c) {
      int64_t sum = own;
      for (int k = 0; k < d - 1; ++k) sum += counts_[static_cast<size_t>(other_ids[k])];
      const bool open = (words_[static_cast<size_t>(flat >> 6)] >> (flat & 63)) & 1;
      if (sum - (open ? d : 0) >= theta) return true;
      flat += stride;
      for (int k = 0; k < d - 1; ++k) other_ids[k] += other_steps[k];
    }
  }
  return false;
}

bool GrowthEngine::plane_open_exists() const {
  if (!any_full_line_ || shape_.d() < 2) return false;
  const int d = shape_.d();
  const int64_t n = shape_.n();
  // A plane (a,b,base) is open iff its n axis-a lines (one per coordinate of
  // axis b) are all full; those line ids form an arithmetic progression.
  for (int a = 1; a <= d; ++a) {
    for (int b = a + 1; b <= d; ++b) {
      const int64_t step_b = line_weight_[static_cast<size_t>(a - 1) * d + (b - 1)];
      // Odometer over the remaining d-2 coordinates.
      int64_t coords[64] = {0};
      for (;;) {
        int64_t id0 = (a - 1) * shape_.lines_per_axis();
        for (int j = 1; j <= d; ++j) {
          if (j == a || j == b) continue;
          id0 += coords[j - 1] * line_weight_[static_cast<size_t>(a - 1) * d + (j - 1)];
        }
        bool all_full = true;
        for (int64_t t = 0; t < n && all_full; ++t)
          all_full = counts_[static_cast<size_t>(id0 + t * step_b)] ==
                     static_cast<uint32_t>(n);
        if (all_full) return true;
        int j = 1;
        while (j <= d) {
          if (j == a || j == b) {
            ++j;
            continue;
          }
          if (++coords[j - 1] < n) break;
          coords[j - 1] = 0;
          ++j;
        }
        if (j > d) break;
      }
    }
  }
  return false;
}

void GrowthEngine::validate() const {
  for (int64_t l = 0; l < shape_.line_count(); ++l) {
    int axis;
    int64_t flat, other_ids[64], other_steps[64];
    decode_line(l, &axis, &flat, other_ids, other_steps);
    const int64_t stride = shape_.stride(axis);
    uint32_t c = 0;
    for (int64_t t = 0; t < shape_.n(); ++t, flat += stride)
      c += (words_[static_cast<size_t>(flat >> 6)] >> (flat & 63)) & 1;
    if (c != counts_[static_cast<size_t>(l)])
      throw std::logic_error("GrowthEngine: line counter out of sync");
  }
}

DynamicsResult GrowthEngine::run(const Configuration& initial) {
  if (!(initial.shape() == shape_))
    throw DomainError("GrowthEngine: configuration shape mismatch");
  load(initial);
  const bool above = scan_above_threshold();

  const int d = shape_.d();
  const int64_t n = shape_.n();
  const int64_t theta = shape_.theta();
  const int64_t generation_bound = shape_.vertex_count() + 1;
  int64_t rounds = 0;
  int64_t opened_total = 0;
  int64_t other_ids[64], other_steps[64];

  int64_t generations = 0;
  while (!dirty_.empty()) {
    if (++generations > generation_bound)
      throw std::logic_error("GrowthEngine: exceeded generation bound (engine bug)");
    pending_.clear();
    for (int64_t line : dirty_) {
      if (counts_[static_cast<size_t>(line)] == static_cast<uint32_t>(n)) continue;
      int axis;
      int64_t flat;
      decode_line(line, &axis, &flat, other_ids, other_steps);
      const int64_t stride = shape_.stride(axis);
      const int64_t own = counts_[static_cast<size_t>(line)];
      for (int64_t c = 0; c < n; ++c) {
        uint64_t& word = words_[static_cast<size_t>(flat >> 6)];
        const uint64_t bit = uint64_t{1} << (flat & 63);
        if (!(word & bit)) {
          int64_t sum = own;
          for (int k = 0; k < d - 1; ++k)
            sum += counts_[static_cast<size_t>(other_ids[k])];
          if (sum >= theta) {
            word |= bit;  // scheduled; counters stay at omega_j until the
                          // generation boundary
            pending_.push_back(flat);
          }
        }
        flat += stride;
        for (int k = 0; k < d - 1; ++k) other_ids[k] += other_steps[k];
      }
    }
    ++epoch_;
    next_dirty_.clear();
    if (pending_.empty()) break;
    ++rounds;
    opened_total += static_cast<int64_t>(pending_.size());
    for (int64_t flat : pending_) open_vertex(flat);
    std::swap(dirty_, next_dirty_);
    if (validate_counters_) validate();
  }

  DynamicsResult result{Configuration(shape_)};
  result.final.mutable_words() = words_;
  result.final.recount();
  result.rounds = rounds;
  result.newly_opened = opened_total;
  result.spanned = result.final.open_count() == shape_.vertex_count();
  result.open_line_found = any_full_line_;
  result.open_plane_found = plane_open_exists();
  result.above_threshold_initial = above;
  return result;
}

bool GrowthEngine::above_threshold(const Configuration& config) {
  if (!(config.shape() == shape_))
    throw DomainError("GrowthEngine: configuration shape mismatch");
  load(config);
  return scan_above_threshold();
}

DynamicsResult evolve_fast(const Configuration& initial) {
  GrowthEngine engine(initial.shape());
  return engine.run(initial);
}

}  // namespace hamming_boot
