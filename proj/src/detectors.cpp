#include "hamming_boot/detectors.hpp"

#include <algorithm>
#include <vector>

namespace hamming_boot {

namespace {

void require_d3(const Configuration& config, const char* op) {
  if (config.shape().d() != 3)
    throw UnsupportedError(std::string(op) + " is defined for d = 3 only");
}

// Scratch view of a d=3 sample: open vertices with coordinates plus one
// open-vertex counter per line of each axis.
struct View {
  const Configuration* config;
  int64_t n;
  std::vector<std::array<int32_t, 3>> opens;  // 0-based coordinates
  std::vector<std::vector<uint32_t>> counts;  // [axis][local line index]

  explicit View(const Configuration& c) : config(&c), n(c.shape().n()) {
    counts.assign(3, std::vector<uint32_t>(static_cast<size_t>(n * n), 0));
    for (int64_t flat : c.open_indices()) {
      const int32_t x = static_cast<int32_t>(flat % n);
      const int32_t y = static_cast<int32_t>((flat / n) % n);
      const int32_t z = static_cast<int32_t>(flat / (n * n));
      opens.push_back({x, y, z});
      ++counts[0][static_cast<size_t>(y + n * z)];
      ++counts[1][static_cast<size_t>(x + n * z)];
      ++counts[2][static_cast<size_t>(x + n * y)];
    }
  }

  bool open(int32_t x, int32_t y, int32_t z) const {
    return config->test(x + n * (y + n * z));
  }
  uint32_t cnt1(int32_t y, int32_t z) const { return counts[0][y + n * z]; }
  uint32_t cnt2(int32_t x, int32_t z) const { return counts[1][x + n * z]; }
  uint32_t cnt3(int32_t x, int32_t y) const { return counts[2][x + n * y]; }

  // Basic at (x,y,z): each axis line holds an open vertex besides the one
  // at the focal position (which may or may not be open itself).
  bool basic(int32_t x, int32_t y, int32_t z) const {
    const uint32_t self = open(x, y, z) ? 1 : 0;
    return cnt1(y, z) > self && cnt2(x, z) > self && cnt3(x, y) > self;
  }

  // Vertices whose three lines are all occupied; the only candidates for
  // the basic event.
  std::vector<std::array<int32_t, 3>> basic_candidates() const {
    std::vector<std::array<int32_t, 3>> out;
    std::vector<std::pair<int32_t, int32_t>> s1;  // (y,z) with cnt1 >= 1
    std::vector<std::vector<int32_t>> xs_by_z(static_cast<size_t>(n));
    {
      std::vector<std::pair<int32_t, int32_t>> seen2;
      for (const auto& o : opens) {
        if (cnt1(o[1], o[2])) s1.push_back({o[1], o[2]});
        xs_by_z[static_cast<size_t>(o[2])].push_back(o[0]);
      }
      std::sort(s1.begin(), s1.end());
      s1.erase(std::unique(s1.begin(), s1.end()), s1.end());
      for (auto& xs : xs_by_z) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      }
    }
    for (const auto& [y, z] : s1)
      for (int32_t x : xs_by_z[static_cast<size_t>(z)])
        if (cnt3(x, y) && basic(x, y, z)) out.push_back({x, y, z});
    return out;
  }
};

int dist3(const std::array<int32_t, 3>& a, const std::array<int32_t, 3>& b) {
  return (a[0] != b[0]) + (a[1] != b[1]) + (a[2] != b[2]);
}

// Enhanced-basic at v: some open w at Hamming distance 2 such that each
// axis line of v still holds an open witness outside N(w) and distinct
// from v. N(w) meets the two v-lines in the axes where w differs from v in
// exactly one point each (the projections of w), and misses the third line.
bool enhanced_basic_at(const View& view, const std::array<int32_t, 3>& v) {
  const uint32_t self = view.open(v[0], v[1], v[2]) ? 1 : 0;
  for (const auto& w : view.opens) {
    if (dist3(v, w) != 2) continue;
    bool ok = true;
    for (int axis = 0; axis < 3 && ok; ++axis) {
      uint32_t cnt;
      if (axis == 0)
        cnt = view.cnt1(v[1], v[2]);
      else if (axis == 1)
        cnt = view.cnt2(v[0], v[2]);
      else
        cnt = view.cnt3(v[0], v[1]);
      uint32_t excluded = self;
      if (w[axis] != v[axis]) {
        // projection of w onto the axis line of v
        std::array<int32_t, 3> q = v;
        q[axis] = w[axis];
        if (view.open(q[0], q[1], q[2])) ++excluded;
      }
      ok = cnt > excluded;
    }
    if (ok) return true;
  }
  return false;
}

struct LineRef {
  int axis;            // 0..2
  int32_t b1, b2;      // fixed coordinates of the two other axes, ascending
  uint32_t count;
};

// Axis indices other than `axis`, ascending.
void other_axes(int axis, int* j, int* k) {
  *j = axis == 0 ? 1 : 0;
  *k = axis == 2 ? 1 : 2;
}

std::vector<LineRef> occupied_lines(const View& view, uint32_t min_count) {
  std::vector<LineRef> out;
  std::vector<std::array<int32_t, 2>> keys;
  for (int axis = 0; axis < 3; ++axis) {
    keys.clear();
    int j, k;
    other_axes(axis, &j, &k);
    for (const auto& o : view.opens) keys.push_back({o[j], o[k]});
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const auto& key : keys) {
      const uint32_t c =
          view.counts[axis][static_cast<size_t>(key[0] + view.n * key[1])];
      if (c >= min_count) out.push_back({axis, key[0], key[1], c});
    }
  }
  return out;
}

// Classify the per-line indicators for one line with >= 2 open vertices.
struct LineEvents {
  bool line = false;
  bool line_empty = false;
  bool enhanced = false;
};

LineEvents analyze_line(const View& view, const LineRef& ref) {
  int j, k;
  other_axes(ref.axis, &j, &k);

  // Open vertices on the line, by running coordinate.
  std::vector<int32_t> on_line;
  for (const auto& o : view.opens)
    if (o[j] == ref.b1 && o[k] == ref.b2) on_line.push_back(o[ref.axis]);
  const bool pair_branch = on_line.size() == 2;

  // Open vertices in N(line): in one of the two planes through the line,
  // off the line itself. In the pair branch the witness must avoid the
  // neighborhoods of the two open line vertices, which excludes witnesses
  // sharing their running coordinate.
  std::vector<const std::array<int32_t, 3>*> witnesses;
  for (const auto& o : view.opens) {
    const bool in_j = o[j] == ref.b1, in_k = o[k] == ref.b2;
    if (in_j == in_k) continue;  // on the line or outside both planes
    if (pair_branch &&
        (o[ref.axis] == on_line[0] || o[ref.axis] == on_line[1]))
      continue;
    witnesses.push_back(&o);
  }

  LineEvents events;
  events.line = !witnesses.empty();
  events.line_empty = !events.line;
  if (!events.line) return events;

  // Enhanced: some witness v sees an additional open vertex at Hamming
  // distance 2 from v that is not a neighbor of v's projection onto the
  // line (the literal N(N(v)) \ N(line ∩ N(v)) membership).
  for (const auto* v : witnesses) {
    std::array<int32_t, 3> proj = *v;
    proj[j] = ref.b1;
    proj[k] = ref.b2;
    for (const auto& y : view.opens) {
      if (dist3(*v, y) != 2) continue;
      if (dist3(proj, y) == 1) continue;
      events.enhanced = true;
      return events;
    }
  }
  return events;
}

void fill_line_events(const View& view, ConfigCounts* counts) {
  for (const LineRef& ref : occupied_lines(view, 2)) {
    const LineEvents events = analyze_line(view, ref);
    if (events.line) {
      ++counts->line[ref.axis];
      if (events.enhanced)
        ++counts->enhanced_line[ref.axis];
      else
        ++counts->non_enhanced_line[ref.axis];
    } else {
      ++counts->line_empty[ref.axis];
    }
  }
}

}  // namespace

const char* good_class_name(GoodClass c) {
  switch (c) {
    case GoodClass::NotGood: return "not_good";
    case GoodClass::BasicWithLine: return "basic_with_line";
    case GoodClass::EnhancedBasicNoLine: return "enhanced_basic_no_line";
    case GoodClass::TwoOrMoreLines: return "two_or_more_lines";
    case GoodClass::SingleEnhancedLine: return "single_enhanced_line";
    case GoodClass::SingleLineWithAskewEmptyLine: return "single_line_askew_empty";
  }
  return "unknown";
}

bool is_basic_at(const Configuration& config, const Vertex& v) {
  require_d3(config, "is_basic_at");
  validate_vertex(config.shape(), v);
  const int64_t self = config.is_open(v) ? 1 : 0;
  for (int axis = 1; axis <= 3; ++axis)
    if (config.count_on_line(line_of(config.shape(), v, axis)) - self < 1)
      return false;
  return true;
}

int64_t count_basic(const Configuration& config) {
  require_d3(config, "count_basic");
  View view(config);
  return static_cast<int64_t>(view.basic_candidates().size());
}

int64_t count_enhanced_basic(const Configuration& config) {
  require_d3(config, "count_enhanced_basic");
  View view(config);
  int64_t count = 0;
  for (const auto& v : view.basic_candidates())
    count += enhanced_basic_at(view, v);
  return count;
}

ConfigCounts count_line_events(const Configuration& config) {
  require_d3(config, "count_line_events");
  View view(config);
  ConfigCounts counts;
  fill_line_events(view, &counts);
  return counts;
}

ConfigCounts count_configurations(const Configuration& config) {
  require_d3(config, "count_configurations");
  View view(config);
  ConfigCounts counts;
  for (const auto& v : view.basic_candidates()) {
    ++counts.basic;
    counts.enhanced_basic += enhanced_basic_at(view, v);
  }
  fill_line_events(view, &counts);
  return counts;
}

GoodClass classify_from_counts(const ConfigCounts& c) {
  const int64_t line = c.line_total();
  if (c.basic >= 1 && line == 1) return GoodClass::BasicWithLine;
  if (c.enhanced_basic >= 1 && line == 0) return GoodClass::EnhancedBasicNoLine;
  if (line >= 2) return GoodClass::TwoOrMoreLines;
  if (c.basic == 0 && c.enhanced_line_total() == 1 &&
      c.non_enhanced_line_total() == 0)
    return GoodClass::SingleEnhancedLine;
  if (c.basic == 0 && c.enhanced_line_total() == 0 &&
      c.non_enhanced_line_total() == 1) {
    for (int i = 0; i < 3; ++i) {
      if (c.non_enhanced_line[i] != 1) continue;
      int64_t askew_empty = 0;
      for (int64_t j = 0; j < 3; ++j)
        if (j != i) askew_empty += c.line_empty[j];
      if (askew_empty >= 1) return GoodClass::SingleLineWithAskewEmptyLine;
    }
  }
  return GoodClass::NotGood;
}

GoodClass classify_good(const Configuration& config) {
  require_d3(config, "classify_good");
  return classify_from_counts(count_configurations(config));
}

int single_line_askew_axis(const ConfigCounts& counts) {
  if (classify_from_counts(counts) != GoodClass::SingleLineWithAskewEmptyLine)
    return 0;
  for (int i = 0; i < 3; ++i)
    if (counts.non_enhanced_line[i] == 1) return i + 1;
  return 0;
}

bool detect_F_line(const Configuration& config, const LineId& line) {
  const TorusShape& shape = config.shape();
  if (shape.d() < 2)
    throw DomainError("detect_F_line: requires dimension >= 2");
  if (line.axis != 1)
    throw DomainError(
        "detect_F_line: line must be axis-1 parallel; symmetrize via an "
        "automorphism first");
  const int64_t n = shape.n();
  const int64_t theta = shape.theta();
  const int d = shape.d();
  const int64_t r = ((int64_t{d} - 1) * theta + d - 1) / d - 1;  // ceil - 1

  const std::vector<Vertex> points = line_vertices(shape, line);
  int64_t left_open = 0;
  bool middle_ok = false;
  int64_t right_hits = 0;
  for (const Vertex& v : points) {
    const int64_t w1 = v[0];
    if (3 * w1 < n) {
      left_open += config.is_open(v);
    } else if (3 * w1 <= 2 * n) {
      if (!middle_ok &&
          config.count_on_line(line_of(shape, v, 2)) >= theta - r)
        middle_ok = true;
    } else {
      if (config.count_on_line(line_of(shape, v, 2)) >= theta - r - 1)
        ++right_hits;
    }
  }
  return left_open >= r && middle_ok && right_hits >= theta;
}

}  // namespace hamming_boot
