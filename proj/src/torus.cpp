#include "hamming_boot/torus.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "hamming_boot/rng.hpp"

namespace hamming_boot {

TorusShape::TorusShape(int d, int64_t n, int theta, int64_t vertex_cap)
    : d_(d), n_(n), theta_(theta) {
  if (d < 1) throw DomainError("TorusShape: dimension must be >= 1");
  if (n < 2) throw DomainError("TorusShape: side length must be >= 2");
  if (theta < 1) throw DomainError("TorusShape: threshold must be >= 1");

  // n^d with overflow guard against the configured cap.
  int64_t count = 1;
  strides_.resize(d);
  for (int i = 0; i < d; ++i) {
    strides_[i] = count;
    if (count > vertex_cap / n) {
      throw DomainError("TorusShape: n^d exceeds vertex cap of " +
                        std::to_string(vertex_cap));
    }
    count *= n;
  }
  if (count > vertex_cap) {
    throw DomainError("TorusShape: n^d exceeds vertex cap of " +
                      std::to_string(vertex_cap));
  }
  vertex_count_ = count;
  lines_per_axis_ = count / n;                          // n^(d-1)
  line_count_ = int64_t{d} * lines_per_axis_;           // d n^(d-1)
  plane_count_ = d >= 2 ? int64_t{d} * (d - 1) / 2 * (count / n / n) : 0;
}

void validate_vertex(const TorusShape& shape, const Vertex& v) {
  if (static_cast<int>(v.size()) != shape.d())
    throw DomainError("vertex has wrong dimension");
  for (int32_t c : v)
    if (c < 1 || c > shape.n()) throw DomainError("vertex coordinate out of range");
}

void validate_axis(const TorusShape& shape, int axis) {
  if (axis < 1 || axis > shape.d()) throw DomainError("axis out of range");
}

int64_t flat_index(const TorusShape& shape, const Vertex& v) {
  validate_vertex(shape, v);
  int64_t flat = 0;
  for (int i = 0; i < shape.d(); ++i) flat += (v[i] - 1) * shape.stride(i + 1);
  return flat;
}

Vertex vertex_of(const TorusShape& shape, int64_t flat) {
  if (flat < 0 || flat >= shape.vertex_count())
    throw DomainError("flat vertex index out of range");
  Vertex v(shape.d());
  for (int i = 0; i < shape.d(); ++i) {
    v[i] = static_cast<int32_t>(flat % shape.n()) + 1;
    flat /= shape.n();
  }
  return v;
}

// Lines of axis a occupy [ (a-1)*n^(d-1), a*n^(d-1) ); within the block the
// base coordinates pack row-major in increasing axis order, first fastest.
int64_t line_index(const TorusShape& shape, const LineId& line) {
  validate_axis(shape, line.axis);
  if (static_cast<int>(line.base.size()) != shape.d() - 1)
    throw DomainError("line base has wrong dimension");
  int64_t local = 0, stride = 1;
  for (int i = 0; i < shape.d() - 1; ++i) {
    const int32_t c = line.base[i];
    if (c < 1 || c > shape.n()) throw DomainError("line base coordinate out of range");
    local += (c - 1) * stride;
    stride *= shape.n();
  }
  return (line.axis - 1) * shape.lines_per_axis() + local;
}

LineId line_of_index(const TorusShape& shape, int64_t flat) {
  if (flat < 0 || flat >= shape.line_count())
    throw DomainError("flat line index out of range");
  LineId line;
  line.axis = static_cast<int>(flat / shape.lines_per_axis()) + 1;
  int64_t local = flat % shape.lines_per_axis();
  line.base.resize(shape.d() - 1);
  for (int i = 0; i < shape.d() - 1; ++i) {
    line.base[i] = static_cast<int32_t>(local % shape.n()) + 1;
    local /= shape.n();
  }
  return line;
}

int64_t plane_index(const TorusShape& shape, const PlaneId& plane) {
  if (shape.d() < 2) throw DomainError("no planes in dimension < 2");
  validate_axis(shape, plane.axis_a);
  validate_axis(shape, plane.axis_b);
  if (plane.axis_a >= plane.axis_b) throw DomainError("plane axes must satisfy a < b");
  if (static_cast<int>(plane.base.size()) != shape.d() - 2)
    throw DomainError("plane base has wrong dimension");
  // Axis pairs in lexicographic order.
  int64_t pair = 0;
  for (int a = 1; a < plane.axis_a; ++a) pair += shape.d() - a;
  pair += plane.axis_b - plane.axis_a - 1;
  int64_t local = 0, stride = 1;
  for (int i = 0; i < shape.d() - 2; ++i) {
    const int32_t c = plane.base[i];
    if (c < 1 || c > shape.n()) throw DomainError("plane base coordinate out of range");
    local += (c - 1) * stride;
    stride *= shape.n();
  }
  const int64_t per_pair = shape.vertex_count() / shape.n() / shape.n();
  return pair * per_pair + local;
}

PlaneId plane_of_index(const TorusShape& shape, int64_t flat) {
  if (flat < 0 || flat >= shape.plane_count())
    throw DomainError("flat plane index out of range");
  const int64_t per_pair = shape.vertex_count() / shape.n() / shape.n();
  int64_t pair = flat / per_pair;
  PlaneId plane;
  plane.axis_a = 1;
  while (pair >= shape.d() - plane.axis_a) {
    pair -= shape.d() - plane.axis_a;
    ++plane.axis_a;
  }
  plane.axis_b = plane.axis_a + 1 + static_cast<int>(pair);
  int64_t local = flat % per_pair;
  plane.base.resize(shape.d() - 2);
  for (int i = 0; i < shape.d() - 2; ++i) {
    plane.base[i] = static_cast<int32_t>(local % shape.n()) + 1;
    local /= shape.n();
  }
  return plane;
}

LineId line_of(const TorusShape& shape, const Vertex& v, int axis) {
  validate_vertex(shape, v);
  validate_axis(shape, axis);
  LineId line;
  line.axis = axis;
  line.base.reserve(shape.d() - 1);
  for (int i = 1; i <= shape.d(); ++i)
    if (i != axis) line.base.push_back(v[i - 1]);
  return line;
}

std::vector<Vertex> line_vertices(const TorusShape& shape, const LineId& line) {
  validate_axis(shape, line.axis);
  if (static_cast<int>(line.base.size()) != shape.d() - 1)
    throw DomainError("line base has wrong dimension");
  Vertex v(shape.d());
  int k = 0;
  for (int i = 1; i <= shape.d(); ++i)
    if (i != line.axis) v[i - 1] = line.base[k++];
  std::vector<Vertex> out;
  out.reserve(shape.n());
  for (int32_t c = 1; c <= shape.n(); ++c) {
    v[line.axis - 1] = c;
    validate_vertex(shape, v);
    out.push_back(v);
  }
  return out;
}

PlaneId plane_of(const TorusShape& shape, const Vertex& v, int axis_a, int axis_b) {
  validate_vertex(shape, v);
  if (axis_a > axis_b) std::swap(axis_a, axis_b);
  validate_axis(shape, axis_a);
  validate_axis(shape, axis_b);
  if (axis_a == axis_b) throw DomainError("plane axes must be distinct");
  PlaneId plane;
  plane.axis_a = axis_a;
  plane.axis_b = axis_b;
  for (int i = 1; i <= shape.d(); ++i)
    if (i != axis_a && i != axis_b) plane.base.push_back(v[i - 1]);
  return plane;
}

std::vector<Vertex> plane_vertices(const TorusShape& shape, const PlaneId& plane) {
  Vertex v(shape.d());
  int k = 0;
  for (int i = 1; i <= shape.d(); ++i)
    if (i != plane.axis_a && i != plane.axis_b) v[i - 1] = plane.base[k++];
  std::vector<Vertex> out;
  out.reserve(shape.n() * shape.n());
  for (int32_t cb = 1; cb <= shape.n(); ++cb) {
    v[plane.axis_b - 1] = cb;
    for (int32_t ca = 1; ca <= shape.n(); ++ca) {
      v[plane.axis_a - 1] = ca;
      validate_vertex(shape, v);
      out.push_back(v);
    }
  }
  return out;
}

int hamming_distance(const Vertex& v, const Vertex& w) {
  if (v.size() != w.size()) throw DomainError("hamming_distance: dimension mismatch");
  int dist = 0;
  for (size_t i = 0; i < v.size(); ++i) dist += v[i] != w[i];
  return dist;
}

std::vector<Vertex> neighborhood(const TorusShape& shape, const Vertex& v) {
  validate_vertex(shape, v);
  std::vector<Vertex> out;
  out.reserve(shape.d() * (shape.n() - 1));
  Vertex w = v;
  for (int axis = 0; axis < shape.d(); ++axis) {
    const int32_t keep = v[axis];
    for (int32_t c = 1; c <= shape.n(); ++c) {
      if (c == keep) continue;
      w[axis] = c;
      out.push_back(w);
    }
    w[axis] = keep;
  }
  return out;
}

std::vector<Vertex> neighborhood_of_set(const TorusShape& shape,
                                        const std::vector<Vertex>& set) {
  std::vector<int64_t> members;
  members.reserve(set.size());
  for (const Vertex& v : set) members.push_back(flat_index(shape, v));
  std::sort(members.begin(), members.end());

  std::vector<int64_t> flats;
  for (const Vertex& v : set)
    for (const Vertex& w : neighborhood(shape, v)) flats.push_back(flat_index(shape, w));
  std::sort(flats.begin(), flats.end());
  flats.erase(std::unique(flats.begin(), flats.end()), flats.end());

  std::vector<Vertex> out;
  out.reserve(flats.size());
  for (int64_t f : flats)
    if (!std::binary_search(members.begin(), members.end(), f))
      out.push_back(vertex_of(shape, f));
  return out;
}

Configuration::Configuration(const TorusShape& shape)
    : shape_(shape),
      words_(static_cast<size_t>((shape.vertex_count() + 63) / 64), 0) {}

Configuration::Configuration(const TorusShape& shape, const std::vector<Vertex>& open)
    : Configuration(shape) {
  for (const Vertex& v : open) set(flat_index(shape, v));
}

std::vector<int64_t> Configuration::open_indices() const {
  std::vector<int64_t> out;
  out.reserve(static_cast<size_t>(open_count_));
  for (size_t wi = 0; wi < words_.size(); ++wi) {
    uint64_t w = words_[wi];
    while (w) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<int64_t>(wi) * 64 + b);
      w &= w - 1;
    }
  }
  return out;
}

std::vector<Vertex> Configuration::open_vertices() const {
  std::vector<Vertex> out;
  out.reserve(static_cast<size_t>(open_count_));
  for (int64_t f : open_indices()) out.push_back(vertex_of(shape_, f));
  return out;
}

int64_t Configuration::count_on_line(const LineId& line) const {
  const int64_t stride = shape_.stride(line.axis);
  Vertex first(shape_.d());
  int k = 0;
  for (int i = 1; i <= shape_.d(); ++i)
    first[i - 1] = (i == line.axis) ? 1 : line.base[k++];
  int64_t flat = flat_index(shape_, first);
  int64_t count = 0;
  for (int64_t c = 0; c < shape_.n(); ++c, flat += stride) count += test(flat);
  return count;
}

bool Configuration::subset_of(const Configuration& other) const {
  if (!(shape_ == other.shape_)) return false;
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

void Configuration::recount() {
  int64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  open_count_ = c;
}

void Configuration::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  open_count_ = 0;
}

void sample_initial_into(Configuration& config, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_initial: p outside [0,1]");
  config.clear();
  const int64_t size = config.size();
  if (p == 0.0) return;
  if (p == 1.0) {
    auto& words = config.mutable_words();
    std::fill(words.begin(), words.end(), ~uint64_t{0});
    const int tail = static_cast<int>(size & 63);
    if (tail) words.back() = (uint64_t{1} << tail) - 1;
    config.recount();
    return;
  }
  if (p <= 0.1) {
    // Geometric skips: the gap to the next open vertex is the number of
    // failures before a Bernoulli(p) success.
    const double log1mp = std::log1p(-p);
    int64_t pos = 0;
    for (;;) {
      const double u = rng.next_double();
      const double skip = std::floor(std::log1p(-u) / log1mp);
      if (skip >= static_cast<double>(size - pos)) break;
      pos += static_cast<int64_t>(skip);
      config.set(pos);
      ++pos;
      if (pos >= size) break;
    }
  } else {
    for (int64_t f = 0; f < size; ++f)
      if (rng.next_double() < p) config.set(f);
  }
}

Configuration sample_initial(const TorusShape& shape, double p, Rng& rng) {
  Configuration config(shape);
  sample_initial_into(config, p, rng);
  return config;
}

Vertex Automorphism::apply(const Vertex& v) const {
  Vertex out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[i] = coord_perms[i][static_cast<size_t>(v[axis_perm[i] - 1]) - 1];
  return out;
}

Automorphism make_automorphism(const TorusShape& shape, std::vector<int> axis_perm,
                               std::vector<std::vector<int32_t>> coord_perms) {
  const int d = shape.d();
  if (static_cast<int>(axis_perm.size()) != d ||
      static_cast<int>(coord_perms.size()) != d)
    throw DomainError("automorphism: wrong dimension");
  std::vector<bool> seen(d, false);
  for (int a : axis_perm) {
    if (a < 1 || a > d || seen[a - 1]) throw DomainError("automorphism: bad axis permutation");
    seen[a - 1] = true;
  }
  for (const auto& perm : coord_perms) {
    if (static_cast<int64_t>(perm.size()) != shape.n())
      throw DomainError("automorphism: bad coordinate permutation");
    std::vector<bool> hit(perm.size(), false);
    for (int32_t c : perm) {
      if (c < 1 || c > shape.n() || hit[c - 1])
        throw DomainError("automorphism: bad coordinate permutation");
      hit[c - 1] = true;
    }
  }
  return Automorphism{std::move(axis_perm), std::move(coord_perms)};
}

Configuration apply_automorphism(const Automorphism& g, const Configuration& config) {
  Configuration out(config.shape());
  for (const Vertex& v : config.open_vertices())
    out.set(flat_index(config.shape(), g.apply(v)));
  return out;
}

Automorphism random_automorphism(const TorusShape& shape, Rng& rng) {
  std::vector<int> axis_perm(shape.d());
  std::iota(axis_perm.begin(), axis_perm.end(), 1);
  for (int i = shape.d() - 1; i > 0; --i)
    std::swap(axis_perm[i], axis_perm[rng.next_below(i + 1)]);
  std::vector<std::vector<int32_t>> coord_perms(shape.d());
  for (auto& perm : coord_perms) {
    perm.resize(shape.n());
    std::iota(perm.begin(), perm.end(), 1);
    for (int64_t i = shape.n() - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
  }
  return make_automorphism(shape, std::move(axis_perm), std::move(coord_perms));
}

}  // namespace hamming_boot
