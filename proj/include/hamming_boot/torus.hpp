#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hamming_boot/errors.hpp"
#include "hamming_boot/rng.hpp"

namespace hamming_boot {

class Rng;

/// Geometry of the Hamming torus [n]^d with growth threshold theta.
///
/// Vertices are d-tuples with entries in 1..n; two vertices are adjacent
/// iff they differ in exactly one coordinate, so every axis line is a
/// clique of size n and a vertex has d*(n-1) neighbors.
///
/// Coordinates are 1-based externally. Internally vertices map to flat
/// indices in 0..n^d-1, row-major with axis 1 varying fastest.
class TorusShape {
 public:
  static constexpr int64_t kDefaultVertexCap = int64_t{1} << 31;

  TorusShape(int d, int64_t n, int theta, int64_t vertex_cap = kDefaultVertexCap);

  int d() const { return d_; }
  int64_t n() const { return n_; }
  int theta() const { return theta_; }

  int64_t vertex_count() const { return vertex_count_; }
  int64_t line_count() const { return line_count_; }        // d * n^(d-1)
  int64_t plane_count() const { return plane_count_; }      // C(d,2) * n^(d-2)
  int64_t lines_per_axis() const { return lines_per_axis_; }

  /// n^(i-1): amount the flat index moves when coordinate i increases by 1.
  int64_t stride(int axis) const { return strides_[axis - 1]; }

  /// Max possible open-neighbor count. theta above this makes the dynamics
  /// the identity map; allowed, but reported with a warning.
  int64_t max_degree() const { return int64_t{d_} * (n_ - 1); }
  bool degenerate_threshold() const { return theta_ > max_degree(); }
  /// Several limit theorems assume n >= 3*theta; smaller shapes are legal
  /// (oracles need tiny n) but get flagged in reports.
  bool below_thirds_regime() const { return n_ < 3 * int64_t{theta_}; }

  bool operator==(const TorusShape& o) const {
    return d_ == o.d_ && n_ == o.n_ && theta_ == o.theta_;
  }

 private:
  int d_;
  int64_t n_;
  int theta_;
  int64_t vertex_count_;
  int64_t line_count_;
  int64_t plane_count_;
  int64_t lines_per_axis_;
  std::vector<int64_t> strides_;
};

/// A vertex as its 1-based coordinate tuple.
using Vertex = std::vector<int32_t>;

/// Axis-parallel line: the `axis` coordinate runs over 1..n, the remaining
/// d-1 coordinates are fixed to `base` (listed in increasing axis order).
struct LineId {
  int axis = 1;  // 1..d
  std::vector<int32_t> base;

  bool operator==(const LineId& o) const { return axis == o.axis && base == o.base; }
};

/// Axis-pair plane: coordinates along `axis_a` < `axis_b` run over 1..n,
/// the remaining d-2 coordinates are fixed to `base`.
struct PlaneId {
  int axis_a = 1;
  int axis_b = 2;
  std::vector<int32_t> base;

  bool operator==(const PlaneId& o) const {
    return axis_a == o.axis_a && axis_b == o.axis_b && base == o.base;
  }
};

// Bijections between structured ids and flat indices.
int64_t flat_index(const TorusShape& shape, const Vertex& v);
Vertex vertex_of(const TorusShape& shape, int64_t flat);
int64_t line_index(const TorusShape& shape, const LineId& line);
LineId line_of_index(const TorusShape& shape, int64_t flat);
int64_t plane_index(const TorusShape& shape, const PlaneId& plane);
PlaneId plane_of_index(const TorusShape& shape, int64_t flat);

/// Line through v parallel to `axis`.
LineId line_of(const TorusShape& shape, const Vertex& v, int axis);
/// The n vertices of a line, ordered by the running coordinate.
std::vector<Vertex> line_vertices(const TorusShape& shape, const LineId& line);
/// Plane through v spanned by axes a < b.
PlaneId plane_of(const TorusShape& shape, const Vertex& v, int axis_a, int axis_b);
std::vector<Vertex> plane_vertices(const TorusShape& shape, const PlaneId& plane);

/// Number of coordinates in which v and w differ.
int hamming_distance(const Vertex& v, const Vertex& w);

/// N(v): the d(n-1) vertices at Hamming distance exactly 1 from v.
std::vector<Vertex> neighborhood(const TorusShape& shape, const Vertex& v);
/// N(A) = union of N(v) over v in A, minus A itself.
std::vector<Vertex> neighborhood_of_set(const TorusShape& shape,
                                        const std::vector<Vertex>& set);

/// A subset of [n]^d stored as a dense bit array over flat indices.
/// Immutable by convention once sampled; the dynamics engine works on
/// its own copy.
class Configuration {
 public:
  explicit Configuration(const TorusShape& shape);
  Configuration(const TorusShape& shape, const std::vector<Vertex>& open);

  const TorusShape& shape() const { return shape_; }

  bool test(int64_t flat) const {
    return (words_[static_cast<size_t>(flat >> 6)] >> (flat & 63)) & 1;
  }
  void set(int64_t flat) {
    uint64_t& w = words_[static_cast<size_t>(flat >> 6)];
    const uint64_t bit = uint64_t{1} << (flat & 63);
    open_count_ += !(w & bit);
    w |= bit;
  }
  bool is_open(const Vertex& v) const { return test(flat_index(shape_, v)); }

  int64_t open_count() const { return open_count_; }
  int64_t size() const { return shape_.vertex_count(); }

  /// Flat indices of open vertices, increasing.
  std::vector<int64_t> open_indices() const;
  std::vector<Vertex> open_vertices() const;

  /// Count of open vertices on a line.
  int64_t count_on_line(const LineId& line) const;

  bool subset_of(const Configuration& other) const;
  bool operator==(const Configuration& o) const {
    return shape_ == o.shape_ && words_ == o.words_;
  }

  const std::vector<uint64_t>& words() const { return words_; }
  std::vector<uint64_t>& mutable_words() { return words_; }
  void recount();  // resync open_count_ after direct word edits
  void clear();

 private:
  TorusShape shape_;
  std::vector<uint64_t> words_;
  int64_t open_count_ = 0;
};

/// Bernoulli(p) product measure over the vertices, driven by `rng`.
/// Identical rng state gives a bit-identical configuration.
Configuration sample_initial(const TorusShape& shape, double p, Rng& rng);
/// In-place variant reusing an existing buffer of the same shape.
void sample_initial_into(Configuration& config, double p, Rng& rng);

/// Graph automorphism: a permutation of the axes composed with an
/// independent coordinate permutation per axis. Image coordinate i is
/// coord_perms[i-1][ v[axis_perm[i-1]] - 1 ].
struct Automorphism {
  std::vector<int> axis_perm;                     // values 1..d
  std::vector<std::vector<int32_t>> coord_perms;  // d rows of 1..n values

  Vertex apply(const Vertex& v) const;
};

/// Sanity-checked constructor; throws DomainError on malformed data.
Automorphism make_automorphism(const TorusShape& shape, std::vector<int> axis_perm,
                               std::vector<std::vector<int32_t>> coord_perms);
Configuration apply_automorphism(const Automorphism& g, const Configuration& config);
/// Uniformly random automorphism (for equivariance property tests).
Automorphism random_automorphism(const TorusShape& shape, Rng& rng);

void validate_vertex(const TorusShape& shape, const Vertex& v);
void validate_axis(const TorusShape& shape, int axis);

}  // namespace hamming_boot
