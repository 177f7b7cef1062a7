#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hamming_boot/torus.hpp"
#include "reference.hpp"

namespace hb = hamming_boot;

namespace {

std::set<std::vector<int32_t>> as_set(const std::vector<hb::Vertex>& vertices) {
  return {vertices.begin(), vertices.end()};
}

hb::Configuration random_config(const hb::TorusShape& shape, double p,
                                uint64_t seed) {
  hb::Rng rng(seed);
  return hb::sample_initial(shape, p, rng);
}

}  // namespace

TEST_CASE("shape invariants and validation") {
  const hb::TorusShape shape(3, 5, 3);
  CHECK(shape.vertex_count() == 125);
  CHECK(shape.line_count() == 75);        // d n^(d-1)
  CHECK(shape.plane_count() == 15);       // C(3,2) n
  CHECK(shape.max_degree() == 12);
  CHECK_FALSE(shape.degenerate_threshold());
  CHECK(hb::TorusShape(2, 4, 7).degenerate_threshold());   // 7 > 2*3
  CHECK(hb::TorusShape(3, 8, 3).below_thirds_regime());    // 8 < 9
  CHECK_FALSE(hb::TorusShape(3, 9, 3).below_thirds_regime());

  CHECK_THROWS_AS(hb::TorusShape(0, 4, 2), hb::DomainError);
  CHECK_THROWS_AS(hb::TorusShape(2, 1, 2), hb::DomainError);
  CHECK_THROWS_AS(hb::TorusShape(2, 4, 0), hb::DomainError);
  // n^d beyond the addressable cap is rejected
  CHECK_THROWS_AS(hb::TorusShape(2, 65536, 2), hb::DomainError);
  CHECK_THROWS_AS(hb::TorusShape(31, 3, 2), hb::DomainError);
  CHECK_NOTHROW(hb::TorusShape(2, 65536, 2, int64_t{1} << 33));
}

TEST_CASE("vertex flat-index bijection is row-major with axis 1 fastest") {
  const hb::TorusShape shape(3, 4, 3);
  CHECK(hb::flat_index(shape, {1, 1, 1}) == 0);
  CHECK(hb::flat_index(shape, {2, 1, 1}) == 1);
  CHECK(hb::flat_index(shape, {1, 2, 1}) == 4);
  CHECK(hb::flat_index(shape, {1, 1, 2}) == 16);
  for (const hb::TorusShape& s :
       {hb::TorusShape(1, 5, 1), hb::TorusShape(2, 4, 2), hb::TorusShape(3, 3, 3),
        hb::TorusShape(4, 2, 2)}) {
    for (int64_t f = 0; f < s.vertex_count(); ++f)
      CHECK(hb::flat_index(s, hb::vertex_of(s, f)) == f);
  }
  CHECK_THROWS_AS(hb::flat_index(shape, {0, 1, 1}), hb::DomainError);
  CHECK_THROWS_AS(hb::flat_index(shape, {1, 1}), hb::DomainError);
  CHECK_THROWS_AS(hb::vertex_of(shape, 64), hb::DomainError);
}

TEST_CASE("line and plane bijections") {
  for (const hb::TorusShape& s :
       {hb::TorusShape(2, 4, 2), hb::TorusShape(3, 5, 3), hb::TorusShape(4, 3, 2)}) {
    for (int64_t l = 0; l < s.line_count(); ++l)
      CHECK(hb::line_index(s, hb::line_of_index(s, l)) == l);
    for (int64_t p = 0; p < s.plane_count(); ++p)
      CHECK(hb::plane_index(s, hb::plane_of_index(s, p)) == p);
  }

  // Distinct LineIds over all (v, axis) pairs equals d n^(d-1); 75 at d=3, n=5.
  const hb::TorusShape shape(3, 5, 3);
  std::set<int64_t> ids;
  for (int64_t f = 0; f < shape.vertex_count(); ++f)
    for (int axis = 1; axis <= 3; ++axis)
      ids.insert(hb::line_index(shape, hb::line_of(shape, hb::vertex_of(shape, f), axis)));
  CHECK(ids.size() == 75);

  // line_of(v, i) contains v, and lines are equivalence classes.
  const hb::TorusShape big(3, 8, 3);
  const hb::Vertex v{2, 5, 7};
  const hb::LineId line = hb::line_of(big, v, 2);
  const auto points = hb::line_vertices(big, line);
  CHECK(points.size() == 8);
  CHECK(std::count(points.begin(), points.end(), v) == 1);
  for (const hb::Vertex& w : points) {
    CHECK(w[0] == 2);
    CHECK(w[2] == 7);
    CHECK(hb::line_of(big, w, 2) == line);
  }
  CHECK_THROWS_AS(hb::line_of(big, v, 4), hb::DomainError);
  CHECK_THROWS_AS(hb::line_of(big, v, 0), hb::DomainError);

  const hb::PlaneId plane = hb::plane_of(big, v, 1, 3);
  CHECK(hb::plane_vertices(big, plane).size() == 64);
}

TEST_CASE("neighborhoods") {
  SUBCASE("d=2 n=3 explicit") {
    const hb::TorusShape shape(2, 3, 2);
    const auto nbrs = hb::neighborhood(shape, {1, 1});
    CHECK(nbrs.size() == 4);
    CHECK(as_set(nbrs) ==
          as_set({{2, 1}, {3, 1}, {1, 2}, {1, 3}}));
  }
  SUBCASE("d=3 n=2 size") {
    const hb::TorusShape shape(3, 2, 3);
    CHECK(hb::neighborhood(shape, {1, 2, 1}).size() == 3);
  }
  SUBCASE("d=3 n=4 against distance scan") {
    const hb::TorusShape shape(3, 4, 3);
    const hb::Vertex v{2, 2, 2};
    const auto nbrs = hb::neighborhood(shape, v);
    CHECK(nbrs.size() == 9);
    CHECK(std::count(nbrs.begin(), nbrs.end(), v) == 0);
    CHECK(as_set(nbrs) == as_set(oracle::neighborhood_by_distance(shape, v)));
  }
  SUBCASE("pairwise intersections at d=3") {
    // |N(v) ∩ N(w)| is 2 at Hamming distance 2 and 0 at distance 3.
    const hb::TorusShape shape(3, 4, 3);
    hb::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const hb::Vertex v = hb::vertex_of(shape, rng.next_below(64));
      const hb::Vertex w = hb::vertex_of(shape, rng.next_below(64));
      const int dist = hb::hamming_distance(v, w);
      const auto nv = as_set(hb::neighborhood(shape, v));
      const auto nw = as_set(hb::neighborhood(shape, w));
      std::vector<std::vector<int32_t>> common;
      std::set_intersection(nv.begin(), nv.end(), nw.begin(), nw.end(),
                            std::back_inserter(common));
      if (dist == 2) CHECK(common.size() == 2);
      if (dist == 3) CHECK(common.empty());
    }
  }
  SUBCASE("neighborhood of a set") {
    const hb::TorusShape shape(2, 3, 2);
    CHECK(hb::neighborhood_of_set(shape, {}).empty());
    const hb::Vertex v{2, 3};
    CHECK(as_set(hb::neighborhood_of_set(shape, {v})) ==
          as_set(hb::neighborhood(shape, v)));
    // A full line: the rest of the torus.
    const auto line = hb::line_vertices(shape, hb::line_of(shape, {1, 1}, 1));
    const auto rest = hb::neighborhood_of_set(shape, line);
    CHECK(rest.size() == 6);
    for (const auto& w : rest) CHECK(w[1] != 1);
    // N(A) never meets A.
    hb::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
      const auto sample = random_config(shape, 0.4, 100 + trial).open_vertices();
      const auto image = as_set(hb::neighborhood_of_set(shape, sample));
      for (const auto& a : sample) CHECK(image.count(a) == 0);
    }
  }
}

TEST_CASE("configuration state") {
  const hb::TorusShape shape(3, 4, 3);
  const hb::Configuration config(shape, {{1, 1, 1}, {4, 3, 2}, {1, 1, 1}});
  CHECK(config.open_count() == 2);  // duplicate collapsed
  CHECK(config.is_open({1, 1, 1}));
  CHECK(config.is_open({4, 3, 2}));
  CHECK_FALSE(config.is_open({2, 2, 2}));
  CHECK(config.open_indices().size() == 2);

  // count_on_line agrees with the bit array on random samples.
  const hb::Configuration sample = random_config(shape, 0.3, 11);
  int64_t total = 0;
  for (int64_t l = 0; l < shape.lines_per_axis(); ++l) {
    hb::LineId line = hb::line_of_index(shape, l);
    int64_t manual = 0;
    for (const hb::Vertex& w : hb::line_vertices(shape, line))
      manual += sample.is_open(w);
    CHECK(sample.count_on_line(line) == manual);
    total += manual;
  }
  CHECK(total == sample.open_count());  // axis-1 lines partition the vertices
}

TEST_CASE("sampling") {
  const hb::TorusShape shape(2, 64, 3);
  SUBCASE("edge densities") {
    hb::Rng rng(1);
    CHECK(hb::sample_initial(shape, 0.0, rng).open_count() == 0);
    CHECK(hb::sample_initial(shape, 1.0, rng).open_count() == 4096);
    CHECK_THROWS_AS(hb::sample_initial(shape, -0.1, rng), hb::DomainError);
    CHECK_THROWS_AS(hb::sample_initial(shape, 1.5, rng), hb::DomainError);
  }
  SUBCASE("determinism of split streams") {
    hb::Rng a = hb::Rng::split(42, 7);
    hb::Rng b = hb::Rng::split(42, 7);
    hb::Rng c = hb::Rng::split(42, 8);
    const auto ca = hb::sample_initial(shape, 0.05, a);
    const auto cb = hb::sample_initial(shape, 0.05, b);
    const auto cc = hb::sample_initial(shape, 0.05, c);
    CHECK(ca == cb);
    CHECK_FALSE(ca == cc);
  }
  SUBCASE("binomial mean, dense and sparse paths") {
    for (double p : {0.3, 0.02}) {
      double total = 0;
      const int samples = p > 0.1 ? 10000 : 20000;
      for (int i = 0; i < samples; ++i) {
        hb::Rng rng = hb::Rng::split(99, i);
        total += static_cast<double>(hb::sample_initial(shape, p, rng).open_count());
      }
      const double mean = total / samples;
      const double expect = p * 4096;
      const double se = std::sqrt(4096 * p * (1 - p)) / std::sqrt(samples);
      CHECK(std::abs(mean - expect) <= 3 * se);
    }
  }
}

TEST_CASE("automorphisms") {
  const hb::TorusShape shape(3, 4, 3);
  hb::Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const hb::Automorphism g = hb::random_automorphism(shape, rng);
    // Lines map to lines.
    for (int axis = 1; axis <= 3; ++axis) {
      const auto line =
          hb::line_vertices(shape, hb::line_of(shape, {2, 3, 1}, axis));
      std::vector<hb::Vertex> image;
      for (const auto& w : line) image.push_back(g.apply(w));
      const hb::LineId image_line = [&] {
        for (int b = 1; b <= 3; ++b) {
          bool same = true;
          for (const auto& w : image)
            same = same && hb::line_of(shape, w, b) ==
                               hb::line_of(shape, image[0], b);
          if (same && hb::hamming_distance(image[0], image[1]) == 1) return hb::line_of(shape, image[0], b);
        }
        return hb::LineId{};
      }();
      CHECK(as_set(image) ==
            as_set(hb::line_vertices(shape, image_line)));
    }
    // Counts preserved.
    const hb::Configuration config = random_config(shape, 0.3, 40 + trial);
    const hb::Configuration mapped = hb::apply_automorphism(g, config);
    CHECK(mapped.open_count() == config.open_count());
  }
  CHECK_THROWS_AS(hb::make_automorphism(shape, {1, 1, 2},
                                        {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}),
                  hb::DomainError);
  CHECK_THROWS_AS(hb::make_automorphism(shape, {1, 2, 3},
                                        {{1, 2, 3, 3}, {1, 2, 3, 4}, {1, 2, 3, 4}}),
                  hb::DomainError);
}
