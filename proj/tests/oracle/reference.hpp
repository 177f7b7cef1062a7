#pragma once

// Brute-force reference evaluators used as independent oracles by the test
// suites. Everything here works off the literal definitions (explicit set
// arithmetic, quantifier loops), trading speed for obviousness; keep these
// independent of the production implementations they check.

#include <set>
#include <vector>

#include "hamming_boot/detectors.hpp"
#include "hamming_boot/torus.hpp"

namespace oracle {

using hamming_boot::Configuration;
using hamming_boot::LineId;
using hamming_boot::TorusShape;
using hamming_boot::Vertex;

using FlatSet = std::set<int64_t>;

FlatSet to_flats(const TorusShape& shape, const std::vector<Vertex>& vertices);

/// N(v) by scanning every vertex for Hamming distance exactly 1.
std::vector<Vertex> neighborhood_by_distance(const TorusShape& shape,
                                             const Vertex& v);

/// N(A) as a flat-index set, from neighborhood_by_distance.
FlatSet neighborhood_set(const TorusShape& shape, const FlatSet& members);

/// Open-neighbor count by explicit neighbor enumeration.
int64_t open_neighbors(const Configuration& config, const Vertex& v);

bool above_threshold_by_scan(const Configuration& config);

/// Quantifier-loop versions of the d=3 configuration events: iterate over
/// all open-witness tuples exactly as the definitions are phrased.
bool basic_by_quantifier(const Configuration& config, const Vertex& v);
bool enhanced_basic_by_quantifier(const Configuration& config, const Vertex& v);

struct LineIndicators {
  bool line = false;
  bool line_empty = false;
  bool enhanced_line = false;
  bool non_enhanced_line = false;
};

/// Literal set-expression evaluation of the per-line indicators.
LineIndicators line_events_literal(const Configuration& config,
                                   const LineId& line);

/// Alternative reading of the enhanced-line witness: the extra open vertex
/// must be coplanar-but-not-collinear with the witness and off the other
/// plane containing the line. Compared against the literal expression to
/// confirm the two readings agree.
bool enhanced_line_coplanar_reading(const Configuration& config,
                                    const LineId& line);

hamming_boot::ConfigCounts counts_by_oracle(const Configuration& config);

/// The good event evaluated directly as the union of the five recipes,
/// entirely from oracle counts.
bool good_by_union_definition(const Configuration& config);

}  // namespace oracle
