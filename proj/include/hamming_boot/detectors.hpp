#pragma once

#include <array>
#include <cstdint>

#include "hamming_boot/torus.hpp"

namespace hamming_boot {

/// Per-sample counts of the d=3 spanning-relevant configurations.
/// `line[i]`, `line_empty[i]`, ... are indexed by axis-1 (i in 0..2 maps to
/// axes 1..3). Identities: non_enhanced_line[i] + enhanced_line[i] = line[i],
/// and line[i] + line_empty[i] = number of axis-(i+1) lines with at least
/// two open vertices.
struct ConfigCounts {
  int64_t basic = 0;
  int64_t enhanced_basic = 0;
  std::array<int64_t, 3> line{0, 0, 0};
  std::array<int64_t, 3> line_empty{0, 0, 0};
  std::array<int64_t, 3> enhanced_line{0, 0, 0};
  std::array<int64_t, 3> non_enhanced_line{0, 0, 0};

  int64_t line_total() const { return line[0] + line[1] + line[2]; }
  int64_t line_empty_total() const {
    return line_empty[0] + line_empty[1] + line_empty[2];
  }
  int64_t enhanced_line_total() const {
    return enhanced_line[0] + enhanced_line[1] + enhanced_line[2];
  }
  int64_t non_enhanced_line_total() const {
    return non_enhanced_line[0] + non_enhanced_line[1] + non_enhanced_line[2];
  }
};

/// Disjoint decomposition of the spanning-recipe ("good") event. A sample
/// is good iff it falls in one of the five non-trivial classes.
enum class GoodClass {
  NotGood,
  BasicWithLine,          // Basic >= 1 and Line == 1
  EnhancedBasicNoLine,    // EnhancedBasic >= 1 and Line == 0
  TwoOrMoreLines,         // Line >= 2
  SingleEnhancedLine,     // Basic == 0, EnhancedLine == 1, NonEnhancedLine == 0
  SingleLineWithAskewEmptyLine,  // Basic == 0, exactly one non-enhanced line
                                 // event on axis i, no enhanced line, and an
                                 // empty-line event on some axis j != i
};

const char* good_class_name(GoodClass c);

/// True iff every axis line through v contains an open vertex other than v.
/// v's own state is irrelevant.
bool is_basic_at(const Configuration& config, const Vertex& v);
int64_t count_basic(const Configuration& config);

int64_t count_enhanced_basic(const Configuration& config);

/// Per-axis line / empty-line / enhanced-line / non-enhanced-line counts
/// (basic fields left at zero).
ConfigCounts count_line_events(const Configuration& config);

/// All counts in one pass.
ConfigCounts count_configurations(const Configuration& config);

GoodClass classify_from_counts(const ConfigCounts& counts);
GoodClass classify_good(const Configuration& config);

/// For SingleLineWithAskewEmptyLine samples, the axis (1..3) holding the
/// non-enhanced line event; 0 for every other class. The harness compares
/// the three axis frequencies to validate the symmetric 3x term.
int single_line_askew_axis(const ConfigCounts& counts);

/// Three-step line witness for an axis-1 line: at least r open vertices in
/// the left third of the line, some middle-third vertex whose axis-2 line
/// holds >= theta - r open vertices, and at least theta right-third vertices
/// whose axis-2 lines hold >= theta - r - 1 open vertices, where
/// r = ceil((d-1)*theta/d) - 1. Thirds split the 1-based running coordinate
/// at n/3 and 2n/3 with real-valued comparisons. When this fires, the whole
/// line is open within three rounds.
bool detect_F_line(const Configuration& config, const LineId& line);

}  // namespace hamming_boot
