#pragma once

#include <cstdint>
#include <vector>

#include "hamming_boot/torus.hpp"

namespace hamming_boot {

/// Outcome of running the growth rule to its fixed point.
struct DynamicsResult {
  Configuration final;       // the pointwise limit of the update sequence
  int64_t rounds = 0;        // synchronous steps until nothing changes
  int64_t newly_opened = 0;  // |final| - |initial|
  bool spanned = false;              // final is identically open
  bool open_line_found = false;      // some axis line fully open in final
  bool open_plane_found = false;     // some axis-pair plane fully open in final
  bool above_threshold_initial = false;  // some vertex saw >= theta open
                                         // neighbors already in the input
};

/// One synchronous update: an open vertex stays open; a closed vertex opens
/// iff it has at least theta open neighbors in `config`. Reference
/// implementation, written directly against the rule.
Configuration step(const Configuration& config);

/// Reference engine: repeated synchronous steps until a fixed point.
DynamicsResult evolve(const Configuration& initial);

/// True iff some vertex (open or closed) has >= theta open neighbors.
bool above_threshold(const Configuration& config);

/// Full-line / full-plane queries, typically asked of a fixed point.
bool open_line_exists(const Configuration& config);
bool open_plane_exists(const Configuration& config);

/// Optimized engine. Maintains one open-vertex counter per line plus a
/// dirty-line set: opening a vertex bumps its d counters in O(d), and a
/// generation ends by rescanning dirty lines for closed vertices whose
/// d-counter sum reaches theta. Vertices found during a rescan are buffered
/// and opened only at the generation boundary, so `rounds` matches the
/// synchronous definition exactly.
///
/// A single engine owns its scratch state and is not thread-safe; create
/// one per thread and reuse it across runs.
class GrowthEngine {
 public:
  explicit GrowthEngine(const TorusShape& shape);

  /// Bit-identical final configuration and flags to evolve().
  DynamicsResult run(const Configuration& initial);

  /// Counter-based equivalents of the free-function queries, reusing the
  /// engine's scratch arrays.
  bool above_threshold(const Configuration& config);

  /// When set, every generation revalidates the line counters against the
  /// bit array (slow; meant for tests and debug builds).
  void set_validate_counters(bool on) { validate_counters_ = on; }

  const TorusShape& shape() const { return shape_; }

 private:
  void load(const Configuration& initial);
  void decode_line(int64_t line, int* axis, int64_t* first_flat,
                   int64_t* other_ids, int64_t* other_steps) const;
  void open_vertex(int64_t flat);
  void mark_dirty(int64_t line);
  bool scan_above_threshold() const;
  bool plane_open_exists() const;
  void validate() const;

  TorusShape shape_;
  std::vector<int64_t> line_weight_;  // line_weight_[b*d+j]: weight of coord j
                                      // in the base packing of axis-b lines
  std::vector<uint64_t> words_;       // open or scheduled-to-open
  std::vector<uint32_t> counts_;      // open vertices per line (ignores scheduled)
  std::vector<uint64_t> dirty_epoch_;
  std::vector<int64_t> dirty_, next_dirty_, pending_;
  uint64_t epoch_ = 0;
  bool any_full_line_ = false;
  bool validate_counters_ =
#ifdef NDEBUG
      false;
#else
      true;
#endif
};

/// Convenience wrapper: build a one-shot engine and run it.
DynamicsResult evolve_fast(const Configuration& initial);

}  // namespace hamming_boot
