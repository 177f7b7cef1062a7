#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hamming_boot/detectors.hpp"
#include "hamming_boot/dynamics.hpp"
#include "hamming_boot/rational.hpp"
#include "hamming_boot/torus.hpp"

namespace hamming_boot {

/// Per-replica events the harness can estimate. The histogram and count
/// kinds expand into several report rows.
enum class EventKind {
  Spanned,
  OpenLine,
  OpenPlane,
  AboveThreshold,
  GrewNotSpanned,    // something opened, but the torus did not span
  Good,              // d=3 spanning-recipe classifier fired
  GoodXorSpanned,    // classifier and dynamics disagree (finite-size gap)
  GoodClassHistogram,
  ConfigCountMeans,
};

const char* event_kind_name(EventKind kind);
std::optional<EventKind> event_kind_from_name(const std::string& name);

/// Initial density: either a raw probability or the critical scaling
/// p = a * n^(-alpha).
struct Scaling {
  static Scaling raw(double p) { return Scaling{true, p, 0.0, Rational(0)}; }
  static Scaling critical(double a, Rational alpha) {
    return Scaling{false, 0.0, a, std::move(alpha)};
  }

  bool is_raw = true;
  double p = 0.0;
  double a = 0.0;
  Rational alpha = Rational(0);

  /// Density for side length n; clamped to [0,1] with a warning flag.
  double resolve(int64_t n, bool* clamped) const;
};

struct ExperimentSpec {
  ExperimentSpec(TorusShape shape_in, Scaling scaling_in)
      : shape(std::move(shape_in)), scaling(std::move(scaling_in)) {}

  TorusShape shape;
  Scaling scaling;
  std::vector<EventKind> events;
  int64_t replicas = 1;
  uint64_t seed = 0;
  double ci_level = 0.99;
  /// Workspace budget across all worker threads; exceeded -> ResourceError
  /// before any sampling starts.
  int64_t memory_cap_bytes = int64_t{8} << 30;
};

/// One estimate row: for plain events `successes` counts replicas where the
/// event held and p_hat carries a Wilson score interval; for mean rows
/// `successes` is the summed count, p_hat the mean, and the interval a
/// normal +/- z * SE band.
struct EventEstimate {
  std::string event;
  int64_t successes = 0;
  int64_t replicas = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct EstimateReport {
  int d = 0;
  int64_t n = 0;
  int theta = 0;
  Scaling scaling;
  double p = 0.0;  // density actually used
  bool p_clamped = false;
  int64_t replicas = 0;
  uint64_t seed = 0;
  double ci_level = 0.99;
  std::vector<EventEstimate> events;
  double mean_rounds = 0.0;
  /// EnhancedLine + sum_i NonEnhancedLine_i == Line, checked on every
  /// replica when counts were requested.
  bool count_identity_held = true;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;  // informational; never serialized into rows
};

/// Wilson score interval for `successes` out of `trials` at `ci_level`.
void wilson_interval(int64_t successes, int64_t trials, double ci_level,
                     double* p_hat, double* lo, double* hi);

/// Worker count: HAMMING_BOOT_THREADS if set, else all cores. The report is
/// identical for every worker count: replica r always uses the rng stream
/// split(seed, r) and aggregation is order-independent sums.
int worker_threads();

EstimateReport run(const ExperimentSpec& spec);

/// Exact probability of an event under the product measure, by enumerating
/// all 2^(n^d) initial configurations with the reference engine. Guarded by
/// n^d <= 22.
double exact_probability(const TorusShape& shape, double p, EventKind event);

struct SweepSpec {
  ExperimentSpec base;
  std::vector<int64_t> n_values;
  std::vector<double> a_values;        // vary a (alpha fixed from base), or
  std::vector<Rational> alpha_values;  // vary alpha (a fixed from base)
};

struct SweepResult {
  std::vector<EstimateReport> reports;
  std::vector<std::string> errors;  // per-point failures; sweep continues
};

/// Runs the grid in deterministic order (n outer, scaling inner) and calls
/// `on_report` as each point completes. Point i draws its seed from
/// split(seed, i).
SweepResult sweep(const SweepSpec& spec,
                  const std::function<void(const EstimateReport&)>& on_report = {});

/// Empirical configuration-count means against the limiting Poisson means
/// and (for Basic) the exact finite-n expectation n^3 (1-(1-p)^(n-1))^3.
struct MeanComparison {
  std::string name;
  double empirical_mean = 0.0;
  double std_error = 0.0;
  double limit_value = 0.0;
  double finite_n_value = 0.0;
  bool has_finite_n = false;
};

struct PoissonEmpirics {
  EstimateReport report;
  std::vector<MeanComparison> rows;
};

PoissonEmpirics poisson_mean_empirics(const ExperimentSpec& spec);

/// Randomized engine-equivalence battery: evolve vs the optimized engine on
/// random shapes (d in {2,3}, n in 4..12, theta in 1..6, p in 0.05..0.5).
struct EquivalenceResult {
  int64_t instances = 0;
  int64_t mismatches = 0;
  std::string first_mismatch;
};
EquivalenceResult engine_equivalence_battery(int64_t instances, uint64_t seed);

}  // namespace hamming_boot
