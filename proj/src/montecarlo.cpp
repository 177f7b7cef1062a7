#include "hamming_boot/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/distributions/normal.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "hamming_boot/analytics.hpp"

namespace hamming_boot {

namespace {

constexpr int kClassCount = 6;

const char* const kCountNames[] = {
    "basic",
    "enhanced_basic",
    "line",
    "line_1",
    "line_2",
    "line_3",
    "line_empty_1",
    "line_empty_2",
    "line_empty_3",
    "enhanced_line",
    "enhanced_line_1",
    "enhanced_line_2",
    "enhanced_line_3",
    "non_enhanced_line_1",
    "non_enhanced_line_2",
    "non_enhanced_line_3",
};
constexpr int kCountVars = 16;

void extract_counts(const ConfigCounts& c, int64_t out[kCountVars]) {
  int i = 0;
  out[i++] = c.basic;
  out[i++] = c.enhanced_basic;
  out[i++] = c.line_total();
  for (int k = 0; k < 3; ++k) out[i++] = c.line[k];
  for (int k = 0; k < 3; ++k) out[i++] = c.line_empty[k];
  out[i++] = c.enhanced_line_total();
  for (int k = 0; k < 3; ++k) out[i++] = c.enhanced_line[k];
  for (int k = 0; k < 3; ++k) out[i++] = c.non_enhanced_line[k];
}

struct Accumulator {
  int64_t replicas = 0;
  int64_t spanned = 0, open_line = 0, open_plane = 0, above_threshold = 0;
  int64_t grew_not_spanned = 0, good = 0, good_xor_spanned = 0;
  int64_t rounds_sum = 0;
  int64_t classes[kClassCount] = {0};
  int64_t askew_axis[3] = {0};
  int64_t count_sum[kCountVars] = {0};
  int64_t count_sumsq[kCountVars] = {0};
  int64_t identity_violations = 0;

  void merge(const Accumulator& o) {
    replicas += o.replicas;
    spanned += o.spanned;
    open_line += o.open_line;
    open_plane += o.open_plane;
    above_threshold += o.above_threshold;
    grew_not_spanned += o.grew_not_spanned;
    good += o.good;
    good_xor_spanned += o.good_xor_spanned;
    rounds_sum += o.rounds_sum;
    for (int i = 0; i < kClassCount; ++i) classes[i] += o.classes[i];
    for (int i = 0; i < 3; ++i) askew_axis[i] += o.askew_axis[i];
    for (int i = 0; i < kCountVars; ++i) {
      count_sum[i] += o.count_sum[i];
      count_sumsq[i] += o.count_sumsq[i];
    }
    identity_violations += o.identity_violations;
  }
};

bool wants(const ExperimentSpec& spec, EventKind kind) {
  return std::find(spec.events.begin(), spec.events.end(), kind) !=
         spec.events.end();
}

double normal_z(double ci_level) {
  if (!(ci_level > 0.0 && ci_level < 1.0))
    throw DomainError("ci_level must be in (0,1)");
  boost::math::normal dist;
  return boost::math::quantile(dist, 0.5 + ci_level / 2);
}

EventEstimate proportion_row(const std::string& name, int64_t successes,
                             int64_t replicas, double ci_level) {
  EventEstimate row{name, successes, replicas};
  wilson_interval(successes, replicas, ci_level, &row.p_hat, &row.ci_low,
                  &row.ci_high);
  return row;
}

EventEstimate mean_row(const std::string& name, int64_t sum, int64_t sumsq,
                       int64_t replicas, double z) {
  EventEstimate row{"mean:" + name, sum, replicas};
  const double mean = static_cast<double>(sum) / static_cast<double>(replicas);
  row.p_hat = mean;
  double se = 0.0;
  if (replicas > 1) {
    const double var =
        (static_cast<double>(sumsq) - mean * static_cast<double>(sum)) /
        static_cast<double>(replicas - 1);
    se = std::sqrt(std::max(0.0, var) / static_cast<double>(replicas));
  }
  row.ci_low = mean - z * se;
  row.ci_high = mean + z * se;
  return row;
}

int64_t workspace_bytes(const TorusShape& shape) {
  const int64_t words = (shape.vertex_count() + 63) / 64;
  // configuration sample + engine bitset + counters, epochs, dirty lists
  return words * 16 + shape.line_count() * 28;
}

}  // namespace

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Spanned: return "spanned";
    case EventKind::OpenLine: return "open_line";
    case EventKind::OpenPlane: return "open_plane";
    case EventKind::AboveThreshold: return "above_threshold";
    case EventKind::GrewNotSpanned: return "grew_not_spanned";
    case EventKind::Good: return "good";
    case EventKind::GoodXorSpanned: return "good_xor_spanned";
    case EventKind::GoodClassHistogram: return "good_class_histogram";
    case EventKind::ConfigCountMeans: return "config_count_means";
  }
  return "unknown";
}

std::optional<EventKind> event_kind_from_name(const std::string& name) {
  static const EventKind kinds[] = {
      EventKind::Spanned,        EventKind::OpenLine,
      EventKind::OpenPlane,      EventKind::AboveThreshold,
      EventKind::GrewNotSpanned, EventKind::Good,
      EventKind::GoodXorSpanned, EventKind::GoodClassHistogram,
      EventKind::ConfigCountMeans};
  for (EventKind k : kinds)
    if (name == event_kind_name(k)) return k;
  return std::nullopt;
}

double Scaling::resolve(int64_t n, bool* clamped) const {
  if (clamped) *clamped = false;
  if (is_raw) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("raw p outside [0,1]");
    return p;
  }
  if (!(a >= 0.0)) throw DomainError("scaling: a must be >= 0");
  if (!(alpha > 0)) throw DomainError("scaling: alpha must be > 0");
  const double value =
      a * std::pow(static_cast<double>(n), -static_cast<double>(alpha));
  if (value > 1.0) {
    if (clamped) *clamped = true;
    return 1.0;
  }
  return value;
}

void wilson_interval(int64_t successes, int64_t trials, double ci_level,
                     double* p_hat, double* lo, double* hi) {
  if (trials <= 0) throw DomainError("wilson_interval: trials must be >= 1");
  if (successes < 0 || successes > trials)
    throw DomainError("wilson_interval: successes out of range");
  const double z = normal_z(ci_level);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  *p_hat = phat;
  // Algebraically the endpoints hit 0 and 1 exactly at the extremes; pin
  // them so ci_low <= p_hat <= ci_high holds without rounding wobble.
  *lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  *hi = successes == trials ? 1.0 : std::min(1.0, center + half);
}

int worker_threads() {
  if (const char* env = std::getenv("HAMMING_BOOT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

EstimateReport run(const ExperimentSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  const TorusShape& shape = spec.shape;
  if (spec.replicas < 1) throw DomainError("run: replicas must be >= 1");
  if (spec.events.empty()) throw DomainError("run: no events requested");

  const bool needs_counts = wants(spec, EventKind::Good) ||
                            wants(spec, EventKind::GoodXorSpanned) ||
                            wants(spec, EventKind::GoodClassHistogram) ||
                            wants(spec, EventKind::ConfigCountMeans);
  if (needs_counts && shape.d() != 3)
    throw UnsupportedError("configuration-count events require d = 3");
  const bool needs_dynamics =
      wants(spec, EventKind::Spanned) || wants(spec, EventKind::OpenLine) ||
      wants(spec, EventKind::OpenPlane) ||
      wants(spec, EventKind::GrewNotSpanned) ||
      wants(spec, EventKind::GoodXorSpanned);
  const bool needs_above = wants(spec, EventKind::AboveThreshold);

  const int threads =
      static_cast<int>(std::min<int64_t>(worker_threads(), spec.replicas));
  if (workspace_bytes(shape) * threads > spec.memory_cap_bytes)
    throw ResourceError("run: workspace exceeds the memory cap");

  bool clamped = false;
  const double p = spec.scaling.resolve(shape.n(), &clamped);

  std::vector<Accumulator> partials(threads);
  std::atomic<int64_t> next_replica{0};
  auto worker = [&](int tid) {
    Accumulator& acc = partials[tid];
    Configuration sample(shape);
    GrowthEngine engine(shape);
    engine.set_validate_counters(false);
    for (;;) {
      const int64_t r = next_replica.fetch_add(1, std::memory_order_relaxed);
      if (r >= spec.replicas) break;
      Rng rng = Rng::split(spec.seed, static_cast<uint64_t>(r));
      sample_initial_into(sample, p, rng);
      ++acc.replicas;

      bool spanned = false;
      if (needs_dynamics) {
        const DynamicsResult result = engine.run(sample);
        spanned = result.spanned;
        acc.spanned += result.spanned;
        acc.open_line += result.open_line_found;
        acc.open_plane += result.open_plane_found;
        acc.grew_not_spanned += result.newly_opened > 0 && !result.spanned;
        acc.rounds_sum += result.rounds;
        if (needs_above) acc.above_threshold += result.above_threshold_initial;
      } else if (needs_above) {
        acc.above_threshold += engine.above_threshold(sample);
      }

      if (needs_counts) {
        const ConfigCounts counts = count_configurations(sample);
        const GoodClass cls = classify_from_counts(counts);
        acc.classes[static_cast<int>(cls)] += 1;
        const int axis = single_line_askew_axis(counts);
        if (axis) acc.askew_axis[axis - 1] += 1;
        const bool good = cls != GoodClass::NotGood;
        acc.good += good;
        acc.good_xor_spanned += good != spanned;
        int64_t values[kCountVars];
        extract_counts(counts, values);
        for (int i = 0; i < kCountVars; ++i) {
          acc.count_sum[i] += values[i];
          acc.count_sumsq[i] += values[i] * values[i];
        }
        acc.identity_violations +=
            counts.enhanced_line_total() + counts.non_enhanced_line_total() !=
            counts.line_total();
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  Accumulator total;
  for (const Accumulator& acc : partials) total.merge(acc);

  EstimateReport report;
  report.d = shape.d();
  report.n = shape.n();
  report.theta = shape.theta();
  report.scaling = spec.scaling;
  report.p = p;
  report.p_clamped = clamped;
  report.replicas = spec.replicas;
  report.seed = spec.seed;
  report.ci_level = spec.ci_level;
  report.mean_rounds = needs_dynamics ? static_cast<double>(total.rounds_sum) /
                                            static_cast<double>(spec.replicas)
                                      : 0.0;
  report.count_identity_held = total.identity_violations == 0;
  if (clamped) report.warnings.push_back("a*n^-alpha exceeded 1; p clamped to 1");
  if (shape.degenerate_threshold())
    report.warnings.push_back("theta exceeds d(n-1); dynamics are the identity");
  if (shape.below_thirds_regime())
    report.warnings.push_back("n < 3*theta; limit theorems assume larger n");

  const double z = normal_z(spec.ci_level);
  for (EventKind kind : spec.events) {
    switch (kind) {
      case EventKind::Spanned:
        report.events.push_back(proportion_row("spanned", total.spanned,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::OpenLine:
        report.events.push_back(proportion_row("open_line", total.open_line,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::OpenPlane:
        report.events.push_back(proportion_row("open_plane", total.open_plane,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::AboveThreshold:
        report.events.push_back(proportion_row("above_threshold",
                                               total.above_threshold,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::GrewNotSpanned:
        report.events.push_back(proportion_row("grew_not_spanned",
                                               total.grew_not_spanned,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::Good:
        report.events.push_back(
            proportion_row("good", total.good, spec.replicas, spec.ci_level));
        break;
      case EventKind::GoodXorSpanned:
        report.events.push_back(proportion_row("good_xor_spanned",
                                               total.good_xor_spanned,
                                               spec.replicas, spec.ci_level));
        break;
      case EventKind::GoodClassHistogram:
        for (int c = 0; c < kClassCount; ++c)
          report.events.push_back(proportion_row(
              std::string("class:") + good_class_name(static_cast<GoodClass>(c)),
              total.classes[c], spec.replicas, spec.ci_level));
        for (int i = 0; i < 3; ++i)
          report.events.push_back(proportion_row(
              "askew_axis:" + std::to_string(i + 1), total.askew_axis[i],
              spec.replicas, spec.ci_level));
        break;
      case EventKind::ConfigCountMeans:
        for (int i = 0; i < kCountVars; ++i)
          report.events.push_back(mean_row(kCountNames[i], total.count_sum[i],
                                           total.count_sumsq[i], spec.replicas,
                                           z));
        break;
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

double exact_probability(const TorusShape& shape, double p, EventKind event) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError("exact_probability: p outside [0,1]");
  const int64_t size = shape.vertex_count();
  if (size > 22)
    throw ResourceError("exact_probability: n^d > 22 enumeration cap");
  switch (event) {
    case EventKind::GoodClassHistogram:
    case EventKind::ConfigCountMeans:
      throw DomainError("exact_probability: event must be a plain event");
    default:
      break;
  }
  if ((event == EventKind::Good || event == EventKind::GoodXorSpanned) &&
      shape.d() != 3)
    throw UnsupportedError("exact_probability: good requires d = 3");

  // Weight by open-vertex count: sum over subsets of p^|S| (1-p)^(M-|S|).
  std::vector<double> pow_p(size + 1, 1.0), pow_q(size + 1, 1.0);
  for (int64_t k = 1; k <= size; ++k) {
    pow_p[k] = pow_p[k - 1] * p;
    pow_q[k] = pow_q[k - 1] * (1.0 - p);
  }
  double probability = 0.0;
  Configuration config(shape);
  for (uint64_t mask = 0;; ++mask) {
    config.clear();
    for (int64_t b = 0; b < size; ++b)
      if ((mask >> b) & 1) config.set(b);
    bool holds = false;
    switch (event) {
      case EventKind::AboveThreshold:
        holds = above_threshold(config);
        break;
      case EventKind::Good:
        holds = classify_good(config) != GoodClass::NotGood;
        break;
      default: {
        const DynamicsResult result = evolve(config);
        switch (event) {
          case EventKind::Spanned: holds = result.spanned; break;
          case EventKind::OpenLine: holds = result.open_line_found; break;
          case EventKind::OpenPlane: holds = result.open_plane_found; break;
          case EventKind::GrewNotSpanned:
            holds = result.newly_opened > 0 && !result.spanned;
            break;
          case EventKind::GoodXorSpanned:
            holds = (classify_good(config) != GoodClass::NotGood) !=
                    result.spanned;
            break;
          default: break;
        }
        break;
      }
    }
    if (holds) {
      const int64_t open = config.open_count();
      probability += pow_p[open] * pow_q[size - open];
    }
    if (mask == (uint64_t{1} << size) - 1) break;
  }
  return probability;
}

SweepResult sweep(const SweepSpec& spec,
                  const std::function<void(const EstimateReport&)>& on_report) {
  if (!spec.a_values.empty() && !spec.alpha_values.empty())
    throw DomainError("sweep: vary either a or alpha, not both");
  if (spec.n_values.empty()) throw DomainError("sweep: no n values");
  SweepResult result;
  int64_t point = 0;
  const int64_t inner = std::max<size_t>(
      1, std::max(spec.a_values.size(), spec.alpha_values.size()));
  for (int64_t n : spec.n_values) {
    for (int64_t j = 0; j < inner; ++j, ++point) {
      try {
        ExperimentSpec point_spec = spec.base;
        point_spec.shape = TorusShape(spec.base.shape.d(), n,
                                      spec.base.shape.theta());
        if (!spec.a_values.empty()) {
          point_spec.scaling = Scaling::critical(
              spec.a_values[static_cast<size_t>(j)], spec.base.scaling.alpha);
        } else if (!spec.alpha_values.empty()) {
          point_spec.scaling = Scaling::critical(
              spec.base.scaling.a, spec.alpha_values[static_cast<size_t>(j)]);
        }
        point_spec.seed =
            Rng::split(spec.base.seed, static_cast<uint64_t>(point)).next_u64();
        EstimateReport report = run(point_spec);
        if (on_report) on_report(report);
        result.reports.push_back(std::move(report));
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "point " << point << " (n=" << n << "): " << e.what();
        result.errors.push_back(msg.str());
      }
    }
  }
  return result;
}

PoissonEmpirics poisson_mean_empirics(const ExperimentSpec& spec) {
  if (spec.shape.d() != 3)
    throw UnsupportedError("poisson_mean_empirics requires d = 3");
  ExperimentSpec run_spec = spec;
  if (!wants(run_spec, EventKind::ConfigCountMeans))
    run_spec.events.push_back(EventKind::ConfigCountMeans);

  PoissonEmpirics out{run(run_spec), {}};
  const double n = static_cast<double>(spec.shape.n());
  const double p = out.report.p;
  const double a_eff = p * n * n;  // effective critical-scaling constant
  const PoissonMeans means = poisson_means(a_eff);

  const double basic_finite =
      std::pow(n, 3) * std::pow(1.0 - std::pow(1.0 - p, n - 1), 3);
  auto limit_of = [&](const std::string& name) -> double {
    if (name == "basic") return means.basic;
    if (name == "enhanced_basic") return means.enhanced_basic;
    if (name == "line") return means.line;
    if (name == "enhanced_line") return means.enhanced_line;
    if (name.rfind("line_empty_", 0) == 0) return means.line_empty_axis;
    if (name.rfind("non_enhanced_line_", 0) == 0)
      return means.non_enhanced_line_axis;
    if (name.rfind("enhanced_line_", 0) == 0) return means.enhanced_line / 3;
    if (name.rfind("line_", 0) == 0) return means.line / 3;
    return 0.0;
  };
  for (const EventEstimate& row : out.report.events) {
    if (row.event.rfind("mean:", 0) != 0) continue;
    const std::string name = row.event.substr(5);
    MeanComparison cmp;
    cmp.name = name;
    cmp.empirical_mean = row.p_hat;
    cmp.std_error = (row.ci_high - row.ci_low) / 2 / normal_z(spec.ci_level);
    cmp.limit_value = limit_of(name);
    if (name == "basic") {
      cmp.finite_n_value = basic_finite;
      cmp.has_finite_n = true;
    }
    out.rows.push_back(std::move(cmp));
  }
  return out;
}

EquivalenceResult engine_equivalence_battery(int64_t instances, uint64_t seed) {
  EquivalenceResult result;
  result.instances = instances;
  for (int64_t i = 0; i < instances; ++i) {
    Rng rng = Rng::split(seed, static_cast<uint64_t>(i));
    const int d = 2 + static_cast<int>(rng.next_below(2));
    const int64_t n = 4 + static_cast<int64_t>(rng.next_below(9));   // 4..12
    const int theta = 1 + static_cast<int>(rng.next_below(6));       // 1..6
    const double p = 0.05 + 0.45 * rng.next_double();
    const TorusShape shape(d, n, theta);
    const Configuration initial = sample_initial(shape, p, rng);
    const DynamicsResult slow = evolve(initial);
    GrowthEngine engine(shape);
    engine.set_validate_counters(true);
    const DynamicsResult fast = engine.run(initial);
    const bool match = slow.final == fast.final && slow.rounds == fast.rounds &&
                       slow.newly_opened == fast.newly_opened &&
                       slow.spanned == fast.spanned &&
                       slow.open_line_found == fast.open_line_found &&
                       slow.open_plane_found == fast.open_plane_found &&
                       slow.above_threshold_initial == fast.above_threshold_initial;
    if (!match) {
      ++result.mismatches;
      if (result.first_mismatch.empty()) {
        std::ostringstream msg;
        msg << "instance " << i << " d=" << d << " n=" << n
            << " theta=" << theta << " p=" << p;
        result.first_mismatch = msg.str();
      }
    }
  }
  return result;
}

}  // namespace hamming_boot
