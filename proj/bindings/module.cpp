// Python bindings for the main operations: geometry, growth dynamics,
// configuration detectors, closed-form analytics and the Monte Carlo
// harness. Exact rationals cross the boundary as fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hamming_boot/analytics.hpp"
#include "hamming_boot/detectors.hpp"
#include "hamming_boot/dynamics.hpp"
#include "hamming_boot/io.hpp"
#include "hamming_boot/montecarlo.hpp"

namespace py = pybind11;
namespace hb = hamming_boot;

namespace {

py::object to_fraction(const hb::Rational& r) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(hb::rational_string(r));
}

hb::Rational rational_from(py::handle value) {
  if (py::isinstance<py::int_>(value))
    return hb::Rational(hb::BigInt(py::str(value).cast<std::string>()));
  if (py::isinstance<py::str>(value))
    return hb::parse_rational(value.cast<std::string>());
  // Fraction or anything exposing numerator/denominator.
  if (py::hasattr(value, "numerator") && py::hasattr(value, "denominator")) {
    return hb::Rational(
        hb::BigInt(py::str(value.attr("numerator")).cast<std::string>()),
        hb::BigInt(py::str(value.attr("denominator")).cast<std::string>()));
  }
  throw hb::DomainError("expected int, str or Fraction for a rational value");
}

hb::Scaling scaling_from(std::optional<double> p, std::optional<double> a,
                         std::optional<py::object> alpha) {
  if (p) {
    if (a || alpha)
      throw hb::DomainError("give either p or (a, alpha), not both");
    return hb::Scaling::raw(*p);
  }
  if (!a || !alpha) throw hb::DomainError("need p or both a and alpha");
  return hb::Scaling::critical(*a, rational_from(*alpha));
}

py::dict report_to_dict(const hb::EstimateReport& report) {
  py::dict out;
  out["d"] = report.d;
  out["n"] = report.n;
  out["theta"] = report.theta;
  out["p"] = report.p;
  out["p_clamped"] = report.p_clamped;
  out["replicas"] = report.replicas;
  out["seed"] = report.seed;
  out["ci_level"] = report.ci_level;
  out["mean_rounds"] = report.mean_rounds;
  out["count_identity_held"] = report.count_identity_held;
  out["warnings"] = report.warnings;
  py::dict events;
  for (const hb::EventEstimate& e : report.events) {
    py::dict row;
    row["successes"] = e.successes;
    row["replicas"] = e.replicas;
    row["p_hat"] = e.p_hat;
    row["ci_low"] = e.ci_low;
    row["ci_high"] = e.ci_high;
    events[py::str(e.event)] = row;
  }
  out["events"] = events;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bootstrap percolation on Hamming tori: dynamics engines, "
            "configuration detectors, closed-form limits and Monte Carlo "
            "estimation";

  py::register_exception<hb::ResourceError>(m, "ResourceError",
                                            PyExc_RuntimeError);
  py::register_exception<hb::DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<hb::TorusShape>(m, "TorusShape")
      .def(py::init<int, int64_t, int>(), py::arg("d"), py::arg("n"),
           py::arg("theta"))
      .def_property_readonly("d", &hb::TorusShape::d)
      .def_property_readonly("n", &hb::TorusShape::n)
      .def_property_readonly("theta", &hb::TorusShape::theta)
      .def_property_readonly("vertex_count", &hb::TorusShape::vertex_count)
      .def_property_readonly("line_count", &hb::TorusShape::line_count)
      .def_property_readonly("plane_count", &hb::TorusShape::plane_count)
      .def("__repr__", [](const hb::TorusShape& s) {
        return "TorusShape(d=" + std::to_string(s.d()) +
               ", n=" + std::to_string(s.n()) +
               ", theta=" + std::to_string(s.theta()) + ")";
      });

  py::class_<hb::Configuration>(m, "Configuration")
      .def(py::init<const hb::TorusShape&>(), py::arg("shape"))
      .def(py::init<const hb::TorusShape&, const std::vector<hb::Vertex>&>(),
           py::arg("shape"), py::arg("open"))
      .def_property_readonly("shape", &hb::Configuration::shape)
      .def_property_readonly("open_count", &hb::Configuration::open_count)
      .def("is_open", &hb::Configuration::is_open, py::arg("vertex"))
      .def("open_vertices", &hb::Configuration::open_vertices)
      .def("__eq__", [](const hb::Configuration& a, const hb::Configuration& b) {
        return a == b;
      });

  py::class_<hb::DynamicsResult>(m, "DynamicsResult")
      .def_readonly("final", &hb::DynamicsResult::final)
      .def_readonly("rounds", &hb::DynamicsResult::rounds)
      .def_readonly("newly_opened", &hb::DynamicsResult::newly_opened)
      .def_readonly("spanned", &hb::DynamicsResult::spanned)
      .def_readonly("open_line_found", &hb::DynamicsResult::open_line_found)
      .def_readonly("open_plane_found", &hb::DynamicsResult::open_plane_found)
      .def_readonly("above_threshold_initial",
                    &hb::DynamicsResult::above_threshold_initial);

  py::class_<hb::ConfigCounts>(m, "ConfigCounts")
      .def_readonly("basic", &hb::ConfigCounts::basic)
      .def_readonly("enhanced_basic", &hb::ConfigCounts::enhanced_basic)
      .def_readonly("line", &hb::ConfigCounts::line)
      .def_readonly("line_empty", &hb::ConfigCounts::line_empty)
      .def_readonly("enhanced_line", &hb::ConfigCounts::enhanced_line)
      .def_readonly("non_enhanced_line", &hb::ConfigCounts::non_enhanced_line)
      .def_property_readonly("line_total", &hb::ConfigCounts::line_total)
      .def_property_readonly("enhanced_line_total",
                             &hb::ConfigCounts::enhanced_line_total)
      .def_property_readonly("non_enhanced_line_total",
                             &hb::ConfigCounts::non_enhanced_line_total);

  // geometry
  m.def("neighborhood", &hb::neighborhood, py::arg("shape"), py::arg("vertex"));
  m.def("neighborhood_of_set", &hb::neighborhood_of_set, py::arg("shape"),
        py::arg("vertices"));
  m.def("hamming_distance", &hb::hamming_distance);
  m.def(
      "sample_initial",
      [](const hb::TorusShape& shape, double p, uint64_t seed, uint64_t replica) {
        hb::Rng rng = hb::Rng::split(seed, replica);
        return hb::sample_initial(shape, p, rng);
      },
      py::arg("shape"), py::arg("p"), py::arg("seed"), py::arg("replica") = 0);

  // dynamics
  m.def("step", &hb::step, py::arg("config"));
  m.def("evolve", &hb::evolve, py::arg("config"));
  m.def("evolve_fast", &hb::evolve_fast, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("above_threshold", &hb::above_threshold, py::arg("config"));
  m.def("open_line_exists", &hb::open_line_exists, py::arg("config"));
  m.def("open_plane_exists", &hb::open_plane_exists, py::arg("config"));

  // detectors
  m.def("is_basic_at", &hb::is_basic_at, py::arg("config"), py::arg("vertex"));
  m.def("count_basic", &hb::count_basic, py::arg("config"));
  m.def("count_enhanced_basic", &hb::count_enhanced_basic, py::arg("config"));
  m.def("count_line_events", &hb::count_line_events, py::arg("config"));
  m.def("count_configurations", &hb::count_configurations, py::arg("config"));
  m.def(
      "classify_good",
      [](const hb::Configuration& config) {
        return std::string(hb::good_class_name(hb::classify_good(config)));
      },
      py::arg("config"));
  m.def(
      "detect_f_line",
      [](const hb::Configuration& config, const std::vector<int32_t>& base) {
        return hb::detect_F_line(config, hb::LineId{1, base});
      },
      py::arg("config"), py::arg("base"),
      "Three-step witness for the axis-1 line with the given fixed "
      "coordinates");

  // analytics
  m.def("spanning_limit_2d", &hb::spanning_limit_2d, py::arg("theta"),
        py::arg("a"));
  m.def("spanning_limit_3d_theta3", &hb::spanning_limit_3d_theta3, py::arg("a"));
  m.def("good_probability_limit", &hb::good_probability_limit, py::arg("a"));
  m.def(
      "poisson_means",
      [](double a) {
        const hb::PoissonMeans means = hb::poisson_means(a);
        py::dict out;
        out["basic"] = means.basic;
        out["enhanced_basic"] = means.enhanced_basic;
        out["line"] = means.line;
        out["line_empty_axis"] = means.line_empty_axis;
        out["non_enhanced_line_axis"] = means.non_enhanced_line_axis;
        out["enhanced_line"] = means.enhanced_line;
        return out;
      },
      py::arg("a"));
  m.def(
      "spanning_decay_exponent_2d",
      [](int theta, py::object alpha) {
        return to_fraction(hb::spanning_decay_exponent_2d(theta, rational_from(alpha)));
      },
      py::arg("theta"), py::arg("alpha"));
  m.def(
      "lower_exponent",
      [](int d, int theta) { return to_fraction(hb::lower_exponent(d, theta)); },
      py::arg("d"), py::arg("theta"));
  m.def(
      "upper_exponent",
      [](int d, int theta) {
        const hb::UpperBound bound = hb::upper_exponent(d, theta);
        return py::make_tuple(to_fraction(bound.value),
                              std::string(hb::upper_bound_source_name(bound.source)));
      },
      py::arg("d"), py::arg("theta"));
  m.def(
      "plane_threshold_exponent_bounds",
      [](int d, int theta) {
        const auto bounds = hb::plane_threshold_exponent_bounds(d, theta);
        return py::make_tuple(bounds.lower_exponent, bounds.upper_exponent,
                              bounds.theta_below_validity);
      },
      py::arg("d"), py::arg("theta"));
  m.def(
      "exponent_table",
      [](int d, int theta_lo, int theta_hi) {
        py::list rows;
        for (const hb::ExponentBounds& row :
             hb::exponent_table(d, theta_lo, theta_hi)) {
          py::dict item;
          item["d"] = row.d;
          item["theta"] = row.theta;
          item["lower"] = to_fraction(row.lower);
          item["upper"] = to_fraction(row.upper);
          item["upper_source"] = hb::upper_bound_source_name(row.upper_source);
          rows.append(item);
        }
        return rows;
      },
      py::arg("d"), py::arg("theta_lo"), py::arg("theta_hi"));

  // monte carlo
  m.def(
      "run_experiment",
      [](const hb::TorusShape& shape, std::optional<double> p,
         std::optional<double> a, std::optional<py::object> alpha,
         const std::vector<std::string>& events, int64_t replicas,
         uint64_t seed, double ci_level) {
        hb::ExperimentSpec spec{shape, scaling_from(p, a, alpha)};
        for (const std::string& name : events) {
          const auto kind = hb::event_kind_from_name(name);
          if (!kind) throw hb::DomainError("unknown event '" + name + "'");
          spec.events.push_back(*kind);
        }
        spec.replicas = replicas;
        spec.seed = seed;
        spec.ci_level = ci_level;
        hb::EstimateReport report;
        {
          py::gil_scoped_release release;
          report = hb::run(spec);
        }
        return report_to_dict(report);
      },
      py::arg("shape"), py::arg("p") = std::nullopt, py::arg("a") = std::nullopt,
      py::arg("alpha") = std::nullopt,
      py::arg("events") = std::vector<std::string>{"spanned"},
      py::arg("replicas") = 1000, py::arg("seed") = 0,
      py::arg("ci_level") = 0.99);
  m.def(
      "exact_probability",
      [](const hb::TorusShape& shape, double p, const std::string& event) {
        const auto kind = hb::event_kind_from_name(event);
        if (!kind) throw hb::DomainError("unknown event '" + event + "'");
        return hb::exact_probability(shape, p, *kind);
      },
      py::arg("shape"), py::arg("p"), py::arg("event") = "spanned");
  m.def(
      "wilson_interval",
      [](int64_t successes, int64_t trials, double ci_level) {
        double p_hat, lo, hi;
        hb::wilson_interval(successes, trials, ci_level, &p_hat, &lo, &hi);
        return py::make_tuple(p_hat, lo, hi);
      },
      py::arg("successes"), py::arg("trials"), py::arg("ci_level") = 0.99);
}
