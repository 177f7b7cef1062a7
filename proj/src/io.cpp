#include "hamming_boot/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace hamming_boot {

using nlohmann::json;

namespace {

constexpr const char* kCsvHeader =
    "d,n,theta,alpha,a,p,event,replicas,successes,p_hat,ci_low,ci_high,seed,"
    "mean_rounds";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(field);
  return fields;
}

// Line number of a byte offset, for parse error messages.
int line_of_offset(const std::string& text, size_t offset) {
  int line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json_or_throw(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(where + ": line " +
                      std::to_string(line_of_offset(text, e.byte)) + ": " +
                      e.what());
  }
}

void reject_unknown_keys(const json& object, const std::vector<std::string>& known,
                         const std::string& where) {
  for (const auto& item : object.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw DomainError(where + ": unknown field '" + item.key() + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<ResultRow> rows_from_report(const EstimateReport& report) {
  std::vector<ResultRow> rows;
  rows.reserve(report.events.size());
  for (const EventEstimate& event : report.events) {
    ResultRow row;
    row.d = report.d;
    row.n = report.n;
    row.theta = report.theta;
    if (!report.scaling.is_raw) {
      row.alpha = rational_string(report.scaling.alpha);
      row.a = report.scaling.a;
    }
    row.p = report.p;
    row.event = event.event;
    row.replicas = event.replicas;
    row.successes = event.successes;
    row.p_hat = event.p_hat;
    row.ci_low = event.ci_low;
    row.ci_high = event.ci_high;
    row.seed = report.seed;
    row.mean_rounds = report.mean_rounds;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << "\n";
  for (const ResultRow& row : rows) {
    out << row.d << ',' << row.n << ',' << row.theta << ',' << row.alpha << ','
        << (row.a ? format_double(*row.a) : "") << ',' << format_double(row.p)
        << ',' << row.event << ',' << row.replicas << ',' << row.successes
        << ',' << format_double(row.p_hat) << ',' << format_double(row.ci_low)
        << ',' << format_double(row.ci_high) << ',' << row.seed << ','
        << format_double(row.mean_rounds) << "\n";
  }
}

std::vector<ResultRow> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw DomainError("read_rows_csv: empty input");
  if (line != kCsvHeader)
    throw DomainError("read_rows_csv: unexpected header '" + line + "'");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 14)
      throw DomainError("read_rows_csv: expected 14 fields, got " +
                        std::to_string(f.size()));
    ResultRow row;
    row.d = std::stoi(f[0]);
    row.n = std::stoll(f[1]);
    row.theta = std::stoi(f[2]);
    row.alpha = f[3];
    if (!f[4].empty()) row.a = std::stod(f[4]);
    row.p = std::stod(f[5]);
    row.event = f[6];
    row.replicas = std::stoll(f[7]);
    row.successes = std::stoll(f[8]);
    row.p_hat = std::stod(f[9]);
    row.ci_low = std::stod(f[10]);
    row.ci_high = std::stod(f[11]);
    row.seed = std::stoull(f[12]);
    row.mean_rounds = std::stod(f[13]);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json row_to_json(const ResultRow& row) {
  json object{
      {"d", row.d},
      {"n", row.n},
      {"theta", row.theta},
      {"p", row.p},
      {"event", row.event},
      {"replicas", row.replicas},
      {"successes", row.successes},
      {"p_hat", row.p_hat},
      {"ci_low", row.ci_low},
      {"ci_high", row.ci_high},
      {"seed", row.seed},
      {"mean_rounds", row.mean_rounds},
  };
  if (!row.alpha.empty()) object["alpha"] = row.alpha;
  if (row.a) object["a"] = *row.a;
  return object;
}

}  // namespace

void write_rows_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  json array = json::array();
  for (const ResultRow& row : rows) array.push_back(row_to_json(row));
  out << array.dump(2) << "\n";
}

void write_results(const std::vector<ResultRow>& rows, const std::string& path,
                   const std::string& format) {
  if (format != "csv" && format != "json")
    throw DomainError("write_results: format must be csv or json");
  auto emit = [&](std::ostream& out) {
    if (format == "csv")
      write_rows_csv(out, rows);
    else
      write_rows_json(out, rows);
  };
  if (path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("write_results: cannot open " + path);
  emit(out);
  if (!out) throw ResourceError("write_results: write failed for " + path);
}

CsvStreamWriter::CsvStreamWriter(const std::string& path,
                                 std::ostream* fallback_stdout)
    : out_(nullptr), owned_(nullptr) {
  if (path == "-") {
    out_ = fallback_stdout;
  } else {
    auto* file = new std::ofstream(path, std::ios::binary);
    if (!*file) {
      delete file;
      throw ResourceError("cannot open " + path);
    }
    owned_ = file;
    out_ = file;
  }
}

CsvStreamWriter::~CsvStreamWriter() {
  delete static_cast<std::ofstream*>(owned_);
}

void CsvStreamWriter::append(const std::vector<ResultRow>& rows) {
  std::ostringstream buffer;
  write_rows_csv(buffer, rows);
  std::string text = buffer.str();
  if (wrote_header_) text = text.substr(text.find('\n') + 1);
  wrote_header_ = true;
  (*out_) << text << std::flush;
}

RunConfig parse_config_json(const std::string& text) {
  const json object = parse_json_or_throw(text, "run config");
  if (!object.is_object()) throw DomainError("run config: expected an object");
  reject_unknown_keys(
      object,
      {"command", "d", "n", "theta", "p", "a", "alpha", "events", "replicas",
       "seed", "ci_level", "n_values", "a_values", "alpha_values", "output",
       "format", "verbosity"},
      "run config");
  RunConfig config;
  try {
    config.command = object.value("command", config.command);
    config.d = object.value("d", config.d);
    config.n = object.value("n", config.n);
    config.theta = object.value("theta", config.theta);
    if (object.contains("p")) config.p = object["p"].get<double>();
    if (object.contains("a")) config.a = object["a"].get<double>();
    if (object.contains("alpha")) config.alpha = object["alpha"].get<std::string>();
    if (object.contains("events"))
      config.events = object["events"].get<std::vector<std::string>>();
    config.replicas = object.value("replicas", config.replicas);
    config.seed = object.value("seed", config.seed);
    config.ci_level = object.value("ci_level", config.ci_level);
    if (object.contains("n_values"))
      config.n_values = object["n_values"].get<std::vector<int64_t>>();
    if (object.contains("a_values"))
      config.a_values = object["a_values"].get<std::vector<double>>();
    if (object.contains("alpha_values"))
      config.alpha_values =
          object["alpha_values"].get<std::vector<std::string>>();
    config.output = object.value("output", config.output);
    config.format = object.value("format", config.format);
    config.verbosity = object.value("verbosity", config.verbosity);
  } catch (const json::exception& e) {
    throw DomainError(std::string("run config: ") + e.what());
  }
  if (config.command != "simulate" && config.command != "sweep")
    throw DomainError("run config: command must be simulate or sweep");
  return config;
}

RunConfig read_config(const std::string& path) {
  return parse_config_json(read_file(path));
}

std::string config_to_json(const RunConfig& config) {
  json object{
      {"command", config.command}, {"d", config.d},
      {"n", config.n},             {"theta", config.theta},
      {"events", config.events},   {"replicas", config.replicas},
      {"seed", config.seed},       {"ci_level", config.ci_level},
      {"output", config.output},   {"format", config.format},
      {"verbosity", config.verbosity},
  };
  if (config.p) object["p"] = *config.p;
  if (config.a) object["a"] = *config.a;
  if (config.alpha) object["alpha"] = *config.alpha;
  if (!config.n_values.empty()) object["n_values"] = config.n_values;
  if (!config.a_values.empty()) object["a_values"] = config.a_values;
  if (!config.alpha_values.empty()) object["alpha_values"] = config.alpha_values;
  return object.dump(2) + "\n";
}

void write_config(const RunConfig& config, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("write_config: cannot open " + path);
  out << config_to_json(config);
}

namespace {

Scaling scaling_from_config(const RunConfig& config) {
  if (config.p) {
    if (config.a || config.alpha)
      throw DomainError("config: give either p or (a, alpha), not both");
    return Scaling::raw(*config.p);
  }
  if (!config.a || !config.alpha)
    throw DomainError("config: need p or both a and alpha");
  return Scaling::critical(*config.a, parse_rational(*config.alpha));
}

}  // namespace

ExperimentSpec experiment_from_config(const RunConfig& config) {
  ExperimentSpec spec{TorusShape(config.d, config.n, config.theta),
                      scaling_from_config(config)};
  for (const std::string& name : config.events) {
    const auto kind = event_kind_from_name(name);
    if (!kind) throw DomainError("config: unknown event '" + name + "'");
    spec.events.push_back(*kind);
  }
  spec.replicas = config.replicas;
  spec.seed = config.seed;
  spec.ci_level = config.ci_level;
  return spec;
}

SweepSpec sweep_from_config(const RunConfig& config) {
  SweepSpec spec{experiment_from_config(config), config.n_values, {}, {}};
  if (spec.n_values.empty()) spec.n_values = {config.n};
  spec.a_values = config.a_values;
  for (const std::string& text : config.alpha_values)
    spec.alpha_values.push_back(parse_rational(text));
  return spec;
}

Configuration read_configuration_file(const std::string& path) {
  const std::string text = read_file(path);
  const json object = parse_json_or_throw(text, path);
  reject_unknown_keys(object, {"d", "n", "theta", "open"}, path);
  try {
    const TorusShape shape(object.at("d").get<int>(),
                           object.at("n").get<int64_t>(),
                           object.at("theta").get<int>());
    std::vector<Vertex> open;
    for (const auto& coords : object.at("open"))
      open.push_back(coords.get<Vertex>());
    return Configuration(shape, open);
  } catch (const json::exception& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void write_exponent_table_csv(std::ostream& out,
                              const std::vector<ExponentBounds>& rows) {
  out << "d,theta,lower,upper,upper_source\n";
  for (const ExponentBounds& row : rows) {
    out << row.d << ',' << row.theta << ',' << rational_string(row.lower)
        << ',' << rational_string(row.upper) << ','
        << upper_bound_source_name(row.upper_source) << "\n";
  }
}

void write_figure_csv(std::ostream& out, const std::vector<FigurePoint>& points) {
  out << "theta,alpha,bound_type,value\n";
  for (const FigurePoint& point : points) {
    out << point.theta << ',' << format_double(point.alpha) << ','
        << point.bound_type << ',' << format_double(point.value) << "\n";
  }
}

}  // namespace hamming_boot
