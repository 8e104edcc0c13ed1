#include "degen/report.hpp"

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "degen/version.hpp"
#include "degen/xyz_io.hpp"

namespace degen {

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "text") return OutputFormat::text;
  throw InvalidInputError("unknown output format: " + name);
}

std::string current_utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Json to_json(const ReportEnvelope& envelope) {
  return Json{{"version", kVersion},
                        {"command", envelope.command},
                        {"params", envelope.params},
                        {"timestamp", envelope.timestamp},
                        {"payload", envelope.payload}};
}

Json to_json(const CountResult& result) {
  return Json{
      {"degenerate_count", result.degenerate_count},
      {"total_subsets", result.total_subsets},
      {"mode", result.mode == CountMode::exhaustive ? "exhaustive" : "sampled"},
      {"ci_low", result.ci_low},
      {"ci_high", result.ci_high},
      {"samples_used", result.samples_used}};
}

Json to_json(const ComparisonReport& report) {
  Json params{{"n_points", report.params.n_points},
                        {"dim", report.params.dim},
                        {"subset_size", report.params.subset_size},
                        {"epsilon", report.params.epsilon},
                        {"seed", report.params.seed}};
  if (report.params.grid_step) params["grid_step"] = *report.params.grid_step;
  if (report.params.noise_sigma) params["noise_sigma"] = *report.params.noise_sigma;
  Json j{{"analytic_expectation", report.analytic_expectation},
                   {"empirical", to_json(report.empirical)},
                   {"ratio_defined", report.ratio_defined},
                   {"analytic_outside_ci", report.analytic_outside_ci},
                   {"params", params}};
  if (report.ratio_defined) j["ratio"] = report.ratio;
  return j;
}

Json to_json(const ExpectationTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"n", row.n_points},
                    {"collinear_random", row.collinear_random},
                    {"collinear_quantized", row.collinear_quantized},
                    {"coplanar_random", row.coplanar_random},
                    {"coplanar_quantized", row.coplanar_quantized}});
  }
  return Json{{"eps_collinear", table.eps_collinear},
                        {"eps_coplanar", table.eps_coplanar},
                        {"amplification",
                         {{"collinear", table.amplification.collinear},
                          {"coplanar", table.amplification.coplanar}}},
                        {"rows", rows}};
}

namespace {

std::string scalar_to_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

void flatten(const Json& node, const std::string& prefix,
             std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      flatten(node[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ',' << scalar_to_string(node) << '\n';
  }
}

// "rows": [ {col: val, ...}, ... ]  ->  CSV matrix with a header line.
std::string rows_to_csv(const Json& rows) {
  std::ostringstream out;
  bool header_done = false;
  for (const auto& row : rows) {
    if (!header_done) {
      bool first = true;
      for (const auto& [key, value] : row.items()) {
        (void)value;
        out << (first ? "" : ",") << key;
        first = false;
      }
      out << '\n';
      header_done = true;
    }
    bool first = true;
    for (const auto& [key, value] : row.items()) {
      (void)key;
      out << (first ? "" : ",") << scalar_to_string(value);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

void render_text(const Json& node, const std::string& indent,
                 std::ostringstream& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object() || value.is_array()) {
        out << indent << key << ":\n";
        render_text(value, indent + "  ", out);
      } else {
        out << indent << key << ": " << scalar_to_string(value) << '\n';
      }
    }
  } else if (node.is_array()) {
    for (const auto& item : node) {
      if (item.is_object() || item.is_array()) {
        out << indent << "-\n";
        render_text(item, indent + "  ", out);
      } else {
        out << indent << "- " << scalar_to_string(item) << '\n';
      }
    }
  } else {
    out << indent << scalar_to_string(node) << '\n';
  }
}

}  // namespace

std::string render_report(const ReportEnvelope& envelope, OutputFormat format) {
  switch (format) {
    case OutputFormat::json:
      return to_json(envelope).dump(2) + "\n";
    case OutputFormat::csv: {
      if (envelope.payload.is_object() && envelope.payload.contains("rows") &&
          envelope.payload["rows"].is_array()) {
        return rows_to_csv(envelope.payload["rows"]);
      }
      std::ostringstream out;
      out << "key,value\n";
      flatten(envelope.payload, "", out);
      return out.str();
    }
    case OutputFormat::text: {
      std::ostringstream out;
      out << "command: " << envelope.command << '\n';
      render_text(envelope.payload, "", out);
      return out.str();
    }
  }
  throw InvalidInputError("unreachable output format");
}

}  // namespace degen
