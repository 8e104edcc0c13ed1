#pragma once

#include <string>

#include <json.hpp>

#include "degen/analytics.hpp"
#include "degen/montecarlo.hpp"

namespace degen {

/// Insertion-ordered JSON: reports render fields in a stable, readable
/// order and serialize deterministically.
using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, text };

OutputFormat parse_output_format(const std::string& name);

/// Machine-readable result wrapper. Re-running the echoed parameters
/// reproduces the payload byte-for-byte; only the timestamp varies.
struct ReportEnvelope {
  std::string command;
  Json params;
  std::string timestamp;
  Json payload;
};

Json to_json(const ReportEnvelope& envelope);

/// Renders the envelope as JSON, flattened CSV, or readable text. Payloads
/// holding a "rows" array of flat objects become a proper CSV matrix.
std::string render_report(const ReportEnvelope& envelope, OutputFormat format);

std::string current_utc_timestamp();

Json to_json(const CountResult& result);
Json to_json(const ComparisonReport& report);
Json to_json(const ExpectationTable& table);

}  // namespace degen
