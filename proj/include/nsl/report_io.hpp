#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "nsl/checks.hpp"
#include "nsl/hardness.hpp"

namespace nsl {

enum class OutputFormat { json, csv, table };

/// Parses "json", "csv" or "table"; throws ParseError.
OutputFormat parse_output_format(const std::string& text);

nlohmann::json report_to_json(const CheckReport& report);
/// One row per report: name, verdict, min_margin, uncertainty, argmin, counts, runtime.
std::string reports_csv(const std::vector<CheckReport>& reports);
std::string reports_table(const std::vector<CheckReport>& reports);

nlohmann::json constant_to_json(const ConstantResult& result);

/// Formats a real with 17 significant digits (round-trippable).
std::string format_real(double value);

/// Fixed-width text table; the first row is the header.
std::string text_table(const std::vector<std::vector<std::string>>& rows);
std::string csv_rows(const std::vector<std::vector<std::string>>& rows);

}  // namespace nsl
