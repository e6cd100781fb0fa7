#include "nsl/report_io.hpp"

#include <cmath>
#include <sstream>

#include "nsl/errors.hpp"

namespace nsl {
namespace {

nlohmann::json real(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

nlohmann::json named(const std::vector<NamedValue>& values) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& v : values) out[v.name] = real(v.value);
  return out;
}

std::string argmin_text(const CheckReport& r) {
  std::string s;
  for (const auto& a : r.argmin) {
    if (!s.empty()) s += ' ';
    s += a.name + "=" + format_real(a.value);
  }
  return s;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "table") return OutputFormat::table;
  throw ParseError("unknown output format '" + text + "' (expected json, csv or table)");
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

nlohmann::json report_to_json(const CheckReport& r) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : r.grid.axes) {
    axes.push_back({{"name", a.name}, {"min", real(a.min)}, {"max", real(a.max)}, {"count", a.count}, {"log", a.log}});
  }
  return {{"check", r.name},
          {"statement", r.statement},
          {"params", named(r.params)},
          {"grid", {{"axes", axes}, {"total_points", r.grid.total_points}}},
          {"min_margin", real(r.min_margin)},
          {"argmin", named(r.argmin)},
          {"verdict", r.passed ? "pass" : "fail"},
          {"evaluated", r.evaluated},
          {"violations", r.violations},
          {"excluded", r.excluded},
          {"uncertainty", real(r.uncertainty)},
          {"runtime_seconds", r.runtime_seconds},
          {"details", named(r.details)},
          {"notes", r.notes},
          {"warnings", r.warnings}};
}

std::string csv_rows(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string text_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t i = 0; i < rows[r].size(); ++i) {
      out += rows[r][i];
      if (i + 1 < rows[r].size()) out += std::string(width[i] - rows[r][i].size() + 2, ' ');
    }
    out += '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      out += std::string(total > 2 ? total - 2 : 0, '-') + '\n';
    }
  }
  return out;
}

namespace {
std::vector<std::vector<std::string>> report_rows(const std::vector<CheckReport>& reports) {
  std::vector<std::vector<std::string>> rows = {
      {"check", "verdict", "min_margin", "uncertainty", "argmin", "evaluated", "violations", "excluded", "warnings", "runtime_s"}};
  for (const auto& r : reports) {
    std::ostringstream rt;
    rt.precision(3);
    rt << r.runtime_seconds;
    rows.push_back({r.name, r.passed ? "pass" : "fail", format_real(r.min_margin), format_real(r.uncertainty),
                    argmin_text(r), std::to_string(r.evaluated), std::to_string(r.violations),
                    std::to_string(r.excluded), std::to_string(r.warnings.size()), rt.str()});
  }
  return rows;
}
}  // namespace

std::string reports_csv(const std::vector<CheckReport>& reports) { return csv_rows(report_rows(reports)); }

std::string reports_table(const std::vector<CheckReport>& reports) {
  std::string out = text_table(report_rows(reports));
  for (const auto& r : reports) {
    for (const auto& w : r.warnings) out += "warning [" + r.name + "]: " + w + '\n';
  }
  return out;
}

nlohmann::json constant_to_json(const ConstantResult& c) {
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [k, v] : c.details) details[k] = real(v);
  nlohmann::json out = {{"name", c.name},
                        {"value", c.value},
                        {"argmin", c.argmin},
                        {"interval", {c.lo, c.hi}},
                        {"argmin_tolerance", c.tolerance},
                        {"attained_at_endpoint", c.attained_at_endpoint},
                        {"conditional", c.conditional},
                        {"details", details},
                        {"runtime_seconds", c.runtime_seconds}};
  if (c.name == "beta3") out["monotone"] = c.monotone;
  return out;
}

}  // namespace nsl
