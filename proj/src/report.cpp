#include "perron/report.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "perron/errors.hpp"
#include "perron/tensor_io.hpp"

namespace perron {

namespace {

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : std::string("nan"); }

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

double json_number(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + s + "'");
}

ReportFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".json" ? ReportFormat::json : ReportFormat::csv;
}

void write_report(std::ostream& out, std::span<const ReportRow> rows, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "method,lambda,residual,iters,newton_iters,time_ms,termination\n";
    for (const auto& r : rows) {
      out << r.method << ',' << csv_number(r.lambda) << ',' << csv_number(r.residual) << ',' << r.iters << ',';
      if (r.newton_iters) out << *r.newton_iters;
      out << ',' << csv_number(r.time_ms) << ',' << r.termination << '\n';
    }
    return;
  }
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"method", r.method},
                   {"lambda", number_or_null(r.lambda)},
                   {"residual", number_or_null(r.residual)},
                   {"iters", r.iters},
                   {"newton_iters", r.newton_iters ? nlohmann::json(*r.newton_iters) : nlohmann::json(nullptr)},
                   {"time_ms", number_or_null(r.time_ms)},
                   {"termination", r.termination}});
  }
  out << doc.dump(2) << '\n';
}

void emit_report(std::span<const ReportRow> rows, ReportFormat format, const std::filesystem::path& dest) {
  if (rows.empty()) throw std::invalid_argument("report has no rows");
  std::ostringstream buf;
  write_report(buf, rows, format);
  std::ofstream out(dest);
  if (!out) throw std::runtime_error("cannot write " + dest.string());
  out << buf.str();
  if (!out) throw std::runtime_error("write failed for " + dest.string());
}

std::vector<ReportRow> read_json_report(std::istream& in) {
  const auto doc = nlohmann::json::parse(in);
  std::vector<ReportRow> rows;
  for (const auto& j : doc) {
    ReportRow r;
    r.method = j.at("method").get<std::string>();
    r.lambda = json_number(j.at("lambda"));
    r.residual = json_number(j.at("residual"));
    r.iters = j.at("iters").get<int>();
    if (!j.at("newton_iters").is_null()) r.newton_iters = j.at("newton_iters").get<int>();
    r.time_ms = json_number(j.at("time_ms"));
    r.termination = j.at("termination").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace perron
