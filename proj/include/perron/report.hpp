#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "perron/experiment.hpp"

namespace perron {

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& s);
/// json for a ".json" extension, csv otherwise.
ReportFormat format_for_path(const std::filesystem::path& path);

/// Columns: method,lambda,residual,iters,newton_iters,time_ms,termination
void write_report(std::ostream& out, std::span<const ReportRow> rows, ReportFormat format);

/// Throws std::invalid_argument on empty rows (nothing is created) and
/// std::runtime_error if `dest` cannot be written.
void emit_report(std::span<const ReportRow> rows, ReportFormat format, const std::filesystem::path& dest);

std::vector<ReportRow> read_json_report(std::istream& in);

}  // namespace perron
