#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wrad/fock.hpp"
#include "wrad/mc.hpp"

namespace wrad {

// %.17g: round-trippable and locale-independent.
std::string format_double(double v);

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(const std::string& name);

// Comparison rows. JSON output is one object per line with fields in the
// fixed order check, closed_form, estimate, std_error, z, pass; CSV uses
// the same columns with a header row.
std::string render(std::span<const CompareReport> rows, ReportFormat format);

// Fock verification rows: check, closed_form, reference, then abs_err for
// exact checks or z_score for Monte Carlo checks, then pass.
std::string render(std::span<const FockCheck> rows, ReportFormat format);

// Single flat record with fields emitted in the given order.
std::string render_record(std::span<const std::pair<std::string, double>> fields,
                          ReportFormat format);

// Writes text to the path, or to stdout when the path is empty.
void write_output(const std::string& text, const std::string& path);

}  // namespace wrad
