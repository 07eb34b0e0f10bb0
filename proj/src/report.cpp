#include "wrad/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace wrad {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ReportFormat parse_report_format(const std::string& name) {
    if (name == "json") return ReportFormat::kJson;
    if (name == "csv") return ReportFormat::kCsv;
    throw DomainError("unknown report format '" + name + "'");
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string render(std::span<const CompareReport> rows, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::kCsv) {
        out += "check,closed_form,estimate,std_error,z,pass\n";
        for (const CompareReport& r : rows) {
            out += r.check + ',' + format_double(r.closed_form) + ',' +
                   format_double(r.estimate) + ',' + format_double(r.std_error) + ',' +
                   format_double(r.z_score) + ',' + (r.pass ? "true" : "false") + '\n';
        }
        return out;
    }
    for (const CompareReport& r : rows) {
        out += "{\"check\":\"" + json_escape(r.check) +
               "\",\"closed_form\":" + format_double(r.closed_form) +
               ",\"estimate\":" + format_double(r.estimate) +
               ",\"std_error\":" + format_double(r.std_error) +
               ",\"z\":" + format_double(r.z_score) +
               ",\"pass\":" + (r.pass ? "true" : "false") + "}\n";
    }
    return out;
}

std::string render(std::span<const FockCheck> rows, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::kCsv) {
        out += "check,closed_form,reference,abs_err,z_score,pass\n";
        for (const FockCheck& r : rows) {
            out += r.check + ',' + format_double(r.computed) + ',' +
                   format_double(r.reference) + ',' +
                   (r.is_mc ? "" : format_double(r.abs_err)) + ',' +
                   (r.is_mc ? format_double(r.z_score) : "") + ',' +
                   (r.pass ? "true" : "false") + '\n';
        }
        return out;
    }
    for (const FockCheck& r : rows) {
        out += "{\"check\":\"" + json_escape(r.check) +
               "\",\"closed_form\":" + format_double(r.computed) +
               ",\"reference\":" + format_double(r.reference) + ',';
        if (r.is_mc) {
            out += "\"z_score\":" + format_double(r.z_score);
        } else {
            out += "\"abs_err\":" + format_double(r.abs_err);
        }
        out += std::string(",\"pass\":") + (r.pass ? "true" : "false") + "}\n";
    }
    return out;
}

std::string render_record(std::span<const std::pair<std::string, double>> fields,
                          ReportFormat format) {
    std::string out;
    if (format == ReportFormat::kCsv) {
        for (size_t i = 0; i < fields.size(); ++i) {
            out += fields[i].first;
            out += i + 1 < fields.size() ? ',' : '\n';
        }
        for (size_t i = 0; i < fields.size(); ++i) {
            out += format_double(fields[i].second);
            out += i + 1 < fields.size() ? ',' : '\n';
        }
        return out;
    }
    out += '{';
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += '"' + json_escape(fields[i].first) + "\":" + format_double(fields[i].second);
    }
    out += "}\n";
    return out;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    out << text;
    if (!out) throw IoError("failed writing output file '" + path + "'");
}

}  // namespace wrad
