#include "relia/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "relia/error.hpp"
#include "relia/harness.hpp"

namespace relia {
namespace {

constexpr int kSchemaVersion = 1;

std::string csv_quoted(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string band_of(double omega) {
    return std::string(to_string(interpret_reliability(omega)));
}

void append_footer_lines(std::string& out, const ReportFooter& footer,
                         const char* prefix) {
    out += prefix;
    out += "encoding: " + footer.encoding +
           "; seed policy: " + footer.seed_policy + "\n";
    if (footer.upper_bound) {
        out += prefix;
        out += "note: non-response cells present; "
               "reported values are an upper bound on reliability\n";
    }
}

std::string row_heading(const AnalysisRow& row) {
    std::string head;
    if (!row.judge.empty()) head = row.judge;
    if (row.temperature)
        head += (head.empty() ? "T=" : " @ T=") + format_temperature(*row.temperature);
    if (!row.benchmark.empty()) head += (head.empty() ? "" : " ") + ("[" + row.benchmark + "]");
    return head;
}

std::string summary_cells(const FiveNumberSummary& s, const std::string& sep) {
    std::string out = format_fixed(s.min, 3);
    for (double v : {s.q1, s.median, s.q3, s.max}) out += sep + format_fixed(v, 3);
    return out;
}

std::string render_analysis_table(const std::vector<AnalysisRow>& rows,
                                  const std::vector<AgreementRow>& agreement,
                                  const ReportFooter& footer) {
    std::string out;
    for (const AnalysisRow& row : rows) {
        const std::string head = row_heading(row);
        if (!head.empty()) out += "== " + head + " ==\n";
        out += "questions = " + std::to_string(row.questions) +
               ", replications = " + std::to_string(row.replications) + "\n";
        out += "omega = " + format_fixed(row.report.omega, 3) + " (" +
               band_of(row.report.omega) + ")\n";
        if (row.show_alpha) {
            if (row.report.alpha)
                out += "alpha = " + format_fixed(*row.report.alpha, 3) + "\n";
            else
                out += "alpha = undefined (zero total variance)\n";
        }

        const ReliabilityDiagnostics& d = row.report.diagnostics;
        if (d.identical_columns_shortcut) {
            out += "fit: skipped (all replication columns identical)\n";
        } else {
            out += std::string("fit: ") + (d.converged ? "converged" : "not converged") +
                   " in " + std::to_string(d.iterations) + " iterations";
            if (!d.dropped_columns.empty())
                out += "; dropped " + std::to_string(d.dropped_columns.size()) +
                       " constant columns";
            if (d.omega_clamped) out += "; omega clamped into [0, 1]";
            if (d.negative_loadings) out += "; negative loadings present";
            out += "\n";
        }
        out += "\n";
    }
    for (const AgreementRow& row : agreement)
        out += row.label + ": min/q1/median/q3/max = " +
               summary_cells(row.summary, "/") + "\n";
    if (!agreement.empty()) out += "\n";
    append_footer_lines(out, footer, "-- ");
    return out;
}

std::string render_analysis_markdown(const std::vector<AnalysisRow>& rows,
                                     const std::vector<AgreementRow>& agreement,
                                     const ReportFooter& footer) {
    std::string out =
        "| Judge | Temperature | Benchmark | Questions | Replications | Omega | "
        "Interpretation | Alpha |\n"
        "| --- | --- | --- | --- | --- | --- | --- | --- |\n";
    for (const AnalysisRow& row : rows) {
        out += "| " + (row.judge.empty() ? "-" : row.judge) + " | " +
               (row.temperature ? format_temperature(*row.temperature) : "-") +
               " | " + (row.benchmark.empty() ? "-" : row.benchmark) + " | " +
               std::to_string(row.questions) + " | " +
               std::to_string(row.replications) + " | " +
               format_fixed(row.report.omega, 3) + " | " + band_of(row.report.omega) +
               " | " +
               (row.show_alpha && row.report.alpha
                    ? format_fixed(*row.report.alpha, 3)
                    : "-") +
               " |\n";
    }
    if (!agreement.empty()) {
        out += "\n| Agreement | Min | Q1 | Median | Q3 | Max |\n"
               "| --- | --- | --- | --- | --- | --- |\n";
        for (const AgreementRow& row : agreement)
            out += "| " + row.label + " | " + summary_cells(row.summary, " | ") + " |\n";
    }
    out += "\n";
    append_footer_lines(out, footer, "_");
    return out;
}

std::string render_analysis_csv(const std::vector<AnalysisRow>& rows,
                                const std::vector<AgreementRow>& agreement,
                                const ReportFooter& footer) {
    std::string out =
        "schema_version,record,judge,temperature,benchmark,questions,replications,"
        "omega,interpretation,alpha,upper_bound,label,min,q1,median,q3,max\n";
    for (const AnalysisRow& row : rows) {
        out += std::to_string(kSchemaVersion);
        out += ",reliability," + csv_quoted(row.judge) + "," +
               (row.temperature ? format_temperature(*row.temperature) : "") + "," +
               csv_quoted(row.benchmark) + "," + std::to_string(row.questions) + "," +
               std::to_string(row.replications) + "," +
               format_fixed(row.report.omega, 6) + "," + band_of(row.report.omega) +
               "," +
               (row.show_alpha && row.report.alpha
                    ? format_fixed(*row.report.alpha, 6)
                    : "") +
               "," +
               (row.report.diagnostics.upper_bound ? "true" : "false") +
               ",,,,,,\n";
    }
    for (const AgreementRow& row : agreement) {
        out += std::to_string(kSchemaVersion);
        out += ",agreement,,,,,,,,,," + csv_quoted(row.label) + "," +
               summary_cells(row.summary, ",") + "\n";
    }
    append_footer_lines(out, footer, "# ");
    return out;
}

}  // namespace

OutputFormat output_format_from_string(const std::string& s) {
    if (s == "table") return OutputFormat::Table;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "markdown") return OutputFormat::Markdown;
    throw ConfigError("unknown output format: " + s +
                      " (expected table, csv or markdown)");
}

std::string format_temperature(double t) {
    if (t <= kEpsilonTemperature) return "0";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%g", t);
    return buffer;
}

std::string format_fixed(double x, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, x);
    return buffer;
}

std::string render_analysis(const std::vector<AnalysisRow>& rows,
                            const std::vector<AgreementRow>& agreement,
                            OutputFormat format, const ReportFooter& footer) {
    switch (format) {
        case OutputFormat::Table:
            return render_analysis_table(rows, agreement, footer);
        case OutputFormat::Markdown:
            return render_analysis_markdown(rows, agreement, footer);
        case OutputFormat::Csv:
            return render_analysis_csv(rows, agreement, footer);
    }
    return {};
}

namespace {

std::string pad_to(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string render_sweep_table(const std::vector<OmegaTable>& tables,
                               const std::vector<AgreementRow>& agreement,
                               const ReportFooter& footer) {
    std::string out;
    for (const OmegaTable& table : tables) {
        out += "== omega by temperature: " + table.judge + " ==\n";
        const std::string kTempHeading = "temperature";
        std::size_t temp_width = kTempHeading.size();
        for (double t : table.temperatures)
            temp_width = std::max(temp_width, format_temperature(t).size());
        out += pad_to(kTempHeading, temp_width);
        for (const std::string& b : table.benchmarks)
            out += "  " + pad_to(b, std::max<std::size_t>(b.size(), 5));
        out += "\n";
        for (std::size_t t = 0; t < table.temperatures.size(); ++t) {
            std::string line =
                pad_to(format_temperature(table.temperatures[t]), temp_width);
            for (std::size_t b = 0; b < table.benchmarks.size(); ++b) {
                const auto& cell = table.omega[t][b];
                line += "  " + pad_to(cell ? format_fixed(*cell, 3) : "-",
                                      std::max<std::size_t>(
                                          table.benchmarks[b].size(), 5));
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out += line + "\n";
        }
        out += "\n";
    }
    for (const AgreementRow& row : agreement)
        out += row.label + ": min/q1/median/q3/max = " +
               summary_cells(row.summary, "/") + "\n";
    if (!agreement.empty()) out += "\n";
    append_footer_lines(out, footer, "-- ");
    return out;
}

std::string render_sweep_markdown(const std::vector<OmegaTable>& tables,
                                  const std::vector<AgreementRow>& agreement,
                                  const ReportFooter& footer) {
    std::string out;
    for (const OmegaTable& table : tables) {
        out += "### Omega by temperature: " + table.judge + "\n\n";
        out += "| Temperature |";
        for (const std::string& b : table.benchmarks) out += " " + b + " |";
        out += "\n| --- |";
        for (std::size_t b = 0; b < table.benchmarks.size(); ++b) out += " --- |";
        out += "\n";
        for (std::size_t t = 0; t < table.temperatures.size(); ++t) {
            out += "| " + format_temperature(table.temperatures[t]) + " |";
            for (std::size_t b = 0; b < table.benchmarks.size(); ++b) {
                const auto& cell = table.omega[t][b];
                out += " " + (cell ? format_fixed(*cell, 3) : std::string("-")) + " |";
            }
            out += "\n";
        }
        out += "\n";
    }
    if (!agreement.empty()) {
        out += "| Agreement | Min | Q1 | Median | Q3 | Max |\n"
               "| --- | --- | --- | --- | --- | --- |\n";
        for (const AgreementRow& row : agreement)
            out += "| " + row.label + " | " + summary_cells(row.summary, " | ") + " |\n";
        out += "\n";
    }
    append_footer_lines(out, footer, "_");
    return out;
}

std::string render_sweep_csv(const std::vector<OmegaTable>& tables,
                             const std::vector<AgreementRow>& agreement,
                             const ReportFooter& footer) {
    std::string out =
        "schema_version,record,judge,temperature,benchmark,omega,label,min,q1,"
        "median,q3,max\n";
    for (const OmegaTable& table : tables)
        for (std::size_t t = 0; t < table.temperatures.size(); ++t)
            for (std::size_t b = 0; b < table.benchmarks.size(); ++b) {
                const auto& cell = table.omega[t][b];
                out += std::to_string(kSchemaVersion);
                out += ",omega," + csv_quoted(table.judge) + "," +
                       format_temperature(table.temperatures[t]) + "," +
                       csv_quoted(table.benchmarks[b]) + "," +
                       (cell ? format_fixed(*cell, 6) : "") + ",,,,,,\n";
            }
    for (const AgreementRow& row : agreement) {
        out += std::to_string(kSchemaVersion);
        out += ",agreement,,,,," + csv_quoted(row.label) + "," +
               summary_cells(row.summary, ",") + "\n";
    }
    append_footer_lines(out, footer, "# ");
    return out;
}

}  // namespace

std::string render_sweep_summary(const std::vector<OmegaTable>& tables,
                                 const std::vector<AgreementRow>& agreement,
                                 OutputFormat format, const ReportFooter& footer) {
    switch (format) {
        case OutputFormat::Table:
            return render_sweep_table(tables, agreement, footer);
        case OutputFormat::Markdown:
            return render_sweep_markdown(tables, agreement, footer);
        case OutputFormat::Csv:
            return render_sweep_csv(tables, agreement, footer);
    }
    return {};
}

std::string render_alm(const std::vector<AlmRow>& rows, OutputFormat format,
                       const ReportFooter& footer) {
    std::string out;
    switch (format) {
        case OutputFormat::Table:
            for (const AlmRow& row : rows) {
                out += row.judge + ": A_LM = " + format_fixed(row.alm.mean, 4) +
                       " (" + format_fixed(row.alm.se, 5) + ")";
                if (row.omega)
                    out += "; omega = " + format_fixed(*row.omega, 3) + " (" +
                           band_of(*row.omega) + ")";
                out += "\n";
            }
            out += "\n";
            append_footer_lines(out, footer, "-- ");
            return out;
        case OutputFormat::Markdown:
            out += "| Judge | A_LM | SE | Omega |\n| --- | --- | --- | --- |\n";
            for (const AlmRow& row : rows)
                out += "| " + row.judge + " | " + format_fixed(row.alm.mean, 4) +
                       " | " + format_fixed(row.alm.se, 5) + " | " +
                       (row.omega ? format_fixed(*row.omega, 3) : std::string("-")) +
                       " |\n";
            out += "\n";
            append_footer_lines(out, footer, "_");
            return out;
        case OutputFormat::Csv:
            out += "schema_version,record,judge,alm_mean,alm_se,omega\n";
            for (const AlmRow& row : rows) {
                out += std::to_string(kSchemaVersion);
                out += ",alm," + csv_quoted(row.judge) + "," +
                       format_fixed(row.alm.mean, 6) + "," +
                       format_fixed(row.alm.se, 6) + "," +
                       (row.omega ? format_fixed(*row.omega, 6) : "") + "\n";
            }
            append_footer_lines(out, footer, "# ");
            return out;
    }
    return {};
}

}  // namespace relia
