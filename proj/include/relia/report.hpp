#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relia/reliability.hpp"
#include "relia/stats.hpp"

namespace relia {

enum class OutputFormat { Table, Csv, Markdown };
OutputFormat output_format_from_string(const std::string& s);  // throws ConfigError

/// One analyzed (judge, temperature, benchmark) group.
struct AnalysisRow {
    std::string judge;                  // empty for bare CSV input
    std::optional<double> temperature;  // absent for bare CSV input
    std::string benchmark;
    int questions = 0;
    int replications = 0;
    ReliabilityReport report;
    bool show_alpha = true;  // false when alpha was deselected, not undefined
};

/// Context every table carries in its footer, so no number is ever
/// presented without the knobs that produced it.
struct ReportFooter {
    std::string encoding;
    std::string seed_policy = "seed_base + replication index";
    bool upper_bound = false;
};

/// Five-number summary row of per-replication agreement values.
struct AgreementRow {
    std::string label;
    FiveNumberSummary summary;
};

std::string render_analysis(const std::vector<AnalysisRow>& rows,
                            const std::vector<AgreementRow>& agreement,
                            OutputFormat format, const ReportFooter& footer);

/// Omega by temperature and benchmark for one judge.
struct OmegaTable {
    std::string judge;
    std::vector<double> temperatures;
    std::vector<std::string> benchmarks;
    std::vector<std::vector<std::optional<double>>> omega;  // [temp][benchmark]
};

std::string render_sweep_summary(const std::vector<OmegaTable>& tables,
                                 const std::vector<AgreementRow>& agreement,
                                 OutputFormat format, const ReportFooter& footer);

/// Per-judge accuracy (with standard error) and omega.
struct AlmRow {
    std::string judge;
    MeanSe alm;
    std::optional<double> omega;
};

std::string render_alm(const std::vector<AlmRow>& rows, OutputFormat format,
                       const ReportFooter& footer);

/// "1", "0.75", ... and "0" for the machine-epsilon stand-in.
std::string format_temperature(double t);

/// Fixed-point with the given decimals; deterministic across runs.
std::string format_fixed(double x, int decimals);

}  // namespace relia
