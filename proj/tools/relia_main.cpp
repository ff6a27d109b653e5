#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "relia/agreement.hpp"
#include "relia/csv.hpp"
#include "relia/error.hpp"
#include "relia/harness.hpp"
#include "relia/reliability.hpp"
#include "relia/report.hpp"
#include "relia/run_store.hpp"
#include "relia/simulate.hpp"

namespace {

using namespace relia;

struct MetricSelection {
    bool omega = true;
    bool alpha = true;
    bool irr = true;
    bool irr_explicit = false;  // --metrics named irr, so failures are fatal
};

MetricSelection parse_metrics(const std::string& spec) {
    if (spec.empty() || spec == "auto") return {};
    MetricSelection sel;
    sel.omega = sel.alpha = sel.irr = false;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ',')) {
        if (token == "omega")
            sel.omega = true;
        else if (token == "alpha")
            sel.alpha = true;
        else if (token == "irr")
            sel.irr = sel.irr_explicit = true;
        else
            throw ConfigError("unknown metric: " + token +
                              " (expected omega, alpha or irr)");
    }
    if (!sel.omega) sel.omega = true;  // omega is the headline; always reported
    return sel;
}

EncodingScheme scheme_from_flag(const std::string& encoding) {
    if (encoding == "integer") return EncodingScheme::integer_codes();
    if (encoding == "modal") return EncodingScheme::modal_agreement();
    throw ConfigError("unknown encoding: " + encoding + " (expected integer or modal)");
}

std::string verdict_text_for(Category c) {
    if (c == Category::NonResponse) return "No judgment provided.";
    return "Best Response: [[" + std::string(to_string(c)) + "]]";
}

int cmd_simulate(double loading, int questions, int replications, int categories,
                 double nonresponse_rate, std::uint64_t seed,
                 const std::string& out_path, const std::string& store_path) {
    SyntheticJudgeSpec spec = SyntheticJudgeSpec::uniform(loading, questions,
                                                          replications);
    spec.n_categories = categories;
    spec.non_response_rate = nonresponse_rate;
    spec.seed = seed;

    const CategoricalSample sample = generate_categorical_sample(spec);
    write_judgment_csv(std::filesystem::path(out_path), sample.matrix);
    std::cout << "wrote " << out_path << " (" << sample.matrix.questions()
              << " questions x " << sample.matrix.replications()
              << " replications)\n";

    if (!store_path.empty()) {
        std::ofstream store(store_path);
        if (!store) throw DataError("cannot open for writing: " + store_path);
        for (int q = 0; q < sample.matrix.questions(); ++q)
            for (int r = 0; r < sample.matrix.replications(); ++r) {
                StoreCell cell;
                cell.judge = "synthetic";
                cell.temperature = 1.0;
                cell.question_id = sample.matrix.question_ids()[q];
                cell.replication = r;
                cell.seed = seed + static_cast<std::uint64_t>(r);
                cell.category = sample.matrix.at(q, r);
                cell.raw_completion = verdict_text_for(cell.category);
                cell.correct =
                    cell.category == sample.true_categories[static_cast<std::size_t>(q)];
                store << to_jsonl_line(cell) << '\n';
            }
        if (!store) throw DataError("write failed: " + store_path);
        std::cout << "wrote " << store_path << "\n";
    }

    try {
        std::cout << "analytic omega = " << format_fixed(analytic_omega(spec.loadings), 4)
                  << "\n";
    } catch (const UndefinedReliability&) {
        std::cout << "analytic omega undefined (all loadings zero)\n";
    }
    return 0;
}

AnalysisRow row_for_matrix(const JudgmentMatrix& matrix, const EncodingScheme& scheme,
                           const MetricSelection& metrics) {
    AnalysisRow row;
    row.judge = matrix.meta().judge;
    row.temperature = matrix.meta().temperature;
    row.benchmark = matrix.meta().benchmark;
    row.questions = matrix.questions();
    row.replications = matrix.replications();
    row.report = omega_from_judgments(matrix, scheme);
    row.show_alpha = metrics.alpha;
    return row;
}

/// Per-temperature IRR rows across all judges in the store.
std::vector<AgreementRow> irr_rows(const std::vector<CellGroup>& groups,
                                   bool required) {
    // Temperatures in first-appearance order, judges likewise.
    std::vector<double> temperatures;
    for (const CellGroup& g : groups)
        if (std::find(temperatures.begin(), temperatures.end(), g.temperature) ==
            temperatures.end())
            temperatures.push_back(g.temperature);

    std::vector<AgreementRow> rows;
    for (double t : temperatures) {
        std::vector<JudgmentMatrix> matrices;
        for (const CellGroup& g : groups)
            if (g.temperature == t) matrices.push_back(matrix_from_cells(g));
        if (matrices.size() < 2) {
            if (required)
                throw DataError("IRR needs at least 2 judges at temperature " +
                                format_temperature(t));
            continue;
        }
        try {
            rows.push_back({"IRR @ T=" + format_temperature(t),
                            five_number_summary(per_replication_agreement(matrices))});
        } catch (const DataError&) {
            if (required) throw;
            // Judges do not share a question grid; auto mode just skips IRR.
        }
    }
    return rows;
}

int cmd_analyze(const std::string& input, const std::string& store_file,
                const std::string& encoding, const std::string& format,
                const std::string& metrics_spec) {
    if (input.empty() == store_file.empty())
        throw ConfigError("analyze needs exactly one of --input or --store");
    const EncodingScheme scheme = scheme_from_flag(encoding);
    const OutputFormat out_format = output_format_from_string(format);
    const MetricSelection metrics = parse_metrics(metrics_spec);

    std::vector<AnalysisRow> rows;
    std::vector<AgreementRow> agreement;
    ReportFooter footer;
    footer.encoding = std::string(to_string(scheme.mode));

    if (!input.empty()) {
        const JudgmentMatrix matrix = read_judgment_csv(std::filesystem::path(input));
        if (matrix.questions() == 0) throw DataError("no judgments found in " + input);
        rows.push_back(row_for_matrix(matrix, scheme, metrics));
        footer.seed_policy = "n/a (pre-collected judgments)";
        if (metrics.irr_explicit)
            throw ConfigError("irr needs a multi-judge run store, not a single CSV");
    } else {
        const StoreLoadResult loaded = load_run_store(store_file);
        if (loaded.cells.empty()) throw DataError("no judgments found in " + store_file);
        if (loaded.truncated_tail)
            std::cerr << "note: dropped an unterminated trailing line in " << store_file
                      << "\n";
        if (loaded.duplicate_count > 0)
            std::cerr << "note: " << loaded.duplicate_count
                      << " duplicate cells superseded by later writes\n";
        const std::vector<CellGroup> groups = group_cells(loaded.cells);
        for (const CellGroup& g : groups)
            rows.push_back(row_for_matrix(matrix_from_cells(g), scheme, metrics));
        if (metrics.irr) agreement = irr_rows(groups, metrics.irr_explicit);
    }

    for (const AnalysisRow& row : rows)
        footer.upper_bound |= row.report.diagnostics.upper_bound;
    std::cout << render_analysis(rows, agreement, out_format, footer);
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& encoding,
              const std::string& format) {
    const EncodingScheme scheme = scheme_from_flag(encoding);
    const OutputFormat out_format = output_format_from_string(format);

    const SweepConfig config = load_sweep_config(config_path);
    SweepPlan plan = prepare_sweep(config);  // fail fast, before any generation
    const SweepStats stats = run_sweep(config, plan);
    std::cerr << "sweep: wrote " << stats.cells_written << " cells, skipped "
              << stats.cells_skipped << " already present\n";

    // Summarize from the store so resumed and fresh runs report identically.
    const StoreLoadResult loaded = load_run_store(config.store_path);
    const std::vector<CellGroup> groups = group_cells(loaded.cells);

    std::map<std::string, std::string> benchmark_of;
    std::vector<std::string> benchmarks;
    for (const BenchmarkQuestion& q : plan.questions) {
        const std::string label = q.benchmark.empty() ? "all" : q.benchmark;
        benchmark_of[q.id] = label;
        if (std::find(benchmarks.begin(), benchmarks.end(), label) == benchmarks.end())
            benchmarks.push_back(label);
    }

    ReportFooter footer;
    footer.encoding = std::string(to_string(scheme.mode));

    std::vector<OmegaTable> tables;
    for (const auto& judge : config.judge_specs) {
        OmegaTable table;
        table.judge = judge.label;
        table.temperatures = config.run.temperatures;
        table.benchmarks = benchmarks;
        for (double t : table.temperatures) {
            std::vector<std::optional<double>> cells;
            const auto group =
                std::find_if(groups.begin(), groups.end(), [&](const CellGroup& g) {
                    return g.judge == judge.label && g.temperature == t;
                });
            for (const std::string& benchmark : benchmarks) {
                std::optional<double> omega;
                if (group != groups.end()) {
                    CellGroup subset{group->judge, group->temperature, {}};
                    for (const StoreCell& cell : group->cells)
                        if (benchmark_of.count(cell.question_id) &&
                            benchmark_of.at(cell.question_id) == benchmark)
                            subset.cells.push_back(cell);
                    try {
                        const ReliabilityReport report =
                            omega_from_judgments(matrix_from_cells(subset), scheme);
                        omega = report.omega;
                        footer.upper_bound |= report.diagnostics.upper_bound;
                    } catch (const Error&) {
                        // Not enough usable data for this cell; leave it blank.
                    }
                }
                cells.push_back(omega);
            }
            table.omega.push_back(std::move(cells));
        }
        tables.push_back(std::move(table));
    }

    const std::vector<AgreementRow> agreement =
        config.judge_specs.size() >= 2 ? irr_rows(groups, false)
                                       : std::vector<AgreementRow>{};
    std::cout << render_sweep_summary(tables, agreement, out_format, footer);
    return 0;
}

int cmd_alm(const std::string& store_file, const std::string& key_path,
            const std::string& encoding, const std::string& format) {
    const EncodingScheme scheme = scheme_from_flag(encoding);
    const OutputFormat out_format = output_format_from_string(format);

    const StoreLoadResult loaded = load_run_store(store_file);
    if (loaded.cells.empty()) throw DataError("no judgments found in " + store_file);

    std::vector<StoreCell> cells = loaded.cells;
    if (!key_path.empty()) {
        std::ifstream in(key_path);
        if (!in) throw DataError("cannot open answer key: " + key_path);
        const nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError("answer key must be a JSON object of question_id -> letter");
        std::map<std::string, Category> key;
        for (const auto& [id, letter] : j.items()) {
            const auto category = category_from_string(letter.get<std::string>());
            if (!category || *category == Category::NonResponse)
                throw DataError("answer key for " + id + " must be a letter A-E");
            key[id] = *category;
        }
        for (StoreCell& cell : cells) {
            const auto it = key.find(cell.question_id);
            if (it == key.end())
                throw DataError("answer key has no entry for question " +
                                cell.question_id);
            cell.correct = cell.category == it->second;
        }
    }

    const std::vector<CellGroup> groups = group_cells(cells);
    std::set<double> temperatures;
    for (const CellGroup& g : groups) temperatures.insert(g.temperature);

    ReportFooter footer;
    footer.encoding = std::string(to_string(scheme.mode));
    std::vector<AlmRow> rows;
    for (const CellGroup& g : groups) {
        AlmRow row;
        row.judge = temperatures.size() > 1
                        ? g.judge + " @ T=" + format_temperature(g.temperature)
                        : g.judge;
        row.alm = mean_and_standard_error(correctness_from_cells(g));
        try {
            const ReliabilityReport report =
                omega_from_judgments(matrix_from_cells(g), scheme);
            row.omega = report.omega;
            footer.upper_bound |= report.diagnostics.upper_bound;
        } catch (const Error&) {
            // A_LM stands on its own when omega has no value here.
        }
        rows.push_back(std::move(row));
    }

    std::cout << render_alm(rows, out_format, footer);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability analysis for replicated LLM-as-a-judge evaluations"};
    app.require_subcommand(1);

    double loading = 0;
    int questions = 0, replications = 0, categories = 5;
    double nonresponse_rate = 0;
    std::uint64_t seed = 0;
    std::string out_path = "judgments.csv";
    std::string sim_store_path;
    CLI::App* sim = app.add_subcommand("simulate",
                                       "Generate synthetic judgment data with known "
                                       "ground-truth reliability");
    sim->add_option("--loading", loading, "Factor loading shared by all replications")
        ->required();
    sim->add_option("--questions", questions, "Number of questions")->required();
    sim->add_option("--replications", replications, "Number of replications")
        ->required();
    sim->add_option("--categories", categories, "Distinct answer letters (2-5)")
        ->capture_default_str();
    sim->add_option("--nonresponse-rate", nonresponse_rate,
                    "Per-cell probability of NONRESPONSE")
        ->capture_default_str();
    sim->add_option("--seed", seed, "Generator seed")->capture_default_str();
    sim->add_option("--out", out_path, "Judgment CSV to write")->capture_default_str();
    sim->add_option("--store", sim_store_path,
                    "Also write a run-store JSONL with correctness annotations");

    std::string input, store_file, key_path;
    std::string encoding = "integer", format = "table", metrics = "auto";
    CLI::App* analyze =
        app.add_subcommand("analyze", "Compute reliability from recorded judgments");
    analyze->add_option("--input", input, "Judgment CSV to analyze");
    analyze->add_option("--store", store_file, "Run-store JSONL to analyze");
    analyze->add_option("--encoding", encoding, "integer | modal")
        ->capture_default_str();
    analyze->add_option("--format", format, "table | csv | markdown")
        ->capture_default_str();
    analyze->add_option("--metrics", metrics,
                        "Comma list of omega,alpha,irr (default: all applicable)");

    std::string config_path;
    CLI::App* sweep = app.add_subcommand(
        "sweep", "Run the judge x temperature x question grid from a config file");
    sweep->add_option("--config", config_path, "Sweep config JSON")->required();
    sweep->add_option("--encoding", encoding, "integer | modal")
        ->capture_default_str();
    sweep->add_option("--format", format, "table | csv | markdown")
        ->capture_default_str();

    CLI::App* alm = app.add_subcommand(
        "alm", "Accuracy-as-judged (A_LM) with standard errors, per judge");
    alm->add_option("--store", store_file, "Run-store JSONL with judgments")
        ->required();
    alm->add_option("--answer-key", key_path,
                    "JSON object question_id -> correct letter (overrides stored "
                    "annotations)");
    alm->add_option("--encoding", encoding, "integer | modal")->capture_default_str();
    alm->add_option("--format", format, "table | csv | markdown")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(loading, questions, replications, categories,
                                nonresponse_rate, seed, out_path, sim_store_path);
        if (analyze->parsed())
            return cmd_analyze(input, store_file, encoding, format, metrics);
        if (sweep->parsed()) return cmd_sweep(config_path, encoding, format);
        if (alm->parsed()) return cmd_alm(store_file, key_path, encoding, format);
    } catch (const BackendError& e) {
        std::cerr << "backend error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
