#include "relia/run_store.hpp"

#include <map>
#include <utility>

#include <nlohmann/json.hpp>

#include "relia/error.hpp"

namespace relia {

std::string to_jsonl_line(const StoreCell& cell) {
    nlohmann::json j{
        {"judge", cell.judge},
        {"temperature", cell.temperature},
        {"question_id", cell.question_id},
        {"replication", cell.replication},
        {"seed", cell.seed},
        {"category", std::string(to_string(cell.category))},
        {"raw_completion", cell.raw_completion},
        {"transport_ok", cell.transport_ok},
    };
    if (cell.correct) j["correct"] = *cell.correct;
    return j.dump();
}

StoreCell cell_from_json_line(const std::string& line) {
    const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw DataError("run store line is not a JSON object");
    StoreCell cell;
    try {
        cell.judge = j.at("judge").get<std::string>();
        cell.temperature = j.at("temperature").get<double>();
        cell.question_id = j.at("question_id").get<std::string>();
        cell.replication = j.at("replication").get<int>();
        cell.seed = j.at("seed").get<std::uint64_t>();
        const auto category = category_from_string(j.at("category").get<std::string>());
        if (!category)
            throw DataError("unknown category: " +
                            j.at("category").get<std::string>());
        cell.category = *category;
        cell.raw_completion = j.at("raw_completion").get<std::string>();
        cell.transport_ok = j.at("transport_ok").get<bool>();
        if (j.contains("correct")) cell.correct = j.at("correct").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("run store cell is malformed: ") + e.what());
    }
    return cell;
}

RunStoreWriter::RunStoreWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::app) {
    if (!out_) throw DataError("cannot open run store for append: " + path.string());
}

void RunStoreWriter::append(const StoreCell& cell) {
    std::lock_guard<std::mutex> lock(mutex_);
    out_ << to_jsonl_line(cell) << '\n';
    out_.flush();
    if (!out_) throw DataError("write to run store failed: " + path_.string());
}

StoreLoadResult load_run_store(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open run store: " + path.string());

    StoreLoadResult result;
    std::map<StoreKey, std::size_t> index;
    std::string line;
    int line_no = 0;
    while (true) {
        ++line_no;
        if (!std::getline(in, line)) break;
        const bool newline_terminated = !in.eof();
        if (line.empty()) continue;
        StoreCell cell;
        try {
            cell = cell_from_json_line(line);
        } catch (const DataError& e) {
            if (!newline_terminated) {
                // A crash mid-append leaves a ragged tail; drop it rather
                // than rejecting every completed cell before it.
                result.truncated_tail = true;
                break;
            }
            throw DataError("run store " + path.string() + " line " +
                            std::to_string(line_no) + ": " + e.what());
        }
        const auto [it, inserted] = index.try_emplace(key_of(cell), result.cells.size());
        if (inserted) {
            result.cells.push_back(std::move(cell));
        } else {
            result.cells[it->second] = std::move(cell);  // last write wins
            ++result.duplicate_count;
        }
    }
    return result;
}

std::set<StoreKey> existing_keys(const std::filesystem::path& path) {
    std::set<StoreKey> keys;
    if (!std::filesystem::exists(path)) return keys;
    for (const StoreCell& cell : load_run_store(path).cells) keys.insert(key_of(cell));
    return keys;
}

std::vector<CellGroup> group_cells(const std::vector<StoreCell>& cells) {
    std::vector<CellGroup> groups;
    std::map<std::pair<std::string, double>, std::size_t> index;
    for (const StoreCell& cell : cells) {
        const auto key = std::make_pair(cell.judge, cell.temperature);
        const auto [it, inserted] = index.try_emplace(key, groups.size());
        if (inserted) groups.push_back({cell.judge, cell.temperature, {}});
        groups[it->second].cells.push_back(cell);
    }
    return groups;
}

namespace {

/// First-appearance question order plus per-question replication cells.
struct GroupLayout {
    std::vector<std::string> ids;
    std::vector<std::map<int, const StoreCell*>> by_replication;
};

GroupLayout layout_of(const CellGroup& group) {
    GroupLayout layout;
    std::map<std::string, std::size_t> index;
    for (const StoreCell& cell : group.cells) {
        const auto [it, inserted] = index.try_emplace(cell.question_id,
                                                      layout.ids.size());
        if (inserted) {
            layout.ids.push_back(cell.question_id);
            layout.by_replication.emplace_back();
        }
        layout.by_replication[it->second][cell.replication] = &cell;
    }
    return layout;
}

int common_replication_count(const GroupLayout& layout, const CellGroup& group) {
    int n = -1;
    for (std::size_t q = 0; q < layout.ids.size(); ++q) {
        const auto& reps = layout.by_replication[q];
        const int count = static_cast<int>(reps.size());
        if (count == 0 || reps.begin()->first != 0 ||
            std::prev(reps.end())->first != count - 1)
            throw DataError("judge " + group.judge + " question " + layout.ids[q] +
                            " does not cover replications 0.." +
                            std::to_string(count - 1) + " contiguously");
        if (n == -1) n = count;
        if (count != n)
            throw DataError("judge " + group.judge + " question " + layout.ids[q] +
                            " has " + std::to_string(count) +
                            " replications, expected " + std::to_string(n));
    }
    return n;
}

}  // namespace

JudgmentMatrix matrix_from_cells(const CellGroup& group) {
    if (group.cells.empty()) throw DataError("cell group is empty");
    const GroupLayout layout = layout_of(group);
    const int n = common_replication_count(layout, group);

    std::vector<std::vector<Category>> rows(layout.ids.size());
    for (std::size_t q = 0; q < layout.ids.size(); ++q) {
        rows[q].reserve(static_cast<std::size_t>(n));
        for (int r = 0; r < n; ++r)
            rows[q].push_back(layout.by_replication[q].at(r)->category);
    }

    JudgmentMeta meta;
    meta.judge = group.judge;
    meta.temperature = group.temperature;
    return JudgmentMatrix(layout.ids, std::move(rows), n, std::move(meta));
}

Eigen::MatrixXd correctness_from_cells(const CellGroup& group) {
    if (group.cells.empty()) throw DataError("cell group is empty");
    const GroupLayout layout = layout_of(group);
    const int n = common_replication_count(layout, group);

    Eigen::MatrixXd out(static_cast<Eigen::Index>(layout.ids.size()), n);
    for (std::size_t q = 0; q < layout.ids.size(); ++q)
        for (int r = 0; r < n; ++r) {
            const StoreCell* cell = layout.by_replication[q].at(r);
            if (!cell->correct)
                throw DataError("cell for judge " + group.judge + " question " +
                                cell->question_id + " replication " +
                                std::to_string(r) +
                                " carries no correctness annotation");
            out(static_cast<Eigen::Index>(q), r) = *cell->correct ? 1.0 : 0.0;
        }
    return out;
}

}  // namespace relia
