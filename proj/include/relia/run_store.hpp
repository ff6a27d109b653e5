#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "relia/category.hpp"
#include "relia/judgment.hpp"

namespace relia {

/// One persisted judgment cell. transport_ok distinguishes a judge that
/// answered unparseably (true, category NonResponse) from a transport
/// failure (false); both collapse to NonResponse for analysis but stay
/// auditable. `correct` is an optional ground-truth annotation used by
/// accuracy reporting.
struct StoreCell {
    std::string judge;
    double temperature = 0;
    std::string question_id;
    int replication = 0;
    std::uint64_t seed = 0;
    Category category = Category::NonResponse;
    std::string raw_completion;
    bool transport_ok = true;
    std::optional<bool> correct;
};

using StoreKey = std::tuple<std::string, double, std::string, int>;

inline StoreKey key_of(const StoreCell& cell) {
    return {cell.judge, cell.temperature, cell.question_id, cell.replication};
}

std::string to_jsonl_line(const StoreCell& cell);
StoreCell cell_from_json_line(const std::string& line);  // throws DataError

/// Append-only JSONL store; writes are serialized and flushed per line
/// so an interrupted sweep leaves every completed cell on disk.
class RunStoreWriter {
public:
    explicit RunStoreWriter(const std::filesystem::path& path);
    void append(const StoreCell& cell);
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::mutex mutex_;
};

struct StoreLoadResult {
    std::vector<StoreCell> cells;  // in file order, duplicates dropped (last wins)
    int duplicate_count = 0;
    bool truncated_tail = false;  // unparseable final line without newline
};

/// Reads a store file. A malformed line mid-file is a DataError naming
/// the line number; an unterminated garbage tail (a crash mid-append)
/// is dropped and flagged instead.
StoreLoadResult load_run_store(const std::filesystem::path& path);

/// Keys present in a store file; initial state for resumable sweeps.
/// A missing file is an empty set.
std::set<StoreKey> existing_keys(const std::filesystem::path& path);

struct CellGroup {
    std::string judge;
    double temperature = 0;
    std::vector<StoreCell> cells;
};

/// Groups cells by (judge, temperature), preserving first-appearance
/// order of both.
std::vector<CellGroup> group_cells(const std::vector<StoreCell>& cells);

/// Rebuilds the judgment matrix of one group. Questions keep
/// first-appearance order; every question must cover replications
/// 0..n-1 for a common n, else DataError.
JudgmentMatrix matrix_from_cells(const CellGroup& group);

/// Correctness indicators (rows questions, columns replications) for
/// groups carrying `correct` annotations; throws DataError when any
/// cell lacks one.
Eigen::MatrixXd correctness_from_cells(const CellGroup& group);

}  // namespace relia
