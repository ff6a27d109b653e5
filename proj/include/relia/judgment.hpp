#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relia/category.hpp"

namespace relia {

struct JudgmentMeta {
    std::string benchmark;
    std::string judge;
    std::optional<double> temperature;
};

/// Categorical judgments indexed by (question, replication).
///
/// Rows are questions, columns are replications. The type can hold
/// defective data (ragged rows, duplicate ids) so that loaders can
/// materialize what they read; validate() reports defects as data and
/// every analysis entry point requires a clean validation first.
class JudgmentMatrix {
public:
    JudgmentMatrix() = default;
    JudgmentMatrix(std::vector<std::string> question_ids,
                   std::vector<std::vector<Category>> rows,
                   int replications,
                   JudgmentMeta meta = {})
        : question_ids_(std::move(question_ids)),
          rows_(std::move(rows)),
          replications_(replications),
          meta_(std::move(meta)) {}

    /// Rectangular construction: one row per question, each of size
    /// `replications` (taken from the first row).
    static JudgmentMatrix from_rows(std::vector<std::string> question_ids,
                                    std::vector<std::vector<Category>> rows,
                                    JudgmentMeta meta = {});

    int questions() const { return static_cast<int>(rows_.size()); }
    int replications() const { return replications_; }
    const std::vector<std::string>& question_ids() const { return question_ids_; }
    const std::vector<Category>& row(int q) const { return rows_[q]; }
    Category at(int q, int r) const { return rows_[q][r]; }
    const JudgmentMeta& meta() const { return meta_; }

    /// Index of a question id, or nullopt.
    std::optional<int> question_index(std::string_view id) const;

    bool operator==(const JudgmentMatrix& other) const {
        return question_ids_ == other.question_ids_ && rows_ == other.rows_ &&
               replications_ == other.replications_;
    }

private:
    std::vector<std::string> question_ids_;
    std::vector<std::vector<Category>> rows_;
    int replications_ = 0;
    JudgmentMeta meta_;
};

struct Defect {
    enum class Kind { DuplicateQuestionId, RaggedRow, NoReplications, NoQuestions };
    Kind kind;
    std::string detail;
};

std::string_view to_string(Defect::Kind k);

/// Outcome of validate(). Defects are data, not failures: an invalid
/// matrix is reported, never thrown.
struct ValidationResult {
    std::vector<Defect> defects;
    bool ok() const { return defects.empty(); }
};

/// Checks the matrix invariants: at least one question, n >= 1
/// replications, unique question ids, and every row of length n.
ValidationResult validate(const JudgmentMatrix& matrix);

/// Most frequent category in a question's row. Ties break in codebook
/// order A < B < C < D < E < NonResponse, keeping the pipeline
/// deterministic. Throws DataError for an unknown question id.
Category modal_category(const JudgmentMatrix& matrix, std::string_view question_id);

/// Row-level helper used by the ModalAgreement encoding.
Category modal_category(const std::vector<Category>& row);

/// True when all replication columns are identical as category
/// sequences, i.e. every question row is constant.
bool all_columns_identical(const JudgmentMatrix& matrix);

/// Fraction of NonResponse cells per replication column.
std::vector<double> nonresponse_rate_per_column(const JudgmentMatrix& matrix);

/// True if any cell is NonResponse.
bool has_nonresponse(const JudgmentMatrix& matrix);

}  // namespace relia
