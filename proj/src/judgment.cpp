#include "relia/judgment.hpp"

#include <array>
#include <set>
#include <string>

#include "relia/error.hpp"

namespace relia {

JudgmentMatrix JudgmentMatrix::from_rows(std::vector<std::string> question_ids,
                                         std::vector<std::vector<Category>> rows,
                                         JudgmentMeta meta) {
    const int n = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    return JudgmentMatrix(std::move(question_ids), std::move(rows), n, std::move(meta));
}

std::optional<int> JudgmentMatrix::question_index(std::string_view id) const {
    for (int q = 0; q < questions(); ++q)
        if (question_ids_[q] == id) return q;
    return std::nullopt;
}

std::string_view to_string(Defect::Kind k) {
    switch (k) {
        case Defect::Kind::DuplicateQuestionId: return "duplicate question id";
        case Defect::Kind::RaggedRow: return "ragged row";
        case Defect::Kind::NoReplications: return "no replications";
        case Defect::Kind::NoQuestions: return "no questions";
    }
    return "unknown defect";
}

ValidationResult validate(const JudgmentMatrix& matrix) {
    ValidationResult result;
    if (matrix.questions() == 0) {
        result.defects.push_back({Defect::Kind::NoQuestions, "matrix has no questions"});
        return result;
    }
    if (matrix.replications() < 1)
        result.defects.push_back(
            {Defect::Kind::NoReplications, "matrix has no replication columns"});

    std::set<std::string> seen;
    for (int q = 0; q < matrix.questions(); ++q) {
        const std::string& id = matrix.question_ids()[q];
        if (!seen.insert(id).second)
            result.defects.push_back(
                {Defect::Kind::DuplicateQuestionId, "question id repeats: " + id});
        if (static_cast<int>(matrix.row(q).size()) != matrix.replications())
            result.defects.push_back(
                {Defect::Kind::RaggedRow,
                 "question " + id + " has " + std::to_string(matrix.row(q).size()) +
                     " cells, expected " + std::to_string(matrix.replications())});
    }
    return result;
}

Category modal_category(const std::vector<Category>& row) {
    std::array<int, kCategoryCount> counts{};
    for (Category c : row) ++counts[static_cast<int>(c)];
    int best = 0;
    for (int i = 1; i < kCategoryCount; ++i)
        if (counts[i] > counts[best]) best = i;  // strict: ties keep the lower code
    return static_cast<Category>(best);
}

Category modal_category(const JudgmentMatrix& matrix, std::string_view question_id) {
    const auto q = matrix.question_index(question_id);
    if (!q) throw DataError("unknown question id: " + std::string(question_id));
    if (matrix.row(*q).empty())
        throw DataError("question has no replications: " + std::string(question_id));
    return modal_category(matrix.row(*q));
}

bool all_columns_identical(const JudgmentMatrix& matrix) {
    for (int q = 0; q < matrix.questions(); ++q) {
        const auto& row = matrix.row(q);
        for (std::size_t r = 1; r < row.size(); ++r)
            if (row[r] != row[0]) return false;
    }
    return true;
}

std::vector<double> nonresponse_rate_per_column(const JudgmentMatrix& matrix) {
    std::vector<double> rates(matrix.replications(), 0.0);
    if (matrix.questions() == 0) return rates;
    for (int r = 0; r < matrix.replications(); ++r) {
        int count = 0;
        for (int q = 0; q < matrix.questions(); ++q)
            if (matrix.at(q, r) == Category::NonResponse) ++count;
        rates[r] = static_cast<double>(count) / matrix.questions();
    }
    return rates;
}

bool has_nonresponse(const JudgmentMatrix& matrix) {
    for (int q = 0; q < matrix.questions(); ++q)
        for (Category c : matrix.row(q))
            if (c == Category::NonResponse) return true;
    return false;
}

}  // namespace relia
