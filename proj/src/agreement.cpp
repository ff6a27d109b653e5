#include "relia/agreement.hpp"

#include <string>
#include <utility>

#include "relia/error.hpp"

namespace relia {

RaterPanel::RaterPanel(std::vector<std::string> raters,
                       std::vector<std::string> question_ids,
                       std::vector<std::vector<Category>> judgments)
    : rater_labels_(std::move(raters)),
      question_ids_(std::move(question_ids)),
      judgments_(std::move(judgments)) {
    if (rater_labels_.size() != judgments_.size())
        throw DataError("panel has " + std::to_string(rater_labels_.size()) +
                        " rater labels but " + std::to_string(judgments_.size()) +
                        " judgment rows");
    for (std::size_t r = 0; r < judgments_.size(); ++r)
        if (judgments_[r].size() != question_ids_.size())
            throw DataError("rater " + rater_labels_[r] + " covers " +
                            std::to_string(judgments_[r].size()) + " questions, panel has " +
                            std::to_string(question_ids_.size()));
}

RaterPanel RaterPanel::from_maps(
    const std::vector<std::pair<std::string, std::map<std::string, Category>>>&
        per_rater) {
    if (per_rater.empty()) throw DataError("panel has no raters");

    std::vector<std::string> ids;
    ids.reserve(per_rater.front().second.size());
    for (const auto& [id, category] : per_rater.front().second) ids.push_back(id);

    std::vector<std::string> labels;
    std::vector<std::vector<Category>> rows;
    for (const auto& [label, judgments] : per_rater) {
        std::vector<Category> row;
        row.reserve(ids.size());
        if (judgments.size() != ids.size())
            throw DataError("rater " + label + " does not cover the panel question set");
        for (const std::string& id : ids) {
            const auto it = judgments.find(id);
            if (it == judgments.end())
                throw DataError("rater " + label + " is missing question " + id);
            row.push_back(it->second);
        }
        labels.push_back(label);
        rows.push_back(std::move(row));
    }
    return RaterPanel(std::move(labels), std::move(ids), std::move(rows));
}

double inter_rater_agreement(const RaterPanel& panel, AgreementMode mode) {
    const int p = panel.raters();
    const int q = panel.questions();
    if (p < 2)
        throw DataError("agreement needs at least 2 raters, got " + std::to_string(p));
    if (q < 1) throw DataError("agreement needs at least 1 question");

    if (mode == AgreementMode::AllAgree) {
        int unanimous = 0;
        for (int j = 0; j < q; ++j) {
            bool all = true;
            for (int r = 1; r < p && all; ++r) all = panel.at(r, j) == panel.at(0, j);
            if (all) ++unanimous;
        }
        return static_cast<double>(unanimous) / q;
    }

    // Single division keeps this bit-identical to any oracle that tallies
    // the same matches.
    long long matches = 0;
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            for (int j = 0; j < q; ++j)
                if (panel.at(a, j) == panel.at(b, j)) ++matches;
    const long long pairs = static_cast<long long>(p) * (p - 1) / 2;
    return static_cast<double>(matches) / (static_cast<double>(pairs) * q);
}

std::vector<double> per_replication_agreement(
    const std::vector<JudgmentMatrix>& judge_matrices, AgreementMode mode) {
    if (judge_matrices.size() < 2)
        throw DataError("per-replication agreement needs at least 2 judges, got " +
                        std::to_string(judge_matrices.size()));
    const auto& first = judge_matrices.front();
    for (const auto& m : judge_matrices) {
        if (m.question_ids() != first.question_ids())
            throw DataError("judges do not share the identical question list");
        if (m.replications() != first.replications())
            throw DataError("judges do not share the replication count");
        const auto check = validate(m);
        if (!check.ok())
            throw DataError("judge matrix failed validation: " +
                            check.defects.front().detail);
    }

    std::vector<std::string> labels(judge_matrices.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "judge" + std::to_string(i);

    std::vector<double> out;
    out.reserve(first.replications());
    for (int rep = 0; rep < first.replications(); ++rep) {
        std::vector<std::vector<Category>> rows(judge_matrices.size());
        for (std::size_t j = 0; j < judge_matrices.size(); ++j) {
            rows[j].reserve(first.questions());
            for (int q = 0; q < first.questions(); ++q)
                rows[j].push_back(judge_matrices[j].at(q, rep));
        }
        out.push_back(inter_rater_agreement(
            RaterPanel(labels, first.question_ids(), std::move(rows)), mode));
    }
    return out;
}

}  // namespace relia
