#pragma once

#include <map>
#include <string>
#include <vector>

#include "relia/category.hpp"
#include "relia/judgment.hpp"

namespace relia {

/// Judgments from several judges over the same question set, for a
/// single replication index.
class RaterPanel {
public:
    /// Rectangular construction: judgments[r][q] is rater r's category
    /// for question q. Throws DataError on shape mismatches.
    RaterPanel(std::vector<std::string> raters,
               std::vector<std::string> question_ids,
               std::vector<std::vector<Category>> judgments);

    /// Builds a panel from per-rater maps; throws DataError when the
    /// raters do not cover the identical question set.
    static RaterPanel from_maps(
        const std::vector<std::pair<std::string, std::map<std::string, Category>>>&
            per_rater);

    int raters() const { return static_cast<int>(rater_labels_.size()); }
    int questions() const { return static_cast<int>(question_ids_.size()); }
    const std::vector<std::string>& rater_labels() const { return rater_labels_; }
    const std::vector<std::string>& question_ids() const { return question_ids_; }
    Category at(int rater, int question) const {
        return judgments_[rater][question];
    }

private:
    std::vector<std::string> rater_labels_;
    std::vector<std::string> question_ids_;
    std::vector<std::vector<Category>> judgments_;
};

/// MeanPairwise: for each unordered rater pair, the fraction of
/// questions judged identically, averaged over pairs (the default).
/// AllAgree: the fraction of questions on which every rater agrees.
enum class AgreementMode { MeanPairwise, AllAgree };

/// Percent agreement across the panel, in [0, 1]. Requires >= 2 raters
/// and >= 1 question.
///
/// With a common question count Q over P pairs, mean pairwise agreement
/// equals total matches / (P * Q); it is computed in that form so equal
/// tallies give bit-identical results.
double inter_rater_agreement(const RaterPanel& panel,
                             AgreementMode mode = AgreementMode::MeanPairwise);

/// One agreement value per replication across per-judge judgment
/// matrices. All matrices must share the identical question list and
/// replication count; throws DataError otherwise.
std::vector<double> per_replication_agreement(
    const std::vector<JudgmentMatrix>& judge_matrices,
    AgreementMode mode = AgreementMode::MeanPairwise);

}  // namespace relia
