#pragma once

#include <Eigen/Core>

#include <map>
#include <string_view>

#include "relia/category.hpp"
#include "relia/judgment.hpp"

namespace relia {

enum class EncodingMode { IntegerCodes, ModalAgreement };

/// Tag carried by an ItemMatrix recording how its values came to be.
/// Continuous marks simulator output that never passed through a
/// categorical codebook.
enum class ItemEncoding { IntegerCodes, ModalAgreement, Continuous };

std::string_view to_string(EncodingMode m);
std::string_view to_string(ItemEncoding e);
ItemEncoding item_encoding(EncodingMode m);

/// How categorical judgments become real values.
///
/// IntegerCodes applies the codebook directly (default A..E -> 1..5,
/// NonResponse -> 0). ModalAgreement maps each cell to 1 when it equals
/// its question's modal category and 0 otherwise; the codebook is
/// ignored there. Neither is claimed to be canonical -- nominal
/// categories have no natural order -- so reports always record which
/// scheme produced a number.
struct EncodingScheme {
    EncodingMode mode = EncodingMode::IntegerCodes;
    std::map<Category, double> codebook = integer_codebook();

    static std::map<Category, double> integer_codebook();
    static EncodingScheme integer_codes() { return {}; }
    static EncodingScheme modal_agreement() {
        return {EncodingMode::ModalAgreement, integer_codebook()};
    }
};

/// Real-valued bridge between categorical judgments and correlation
/// analysis. Rows are questions (observations), columns replications
/// (items). Same shape as the source JudgmentMatrix; all values finite.
struct ItemMatrix {
    Eigen::MatrixXd values;
    ItemEncoding encoding = ItemEncoding::IntegerCodes;
};

/// Encodes a validated judgment matrix. Total and deterministic: the
/// same matrix and scheme always produce the identical ItemMatrix.
/// Throws ConfigError when an IntegerCodes codebook lacks a category
/// that actually occurs in the matrix.
ItemMatrix encode(const JudgmentMatrix& matrix, const EncodingScheme& scheme);

}  // namespace relia
