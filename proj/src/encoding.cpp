#include "relia/encoding.hpp"

#include <string>

#include "relia/error.hpp"

namespace relia {

std::string_view to_string(EncodingMode m) {
    return m == EncodingMode::IntegerCodes ? "integer-codes" : "modal-agreement";
}

std::string_view to_string(ItemEncoding e) {
    switch (e) {
        case ItemEncoding::IntegerCodes: return "integer-codes";
        case ItemEncoding::ModalAgreement: return "modal-agreement";
        case ItemEncoding::Continuous: return "continuous";
    }
    return "continuous";
}

ItemEncoding item_encoding(EncodingMode m) {
    return m == EncodingMode::IntegerCodes ? ItemEncoding::IntegerCodes
                                           : ItemEncoding::ModalAgreement;
}

std::map<Category, double> EncodingScheme::integer_codebook() {
    std::map<Category, double> book;
    for (Category c : all_categories) book[c] = integer_code(c);
    return book;
}

ItemMatrix encode(const JudgmentMatrix& matrix, const EncodingScheme& scheme) {
    const int nq = matrix.questions();
    const int nr = matrix.replications();
    ItemMatrix out;
    out.encoding = item_encoding(scheme.mode);
    out.values.resize(nq, nr);

    if (scheme.mode == EncodingMode::IntegerCodes) {
        for (int q = 0; q < nq; ++q)
            for (int r = 0; r < nr; ++r) {
                const Category c = matrix.at(q, r);
                const auto it = scheme.codebook.find(c);
                if (it == scheme.codebook.end())
                    throw ConfigError("codebook has no entry for category " +
                                      std::string(to_string(c)));
                out.values(q, r) = it->second;
            }
        return out;
    }

    for (int q = 0; q < nq; ++q) {
        const Category mode_q = modal_category(matrix.row(q));
        for (int r = 0; r < nr; ++r)
            out.values(q, r) = matrix.at(q, r) == mode_q ? 1.0 : 0.0;
    }
    return out;
}

}  // namespace relia
