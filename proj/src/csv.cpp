#include "relia/csv.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relia/error.hpp"

namespace relia {
namespace {

constexpr char kHeader[] = "question_id,replication,category";

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quoted(const std::string& field) {
    if (!needs_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

/// Splits one CSV record; handles double-quoted fields with "" escapes.
std::vector<std::string> split_record(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (in_quotes)
        throw DataError("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(std::move(field));
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

void write_judgment_csv(std::ostream& out, const JudgmentMatrix& matrix) {
    out << kHeader << '\n';
    for (int q = 0; q < matrix.questions(); ++q) {
        const std::string id = quoted(matrix.question_ids()[q]);
        for (std::size_t r = 0; r < matrix.row(q).size(); ++r)
            out << id << ',' << r << ',' << to_string(matrix.row(q)[r]) << '\n';
    }
}

void write_judgment_csv(const std::filesystem::path& path,
                        const JudgmentMatrix& matrix) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path.string());
    write_judgment_csv(out, matrix);
    if (!out) throw DataError("write failed: " + path.string());
}

JudgmentMatrix read_judgment_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kHeader)
        throw DataError(std::string("expected header `") + kHeader + "`");

    std::vector<std::string> ids;
    std::vector<std::map<int, Category>> rows;
    std::map<std::string, std::size_t> index;

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_record(line, line_no);
        if (fields.size() != 3)
            throw DataError("line " + std::to_string(line_no) + ": expected 3 fields, got " +
                            std::to_string(fields.size()));

        const std::string& id = fields[0];
        if (id.empty())
            throw DataError("line " + std::to_string(line_no) + ": empty question_id");

        int replication = -1;
        try {
            std::size_t used = 0;
            replication = std::stoi(fields[1], &used);
            if (used != fields[1].size()) replication = -1;
        } catch (const std::exception&) {
            replication = -1;
        }
        if (replication < 0)
            throw DataError("line " + std::to_string(line_no) +
                            ": bad replication index `" + fields[1] + "`");

        const auto category = category_from_string(fields[2]);
        if (!category)
            throw DataError("line " + std::to_string(line_no) + ": unknown category `" +
                            fields[2] + "`");

        const auto [it, inserted] = index.try_emplace(id, ids.size());
        if (inserted) {
            ids.push_back(id);
            rows.emplace_back();
        }
        auto& row = rows[it->second];
        if (!row.emplace(replication, *category).second)
            throw DataError("line " + std::to_string(line_no) + ": duplicate cell for " +
                            id + " replication " + std::to_string(replication));
    }

    // Each row must cover 0..k-1 contiguously; row lengths may still
    // disagree -- that ragged defect is validate()'s to report.
    std::vector<std::vector<Category>> dense(rows.size());
    int replications = 0;
    for (std::size_t q = 0; q < rows.size(); ++q) {
        const auto& row = rows[q];
        int expected = 0;
        dense[q].reserve(row.size());
        for (const auto& [rep, category] : row) {
            if (rep != expected)
                throw DataError("question " + ids[q] + " is missing replication " +
                                std::to_string(expected));
            ++expected;
            dense[q].push_back(category);
        }
        replications = std::max(replications, expected);
    }

    return JudgmentMatrix(std::move(ids), std::move(dense), replications);
}

JudgmentMatrix read_judgment_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open judgment CSV: " + path.string());
    return read_judgment_csv(in);
}

}  // namespace relia
