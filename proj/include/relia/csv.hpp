#pragma once

#include <filesystem>
#include <iosfwd>

#include "relia/judgment.hpp"

namespace relia {

/// Judgment CSV: header `question_id,replication,category`, one row per
/// cell, replication 0-based, category one of A..E or NONRESPONSE.
/// Fields containing commas or quotes are double-quoted.
void write_judgment_csv(std::ostream& out, const JudgmentMatrix& matrix);
void write_judgment_csv(const std::filesystem::path& path,
                        const JudgmentMatrix& matrix);

/// Loads a judgment CSV. Cell-level problems (bad category, bad
/// replication index, duplicate or missing cells) throw DataError
/// naming the line; structural defects (ragged question rows) survive
/// into the returned matrix for validate() to report. Questions keep
/// first-appearance order.
JudgmentMatrix read_judgment_csv(std::istream& in);
JudgmentMatrix read_judgment_csv(const std::filesystem::path& path);

}  // namespace relia
