#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "reclab/rating_matrix.hpp"

namespace reclab {

enum class CsvFormat {
  tuples,  ///< header `user,item,rating`, one rating per line
  dense,   ///< header row of item labels, first column user labels, empty cell = missing
  jester,  ///< Jester export: leading count column, 99 = not rated; labels u1.., j1..
};

CsvFormat parse_csv_format(std::string_view text);
std::string_view to_string(CsvFormat format);

RatingMatrix read_csv(std::istream& in, CsvFormat format);
RatingMatrix read_csv(const std::filesystem::path& path, CsvFormat format);

void write_tuples_csv(std::ostream& out, const RatingMatrix& m);
void write_dense_csv(std::ostream& out, const RatingMatrix& m);

/// Shortest decimal text that round-trips to the same double ("NA" for NaN).
std::string format_number(double value);

/// Writes `contents` to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace reclab
