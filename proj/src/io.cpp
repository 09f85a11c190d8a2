#include "reclab/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace reclab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_fields(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(unquote(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view text, std::size_t line_no) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError(line_no, "not a number: '" + std::string(text) + "'");
  if (!std::isfinite(value)) throw ParseError(line_no, "non-finite rating");
  return value;
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

RatingMatrix read_tuples(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) break;
  }
  if (line_no == 0 || is_blank(line)) throw EmptyInput("empty rating file");
  auto header = split_fields(line);
  // R's write.csv prepends an unnamed row-name column.
  const bool row_names = header.size() == 4 && header[0].empty();
  if (row_names) header.erase(header.begin());
  if (header != std::vector<std::string>{"user", "item", "rating"})
    throw ParseError(line_no, "expected header 'user,item,rating'");

  std::vector<RatingTuple> tuples;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_fields(line);
    if (row_names && fields.size() == 4) fields.erase(fields.begin());
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty label");
    tuples.push_back({fields[0], fields[1], parse_number(fields[2], line_no)});
  }
  return RatingMatrix::from_tuples(tuples);
}

RatingMatrix read_dense(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_blank(line)) break;
  }
  if (line_no == 0 || is_blank(line)) throw EmptyInput("empty rating file");
  auto header = split_fields(line);
  if (header.size() < 2) throw ParseError(line_no, "dense header needs at least one item column");
  std::vector<std::string> items(header.begin() + 1, header.end());
  std::vector<std::string> users;
  std::vector<int> outer{0}, inner;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields");
    if (fields[0].empty()) throw ParseError(line_no, "empty user label");
    users.push_back(fields[0]);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      if (fields[k].empty() || fields[k] == "NA") continue;
      inner.push_back(static_cast<int>(k - 1));
      values.push_back(parse_number(fields[k], line_no));
    }
    outer.push_back(static_cast<int>(inner.size()));
  }
  if (values.empty()) throw EmptyInput("dense file contains no ratings");
  return RatingMatrix::from_csr(LabelSet(std::move(users)), LabelSet(std::move(items)),
                                std::move(outer), std::move(inner), std::move(values));
}

RatingMatrix read_jester(std::istream& in) {
  constexpr double not_rated = 99.0;
  std::string line;
  std::size_t line_no = 0;
  Index width = -1;
  std::vector<int> outer{0}, inner;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (width < 0) width = static_cast<Index>(fields.size());
    if (static_cast<Index>(fields.size()) != width || width < 2)
      throw ParseError(line_no, "inconsistent number of fields");
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const double v = parse_number(fields[k], line_no);
      if (v == not_rated) continue;
      inner.push_back(static_cast<int>(k - 1));
      values.push_back(v);
    }
    outer.push_back(static_cast<int>(inner.size()));
  }
  if (values.empty()) throw EmptyInput("jester file contains no ratings");
  const auto n_users = static_cast<Index>(outer.size()) - 1;
  return RatingMatrix::from_csr(LabelSet::numbered("u", n_users), LabelSet::numbered("j", width - 1),
                                std::move(outer), std::move(inner), std::move(values));
}

}  // namespace

CsvFormat parse_csv_format(std::string_view text) {
  if (text == "tuples") return CsvFormat::tuples;
  if (text == "dense") return CsvFormat::dense;
  if (text == "jester") return CsvFormat::jester;
  throw InvalidArgument("unknown CSV format '" + std::string(text) + "'");
}

std::string_view to_string(CsvFormat format) {
  switch (format) {
    case CsvFormat::tuples: return "tuples";
    case CsvFormat::dense: return "dense";
    case CsvFormat::jester: return "jester";
  }
  return "tuples";
}

RatingMatrix read_csv(std::istream& in, CsvFormat format) {
  switch (format) {
    case CsvFormat::tuples: return read_tuples(in);
    case CsvFormat::dense: return read_dense(in);
    case CsvFormat::jester: return read_jester(in);
  }
  throw InvalidArgument("unknown CSV format");
}

RatingMatrix read_csv(const std::filesystem::path& path, CsvFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_csv(in, format);
}

void write_tuples_csv(std::ostream& out, const RatingMatrix& m) {
  out << "user,item,rating\n";
  for (Index u = 0; u < m.n_users(); ++u) {
    const auto r = m.row(u);
    for (std::size_t k = 0; k < r.items.size(); ++k)
      out << m.user_labels()[u] << ',' << m.item_labels()[r.items[k]] << ','
          << format_number(r.values[k]) << '\n';
  }
}

void write_dense_csv(std::ostream& out, const RatingMatrix& m) {
  out << "user";
  for (const auto& item : m.item_labels().labels()) out << ',' << item;
  out << '\n';
  for (Index u = 0; u < m.n_users(); ++u) {
    out << m.user_labels()[u];
    const auto r = m.row(u);
    std::size_t k = 0;
    for (Index i = 0; i < m.n_items(); ++i) {
      out << ',';
      if (k < r.items.size() && r.items[k] == i) out << format_number(r.values[k++]);
    }
    out << '\n';
  }
}

std::string format_number(double value) {
  if (std::isnan(value)) return "NA";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

}  // namespace reclab
