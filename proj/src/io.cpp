// SPDX-License-Identifier: Apache-2.0
#include "oht/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string_view>

#include "oht/errors.hpp"

namespace oht {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view field, std::size_t line, std::size_t column) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, column, "not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) throw ParseError(line, column, "non-finite value");
  return value;
}

std::uint64_t parse_count(std::string_view field, std::size_t line, std::size_t column) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, column, "not a non-negative integer: '" + std::string(field) + "'");
  }
  return value;
}

bool skippable(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

void write_estimate_columns(std::ostream& out, std::uint64_t trials, std::uint64_t miscls,
                            std::uint64_t false_reject, std::uint64_t false_alarm) {
  using E = ErrorEstimates;
  out << trials << ',' << miscls << ',' << false_reject << ',' << false_alarm << ','
      << format_double(E::rate(miscls, trials)) << ',' << format_double(E::rate(false_reject, trials))
      << ',' << format_double(E::rate(false_alarm, trials)) << ','
      << format_double(E::standard_error(miscls, trials)) << ','
      << format_double(E::standard_error(false_reject, trials)) << ','
      << format_double(E::standard_error(false_alarm, trials)) << '\n';
}

// Returns the non-comment data rows after checking the header.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> read_table(
    std::istream& in, const char* header, std::vector<std::string>& storage) {
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    if (!seen_header) {
      if (trim(line) != header) throw ParseError(line_no, 1, "unexpected header");
      seen_header = true;
      continue;
    }
    storage.push_back(line);
    positions.emplace_back(line_no, storage.size() - 1);
  }
  if (!seen_header) throw ParseError(line_no + 1, 1, "missing header");
  const std::size_t width = split(header).size();
  std::vector<std::pair<std::size_t, std::vector<std::string_view>>> rows;
  for (const auto& [no, idx] : positions) {
    auto fields = split(storage[idx]);
    if (fields.size() != width) {
      throw ParseError(no, std::min(fields.size(), width) + 1, "expected " + std::to_string(width) + " fields");
    }
    rows.emplace_back(no, std::move(fields));
  }
  return rows;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

SequenceSet read_sequences_csv(std::istream& in, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(parse_double(fields[c], line_no, c + 1));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line_no, std::min(row.size(), rows.front().size()) + 1,
                       "sequence has " + std::to_string(row.size()) + " samples, expected " +
                           std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 3) {
    throw ParseError(line_no + 1, 1, "need at least 3 sequences, found " + std::to_string(rows.size()));
  }
  if (rows.front().size() < 2) throw ParseError(1, 1, "sequences need at least 2 samples");
  return SequenceSet::from_rows(rows);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, ptr);
}

const char* const kSweepNHeader =
    "n,trials,miscls_count,false_reject_count,false_alarm_count,beta_hat,zeta_hat,fa_hat,beta_se,"
    "zeta_se,fa_se";
const char* const kSweepLambdaHeader =
    "alpha,lambda,n,trials,miscls_count,false_reject_count,false_alarm_count,beta_hat,zeta_hat,"
    "fa_hat,beta_se,zeta_se,fa_se";

void write_sweep_n_csv(std::ostream& out, std::span<const SweepPoint> rows) {
  out << kSweepNHeader << '\n';
  for (const auto& r : rows) {
    const auto& e = r.estimates;
    out << r.n << ',';
    write_estimate_columns(out, e.trials, e.miscls_count, e.false_reject_count, e.false_alarm_count);
  }
}

void write_sweep_lambda_csv(std::ostream& out, std::span<const LambdaPoint> rows) {
  out << kSweepLambdaHeader << '\n';
  for (const auto& r : rows) {
    if (r.non_null.trials != r.null.trials) {
      throw std::logic_error("paired lambda-sweep runs must share the trial count");
    }
    out << format_double(r.alpha) << ',' << format_double(r.lambda) << ',' << r.n << ',';
    write_estimate_columns(out, r.non_null.trials, r.non_null.miscls_count,
                           r.non_null.false_reject_count, r.null.false_alarm_count);
  }
}

std::vector<SweepPoint> read_sweep_n_csv(std::istream& in) {
  std::vector<std::string> storage;
  std::vector<SweepPoint> out;
  for (const auto& [no, f] : read_table(in, kSweepNHeader, storage)) {
    SweepPoint p;
    p.n = parse_count(f[0], no, 1);
    p.estimates.trials = parse_count(f[1], no, 2);
    p.estimates.miscls_count = parse_count(f[2], no, 3);
    p.estimates.false_reject_count = parse_count(f[3], no, 4);
    p.estimates.false_alarm_count = parse_count(f[4], no, 5);
    out.push_back(p);
  }
  return out;
}

std::vector<LambdaPoint> read_sweep_lambda_csv(std::istream& in) {
  std::vector<std::string> storage;
  std::vector<LambdaPoint> out;
  for (const auto& [no, f] : read_table(in, kSweepLambdaHeader, storage)) {
    LambdaPoint p;
    p.alpha = parse_double(f[0], no, 1);
    p.lambda = parse_double(f[1], no, 2);
    p.n = parse_count(f[2], no, 3);
    p.non_null.trials = p.null.trials = parse_count(f[3], no, 4);
    p.non_null.miscls_count = parse_count(f[4], no, 5);
    p.non_null.false_reject_count = parse_count(f[5], no, 6);
    p.null.false_alarm_count = parse_count(f[6], no, 7);
    out.push_back(p);
  }
  return out;
}

}  // namespace oht
