// SPDX-License-Identifier: Apache-2.0
#pragma once

// CSV formats.
//
// Sequence input: one sequence per line, comma-separated decimal floats.
// Blank lines and lines starting with '#' are skipped; an optional single
// header line can be skipped. All sequences must have the same length.
//
// Result tables (floats with 17 significant digits):
//   n-sweep:      n,trials,miscls_count,false_reject_count,false_alarm_count,
//                 beta_hat,zeta_hat,fa_hat,beta_se,zeta_se,fa_se
//   lambda-sweep: alpha,lambda, followed by the n-sweep columns. beta/zeta come
//                 from the planted-outlier runs, fa from the paired null runs.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oht/harness.hpp"
#include "oht/mmd.hpp"

namespace oht {

/// Malformed CSV input; line and column are 1-based (column = field index).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

SequenceSet read_sequences_csv(std::istream& in, bool has_header = false);

/// Shortest round-trip form with 17 significant digits.
std::string format_double(double value);

extern const char* const kSweepNHeader;
extern const char* const kSweepLambdaHeader;

void write_sweep_n_csv(std::ostream& out, std::span<const SweepPoint> rows);
void write_sweep_lambda_csv(std::ostream& out, std::span<const LambdaPoint> rows);

/// Reads the count columns back; derived columns are ignored (recompute them).
std::vector<SweepPoint> read_sweep_n_csv(std::istream& in);
std::vector<LambdaPoint> read_sweep_lambda_csv(std::istream& in);

}  // namespace oht
