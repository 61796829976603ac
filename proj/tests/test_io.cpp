// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "oht/io.hpp"

namespace {

std::string parse_error_of(const std::string& text, bool header = false) {
  std::istringstream in(text);
  try {
    oht::read_sequences_csv(in, header);
  } catch (const oht::ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sequence CSV parsing") {
  std::istringstream in("# comment\n0,0,0\n\n0, 0 ,0\n0,0,0\n0,0,0\n1,1,1\n1,1,1\n");
  const auto s = oht::read_sequences_csv(in);
  CHECK(s.count() == 6);
  CHECK(s.length() == 3);
  CHECK(s.row(5)[2] == 1.0);

  std::istringstream h("a,b\n1.5,-2e-3\n3,4\n5,6\n");
  const auto t = oht::read_sequences_csv(h, true);
  CHECK(t.count() == 3);
  CHECK(t.row(0)[1] == -2e-3);
}

TEST_CASE("sequence CSV errors carry a location") {
  CHECK(parse_error_of("0,0\n0,x\n0,0\n").find("line 2, column 2") != std::string::npos);
  CHECK(parse_error_of("0,0\n0,0,0\n0,0\n").find("line 2") != std::string::npos);
  CHECK(parse_error_of("0,0\n0,0\n").find("at least 3") != std::string::npos);
  CHECK(parse_error_of("0\n1\n2\n").find("at least 2") != std::string::npos);
  CHECK(parse_error_of("0,0\n0,inf\n0,0\n").find("line 2, column 2") != std::string::npos);
  CHECK(parse_error_of("0,0\n0,0\n0,\n").find("line 3, column 2") != std::string::npos);
  CHECK_FALSE(parse_error_of("0,0\n0,0\n0,0\n").size());
}

TEST_CASE("float formatting round-trips") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(gen) * std::pow(10.0, static_cast<int>(i % 40) - 20);
    CHECK(std::stod(oht::format_double(v)) == v);
  }
  CHECK(oht::format_double(0.25) == "0.25");
  CHECK(std::strtod(oht::format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr) ==
        std::numeric_limits<double>::denorm_min());
}

TEST_CASE("n-sweep CSV round trip") {
  std::vector<oht::SweepPoint> rows;
  std::mt19937_64 gen(9);
  for (std::size_t n = 5; n <= 65; n += 10) {
    oht::SweepPoint p;
    p.n = n;
    p.estimates.trials = 1000;
    p.estimates.miscls_count = gen() % 500;
    p.estimates.false_reject_count = gen() % 300;
    p.estimates.false_alarm_count = gen() % 100;
    rows.push_back(p);
  }
  std::stringstream buf;
  oht::write_sweep_n_csv(buf, rows);
  CHECK(buf.str().rfind(std::string(oht::kSweepNHeader) + "\n", 0) == 0);
  const auto back = oht::read_sweep_n_csv(buf);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].estimates == rows[i].estimates);
  }
  std::stringstream again;
  oht::write_sweep_n_csv(again, back);
  std::stringstream first;
  oht::write_sweep_n_csv(first, rows);
  CHECK(again.str() == first.str());
}

TEST_CASE("lambda-sweep CSV round trip") {
  std::vector<oht::LambdaPoint> rows;
  for (int g = 1; g <= 3; ++g) {
    oht::LambdaPoint p;
    p.alpha = 0.1 * g;
    p.lambda = 0.036108723813702843 * g;
    p.n = 60;
    p.non_null.trials = 500;
    p.non_null.miscls_count = 10u * g;
    p.non_null.false_reject_count = 2u * g;
    p.null.trials = 500;
    p.null.false_alarm_count = 100u / g;
    rows.push_back(p);
  }
  std::stringstream buf;
  oht::write_sweep_lambda_csv(buf, rows);
  CHECK(buf.str().rfind(std::string(oht::kSweepLambdaHeader) + "\n", 0) == 0);
  const auto back = oht::read_sweep_lambda_csv(buf);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].alpha == rows[i].alpha);
    CHECK(back[i].lambda == rows[i].lambda);
    CHECK(back[i].n == 60);
    CHECK(back[i].non_null.miscls_count == rows[i].non_null.miscls_count);
    CHECK(back[i].non_null.false_reject_count == rows[i].non_null.false_reject_count);
    CHECK(back[i].null.false_alarm_count == rows[i].null.false_alarm_count);
  }
}

TEST_CASE("results CSV errors") {
  std::istringstream no_header("1,2,3\n");
  CHECK_THROWS_AS(oht::read_sweep_n_csv(no_header), oht::ParseError);
  std::istringstream short_row(std::string(oht::kSweepNHeader) + "\n5,100,1\n");
  CHECK_THROWS_AS(oht::read_sweep_n_csv(short_row), oht::ParseError);
}
