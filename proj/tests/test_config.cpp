#include "catch_amalgamated.hpp"

#include <sstream>

#include "qao/config.hpp"

TEST_CASE("parse_lambda accepts decimals and fractions") {
  CHECK(qao::parse_lambda("0.3").value == 0.3);
  CHECK(qao::parse_lambda("3/10").value == 3.0 / 10.0);
  CHECK(qao::parse_lambda(" 1/10 ").label == "1/10");
  CHECK(qao::parse_lambda("1000").value == 1000.0);
  CHECK(qao::parse_lambda("1e-2").value == 0.01);
}

TEST_CASE("parse_lambda rejects malformed text") {
  for (const char* bad : {"", "abc", "1/0", "-1", "1/", "/2", "0.5x", "nan", "inf"}) {
    INFO(bad);
    CHECK_THROWS_AS(qao::parse_lambda(bad), qao::UsageError);
  }
}

TEST_CASE("parse_lambda_list") {
  const auto l = qao::parse_lambda_list("0,1/10, 2");
  REQUIRE(l.size() == 3);
  CHECK(l[1].value == 0.1);
  CHECK(l[2].label == "2");
  CHECK_THROWS_AS(qao::parse_lambda_list("1,,2"), qao::UsageError);
}

TEST_CASE("RunConfig defaults") {
  const qao::RunConfig c;
  CHECK(c.lambda_grid.size() == 9);
  CHECK(c.lambda_grid[1].label == "1/10");
  CHECK(c.seed == 20250601);
  CHECK(c.restarts == 16);
  CHECK(c.levels == 6);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("config file parsing") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "lambda_grid = 0, 1/2, 10\n"
      "seed = 42\n"
      "even_odd_only = true\n"
      "format = json\n"
      "jobs = 2\n");
  qao::RunConfig c;
  qao::load_config(in, c, "test.cfg");
  CHECK(c.lambda_grid.size() == 3);
  CHECK(c.lambda_grid[1].value == 0.5);
  CHECK(c.seed == 42);
  CHECK(c.even_odd_only);
  CHECK(c.format == qao::OutputFormat::Json);
  CHECK(c.jobs == 2);
}

TEST_CASE("config file errors name the line") {
  auto message_of = [](const std::string& text) {
    std::istringstream in(text);
    qao::RunConfig c;
    try {
      qao::load_config(in, c, "run.cfg");
    } catch (const qao::UsageError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("seed = 1\ncolour = red\n").find("run.cfg:2") != std::string::npos);
  CHECK(message_of("colour = red\n").find("unknown configuration key 'colour'") != std::string::npos);
  CHECK(message_of("levels\n").find("expected 'key = value'") != std::string::npos);
  CHECK(message_of("levels = six\n").find("invalid levels") != std::string::npos);
  CHECK(message_of("format = xml\n").find("invalid format") != std::string::npos);
}

TEST_CASE("validate rejects out-of-range settings") {
  qao::RunConfig c;
  c.levels = 13;
  CHECK_THROWS_AS(c.validate(), qao::UsageError);
  c = qao::RunConfig{};
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), qao::UsageError);
  c = qao::RunConfig{};
  c.oracle_tol = 0;
  CHECK_THROWS_AS(c.validate(), qao::UsageError);
}

TEST_CASE("missing config file is an IO error") {
  CHECK_THROWS_AS(qao::load_config_file("/nonexistent/qao.cfg"), qao::IoError);
}
