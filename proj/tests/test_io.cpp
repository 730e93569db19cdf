#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bose/error.hpp"
#include "bose/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bose;

namespace {
const char* kSweep = R"({
  "potential": {"family": "gaussian", "lambda": 0.1, "sigma": 1.0},
  "physics": {"rho": [1e-6, 1e-5, 1e-4]},
  "outputs": {"directory": "out/energy", "format": "csv"}
})";
}  // namespace

TEST_CASE("parse a sweep configuration") {
  const RunConfig c = parse_config(kSweep);
  REQUIRE(c.potential);
  CHECK(c.potential->lambda == 0.1);
  CHECK(c.potential->sigma == 1.0);
  CHECK(c.rho.size() == 3);
  CHECK(c.born_order == 3);
  CHECK(c.out_dir == "out/energy");
  CHECK(c.has("physics"));
  CHECK_FALSE(c.has("oracle"));
  CHECK_NOTHROW(c.require("physics", "energy"));
  CHECK_THROWS_AS(c.require("oracle", "oracle"), ConfigError);
  CHECK(c.tolerance("lhy") == 0.05);
  CHECK_THROWS_AS(c.tolerance("nonsense"), ConfigError);
}

TEST_CASE("rejected configurations") {
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"potentail": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"family": "gaussian", "lambda": 0.1, "sigma": 1, "x": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"family": "gaussian", "lambda": "big", "sigma": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"family": "square", "lambda": 0.1, "sigma": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"physics": {"rho": [1e-4, 1e-5]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"physics": {"rho": [-1e-4]}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"lhy": -1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"tolerances": {"speed": 1}})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"outputs": {"format": "xml"}})"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("environment overrides") {
  RunConfig c = parse_config(kSweep);
  ::setenv("BOSE_TOL_LHY", "0.02", 1);
  apply_env_overrides(c);
  CHECK(c.tolerance("lhy") == 0.02);
  ::setenv("BOSE_TOL_LHY", "abc", 1);
  CHECK_THROWS_AS(apply_env_overrides(c), ConfigError);
  ::unsetenv("BOSE_TOL_LHY");
}

TEST_CASE("configuration hash") {
  const RunConfig a = parse_config(kSweep);
  const RunConfig reordered = parse_config(R"({
    "outputs": {"format": "csv", "directory": "out/energy"},
    "physics": {"rho": [1e-6, 1e-5, 1e-4]},
    "potential": {"sigma": 1.0, "lambda": 0.1, "family": "gaussian"}
  })");
  CHECK(config_hash(a) == config_hash(reordered));
  CHECK(config_hash(a).size() == 16);
  RunConfig b = parse_config(R"({
    "potential": {"family": "gaussian", "lambda": 0.2, "sigma": 1.0},
    "physics": {"rho": [1e-6, 1e-5, 1e-4]},
    "outputs": {"directory": "out/energy", "format": "csv"}
  })");
  CHECK(config_hash(a) != config_hash(b));
  RunConfig tightened = parse_config(kSweep);
  ::setenv("BOSE_TOL_LHY", "0.01", 1);
  apply_env_overrides(tightened);
  ::unsetenv("BOSE_TOL_LHY");
  CHECK(config_hash(a) != config_hash(tightened));
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(std::stod(format_number(0.021771130415069746)) == 0.021771130415069746);
  CHECK(format_number(1.0 / 0.0) == "inf");
  CHECK(format_number(-1.0 / 0.0) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("rendering") {
  Table t;
  t.add_meta("command", "energy");
  t.add_meta("a", 0.5);
  t.columns = {"name", "value"};
  t.rows = {{"plain", "1"}, {"with, comma", "2"}, {"say \"hi\"", "3"}};
  const std::string csv = render_csv(t);
  CHECK(csv.find("# command: energy\n") == 0);
  CHECK(csv.find("# a: 0.5\n") != std::string::npos);
  CHECK(csv.find("name,value\n") != std::string::npos);
  CHECK(csv.find("\"with, comma\",2\n") != std::string::npos);
  CHECK(csv.find("\"say \"\"hi\"\"\",3\n") != std::string::npos);
  const std::string doc = render_doc(t);
  CHECK(doc.find("\"meta\"") != std::string::npos);
  CHECK(doc.find("\"rows\"") != std::string::npos);
  CHECK(doc.find("\"with, comma\"") != std::string::npos);
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "bose_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.csv";
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "second\n");
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    (void)entry;
    ++files;
  }
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
