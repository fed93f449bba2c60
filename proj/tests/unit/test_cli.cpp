#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "tscarma/cli.hpp"
#include "tscarma/errors.hpp"

using namespace tscarma;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "model": {"family": "ptss", "alpha": 0.5, "p": 1, "delta": 1, "lambda": 1},
  "carma": {"a": [3, 2], "b": [3, 1]},
  "T": 4, "kappa": 2, "n": 20, "grid_step": 0.5
})";

std::string with(const std::string& from, const std::string& to) {
  std::string s = kMinimal;
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

std::string config_error(const std::string& json) {
  try {
    cli::parse_config(json);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "<no error>";
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tscarma_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::string slurp(const std::string& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

// Decimal comma and digit grouping, to catch locale leaks into CSV output.
struct CommaPunct : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST_CASE("minimal config") {
  const auto c = cli::parse_config(kMinimal);
  CHECK(std::get<PTSSParams>(c.model).alpha == 0.5);
  CHECK(c.carma.a == std::vector<double>{3.0, 2.0});
  CHECK(c.T == 4.0);
  CHECK(c.kappa == 2.0);
  CHECK(c.n == 20);
  CHECK(c.seed == 0);
  CHECK(c.output_path.empty());
  CHECK(cli::effective_times(c) == std::vector<double>{1.0, 4.0});
}

TEST_CASE("config errors name the offending key") {
  CHECK(config_error(with("\"alpha\": 0.5", "\"alpha\": 2.0")).find("model.alpha") != std::string::npos);
  CHECK(config_error(with("\"alpha\": 0.5", "\"alpha\": 2.0")).find("(0, 2)") != std::string::npos);
  CHECK(config_error(with("\"b\": [3, 1]", "\"b\": [3, 2]")).find("b_q = 1") != std::string::npos);
  CHECK(config_error(with("\"lambda\": 1", "\"lambda\": 1, \"beta\": 3")) == "model.beta: unknown key");
  CHECK(config_error(with("\"T\": 4", "\"T\": 4, \"bogus\": 1")) == "bogus: unknown key");
  CHECK(config_error(with("\"n\": 20, ", "")).find("n: missing") != std::string::npos);
  CHECK(config_error(with("\"grid_step\": 0.5", "\"grid_step\": 0.3")).find("grid_step") != std::string::npos);
  CHECK(config_error(with("\"ptss\"", "\"stable\"")).find("model.family") != std::string::npos);
  CHECK(config_error(with("\"alpha\": 0.5", "\"alpha\": 1.5")).rfind("model: ", 0) == 0);
  CHECK(config_error(with("\"a\": [3, 2]", "\"a\": [0, -1]")).find("root") != std::string::npos);
  CHECK(config_error(with("\"n\": 20", "\"n\": 2.5")).find("n: expected an integer") != std::string::npos);
  CHECK(config_error("{not json").rfind("invalid JSON", 0) == 0);
  CHECK_THROWS_AS(cli::load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("property: serialize and reload round-trips") {
  std::vector<std::string> texts{kMinimal};
  texts.push_back(with("{\"family\": \"ptss\", \"alpha\": 0.5, \"p\": 1, \"delta\": 1, \"lambda\": 1}",
                       "{\"family\": \"pcts\", \"alpha\": 1.4, \"p\": 0.5, \"delta_plus\": 1, \"delta_minus\": 2,"
                       " \"lambda_plus\": 0.3, \"lambda_minus\": 1.1}"));
  texts.push_back(with("{\"family\": \"ptss\", \"alpha\": 0.5, \"p\": 1, \"delta\": 1, \"lambda\": 1}",
                       "{\"family\": \"pgts\", \"alpha\": 0.8, \"p\": 2, \"beta\": 3, \"lambda\": 0.1}"));
  texts.push_back(with("\"grid_step\": 0.5",
                       "\"grid_step\": 0.5, \"seed\": 18446744073709551615, \"output_path\": \"x.csv\","
                       " \"times\": [0.1, 0.30000000000000004], \"replications\": 7, \"bins\": 3,"
                       " \"n_values\": [1, 5], \"scheme\": \"general\", \"allow_case_ii\": true"));
  for (const auto& t : texts) {
    const auto c = cli::parse_config(t);
    const std::string s = cli::serialize_config(c);
    CHECK(s.back() == '\n');
    const auto back = cli::parse_config(s);
    CHECK(back == c);
    CHECK(cli::serialize_config(back) == s);
  }
}

TEST_CASE("validate subcommand") {
  TempDir dir;
  const auto good = dir.write("good.json", kMinimal);
  const auto r = run({"validate", "--config", good});
  CHECK(r.code == 0);
  CHECK(r.out.find("lambda: -1,-2\n") != std::string::npos);
  CHECK(r.out.find("residues: 2,-1\n") != std::string::npos);

  const auto bad = dir.write("bad.json", with("\"a\": [3, 2]", "\"a\": [0, -1]"));
  const auto rb = run({"validate", "--config", bad});
  CHECK(rb.code == 2);
  CHECK(rb.err.find("non-negative root") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate", "--config", "x"}).code == 1);
  CHECK(run({"simulate"}).code == 1);
  CHECK(run({"simulate", "--config", "x", "--jobs", "0"}).code == 1);
  CHECK(run({"simulate", "--config", "x", "--seed", "-3"}).code == 1);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("mc-table") != std::string::npos);
  CHECK(run({"moments", "--config", "/nonexistent.json"}).code == 2);
}

TEST_CASE("property: every subcommand is deterministic") {
  TempDir dir;
  const auto cfg = dir.write("c.json", with("\"grid_step\": 0.5", "\"grid_step\": 0.5, \"replications\": 40, "
                                                                  "\"sample_size\": 40, \"n_values\": [10, 100]"));
  for (const std::string cmd : {"validate", "simulate", "mc-table", "iid", "moments", "error-bound"}) {
    const auto a = run({cmd, "--config", cfg, "--seed", "7"});
    const auto b = run({cmd, "--config", cfg, "--seed", "7"});
    CAPTURE(cmd);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    CHECK(a.out.back() == '\n');
  }
  const auto s7 = run({"simulate", "--config", cfg, "--seed", "7"});
  const auto s8 = run({"simulate", "--config", cfg, "--seed", "8"});
  CHECK(s7.out != s8.out);
  CHECK(s7.out.rfind("t,value\n", 0) == 0);
  const auto j1 = run({"mc-table", "--config", cfg, "--jobs", "1"});
  const auto j4 = run({"mc-table", "--config", cfg, "--jobs", "4"});
  CHECK(j1.out == j4.out);
  CHECK(j1.out.rfind("t,mean_acc,mean_se,var_acc,var_se\n", 0) == 0);
  CHECK(run({"moments", "--config", cfg}).out.rfind("n,m1_n,m2_n,m1,m2,sigma_n_sq\n", 0) == 0);
  CHECK(run({"error-bound", "--config", cfg}).out.rfind("t,bound,c1,c2,c3,c4\n", 0) == 0);
}

TEST_CASE("file outputs and locale independence") {
  TempDir dir;
  const auto cfg = dir.write("c.json", with("\"grid_step\": 0.5", "\"grid_step\": 0.5, \"replications\": 20, "
                                                                  "\"sample_size\": 30, \"bins\": 4"));
  const std::locale previous = std::locale::global(std::locale(std::locale::classic(), new CommaPunct));
  const auto out = (dir.path / "iid.csv").string();
  const auto r = run({"iid", "--config", cfg, "--out", out});
  const auto m = run({"moments", "--config", cfg});
  std::locale::global(previous);
  REQUIRE(r.code == 0);
  for (const auto& p : {out, out + ".hist.csv", out + ".box.csv"}) {
    const std::string s = slurp(p);
    CAPTURE(p);
    REQUIRE(!s.empty());
    CHECK(s.back() == '\n');
  }
  const std::string hist = slurp(out + ".hist.csv");
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 5);
  // Every line of a CSV has the header's field count: no decimal commas.
  std::istringstream lines(m.out);
  std::string line;
  std::getline(lines, line);
  const auto fields = std::count(line.begin(), line.end(), ',');
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == fields);
    CHECK(line.find('.') != std::string::npos);
  }
}

TEST_CASE("deterministic environment switch") {
  ::unsetenv("TOOL_DETERMINISTIC");
  ::unsetenv("TSCARMA_DETERMINISTIC");
  CHECK_FALSE(cli::deterministic_env());
  ::setenv("TOOL_DETERMINISTIC", "1", 1);
  CHECK(cli::deterministic_env());
  ::setenv("TOOL_DETERMINISTIC", "0", 1);
  CHECK_FALSE(cli::deterministic_env());
  ::unsetenv("TOOL_DETERMINISTIC");
}
