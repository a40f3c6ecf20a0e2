#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "greyfc/greyfc.h"
#include "json.hpp"

namespace {

using nlohmann::json;

std::string cli_path() {
  const char *path = std::getenv("GREYFC_CLI");
  REQUIRE_MESSAGE(path != nullptr, "GREYFC_CLI must point at the binary");
  return path;
}

std::string work_dir() {
  static std::string dir = [] {
    std::string templ = "/tmp/greyfc_cli_XXXXXX";
    REQUIRE(mkdtemp(templ.data()) != nullptr);
    return templ;
  }();
  return dir;
}

std::string slurp(const std::string &path) {
  std::ifstream stream(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << stream.rdbuf();
  return buffer.str();
}

void spit(const std::string &path, const std::string &content) {
  std::ofstream stream(path, std::ios::binary);
  stream << content;
  REQUIRE(stream.good());
}

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::string &args, const std::string &env = "") {
  const std::string out_file = work_dir() + "/stdout.txt";
  const std::string err_file = work_dir() + "/stderr.txt";
  const std::string command = env + (env.empty() ? "" : " ") + cli_path() +
                              " " + args + " >" + out_file + " 2>" + err_file;
  const int status = std::system(command.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string case1_csv() {
  static std::string path = [] {
    greyfc_series *series = nullptr;
    size_t train_len = 0;
    REQUIRE(greyfc_builtin_dataset("case1", &series, &train_len) == GREYFC_OK);
    std::ostringstream csv;
    csv << "value\n";
    const double *values = greyfc_series_values(series);
    char buffer[64];
    for (size_t i = 0; i < greyfc_series_len(series); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.17g", values[i]);
      csv << buffer << "\n";
    }
    greyfc_series_free(series);
    const std::string file = work_dir() + "/case1.csv";
    spit(file, csv.str());
    return file;
  }();
  return path;
}

size_t count_lines(const std::string &text) {
  size_t lines = 0;
  for (char ch : text) {
    if (ch == '\n') ++lines;
  }
  return lines;
}

}  // namespace

TEST_CASE("fit gm on the case 1 csv") {
  const RunResult result =
      run("fit --model gm --input " + case1_csv() + " --train-n 12");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out);
  CHECK(report.at("command") == "fit");
  CHECK(report.at("model") == "gm");
  CHECK(report.at("train_n") == 12);
  CHECK(report.at("horizon") == 4);
  CHECK(report.at("seed") == 42);
  const double in_mape =
      report.at("report").at("metrics_in").at("mape").get<double>();
  CHECK(std::abs(in_mape - 1.9183) <= 0.02);
  const double out_mape =
      report.at("report").at("metrics_out").at("mape").get<double>();
  CHECK(std::abs(out_mape - 7.8142) <= 0.05);
}

TEST_CASE("fit ufgm with explicit unit orders equals the library fit") {
  const RunResult result = run("fit --model ufgm --r 1 --alpha 1 --input " +
                               case1_csv() + " --train-n 12");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json cli_report = json::parse(result.out).at("report");

  greyfc_series *series = nullptr;
  REQUIRE(greyfc_builtin_dataset("case1", &series, nullptr) == GREYFC_OK);
  const double hyper[] = {1.0, 1.0};
  greyfc_report *lib_report = nullptr;
  REQUIRE(greyfc_fit(series, 12, "ufgm", hyper, 2, 4, &lib_report) ==
          GREYFC_OK);
  const double *fitted = nullptr;
  size_t fitted_len = 0;
  REQUIRE(greyfc_report_fitted(lib_report, &fitted, &fitted_len) == GREYFC_OK);
  REQUIRE(cli_report.at("fitted").size() == fitted_len);
  for (size_t i = 0; i < fitted_len; ++i) {
    CHECK(cli_report.at("fitted").at(i).get<double>() == fitted[i]);
  }
  greyfc_report_free(lib_report);
  greyfc_series_free(series);
}

TEST_CASE("fit on a builtin case by name") {
  const RunResult result = run("fit --model dgm --case case2");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out);
  const double in_mape =
      report.at("report").at("metrics_in").at("mape").get<double>();
  CHECK(std::abs(in_mape - 3.4052) <= 0.02);
}

TEST_CASE("malformed input exits with code 2 and a diagnostic") {
  const std::string empty = work_dir() + "/empty.csv";
  spit(empty, "");
  const RunResult result = run("fit --model gm --input " + empty);
  CHECK(result.code == 2);
  CHECK(result.err.find("parse") != std::string::npos);

  const std::string junk = work_dir() + "/junk.csv";
  spit(junk, "value\n10\nbroken\n");
  const RunResult bad = run("fit --model gm --input " + junk);
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
}

TEST_CASE("singular fits exit with code 3") {
  const std::string constant = work_dir() + "/constant.csv";
  spit(constant, "5\n5\n5\n5\n5\n5\n");
  const RunResult result = run("fit --model gm --input " + constant);
  CHECK(result.code == 3);
  CHECK(result.err.find("singular") != std::string::npos);
  // DGM handles the same data through its linear limit
  const RunResult dgm = run("fit --model dgm --input " + constant);
  CHECK(dgm.code == 0);
}

TEST_CASE("search is deterministic and validates bounds") {
  const std::string out1 = work_dir() + "/search1.json";
  const std::string out2 = work_dir() + "/search2.json";
  const std::string args = "search --model ufgm --optimizer pso --seed 42 "
                           "--population 15 --iterations 25 --input " +
                           case1_csv() + " --train-n 12 --out ";
  REQUIRE(run(args + out1).code == 0);
  REQUIRE(run(args + out2).code == 0);
  const std::string first = slurp(out1);
  CHECK(first == slurp(out2));
  CHECK(!first.empty());

  const json report = json::parse(first);
  CHECK(report.at("best").at("fitness").get<double>() < 3.0);
  CHECK(report.at("best").at("trace").size() == 25);
  CHECK(report.at("runs").size() == 1);

  const RunResult bad = run("search --model ufgm --r-min 0 --input " +
                            case1_csv() + " --train-n 12");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("--r-min") != std::string::npos);
}

TEST_CASE("search across all algorithms picks the lowest fitness") {
  const RunResult result =
      run("search --model fgm --optimizer all --seed 4 --input " +
          case1_csv() + " --train-n 12");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out);
  REQUIRE(report.at("runs").size() == 4);
  double lowest = 1e300;
  for (const json &entry : report.at("runs")) {
    lowest = std::min(lowest, entry.at("best_fitness").get<double>());
  }
  CHECK(report.at("best").at("fitness").get<double>() == lowest);
  CHECK(report.at("report").at("model") == "fgm");
}

TEST_CASE("grid row counts and determinism") {
  const std::string out1 = work_dir() + "/grid1.csv";
  const RunResult result = run("grid --out " + out1);
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const std::string text = slurp(out1);
  CHECK(count_lines(text) == 12501);
  CHECK(text.rfind("initial_value,alpha,r,a,b,c,mape,status\n", 0) == 0);

  const std::string out2 = work_dir() + "/grid2.csv";
  REQUIRE(run("grid --out " + out2).code == 0);
  CHECK(text == slurp(out2));

  const RunResult single = run("grid --initial 1");
  REQUIRE(single.code == 0);
  CHECK(count_lines(single.out) == 3126);

  const RunResult custom = run("grid --initial 1:800000:200000 --alpha-grid "
                               "0.1:1:0.2 --r-grid 0.5 --a-grid 0.1:0.9:0.4 "
                               "--b-grid 0.3 --c-grid 0.3");
  REQUIRE(custom.code == 0);
  // 4 * 5 * 1 * 3 * 1 * 1 tuples plus the header
  CHECK(count_lines(custom.out) == 61);

  const RunResult bad = run("grid --initial 5:1:1");
  CHECK(bad.code == 2);
}

TEST_CASE("reproduce prints the comparison table") {
  const std::string out = work_dir() + "/repro.json";
  const RunResult result = run("reproduce --case case1 --population 10 "
                               "--iterations 20 --seeds 2 --seed 0 --out " +
                               out);
  REQUIRE_MESSAGE(result.code == 0, result.err);
  CHECK(result.out.find("in-sample MAPE") != std::string::npos);
  CHECK(result.out.find("ufgm") != std::string::npos);
  CHECK(result.out.find("1038.31") != std::string::npos);
  const json report = json::parse(slurp(out));
  CHECK(report.at("command") == "reproduce");
  CHECK(report.at("models").size() == 4);
  const double gm_in =
      report.at("models").at("gm").at("metrics_in").at("mape").get<double>();
  CHECK(std::abs(gm_in - 1.9183) <= 0.02);
  const double gm_out =
      report.at("models").at("gm").at("metrics_out").at("mape").get<double>();
  CHECK(std::abs(gm_out - 7.8142) <= 0.05);
  CHECK(report.at("models").at("ufgm").contains("search"));

  const RunResult missing = run("reproduce");
  CHECK(missing.code == 2);
}

TEST_CASE("forecast extends past the data end") {
  const RunResult result =
      run("forecast --model gm --case case1 --train-n 16");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out);
  CHECK(report.at("command") == "forecast");
  CHECK(report.at("horizon") == 4);
  CHECK(report.at("report").at("forecast").size() == 4);
  CHECK(!report.at("report").contains("metrics_out"));
}

TEST_CASE("fit without hyperparameters runs the search policy") {
  const RunResult result = run("fit --model fgm --case case1 --population 10 "
                               "--iterations 20 --seeds 2 --seed 0");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out).at("report");
  CHECK(report.contains("search"));
  CHECK(report.at("hyper").contains("r"));
  CHECK(report.at("search").at("best_fitness").get<double>() ==
        report.at("metrics_in").at("mape").get<double>());
}

TEST_CASE("search across all algorithms reaches the case 1 target") {
  const RunResult result = run("search --model ufgm --optimizer all --case "
                               "case1");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  const json report = json::parse(result.out);
  CHECK(report.at("best").at("fitness").get<double>() <= 0.97);
  CHECK(report.at("runs").size() == 4);
}

TEST_CASE("export-plot emits tidy csv") {
  const RunResult result = run("export-plot --model gm --input " +
                               case1_csv() + " --train-n 12 --horizon 4");
  REQUIRE_MESSAGE(result.code == 0, result.err);
  CHECK(result.out.rfind("k,actual,value,model\n", 0) == 0);
  CHECK(count_lines(result.out) == 17);  // header + 16 rows
  CHECK(result.out.find(",gm\n") != std::string::npos);
  CHECK(result.out.find("1038.31") != std::string::npos);

  const RunResult needs_hyper = run("export-plot --model ufgm --input " +
                                    case1_csv() + " --train-n 12");
  CHECK(needs_hyper.code == 2);

  const RunResult by_case = run("export-plot --case case1 --population 10 "
                                "--iterations 20 --seeds 2");
  REQUIRE_MESSAGE(by_case.code == 0, by_case.err);
  // header + 16 rows per model
  CHECK(count_lines(by_case.out) == 65);
  CHECK(by_case.out.find(",ufgm\n") != std::string::npos);
  CHECK(by_case.out.find(",dgm\n") != std::string::npos);
}

TEST_CASE("config file supplies defaults and flags override") {
  const std::string config = work_dir() + "/config.json";
  spit(config, "{\"model\": \"gm\", \"train-n\": 12}\n");
  const std::string env = "GREYFC_CONFIG=" + config;
  const RunResult result = run("fit --input " + case1_csv(), env);
  REQUIRE_MESSAGE(result.code == 0, result.err);
  CHECK(json::parse(result.out).at("model") == "gm");

  const RunResult overridden =
      run("fit --model dgm --input " + case1_csv(), env);
  REQUIRE(overridden.code == 0);
  CHECK(json::parse(overridden.out).at("model") == "dgm");

  const std::string bad_config = work_dir() + "/bad.json";
  spit(bad_config, "{\"mode\": \"gm\"}\n");
  const RunResult bad = run("fit --input " + case1_csv(),
                            "GREYFC_CONFIG=" + bad_config);
  CHECK(bad.code == 2);
  CHECK(bad.err.find("mode") != std::string::npos);

  const std::string invalid = work_dir() + "/invalid.json";
  spit(invalid, "not json");
  CHECK(run("fit --input " + case1_csv(), "GREYFC_CONFIG=" + invalid).code ==
        2);
}

TEST_CASE("unknown flags and missing subcommands are usage errors") {
  CHECK(run("fit --bogus 1").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("--help").code == 0);
}
