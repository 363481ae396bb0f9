#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sft/cli.hpp"

using namespace sft;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "sft_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::size_t csv_data_rows(const std::string& text) {
  std::istringstream stream(text);
  std::string line;
  std::size_t rows = 0;
  bool header = true;
  while (std::getline(stream, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (!line.empty()) ++rows;
  }
  return rows;
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream stream(text);
  std::string line;
  std::getline(stream, line);  // header
  while (std::getline(stream, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"no-such-command"}) == 2);
  CHECK(run_cli({"fit", "--sigma", "8"}) == 2);               // missing required flags
  CHECK(run_cli({"transform", "--output", "/dev/null"}) == 2);  // no filter requested
}

TEST_CASE("fit writes a coefficient file and transform can reuse it") {
  const fs::path dir = work_dir();
  const fs::path coeffs = dir / "gauss.coeffs";
  CHECK(run_cli({"fit", "--kernel", "gauss", "--sigma", "16", "--P", "4", "--tune-beta",
                 "--out", coeffs.string()}) == 0);
  const std::string text = slurp(coeffs);
  CHECK(text.find("sft-coefficients v1") == 0);
  CHECK(text.find("kind=GaussCos") != std::string::npos);
  CHECK(text.find("kind=GaussDerivSin") != std::string::npos);

  const fs::path self_fit = dir / "self_fit.csv";
  const fs::path reused = dir / "reused.csv";
  CHECK(run_cli({"transform", "--kernel", "gauss", "--sigma", "16", "--P", "4", "--tune-beta",
                 "--gen", "noise", "--N", "128", "--seed", "9", "--output",
                 self_fit.string()}) == 0);
  CHECK(run_cli({"transform", "--kernel", "gauss", "--sigma", "16", "--P", "4", "--coeffs",
                 coeffs.string(), "--gen", "noise", "--N", "128", "--seed", "9", "--output",
                 reused.string()}) == 0);
  CHECK(slurp(self_fit) == slurp(reused));
}

TEST_CASE("transform of an impulse reproduces the kernel shape") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "impulse.csv";
  CHECK(run_cli({"transform", "--abbrev", "GDP6", "--sigma", "8", "--gen", "impulse", "--N",
                 "97", "--boundary", "zero", "--output", out.string()}) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 97);
  // peak at the impulse position, symmetric decay
  CHECK(rows[48][1] > rows[40][1]);
  CHECK(rows[48][1] > rows[56][1]);
  CHECK(rows[48][1] == doctest::Approx(0.0498).epsilon(0.05));
  CHECK(rows[40][1] == doctest::Approx(rows[56][1]).epsilon(1e-6));
}

TEST_CASE("oracle column stays within the kernel accuracy") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "oracle.csv";
  CHECK(run_cli({"transform", "--abbrev", "MDS5P7", "--sigma", "60", "--xi", "10", "--gen",
                 "noise", "--N", "512", "--seed", "4", "--oracle", "--output",
                 out.string()}) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 512);
  REQUIRE(rows[0].size() == 6);  // n, re, im, oracle_re, oracle_im, rel_err
  double max_err = 0.0;
  for (const auto& row : rows) max_err = std::max(max_err, row[5]);
  CHECK(max_err < 0.05);  // normalized error consistent with sub-percent kernel RMSE
  CHECK(max_err > 0.0);
}

TEST_CASE("reference abbreviation runs the pure convolution path") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "gct3.csv";
  CHECK(run_cli({"transform", "--abbrev", "GCT3", "--sigma", "8", "--gen", "constant", "--N",
                 "64", "--output", out.string()}) == 0);
  const auto rows = parse_csv(slurp(out));
  REQUIRE(rows.size() == 64);
  for (const auto& row : rows) CHECK(row[1] == doctest::Approx(0.9974).epsilon(1e-3));
}

TEST_CASE("cli outputs are byte-identical across runs") {
  const fs::path dir = work_dir();
  const fs::path a = dir / "det_a.csv";
  const fs::path b = dir / "det_b.csv";
  const std::vector<std::string> args = {"transform", "--abbrev", "MMP3",  "--sigma", "60",
                                         "--xi",      "12",       "--gen", "noise",   "--N",
                                         "256",       "--seed",   "7"};
  auto with_output = [&](const fs::path& path) {
    std::vector<std::string> full = args;
    full.push_back("--output");
    full.push_back(path.string());
    return full;
  };
  CHECK(run_cli(with_output(a)) == 0);
  CHECK(run_cli(with_output(b)) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
}

TEST_CASE("sliding sum trace csv") {
  const fs::path dir = work_dir();
  const fs::path out = dir / "trace.csv";
  CHECK(run_cli({"sliding-sum-trace", "--N", "256", "--L", "37", "--variant", "flat", "--csv",
                 out.string()}) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("round,r,bit,active_span,adds\n") == 0);
  // R = 6 rounds for L = 37
  CHECK(parse_csv(text).size() == 6);

  CHECK(run_cli({"sliding-sum-trace", "--N", "64", "--L", "8", "--variant", "blocked8", "--csv",
                 (dir / "trace8.csv").string()}) == 0);
  CHECK(parse_csv(slurp(dir / "trace8.csv")).size() == 6);
}

TEST_CASE("experiment subcommands produce their csv outputs") {
  const fs::path dir = work_dir();
  const fs::path table = dir / "table.csv";
  CHECK(run_cli({"rmse-table", "--K", "64", "--n0", "2", "--csv", table.string()}) == 0);
  CHECK(csv_data_rows(slurp(table)) == 30);  // {SFT,ASFT} x P=2..6 x {G, GD, GDD}

  const fs::path sweep = dir / "sweep.csv";
  CHECK(run_cli({"morlet-sweep", "--sigma", "20", "--xi-min", "6", "--xi-max", "8",
                 "--xi-step", "2", "--method", "both", "--PD", "5", "--PM", "2", "--csv",
                 sweep.string()}) == 0);
  CHECK(csv_data_rows(slurp(sweep)) == 4);  // 2 xi values x 2 methods

  const fs::path bench = dir / "bench.csv";
  CHECK(run_cli({"bench", "--mode", "n-sweep", "--N", "400", "--sigma", "4", "--reps", "3",
                 "--warmups", "0", "--csv", bench.string()}) == 0);
  const std::string text = slurp(bench);
  CHECK(text.find("method,N,sigma,") == 0);
  CHECK(csv_data_rows(text) == 6);  // N in {100,200,400} x 2 methods
}

TEST_CASE("unreadable input fails with a runtime error") {
  CHECK(run_cli({"transform", "--abbrev", "GDP6", "--sigma", "8", "--input",
                 "/nonexistent/file.txt", "--output", "/dev/null"}) == 1);
  const fs::path dir = work_dir();
  const fs::path bad = dir / "bad_input.txt";
  std::ofstream(bad) << "1.0\nnot-a-number\n";
  CHECK(run_cli({"transform", "--abbrev", "GDP6", "--sigma", "8", "--input", bad.string(),
                 "--output", "/dev/null"}) == 1);
}
