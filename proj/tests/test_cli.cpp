#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "walkzeta/serialize.hpp"

using namespace walkzeta;

namespace {

int run_argv(std::vector<std::string> args, const std::string& out_path = {}) {
  args.insert(args.begin(), "walkzeta");
  if (!out_path.empty()) {
    args.push_back("--out");
    args.push_back(out_path);
  }
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string tmpfile(const std::string& tag) {
  return (std::filesystem::temp_directory_path() / ("wz_cli_" + tag + ".txt")).string();
}

}  // namespace

TEST_CASE("cr closed on the symmetric RW prints the binomial values") {
  const std::string out = tmpfile("cr_closed");
  REQUIRE(run_argv({"cr", "--model", "sym-rw", "--d", "1", "--method", "closed", "--rmax", "8",
                    "--format", "csv"},
                   out) == 0);
  const SeriesTable t = series_from_csv(slurp(out));
  CHECK(t.method == SeriesMethod::closed_form);
  CHECK(t.at(2) == cd(0.5));
  CHECK(t.at(4) == cd(0.375));
  CHECK(t.at(6) == cd(0.3125));
  CHECK(t.at(8) == cd(0.2734375));
  for (int r : {1, 3, 5, 7}) CHECK(t.at(r) == cd(0.0));
}

TEST_CASE("zeta at u=0 is exactly one") {
  const std::string out = tmpfile("zeta0");
  REQUIRE(run_argv({"zeta", "--model", "hadamard", "--shift", "f", "--d", "1", "--N", "4", "--u",
                    "0"},
                   out) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["evaluations"][0]["zeta_inv"][0] == 1.0);
  CHECK(j["evaluations"][0]["zeta_inv"][1] == 0.0);
}

TEST_CASE("verify factorization exits 0 with a tight report") {
  const std::string out = tmpfile("verify_fact");
  REQUIRE(run_argv({"verify", "--suite", "factorization", "--d", "1", "--N", "4", "--model",
                    "hadamard"},
                   out) == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["all_pass"] == true);
  CHECK(j["suites"][0]["report"]["max_rel_err"].get<double>() < 1e-9);
}

TEST_CASE("verification failure exits 1") {
  const std::string out = tmpfile("verify_fail");
  CHECK(run_argv({"verify", "--suite", "factorization", "--d", "1", "--N", "4", "--model",
                  "hadamard", "--tol", "1e-30"},
                 out) == 1);
  const json j = json::parse(slurp(out));
  CHECK(j["all_pass"] == false);
}

TEST_CASE("config errors exit 2") {
  CHECK(run_argv({"zeta", "--model", "no-such-model", "--d", "1", "--N", "4", "--u", "0"}) == 2);
  CHECK(run_argv({"cr", "--model", "grover", "--d", "2", "--N", "4", "--method", "closed"}) == 2);
  CHECK(run_argv({"evolve", "--model", "hadamard", "--d", "2", "--N", "4"}) == 2);
  CHECK(run_argv({"zeta", "--model", "hadamard", "--d", "1", "--N", "4"}) == 2);  // missing --u
  CHECK(run_argv({"nonsense"}) == 2);
}

TEST_CASE("identical configs produce identical bytes") {
  const std::string a = tmpfile("det_a"), b = tmpfile("det_b");
  const std::vector<std::string> cmd{"cr",     "--model", "grover", "--d",    "2",
                                     "--N",    "6",       "--rmax", "10",     "--method",
                                     "fourier", "--method", "direct", "--format", "csv"};
  REQUIRE(run_argv(cmd, a) == 0);
  REQUIRE(run_argv(cmd, b) == 0);
  const std::string sa = slurp(a), sb = slurp(b);
  CHECK(sa == sb);
  CHECK(!sa.empty());
}

TEST_CASE("emitted series CSV parses back losslessly") {
  const std::string out = tmpfile("csv_roundtrip");
  REQUIRE(run_argv({"cr", "--model", "fourier", "--d", "2", "--N", "5", "--rmax", "9",
                    "--method", "fourier", "--format", "csv"},
                   out) == 0);
  const std::string csv = slurp(out);
  const SeriesTable t = series_from_csv(csv);
  CHECK(series_to_csv(t) == csv);
}

TEST_CASE("multi-method CSV splits back into the originating tables") {
  const std::string out = tmpfile("csv_multi");
  REQUIRE(run_argv({"cr", "--model", "hadamard", "--d", "1", "--N", "6", "--rmax", "8",
                    "--method", "fourier", "--method", "direct", "--format", "csv"},
                   out) == 0);
  const std::string csv = slurp(out);
  const auto tables = series_tables_from_csv(csv);
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].method == SeriesMethod::fourier_trace);
  CHECK(tables[1].method == SeriesMethod::direct_trace);
  std::string rebuilt = series_to_csv(tables[0]);
  const std::string second = series_to_csv(tables[1]);
  rebuilt += second.substr(second.find('\n') + 1);
  CHECK(rebuilt == csv);
}

TEST_CASE("coin command emits the JSON schema") {
  const std::string out = tmpfile("coin");
  REQUIRE(run_argv({"coin", "--model", "three-state-grover", "--shift", "f"}, out) == 0);
  const Coin coin = coin_from_json(json::parse(slurp(out)));
  CHECK(coin.model == CoinModel::three_state_grover);
  CHECK(coin.shift_kind == ShiftKind::flipflop);
  CHECK(coin.states == 3);
}

TEST_CASE("evolve dumps one measure column per time step") {
  const std::string out = tmpfile("evolve");
  REQUIRE(run_argv({"evolve", "--model", "sym-rw", "--d", "1", "--N", "5", "--steps", "2",
                    "--format", "csv"},
                   out) == 0);
  std::istringstream is(slurp(out));
  std::string header, row0;
  std::getline(is, header);
  CHECK(header == "x1,mu_0,mu_1,mu_2");
  std::getline(is, row0);
  // site 0: mu_0 = 1, mu_2 = 1/2 (the 4-path return probability)
  CHECK(row0 == "0,1,0,0.5");
}

TEST_CASE("oqrw evolution through the CLI conserves the trace") {
  const std::string out = tmpfile("oqrw");
  REQUIRE(run_argv({"evolve", "--model", "oqrw", "--d", "1", "--N", "6", "--steps", "20",
                    "--format", "json"},
                   out) == 0);
  const json j = json::parse(slurp(out));
  for (const auto& snapshot : j["measures"]) {
    double total = 0.0;
    for (const auto& v : snapshot) total += v.get<double>();
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_CASE("zeta-limit reports convergence data") {
  const std::string out = tmpfile("zlim");
  REQUIRE(run_argv({"zeta-limit", "--model", "sym-rw", "--d", "1", "--grid-m", "128", "--u",
                    "0.5"},
                   out) == 0);
  const json j = json::parse(slurp(out));
  const auto& e = j["evaluations"][0];
  // int log(1 - 0.5 cos t) dt/2pi = log((1 + sqrt(0.75))/2)
  const double expect = (1.0 + std::sqrt(0.75)) / 2.0;
  CHECK(std::abs(e["zeta_inv"][0].get<double>() - expect) < 1e-9);
  CHECK(e["convergence_diff"].get<double>() <= e["convergence_tol"].get<double>());
}

#ifdef WZ_CLI_BIN
TEST_CASE("the installed binary runs end to end") {
  const std::string out = tmpfile("spawn");
  const std::string cmd = std::string(WZ_CLI_BIN) +
                          " cr --model sym-rw --d 1 --method closed --rmax 4 --format csv --out " +
                          out;
  REQUIRE(std::system(cmd.c_str()) == 0);
  const SeriesTable t = series_from_csv(slurp(out));
  CHECK(t.at(2) == cd(0.5));
  CHECK(t.at(4) == cd(0.375));
}
#endif
