// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "illspec/cli/cli.hpp"
#include "illspec/io/serialize.hpp"

using namespace illspec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "illspec");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("illspec_cli_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("identity prints the check count") {
  const Run r = run({"identity", "--kmax", "50", "--jmax", "50", "--out", scratch("id").string()});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "PASS (2550 exact checks)\n");
}

TEST_CASE("exit codes") {
  const std::string out = scratch("codes").string();
  CHECK(run({}).code == cli::kExitValidation);
  CHECK(run({"spectrum", "--bogus"}).code == cli::kExitValidation);
  CHECK(run({"spectrum", "--n", "0", "--out", out}).code == cli::kExitValidation);
  CHECK(run({"spectrum", "--op", "XY", "--out", out}).code == cli::kExitValidation);
  CHECK(run({"spectrum", "--scheme", "left", "--arithmetic", "double", "--out", out}).code == cli::kExitValidation);
  CHECK(run({"fit", "--window", "9:3", "--out", out}).code == cli::kExitValidation);
  const Run tol = run({"spectrum", "--scheme", "right", "--n", "3", "--precision", "128", "--tol", "1e-200",
                       "--out", out});
  CHECK(tol.code == cli::kExitTolerance);
  CHECK(tol.err.find("tolerance") != std::string::npos);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("arithmetic resolution") {
  CHECK(cli::resolve_arithmetic(Scheme::LeftSection, 20, "auto") == Arithmetic::Exact);
  CHECK(cli::resolve_arithmetic(Scheme::RightMidpoint, 20, "auto") == Arithmetic::Float);
  CHECK(cli::resolve_arithmetic(Scheme::Galerkin, 100, "auto") == Arithmetic::Float);
  CHECK(cli::resolve_arithmetic(Scheme::Galerkin, 2048, "auto") == Arithmetic::Double);
}

TEST_CASE("spectrum writes outputs, a manifest and a reusable cache") {
  const fs::path out = scratch("spec");
  const fs::path cache = scratch("cache");
  const std::vector<std::string> args = {"spectrum", "--op",      "HaJ",          "--n",     "8",
                                         "--out",    out.string(), "--cache", cache.string()};
  const Run first = run(args);
  REQUIRE(first.code == cli::kExitOk);
  CHECK(fs::exists(out / "spectrum_HaJ_left_N8.csv"));
  const auto manifest = nlohmann::json::parse(io::read_file((out / "manifest_spectrum.json").string()));
  CHECK(manifest["config"]["n"] == 8);
  CHECK(manifest["outputs"].size() == 2);
  const std::string csv = io::read_file((out / "spectrum_HaJ_left_N8.csv").string());
  CHECK(manifest["outputs"][0]["sha256"] == io::sha256_hex(csv));
  const auto entries = std::distance(fs::directory_iterator(cache), fs::directory_iterator{});
  CHECK(entries == 2);

  const Run second = run(args);
  CHECK(second.code == cli::kExitOk);
  CHECK(second.out == first.out);
  CHECK(io::read_file((out / "spectrum_HaJ_left_N8.csv").string()) == csv);
  fs::remove_all(out);
  fs::remove_all(cache);
}

TEST_CASE("bounds, fit and ncnc run end to end") {
  const std::string out = scratch("misc").string();
  CHECK(run({"bounds", "--op", "DHa", "--n", "10", "--out", out}).code == cli::kExitOk);
  const Run f = run({"fit", "--op", "J", "--scheme", "galerkin", "--n", "64", "--window", "4:32", "--out", out});
  CHECK(f.code == cli::kExitOk);
  CHECK(f.out.find("power: rate = ") != std::string::npos);
  CHECK(run({"ncnc", "--n", "8", "--depth", "5", "--precision", "192", "--out", out}).code == cli::kExitOk);
  CHECK(run({"todd", "--nmin", "1", "--nmax", "5", "--out", out}).code == cli::kExitOk);
  fs::remove_all(out);
}

}
