#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "diaghyp/certificate_io.hpp"
#include "diaghyp/cli.hpp"
#include "json.hpp"

using namespace diaghyp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("diaghyp-cli-" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

int run_binary(const std::string& args) {
  const std::string command = std::string(DIAGHYP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("single-claim commands") {
  auto tight = run({"tight", "--n", "3", "--p", "7"});
  CHECK(tight.code == 0);
  CHECK(tight.out.find("verdict: verified") != std::string::npos);

  auto fpure = run({"fpure", "--n", "3", "--p", "5"});
  CHECK(fpure.code == 0);
  CHECK(fpure.out.find("verdict: NotFPure") != std::string::npos);

  auto bad = run({"tight", "--n", "3", "--p", "3"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("p divides n") != std::string::npos);

  CHECK(run({"frobenius", "--n", "3", "--p", "7"}).code == 0);
  CHECK(run({"frobenius", "--n", "3", "--p", "11"}).code == 0);
  CHECK(run({"tight", "--n", "3", "--p", "2", "--e", "2", "4"}).code == 0);
}

TEST_CASE("oracle exit codes follow the membership verdict") {
  auto no = run({"oracle", "--n", "3", "--p", "7"});
  CHECK(no.code == 1);
  CHECK(no.out.find("NotMember") != std::string::npos);
  auto yes = run({"oracle", "--n", "3", "--p", "7", "--shift", "1"});
  CHECK(yes.code == 0);
  CHECK(yes.out.find("witness re-expands: yes") != std::string::npos);
  CHECK(run({"oracle", "--n", "3", "--p", "2", "--e", "3"}).code == 0);
  CHECK(run({"oracle", "--n", "3", "--p", "13", "--degree-bound", "30"}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"tight", "--n", "3"}).code == 2);
  CHECK(run({"tight", "--n", "x", "--p", "7"}).code == 2);
  CHECK(run({"tight", "--n", "3", "--p", "9"}).code == 2);
  CHECK(run({"tight", "--n", "3", "--p", "7", "--bogus"}).code == 2);
  CHECK(run({"tight", "--n", "3", "--p", "2", "--e", "1"}).code == 2);
  CHECK(run({"frobenius", "--n", "4", "--p", "2"}).code == 2);
  CHECK(run({"nosuch"}).code == 2);
  CHECK(run({"det", "--n", "3"}).code == 2);
  CHECK(run({"verify-cert", "/nonexistent.json"}).code == 2);
  CHECK(run({"batch", "--batch", "/nonexistent.json"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("det command") {
  auto suites = run({"det"});
  CHECK(suites.code == 0);
  CHECK(suites.out.find("verdict: passed") != std::string::npos);
  auto inst = run({"det", "--n", "4", "--p", "7"});
  CHECK(inst.code == 0);
  CHECK(inst.out.find("Det1(4, 1, 1) = 20, mod 7 = 6") != std::string::npos);
}

TEST_CASE("json-out writes a certificate that verify-cert accepts") {
  auto dir = scratch_dir();
  auto path = (dir / "c.json").string();
  CHECK(run({"tight", "--n", "3", "--p", "7", "--json-out", path}).code == 0);
  auto cert = read_certificate(path);
  CHECK(cert.params.k == 2);
  auto v = run({"verify-cert", path});
  CHECK(v.code == 0);
  CHECK(v.out.find("certificate OK") != std::string::npos);

  // tamper with a witness polynomial
  auto doc = nlohmann::json::parse(read_text(path));
  for (auto& m : doc["memberships"]) {
    if (m["member"].get<bool>()) {
      m["witness"][0] = "x1 + 1";
      break;
    }
  }
  write_file(dir / "bad.json", doc.dump());
  CHECK(run({"verify-cert", (dir / "bad.json").string()}).code == 1);

  write_file(dir / "garbage.json", "{");
  CHECK(run({"verify-cert", (dir / "garbage.json").string()}).code == 2);

  CHECK(run({"tight", "--n", "3", "--p", "7", "--json-out", "/nonexistent/dir/x.json"}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs give identical certificates apart from timing") {
  auto dir = scratch_dir();
  auto a = (dir / "a.json").string(), b = (dir / "b.json").string();
  REQUIRE(run({"frobenius", "--n", "5", "--p", "7", "--json-out", a}).code == 0);
  REQUIRE(run({"frobenius", "--n", "5", "--p", "7", "--json-out", b}).code == 0);
  CHECK(without_timing(read_text(a)) == without_timing(read_text(b)));
  std::filesystem::remove_all(dir);
}

TEST_CASE("batch sweep over primes") {
  auto dir = scratch_dir();
  write_file(dir / "sweep.json", R"({"output_dir": "out", "jobs": [
    {"command": "frobenius", "n": 3, "p": 2},
    {"command": "frobenius", "n": 3, "p": 5},
    {"command": "frobenius", "n": 3, "p": 7},
    {"command": "frobenius", "n": 3, "p": 11},
    {"command": "frobenius", "n": 3, "p": 13}]})");
  auto r = run({"batch", "--batch", (dir / "sweep.json").string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("5 jobs, 0 rejected") != std::string::npos);

  for (std::int64_t p : {2, 5, 7, 11, 13}) {
    std::filesystem::path file;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "out")) {
      if (entry.path().filename().string().find("-p" + std::to_string(p) + ".json") != std::string::npos) {
        file = entry.path();
      }
    }
    REQUIRE_FALSE(file.empty());
    auto cert = read_certificate(file);
    CHECK(cert.verdict == Verdict::Verified);
    CHECK(to_string(cert.kind) == (p == 7 || p == 13 ? "FrobeniusNonMembership" : "FrobeniusMembership"));
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("batch edge cases") {
  auto dir = scratch_dir();
  write_file(dir / "empty.json", R"({"output_dir": "out", "jobs": []})");
  auto empty = run({"batch", (dir / "empty.json").string()});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("0 jobs, 0 rejected") != std::string::npos);

  write_file(dir / "mixed.json", R"({"output_dir": "mixed", "jobs": [
    {"command": "tight", "n": 3, "p": 9},
    {"command": "fpure", "n": 3, "p": 7},
    {"command": "juggle", "n": 3, "p": 7},
    {"command": "tight", "n": "three", "p": 7},
    {"command": "oracle", "n": 3, "p": 7, "e": [1]},
    {"command": "det"},
    {"command": "tight", "n": 3, "p": 2, "e": [2, 4], "degree_bound": 20}]})");
  auto mixed = run({"batch", "--batch", (dir / "mixed.json").string()});
  CHECK(mixed.code == 0);
  CHECK(mixed.out.find("7 jobs, 3 rejected") != std::string::npos);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir / "mixed")) {
    (void)entry;
    ++files;
  }
  CHECK(files == 4);

  write_file(dir / "broken.json", "[1, 2");
  CHECK(run({"batch", "--batch", (dir / "broken.json").string()}).code == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("installed binary honours the exit-code contract") {
  CHECK(run_binary("tight --n 3 --p 7") == 0);
  CHECK(run_binary("fpure --n 3 --p 5") == 0);
  CHECK(run_binary("tight --n 3 --p 3") == 2);
  CHECK(run_binary("oracle --n 3 --p 13") == 1);
  CHECK(run_binary("tight --n 3 --p abc") == 2);
}
