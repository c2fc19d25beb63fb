// CLI integration tests: spawn the real binary, parse its JSON, and pin
// the exit-code contract (0 expected outcome, 1 unexpected, 2 usage).

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(NUMLAB_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe))
    out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

double num(const json& j) { return std::stod(j.get<std::string>()); }

}  // namespace

TEST_CASE("claims: coefficient witness over JSON") {
  auto r = run("--format json claims --claim vm-theorem-1 --method coefficients");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  CHECK(env["tool"] == "numlab");
  CHECK(env["status"] == "expected");
  const json& rep = env["payload"][0];
  CHECK(rep["verdict"] == "FALSIFIED");
  CHECK(rep["witness"]["index"] == 30);
  CHECK(rep["witness"]["lhs_coeff"] == "-2");
  CHECK(rep["witness"]["rhs_coeff"] == "0");
}

TEST_CASE("claims: numeric method carries the s=2 gap") {
  auto r = run("--format json claims --claim vm-theorem-1 --method numeric --digits 40");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  const json& pt = env["payload"][0]["witness"]["points"][0];
  CHECK(num(pt["lhs"]) == doctest::Approx(1.2158542).epsilon(1e-6));
  CHECK(num(pt["rhs"]) == doctest::Approx(1.2230397).epsilon(1e-6));
  CHECK(num(pt["gap"]) > 0.007);
}

TEST_CASE("claims: nested radical route for the second theorem") {
  auto r = run("--format json claims --claim vm-theorem-2 --method nested-radical");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  const json& w = env["payload"][0]["witness"];
  CHECK(num(w["nested_value"]) == doctest::Approx(0.4588).epsilon(1e-3));
  CHECK(num(w["prime_zeta"]) == doctest::Approx(0.4522).epsilon(1e-3));
  CHECK(num(w["gap"]) > 0.006);
  CHECK(w["squaring_reduction"] == "FALSIFIED");
}

TEST_CASE("claims: all three methods for the first theorem") {
  auto r = run("--format json claims --claim agelas-lemma-2-3 --method all --digits 30");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  CHECK(env["payload"].size() == 3);
  for (const auto& rep : env["payload"]) CHECK(rep["verdict"] == "FALSIFIED");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("claims --claim vm-theorem-2 --method coefficients").exit_code == 2);
  CHECK(run("claims --claim no-such-claim --method numeric").exit_code == 2);
  CHECK(run("agm --algorithm bb4 --nmax 0").exit_code == 2);
  CHECK(run("bineuclid --x 1.5").exit_code == 2);
  CHECK(run("bineuclid --digits 7").exit_code == 2);
  CHECK(run("multable --nmin 50").exit_code == 2);
  CHECK(run("no-such-subcommand").exit_code == 2);
}

TEST_CASE("agm: certified trace and the precision diagnostic") {
  auto ok = run("--format json agm --algorithm gl1 --nmax 4 --digits 60");
  CHECK(ok.exit_code == 0);
  json env = json::parse(ok.output);
  CHECK(env["payload"]["all_pass"] == true);
  for (const auto& row : env["payload"]["rows"]) CHECK(row["status"] == "pass");

  // nmax 6 reaches bounds near 1e-84; 25 digits cannot certify them
  auto shortfall = run("agm --algorithm gl1 --nmax 6 --digits 25");
  CHECK(shortfall.exit_code == 1);
  CHECK(shortfall.output.find("raise --digits") != std::string::npos);
}

TEST_CASE("agm: equivalence run") {
  auto r = run("--format json agm --algorithm equivalence --nmax 2 --digits 100");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  CHECK(env["payload"]["ok"] == true);
  CHECK(num(env["payload"]["max_deviation"]) < 1e-90);
}

TEST_CASE("bineuclid: the 1976 mode vs the 40-digit mode") {
  auto old_mode = run("--format json bineuclid --digits 8");
  CHECK(old_mode.exit_code == 0);
  json env8 = json::parse(old_mode.output);
  CHECK(env8["payload"]["discrepancy_detected"] == false);
  CHECK(env8["payload"]["note"] == "no discrepancy detectable at this precision");

  auto modern = run("--format json bineuclid --digits 40");
  CHECK(modern.exit_code == 0);
  json env40 = json::parse(modern.output);
  CHECK(env40["payload"]["discrepancy_detected"] == true);
  CHECK(env40["payload"]["verified"] == true);

  // P(-1) = 0: no discrepancy at x = 1/2, full agreement instead
  auto half = run("--format json bineuclid --digits 40 --x 0.5");
  CHECK(half.exit_code == 0);
  json envh = json::parse(half.output);
  CHECK(envh["payload"]["discrepancy_detected"] == false);
  CHECK(num(envh["payload"]["rows"][0]["difference"]) == doctest::Approx(0.0));
}

TEST_CASE("multable: counts, band, and labels") {
  auto r = run("--format json multable --nmin 5 --nmax 8");
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  CHECK(env["payload"]["rows"][0]["M"] == "340");
  CHECK(env["payload"]["ratio_band_ok"] == true);
  CHECK(env["payload"]["lower_bound_ok"] == true);
  std::string label = env["payload"]["conjecture_label"];
  CHECK(label.find("falsified by Erdos (1960)") != std::string::npos);

  auto tiny = run("--format json multable --nmax 2");
  CHECK(tiny.exit_code == 0);
  json envt = json::parse(tiny.output);
  CHECK(envt["payload"]["rows"][0]["M"] == "7");

  auto ob = run("--format json multable --nmin 2 --nmax 2 --one-based");
  json envo = json::parse(ob.output);
  CHECK(envo["payload"]["rows"][0]["M_one_based"] == "9");
}

TEST_CASE("multable: raw bitmap dump matches a brute-force product set") {
  const std::string path = "/tmp/numlab_test_bitmap.bin";
  auto r = run("--format json multable --nmin 3 --nmax 3 --dump-bitmap " + path);
  CHECK(r.exit_code == 0);
  json env = json::parse(r.output);
  CHECK(env["payload"]["bitmap_dump"]["file"] == path);

  // expected bitmap for N = 8: products of {0..7} x {0..7}, indices 0..49
  std::vector<unsigned char> expected((49 + 8) / 8, 0);
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = 0; j < 8; ++j) expected[(i * j) / 8] |= (unsigned char)(1u << ((i * j) % 8));

  FILE* f = std::fopen(path.c_str(), "rb");
  REQUIRE(f != nullptr);
  std::vector<unsigned char> got(64);
  const std::size_t n_read = std::fread(got.data(), 1, got.size(), f);
  std::fclose(f);
  std::remove(path.c_str());
  REQUIRE(n_read == expected.size());
  for (std::size_t b = 0; b < expected.size(); ++b) CHECK(got[b] == expected[b]);

  // a dump over a range is a usage error
  CHECK(run("multable --nmin 3 --nmax 4 --dump-bitmap " + path).exit_code == 2);
}

TEST_CASE("JSON reports round-trip and are deterministic modulo timing") {
  for (const std::string args :
       {std::string("--format json claims --claim vm-theorem-1 --method numeric --digits 30"),
        std::string("--format json multable --nmin 5 --nmax 7"),
        std::string("--format json bineuclid --digits 30 --x 0.3"),
        std::string("--format json agm --algorithm equivalence --nmax 2 --digits 60")}) {
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.exit_code == 0);
    json ja = json::parse(a.output);
    json jb = json::parse(b.output);
    CHECK(json::parse(ja.dump()) == ja);  // round-trip
    for (auto* j : {&ja, &jb}) {
      j->erase("timestamp");
      if ((*j)["payload"].is_object()) {
        (*j)["payload"].erase("elapsed_seconds");
        if ((*j)["payload"].contains("rows"))
          for (auto& row : (*j)["payload"]["rows"])
            if (row.is_object()) row.erase("elapsed_seconds");
      }
    }
    CHECK(ja.dump() == jb.dump());
  }
}

TEST_CASE("env var supplies the default digits") {
  auto r = run("--format json claims --claim vm-theorem-1 --method numeric");
  json env = json::parse(r.output);
  CHECK(env["config"]["digits"] == 40);

  setenv("NUMLAB_DIGITS", "32", 1);
  auto r2 = run("--format json claims --claim vm-theorem-1 --method numeric");
  unsetenv("NUMLAB_DIGITS");
  json env2 = json::parse(r2.output);
  CHECK(env2["config"]["digits"] == 32);
}
