#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

std::string cli_path() {
    const char* path = std::getenv("WIENER_RADON_BIN");
    REQUIRE_MESSAGE(path != nullptr, "WIENER_RADON_BIN must point at the CLI binary");
    return path;
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string command = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    std::array<char, 4096> buffer;
    size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        output.append(buffer.data(), got);
    }
    const int status = pclose(pipe);
    return CliResult{WEXITSTATUS(status), output};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("bridge-stats prints the pinned mean and variance") {
    const CliResult r = run_cli("bridge-stats --T 0.5 --c 1 --t 0.25");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed.at("mean").get<double>() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(parsed.at("variance").get<double>() == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("bridge-stats rejects off-knot times with exit 2") {
    const CliResult r = run_cli("bridge-stats --T 0.5 --c 1 --t 0.3 --grid 4");
    CHECK(r.exit_code == 2);
}

TEST_CASE("grt-linear evaluates a subspace spec") {
    write_file("grt.json", R"({
      "subspace": {"grid": 8,
                   "constraints": [{"kind": "kernel", "s": 0.5}],
                   "levels": [1.0]},
      "h": {"kind": "kernel", "s": 0.25}
    })");
    const CliResult r = run_cli("grt-linear --input grt.json");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed.at("mean").get<double>() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(parsed.at("variance").get<double>() == doctest::Approx(0.125).epsilon(1e-13));
    std::remove("grt.json");
}

TEST_CASE("malformed input exits with code 2") {
    write_file("cli_bad_input.json", "{\"subspace\": ");
    const CliResult r = run_cli("grt-linear --input cli_bad_input.json");
    CHECK(r.exit_code == 2);
    std::remove("cli_bad_input.json");
    const CliResult missing = run_cli("grt-linear --input cli_absent.json");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("multi-bridge reports both mean routes") {
    write_file("multibridge.json", R"({
      "grid": 40,
      "times": [0.2, 0.5, 0.9],
      "levels": [1.0, -1.0, 0.0],
      "f": {"kind": "kernel_deriv", "s": 0.5}
    })");
    const CliResult r = run_cli("multi-bridge --input multibridge.json");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed.at("mean").get<double>() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(parsed.at("mean_crosscheck").get<double>() ==
          doctest::Approx(-1.0).epsilon(1e-9));
    std::remove("multibridge.json");
}

TEST_CASE("ito-grt evaluates a two-factor spec") {
    write_file("ito.json", R"({
      "factors": [{"kind": "kernel_deriv", "s": 0.5},
                  {"kind": "kernel_deriv", "s": 1.0}],
      "T": 0.5, "c": 1.0
    })");
    // masses 1/2 each; value = 1/4 * H_2(2; 2) = 1/4 * (4 - 2) = 1/2.
    const CliResult r = run_cli("ito-grt --input ito.json --grid 8");
    CHECK(r.exit_code == 0);
    const json parsed = json::parse(r.output);
    CHECK(parsed.at("value").get<double>() == doctest::Approx(0.5).epsilon(1e-13));
    std::remove("ito.json");
}

TEST_CASE("verify bridge suite: exit 0, parseable rows, byte-identical reruns") {
    const std::string flags = "verify --suite bridge --grid 16 --samples 2000 --seed 7";
    const CliResult a = run_cli(flags + " --output report.json");
    CHECK(a.exit_code == 0);
    const CliResult b = run_cli(flags + " --output report_b.json");
    CHECK(b.exit_code == 0);
    const std::string text_a = read_file("report.json");
    CHECK(text_a == read_file("report_b.json"));
    CHECK(!text_a.empty());
    int rows = 0;
    std::istringstream lines(text_a);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json row = json::parse(line);
        CHECK(row.at("pass").get<bool>());
        ++rows;
    }
    CHECK(rows >= 15);
    std::remove("report.json");
    std::remove("report_b.json");
}

TEST_CASE("verify emits csv with the documented header") {
    const CliResult r =
        run_cli("verify --suite bridge --grid 16 --samples 1000 --seed 3 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("check,closed_form,estimate,std_error,z,pass\n", 0) == 0);
}

TEST_CASE("fock-check runs a spec end to end") {
    write_file("fock.json", R"({
      "subspace": {"grid": 16,
                   "constraints": [{"kind": "kernel", "s": 0.5}],
                   "levels": [1.0]},
      "vectors": [{"kind": "kernel", "s": 0.25}, {"kind": "kernel", "s": 0.75}],
      "max_order": 20
    })");
    const CliResult r =
        run_cli("fock-check --input fock.json --samples 4000 --seed 5");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    bool saw_certificate = false;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const json row = json::parse(line);
        CHECK(row.at("pass").get<bool>());
        if (row.at("check") == "gram_certificate_max_err") saw_certificate = true;
    }
    CHECK(saw_certificate);
    std::remove("fock.json");
}

TEST_CASE("unknown suite exits with code 2") {
    const CliResult r = run_cli("verify --suite nope --grid 16 --samples 100");
    CHECK(r.exit_code == 2);
}

}  // TEST_SUITE
