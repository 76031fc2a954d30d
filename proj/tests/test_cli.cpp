#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using Catch::Approx;

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int exit_code = -1;
    std::string stdout_text;
};

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "qsaw_cli_tests";
    fs::create_directories(dir);
    return dir;
}

// Runs the installed binary with the given argument string; stdout is
// captured, stderr left to the test log.
CliResult run_cli(const std::string& args) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string cmd =
        std::string(QSAW_CLI_PATH) + " " + args + " > " + out.string();
    int status = std::system(cmd.c_str());
    CliResult result;
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    std::ifstream in(out);
    result.stdout_text.assign(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Extracts the number following "key": in a flat JSON text.
double json_number(const std::string& text, const std::string& key) {
    const std::string needle = "\"" + key + "\":";
    auto pos = text.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + needle.size()));
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("figures lists five runnable recipes", "[cli]") {
    auto res = run_cli("figures");
    CHECK(res.exit_code == 0);
    for (const char* fig : {"fig1:", "fig2:", "fig3:", "fig4:", "fig5:"}) {
        INFO(fig);
        CHECK(res.stdout_text.find(fig) != std::string::npos);
    }
    CHECK(count_occurrences(res.stdout_text, "$ qsaw ") >= 5);
}

TEST_CASE("gate-verify writes a passing report", "[cli]") {
    const fs::path dir = scratch_dir() / "gate_verify";
    fs::remove_all(dir);
    auto res = run_cli("gate-verify --n 4 --out-dir " + dir.string());
    REQUIRE(res.exit_code == 0);

    std::string json = slurp(dir / "gate_verify.json");
    CHECK(json_number(json, "gate_count") == 52.0);
    CHECK(json_number(json, "max_dense_error") < 1e-10);
    CHECK(json.find("\"pass\":true") != std::string::npos);
    CHECK(fs::exists(dir / "gate-verify.meta.json"));
}

TEST_CASE("gate-verify can export the circuit", "[cli]") {
    const fs::path dir = scratch_dir() / "gate_export";
    fs::remove_all(dir);
    auto res = run_cli("gate-verify --n 3 --circuit-out circuit.txt --out-dir " +
                       dir.string());
    REQUIRE(res.exit_code == 0);
    std::string circuit = slurp(dir / "circuit.txt");
    CHECK(circuit.find("H ") != std::string::npos);
    CHECK(circuit.find("CP ") != std::string::npos);
    // 3n^2 + n = 30 gates plus the width header line
    CHECK(count_occurrences(circuit, "\n") >= 30);
}

TEST_CASE("unperturbed fidelity is unity", "[cli]") {
    const fs::path dir = scratch_dir() / "fid0";
    fs::remove_all(dir);
    auto res = run_cli(
        "fidelity --K sqrt2 --n 4 --L 1 --epsilon 0 --t 5 --method direct "
        "--out-dir " +
        dir.string());
    REQUIRE(res.exit_code == 0);

    std::string json = slurp(dir / "fidelity.json");
    CHECK(json_number(json, "value") == Approx(1.0).epsilon(1e-12));
    CHECK(json.find("\"method\":\"direct\"") != std::string::npos);

    // t = 0..5 plus header
    std::string csv = slurp(dir / "fidelity.csv");
    CHECK(count_occurrences(csv, "\n") == 7);
    CHECK(csv.rfind("t,f\n0,1\n", 0) == 0);
}

TEST_CASE("reruns with the same seed produce identical bytes", "[cli]") {
    const fs::path a = scratch_dir() / "rep_a";
    const fs::path b = scratch_dir() / "rep_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const std::string flags =
        "classical-diffusion --K sqrt2 --n-traj 2000 --t-max 200 --seed 3 "
        "--out-dir ";
    REQUIRE(run_cli(flags + a.string()).exit_code == 0);
    REQUIRE(run_cli(flags + b.string()).exit_code == 0);
    CHECK(slurp(a / "ensemble.csv") == slurp(b / "ensemble.csv"));
    CHECK(slurp(a / "diffusion.json") == slurp(b / "diffusion.json"));
}

TEST_CASE("thread count does not change the output bytes", "[cli]") {
    const fs::path a = scratch_dir() / "thr_1";
    const fs::path b = scratch_dir() / "thr_4";
    fs::remove_all(a);
    fs::remove_all(b);
    const std::string flags =
        "classical-diffusion --K 1.3 --n-traj 10000 --t-max 100 --seed 5 ";
    REQUIRE(run_cli(flags + "--threads 1 --out-dir " + a.string()).exit_code == 0);
    REQUIRE(run_cli(flags + "--threads 4 --out-dir " + b.string()).exit_code == 0);
    CHECK(slurp(a / "ensemble.csv") == slurp(b / "ensemble.csv"));
}

TEST_CASE("invalid input exits with code 2", "[cli]") {
    CHECK(run_cli("lyapunov --K abc --out-dir /tmp/qsaw_never").exit_code == 2);
    CHECK(run_cli("lyapunov --K sqrt-2 --out-dir /tmp/qsaw_never").exit_code == 2);
    CHECK(run_cli("no-such-experiment").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("lyapunov --t-max 0 --K 2 --out-dir /tmp/qsaw_never").exit_code ==
          2);
    CHECK(run_cli("quantum-evolve --K 1 --k 1 --n 6 --L 10 --out-dir "
                  "/tmp/qsaw_never")
              .exit_code == 2);
}

TEST_CASE("analysis failures exit with code 3", "[cli]") {
    const fs::path dir = scratch_dir() / "short_scan";
    fs::remove_all(dir);
    // Ten time steps cannot span 1.5 decades, so the exponent fit throws.
    auto res = run_cli(
        "anomalous-scan --K -0.1 --n-traj 100 --t-max 10 --out-dir " +
        dir.string());
    CHECK(res.exit_code == 3);
}

TEST_CASE("missing config file exits with code 2", "[cli]") {
    CHECK(run_cli("lyapunov --K 2 --config /nonexistent/cfg.json --out-dir "
                  "/tmp/qsaw_never")
              .exit_code == 2);
}

TEST_CASE("config file values override flags", "[cli]") {
    const fs::path dir = scratch_dir() / "cfg_override";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"K\": \"sqrt4\", \"t_max\": 5000}\n";
    }
    auto res = run_cli("lyapunov --K 5 --t-max 100 --config " + cfg.string() +
                       " --out-dir " + dir.string());
    REQUIRE(res.exit_code == 0);
    std::string json = slurp(dir / "lyapunov.json");
    CHECK(json_number(json, "K") == 2.0);
    CHECK(json_number(json, "t_max") == 5000.0);
    CHECK(json_number(json, "theory") == Approx(1.3169578969248166).epsilon(1e-13));
}

TEST_CASE("config file rejects unknown keys", "[cli]") {
    const fs::path dir = scratch_dir() / "cfg_bad";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"strength\": 2}\n";
    }
    CHECK(run_cli("lyapunov --K 2 --config " + cfg.string() + " --out-dir " +
                  dir.string())
              .exit_code == 2);
}

TEST_CASE("meta sidecar records the run", "[cli]") {
    const fs::path dir = scratch_dir() / "meta_check";
    fs::remove_all(dir);
    auto res = run_cli("lyapunov --K 2 --t-max 1000 --seed 9 --out-dir " +
                       dir.string());
    REQUIRE(res.exit_code == 0);
    std::string meta = slurp(dir / "lyapunov.meta.json");
    CHECK(meta.find("\"schema_version\": 1") != std::string::npos);
    CHECK(meta.find("\"experiment\": \"lyapunov\"") != std::string::npos);
    CHECK(meta.find("\"seed\": 9") != std::string::npos);
    CHECK(meta.find("\"wall_time_s\"") != std::string::npos);
    CHECK(meta.find("\"lambda\"") != std::string::npos);
}
