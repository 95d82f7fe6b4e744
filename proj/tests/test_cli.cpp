// End-to-end checks of the command-line tool: spawn the real binary, parse
// what it prints, and compare file outputs byte for byte. LOGDMO_CLI_PATH is
// injected by the build.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(LOGDMO_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
    return r;
}

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv c;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (first) {
            c.header = cells;
            first = false;
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : cells) row.push_back(std::strtod(cell.c_str(), nullptr));
        c.rows.push_back(std::move(row));
    }
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.is_open());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// one scratch dir per test run, removed on destruction
struct ScratchDir {
    fs::path dir;
    ScratchDir() {
        dir = fs::temp_directory_path() /
              ("logdmo_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(dir, ec);
    }
    [[nodiscard]] std::string path(const char* name) const {
        return (dir / name).string();
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

// small grid keeps the transform runs fast while exercising the full path
const char* kSmallGrid =
    "--h 500 --t 0.5 --nt 128 --nx 64 --dt 0.008 --dx 25 --n-tau 512";

}  // namespace

TEST_CASE("phase sweep prints the operator curve", "[cli]") {
    const CliResult r =
        run_cli("phase --operator exact --xi-max 1 --samples 3 --omega 1 --h 1");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.header ==
            std::vector<std::string>{"xi", "phase", "amplitude", "validity"});
    REQUIRE(c.rows.size() == 3);
    CHECK(c.rows[0][0] == 0.0);
    CHECK(c.rows[0][1] == 0.0);
    CHECK(c.rows[1][0] == 0.5);
    // libm differences leave the last ulp loose across build environments
    CHECK(c.rows[1][1] == Catch::Approx(0.11299357795674867).epsilon(1e-15));
    CHECK(c.rows[2][0] == 1.0);
    CHECK(c.rows[2][1] == Catch::Approx(0.37742807622009312).epsilon(1e-15));
    for (const auto& row : c.rows) {
        CHECK(row[2] == 1.0);
        CHECK(row[3] == 0.0);
    }
}

TEST_CASE("phase sweep flags singular bins past the aliasing limit", "[cli]") {
    const CliResult r = run_cli("phase --operator bale --xi-max 2 --samples 5");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.rows.size() == 5);
    // xi = 0, 0.5 valid; xi = 1, 1.5, 2 singular with nan phase
    for (std::size_t i = 0; i < 5; ++i) {
        const bool singular = i >= 2;
        CHECK(c.rows[i][3] == (singular ? 1.0 : 0.0));
        CHECK(std::isnan(c.rows[i][1]) == singular);
    }
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("phase --operator exact --xi-max 1 --samples 1").code == 2);
    CHECK(run_cli("phase --operator witch --xi-max 1 --samples 3").code == 2);
    CHECK(run_cli("phase --operator exact --xi-max 1 --samples 3 --bogus 1")
              .code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("impulse --operator exact --t 99 --out /dev/null").code == 2);
}

TEST_CASE("help exits cleanly", "[cli]") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("phase --help").code == 0);
}

TEST_CASE("decompose emits limit rows at zero dip", "[cli]") {
    const CliResult r = run_cli(
        "decompose --operator exact --xi-list 0,0.5 --omega 1 --h 500");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.rows.size() == 2);
    for (std::size_t col = 1; col < 6; ++col) CHECK(c.rows[0][col] == 0.0);
    // space_phase + time_phase reassembles the total
    const auto& row = c.rows[1];
    CHECK(row[3] + row[4] == Catch::Approx(row[5]).margin(1e-15));
    // the split goes through the stationary-point form, so it matches the
    // direct phase to rounding, not bit for bit
    CHECK(row[5] == Catch::Approx(0.11299357795674867).epsilon(1e-13));
}

TEST_CASE("stored impulse input reproduces the in-memory response", "[cli]") {
    const ScratchDir tmp;
    const std::string raw = tmp.path("raw.fkg");
    const std::string resp = tmp.path("resp.fkg");
    const std::string resp2 = tmp.path("resp2.fkg");
    const std::string base = std::string("--operator exact ") + kSmallGrid +
                             " --threads 1";
    REQUIRE(run_cli("impulse " + base + " --dump-input " + raw + " --out " +
                    resp)
                .code == 0);
    REQUIRE(run_cli("apply --operator exact --in " + raw +
                    " --n-tau 512 --threads 1 --out " + resp2)
                .code == 0);
    CHECK(slurp(resp) == slurp(resp2));
}

TEST_CASE("zero offset leaves the painted section untouched", "[cli]") {
    const ScratchDir tmp;
    const std::string raw = tmp.path("raw.fkg");
    const std::string resp = tmp.path("resp.fkg");
    REQUIRE(run_cli("impulse --operator exact --h 0 --t 0.5 --nt 128 --nx 32 "
                    "--dt 0.008 --dx 25 --n-tau 512 --dump-input " +
                    raw + " --out " + resp)
                .code == 0);
    CHECK(slurp(resp) == slurp(raw));
}

TEST_CASE("responses are identical across thread counts", "[cli]") {
    const ScratchDir tmp;
    const std::string a = tmp.path("a.fkg");
    const std::string b = tmp.path("b.fkg");
    const std::string base = std::string("--operator notfors ") + kSmallGrid;
    REQUIRE(run_cli("impulse " + base + " --threads 1 --out " + a).code == 0);
    REQUIRE(run_cli("impulse " + base + " --threads 3 --out " + b).code == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("missing or corrupt inputs exit with code 1", "[cli]") {
    const ScratchDir tmp;
    CHECK(run_cli("apply --operator exact --in " + tmp.path("absent.fkg") +
                  " --out " + tmp.path("o.fkg"))
              .code == 1);
    const std::string junk = tmp.path("junk.fkg");
    std::ofstream(junk, std::ios::binary) << "FKG1 but too short";
    CHECK(run_cli("apply --operator exact --in " + junk + " --out " +
                  tmp.path("o2.fkg"))
              .code == 1);
}

TEST_CASE("reference weights agree in phase on one-spike input", "[cli]") {
    const CliResult r = run_cli(
        "oracle --method both --live 1 --seed 7 --nt 32 --nx 32 "
        "--n-omega 4 --n-k 4 --threads 1");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.rows.size() == 16);
    for (const auto& row : c.rows) {
        const double mag_hale = row[2];
        const double mag_black = row[4];
        if (mag_hale < 1e-12 || mag_black < 1e-12) continue;
        CHECK(row[6] <= 1e-10);          // phase difference
        CHECK(row[7] <= 1.0 + 1e-12);    // magnitude ratio peaks at 1
        CHECK(row[7] > 0.3);
    }
}

TEST_CASE("reference integrals refuse production-sized grids", "[cli]") {
    CHECK(run_cli("oracle --method hale --nt 200").code == 2);
}

TEST_CASE("ellipse table hits both endpoints", "[cli]") {
    const CliResult r = run_cli("oracle --method ellipse --tn 1 --h 500 "
                                "--samples 5");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.header == std::vector<std::string>{"offset", "t0"});
    REQUIRE(c.rows.size() == 5);
    CHECK(c.rows.front()[0] == -500.0);
    CHECK(c.rows.front()[1] == 0.0);
    CHECK(c.rows[2][0] == 0.0);
    CHECK(c.rows[2][1] == 1.0);
    CHECK(c.rows.back()[0] == 500.0);
    CHECK(c.rows.back()[1] == 0.0);
}

TEST_CASE("asymptote table carries the correction column", "[cli]") {
    const CliResult r =
        run_cli("asymptote --xi-min 0.1 --xi-max 10 --samples 5");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.header.size() == 14);
    REQUIRE(c.rows.size() == 5);
    const auto& last = c.rows.back();
    const double xi = last[0];
    CHECK(xi == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(last[1] == Catch::Approx(std::log(xi) / (2.0 * xi)).margin(1e-15));
    // exact operator's wide-dip ratio, last column
    CHECK(last[13] == Catch::Approx(0.83362100557186957).epsilon(1e-10));
}

TEST_CASE("ridge report covers every trace inside the pick window", "[cli]") {
    const ScratchDir tmp;
    const std::string resp = tmp.path("resp.fkg");
    REQUIRE(run_cli(std::string("impulse --operator exact ") + kSmallGrid +
                    " --threads 1 --out " + resp)
                .code == 0);
    const CliResult r = run_cli("compare --response " + resp +
                                " --tn 0.5 --h 500 --window 0.6 --floor 0.05");
    REQUIRE(r.code == 0);
    const Csv c = parse_csv(r.out);
    REQUIRE(c.header.size() == 6);
    // x spans [-800, 775] in 25 m steps; |x| <= 300 keeps 25 traces
    REQUIRE(c.rows.size() == 25);
    std::size_t n_valid = 0;
    for (const auto& row : c.rows) {
        REQUIRE((row[5] == 0.0 || row[5] == 1.0));
        if (row[5] == 1.0) ++n_valid;
    }
    CHECK(n_valid >= 10);
}

TEST_CASE("file output matches stdout byte for byte", "[cli]") {
    const ScratchDir tmp;
    const std::string f = tmp.path("sweep.csv");
    const std::string args = "phase --operator notfors --xi-max 3 --samples 7";
    const CliResult direct = run_cli(args);
    REQUIRE(direct.code == 0);
    REQUIRE(run_cli(args + " --out " + f).code == 0);
    CHECK(direct.out == slurp(f));
}
