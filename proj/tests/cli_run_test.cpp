// Runs the installed-layout binary end to end.

#include <json.hpp>

#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class Workdir {
public:
    explicit Workdir(const std::string& name) : dir_(fs::temp_directory_path() / ("htype-run-" + name)) {
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    const fs::path& path() const { return dir_; }
    fs::path operator/(const std::string& f) const { return dir_ / f; }

    void file(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

    Run run(const std::string& args, const std::string& env = "") const {
        const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" HTYPE_CLI_PATH "' " + args +
                                " > stdout.txt 2> stderr.txt";
        const int status = std::system(cmd.c_str());
        Run r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(dir_ / "stdout.txt");
        r.err = slurp(dir_ / "stderr.txt");
        return r;
    }

    json result(const std::string& out, const std::string& command) const {
        return json::parse(slurp(dir_ / out / (command + ".json")));
    }

private:
    fs::path dir_;
};

}  // namespace

TEST_CASE("build-group summaries") {
    Workdir w("build-group");
    w.file("h3.yaml", "group: {l: 3, a: 1, b: 0}\n");
    w.file("heis.yaml", "group: {l: 1, a: 1, b: 0}\n");
    REQUIRE(w.run("build-group --config h3.yaml --out o").code == 0);
    const json h3 = w.result("o", "build-group");
    CHECK(h3["k"] == 4);
    CHECK(h3["h_type"] == true);
    CHECK(h3["clifford_defects"]["anticommutation"] == 0);
    REQUIRE(w.run("build-group --config heis.yaml --out p").code == 0);
    CHECK(w.result("p", "build-group")["k"] == 2);
}

TEST_CASE("non-skew generator file is a config error") {
    Workdir w("nonskew");
    w.file("gens.json", "{\"generators\": [[[0, -1], [1, 0]], [[0, 2], [2, 0]]]}");
    w.file("cfg.yaml", "generators: gens.json\n");
    const Run r = w.run("build-group --config cfg.yaml --out o");
    CHECK(r.code == 2);
    CHECK(r.err.find("generators[1]") != std::string::npos);
    CHECK(r.err.find("skew") != std::string::npos);
}

TEST_CASE("explicit spectrum: 12 rows, cached bytes") {
    Workdir w("spectrum");
    w.file("s.yaml", "group: {l: 1, a: 1, b: 0}\nspectrum: {mode: explicit, mu: 1, k: 2, rmax: 3, pmax: 2}\n");
    const Run first = w.run("spectrum --config s.yaml --out o");
    REQUIRE(first.code == 0);
    CHECK(first.out.find("computed") != std::string::npos);
    const std::string bytes = slurp(w / "o/spectrum.json");
    const json res = json::parse(bytes);
    CHECK(res["rows"].size() == 12);
    CHECK(res["rows"][0]["value"] == -6.0);
    const std::string csv = slurp(w / "o/spectrum.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);

    const Run second = w.run("spectrum --config s.yaml --out o");
    REQUIRE(second.code == 0);
    CHECK(second.out.find("cache hit") != std::string::npos);
    CHECK(slurp(w / "o/spectrum.json") == bytes);
}

TEST_CASE("compact spectrum on R^2 = 40") {
    Workdir w("compact");
    w.file("c.yaml",
           "group: {l: 1, a: 1, b: 0}\nspectrum: {mode: compact, mu: 1, R2: 40, count: 4, strata: [[0, 0], [1, 1]]}\n");
    REQUIRE(w.run("spectrum --config c.yaml --out o --jobs 2").code == 0);
    const json res = w.result("o", "spectrum");
    REQUIRE(res["records"].size() == 2);
    for (const auto& rec : res["records"]) {
        CHECK(rec["provenance"] == "discretized");
        CHECK(rec["converged"] == true);
    }
    // Leading eigenvalue of stratum (0, 0) at mu = 1, k = 2: -6.
    CHECK(res["records"][0]["eigenvalues"][0]["value"].get<double>() == doctest::Approx(-6.0).epsilon(1e-9));
}

TEST_CASE("verify: selection, injected failure, unknown suite") {
    Workdir w("verify");
    const Run only = w.run("verify --only curvature --out o");
    CHECK(only.code == 0);
    const json v = w.result("o", "verify");
    REQUIRE(v["suites"].size() == 1);
    CHECK(v["suites"][0]["suite"] == "curvature");

    const Run broken = w.run("verify --only curvature,clifford --inject-failure --out p");
    CHECK(broken.code == 1);
    const json b = w.result("p", "verify");
    CHECK(b["suites"][0]["passed"] == false);
    CHECK(b["suites"][1]["passed"] == true);

    CHECK(w.run("verify --only nonsense --out q").code == 2);
}

TEST_CASE("isospec H^(2,0)_3 vs H^(1,1)_3") {
    Workdir w("isospec");
    const Run r = w.run("isospec --out o");
    CHECK(r.code == 0);
    const json res = w.result("o", "isospec");
    CHECK(res["isospectral"] == true);
    CHECK(res["left"] == "H^(2,0)_3");
    CHECK(res["right"] == "H^(1,1)_3");
    CHECK(res["flip_block_defect"] == 0.0);
    CHECK(res["comparisons"].size() == 12);  // (p, q) with p + q <= 2, two boundary conditions
}

TEST_CASE("report recomputes missing entries and is deterministic") {
    Workdir w("report");
    REQUIRE(w.run("curvature --out o").code == 0);
    const Run r = w.run("report --out o --only curvature,build-group");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("curvature: cache hit") != std::string::npos);
    CHECK(r.out.find("build-group: computed") != std::string::npos);
    const std::string md = slurp(w / "o/report.md");
    CHECK(md.find("## curvature") != std::string::npos);
    const std::string json_bytes = slurp(w / "o/report.json");
    fs::remove_all(w / "o/cache");
    REQUIRE(w.run("report --out o --only curvature,build-group").code == 0);
    CHECK(slurp(w / "o/report.json") == json_bytes);
}

TEST_CASE("environment overrides and exit codes") {
    Workdir w("env");
    CHECK(w.run("curvature", "HTYPE_OUT=envdir").code == 0);
    CHECK(fs::exists(w / "envdir/curvature.json"));
    CHECK(w.run("curvature --bogus").code == 2);
    CHECK(w.run("curvature --config missing.yaml").code == 2);
    w.file("bad.yaml", "spectrum: {mode: sideways}\n");
    const Run r = w.run("spectrum --config bad.yaml");
    CHECK(r.code == 2);
    CHECK(r.err.find("mode") != std::string::npos);
}
