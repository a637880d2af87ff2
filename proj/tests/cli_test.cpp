#include "cache.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "output.hpp"
#include "pool.hpp"

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;
using namespace htype::cli;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("htype-cli-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("floats are written with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(-6.0) == "-6.0");
    CHECK(format_double(1e-7) == "9.9999999999999995e-08");
    CHECK(dump_json(json{{"b", 1}, {"a", 0.5}}, 0) == "{\"a\":0.5,\"b\":1}\n");
    CHECK(dump_json(json{{"x", NAN}}, 0) == "{\"x\":null}\n");
}

TEST_CASE("CSV quoting") {
    CHECK(to_csv({"a", "b"}, {{"1", "x,y"}, {"say \"hi\"", ""}}) == "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\n");
}

TEST_CASE("SHA-256 test vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cache keys depend on command, inputs and nothing else") {
    const json in{{"mu", 1.0}, {"k", 2}};
    CHECK(ResultCache::key("spectrum", in) == ResultCache::key("spectrum", json{{"k", 2}, {"mu", 1.0}}));
    CHECK(ResultCache::key("spectrum", in) != ResultCache::key("curvature", in));
    CHECK(ResultCache::key("spectrum", in) != ResultCache::key("spectrum", json{{"mu", 1.5}, {"k", 2}}));

    const fs::path dir = scratch("cache");
    ResultCache cache(dir);
    const std::string key = ResultCache::key("x", in);
    CHECK_FALSE(cache.load(key).has_value());
    cache.store(key, "payload\n");
    REQUIRE(cache.load(key).has_value());
    CHECK(*cache.load(key) == "payload\n");
}

TEST_CASE("defaults") {
    const RunConfig cfg = load_config("");
    CHECK(cfg.group.label() == "H^(1,0)_3");
    CHECK(cfg.jobs == 1);
    CHECK(cfg.tol("default") == 1e-6);
    CHECK(cfg.tol("spectrum") == 1e-6);
}

TEST_CASE("YAML and JSON configs") {
    const fs::path dir = scratch("config");
    write(dir / "a.yaml",
          "group: {l: 3, a: 2, b: 1}\n"
          "spectrum:\n  mode: compact\n  R2: 40\n  bc: {robin: [1, 2]}\n  strata: [[0, 0], [2, 0, 1, 2]]\n"
          "jobs: 3\nseed: 7\n");
    const RunConfig a = load_config((dir / "a.yaml").string());
    CHECK(a.group.space->k() == 12);
    CHECK(a.spectrum.R == doctest::Approx(std::sqrt(40.0)));
    CHECK(a.spectrum.bc.kind == htype::BoundaryKind::Robin);
    REQUIRE(a.spectrum.strata.size() == 2);
    CHECK(a.spectrum.strata[1].s == 1);
    CHECK(a.spectrum.strata[1].i == 2);
    CHECK(a.jobs == 3);
    CHECK(a.seed == 7);

    write(dir / "b.json", "{\"group\": {\"l\": 1, \"a\": 1, \"b\": 0}}");
    CHECK(load_config((dir / "b.json").string()).group.space->k() == 2);
}

TEST_CASE("config errors name the field and line") {
    const fs::path dir = scratch("config-errors");
    write(dir / "bad.yaml", "group: {l: 3, a: 1}\nspectrum:\n  mood: explicit\n");
    try {
        load_config((dir / "bad.yaml").string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("mood") != std::string::npos);
        CHECK(msg.find(":3") != std::string::npos);
    }
    write(dir / "neg.yaml", "tolerances: {default: -1}\n");
    CHECK_THROWS_AS(load_config((dir / "neg.yaml").string()), ConfigError);
    write(dir / "strata.yaml", "spectrum: {strata: [[1, 0]]}\n");
    CHECK_THROWS_AS(load_config((dir / "strata.yaml").string()), ConfigError);
}

TEST_CASE("non-skew generator files name the matrix") {
    const fs::path dir = scratch("generators");
    write(dir / "gens.json", "{\"generators\": [[[0, -1], [1, 0]], [[0, 1], [1, 0]]]}");
    write(dir / "cfg.yaml", "generators: gens.json\n");
    try {
        load_config((dir / "cfg.yaml").string());
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("generators[1]") != std::string::npos);
    }
}

TEST_CASE("flags beat environment beats file") {
    const fs::path dir = scratch("overrides");
    write(dir / "c.yaml", "output: from-file\njobs: 2\n");
    RunConfig cfg = load_config((dir / "c.yaml").string());
    ::setenv("HTYPE_OUT", "from-env", 1);
    ::setenv("HTYPE_JOBS", "5", 1);
    apply_overrides(cfg, {});
    CHECK(cfg.out == "from-env");
    CHECK(cfg.jobs == 5);
    Overrides o;
    o.out = "from-flag";
    o.jobs = 4;
    apply_overrides(cfg, o);
    CHECK(cfg.out == "from-flag");
    CHECK(cfg.jobs == 4);
    ::unsetenv("HTYPE_OUT");
    ::unsetenv("HTYPE_JOBS");
}

TEST_CASE("worker pool fills every slot and rethrows") {
    std::vector<int> out(100, 0);
    parallel_for(4, 100, [&](int i) { out[i] = i * i; });
    for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
    CHECK_THROWS_WITH(parallel_for(3, 10,
                                   [](int i) {
                                       if (i == 4 || i == 7) throw std::runtime_error("job " + std::to_string(i));
                                   }),
                      "job 4");
}

TEST_CASE("explicit spectrum table") {
    RunConfig cfg = load_config("");
    cfg.group.space = htype::EndomorphismSpace(1, 1, 0);
    cfg.spectrum.mu = 1.0;
    cfg.spectrum.k = 2;
    const json res = compute("spectrum", cfg);
    REQUIRE(res.at("rows").size() == 12);
    for (const auto& row : res.at("rows")) {
        const int r = row.at("r"), p = row.at("p");
        CHECK(row.at("value").get<double>() == doctest::Approx(-((4 * r + 4 * p + 2) * 1.0 + 4.0)));
    }
    const std::string csv = result_csv("spectrum", res);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("identical inputs give identical bytes") {
    const RunConfig cfg = load_config("");
    for (const auto& cmd : cached_commands()) {
        if (cmd == "isospec") continue;  // covered by the command-line test
        CHECK(dump_json(compute(cmd, cfg)) == dump_json(compute(cmd, cfg)));
    }
}
