#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "advmean/cli.hpp"
#include "advmean/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "advmean");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = advmean::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) {
    return (fs::path(ADVMEAN_SOURCE_DIR) / "data" / "corpus" / (name + ".json")).string();
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("advmean_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name, const std::string& content = {}) const {
        const fs::path p = path_ / name;
        if (!content.empty()) std::ofstream(p) << content;
        return p.string();
    }

private:
    fs::path path_;
};

}  // namespace

TEST_CASE("exit codes") {
    const TempDir tmp;
    CHECK(run({"verify", "--in", corpus("two_point"), "--n", "1000"}).code == 0);
    CHECK(run({"neighborhood", "--in", corpus("asym_two_point"), "--n", "1000"}).code == 0);

    const std::string point = tmp.file("point.json", R"({"atoms": [{"x": 1, "w": 1}]})");
    const Run degenerate = run({"verify", "--in", point, "--n", "1000"});
    CHECK(degenerate.code == 3);
    CHECK(run({"construct", "--in", point, "--n", "1000"}).code == 3);

    CHECK(run({"verify", "--in", corpus("two_point"), "--n", "100"}).code == 3);
    const Run over = run({"verify", "--in", corpus("two_point"), "--n", "100", "--override-regime"});
    CHECK(over.code == 0);
    CHECK(over.out.find("\"asserted\": false") != std::string::npos);

    const std::string broken = tmp.file("broken.json", "{\"atoms\": [\n{\"x\": 1,, \"w\": 1}]}");
    const Run bad = run({"verify", "--in", broken, "--n", "1000"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("line 2") != std::string::npos);

    CHECK(run({"verify", "--in", corpus("two_point")}).code == 2);
    CHECK(run({"verify", "--in", "/nonexistent.json", "--n", "10"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"bench-mom", "--in", corpus("two_point"), "--n", "5", "--trials", "10"}).code == 2);
    CHECK(run({"gen", "--name", "nope"}).code == 2);

    // A pair with no mean shift fails the separation condition.
    CHECK(run({"verify", "--in", corpus("two_point"), "--n", "1000", "--pair", corpus("two_point")}).code == 1);
}

TEST_CASE("construct then verify the written pair") {
    const TempDir tmp;
    for (const char* name : {"two_point", "asym_two_point", "pareto_1_5"}) {
        CAPTURE(name);
        const std::string q = tmp.file(std::string(name) + "_q.json");
        REQUIRE(run({"construct", "--in", corpus(name), "--n", "1000", "--out", q}).code == 0);
        const Run r = run({"verify", "--in", corpus(name), "--n", "1000", "--pair", q});
        CHECK(r.code == 0);
        CHECK(r.out.find("\"pair\": true") != std::string::npos);
    }
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    const std::vector<std::string> verify{"verify", "--in", corpus("gaussian_grid"), "--n", "10000", "--delta", "0.01"};
    CHECK(run(verify).out == run(verify).out);

    const std::vector<std::string> bench{"bench-mom", "--in", corpus("contaminated_gaussian"), "--n", "500",
                                         "--trials", "200", "--seed", "9"};
    auto threaded = bench;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const Run a = run(bench);
    CHECK(a.code == 0);
    CHECK(a.out == run(threaded).out);

    const std::vector<std::string> lr{"distinguish", "--in", corpus("two_point"), "--n", "1000", "--trials", "200"};
    auto lr_threaded = lr;
    lr_threaded.insert(lr_threaded.end(), {"--threads", "3"});
    CHECK(run(lr).out == run(lr_threaded).out);
}

TEST_CASE("scan and gen formats") {
    const Run csv = run({"scan", "--in", corpus("two_point"), "--n-list", "1000,10000"});
    CHECK(csv.code == 0);
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);
    const Run json = run({"scan", "--in", corpus("two_point"), "--n-list", "1000", "--format", "json"});
    CHECK(advmean::Json::parse(json.out)["rows"].size() == 1);

    const Run gen = run({"gen", "--name", "two_point"});
    CHECK(gen.code == 0);
    std::ifstream shipped(corpus("two_point"));
    std::ostringstream text;
    text << shipped.rdbuf();
    CHECK(gen.out == text.str());

    const Run bench_csv = run({"bench-mom", "--in", corpus("two_point"), "--n", "100", "--trials", "50",
                               "--format", "csv"});
    CHECK(bench_csv.out.rfind("distribution,", 0) == 0);
}
