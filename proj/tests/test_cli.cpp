#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "covercraft/io.hpp"

using namespace covercraft;
namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path d = [] {
        fs::path p = fs::temp_directory_path() / "covercraft_cli_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return d;
}

std::string at(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& capture = "") {
    std::string cmd = std::string(COVERCRAFT_CLI) + " " + args;
    cmd += capture.empty() ? " >/dev/null 2>&1" : " >" + at(capture) + " 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void write(const std::string& name, const std::string& text) { std::ofstream(at(name)) << text; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kArc = "code 3 3 4\n1 0 0 1\n0 1 0 1\n0 0 1 1\n";

}  // namespace

TEST_CASE("constructions exit 0 and write loadable files") {
    CHECK(run("construct four-lines --q 3 --skip-saturating -o " + at("b.pts")) == 0);
    CHECK(load_points(at("b.pts")).size() == 16);
    CHECK(run("verify blocking --points " + at("b.pts") + " --t 3") == 0);

    write("arc.pcm", kArc);
    CHECK(run("construct qm --variant 1 --start " + at("arc.pcm") + " --m 1 -o " + at("qm.pcm")) == 0);
    CHECK(load_code(at("qm.pcm")).n() == 14);
    CHECK(slurp(at("qm.pcm")).rfind("# QM1 m=1", 0) == 0);

    CHECK(run("construct baer-pair --q 4 -o " + at("bp.pts")) == 0);
    const auto bp = load_points(at("bp.pts"));
    CHECK(bp.size() == 14);
    CHECK(bp.field().q() == 4);

    CHECK(run("construct hamming --q 3 --m 2 -o " + at("h.pcm")) == 0);
    CHECK(run("construct doubling --input " + at("arc.pcm") + " -o " + at("d.pcm")) == 0);
    CHECK(load_code(at("d.pcm")).n() == 8);
    CHECK(run("construct ds --input " + at("h.pcm") + " --input " + at("arc.pcm")) == 0);
    CHECK(run("construct construction-a --q 2 --v 4 -o " + at("a.pts")) == 0);
    CHECK(run("construct weight-bk --q 2 --v 3 --k 2") == 0);
    CHECK(run("construct sigma --q 2 --m 2 --R2 2") == 0);
}

TEST_CASE("verification exit codes") {
    write("arc.pcm", kArc);
    write("arc.pts", "pg 2 3 4\n1 0 0\n0 1 0\n0 0 1\n1 1 1\n");
    CHECK(run("construct hamming --q 3 --m 2 -o " + at("h.pcm")) == 0);
    CHECK(run("verify radius --code " + at("h.pcm") + " --claim 1") == 0);
    CHECK(run("verify saturating --points " + at("arc.pts") + " --claim 1") == 0);
    CHECK(run("verify radius --code " + at("arc.pcm") + " --claim 1") == 3);
    CHECK(run("verify saturating --points " + at("arc.pts") + " --claim 2") == 3);

    write("triv.part", "partition 4 4\n0\n1\n2\n3\n");
    CHECK(run("verify partition --code " + at("arc.pcm") + " --partition " + at("triv.part") + " --R 2 --ell 0") == 0);
    CHECK(run("verify partition --code " + at("arc.pcm") + " --partition " + at("triv.part") + " --R 2 --ell 2") == 3);

    // q^r = 2^29 is above the syndrome cap
    std::ostringstream big;
    big << "code 2 29 29\n";
    for (int i = 0; i < 29; ++i) {
        for (int j = 0; j < 29; ++j) big << (j ? " " : "") << (i == j);
        big << '\n';
    }
    write("big.pcm", big.str());
    CHECK(run("verify radius --code " + at("big.pcm") + " --claim 29") == 4);
}

TEST_CASE("preconditions and parse errors exit 2") {
    CHECK(run("verify radius --code " + at("missing.pcm") + " --claim 1") == 2);
    write("bad.pcm", "code 3 2 4\n1 0 1\n");
    CHECK(run("verify radius --code " + at("bad.pcm") + " --claim 1") == 2);
    CHECK(run("construct baer-pair --q 8") == 2);
    CHECK(run("construct cubic-pair --p 2") == 2);
    CHECK(run("construct four-lines --q 6") == 2);
    CHECK(run("no-such-command") == 2);
    CHECK(run("construct hamming --q 3") == 2);
    CHECK(run("families eval --id hamming-sum --R 2 --q 3 --r 5") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("searches, tables and budgets") {
    CHECK(run("search exhaustive --v 2 --q 5 --rho 1 --nmax 8 -o " + at("s.pts")) == 0);
    CHECK(load_points(at("s.pts")).size() == 6);
    CHECK(run("--budget 0.0001 search exhaustive --v 4 --q 5 --rho 2 --nmax 10") == 4);
    CHECK(run("search greedy --v 2 --q 7 --rho 1") == 0);
    CHECK(run("tables reproduce --table I --qmax 7") == 0);
    CHECK(run("tables bounds --quantity a") == 0);
    CHECK(run("tables bounds --quantity b") == 3);
    CHECK(run("families list --R 3") == 0);
    CHECK(run("families open-problem --R 4 --q 16") == 0);
}

TEST_CASE("JSON run report describes its artifacts") {
    CHECK(run("--json construct weight-bk --q 3 --v 3 --k 2 -o " + at("w.pts"), "w.json") == 0);
    const auto j = nlohmann::json::parse(slurp(at("w.json")));
    CHECK(j["exit_code"] == 0);
    CHECK(j["command"].get<std::string>().find("weight-bk") != std::string::npos);
    REQUIRE(j["outputs"].size() == 1);
    CHECK(j["outputs"][0]["digest"] == file_digest(at("w.pts")));
    for (const auto& s : j["statuses"]) CHECK(s["status"] == "VERIFIED");

    // the file reloads to the same set and re-serializes byte for byte
    const auto s = load_points(at("w.pts"));
    save_points(at("w2.pts"), s);
    CHECK(slurp(at("w2.pts")) == slurp(at("w.pts")));
}
