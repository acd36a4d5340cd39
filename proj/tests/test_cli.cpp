#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    fs::path d = fs::temp_directory_path() / "loopforge_cli_test";
    fs::create_directories(d);
    return d;
}

RunResult run_cli(const std::string& args) {
    fs::path out_file = work_dir() / "out.txt";
    std::string cmd = std::string(LOOPFORGE_CLI_PATH) + " " + args + " > " +
                      out_file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

} // namespace

TEST_CASE("cli: catalog emit and check round-trip") {
    fs::path table = work_dir() / "q8.json";
    auto emit = run_cli("catalog emit Q8 --json " + table.string());
    REQUIRE(emit.exit_code == 0);
    auto check = run_cli("check " + table.string());
    CHECK(check.exit_code == 0);
    CHECK(check.out.find("associative=1") != std::string::npos);
    CHECK(check.out.find("commutative=0") != std::string::npos);
}

TEST_CASE("cli: series on O16") {
    fs::path table = work_dir() / "o16.json";
    REQUIRE(run_cli("catalog emit O16 --json " + table.string()).exit_code == 0);
    auto r = run_cli("series --kind ca --depth 4 " + table.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("16 2 2 1") != std::string::npos);
}

TEST_CASE("cli: compare exits 0 when the containments hold") {
    fs::path table = work_dir() / "q8c.json";
    REQUIRE(run_cli("catalog emit Q8 --json " + table.string()).exit_code == 0);
    auto r = run_cli("compare --depth 4 " + table.string());
    CHECK(r.exit_code == 0);
}

TEST_CASE("cli: graded reports invariant factors and passes its checks") {
    fs::path table = work_dir() / "q8g.json";
    REQUIRE(run_cli("catalog emit Q8 --json " + table.string()).exit_code == 0);
    auto r = run_cli("graded --depth 3 " + table.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("invariant factors (2,2)") != std::string::npos);
    CHECK(r.out.find("violations 0") != std::string::npos);
}

TEST_CASE("cli: eval") {
    fs::path table = work_dir() / "q8e.json";
    REQUIRE(run_cli("catalog emit Q8 --json " + table.string()).exit_code == 0);
    auto r = run_cli("eval --table " + table.string() + " --bind a=i,b=j \"com(a,b)\"");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("= -1") != std::string::npos);
    // input errors exit 2
    CHECK(run_cli("eval --table " + table.string() + " --bind a=i \"com(a,b)\"").exit_code == 2);
    CHECK(run_cli("eval --table " + table.string() + " --bind a=zz \"a\"").exit_code == 2);
    CHECK(run_cli("eval --table " + table.string() + " --bind a=i \"a*b*c\"").exit_code == 2);
}

TEST_CASE("cli: deviation census") {
    auto r = run_cli("deviation --level 3 --count");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("60") != std::string::npos);
    auto l = run_cli("deviation --level 1 --list");
    CHECK(l.exit_code == 0);
    CHECK(l.out.find("(1)") != std::string::npos);
    CHECK(l.out.find("(3)") != std::string::npos);
}

TEST_CASE("cli: higman witness") {
    auto r = run_cli("higman-witness -m 2 -n 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("f(6,1)") != std::string::npos); // leading index n+m+1
    CHECK(r.out.find("outside gamma3") != std::string::npos);
}

TEST_CASE("cli: malformed input exits 2") {
    fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{\"name\": \"x\", \"table\": [[0,1],[0,1]]}";
    CHECK(run_cli("check " + bad.string()).exit_code == 2);
    CHECK(run_cli("check " + (work_dir() / "missing.json").string()).exit_code == 2);
    CHECK(run_cli("catalog emit NOPE").exit_code == 2);
}

TEST_CASE("cli: JSON reports are byte-identical across runs") {
    fs::path table = work_dir() / "o16d.json";
    REQUIRE(run_cli("catalog emit O16 --json " + table.string()).exit_code == 0);
    fs::path j1 = work_dir() / "r1.json";
    fs::path j2 = work_dir() / "r2.json";
    REQUIRE(run_cli("compare --depth 4 " + table.string() + " --json " + j1.string()).exit_code == 0);
    REQUIRE(run_cli("compare --depth 4 " + table.string() + " --json " + j2.string()).exit_code == 0);
    std::ifstream f1(j1), f2(j2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(!s1.str().empty());
    // and it parses
    nlohmann::json parsed = nlohmann::json::parse(s1.str());
    CHECK(parsed.contains("flags"));
}
