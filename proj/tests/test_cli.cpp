#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(QDYN_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int raw = ::pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch() {
    auto dir = std::filesystem::temp_directory_path() / "qdyn_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("argument errors exit with status 2") {
    CHECK(run("stability --A nonsense").status == 2);
    CHECK(run("").status == 2);
    CHECK(run("orbits --A 0.75 --period 4").status == 2);
    CHECK(run("sweep sideways").status == 2);
    CHECK(run("dyn-plane --A 1").status == 2);  // --out missing
    CHECK(run("--help").status == 0);
}

TEST_CASE("stability and point reports") {
    const auto r = run("stability --A 0.75");
    REQUIRE(r.status == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["stability_z1"] == 0.0);
    CHECK(doc["disk_z1"] == "Inside");
    CHECK(nlohmann::json::parse(run("fixed-points --A 0.5+0i").out)["fixed_points"].size() == 5);
    CHECK(nlohmann::json::parse(run("critical-points --A -4+1i").out)["critical_points"].size() == 4);
}

TEST_CASE("orbits and sweeps") {
    const auto r = run("orbits --A 0.75 --period 2");
    REQUIRE(r.status == 0);
    CHECK(nlohmann::json::parse(r.out).size() == 6);
    const auto csv = run("sweep fixed --min 0 --max 2 --n 2");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("A,z2_re,z2_im,z3_re,z3_im\n0,-1,0,-1,0\n", 0) == 0);
    const auto path = scratch() / "profile.csv";
    CHECK(run("sweep profile --n 11 --out " + path.string()).status == 0);
    CHECK(slurp(path).rfind("A,s1_z1,s1_z23\n", 0) == 0);
}

TEST_CASE("renders write images and a report") {
    const auto dir = scratch();
    const auto ppm = dir / "a.ppm", pgm = dir / "a.pgm";
    const auto r = run("dyn-plane --A 0.75 --width 20 --height 10 --out " + ppm.string() + " --labels " + pgm.string());
    REQUIRE(r.status == 0);
    CHECK(slurp(ppm).size() == std::string("P6\n20 10\n255\n").size() + 600);
    CHECK(slurp(pgm).rfind("P5\n20 10\n255\n", 0) == 0);
    CHECK(nlohmann::json::parse(r.out)["window"]["width"] == 20);
    CHECK(run("param-plane --width 8 --height 8 --critic zc2 --out " + ppm.string()).status == 0);
    CHECK(run("dyn-plane --A 0.75 --out /nonexistent_dir/x.ppm").status == 1);
}

TEST_CASE("verify passes at the default seed") { CHECK(run("verify --seed 7").status == 0); }

}  // TEST_SUITE
