#include "hnstrata/cli.hpp"
#include "hnstrata/config.hpp"
#include "hnstrata/serialize.hpp"

#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

using namespace hnstrata;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hnstrata");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
    fs::path p = fs::path(HNSTRATA_TEST_TMP) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

// Runs the installed executable and returns its exit status and stdout.
std::pair<int, std::string> shell(const std::string& args) {
    std::string cmd = std::string("\"") + HNSTRATA_EXE + "\" " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> listing(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace

TEST_CASE("classify prints the (2,3,1,0) atlas") {
    auto r = run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0",
                  "--format", "json"});
    REQUIRE(r.code == kExitOk);
    Atlas a = atlas_from_json_string(r.out);
    REQUIRE(a.strata.size() == 4);
    CHECK(a.strata[2].verdict.status == Status::NonEmptyU);
    CHECK(a.strata[2].verdict.dimension == Integer(5));

    auto md = run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0"});
    CHECK(md.code == kExitOk);
    CHECK(md.out.find("| 2 | 1 | 5 | 3 | nonempty-U |") != std::string::npos);
}

TEST_CASE("classify a single stratum") {
    auto r = run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0",
                  "--k", "3", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    Json j = Json::parse(r.out);
    CHECK(j.at("stratum").at("k") == 3);
    CHECK(j.at("stratum").at("verdict").at("status") == "empty");

    auto past = run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2",
                     "0", "--k", "9", "--format", "csv"});
    CHECK(past.code == kExitOk);
    CHECK(past.out.find("GATE-CLIFFORD") != std::string::npos);

    auto neg = run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0",
                    "--k", "-1"});
    CHECK(neg.code == kExitUsage);
}

TEST_CASE("classify reports an inadmissible type without failing") {
    auto r = run({"classify", "--genus", "2", "--n1", "1", "--d1", "5", "--n2", "1", "--d2", "0",
                  "--k", "1", "--format", "csv"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("inadmissible") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"classify", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0"}).code == kExitUsage);
    CHECK(run({"classify", "--genus", "1", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0"})
              .code == kExitUsage);
    CHECK(run({"classify", "--genus", "x", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0"})
              .code == kExitUsage);
    auto bad_type =
        run({"classify", "--genus", "2", "--n1", "1", "--d1", "0", "--n2", "1", "--d2", "0"});
    CHECK(bad_type.code == kExitUsage);
    CHECK(bad_type.err.find("invalid type") != std::string::npos);
    CHECK(run({"classify", "--genus", "2", "--n1", "2", "--d1", "3", "--n2", "1", "--d2", "0",
               "--format", "xml"})
              .code == kExitUsage);
    CHECK(run({"enumerate", "--genus", "2", "--rank", "1", "--degree", "0"}).code == kExitUsage);
    CHECK(run({"enumerate", "--genus", "2", "--rank", "3", "--degree", "0", "--length", "4"}).code ==
          kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("enumerate") {
    auto r = run({"enumerate", "--genus", "2", "--rank", "3", "--degree", "3", "--format", "csv"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == "index,ranks,degrees,slopes\n0,1 2,2 1,2 1/2\n1,2 1,3 0,3/2 0\n");

    auto all = run({"enumerate", "--genus", "2", "--rank", "4", "--degree", "0",
                    "--no-coprime-only", "--format", "json"});
    auto cop = run({"enumerate", "--genus", "2", "--rank", "4", "--degree", "0", "--format", "json"});
    CHECK(Json::parse(all.out).size() > Json::parse(cop.out).size());

    auto three = run({"enumerate", "--genus", "2", "--rank", "3", "--degree", "0", "--length", "3",
                      "--no-coprime-only", "--format", "json"});
    REQUIRE(three.code == kExitOk);
    Json j = Json::parse(three.out);
    CHECK_FALSE(j.empty());
    for (const auto& t : j) CHECK(t.at("parts").size() == 3);

    auto strict = run({"enumerate", "--genus", "2", "--rank", "3", "--degree", "4", "--length", "3",
                       "--format", "json"});
    auto loose = run({"enumerate", "--genus", "2", "--rank", "3", "--degree", "4", "--length", "3",
                      "--quotients-only", "--format", "json"});
    CHECK(Json::parse(loose.out).size() >= Json::parse(strict.out).size());
}

TEST_CASE("catalog and check") {
    auto md = run({"catalog"});
    CHECK(md.code == kExitOk);
    CHECK(md.out.find("- TEOP05: ") != std::string::npos);
    auto js = run({"catalog", "--format", "json"});
    Json j = Json::parse(js.out);
    CHECK(j.at("version") == kRuleCatalogVersion);
    CHECK(j.at("rules").size() == rule_catalog().size());

    auto c = run({"check"});
    CHECK(c.code == kExitOk);
    Json reports = Json::parse(c.out);
    REQUIRE(reports.size() == 3);
    for (const auto& r : reports) CHECK(r.at("passed") == true);
}

TEST_CASE("config parsing") {
    auto cfg = parse_config(
        "# grid\n"
        "genus = [2, 3]\n"
        "rank = 2..3   # inclusive\n"
        "degree = -1..1\n"
        "curve = petri\n"
        "output_dir = out\n"
        "trust_paper_strata = yes\n");
    CHECK(cfg.genera == std::vector<Integer>{2, 3});
    CHECK(cfg.ranks == std::vector<Integer>{2, 3});
    CHECK(cfg.degrees == std::vector<Integer>{-1, 0, 1});
    CHECK(cfg.curve == CurveClass::Petri);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.trust_paper_strata);
    CHECK(cfg.coprime_only);
    CHECK_FALSE(cfg.cache_dir.has_value());

    CHECK(parse_integer_list("5..4").empty());
    CHECK(parse_integer_list(" 7 ") == std::vector<Integer>{7});
    CHECK_THROWS(parse_integer_list("[1, x]"));
    CHECK_THROWS(parse_integer_list("[1, 2"));

    const std::string base = "genus = 2\nrank = 2\ndegree = 1\noutput_dir = o\n";
    CHECK_NOTHROW(parse_config(base));
    CHECK_THROWS_AS(parse_config(base + "genus = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "colour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "curve = hyperbolic\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("rank = 2\ndegree = 1\noutput_dir = o\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("genus = 1\nrank = 2\ndegree = 1\noutput_dir = o\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(base + "no equals sign\n"), ConfigError);
    try {
        parse_config(base + "colour = red\n");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 5);
    }
}

TEST_CASE("atlas cache is write-once") {
    fs::path dir = fresh_dir("cache_unit");
    AtlasCache cache(dir);
    CHECK_FALSE(cache.get("a/b").has_value());
    cache.put("a/b", "first");
    cache.put("a/b", "second");
    CHECK(cache.get("a/b") == std::optional<std::string>("first"));
}

TEST_CASE("sweep writes one file per type, identically for any job count") {
    fs::path root = fresh_dir("sweep");
    auto write_config = [&](const std::string& name, const fs::path& out) {
        fs::path p = root / name;
        write_file_atomic(p, "genus = 2..3\nrank = 2..4\ndegree = -2..4\ncurve = petri\noutput_dir = " +
                                 out.string() + "\n");
        return p.string();
    };
    std::string c1 = write_config("one.cfg", root / "one");
    std::string c4 = write_config("four.cfg", root / "four");
    auto r1 = run({"sweep", "--config", c1});
    auto r4 = run({"sweep", "--config", c4, "--jobs", "4"});
    REQUIRE(r1.code == kExitOk);
    REQUIRE(r4.code == kExitOk);
    CHECK(r1.out.rfind("wrote ", 0) == 0);

    auto names = listing(root / "one");
    REQUIRE(names == listing(root / "four"));
    CHECK(std::find(names.begin(), names.end(), "atlas_g2_2_3_1_0.json") != names.end());
    for (const auto& n : names) {
        std::string a = read_file(root / "one" / n);
        CHECK(a == read_file(root / "four" / n));
        CHECK(atlas_to_json_string(atlas_from_json_string(a)) == a);
    }
}

TEST_CASE("sweep reuses the cache without changing output") {
    fs::path root = fresh_dir("sweep_cache");
    std::string body = "genus = 2\nrank = 3\ndegree = [1, 2, 3]\ncache_dir = " +
                       (root / "cache").string() + "\n";
    write_file_atomic(root / "a.cfg", body + "output_dir = " + (root / "a").string() + "\n");
    write_file_atomic(root / "b.cfg", body + "output_dir = " + (root / "b").string() + "\n");
    auto first = run({"sweep", "--config", (root / "a.cfg").string()});
    REQUIRE(first.code == kExitOk);
    CHECK(first.out.find("(0 from cache)") != std::string::npos);
    auto second = run({"sweep", "--config", (root / "b.cfg").string()});
    REQUIRE(second.code == kExitOk);
    CHECK(second.out.find("(0 from cache)") == std::string::npos);
    for (const auto& n : listing(root / "a")) CHECK(read_file(root / "a" / n) == read_file(root / "b" / n));
}

TEST_CASE("sweep error codes") {
    fs::path root = fresh_dir("sweep_errors");
    CHECK(run({"sweep", "--config", (root / "missing.cfg").string()}).code == kExitIo);
    write_file_atomic(root / "bad.cfg", "genus = 2\n");
    CHECK(run({"sweep", "--config", (root / "bad.cfg").string()}).code == kExitUsage);
    write_file_atomic(root / "blocked", "a file, not a directory");
    write_file_atomic(root / "io.cfg", "genus = 2\nrank = 2\ndegree = 1\noutput_dir = " +
                                           (root / "blocked" / "sub").string() + "\n");
    CHECK(run({"sweep", "--config", (root / "io.cfg").string()}).code == kExitIo);
    CHECK(run({"sweep", "--config", (root / "bad.cfg").string(), "--jobs", "0"}).code ==
          kExitUsage);
}

TEST_CASE("the executable reports the same exit codes") {
    auto ok = shell("classify --genus 2 --n1 2 --d1 3 --n2 1 --d2 0 --k 2 --format json");
    CHECK(ok.first == kExitOk);
    CHECK(Json::parse(ok.second).at("stratum").at("verdict").at("status") == "nonempty-U");
    CHECK(shell("classify --genus 2").first == kExitUsage);
    CHECK(shell("sweep --config /nonexistent/hnstrata.cfg").first == kExitIo);
}
