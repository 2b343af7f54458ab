#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_bin;

int run(const std::string& args) {
    const std::string cmd = g_bin + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path tmpdir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / "hardylab_cli_tests" / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("weights: evaluation-only run exits 0 and writes the sweep") {
    auto d = tmpdir("w");
    CHECK(run("weights --m 3 --R 2.718281828 --grid 100 --out " + d.string()) == 0);
    CHECK(std::filesystem::exists(d / "weights-t.csv"));
    CHECK(std::filesystem::exists(d / "results.jsonl"));
    CHECK(std::filesystem::exists(d / "summary.csv"));
    // 100 grid rows plus header
    std::ifstream in(d / "weights-t.csv");
    int lines = 0;
    std::string l;
    while (std::getline(in, l)) ++lines;
    CHECK(lines == 101);
}

TEST_CASE("verify-main full pipeline exits 0") {
    auto d = tmpdir("vm");
    CHECK(run("verify-main --domain interval:D=1 --fn bump --m 2..8 --R e --out " + d.string()) == 0);
    const std::string sum = slurp(d / "summary.csv");
    CHECK(sum.find("pass") != std::string::npos);
    CHECK(sum.find("fail") == std::string::npos);
}

TEST_CASE("series divergence witness exits 0 for the counterexample run") {
    auto d = tmpdir("se");
    CHECK(run("series --alpha 1.0 --fn tensor --mmax 10000 --out " + d.string()) == 0);
    const std::string sum = slurp(d / "results.jsonl");
    CHECK(sum.find("witness_m") != std::string::npos);
}

TEST_CASE("byte-identical reruns with the same seed") {
    auto d1 = tmpdir("det1"), d2 = tmpdir("det2");
    const std::string args = "verify-frac --fn bump --domain interval:D=0.5 --m 2..3 --s 0.5,0.7 --seed 4242";
    CHECK(run(args + " --out " + d1.string()) == 0);
    CHECK(run(args + " --out " + d2.string()) == 0);
    for (const char* f : {"results.jsonl", "summary.csv", "verify-frac-s.csv"}) {
        CHECK(slurp(d1 / f) == slurp(d2 / f));
        CHECK(!slurp(d1 / f).empty());
    }
}

TEST_CASE("jobs > 1 produces identical bytes in case order") {
    auto d1 = tmpdir("j1"), d4 = tmpdir("j4");
    const std::string args = "verify-main --fn battery --m 2..4 --seed 7";
    CHECK(run(args + " --jobs 1 --out " + d1.string()) == 0);
    CHECK(run(args + " --jobs 4 --out " + d4.string()) == 0);
    CHECK(slurp(d1 / "summary.csv") == slurp(d4 / "summary.csv"));
    CHECK(slurp(d1 / "results.jsonl") == slurp(d4 / "results.jsonl"));
}

TEST_CASE("report regenerates summary.csv byte-for-byte from results.jsonl") {
    auto d = tmpdir("rep");
    CHECK(run("verify-main --fn battery --m 2..3 --out " + d.string()) == 0);
    const std::string before = slurp(d / "summary.csv");
    std::filesystem::remove(d / "summary.csv");
    CHECK(run("report --out " + d.string()) == 0);
    CHECK(slurp(d / "summary.csv") == before);
}

TEST_CASE("config file provides defaults, flags override") {
    auto d = tmpdir("cfg");
    std::ofstream cfg(d / "run.cfg");
    cfg << "m=2..3\nR=e\nfn=bump\n";
    cfg.close();
    CHECK(run("verify-main --config " + (d / "run.cfg").string() + " --out " + d.string()) == 0);
    std::ifstream in(d / "summary.csv");
    std::string l;
    int rows = 0;
    while (std::getline(in, l)) ++rows;
    CHECK(rows == 3); // header + m=2,3
}

TEST_CASE("error exits: unknown flag and bad specs give exit 1 with diagnostics") {
    CHECK(run("verify-main --no-such-flag") == 1);
    CHECK(run("verify-main --domain hedgehog:q=1") == 1);
    CHECK(run("verify-main --fn unicorn") == 1);
    CHECK(run("counterexample --kind nope") == 1);
}

TEST_CASE("HARDYLAB_SEED fallback is honored") {
    auto d1 = tmpdir("env1"), d2 = tmpdir("env2");
    const std::string args = "verify-frac --fn bump --domain interval:D=0.5 --m 2..2 --s 0.5";
    const std::string pre = "HARDYLAB_SEED=777 ";
    const int r1 = std::system((pre + g_bin + " " + args + " --out " + d1.string() + " >/dev/null 2>&1").c_str());
    const int r2 = std::system((pre + g_bin + " " + args + " --out " + d2.string() + " >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(r1) == 0);
    CHECK(WEXITSTATUS(r2) == 0);
    CHECK(slurp(d1 / "results.jsonl") == slurp(d2 / "results.jsonl"));
}

int main(int argc, char** argv) {
    doctest::Context ctx;
    // last argument is the hardylab binary path (injected by CTest)
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_bin = argv[argc - 1];
        --argc;
    }
    if (g_bin.empty()) {
        std::fprintf(stderr, "usage: test_cli [doctest options] <path-to-hardylab>\n");
        return 1;
    }
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
