// Drives the installed CLI binary end to end and pins the exit-code
// contract: 0 success, 1 validation failure, 2 I/O failure.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "jndmix/image_io.hpp"
#include "test_util.hpp"

using namespace jndmix;
using test::TempDir;

namespace {

int run_cli(const std::string& args, const std::filesystem::path& stdout_file = {}) {
    std::string command = std::string(JNDMIX_CLI_PATH) + " " + args;
    if (!stdout_file.empty()) command += " > " + stdout_file.string();
    command += " 2>/dev/null";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

std::filesystem::path build_corpus(const TempDir& dir, int n) {
    Rng rng(404);
    std::string manifest = "path,mos\n";
    for (int i = 0; i < n; ++i) {
        const std::string name = "im" + std::to_string(i) + ".png";
        save_image(test::random_image(rng, 16, 16, 3), dir / name);
        manifest += name + "," + std::to_string(2.0 + i) + "\n";
    }
    test::write_text(dir / "manifest.csv", manifest);
    return dir / "manifest.csv";
}

} // namespace

TEST_CASE("full pipeline through the binary: estimate, augment, verify, split, metrics") {
    TempDir dir;
    const auto manifest = build_corpus(dir, 3);

    CHECK(run_cli("estimate-jnd --manifest " + manifest.string() + " --out " +
                  (dir / "maps").string()) == 0);
    CHECK(run_cli("augment --manifest " + manifest.string() + " --maps " +
                  (dir / "maps").string() + " --out " + (dir / "aug").string() +
                  " --seed 11 --mode jndmix") == 0);

    const auto verify_out = dir / "verify.txt";
    CHECK(run_cli("verify --original " + manifest.string() + " --augmented " +
                      (dir / "aug" / "manifest.csv").string() + " --maps " +
                      (dir / "maps").string(),
                  verify_out) == 0);
    CHECK(slurp(verify_out).find("violations: 0") != std::string::npos);

    CHECK(run_cli("split --manifest " + manifest.string() + " --out " +
                  (dir / "splits").string() + " --seed 1 --repeats 2") == 0);
    CHECK(std::filesystem::exists(dir / "splits" / "split_1.txt"));

    test::write_text(dir / "p.txt", "1\n2\n3\n");
    test::write_text(dir / "g.txt", "10\n20\n30\n");
    const auto metrics_out = dir / "metrics.txt";
    CHECK(run_cli("metrics --pred " + (dir / "p.txt").string() + " --gt " +
                      (dir / "g.txt").string(),
                  metrics_out) == 0);
    CHECK(slurp(metrics_out) == "1.000000,1.000000,3\n");
}

TEST_CASE("augment with chou-li estimator needs no maps directory") {
    TempDir dir;
    const auto manifest = build_corpus(dir, 2);
    CHECK(run_cli("augment --manifest " + manifest.string() + " --out " +
                  (dir / "aug").string() + " --estimator chou-li --seed 5") == 0);
    CHECK(run_cli("verify --original " + manifest.string() + " --augmented " +
                  (dir / "aug" / "manifest.csv").string() + " --estimator chou-li") == 0);
}

TEST_CASE("exit code 1 on validation failures") {
    TempDir dir;
    SUBCASE("bad manifest header") {
        test::write_text(dir / "bad.csv", "file,score\na.png,1\nb.png,2\n");
        CHECK(run_cli("split --manifest " + (dir / "bad.csv").string() + " --out " +
                      (dir / "s").string()) == 1);
    }
    SUBCASE("unknown mode string") {
        const auto manifest = build_corpus(dir, 2);
        CHECK(run_cli("augment --manifest " + manifest.string() + " --out " +
                      (dir / "o").string() + " --mode sepia") == 1);
    }
    SUBCASE("gaussian without sigma") {
        const auto manifest = build_corpus(dir, 2);
        CHECK(run_cli("augment --manifest " + manifest.string() + " --out " +
                      (dir / "o").string() + " --mode gaussian") == 1);
    }
    SUBCASE("split fraction above 1") {
        const auto manifest = build_corpus(dir, 2);
        CHECK(run_cli("split --manifest " + manifest.string() + " --out " +
                      (dir / "s").string() + " --fraction 1.5") == 1);
    }
    SUBCASE("verify exits 1 when the bound is broken") {
        const auto manifest = build_corpus(dir, 2);
        REQUIRE(run_cli("augment --manifest " + manifest.string() + " --out " +
                        (dir / "aug").string() + " --estimator chou-li --mode gaussian"
                        " --sigma 60 --seed 1") == 0);
        CHECK(run_cli("verify --original " + manifest.string() + " --augmented " +
                      (dir / "aug" / "manifest.csv").string() + " --estimator chou-li") == 1);
    }
}

TEST_CASE("exit code 2 on I/O failures") {
    TempDir dir;
    CHECK(run_cli("split --manifest " + (dir / "missing.csv").string() + " --out " +
                  (dir / "s").string()) == 2);

    SUBCASE("partial estimate failure over unreadable records") {
        build_corpus(dir, 2);
        test::write_text(dir / "manifest.csv", "path,mos\nim0.png,1\nghost.png,2\n");
        CHECK(run_cli("estimate-jnd --manifest " + (dir / "manifest.csv").string() +
                      " --out " + (dir / "maps").string()) == 2);
        CHECK(std::filesystem::exists(dir / "maps" / "im0.jndm"));
    }
}

TEST_CASE("reruns of augment are byte-identical through the binary") {
    TempDir dir;
    const auto manifest = build_corpus(dir, 3);
    const std::string base = "augment --manifest " + manifest.string() +
                             " --estimator chou-li --seed 77 --jobs ";
    CHECK(run_cli(base + "1 --out " + (dir / "a").string()) == 0);
    CHECK(run_cli(base + "3 --out " + (dir / "b").string()) == 0);
    for (int i = 0; i < 3; ++i) {
        const std::string name = "im" + std::to_string(i) + ".png";
        CHECK(test::read_bytes(dir / "a" / name) == test::read_bytes(dir / "b" / name));
    }
    CHECK(test::read_bytes(dir / "a" / "audit.csv") ==
          test::read_bytes(dir / "b" / "audit.csv"));
}
