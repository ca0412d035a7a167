#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("DIRSPEC_BIN");
    REQUIRE(b != nullptr);
    return b;
}

fs::path work_dir() {
    fs::path p = fs::temp_directory_path() / "dirspec_cli_tests";
    fs::create_directories(p);
    return p;
}

int run(const std::string& args) {
    std::string cmd = bin() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

}  // namespace

TEST_CASE("construct, verify, analyze, plot round trip") {
    fs::path dir = work_dir();
    fs::path rec = dir / "run.json";
    int rc = run("construct --mode theorem2 --lambda 1/2 --epsilon 1/40 --steps 4 --out " +
                 rec.string());
    CHECK(rc == 0);
    CHECK(fs::exists(rec));

    CHECK(run("verify " + rec.string()) == 0);
    CHECK(run("analyze " + rec.string()) == 0);

    fs::path svg1 = dir / "a.svg", svg2 = dir / "b.svg";
    CHECK(run("plot " + rec.string() + " --step 4 --out " + svg1.string()) == 0);
    CHECK(run("plot " + rec.string() + " --step 4 --out " + svg2.string()) == 0);
    CHECK(slurp(svg1) == slurp(svg2));  // byte-identical
    CHECK(run("plot " + rec.string() + " --step 12 --out " + (dir / "c.svg").string()) == 2);
}

TEST_CASE("configuration errors exit with 2") {
    fs::path rec = work_dir() / "never.json";
    // lambda <= epsilon
    CHECK(run("construct --mode theorem2 --lambda 1/300 --epsilon 1/100 --steps 2 --out " +
              rec.string()) == 2);
    CHECK(run("construct --mode theorem2 --lambda bogus --epsilon 1/100 --steps 2 --out " +
              rec.string()) == 2);
}

TEST_CASE("empty run") {
    fs::path rec = work_dir() / "empty.json";
    CHECK(run("construct --mode theorem2 --lambda 1/2 --epsilon 1/100 --steps 0 --out " +
              rec.string()) == 0);
    CHECK(run("verify " + rec.string()) == 0);
    CHECK(run("analyze " + rec.string()) == 0);
}

TEST_CASE("tampered and truncated records") {
    fs::path dir = work_dir();
    fs::path rec = dir / "run2.json";
    REQUIRE(run("construct --mode theorem2 --lambda 1/2 --epsilon 1/40 --steps 4 --out " +
                rec.string()) == 0);
    std::string text = slurp(rec);

    // truncation: malformed, exit 2
    fs::path cut = dir / "cut.json";
    spit(cut, text.substr(0, text.size() * 2 / 3));
    CHECK(run("verify " + cut.string()) == 2);

    // a single perturbed coordinate: condition/consistency failure, exit 1
    size_t w_pos = text.find("\"w\": [");
    REQUIRE(w_pos != std::string::npos);
    size_t digit = text.find_first_of("123456789", w_pos);
    std::string mutated = text;
    mutated[digit] = mutated[digit] == '9' ? '8' : static_cast<char>(mutated[digit] + 1);
    fs::path mut = dir / "mut.json";
    spit(mut, mutated);
    CHECK(run("verify " + mut.string()) == 1);
}

TEST_CASE("growth mode with a phi table") {
    fs::path dir = work_dir();
    fs::path phi = dir / "phi.txt";
    spit(phi, "1 1\n2 4\n3 9\n4 16\n5 25\n");
    fs::path rec = dir / "growth.json";
    CHECK(run("construct --mode theorem1 --lambda 1/2 --steps 5 --phi-table " + phi.string() +
              " --out " + rec.string()) == 0);
    CHECK(run("verify " + rec.string()) == 0);
    CHECK(run("analyze " + rec.string()) == 0);
}
