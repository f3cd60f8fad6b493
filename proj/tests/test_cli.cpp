#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const std::string kCli = GOWERS_CLI_PATH;
const std::string kSolver = std::string("python3 ") + GOWERS_SOLVER_SCRIPT;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
    const int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("cli: generate") {
    auto values = run("generate --k 2 --kind sum --gens \"(1,0);(2,5)\"");
    CHECK(values.exit_code == 0);
    CHECK(count_lines(values.output) == 5);
    CHECK(values.output.find("(3,5)") != std::string::npos);

    auto fs_case = run("generate --k 1 --kind sum --gens \"3;5\"");
    CHECK(fs_case.exit_code == 0);
    CHECK(fs_case.output == "3\n5\n8\n");

    auto product = run("generate --k 2 --kind product --gens \"(2,1);(3,2)\"");
    CHECK(product.exit_code == 0);
    CHECK(count_lines(product.output) == 5);
    CHECK(product.output.find("(2,3)") != std::string::npos);

    auto expressions = run("generate --k 2 --kind sum --gens \"(1,0);(2,5)\" --expressions");
    CHECK(expressions.exit_code == 0);
    CHECK(expressions.output.find("# expressions: 5") != std::string::npos);
    CHECK(expressions.output.find("[B1,B2] -> (1,2)") != std::string::npos);

    auto bad = run("generate --k 2 --kind sum --gens \"(0,1)\"");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("not in Xk") != std::string::npos);

    auto bad_dim = run("generate --k 2 --kind sum --gens \"3;5\"");
    CHECK(bad_dim.exit_code == 2);
}

TEST_CASE("cli: verify") {
    const auto constant = write_file("cli_constant.txt", "k=1 N=3 r=1 space=Xk\n1 0\n2 0\n3 0\n");
    auto hit = run("verify --file " + constant.string() + " --kind sum --m 2");
    CHECK(hit.exit_code == 0);
    CHECK(hit.output.find("witness color=0") != std::string::npos);
    CHECK(hit.output.find("cells=1,2") != std::string::npos);

    const auto schur = write_file("cli_schur.txt", "k=1 N=4 r=2 space=Xk\n1 0\n2 1\n3 1\n4 0\n");
    auto miss = run("verify --file " + schur.string() + " --kind sum --m 2");
    CHECK(miss.exit_code == 1);
    CHECK(miss.output == "none\n");

    const auto broken = write_file("cli_broken.txt", "k=1 N=3 r=2 space=Xk\n1 0\n2 1\n");
    auto parse_fail = run("verify --file " + broken.string() + " --kind sum --m 2");
    CHECK(parse_fail.exit_code == 2);
    CHECK(parse_fail.output.find("uncolored cell") != std::string::npos);

    auto json = run("verify --file " + constant.string() + " --kind sum --m 2 --json");
    CHECK(json.exit_code == 0);
    CHECK(json.output.find("\"sum_generators\"") != std::string::npos);
}

TEST_CASE("cli: encode") {
    auto out = run("encode --k 1 --n 5 --r 2 --m 2 --kind sum");
    CHECK(out.exit_code == 0);
    CHECK(out.output.find("p cnf 10 22\n") != std::string::npos);
    CHECK(out.output.find("c k=1 N=5 r=2 space=Xk") != std::string::npos);

    const fs::path cnf = fs::temp_directory_path() / "cli_out.cnf";
    auto to_file = run("encode --k 1 --n 5 --r 2 --m 2 --kind sum --out " + cnf.string());
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output.find("p cnf 10 22\n") == 0);
    CHECK(to_file.output.find("avoidance=12") != std::string::npos);
    CHECK(fs::exists(cnf));
    fs::remove(cnf);
}

TEST_CASE("cli: search") {
    auto table = run("search --k 1 --r 2 --m 2 --kind sum --engine both --nmax 8 --solver \"" +
                     kSolver + "\"");
    CHECK(table.exit_code == 0);
    CHECK(table.output.find("threshold\t5\t4\ttrue") != std::string::npos);

    auto lying = run("search --k 1 --r 2 --m 2 --kind sum --engine both --nmax 8 "
                     "--solver \"echo s UNSATISFIABLE #\"");
    CHECK(lying.exit_code == 3);
    CHECK(lying.output.find("discrepancy") != std::string::npos);

    auto csv = run("search --k 1 --r 1,2 --m 2 --kind sum --nmax 6 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.output.find("1,1,2,0,sum,0,1,oracle,,threshold,2,1,,0") != std::string::npos);
    CHECK(csv.output.find("1,2,2,0,sum,0,1,oracle,,unresolved,,6,,0") != std::string::npos);
}

TEST_CASE("cli: hunt") {
    auto ladder = run("hunt --k 1 --r 1 --m 2 --kind sum-product --nmax 6");
    CHECK(ladder.exit_code == 0);
    CHECK(ladder.output.find("N=3 avoiding") != std::string::npos);
    CHECK(ladder.output.find("N=4 unavoidable") != std::string::npos);
    CHECK(ladder.output.find("largest avoidable N: 3") != std::string::npos);

    auto wrong_kind = run("hunt --k 1 --r 2 --m 2 --kind sum --nmax 4");
    CHECK(wrong_kind.exit_code == 2);
}

TEST_CASE("cli: check-algebra") {
    auto sweep = run("check-algebra --k 2 --max 2 --j 1");
    CHECK(sweep.exit_code == 1);   // counterexamples exist
    CHECK(sweep.output.find("counterexample nbar=(1,2) x=(1,0) z=(1,1) j=1 lhs=(1,1) rhs=(1,2)") !=
          std::string::npos);

    auto clean = run("check-algebra --k 1 --max 3");
    CHECK(clean.exit_code == 0);
    CHECK(clean.output.find("failed=0") != std::string::npos);

    auto bad = run("check-algebra --k 2 --max 2 --j 5");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli: usage errors") {
    CHECK(run("").exit_code == 2);
    CHECK(run("generate --k 1").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}
