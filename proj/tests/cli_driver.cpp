// Exercises the command-line binary end to end: fixture files are written
// to a scratch directory, subcommands are spawned, and exit codes plus
// output fragments are checked.  argv[1] is the path to the binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "eigenbc/io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;
using namespace eigenbc;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what)
{
    std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
    if (!ok)
        ++failures;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Run {
    int exit_code;
    std::string out;
    std::string err;
};

Run run(const std::string& cli, const std::string& args, const fs::path& dir)
{
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd =
        cli + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

bool contains(const std::string& hay, const std::string& needle)
{
    return hay.find(needle) != std::string::npos;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_driver <path-to-binary>\n");
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path dir =
        fs::temp_directory_path() / "eigenbc_cli_driver";
    fs::create_directories(dir);

    const fs::path ou = dir / "ou.json";
    io::save_weight(ou.string(),
                    {fixtures::ou_weight(), std::nullopt, std::nullopt});
    const fs::path rd = dir / "rd.json";
    io::save_weight(rd.string(),
                    {fixtures::rd_weight(), std::nullopt, std::nullopt});
    const fs::path decoupled = dir / "decoupled.json";
    io::save_weight(decoupled.string(),
                    {fixtures::decoupled_weight(), std::nullopt, std::nullopt});
    const fs::path brownian = dir / "brownian.json";
    {
        std::ofstream f(brownian);
        f << R"({"d": 1, "alpha": 1.0,
                 "A": [[[1, 0], [-1, 0]], [[-1, 0], [1, 0]]]})";
    }
    const fs::path order2 = dir / "order2.json";
    {
        std::ofstream f(order2);
        f << R"({"d": 1, "coefficients": [[[[6, 0]]], [[[2, 0]]], [[[1, 0]]]]})";
    }

    {
        const Run r = run(cli, "validate " + ou.string(), dir);
        expect(r.exit_code == 0 && contains(r.out, "\"full-rank\""),
               "validate accepts the scalar fixture");
    }
    {
        const Run r = run(cli, "validate " + rd.string(), dir);
        expect(r.exit_code == 0 && contains(r.out, "\"rank-deficient\""),
               "validate reports the deficient regime");
    }
    {
        const Run r = run(cli, "validate " + brownian.string(), dir);
        expect(r.exit_code == 1 &&
                   contains(r.err, "Hermitian positive definite"),
               "validate rejects a singular coupling with exit 1");
    }
    {
        const Run r = run(cli, "spectrum " + decoupled.string(), dir);
        expect(r.exit_code == 2 && contains(r.err, "assumption violation"),
               "multiple zeros exit with code 2");
    }
    {
        const Run r = run(cli, "spectrum " + rd.string(), dir);
        bool ok = r.exit_code == 0;
        if (ok) {
            const auto j = nlohmann::json::parse(r.out);
            ok = j.at("defect") == 1 &&
                 std::abs(j.at("zeros_inside")[0].at("z")[0].get<double>() +
                          0.5) < 1e-10 &&
                 std::abs(j.at("zeros_outside")[0].at("z")[0].get<double>() +
                          2.0) < 1e-10;
        }
        expect(ok, "spectrum of the deficient fixture");
    }
    {
        const Run r = run(cli, "boundaries " + ou.string(), dir);
        expect(r.exit_code == 0 && contains(r.out, "0.75") &&
                   contains(r.out, "3.141592653589793"),
               "boundaries reports the fixed point and the eigenvalue");
    }
    {
        const Run r = run(cli,
                          "free-energy " + ou.string() +
                              " --method dft --p 64",
                          dir);
        expect(r.exit_code == 0 && contains(r.out, "1.14472"),
               "free energy per edge over a ring");
    }
    {
        const Run r = run(cli, "covariance " + ou.string() + " --p 2", dir);
        bool ok = r.exit_code == 0;
        if (ok) {
            const auto j = nlohmann::json::parse(r.out);
            ok = std::abs(j.at("sigma")[0][0][0].get<double>() - 2.0 / 3.0) <
                 1e-10;
        }
        expect(ok, "covariance blocks");
    }
    {
        const Run r = run(
            cli, "sample " + ou.string() + " --p 2 --n 3 --seed 7", dir);
        const Run again = run(
            cli, "sample " + ou.string() + " --p 2 --n 3 --seed 7", dir);
        expect(r.exit_code == 0 && r.out == again.out,
               "sampling is reproducible for a fixed seed");
    }
    {
        const Run r = run(cli, "sample " + ou.string() + " --p 2 --n 3", dir);
        expect(r.exit_code == 1, "sample without a seed is rejected");
    }
    {
        const fs::path pinned = dir / "ou_pinned.json";
        io::save_weight(pinned.string(),
                        {fixtures::ou_weight(),
                         BoundaryWeight(1.0, fixtures::scalar(1.0)),
                         BoundaryWeight(1.0, fixtures::scalar(1.0))});
        const Run r = run(
            cli, "sample " + pinned.string() + " --p 2 --n 2 --seed 5", dir);
        expect(r.exit_code == 0 && contains(r.out, "\"toeplitz\": false"),
               "boundary overrides reach the sampler");
    }
    {
        const Run r = run(cli,
                          "szego " + ou.string() + " --p 6 --order-n " +
                              order2.string(),
                          dir);
        expect(r.exit_code == 0 && contains(r.out, "\"blocked\""),
               "szego handles the blocked higher-order symbol");
    }
    {
        const fs::path copy = dir / "ou_copy.json";
        const Run r = run(
            cli, "validate " + ou.string() + " --out " + copy.string(), dir);
        const io::WeightFile a = io::load_weight(ou.string());
        const io::WeightFile b = io::load_weight(copy.string());
        expect(r.exit_code == 0 &&
                   a.weight.coupling() == b.weight.coupling() &&
                   a.weight.alpha() == b.weight.alpha(),
               "weight files round-trip bit for bit");
    }
    {
        const Run r =
            run(cli, "validate - < " + ou.string(), dir);
        expect(r.exit_code == 0 && contains(r.out, "\"full-rank\""),
               "weight files are accepted on standard input");
    }
    {
        const Run r = run(cli,
                          "verify " + ou.string() + " " + rd.string() +
                              " --random 2",
                          dir);
        expect(r.exit_code == 0 && contains(r.out, "all checks passed"),
               "verify runs the oracle battery");
    }

    if (failures > 0) {
        std::printf("%d command check(s) failed\n", failures);
        return 1;
    }
    std::printf("all command checks passed\n");
    return 0;
}
