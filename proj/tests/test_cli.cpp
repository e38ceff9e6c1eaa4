// End-to-end checks of the qbell CLI: golden-file output, usage-error exit
// codes, and a dump/reload cycle through the library loader.
//
// Usage: qbell_cli_tests <path-to-qbell> <golden-dir>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qbell/thermal_density.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
int g_failures = 0;

void check(bool ok, const std::string& what) {
    std::printf("%s: %s\n", ok ? "ok" : "FAILED", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " 2>/dev/null";
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: qbell_cli_tests <path-to-qbell> <golden-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    const fs::path golden_dir = argv[2];
    const fs::path tmp = fs::temp_directory_path() / ("qbell_cli_" + std::to_string(::getpid()));
    fs::remove_all(tmp);
    fs::create_directories(tmp);

    // golden gram output: pins the CSV writer contract (metadata lines,
    // column order, shortest-round-trip floats) against accidental drift
    {
        const fs::path out = tmp / "gram.csv";
        check(run("gram --beta 0.5 --beta 2 --out " + out.string()) == 0, "gram exits 0");
        check(slurp(out) == slurp(golden_dir / "gram_beta_0.5_2.csv"),
              "gram output matches the golden file");
    }

    // usage errors exit nonzero
    check(run("pnd --label phi9 --beta 1 --theta 0") != 0, "invalid label rejected");
    check(run("error --pair phi99 --beta 1 --theta 0.1") != 0, "invalid pair rejected");
    check(run("pnd --preset nosuch") != 0, "unknown preset rejected");
    check(run("gram --beta 1 --beta-grid 0.5:2:4") != 0, "conflicting beta specs rejected");
    check(run("gram") != 0, "missing beta rejected");
    check(run("entanglement --beta 1") != 0, "missing theta rejected");
    check(run("pnd --beta 1 --theta 0 --theta 0.5") != 0, "pnd with two thetas rejected");
    check(run("nosuchcommand") != 0, "unknown subcommand rejected");

    // domain errors exit nonzero with the failure on stderr
    check(run("pnd --label phi2 --beta 2 --theta 0.5 --trunc-n2 6") != 0,
          "undersized truncation rejected");
    check(run("pnd --label phi2 --beta 0 --theta 0") != 0,
          "degenerate phi2 at beta 0 rejected");

    // a dumped state loads back and passes the structural battery
    {
        const fs::path out = tmp / "state.json";
        check(run("state-dump --label phi4 --beta 1 --theta 0.4 --out " + out.string()) == 0,
              "state-dump exits 0");
        try {
            const qbell::DensityMatrix rho = qbell::load_density_matrix_json(out.string());
            qbell::validate_density_matrix(rho);
            check(true, "dumped state reloads and validates");
        } catch (const std::exception& e) {
            check(false, std::string("dumped state reloads and validates: ") + e.what());
        }
    }

    fs::remove_all(tmp);
    return g_failures == 0 ? 0 : 1;
}
