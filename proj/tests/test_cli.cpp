#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(CLI_BINARY) + " " + args + " >/dev/null 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() /
            (name + "." + std::to_string(getpid())))
        .string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(run("verify --m-max 4") == 0);
    CHECK(run("solve --dim 1 --bc dirichlet --order 2 --n 16 --problem xsinpix") == 0);
    // usage errors
    CHECK(run("solve --order 3 --n 16 --problem xsinpix") == 2);
    CHECK(run("solve --n 16 --problem unknown-problem") == 2);
    CHECK(run("solve --dim 7 --n 16 --problem xsinpix") == 2);
    CHECK(run("bogus-subcommand") == 2);
}

TEST_CASE("convergence CSV is byte-stable across runs") {
    const std::string csv1 = temp_path("conv1.csv");
    const std::string csv2 = temp_path("conv2.csv");
    const std::string flags =
        "convergence --dim 1 --bc dirichlet --order 2 --problem xsinpix "
        "--n-list 16,32,64 --out ";
    REQUIRE(run(flags + csv1) == 0);
    REQUIRE(run(flags + csv2) == 0);
    const std::string a = slurp(csv1);
    CHECK(a == slurp(csv2));
    CHECK(a.rfind("n,h,l2,l2_rate,sip,sip_rate,sip_star,sip_star_rate,residual\n", 0) == 0);
    std::remove(csv1.c_str());
    std::remove(csv2.c_str());
}

TEST_CASE("svg plot is written") {
    const std::string csv = temp_path("plot.csv");
    const std::string svg = temp_path("plot.svg");
    REQUIRE(run("convergence --dim 1 --bc periodic --order 2 --problem sin2pix "
                "--n-list 16,32,64 --out " +
                csv + " --plot " + svg) == 0);
    const std::string content = slurp(svg);
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("slope") != std::string::npos);
    std::remove(csv.c_str());
    std::remove(svg.c_str());
}
