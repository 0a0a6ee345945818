#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sbern/suites.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SBERN_CLI");
    return p ? p : "";
}

int run(const std::string& args) {
    const int status = std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: sharp suite runs green and deterministically") {
    if (cli_path().empty()) return;  // driver path is provided by ctest
    fs::remove_all("cli_t1");
    fs::remove_all("cli_t2");
    REQUIRE(run("sharp --d 2 --kappa 0,0,0 --n 1..3 --seed 7 --out cli_t1") == 0);
    REQUIRE(run("sharp --d 2 --kappa 0,0,0 --n 1..3 --seed 7 --out cli_t2") == 0);

    nlohmann::json summary;
    std::ifstream in("cli_t1/summary.json");
    in >> summary;
    CHECK(summary.at("schema_version") == 1);
    CHECK(summary.at("pass") == true);
    for (const auto& check : summary.at("checks"))
        if (check.at("name") == "lambda_rel_err") CHECK(check.at("value").get<double>() <= 1e-8);

    for (const char* name : {"summary.json", "detail_sharp.csv", "detail_equality.csv"}) {
        CAPTURE(name);
        CHECK(slurp(fs::path("cli_t1") / name) == slurp(fs::path("cli_t2") / name));
        CHECK(!slurp(fs::path("cli_t1") / name).empty());
    }
    fs::remove_all("cli_t1");
    fs::remove_all("cli_t2");
}

TEST_CASE("cli: spectral single check") {
    if (cli_path().empty()) return;
    fs::remove_all("cli_t3");
    REQUIRE(run("spectral --d 2 --check cdk2 --n 4 --seed 3 --out cli_t3") == 0);
    CHECK(fs::exists("cli_t3/detail_spectral.csv"));
    fs::remove_all("cli_t3");
}

TEST_CASE("cli: config errors exit with 2") {
    if (cli_path().empty()) return;
    CHECK(run("sharp --d 2 --n 5..2 --out cli_err") == 2);     // empty range
    CHECK(run("sharp --d 2 --n .. --out cli_err") == 2);       // unparsable range
    CHECK(run("sharp --d 2 --kappa 0,0 --n 1..2 --out cli_err") == 2);  // wrong kappa arity
    CHECK(run("bogus-suite") == 2);
    CHECK(run("sharp --not-a-flag 3") == 2);
    fs::remove_all("cli_err");
}

TEST_CASE("cli: render emits tidy tables idempotently") {
    if (cli_path().empty()) return;
    fs::remove_all("cli_render");
    fs::create_directories("cli_render");
    {
        std::ofstream csv("cli_render/detail_kernels.csv", std::ios::binary);
        csv << "estimate,n,pair_id,d_triangle,lhs,envelope,ratio\n";
        csv << "local1,8,0,1.000000000000e-01,2.0e0,4.0e0,5.0e-01\n";
        csv << "intLn,8,0,1.0e-01,1.0e0,2.0e0,5.0e-01\n";
    }
    {
        std::ofstream csv("cli_render/detail_lp.csv", std::ios::binary);
        csv << "n,r,p,factor,weight,f_id,ratio\n";
        csv << "4,1,inf,phi_1,jacobi:0,rand0,9.0e-01\n";
    }
    REQUIRE(run("render --out cli_render") == 0);
    const std::string tk = slurp("cli_render/tidy_kernels.csv");
    CHECK(tk == "n,d_triangle,abs_L,envelope,ratio\n8,1.000000000000e-01,2.0e0,4.0e0,5.0e-01\n");
    const std::string tl = slurp("cli_render/tidy_lp.csv");
    CHECK(tl == "n,p,factor,weight,ratio\n4,inf,phi_1,jacobi:0,9.0e-01\n");
    REQUIRE(run("render --out cli_render") == 0);
    CHECK(slurp("cli_render/tidy_kernels.csv") == tk);
    CHECK(slurp("cli_render/tidy_lp.csv") == tl);

    fs::remove_all("cli_render_missing");
    fs::create_directories("cli_render_missing");
    CHECK(run("render --out cli_render_missing") == 2);
    fs::remove_all("cli_render");
    fs::remove_all("cli_render_missing");
}
