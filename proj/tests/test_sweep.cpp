#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "algocool/errors.hpp"
#include "algocool/protocols.hpp"
#include "algocool/sweep.hpp"

using namespace algocool;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
    fs::path p = fs::temp_directory_path() /
                 (std::string("algocool_") + tag + "_" +
                  std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(ALGOCOOL_CLI_PATH) + " " + args +
                            " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("shortest round-trip number formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(24.0) == "24");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.0 / 0.0) == "inf");
    const double third = 1.0 / 3.0;
    CHECK(std::stod(format_double(third)) == third);
}

TEST_CASE("metric and protocol parsing") {
    CHECK(parse_metric("population") == Metric::Population);
    CHECK(parse_metric("cop") == Metric::Cop);
    CHECK(parse_metric("landauer") == Metric::Landauer);
    CHECK(parse_metric("lr_comp") == Metric::LrComp);
    CHECK_THROWS_AS(parse_metric("speed"), DomainError);

    CHECK(parse_protocol("ppa") == Protocol::PPA);
    CHECK(parse_protocol("improved-xhbac") == Protocol::ImprovedXHBAC);
    CHECK_THROWS_AS(parse_protocol("ppa3"), DomainError);
}

TEST_CASE("trace serialization") {
    const ProtocolPlan plan = ProtocolPlan::ppa(3, 1.0);
    const std::string a = trace_csv(run(plan, 4), false);
    const std::string b = trace_csv(run(plan, 4), false);
    CHECK(a == b); // byte-identical across runs

    std::istringstream lines(a);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "round,p_t,beta_final_omega,work,dE_t,dE_m,dE_b,S_t,W_cum,K,R_L");
    std::string baseline;
    std::getline(lines, baseline);
    CHECK(baseline.substr(0, 2) == "0,");
    CHECK(baseline.substr(baseline.size() - 2) == ",,"); // K, R_L empty
    int rows = 0;
    for (std::string row; std::getline(lines, row);) ++rows;
    CHECK(rows == 4);
    CHECK(a.find("nan") == std::string::npos);

    // the per-compression column appears only when requested
    const std::string c = trace_csv(run(plan, 2, std::nullopt, true), true);
    CHECK(c.find(",r_L_comp\n") != std::string::npos);
}

TEST_CASE("full cooling never prints nan cells") {
    const std::string csv = trace_csv(run(ProtocolPlan::xhbac1(1.5), 80),
                                      false);
    CHECK(csv.find("nan") == std::string::npos);
    // the float ground population saturates one ulp below one, so the
    // final inverse temperature stays large but finite
    CHECK(csv.find(",36.7368005696771,") != std::string::npos);

    // a pure start renders an unbounded inverse temperature as inf
    Eigen::VectorXd ground(2);
    ground << 1.0, 0.0;
    const std::string p = trace_csv(
        run(ProtocolPlan::xhbac1(1.0), 2, DiagonalState(ground, {2})),
        false);
    CHECK(p.find("inf") != std::string::npos);
    CHECK(p.find("nan") == std::string::npos);
}

TEST_CASE("sweep file naming") {
    const fs::path dir = fresh_dir("sweep");
    SweepSpec spec;
    spec.protocol = Protocol::PPA;
    spec.qubits = 3;
    spec.rounds = 3;
    spec.out_path = (dir / "run.csv").string();

    spec.beta_omegas = {1.0};
    const auto single = run_sweep(spec);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == (dir / "run.csv").string());
    CHECK(fs::exists(single[0]));

    spec.beta_omegas = {0.5, 1.0, 2.0};
    const auto multi = run_sweep(spec);
    REQUIRE(multi.size() == 3);
    CHECK(multi[0] == (dir / "run_bw0.5.csv").string());
    CHECK(multi[1] == (dir / "run_bw1.csv").string());
    CHECK(multi[2] == (dir / "run_bw2.csv").string());
    for (const auto& p : multi) CHECK(fs::exists(p));

    spec.rounds = 0;
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
    spec.rounds = 3;
    spec.beta_omegas.clear();
    CHECK_THROWS_AS(run_sweep(spec), DomainError);
    fs::remove_all(dir);
}

TEST_CASE("figure catalogue") {
    CHECK_THROWS_AS(write_figure("fig3", "."), DomainError);

    const fs::path dir = fresh_dir("figs");
    const auto files = write_figure("fig9", dir.string());
    REQUIRE(files.size() == 6);
    for (const auto& f : files) CHECK(fs::exists(f));
    const std::string head = slurp(files[0]);
    CHECK(head.rfind("beta_final_omega,K\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("pinned figure datasets stay frozen") {
    const fs::path golden(ALGOCOOL_GOLDEN_DIR);
    REQUIRE(fs::exists(golden));
    const fs::path dir = fresh_dir("golden");
    write_figure("fig2", dir.string());
    write_figure("fig7", dir.string());

    int compared = 0;
    for (const auto& entry : fs::directory_iterator(golden)) {
        const fs::path name = entry.path().filename();
        CAPTURE(name.string());
        REQUIRE(fs::exists(dir / name));
        CHECK(slurp(dir / name) == slurp(entry.path()));
        ++compared;
    }
    CHECK(compared >= 15); // every fig2 and fig7 series is pinned
    fs::remove_all(dir);
}

TEST_CASE("asymptotic report") {
    const CoolingLimitReport r =
        cooling_limit_report(Protocol::PPA, 4, 6.0);
    CHECK(r.alpha == 4.0);
    CHECK(r.beta_inf_omega == doctest::Approx(24.0).epsilon(1e-4));
    CHECK(r.delta < 1e-8);
    const std::string line = format_cooling_limit(r);
    CHECK(line.find("protocol=ppa n=4") == 0);
    CHECK(line.find("alpha=4") != std::string::npos);
    CHECK(line.find("beta_inf_omega=") != std::string::npos);
    CHECK(line.find("delta=") != std::string::npos);

    CHECK_THROWS_AS(cooling_limit_report(Protocol::SingleShot, 3, 1.0),
                    DomainError);
    CHECK_THROWS_AS(cooling_limit_report(Protocol::ImprovedXHBAC, 1, 1.0),
                    DomainError);
}

TEST_CASE("command line exit codes") {
    const fs::path dir = fresh_dir("cli");
    const std::string out = (dir / "t.csv").string();

    CHECK(run_cli("simulate --protocol ppa --qubits 3 --rounds 2 --out " +
                  out) == 0);
    CHECK(fs::exists(out));

    CHECK(run_cli("simulate --protocol noe2 --rounds 0 --out " + out) == 2);
    CHECK(run_cli("simulate --protocol warp --rounds 2 --out " + out) == 2);
    CHECK(run_cli("simulate --protocol ppa --rounds 2") == 2); // missing --out
    CHECK(run_cli("cooling-limit --protocol single-shot --qubits 3") == 2);
    CHECK(run_cli("cooling-limit --protocol ppa --qubits 3 --max-rounds 2 "
                  "--tol 1e-15") == 3);
    CHECK(run_cli("figure fig3 --out " + dir.string()) == 2);
    CHECK(run_cli("") == 2); // a subcommand is required

    // deterministic bytes across invocations
    const std::string out2 = (dir / "t2.csv").string();
    CHECK(run_cli("simulate --protocol sr2 --rounds 7 --beta-omega 0.5 "
                  "--out " + out) == 0);
    CHECK(run_cli("simulate --protocol sr2 --rounds 7 --beta-omega 0.5 "
                  "--out " + out2) == 0);
    CHECK(slurp(out) == slurp(out2));
    fs::remove_all(dir);
}
