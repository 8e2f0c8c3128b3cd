#include "doctest.h"

#include <chrono>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "support/models.hpp"
#include "supersel/cli.hpp"
#include "supersel/model_io.hpp"

using namespace supersel;
using nlohmann::json;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_model(const ResolvedModel& model, const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "supersel_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    save_model_file(model, path.string());
    return path.string();
}

}  // namespace

TEST_CASE("demo vn emits a clean machine report") {
    const CliRun result = run({"demo", "vn", "--dim", "2", "--json"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("schema_version") == 1);
    CHECK(report.at("pass") == true);
    CHECK(report.at("parameters").at("seed") == 12345);

    bool saw_covariance = false, saw_correlation = false;
    for (const auto& entry : report.at("results")) {
        if (entry.at("check") == "pointer_covariance") {
            saw_covariance = true;
            CHECK(entry.at("residual").get<double>() == 0.0);
        }
        if (entry.at("check") == "pointer_correlation") {
            saw_correlation = true;
            CHECK(entry.at("pass") == true);
        }
    }
    CHECK(saw_covariance);
    CHECK(saw_correlation);
}

TEST_CASE("identical argv and seed give byte-identical reports") {
    const std::vector<std::string> argv{"demo", "way", "--spin", "3", "--states", "25", "--json"};
    const CliRun first = run(argv);
    const CliRun second = run(argv);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("demo charge reports the sector layout") {
    const CliRun result = run({"demo", "charge", "--modes", "2", "--cutoff", "1", "--json"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out);
    bool saw_dims = false;
    for (const auto& entry : report.at("results")) {
        if (entry.at("check") == "sector_dims") {
            saw_dims = true;
            CHECK(entry.at("value") == json::array({1, 2, 1}));
        }
    }
    CHECK(saw_dims);
}

TEST_CASE("demo breaking fails the correlation check at zero field") {
    const CliRun result = run({"demo", "breaking", "--field", "0", "--time", "1"});
    CHECK(result.code == 1);
    CHECK(result.out.find("FAIL") != std::string::npos);
}

TEST_CASE("demo subcommands finish inside the budget") {
    using clock = std::chrono::steady_clock;
    const std::vector<std::vector<std::string>> demos{
        {"demo", "vn", "--dim", "4"},
        {"demo", "charge", "--modes", "2", "--cutoff", "2"},
        {"demo", "way", "--spin", "3"},
        {"demo", "breaking"},
    };
    for (const auto& argv : demos) {
        const auto t0 = clock::now();
        const CliRun result = run(argv);
        const double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
        CHECK(result.code == 0);
        CHECK(elapsed < 10.0);
    }
}

TEST_CASE("bad demo dimensions exit with code 2") {
    const CliRun result = run({"demo", "vn", "--dim", "1"});
    CHECK(result.code == 2);
    CHECK(result.err.find("error") != std::string::npos);
}

TEST_CASE("unknown flags exit with usage code 2") {
    const CliRun result = run({"demo", "vn", "--no-such-flag"});
    CHECK(result.code == 2);
    CHECK_FALSE(result.err.empty());
}

TEST_CASE("missing subcommand exits with usage code 2") {
    const CliRun result = run({});
    CHECK(result.code == 2);
}

TEST_CASE("audit subcommand runs the shipped position-copy model clean") {
    const std::string path = write_model(testing::cnot_model(), "cli_cnot.json");
    const CliRun result = run({"audit", path, "--json"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("pass") == true);
    CHECK(report.at("parameters").at("states_tested") == 7);  // 3 named + 4 random
}

TEST_CASE("audit reports failure when the observable breaks the rule") {
    ResolvedModel model = testing::cnot_model();
    // Swap the measured observable for sigma_x, which the phase charge forbids.
    model.operators.at("A") = pauli_x();
    model.scheme = make_scheme(model.space, UnitaryDynamics{model.operator_ref("U")}, pauli_x(),
                               model.operator_ref("M"), model.state_ref("xi"), "broken");
    const std::string path = write_model(model, "cli_cnot_broken.json");
    const CliRun result = run({"audit", path, "--json"});
    CHECK(result.code == 1);
    const json report = json::parse(result.out);
    CHECK(report.at("pass") == false);
}

TEST_CASE("bound subcommand evaluates the shipped spin exchange model") {
    const std::string path = write_model(testing::way_bound_model(), "cli_way.json");
    const CliRun result = run({"bound", path, "--json"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out);
    CHECK(report.at("pass") == true);
}

TEST_CASE("sectors subcommand lists the charge blocks") {
    ResolvedModel model = testing::search_qubit_model();
    const FockModel fock = build_fock_model(2, 1);
    model.operators.emplace("N", fock.number_op);
    model.flags.emplace("N", OperatorFlags{true, false});
    const std::string path = write_model(model, "cli_sectors.json");
    const CliRun result = run({"sectors", path, "--charge", "N", "--json"});
    REQUIRE(result.code == 0);
    const json report = json::parse(result.out);
    bool saw = false;
    for (const auto& entry : report.at("results")) {
        if (entry.at("check") == "sectors") {
            saw = true;
            REQUIRE(entry.at("value").size() == 3);
            CHECK(entry.at("value")[1].at("dim") == 2);
        }
    }
    CHECK(saw);
}

TEST_CASE("search subcommand honors the floor and stays deterministic") {
    const std::string path = write_model(testing::search_qubit_model(), "cli_search.json");
    const std::vector<std::string> argv{"search", path,          "--seed",     "11",
                                        "--budget", "300",       "--restarts", "3",
                                        "--json"};
    const CliRun first = run(argv);
    REQUIRE(first.code == 0);
    const CliRun second = run(argv);
    CHECK(first.out == second.out);

    const json report = json::parse(first.out);
    double best = -1.0, floor_value = -1.0;
    for (const auto& entry : report.at("results")) {
        if (entry.at("check") == "best_error_sq") best = entry.at("value").get<double>();
        if (entry.at("check") == "floor") floor_value = entry.at("value").get<double>();
    }
    CHECK(floor_value == 1.0);
    CHECK(best >= floor_value - 1e-6);
}
