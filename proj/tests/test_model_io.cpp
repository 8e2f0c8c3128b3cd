#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "support/models.hpp"
#include "supersel/model_io.hpp"

using namespace supersel;

namespace {

std::filesystem::path scratch_path(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "supersel_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("canonical round trip is byte-identical") {
    const ResolvedModel model = testing::cnot_model();
    const auto path = scratch_path("cnot_roundtrip.json");
    save_model_file(model, path.string());

    const std::string canonical = read_text(path);
    const ResolvedModel loaded = load_model(path.string());
    CHECK(save_model(loaded) == canonical);

    CHECK(loaded.space.object_dim == 2);
    CHECK(loaded.scheme.has_value());
    CHECK(fnorm_diff(loaded.operator_ref("U"), model.operator_ref("U")) == 0.0);
    CHECK(loaded.analysis.object_states.size() == 3);
}

TEST_CASE("declared flags are re-verified on load") {
    // A Hamiltonian declared Hermitian whose entries are not.
    const std::string text = R"({
      "schema_version": 1,
      "space": {"object_dim": 1, "apparatus_dim": 2},
      "operators": {
        "hamiltonian": {"hermitian": true,
                        "entries": [[[0,0],[1,0]],[[0,0],[0,0]]]}
      }
    })";
    CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("operators.hamiltonian"),
                         FlagViolationError);
}

TEST_CASE("unresolved references name the missing key") {
    const std::string text = R"({
      "schema_version": 1,
      "space": {"object_dim": 2, "apparatus_dim": 2},
      "operators": {
        "U": {"entries": [[[1,0],[0,0],[0,0],[0,0]],[[0,0],[1,0],[0,0],[0,0]],
                           [[0,0],[0,0],[1,0],[0,0]],[[0,0],[0,0],[0,0],[1,0]]]}
      },
      "states": {"xi": [[1,0],[0,0]]},
      "scheme": {"dynamics": {"unitary": "U"}, "object_observable": "missing",
                 "meter": "U", "apparatus_state": "xi"}
    })";
    CHECK_THROWS_WITH_AS(parse_model(text), doctest::Contains("missing"),
                         UnresolvedReferenceError);
}

TEST_CASE("malformed documents raise ParseError") {
    CHECK_THROWS_AS(parse_model("not json at all"), ParseError);
    CHECK_THROWS_AS(parse_model(R"({"schema_version": 99, "space": {"object_dim": 1,
                     "apparatus_dim": 1}})"),
                    ParseError);
    CHECK_THROWS_AS(load_model("/nonexistent/path.json"), ParseError);
}

TEST_CASE("ragged matrix rows raise DimMismatch") {
    const std::string text = R"({
      "schema_version": 1,
      "space": {"object_dim": 2, "apparatus_dim": 1},
      "operators": {"A": {"entries": [[[1,0],[0,0]],[[0,0]]]}}
    })";
    CHECK_THROWS_AS(parse_model(text), DimMismatchError);
}

TEST_CASE("fmt12 prints 12 significant digits and round12 matches") {
    CHECK(fmt12(1.0) == "1");
    CHECK(fmt12(0.1234567890123456) == "0.123456789012");
    CHECK(round12(0.1234567890123456) == doctest::Approx(0.123456789012).epsilon(1e-15));
}

TEST_CASE("shipped model files parse and resolve") {
    const std::string base = SUPERSEL_SOURCE_DIR "/models/";
    for (const std::string name : {"cnot.json", "way_bound.json", "search_qubit.json"}) {
        const ResolvedModel model = load_model(base + name);
        CHECK(model.schema_version == kModelSchemaVersion);
        CHECK(model.scheme.has_value());
        // Shipped files are canonical.
        CHECK(save_model(model) == read_text(base + name));
    }
}
