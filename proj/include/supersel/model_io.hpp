#ifndef SUPERSEL_MODEL_IO_HPP
#define SUPERSEL_MODEL_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "supersel/algebra.hpp"
#include "supersel/cmatrix.hpp"
#include "supersel/schemes.hpp"

namespace supersel {

inline constexpr int kModelSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

// Declared verification flags attached to a named operator in a model file.
struct OperatorFlags {
    bool hermitian = false;
    bool unitary = false;
};

struct AnalysisSpec {
    std::vector<std::string> audits;  // subset of {"main_theorem", "bound", "sectors"}
    std::string action_obj;
    std::string action_app;
    double tolerance = 1e-9;
    double conclusion_tolerance = 1e-7;
    std::vector<std::string> object_states;  // names in `states`
    std::size_t random_states = 8;
    std::uint64_t seed = 1;
    std::string charge_j1;
    std::string charge_j2;
    std::string bound_state;  // object state used by the bound audit
};

// A model file resolved against itself: every name checked, every matrix
// well-formed, every declared flag re-verified.
struct ResolvedModel {
    int schema_version = kModelSchemaVersion;
    CompositeSpace space;
    std::map<std::string, CMatrix> operators;
    std::map<std::string, OperatorFlags> flags;
    std::map<std::string, CVector> states;
    std::map<std::string, GroupAction> actions;
    std::map<std::string, std::string> action_generator_names;   // one-parameter actions
    std::map<std::string, std::vector<std::string>> action_unitary_names;  // finite actions
    std::optional<MeasurementScheme> scheme;
    // Names backing the scheme, kept for canonical re-emission.
    std::string scheme_hamiltonian;
    double scheme_time = 0.0;
    std::string scheme_unitary;
    std::string scheme_observable;
    std::string scheme_meter;
    std::string scheme_state;
    std::string scheme_label;
    AnalysisSpec analysis;

    const CMatrix& operator_ref(const std::string& name) const;
    const CVector& state_ref(const std::string& name) const;
    const GroupAction& action_ref(const std::string& name) const;
};

ResolvedModel load_model(const std::string& path);
ResolvedModel parse_model(const std::string& text, const std::string& origin = "<string>");

// Canonical serialization: stable key order, two-space indentation, trailing
// newline. save_model(load_model(p)) reproduces canonical files byte for byte.
std::string save_model(const ResolvedModel& model);
void save_model_file(const ResolvedModel& model, const std::string& path);

// Formats v with 12 significant digits.
std::string fmt12(double v);
// v rounded through the 12-significant-digit decimal representation, so
// machine reports carry exactly what the human tables print.
double round12(double v);

}  // namespace supersel

#endif
