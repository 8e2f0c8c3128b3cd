#include "supersel/model_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace supersel {

using nlohmann::json;

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round12(double v) {
    return std::strtod(fmt12(v).c_str(), nullptr);
}

const CMatrix& ResolvedModel::operator_ref(const std::string& name) const {
    const auto it = operators.find(name);
    if (it == operators.end())
        throw UnresolvedReferenceError("model: unknown operator '" + name + "'");
    return it->second;
}

const CVector& ResolvedModel::state_ref(const std::string& name) const {
    const auto it = states.find(name);
    if (it == states.end())
        throw UnresolvedReferenceError("model: unknown state '" + name + "'");
    return it->second;
}

const GroupAction& ResolvedModel::action_ref(const std::string& name) const {
    const auto it = actions.find(name);
    if (it == actions.end())
        throw UnresolvedReferenceError("model: unknown action '" + name + "'");
    return it->second;
}

namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& where,
                             const std::string& what) {
    throw ParseError(origin + ": " + where + ": " + what);
}

cx parse_entry(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        parse_fail(origin, where, "complex entry must be a [re, im] pair");
    return cx{j[0].get<double>(), j[1].get<double>()};
}

CMatrix parse_matrix(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array() || j.empty()) parse_fail(origin, where, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) parse_fail(origin, where, "rows must be nonempty arrays");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw DimMismatchError(origin + ": " + where + ": ragged row " + std::to_string(i));
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = parse_entry(j[i][k], origin,
                                  where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

CVector parse_vector(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_array() || j.empty()) parse_fail(origin, where, "expected a nonempty array");
    CVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = parse_entry(j[i], origin, where + "[" + std::to_string(i) + "]");
    return v;
}

json matrix_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const CVector& v) {
    json out = json::array();
    for (const cx& z : v) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

Side parse_side(const std::string& s, const std::string& origin, const std::string& where) {
    if (s == "object") return Side::Object;
    if (s == "apparatus") return Side::Apparatus;
    if (s == "composite") return Side::Composite;
    parse_fail(origin, where, "side must be object|apparatus|composite");
}

std::string side_name(Side s) {
    switch (s) {
        case Side::Object: return "object";
        case Side::Apparatus: return "apparatus";
        case Side::Composite: return "composite";
    }
    return "object";
}

}  // namespace

ResolvedModel parse_model(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    if (!doc.is_object()) parse_fail(origin, "$", "top level must be an object");

    ResolvedModel model;
    try {
        model.schema_version = doc.at("schema_version").get<int>();
        if (model.schema_version != kModelSchemaVersion)
            parse_fail(origin, "schema_version",
                       "unsupported version " + std::to_string(model.schema_version));

        const json& sp = doc.at("space");
        model.space.object_dim = sp.at("object_dim").get<std::size_t>();
        model.space.apparatus_dim = sp.at("apparatus_dim").get<std::size_t>();
        if (model.space.object_dim == 0 || model.space.apparatus_dim == 0)
            throw BadDimensionError(origin + ": space: dimensions must be positive");

        const json op_specs = doc.value("operators", json::object());
        for (const auto& [name, spec] : op_specs.items()) {
            const std::string where = "operators." + name;
            const CMatrix m = parse_matrix(spec.at("entries"), origin, where);
            require_square(m, where.c_str());
            OperatorFlags fl;
            fl.hermitian = spec.value("hermitian", false);
            fl.unitary = spec.value("unitary", false);
            if (fl.hermitian && !m.is_hermitian())
                throw FlagViolationError(origin + ": " + where +
                                         ": declared hermitian but fails the check");
            if (fl.unitary && !m.is_unitary())
                throw FlagViolationError(origin + ": " + where +
                                         ": declared unitary but fails the check");
            model.operators.emplace(name, m);
            model.flags.emplace(name, fl);
        }

        const json state_specs = doc.value("states", json::object());
        for (const auto& [name, spec] : state_specs.items())
            model.states.emplace(name, parse_vector(spec, origin, "states." + name));

        const json action_specs = doc.value("actions", json::object());
        for (const auto& [name, spec] : action_specs.items()) {
            const std::string where = "actions." + name;
            const std::string kind = spec.at("kind").get<std::string>();
            const Side side = parse_side(spec.at("side").get<std::string>(), origin, where);
            if (kind == "one_parameter") {
                const std::string gen_name = spec.at("generator").get<std::string>();
                const auto op = model.operators.find(gen_name);
                if (op == model.operators.end())
                    throw UnresolvedReferenceError(origin + ": " + where + ": unknown generator '" +
                                                   gen_name + "'");
                std::vector<double> samples = GroupAction::default_samples();
                if (spec.contains("parameter_samples"))
                    samples = spec.at("parameter_samples").get<std::vector<double>>();
                model.actions.emplace(name,
                                      GroupAction::one_parameter(side, op->second, samples));
                model.action_generator_names.emplace(name, gen_name);
            } else if (kind == "finite") {
                std::vector<std::string> names =
                    spec.at("unitaries").get<std::vector<std::string>>();
                std::vector<CMatrix> elements;
                for (const std::string& un : names) {
                    const auto op = model.operators.find(un);
                    if (op == model.operators.end())
                        throw UnresolvedReferenceError(origin + ": " + where +
                                                       ": unknown unitary '" + un + "'");
                    elements.push_back(op->second);
                }
                model.actions.emplace(name, GroupAction::finite(side, std::move(elements)));
                model.action_unitary_names.emplace(name, std::move(names));
            } else {
                parse_fail(origin, where, "kind must be one_parameter|finite");
            }
        }

        if (doc.contains("scheme")) {
            const json& sc = doc.at("scheme");
            const json& dyn = sc.at("dynamics");
            Dynamics dynamics = UnitaryDynamics{CMatrix::identity(model.space.total_dim())};
            if (dyn.contains("hamiltonian")) {
                model.scheme_hamiltonian = dyn.at("hamiltonian").get<std::string>();
                model.scheme_time = dyn.at("time").get<double>();
                dynamics = HamiltonianDynamics{model.operator_ref(model.scheme_hamiltonian),
                                               model.scheme_time};
            } else if (dyn.contains("unitary")) {
                model.scheme_unitary = dyn.at("unitary").get<std::string>();
                dynamics = UnitaryDynamics{model.operator_ref(model.scheme_unitary)};
            } else {
                parse_fail(origin, "scheme.dynamics", "need hamiltonian+time or unitary");
            }
            model.scheme_observable = sc.at("object_observable").get<std::string>();
            model.scheme_meter = sc.at("meter").get<std::string>();
            model.scheme_state = sc.at("apparatus_state").get<std::string>();
            model.scheme_label = sc.value("label", "");
            model.scheme = make_scheme(model.space, std::move(dynamics),
                                       model.operator_ref(model.scheme_observable),
                                       model.operator_ref(model.scheme_meter),
                                       model.state_ref(model.scheme_state), model.scheme_label);
        }

        if (doc.contains("analysis")) {
            const json& an = doc.at("analysis");
            AnalysisSpec& spec = model.analysis;
            spec.audits = an.value("audits", std::vector<std::string>{});
            spec.action_obj = an.value("action_obj", "");
            spec.action_app = an.value("action_app", "");
            spec.tolerance = an.value("tolerance", 1e-9);
            spec.conclusion_tolerance = an.value("conclusion_tolerance", 1e-7);
            spec.object_states = an.value("object_states", std::vector<std::string>{});
            spec.random_states = an.value("random_states", std::size_t{8});
            spec.seed = an.value("seed", std::uint64_t{1});
            spec.charge_j1 = an.value("charge_j1", "");
            spec.charge_j2 = an.value("charge_j2", "");
            spec.bound_state = an.value("bound_state", "");
            if (!spec.action_obj.empty()) model.action_ref(spec.action_obj);
            if (!spec.action_app.empty()) model.action_ref(spec.action_app);
            if (!spec.charge_j1.empty()) model.operator_ref(spec.charge_j1);
            if (!spec.charge_j2.empty()) model.operator_ref(spec.charge_j2);
            if (!spec.bound_state.empty()) model.state_ref(spec.bound_state);
            for (const std::string& s : spec.object_states) model.state_ref(s);
        }
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return model;
}

ResolvedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_model(buffer.str(), path);
}

std::string save_model(const ResolvedModel& model) {
    json doc;
    doc["schema_version"] = model.schema_version;
    doc["space"] = {{"object_dim", model.space.object_dim},
                    {"apparatus_dim", model.space.apparatus_dim}};

    json ops = json::object();
    for (const auto& [name, m] : model.operators) {
        json spec;
        const auto fl = model.flags.find(name);
        if (fl != model.flags.end()) {
            if (fl->second.hermitian) spec["hermitian"] = true;
            if (fl->second.unitary) spec["unitary"] = true;
        }
        spec["entries"] = matrix_json(m);
        ops[name] = std::move(spec);
    }
    if (!ops.empty()) doc["operators"] = std::move(ops);

    json sts = json::object();
    for (const auto& [name, v] : model.states) sts[name] = vector_json(v);
    if (!sts.empty()) doc["states"] = std::move(sts);

    json acts = json::object();
    for (const auto& [name, action] : model.actions) {
        json spec;
        spec["side"] = side_name(action.side());
        if (action.kind() == GroupAction::Kind::OneParameter) {
            spec["kind"] = "one_parameter";
            spec["generator"] = model.action_generator_names.at(name);
            spec["parameter_samples"] = action.parameter_samples();
        } else {
            spec["kind"] = "finite";
            spec["unitaries"] = model.action_unitary_names.at(name);
        }
        acts[name] = std::move(spec);
    }
    if (!acts.empty()) doc["actions"] = std::move(acts);

    if (model.scheme.has_value()) {
        json sc;
        if (!model.scheme_hamiltonian.empty())
            sc["dynamics"] = {{"hamiltonian", model.scheme_hamiltonian},
                              {"time", model.scheme_time}};
        else
            sc["dynamics"] = {{"unitary", model.scheme_unitary}};
        sc["object_observable"] = model.scheme_observable;
        sc["meter"] = model.scheme_meter;
        sc["apparatus_state"] = model.scheme_state;
        if (!model.scheme_label.empty()) sc["label"] = model.scheme_label;
        doc["scheme"] = std::move(sc);
    }

    const AnalysisSpec& an = model.analysis;
    if (!an.audits.empty() || !an.action_obj.empty() || !an.charge_j1.empty()) {
        json spec;
        if (!an.audits.empty()) spec["audits"] = an.audits;
        if (!an.action_obj.empty()) spec["action_obj"] = an.action_obj;
        if (!an.action_app.empty()) spec["action_app"] = an.action_app;
        spec["tolerance"] = an.tolerance;
        spec["conclusion_tolerance"] = an.conclusion_tolerance;
        if (!an.object_states.empty()) spec["object_states"] = an.object_states;
        spec["random_states"] = an.random_states;
        spec["seed"] = an.seed;
        if (!an.charge_j1.empty()) spec["charge_j1"] = an.charge_j1;
        if (!an.charge_j2.empty()) spec["charge_j2"] = an.charge_j2;
        if (!an.bound_state.empty()) spec["bound_state"] = an.bound_state;
        doc["analysis"] = std::move(spec);
    }

    return doc.dump(2) + "\n";
}

void save_model_file(const ResolvedModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << save_model(model);
}

}  // namespace supersel
