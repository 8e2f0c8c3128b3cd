#include "supersel/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "supersel/correlation.hpp"
#include "supersel/model_io.hpp"
#include "supersel/rng.hpp"
#include "supersel/verdicts.hpp"

namespace supersel {

namespace {

using nlohmann::json;

json num(double v) {
    if (!std::isfinite(v)) return v > 0 ? json("infinite") : json("-infinite");
    return json(round12(v));
}

std::string human_num(double v) {
    if (!std::isfinite(v)) return v > 0 ? "infinite" : "-infinite";
    return fmt12(v);
}

// One report per invocation: a flat list of named checks plus the parameters
// that reproduce it.
class Report {
public:
    explicit Report(std::string command) : command_(std::move(command)) {
        doc_["schema_version"] = kReportSchemaVersion;
        doc_["command"] = command_;
        doc_["parameters"] = json::object();
        doc_["results"] = json::array();
    }

    template <typename T>
    void param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
    }
    void param(const std::string& key, double value) { doc_["parameters"][key] = num(value); }

    void check(const std::string& name, double residual, double tolerance, bool pass) {
        json entry;
        entry["check"] = name;
        entry["residual"] = num(residual);
        entry["tolerance"] = num(tolerance);
        entry["pass"] = pass;
        doc_["results"].push_back(std::move(entry));
        rows_.push_back({name, human_num(residual), human_num(tolerance), pass});
        pass_ = pass_ && pass;
    }

    // A check whose requirement is a lower bound (e.g. a residual that must
    // stay away from zero).
    void check_above(const std::string& name, double value, double threshold, bool pass) {
        json entry;
        entry["check"] = name;
        entry["value"] = num(value);
        entry["threshold"] = num(threshold);
        entry["pass"] = pass;
        doc_["results"].push_back(std::move(entry));
        rows_.push_back({name, human_num(value), "> " + human_num(threshold), pass});
        pass_ = pass_ && pass;
    }

    void info(const std::string& name, const json& value, const std::string& shown) {
        json entry;
        entry["check"] = name;
        entry["value"] = value;
        entry["informational"] = true;
        doc_["results"].push_back(std::move(entry));
        rows_.push_back({name, shown, "-", true});
    }

    bool pass() const { return pass_; }

    void emit(bool as_json, std::ostream& out) {
        doc_["pass"] = pass_;
        if (as_json) {
            out << doc_.dump(2) << "\n";
            return;
        }
        out << "[" << command_ << "]";
        for (const auto& [key, value] : doc_["parameters"].items())
            out << " " << key << "=" << (value.is_string() ? value.get<std::string>() : value.dump());
        out << "\n";
        std::size_t width = 24;
        for (const Row& row : rows_) width = std::max(width, row.name.size() + 2);
        for (const Row& row : rows_) {
            out << "  " << std::left << std::setw(static_cast<int>(width)) << row.name
                << std::setw(24) << row.value << std::setw(18) << row.requirement
                << (row.pass ? "pass" : "FAIL") << "\n";
        }
        out << "overall: " << (pass_ ? "PASS" : "FAIL") << "\n";
    }

private:
    struct Row {
        std::string name;
        std::string value;
        std::string requirement;
        bool pass = true;
    };
    std::string command_;
    json doc_;
    std::vector<Row> rows_;
    bool pass_ = true;
};

std::vector<CVector> basis_plus_random(std::size_t dim, std::size_t extra, std::uint64_t seed) {
    std::vector<CVector> states;
    for (std::size_t k = 0; k < dim; ++k) {
        CVector e(dim, cx{0.0, 0.0});
        e[k] = cx{1.0, 0.0};
        states.push_back(std::move(e));
    }
    Rng rng(mix_seed(seed, 0xabcdULL));
    for (std::size_t k = 0; k < extra; ++k) states.push_back(rng.state(dim));
    return states;
}

void report_audit(Report& report, const AuditReport& audit) {
    for (const HypothesisResult& h : audit.hypothesis_results)
        report.check("hypothesis:" + h.name, h.residual, h.tolerance, h.pass);
    if (audit.conclusion_vacuous)
        report.info("conclusion", "hypotheses not met - conclusion vacuous",
                    "hypotheses not met - conclusion vacuous");
    else
        report.check("conclusion:object_observable_invariant", audit.conclusion_residual,
                     audit.conclusion_tolerance, audit.conclusion_pass);
}

// --- demo vn ---------------------------------------------------------------

int demo_vn(std::size_t dim, std::uint64_t seed, bool as_json, std::ostream& out) {
    Report report("demo vn");
    report.param("dim", dim);
    report.param("seed", seed);

    const MeasurementScheme scheme = build_discrete_von_neumann(dim);
    const double cov = check_covariant_indicator(scheme, vn_shift_action(dim, Side::Object),
                                                 vn_shift_action(dim, Side::Apparatus),
                                                 scheme.meter);
    report.check("pointer_covariance", cov, 1e-12, cov <= 1e-12);

    const CMatrix a_emb = embed(scheme.space, scheme.object_observable, Side::Object);
    const CMatrix evolved = evolve_meter(scheme);
    double worst = 0.0;
    const std::vector<CVector> states = basis_plus_random(dim, 8, seed);
    for (const CVector& psi : states) {
        const CorrelationReport corr =
            perfect_correlation(a_emb, evolved, kron(psi, scheme.apparatus_state), 1e-10);
        worst = std::max(worst, corr.worst_atom_residual);
    }
    report.check("pointer_correlation", worst, 1e-10, worst <= 1e-10);

    const AuditReport audit =
        main_theorem_audit(scheme, vn_phase_action(dim, Side::Object),
                           vn_phase_action(dim, Side::Apparatus), states, 1e-9);
    report_audit(report, audit);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

// --- demo charge -----------------------------------------------------------

int demo_charge(std::size_t modes, std::size_t cutoff, bool as_json, std::ostream& out) {
    Report report("demo charge");
    report.param("modes", modes);
    report.param("cutoff", cutoff);

    const FockModel fock = build_fock_model(modes, cutoff);
    const SectorDecomposition sectors = sector_decompose(fock.number_op);
    json dims = json::array();
    std::ostringstream shown;
    for (std::size_t k = 0; k < sectors.sector_dims.size(); ++k) {
        dims.push_back(sectors.sector_dims[k]);
        shown << (k ? "," : "[") << sectors.sector_dims[k];
    }
    shown << "]";
    report.info("sector_dims", dims, shown.str());

    const CMatrix& a1 = fock.ladder_ops.front();
    const CMatrix hopping =
        (modes >= 2) ? a1.adjoint() * fock.ladder_ops[1] : a1.adjoint() * a1;
    const double r_hop = check_superselection(hopping, fock.number_op);
    report.check("superselection:hopping", r_hop, 1e-12, r_hop <= 1e-12);

    CMatrix quad = a1 + a1.adjoint();
    quad *= cx{0.5, 0.0};
    const double r_quad = check_superselection(quad, fock.number_op);
    report.check_above("superselection:quadrature", r_quad, 0.1, r_quad > 0.1);
    const double off = off_sector_norm(quad, sectors);
    report.check("quadrature_off_sector_vs_commutator", std::abs(off - r_quad), 1e-9,
                 std::abs(off - r_quad) <= 1e-9);

    // Gauge phase: conjugation by e^{iN theta} multiplies a ladder operator
    // by e^{-i theta}.
    const GroupAction gauge = GroupAction::one_parameter(Side::Composite, fock.number_op);
    const double theta = 0.7071;
    const CMatrix rotated = act(gauge, theta, a1);
    CMatrix expected = a1;
    expected *= std::polar(1.0, -theta);
    const double r_gauge = fnorm_diff(rotated, expected);
    report.check("gauge_phase_on_ladder", r_gauge, 1e-10, r_gauge <= 1e-10);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

// --- demo way --------------------------------------------------------------

int demo_way(std::size_t spin_dim, double coupling, double time, std::uint64_t seed,
             std::size_t state_count, bool as_json, std::ostream& out) {
    Report report("demo way");
    report.param("spin", spin_dim);
    report.param("coupling", coupling);
    report.param("time", time);
    report.param("seed", seed);
    report.param("states", state_count);

    const MeasurementScheme scheme = build_way_spin_model(spin_dim, coupling, time);
    const CMatrix j1 = way_object_charge();
    const CMatrix j2 = way_apparatus_charge(spin_dim);

    const double r_cons = check_total_conservation(
        scheme, GroupAction::one_parameter(Side::Object, j1),
        GroupAction::one_parameter(Side::Apparatus, j2));
    report.check("total_conservation", r_cons, 1e-10, r_cons <= 1e-10);

    const double r_meter = commutator(scheme.meter, j2).fnorm();
    report.check("meter_commutes_with_apparatus_charge", r_meter, 1e-12, r_meter <= 1e-12);

    Rng rng(mix_seed(seed, 0x517aULL));
    std::size_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < state_count; ++k) {
        const BoundReport bound =
            way_ozawa_bound(scheme, scheme.object_observable, j1, j2, rng.state(2));
        if (!bound.satisfied) ++violations;
        min_margin = std::min(min_margin, bound.margin);
    }
    report.check("error_bound_violations", double(violations), 0.0, violations == 0);
    report.info("min_margin", num(min_margin), human_num(min_margin));

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

// --- demo breaking ----------------------------------------------------------

int demo_breaking(double field, double time, bool as_json, std::ostream& out) {
    Report report("demo breaking");
    report.param("field", field);
    report.param("time", time);

    const MeasurementScheme scheme = build_symmetry_breaking_model(field, time);
    const std::size_t d = scheme.space.apparatus_dim;
    const double displacement = field * time * double(d) / 6.283185307179586476925287;
    report.info("pointer_displacement_sites", num(displacement), human_num(displacement));

    const CMatrix binned = embed(scheme.space, sign_binned_meter(d), Side::Apparatus);
    const CMatrix evolved_binned = heisenberg(scheme.evolution(), binned);
    const CMatrix sz_emb = embed(scheme.space, pauli_z(), Side::Object);
    double worst = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        CVector psi(2, cx{0.0, 0.0});
        psi[k] = cx{1.0, 0.0};
        const CorrelationReport corr = perfect_correlation(
            sz_emb, evolved_binned, kron(psi, scheme.apparatus_state), 1e-8);
        worst = std::max(worst, corr.worst_atom_residual);
    }
    report.check("binned_readout_correlation", worst, 1e-8, worst <= 1e-8);

    const double r_sx =
        check_isolated_conservation(scheme, GroupAction::one_parameter(Side::Object, pauli_x()));
    report.check_above("sigma_x_conservation_failure", r_sx, 0.1, r_sx > 0.1);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

// --- model-driven commands ---------------------------------------------------

std::vector<CVector> resolve_object_states(const ResolvedModel& model) {
    std::vector<CVector> states;
    for (const std::string& name : model.analysis.object_states)
        states.push_back(model.state_ref(name));
    Rng rng(mix_seed(model.analysis.seed, 0xabcdULL));
    for (std::size_t k = 0; k < model.analysis.random_states; ++k)
        states.push_back(rng.state(model.space.object_dim));
    return states;
}

int cmd_audit(const std::string& path, bool as_json, std::ostream& out) {
    const ResolvedModel model = load_model(path);
    if (!model.scheme.has_value())
        throw ParseError(path + ": audit requires a scheme section");
    if (model.analysis.action_obj.empty() || model.analysis.action_app.empty())
        throw ParseError(path + ": audit requires analysis.action_obj and analysis.action_app");

    Report report("audit");
    report.param("model", path);
    report.param("seed", model.analysis.seed);
    report.param("tolerance", model.analysis.tolerance);

    const AuditReport audit = main_theorem_audit(
        *model.scheme, model.action_ref(model.analysis.action_obj),
        model.action_ref(model.analysis.action_app), resolve_object_states(model),
        model.analysis.tolerance, model.analysis.conclusion_tolerance);
    report.param("states_tested", audit.states_tested);
    report_audit(report, audit);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

int cmd_bound(const std::string& path, bool as_json, std::ostream& out) {
    const ResolvedModel model = load_model(path);
    if (!model.scheme.has_value())
        throw ParseError(path + ": bound requires a scheme section");
    if (model.analysis.charge_j1.empty() || model.analysis.charge_j2.empty())
        throw ParseError(path + ": bound requires analysis.charge_j1 and analysis.charge_j2");
    if (model.analysis.bound_state.empty())
        throw ParseError(path + ": bound requires analysis.bound_state");

    Report report("bound");
    report.param("model", path);
    report.param("slack", 1e-9);

    const BoundReport bound = way_ozawa_bound(
        *model.scheme, model.scheme->object_observable,
        model.operator_ref(model.analysis.charge_j1),
        model.operator_ref(model.analysis.charge_j2), model.state_ref(model.analysis.bound_state));
    report.info("error_sq", num(bound.error_sq), human_num(bound.error_sq));
    report.info("commutator_term", num(bound.commutator_term), human_num(bound.commutator_term));
    report.info("denom", num(bound.denom), human_num(bound.denom));
    report.info("bound", num(bound.bound), human_num(bound.bound));
    if (bound.divergent) report.info("note", bound.note, bound.note);
    report.check_above("bound_satisfied", bound.margin, -1e-9, bound.satisfied);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

int cmd_sectors(const std::string& path, const std::string& charge_name, bool as_json,
                std::ostream& out) {
    const ResolvedModel model = load_model(path);
    const CMatrix& charge = model.operator_ref(charge_name);

    Report report("sectors");
    report.param("model", path);
    report.param("charge", charge_name);

    const SectorDecomposition sectors = sector_decompose(charge);
    json listing = json::array();
    std::ostringstream shown;
    for (std::size_t k = 0; k < sectors.sector_dims.size(); ++k) {
        listing.push_back({{"charge", num(sectors.charge_eigenvalues[k])},
                           {"dim", sectors.sector_dims[k]}});
        shown << (k ? " " : "") << human_num(sectors.charge_eigenvalues[k]) << ":"
              << sectors.sector_dims[k];
    }
    report.info("sectors", listing, shown.str());

    double completeness = 0.0;
    CMatrix sum(charge.rows(), charge.cols());
    for (const CMatrix& p : sectors.sector_projectors) sum += p;
    completeness = fnorm_diff(sum, CMatrix::identity(charge.rows()));
    report.check("projector_completeness", completeness, 1e-10, completeness <= 1e-10);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

int cmd_search(const std::string& path, std::uint64_t seed, std::size_t budget,
               std::size_t restarts, bool unconstrained, bool as_json, std::ostream& out) {
    const ResolvedModel model = load_model(path);
    if (!model.scheme.has_value())
        throw ParseError(path + ": search requires a scheme section (dynamics are ignored)");
    if (model.analysis.charge_j1.empty())
        throw ParseError(path + ": search requires analysis.charge_j1");
    std::vector<CVector> states;
    for (const std::string& name : model.analysis.object_states)
        states.push_back(model.state_ref(name));
    if (states.empty()) throw ParseError(path + ": search requires analysis.object_states");

    Report report("search");
    report.param("model", path);
    report.param("seed", seed);
    report.param("budget", budget);
    report.param("restarts", restarts);
    report.param("constrained", !unconstrained);

    SearchOptions options;
    options.restarts = restarts;
    options.constrained = !unconstrained;
    const SearchResult result = constrained_search(
        model.scheme->space, model.scheme->object_observable,
        model.operator_ref(model.analysis.charge_j1), model.scheme->meter,
        model.scheme->apparatus_state, states, budget, seed, options);

    report.info("best_error_sq", num(result.best_error_sq), human_num(result.best_error_sq));
    report.info("floor", num(result.floor), human_num(result.floor));
    report.info("evaluations", result.evaluations, std::to_string(result.evaluations));
    report.info("budget_exhausted", result.budget_exhausted,
                result.budget_exhausted ? "true" : "false");
    if (!unconstrained)
        report.check_above("error_respects_floor", result.best_error_sq - result.floor, -1e-6,
                           result.best_error_sq >= result.floor - 1e-6);

    report.emit(as_json, out);
    return report.pass() ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"finite-dimensional measurement-model workbench"};
    app.require_subcommand(1);

    int exit_code = 0;

    // demo
    auto* demo = app.add_subcommand("demo", "run a canonical model demonstration");
    demo->require_subcommand(1);

    std::size_t vn_dim = 2;
    std::uint64_t vn_seed = 12345;
    bool vn_json = false;
    auto* vn = demo->add_subcommand("vn", "discrete position-copy measurement model");
    vn->add_option("--dim", vn_dim, "object/apparatus dimension")->capture_default_str();
    vn->add_option("--seed", vn_seed, "seed for the random object states")->capture_default_str();
    vn->add_flag("--json", vn_json, "emit a machine report");
    vn->callback([&] { exit_code = demo_vn(vn_dim, vn_seed, vn_json, out); });

    std::size_t ch_modes = 2, ch_cutoff = 2;
    bool ch_json = false;
    auto* charge = demo->add_subcommand("charge", "number-charge superselection on a truncated "
                                                  "occupation space");
    charge->add_option("--modes", ch_modes, "mode count")->capture_default_str();
    charge->add_option("--cutoff", ch_cutoff, "per-mode occupation cap")->capture_default_str();
    charge->add_flag("--json", ch_json, "emit a machine report");
    charge->callback([&] { exit_code = demo_charge(ch_modes, ch_cutoff, ch_json, out); });

    std::size_t way_spin = 2;
    double way_coupling = 1.0, way_time = 0.7853981633974483;
    std::uint64_t way_seed = 12345;
    std::size_t way_states = 100;
    bool way_json = false;
    auto* way = demo->add_subcommand("way", "conserved-charge error bound on the spin exchange "
                                            "model");
    way->add_option("--spin", way_spin, "apparatus spin dimension")->capture_default_str();
    way->add_option("--coupling", way_coupling, "exchange coupling")->capture_default_str();
    way->add_option("--time", way_time, "interaction time")->capture_default_str();
    way->add_option("--seed", way_seed, "seed for the swept object states")->capture_default_str();
    way->add_option("--states", way_states, "number of swept object states")->capture_default_str();
    way->add_flag("--json", way_json, "emit a machine report");
    way->callback([&] {
        exit_code = demo_way(way_spin, way_coupling, way_time, way_seed, way_states, way_json, out);
    });

    double br_field = 1.5707963267948966, br_time = 1.0;
    bool br_json = false;
    auto* breaking = demo->add_subcommand("breaking", "symmetry breaking makes the forbidden "
                                                      "observable measurable");
    breaking->add_option("--field", br_field, "field strength")->capture_default_str();
    breaking->add_option("--time", br_time, "interaction time")->capture_default_str();
    breaking->add_flag("--json", br_json, "emit a machine report");
    breaking->callback([&] { exit_code = demo_breaking(br_field, br_time, br_json, out); });

    // audit
    std::string audit_path;
    bool audit_json = false;
    auto* audit = app.add_subcommand("audit", "run the theorem audit from a model file");
    audit->add_option("model", audit_path, "model file (JSON)")->required();
    audit->add_flag("--json", audit_json, "emit a machine report");
    audit->callback([&] { exit_code = cmd_audit(audit_path, audit_json, out); });

    // bound
    std::string bound_path;
    bool bound_json = false;
    auto* bound = app.add_subcommand("bound", "evaluate the conserved-charge error bound from a "
                                              "model file");
    bound->add_option("model", bound_path, "model file (JSON)")->required();
    bound->add_flag("--json", bound_json, "emit a machine report");
    bound->callback([&] { exit_code = cmd_bound(bound_path, bound_json, out); });

    // sectors
    std::string sectors_path, sectors_charge;
    bool sectors_json = false;
    auto* sectors = app.add_subcommand("sectors", "decompose a named charge into sectors");
    sectors->add_option("model", sectors_path, "model file (JSON)")->required();
    sectors->add_option("--charge", sectors_charge, "operator name")->required();
    sectors->add_flag("--json", sectors_json, "emit a machine report");
    sectors->callback(
        [&] { exit_code = cmd_sectors(sectors_path, sectors_charge, sectors_json, out); });

    // search
    std::string search_path;
    std::uint64_t search_seed = 1;
    std::size_t search_budget = 5000, search_restarts = 20;
    bool search_unconstrained = false, search_json = false;
    auto* search = app.add_subcommand("search", "minimize the measurement error over "
                                                "charge-conserving dynamics");
    search->add_option("spec", search_path, "search spec (model file JSON)")->required();
    search->add_option("--seed", search_seed, "master seed")->capture_default_str();
    search->add_option("--budget", search_budget, "objective evaluations per restart")
        ->capture_default_str();
    search->add_option("--restarts", search_restarts, "independent restarts")
        ->capture_default_str();
    search->add_flag("--unconstrained", search_unconstrained,
                     "drop the conservation constraint (control run)");
    search->add_flag("--json", search_json, "emit a machine report");
    search->callback([&] {
        exit_code = cmd_search(search_path, search_seed, search_budget, search_restarts,
                               search_unconstrained, search_json, out);
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

}  // namespace supersel
