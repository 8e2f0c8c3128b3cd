#include "supersel/verdicts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "supersel/correlation.hpp"
#include "supersel/eig.hpp"
#include "supersel/rng.hpp"

namespace supersel {

const std::vector<double>& conservation_samples() {
    static const std::vector<double> samples{1.0,
                                             -1.0,
                                             1.0471975511965977,
                                             -1.0471975511965977,
                                             0.7071,
                                             1.5707963267948966};
    return samples;
}

namespace {

void require_paired_kinds(const GroupAction& a, const GroupAction& b, const char* who) {
    if (a.kind() != b.kind())
        throw MixedActionKindsError(std::string(who) +
                                    ": one-parameter action paired with a finite one");
    if (a.kind() == GroupAction::Kind::Finite && a.element_count() != b.element_count())
        throw MixedActionKindsError(std::string(who) + ": finite actions of different order");
}

void require_side_dims(const MeasurementScheme& scheme, const GroupAction& action, Side side,
                       const char* who) {
    const std::size_t want =
        (side == Side::Object) ? scheme.space.object_dim : scheme.space.apparatus_dim;
    if (action.dim() != want)
        throw DimMismatchError(std::string(who) + ": action dimension does not match its factor");
}

// Paired unitaries (U_obj[g], U_app[g]) probed by the diagram checks. For
// one-parameter actions both are evaluated at the same sampled parameter; a
// null action stands in for id.
std::vector<std::pair<CMatrix, CMatrix>> paired_unitaries(const GroupAction* obj,
                                                          const GroupAction* app,
                                                          std::size_t obj_dim,
                                                          std::size_t app_dim) {
    std::vector<std::pair<CMatrix, CMatrix>> out;
    const GroupAction* lead = obj ? obj : app;
    if (lead->kind() == GroupAction::Kind::OneParameter) {
        for (double s : conservation_samples())
            out.emplace_back(obj ? obj->unitary_at(s) : CMatrix::identity(obj_dim),
                             app ? app->unitary_at(s) : CMatrix::identity(app_dim));
    } else {
        for (std::size_t g = 0; g < lead->element_count(); ++g)
            out.emplace_back(obj ? obj->unitary_element(g) : CMatrix::identity(obj_dim),
                             app ? app->unitary_element(g) : CMatrix::identity(app_dim));
    }
    return out;
}

double conservation_residual_sampled(const MeasurementScheme& scheme, const GroupAction* obj,
                                     const GroupAction* app) {
    const CMatrix u = scheme.evolution();
    const CMatrix a_emb = embed(scheme.space, scheme.object_observable, Side::Object);
    const CMatrix m_emb = embed(scheme.space, scheme.meter, Side::Apparatus);
    const std::vector<CMatrix> probes{a_emb, m_emb};

    double worst = 0.0;
    for (const auto& [uo, ua] : paired_unitaries(obj, app, scheme.space.object_dim,
                                                 scheme.space.apparatus_dim)) {
        const CMatrix w = kron(uo, ua);
        for (const CMatrix& b : probes) {
            const CMatrix lhs = heisenberg(u, heisenberg(w, b));
            const CMatrix rhs = heisenberg(w, heisenberg(u, b));
            worst = std::max(worst, fnorm_diff(lhs, rhs));
        }
    }
    return worst;
}

}  // namespace

double check_total_conservation(const MeasurementScheme& scheme, const GroupAction& action_obj,
                                const GroupAction& action_app) {
    require_side_dims(scheme, action_obj, Side::Object, "check_total_conservation");
    require_side_dims(scheme, action_app, Side::Apparatus, "check_total_conservation");
    require_paired_kinds(action_obj, action_app, "check_total_conservation");

    if (scheme.has_hamiltonian() && action_obj.kind() == GroupAction::Kind::OneParameter) {
        const CMatrix total_charge =
            embed(scheme.space, action_obj.generator(), Side::Object) +
            embed(scheme.space, action_app.generator(), Side::Apparatus);
        return commutator(total_charge, scheme.hamiltonian_dynamics().hamiltonian).fnorm();
    }
    return conservation_residual_sampled(scheme, &action_obj, &action_app);
}

double check_isolated_conservation(const MeasurementScheme& scheme,
                                   const GroupAction& action_obj) {
    require_side_dims(scheme, action_obj, Side::Object, "check_isolated_conservation");

    if (scheme.has_hamiltonian() && action_obj.kind() == GroupAction::Kind::OneParameter) {
        const CMatrix charge = embed(scheme.space, action_obj.generator(), Side::Object);
        return commutator(charge, scheme.hamiltonian_dynamics().hamiltonian).fnorm();
    }
    return conservation_residual_sampled(scheme, &action_obj, nullptr);
}

double check_covariant_indicator(const MeasurementScheme& scheme, const GroupAction& action_obj,
                                 const GroupAction& action_app, const CMatrix& meter) {
    require_side_dims(scheme, action_obj, Side::Object, "check_covariant_indicator");
    require_side_dims(scheme, action_app, Side::Apparatus, "check_covariant_indicator");
    require_paired_kinds(action_obj, action_app, "check_covariant_indicator");
    if (meter.rows() != scheme.space.apparatus_dim || !meter.square())
        throw DimMismatchError("check_covariant_indicator: meter must live on the apparatus");

    const CMatrix u = scheme.evolution();
    const CMatrix evolved = heisenberg(u, embed(scheme.space, meter, Side::Apparatus));

    double worst = 0.0;
    for (const auto& [uo, ua] : paired_unitaries(&action_obj, &action_app,
                                                 scheme.space.object_dim,
                                                 scheme.space.apparatus_dim)) {
        const CMatrix moved_meter = embed(scheme.space, heisenberg(ua, meter), Side::Apparatus);
        const CMatrix lhs = heisenberg(u, moved_meter);
        const CMatrix rhs = heisenberg(kron(uo, CMatrix::identity(scheme.space.apparatus_dim)),
                                       evolved);
        worst = std::max(worst, fnorm_diff(lhs, rhs));
    }
    return worst;
}

double check_superselection(const CMatrix& a, const CMatrix& charge) {
    require_square(a, "check_superselection");
    require_same_shape(a, charge, "check_superselection");
    return commutator(charge, a).fnorm();
}

std::string AuditReport::first_failing_hypothesis() const {
    for (const HypothesisResult& h : hypothesis_results)
        if (!h.pass) return h.name;
    return {};
}

AuditReport main_theorem_audit(const MeasurementScheme& scheme, const GroupAction& action_obj,
                               const GroupAction& action_app,
                               const std::vector<CVector>& object_states, double tol,
                               double conclusion_tol) {
    const std::size_t d = scheme.space.object_dim;
    if (object_states.empty()) throw StatesDontSpanError("main_theorem_audit: no object states");
    for (const CVector& psi : object_states) {
        if (psi.size() != d)
            throw DimMismatchError("main_theorem_audit: object state dim mismatch");
        require_unit_vector(psi, "main_theorem_audit");
    }

    // Spanning check: rank of the Gram matrix must reach the object dimension.
    const std::size_t k = object_states.size();
    CMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(object_states[i], object_states[j]);
    std::size_t rank = 0;
    for (double v : eig_hermitian(gram).values)
        if (v > 1e-9) ++rank;
    if (rank < d)
        throw StatesDontSpanError("main_theorem_audit: object states span a " +
                                  std::to_string(rank) + "-dim subspace of dim " +
                                  std::to_string(d));

    AuditReport report;
    report.hypothesis_tolerance = tol;
    report.states_tested = k;

    const double r_cons = check_isolated_conservation(scheme, action_obj);
    report.hypothesis_results.push_back(
        {"isolated_conservation", r_cons <= tol, r_cons, tol});

    const double r_cov = check_covariant_indicator(scheme, action_obj, action_app, scheme.meter);
    report.hypothesis_results.push_back({"covariant_indicator", r_cov <= tol, r_cov, tol});

    const CMatrix a_emb = embed(scheme.space, scheme.object_observable, Side::Object);
    const CMatrix evolved_meter = evolve_meter(scheme);
    double r_ozawa = 0.0;
    for (const CVector& psi : object_states) {
        const CVector nu = kron(psi, scheme.apparatus_state);
        const CorrelationReport corr = perfect_correlation(a_emb, evolved_meter, nu, tol);
        r_ozawa = std::max(r_ozawa, corr.worst_atom_residual);
    }
    report.hypothesis_results.push_back({"ozawa_equality", r_ozawa <= tol, r_ozawa, tol});

    report.hypotheses_met = true;
    for (const HypothesisResult& h : report.hypothesis_results)
        report.hypotheses_met = report.hypotheses_met && h.pass;

    double r_conc = 0.0;
    for (const CMatrix& uo : action_obj.sampled_unitaries())
        r_conc = std::max(r_conc,
                          fnorm_diff(heisenberg(uo, scheme.object_observable),
                                     scheme.object_observable));
    report.conclusion_residual = r_conc;
    report.conclusion_tolerance = conclusion_tol;
    report.conclusion_pass = r_conc <= conclusion_tol;
    report.conclusion_vacuous = !report.hypotheses_met;
    return report;
}

double measurement_error(const MeasurementScheme& scheme, const CMatrix& a, const CVector& psi) {
    if (a.rows() != scheme.space.object_dim || !a.square())
        throw DimMismatchError("measurement_error: observable must live on the object");
    require_hermitian(a, "measurement_error");
    if (psi.size() != scheme.space.object_dim)
        throw DimMismatchError("measurement_error: object state dim mismatch");
    require_unit_vector(psi, "measurement_error");

    const CMatrix noise = evolve_meter(scheme) - embed(scheme.space, a, Side::Object);
    const CVector nu = kron(psi, scheme.apparatus_state);
    return norm(matvec(noise, nu));
}

namespace {

double variance(const CMatrix& op, const CVector& state) {
    const CVector applied = matvec(op, state);
    const double mean = dot(state, applied).real();
    const cx second = dot(applied, applied);  // <op psi|op psi> = <op^2> for Hermitian op
    return std::max(0.0, second.real() - mean * mean);
}

}  // namespace

BoundReport way_ozawa_bound(const MeasurementScheme& scheme, const CMatrix& a, const CMatrix& j1,
                            const CMatrix& j2, const CVector& psi, double slack) {
    if (j1.rows() != scheme.space.object_dim)
        throw DimMismatchError("way_ozawa_bound: j1 must live on the object");
    if (j2.rows() != scheme.space.apparatus_dim)
        throw DimMismatchError("way_ozawa_bound: j2 must live on the apparatus");
    require_hermitian(j1, "way_ozawa_bound.j1");
    require_hermitian(j2, "way_ozawa_bound.j2");

    // Assumption: the meter commutes with the apparatus charge.
    const CMatrix m_emb = embed(scheme.space, scheme.meter, Side::Apparatus);
    const CMatrix j2_emb = embed(scheme.space, j2, Side::Apparatus);
    const double meter_comm = commutator(m_emb, j2_emb).fnorm();
    if (meter_comm > 1e-9)
        throw PreconditionViolatedError(
            "way_ozawa_bound: meter does not commute with the apparatus charge (residual " +
            std::to_string(meter_comm) + ")");

    // Assumption: the total charge J1 + J2 is conserved.
    const CMatrix total = embed(scheme.space, j1, Side::Object) + j2_emb;
    double cons_residual;
    if (scheme.has_hamiltonian())
        cons_residual = commutator(total, scheme.hamiltonian_dynamics().hamiltonian).fnorm();
    else
        cons_residual = fnorm_diff(heisenberg(scheme.evolution(), total), total);
    if (cons_residual > 1e-9)
        throw PreconditionViolatedError(
            "way_ozawa_bound: total charge is not conserved (residual " +
            std::to_string(cons_residual) + ")");

    BoundReport report;
    report.slack = slack;
    const double err = measurement_error(scheme, a, psi);
    report.error_sq = err * err;

    const cx comm_mean = dot(psi, matvec(commutator(a, j1), psi));
    report.commutator_term = std::norm(comm_mean);
    report.denom = 4.0 * (variance(j1, psi) + variance(j2, scheme.apparatus_state));

    if (report.denom > 1e-12) {
        report.bound = report.commutator_term / report.denom;
        report.satisfied = report.error_sq >= report.bound - slack;
        report.margin = report.error_sq - report.bound;
        return report;
    }

    // Degenerate denominator: both charges sharp. The ratio form carries no
    // information; when A fails to commute with the object charge the bound
    // diverges and the measurement is meaningless.
    const double op_comm = commutator(a, j1).fnorm();
    if (op_comm > 1e-9 * std::max(1.0, a.fnorm() * j1.fnorm())) {
        report.divergent = true;
        report.bound = std::numeric_limits<double>::infinity();
        report.satisfied = false;
        report.margin = -std::numeric_limits<double>::infinity();
        report.note = "bound infinite - measurement meaningless (sharp charges, [A, J1] != 0)";
    } else {
        report.bound = 0.0;
        report.satisfied = true;
        report.margin = report.error_sq;
        report.note = "bound degenerate (sharp charges, [A, J1] = 0): trivially satisfied";
    }
    return report;
}

std::vector<CMatrix> hermitian_basis(std::size_t n) {
    std::vector<CMatrix> basis;
    basis.reserve(n * n);
    const double inv_sqrt2 = 0.7071067811865475244;
    for (std::size_t i = 0; i < n; ++i) {
        CMatrix e(n, n);
        e(i, i) = cx{1.0, 0.0};
        basis.push_back(std::move(e));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            CMatrix sym(n, n);
            sym(i, j) = sym(j, i) = cx{inv_sqrt2, 0.0};
            basis.push_back(std::move(sym));
            CMatrix asym(n, n);
            asym(i, j) = cx{0.0, inv_sqrt2};
            asym(j, i) = cx{0.0, -inv_sqrt2};
            basis.push_back(std::move(asym));
        }
    return basis;
}

std::vector<CMatrix> commutant_hermitian_basis(const CMatrix& charge, double threshold) {
    require_hermitian(charge, "commutant_hermitian_basis");
    const std::size_t n = charge.rows();
    const std::vector<CMatrix> basis = hermitian_basis(n);
    const std::size_t k = basis.size();

    std::vector<CMatrix> images;
    images.reserve(k);
    for (const CMatrix& e : basis) images.push_back(commutator(charge, e));

    // Gram matrix of the commutation map in the Re-trace inner product; its
    // null space is the commutant.
    CMatrix gram(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            cx s{0.0, 0.0};
            const auto& di = images[i].data();
            const auto& dj = images[j].data();
            for (std::size_t t = 0; t < di.size(); ++t) s += std::conj(di[t]) * dj[t];
            gram(i, j) = cx{s.real(), 0.0};
            gram(j, i) = cx{s.real(), 0.0};
        }

    const EigResult eg = eig_hermitian(gram);
    const double cutoff = threshold * std::max(1.0, eg.values.back());

    // Null vectors come back with O(sqrt(eps)) commutator residue; projecting
    // onto the charge's sector blocks restores exact commutation.
    const SectorDecomposition sectors = sector_decompose(charge);

    std::vector<CMatrix> commutant;
    for (std::size_t c = 0; c < k; ++c) {
        if (eg.values[c] > cutoff) continue;
        CMatrix h(n, n);
        for (std::size_t b = 0; b < k; ++b) {
            const double w = eg.vectors(b, c).real();  // real symmetric input: real vectors
            if (w == 0.0) continue;
            CMatrix term = basis[b];
            term *= cx{w, 0.0};
            h += term;
        }
        CMatrix cleaned(n, n);
        for (const CMatrix& p : sectors.sector_projectors) cleaned += p * h * p;
        commutant.push_back(std::move(cleaned));
    }
    if (commutant.size() <= 1)
        throw EmptyCommutantError(
            "commutant_hermitian_basis: only multiples of the identity commute with the charge");
    return commutant;
}

double conserving_error_floor(const CMatrix& a, const CMatrix& j1, const CVector& psi) {
    const double var = variance(j1, psi);
    if (var > 1e-12) {
        const cx comm_mean = dot(psi, matvec(commutator(a, j1), psi));
        return std::norm(comm_mean) / (4.0 * var);
    }
    // Sharp charge: the evolved meter is block-diagonal across the charge
    // sectors for every conserving dynamics, so the off-sector part of
    // a |psi> can never be reproduced.
    const SectorDecomposition sectors = sector_decompose(j1);
    std::size_t home = 0;
    double best_weight = -1.0;
    for (std::size_t s = 0; s < sectors.sector_projectors.size(); ++s) {
        const double w = norm(matvec(sectors.sector_projectors[s], psi));
        if (w > best_weight) {
            best_weight = w;
            home = s;
        }
    }
    const CVector a_psi = matvec(a, psi);
    const CVector kept = matvec(sectors.sector_projectors[home], a_psi);
    double leak_sq = 0.0;
    for (std::size_t i = 0; i < a_psi.size(); ++i) leak_sq += std::norm(a_psi[i] - kept[i]);
    return leak_sq;
}

namespace {

struct RestartOutcome {
    double error_sq = std::numeric_limits<double>::infinity();
    std::vector<double> coeffs;
    std::size_t evaluations = 0;
    bool exhausted = false;
};

}  // namespace

SearchResult constrained_search(const CompositeSpace& space, const CMatrix& a, const CMatrix& j1,
                                const CMatrix& meter, const CVector& apparatus_state,
                                const std::vector<CVector>& object_states, std::size_t budget,
                                std::uint64_t seed, const SearchOptions& options) {
    if (budget < 1) throw BadDimensionError("constrained_search: budget must be >= 1");
    if (object_states.empty())
        throw BadDimensionError("constrained_search: object_states must be nonempty");
    require_hermitian(a, "constrained_search.a");
    require_hermitian(j1, "constrained_search.j1");
    require_hermitian(meter, "constrained_search.meter");
    if (a.rows() != space.object_dim || j1.rows() != space.object_dim)
        throw DimMismatchError("constrained_search: object operators dim mismatch");
    if (meter.rows() != space.apparatus_dim)
        throw DimMismatchError("constrained_search: meter dim mismatch");
    if (apparatus_state.size() != space.apparatus_dim)
        throw DimMismatchError("constrained_search: apparatus state dim mismatch");
    require_unit_vector(apparatus_state, "constrained_search");
    for (const CVector& psi : object_states) {
        if (psi.size() != space.object_dim)
            throw DimMismatchError("constrained_search: object state dim mismatch");
        require_unit_vector(psi, "constrained_search");
    }

    const std::size_t n = space.total_dim();
    const std::vector<CMatrix> directions =
        options.constrained ? commutant_hermitian_basis(embed(space, j1, Side::Object))
                            : hermitian_basis(n);
    const std::size_t dim = directions.size();

    const CMatrix a_emb = embed(space, a, Side::Object);
    const CMatrix m_emb = embed(space, meter, Side::Apparatus);
    std::vector<CVector> initial_states;
    initial_states.reserve(object_states.size());
    for (const CVector& psi : object_states) initial_states.push_back(kron(psi, apparatus_state));

    const auto objective = [&](const std::vector<double>& x) {
        CMatrix h(n, n);
        for (std::size_t k = 0; k < dim; ++k) {
            if (x[k] == 0.0) continue;
            CMatrix term = directions[k];
            term *= cx{x[k], 0.0};
            h += term;
        }
        const CMatrix noise = heisenberg(expi(h, options.time), m_emb) - a_emb;
        double total = 0.0;
        for (const CVector& nu : initial_states) {
            const double r = norm(matvec(noise, nu));
            total += r * r;
        }
        return total / static_cast<double>(initial_states.size());
    };

    std::vector<RestartOutcome> outcomes(options.restarts);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(options.restarts); ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        RestartOutcome& out = outcomes[r];
        std::vector<double> x(dim);
        for (double& c : x) c = rng.uniform(-options.init_scale, options.init_scale);

        double fx = objective(x);
        std::size_t evals = 1;
        double step = options.initial_step;
        while (step > options.min_step && evals < budget) {
            bool improved = false;
            for (std::size_t k = 0; k < dim && evals < budget; ++k) {
                for (double sign : {1.0, -1.0}) {
                    if (evals >= budget) break;
                    std::vector<double> trial = x;
                    trial[k] += sign * step;
                    const double ft = objective(trial);
                    ++evals;
                    if (ft < fx) {
                        x = std::move(trial);
                        fx = ft;
                        improved = true;
                        // Ride the descent direction while it keeps paying.
                        while (evals < budget) {
                            std::vector<double> more = x;
                            more[k] += sign * step;
                            const double fm = objective(more);
                            ++evals;
                            if (fm >= fx) break;
                            x = std::move(more);
                            fx = fm;
                        }
                        break;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        out.error_sq = fx;
        out.coeffs = std::move(x);
        out.evaluations = evals;
        out.exhausted = evals >= budget && step > options.min_step;
    }

    std::size_t best_index = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r)
        if (outcomes[r].error_sq < outcomes[best_index].error_sq) best_index = r;

    SearchResult result;
    result.seed = seed;
    result.best_error_sq = outcomes[best_index].error_sq;
    result.hamiltonian = CMatrix(n, n);
    for (std::size_t k = 0; k < dim; ++k) {
        const double c = outcomes[best_index].coeffs[k];
        if (c == 0.0) continue;
        CMatrix term = directions[k];
        term *= cx{c, 0.0};
        result.hamiltonian += term;
    }
    for (const RestartOutcome& out : outcomes) {
        result.evaluations += out.evaluations;
        result.budget_exhausted = result.budget_exhausted || out.exhausted;
    }

    double floor_max = 0.0;
    double floor_mean = 0.0;
    for (const CVector& psi : object_states) {
        const double f = conserving_error_floor(a, j1, psi);
        floor_max = std::max(floor_max, f);
        floor_mean += f;
    }
    floor_mean /= static_cast<double>(object_states.size());
    result.floor = floor_max;

    // The mean objective is rigorously bounded below by the mean of the
    // per-state floors whenever the constraint is active.
    if (options.constrained && result.best_error_sq < floor_mean - 1e-6)
        throw std::logic_error("constrained_search: result fell below the conservation floor");
    return result;
}

}  // namespace supersel
