#ifndef SUPERSEL_VERDICTS_HPP
#define SUPERSEL_VERDICTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "supersel/algebra.hpp"
#include "supersel/cmatrix.hpp"
#include "supersel/schemes.hpp"

namespace supersel {

// Parameter values probed by the conservation and covariance checks when an
// action is one-parameter and no generator shortcut applies. Includes pi/2 so
// the maximally rotated case is always exercised.
const std::vector<double>& conservation_samples();

// Residual of the total conservation diagram: the evolution commutes with the
// simultaneous action on both factors. Generator form ||[J (x) 1 + 1 (x) K, H]||_F
// when both actions are one-parameter and the dynamics carries a Hamiltonian;
// otherwise the max deviation of the two automorphism orders over the probe
// operators A (x) 1 and 1 (x) M at paired group samples.
double check_total_conservation(const MeasurementScheme& scheme, const GroupAction& action_obj,
                                const GroupAction& action_app);

// Same with the object action alone (sigma_g (x) id); generator form
// ||[J (x) 1, H]||_F.
double check_isolated_conservation(const MeasurementScheme& scheme,
                                   const GroupAction& action_obj);

// Residual of the covariant-indicator diagram
// alpha(1 (x) tau_g(M)) = sigma_g(alpha(1 (x) M)), max over paired samples.
double check_covariant_indicator(const MeasurementScheme& scheme, const GroupAction& action_obj,
                                 const GroupAction& action_app, const CMatrix& meter);

// ||[charge, a]||_F.
double check_superselection(const CMatrix& a, const CMatrix& charge);

struct HypothesisResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    double tolerance = 0.0;
};

struct AuditReport {
    std::vector<HypothesisResult> hypothesis_results;
    bool hypotheses_met = false;
    // Invariance of A under the object action. Meaningful as a theorem
    // conclusion only when the hypotheses are met; kept as a diagnostic
    // otherwise (conclusion_vacuous = true).
    double conclusion_residual = 0.0;
    double conclusion_tolerance = 0.0;
    bool conclusion_pass = false;
    bool conclusion_vacuous = true;
    std::size_t states_tested = 0;
    double hypothesis_tolerance = 0.0;

    std::string first_failing_hypothesis() const;
};

// Audits the superselection theorem on one scheme: (1) isolated conservation,
// (2) covariant indicator, (3) equality of A and the evolved meter in every
// nu = psi (x) xi over a spanning family of object states; conclusion: A is
// invariant under the object action.
AuditReport main_theorem_audit(const MeasurementScheme& scheme, const GroupAction& action_obj,
                               const GroupAction& action_app,
                               const std::vector<CVector>& object_states, double tol,
                               double conclusion_tol = 1e-7);

// sqrt(<nu| (alpha(1 (x) M) - a (x) 1)^2 |nu>) with nu = psi (x) xi.
double measurement_error(const MeasurementScheme& scheme, const CMatrix& a, const CVector& psi);

struct BoundReport {
    double error_sq = 0.0;
    double commutator_term = 0.0;  // |<[A, J1]>|^2
    double denom = 0.0;            // 4 (sigma(J1)^2 + sigma(J2)^2)
    double bound = 0.0;
    bool satisfied = false;
    double margin = 0.0;
    // Set when the denominator vanishes while A genuinely fails to commute
    // with the object charge: the error bound degenerates and the measurement
    // carries no meaning.
    bool divergent = false;
    std::string note;
    double slack = 0.0;
};

// Error lower bound from the conserved additive charge J1 + J2:
// error^2 >= |<[A, J1]>|^2 / (4 {sigma(J1)^2 + sigma(J2)^2}), all expectations
// in nu = psi (x) xi. Preconditions: the meter commutes with J2 and the total
// charge is conserved by the dynamics.
BoundReport way_ozawa_bound(const MeasurementScheme& scheme, const CMatrix& a, const CMatrix& j1,
                            const CMatrix& j2, const CVector& psi, double slack = 1e-9);

// Orthonormal basis (Re-trace inner product) of the n x n Hermitian matrices.
std::vector<CMatrix> hermitian_basis(std::size_t n);

// Basis of the Hermitian commutant {H : [charge, H] = 0}, computed as the
// null space of H -> [charge, H] via the eigendecomposition of its Gram
// matrix. Throws EmptyCommutantError when only multiples of the identity
// survive.
std::vector<CMatrix> commutant_hermitian_basis(const CMatrix& charge, double threshold = 1e-9);

struct SearchOptions {
    std::size_t restarts = 20;
    bool constrained = true;  // restrict to the commutant of j1 (x) 1
    double time = 1.0;        // evolution time applied to candidate Hamiltonians
    double initial_step = 0.4;
    double min_step = 1e-8;
    double init_scale = 0.9;
};

struct SearchResult {
    double best_error_sq = 0.0;
    double floor = 0.0;  // max over object states of the per-state error floor
    CMatrix hamiltonian;
    std::size_t evaluations = 0;
    bool budget_exhausted = false;
    std::uint64_t seed = 0;
};

// Minimizes the mean squared measurement error over Hamiltonians constrained
// to conserve j1 in isolation, by seeded coordinate search with shrinking
// steps and independent restarts. The returned floor is the analytic
// lower bound implied by the conservation constraint; finding a constrained
// error below it (beyond 1e-6) is reported as a logic error.
SearchResult constrained_search(const CompositeSpace& space, const CMatrix& a, const CMatrix& j1,
                                const CMatrix& meter, const CVector& apparatus_state,
                                const std::vector<CVector>& object_states, std::size_t budget,
                                std::uint64_t seed, const SearchOptions& options = {});

// The per-state floor used by the search: the WAY-type bound when the charge
// has spread in psi, the off-sector leakage ||(1 - P_s) a psi||^2 when psi is
// sharp in the charge (the bound's denominator vanishes there).
double conserving_error_floor(const CMatrix& a, const CMatrix& j1, const CVector& psi);

}  // namespace supersel

#endif
