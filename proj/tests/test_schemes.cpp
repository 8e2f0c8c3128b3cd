#include "doctest.h"

#include "support/oracles.hpp"
#include "supersel/correlation.hpp"
#include "supersel/rng.hpp"
#include "supersel/schemes.hpp"
#include "supersel/verdicts.hpp"

using namespace supersel;

TEST_CASE("the d=2 position-copy unitary is the controlled flip") {
    const MeasurementScheme scheme = build_discrete_von_neumann(2);
    CMatrix cnot(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = cx{1.0, 0.0};
    CHECK(fnorm_diff(scheme.evolution(), cnot) == doctest::Approx(0.0));
    CHECK_THROWS_AS(build_discrete_von_neumann(1), BadDimensionError);
}

TEST_CASE("every builder output passes scheme validation") {
    build_discrete_von_neumann(5).validate();
    build_way_spin_model(3, 1.0, 0.6).validate();
    build_symmetry_breaking_model(1.5707963267948966, 1.0).validate();
}

TEST_CASE("pointer reads the object position from a sharp start") {
    Rng rng(201);
    for (std::size_t d : {2, 3, 5}) {
        const MeasurementScheme scheme = build_discrete_von_neumann(d);
        const CMatrix a_emb = embed(scheme.space, scheme.object_observable, Side::Object);
        const CMatrix evolved = evolve_meter(scheme);
        for (int trial = 0; trial < 6; ++trial) {
            const CVector nu = kron(rng.state(d), scheme.apparatus_state);
            CHECK(perfect_correlation(a_emb, evolved, nu, 1e-10).equal);
        }
    }
}

TEST_CASE("an unsharp pointer start breaks the correlation") {
    MeasurementScheme scheme = build_discrete_von_neumann(2);
    const double inv = 1.0 / std::sqrt(2.0);
    scheme.apparatus_state = CVector{cx{inv, 0.0}, cx{inv, 0.0}};
    const CMatrix a_emb = embed(scheme.space, scheme.object_observable, Side::Object);
    const CMatrix evolved = evolve_meter(scheme);
    Rng rng(202);
    const CVector nu = kron(rng.state(2), scheme.apparatus_state);
    CHECK_FALSE(perfect_correlation(a_emb, evolved, nu, 1e-10).equal);
}

TEST_CASE("meter-shift covariance is exact for every shift") {
    for (std::size_t d : {2, 3, 4, 7}) {
        const MeasurementScheme scheme = build_discrete_von_neumann(d);
        const CMatrix u = scheme.evolution();
        const CMatrix meter_emb = embed(scheme.space, scheme.meter, Side::Apparatus);
        const CMatrix evolved = heisenberg(u, meter_emb);
        const GroupAction sigma = vn_shift_action(d, Side::Object);
        const GroupAction tau = vn_shift_action(d, Side::Apparatus);
        for (std::size_t b = 0; b < d; ++b) {
            const CMatrix lhs = heisenberg(
                u, embed(scheme.space, act(tau, b, scheme.meter), Side::Apparatus));
            const CMatrix rhs = heisenberg(
                kron(sigma.unitary_element(b), CMatrix::identity(d)), evolved);
            CHECK(fnorm_diff(lhs, rhs) <= 1e-12);
        }
    }
}

TEST_CASE("the position-copy dynamics conserves the object phase charge") {
    for (std::size_t d : {2, 3, 6}) {
        const MeasurementScheme scheme = build_discrete_von_neumann(d);
        const CMatrix charge = embed(scheme.space, position_diag(d), Side::Object);
        CHECK(commutator(charge, scheme.evolution()).fnorm() <= 1e-12);
    }
}

TEST_CASE("evolve_meter with identity dynamics returns the embedded meter") {
    Rng rng(203);
    const CMatrix m = rng.hermitian(3);
    const MeasurementScheme scheme =
        make_scheme({2, 3}, UnitaryDynamics{CMatrix::identity(6)}, pauli_z(), m,
                    CVector{cx{1.0, 0.0}, cx{0.0, 0.0}, cx{0.0, 0.0}}, "idle");
    CHECK(fnorm_diff(evolve_meter(scheme), kron(CMatrix::identity(2), m)) <= 1e-14);
}

TEST_CASE("spin exchange meter evolution matches the time-sliced product oracle") {
    const double g = 0.8, t = 0.9;
    const MeasurementScheme scheme = build_way_spin_model(2, g, t);
    const CMatrix h = scheme.hamiltonian_dynamics().hamiltonian;

    // Split into the exchange term and the free z-terms, then Strang-slice.
    CMatrix hz = kron(way_object_charge(), CMatrix::identity(2)) +
                 kron(CMatrix::identity(2), spin_z(2));
    const CMatrix hx = h - hz;
    const CMatrix u_oracle = oracles::strang_product(hx, hz, t, 10000);
    const CMatrix meter_emb = embed(scheme.space, scheme.meter, Side::Apparatus);
    const CMatrix via_oracle = u_oracle * meter_emb * u_oracle.adjoint();
    CHECK(fnorm_diff(evolve_meter(scheme), via_oracle) <= 1e-6);
}

TEST_CASE("single-mode ladder algebra with cutoff 2") {
    const FockModel fock = build_fock_model(1, 2);
    CHECK(fnorm_diff(fock.number_op, CMatrix::diagonal(std::vector<double>{0.0, 1.0, 2.0})) <=
          1e-14);
    const CMatrix& a = fock.ladder_ops[0];
    CHECK(fnorm_diff(a.adjoint() * a, CMatrix::diagonal(std::vector<double>{0.0, 1.0, 2.0})) <=
          1e-14);

    // Cutoff edge defect: [a, a^dag] = 1 - 3 |2><2|.
    CMatrix expected = CMatrix::diagonal(std::vector<double>{1.0, 1.0, -2.0});
    CHECK(fnorm_diff(commutator(a, a.adjoint()), expected) <= 1e-13);

    CHECK_THROWS_AS(build_fock_model(0, 2), BadDimensionError);
    CHECK_THROWS_AS(build_fock_model(1, 0), BadDimensionError);
}

TEST_CASE("multi-mode number operator invariants") {
    const FockModel fock = build_fock_model(2, 2);
    CMatrix rebuilt(9, 9);
    for (const CMatrix& aj : fock.ladder_ops) rebuilt += aj.adjoint() * aj;
    CHECK(fnorm_diff(rebuilt, fock.number_op) == doctest::Approx(0.0));
    for (const CMatrix& aj : fock.ladder_ops)
        for (const CMatrix& ak : fock.ladder_ops)
            CHECK(commutator(aj.adjoint() * ak, fock.number_op).fnorm() <= 1e-10);
}

TEST_CASE("spin exchange model conserves the total charge exactly") {
    const MeasurementScheme scheme = build_way_spin_model(2, 1.0, 0.7853981633974483);
    const CMatrix total = embed(scheme.space, way_object_charge(), Side::Object) +
                          embed(scheme.space, way_apparatus_charge(2), Side::Apparatus);
    CHECK(commutator(total, scheme.hamiltonian_dynamics().hamiltonian).fnorm() <= 1e-10);
    CHECK(commutator(scheme.meter, way_apparatus_charge(2)).fnorm() <= 1e-12);
    CHECK_THROWS_AS(build_way_spin_model(1, 1.0, 1.0), BadDimensionError);
}

TEST_CASE("zero coupling leaves the meter free") {
    const MeasurementScheme scheme = build_way_spin_model(3, 0.0, 0.4);
    CHECK(fnorm_diff(evolve_meter(scheme),
                     embed(scheme.space, scheme.meter, Side::Apparatus)) <= 1e-10);
    // The error of measuring sigma_x is then <(M - sigma_x)^2> directly.
    Rng rng(204);
    const CVector psi = rng.state(2);
    const CMatrix diff = embed(scheme.space, scheme.meter, Side::Apparatus) -
                         embed(scheme.space, pauli_x(), Side::Object);
    const CVector nu = kron(psi, scheme.apparatus_state);
    const double direct = std::sqrt(dot(matvec(diff, nu), matvec(diff, nu)).real());
    CHECK(measurement_error(scheme, pauli_x(), psi) == doctest::Approx(direct));
}

TEST_CASE("error bound instances on seeded states") {
    const MeasurementScheme scheme = build_way_spin_model(2, 1.0, 0.7853981633974483);
    Rng rng(205);
    for (int trial = 0; trial < 100; ++trial) {
        const BoundReport report = way_ozawa_bound(scheme, scheme.object_observable,
                                                   way_object_charge(), way_apparatus_charge(2),
                                                   rng.state(2));
        CHECK(report.satisfied);
    }
}

TEST_CASE("quarter-lattice displacement separates the pointer packets") {
    const double field = 1.5707963267948966;  // field * time = pi/2
    const MeasurementScheme scheme = build_symmetry_breaking_model(field, 1.0);
    const std::size_t d = scheme.space.apparatus_dim;

    const CMatrix binned = embed(scheme.space, sign_binned_meter(d), Side::Apparatus);
    const CMatrix evolved = heisenberg(scheme.evolution(), binned);
    const CMatrix sz = embed(scheme.space, pauli_z(), Side::Object);
    for (std::size_t k = 0; k < 2; ++k) {
        CVector psi(2, cx{0.0, 0.0});
        psi[k] = cx{1.0, 0.0};
        const CorrelationReport corr =
            perfect_correlation(sz, evolved, kron(psi, scheme.apparatus_state), 1e-8);
        CHECK(corr.equal);
    }

    const double r_sx =
        check_isolated_conservation(scheme, GroupAction::one_parameter(Side::Object, pauli_x()));
    CHECK(r_sx > 0.1);
}

TEST_CASE("zero field leaves the pointer in place") {
    const MeasurementScheme scheme = build_symmetry_breaking_model(0.0, 1.0);
    CHECK(fnorm_diff(scheme.evolution(), CMatrix::identity(scheme.space.total_dim())) <= 1e-10);
    const CMatrix binned =
        embed(scheme.space, sign_binned_meter(scheme.space.apparatus_dim), Side::Apparatus);
    const CMatrix evolved = heisenberg(scheme.evolution(), binned);
    const CMatrix sz = embed(scheme.space, pauli_z(), Side::Object);
    CVector up(2, cx{0.0, 0.0});
    up[0] = cx{1.0, 0.0};
    CHECK_FALSE(perfect_correlation(sz, evolved, kron(up, scheme.apparatus_state), 1e-8).equal);
}

TEST_CASE("lattice translation generator implements exact integer shifts") {
    const std::size_t d = 8;
    const CMatrix g = lattice_translation_generator(d);
    CHECK(g.is_hermitian());
    // exp(-i 2 pi G / d) steps one site up.
    const CMatrix step = expi(g, -6.283185307179586476925287 / double(d));
    CHECK(fnorm_diff(step, cyclic_shift(d)) <= 1e-10);
}
