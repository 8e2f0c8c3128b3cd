#include "doctest.h"

#include "supersel/algebra.hpp"
#include "supersel/rng.hpp"
#include "supersel/schemes.hpp"

using namespace supersel;

TEST_CASE("embed places operators on their factor") {
    const CompositeSpace space{2, 3};
    const CMatrix a = embed(space, pauli_z(), Side::Object);
    CHECK(fnorm_diff(a, kron(pauli_z(), CMatrix::identity(3))) == doctest::Approx(0.0));
    CHECK_THROWS_AS(embed(space, CMatrix::identity(3), Side::Object), DimMismatchError);

    // Disjoint factors commute exactly.
    const CompositeSpace qubits{2, 2};
    const CMatrix za = embed(qubits, pauli_z(), Side::Object);
    const CMatrix xb = embed(qubits, pauli_x(), Side::Apparatus);
    CHECK(commutator(za, xb).fnorm() <= 1e-12);
}

TEST_CASE("commutator su(2) identity and antisymmetry") {
    CMatrix expected = pauli_z();
    expected *= cx{0.0, 2.0};
    CHECK(fnorm_diff(commutator(pauli_x(), pauli_y()), expected) <= 1e-15);

    Rng rng(21);
    const CMatrix a = rng.hermitian(4);
    CHECK(commutator(a, a).fnorm() <= 1e-14);
    CHECK_THROWS_AS(commutator(a, CMatrix::identity(3)), DimMismatchError);
}

TEST_CASE("clock/shift pairs have traceless commutators at every dimension") {
    // A finite-dimensional pair can never satisfy [q, p] = i hbar 1: the left
    // side is traceless, the right is not. The discrete model lives with the
    // clock/shift pair instead.
    for (std::size_t d = 2; d <= 10; ++d) {
        const CMatrix x = cyclic_shift(d);
        const CMatrix z = clock_phase(d);
        const cx tr = commutator(x, z).trace();
        CHECK(std::abs(tr) <= 1e-12);
    }
}

TEST_CASE("heisenberg basics and homomorphism") {
    Rng rng(22);
    const CMatrix b = rng.hermitian(4);
    CHECK(fnorm_diff(heisenberg(CMatrix::identity(4), b), b) == doctest::Approx(0.0));
    CHECK_THROWS_AS(heisenberg(b, b), NotUnitaryError);

    const CMatrix u = random_unitary(rng, 6);
    const CMatrix c = rng.hermitian(6);
    const CMatrix bb = rng.hermitian(6);
    CHECK(fnorm_diff(heisenberg(u, bb * c), heisenberg(u, bb) * heisenberg(u, c)) <= 1e-10);
    // Commutators are preserved.
    CHECK(fnorm_diff(heisenberg(u, commutator(bb, c)),
                     commutator(heisenberg(u, bb), heisenberg(u, c))) <= 1e-10);
}

TEST_CASE("heisenberg on the controlled-shift: pointer plus object mod 2") {
    const MeasurementScheme scheme = build_discrete_von_neumann(2);
    const CMatrix cnot = scheme.evolution();
    const CMatrix q = CMatrix::diagonal(std::vector<double>{0.0, 1.0});
    const CMatrix evolved = heisenberg(cnot, kron(CMatrix::identity(2), q));
    const CMatrix expected = kron(q, CMatrix::identity(2)) + kron(CMatrix::identity(2), q) -
                             kron(q, q) * cx{2.0, 0.0};
    CHECK(fnorm_diff(evolved, expected) <= 1e-14);
}

TEST_CASE("one-parameter actions compose and leave s=0 fixed") {
    Rng rng(23);
    const GroupAction rot = GroupAction::one_parameter(Side::Object, rng.hermitian(3));
    const CMatrix x = rng.hermitian(3);
    CHECK(fnorm_diff(act(rot, 0.0, x), x) <= 1e-12);
    const CMatrix twice = act(rot, 0.4, act(rot, 0.3, x));
    CHECK(fnorm_diff(twice, act(rot, 0.7, x)) <= 1e-9);
}

TEST_CASE("the number charge generates the gauge phase on a ladder operator") {
    const FockModel fock = build_fock_model(1, 3);
    const GroupAction gauge = GroupAction::one_parameter(Side::Composite, fock.number_op);
    for (double theta : {0.7071, -1.3, 2.5}) {
        CMatrix expected = fock.ladder_ops[0];
        expected *= std::polar(1.0, -theta);
        CHECK(fnorm_diff(act(gauge, theta, fock.ladder_ops[0]), expected) <= 1e-10);
    }
}

TEST_CASE("rotation generated by sigma_z/2 at pi flips sigma_x") {
    CMatrix half_z = pauli_z();
    half_z *= cx{0.5, 0.0};
    const GroupAction rot = GroupAction::one_parameter(Side::Object, half_z);
    CMatrix minus_x = pauli_x();
    minus_x *= cx{-1.0, 0.0};
    CHECK(fnorm_diff(act(rot, 3.14159265358979323846, pauli_x()), minus_x) <= 1e-12);
}

TEST_CASE("finite actions validate their element list") {
    const std::vector<CMatrix> good{CMatrix::identity(2), pauli_x()};
    const GroupAction action = GroupAction::finite(Side::Object, good);
    CHECK(action.element_count() == 2);
    CHECK(fnorm_diff(act(action, std::size_t{1}, pauli_z()),
                     heisenberg(pauli_x(), pauli_z())) <= 1e-14);
    CHECK_THROWS_AS(action.unitary_element(2), UnknownElementError);
    CHECK_THROWS_AS(act(action, 0.5, pauli_z()), UnknownElementError);

    const std::vector<CMatrix> bad{pauli_x(), CMatrix::identity(2)};
    CHECK_THROWS_AS(GroupAction::finite(Side::Object, bad), BadDimensionError);
}

TEST_CASE("sector decomposition basics") {
    const SectorDecomposition trivial = sector_decompose(CMatrix::identity(4));
    REQUIRE(trivial.sector_dims.size() == 1);
    CHECK(trivial.sector_dims[0] == 4);

    const SectorDecomposition two = sector_decompose(pauli_z());
    REQUIRE(two.sector_dims.size() == 2);
    CHECK(two.sector_dims[0] == 1);
    CHECK(two.sector_dims[1] == 1);
    CHECK(two.charge_eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(two.charge_eigenvalues[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(sector_decompose(cyclic_shift(3)), NotHermitianError);
}

TEST_CASE("number-operator sectors on two modes with cutoff 1") {
    const FockModel fock = build_fock_model(2, 1);
    const SectorDecomposition sectors = sector_decompose(fock.number_op);
    REQUIRE(sectors.sector_dims.size() == 3);
    CHECK(sectors.sector_dims[0] == 1);
    CHECK(sectors.sector_dims[1] == 2);
    CHECK(sectors.sector_dims[2] == 1);
    CHECK(sectors.charge_eigenvalues[0] == doctest::Approx(0.0));
    CHECK(sectors.charge_eigenvalues[1] == doctest::Approx(1.0));
    CHECK(sectors.charge_eigenvalues[2] == doctest::Approx(2.0));

    // Projector completeness, idempotence, mutual orthogonality, and
    // commutation with the charge.
    CMatrix sum(4, 4);
    for (std::size_t i = 0; i < sectors.sector_projectors.size(); ++i) {
        const CMatrix& p = sectors.sector_projectors[i];
        CHECK(fnorm_diff(p * p, p) <= 1e-10);
        CHECK(commutator(p, fock.number_op).fnorm() <= 1e-10);
        for (std::size_t j = i + 1; j < sectors.sector_projectors.size(); ++j)
            CHECK((p * sectors.sector_projectors[j]).fnorm() <= 1e-10);
        sum += p;
    }
    CHECK(fnorm_diff(sum, CMatrix::identity(4)) <= 1e-10);
}

TEST_CASE("off-sector norm vanishes exactly for charge-commuting operators") {
    const FockModel fock = build_fock_model(2, 2);
    const SectorDecomposition sectors = sector_decompose(fock.number_op);

    const CMatrix hopping = fock.ladder_ops[0].adjoint() * fock.ladder_ops[1];
    CHECK(off_sector_norm(hopping, sectors) <= 1e-12);
    CHECK(off_sector_norm(CMatrix::identity(9), sectors) <= 1e-14);

    CMatrix quad = fock.ladder_ops[0] + fock.ladder_ops[0].adjoint();
    quad *= cx{0.5, 0.0};
    const double off = off_sector_norm(quad, sectors);
    CHECK(off > 0.1);
    // Explicit block extraction: the quadrature changes the total number by
    // +-1, so it is entirely off-diagonal and the off-sector weight is its
    // whole norm.
    CHECK(off == doctest::Approx(quad.fnorm()).epsilon(1e-10));
}

TEST_CASE("off-sector norm and charge commutation vanish together") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + rng.integer(10);  // dims <= 12
        const CMatrix j = rng.hermitian(n);
        const SectorDecomposition sectors = sector_decompose(j);

        // Commuting case: a polynomial in the charge.
        CMatrix poly = CMatrix::identity(n);
        poly *= cx{rng.uniform(-1.0, 1.0), 0.0};
        CMatrix jj = j;
        jj *= cx{rng.uniform(-1.0, 1.0), 0.0};
        poly += jj;
        poly += j * j * cx{rng.uniform(-1.0, 1.0), 0.0};
        CHECK(off_sector_norm(poly, sectors) <= 1e-9);
        CHECK(commutator(j, poly).fnorm() <= 1e-8 * std::max(1.0, j.fnorm() * poly.fnorm()));

        // Generic case: both sides are far from zero.
        const CMatrix a = rng.hermitian(n);
        const double comm = commutator(j, a).fnorm();
        if (comm > 1e-6) CHECK(off_sector_norm(a, sectors) > 1e-9);
    }
}
