#include "supersel/schemes.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "supersel/eig.hpp"

namespace supersel {

namespace {
constexpr double kTau = 6.283185307179586476925287;
}

CMatrix MeasurementScheme::evolution() const {
    if (has_hamiltonian()) {
        const auto& hd = hamiltonian_dynamics();
        return expi(hd.hamiltonian, hd.time);
    }
    return std::get<UnitaryDynamics>(dynamics).unitary;
}

void MeasurementScheme::validate() const {
    if (space.object_dim == 0 || space.apparatus_dim == 0)
        throw BadDimensionError("MeasurementScheme: zero-dimensional factor");
    if (object_observable.rows() != space.object_dim || !object_observable.square())
        throw DimMismatchError("MeasurementScheme: object observable dim mismatch");
    require_hermitian(object_observable, "MeasurementScheme.object_observable");
    if (meter.rows() != space.apparatus_dim || !meter.square())
        throw DimMismatchError("MeasurementScheme: meter dim mismatch");
    require_hermitian(meter, "MeasurementScheme.meter");
    if (apparatus_state.size() != space.apparatus_dim)
        throw DimMismatchError("MeasurementScheme: apparatus state dim mismatch");
    require_unit_vector(apparatus_state, "MeasurementScheme.apparatus_state");
    if (has_hamiltonian()) {
        const auto& hd = hamiltonian_dynamics();
        if (hd.hamiltonian.rows() != space.total_dim())
            throw DimMismatchError("MeasurementScheme: Hamiltonian dim mismatch");
        require_hermitian(hd.hamiltonian, "MeasurementScheme.hamiltonian");
    } else {
        const CMatrix& u = std::get<UnitaryDynamics>(dynamics).unitary;
        if (u.rows() != space.total_dim())
            throw DimMismatchError("MeasurementScheme: unitary dim mismatch");
        require_unitary(u, "MeasurementScheme.unitary");
    }
}

MeasurementScheme make_scheme(CompositeSpace space, Dynamics dynamics, CMatrix object_observable,
                              CMatrix meter, CVector apparatus_state, std::string label) {
    MeasurementScheme s{std::move(space),        std::move(dynamics), std::move(object_observable),
                        std::move(meter),        std::move(apparatus_state),
                        std::move(label)};
    s.validate();
    return s;
}

CMatrix evolve_meter(const MeasurementScheme& scheme) {
    return heisenberg(scheme.evolution(), embed(scheme.space, scheme.meter, Side::Apparatus));
}

// ---------------------------------------------------------------------------

CMatrix cyclic_shift(std::size_t d) {
    CMatrix s(d, d);
    for (std::size_t k = 0; k < d; ++k) s((k + 1) % d, k) = cx{1.0, 0.0};
    return s;
}

CMatrix clock_phase(std::size_t d) {
    CVector diag(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = std::polar(1.0, kTau * double(k) / double(d));
    return CMatrix::diagonal(diag);
}

CMatrix position_diag(std::size_t d) {
    std::vector<double> diag(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = double(k);
    return CMatrix::diagonal(diag);
}

CMatrix fourier(std::size_t d) {
    CMatrix f(d, d);
    const double scale = 1.0 / std::sqrt(double(d));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
            f(j, k) = std::polar(scale, kTau * double(j) * double(k) / double(d));
    return f;
}

CMatrix lattice_translation_generator(std::size_t d) {
    const CMatrix f = fourier(d);
    std::vector<double> freq(d);
    for (std::size_t k = 0; k < d; ++k)
        freq[k] = (k <= d / 2) ? double(k) : double(k) - double(d);
    return f * CMatrix::diagonal(freq) * f.adjoint();
}

CMatrix sign_binned_meter(std::size_t d, double threshold) {
    std::vector<double> diag(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = (double(k) > threshold) ? 1.0 : -1.0;
    return CMatrix::diagonal(diag);
}

CMatrix sign_binned_meter(std::size_t d) {
    return sign_binned_meter(d, (double(d) - 1.0) / 2.0);
}

CVector gaussian_pointer(std::size_t d, double center, double width) {
    CVector v(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double dx = double(k) - center;
        v[k] = cx{std::exp(-dx * dx / (2.0 * width * width)), 0.0};
    }
    return normalized(v);
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m(0, 1) = m(1, 0) = cx{1.0, 0.0};
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m(0, 1) = cx{0.0, -1.0};
    m(1, 0) = cx{0.0, 1.0};
    return m;
}

CMatrix pauli_z() { return CMatrix::diagonal(std::vector<double>{1.0, -1.0}); }

CMatrix spin_z(std::size_t dim) {
    const double j = (double(dim) - 1.0) / 2.0;
    std::vector<double> diag(dim);
    for (std::size_t i = 0; i < dim; ++i) diag[i] = j - double(i);
    return CMatrix::diagonal(diag);
}

CMatrix spin_raise(std::size_t dim) {
    const double j = (double(dim) - 1.0) / 2.0;
    CMatrix sp(dim, dim);
    // |j,m> sits at index i = j - m; S+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>.
    for (std::size_t i = 1; i < dim; ++i) {
        const double m = j - double(i);
        sp(i - 1, i) = cx{std::sqrt(j * (j + 1.0) - m * (m + 1.0)), 0.0};
    }
    return sp;
}

// ---------------------------------------------------------------------------

MeasurementScheme build_discrete_von_neumann(std::size_t d) {
    if (d < 2) throw BadDimensionError("build_discrete_von_neumann: need d >= 2");
    // X steps the pointer down; the inverse evolution then writes the object
    // position onto a pointer prepared in |0>, so the meter reads the object
    // value itself (not its negative).
    const CMatrix x = cyclic_shift(d).adjoint();
    CMatrix u(d * d, d * d);
    CMatrix xq = CMatrix::identity(d);
    for (std::size_t q = 0; q < d; ++q) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) u(q * d + i, q * d + j) = xq(i, j);
        xq = x * xq;
    }
    CVector pointer(d, cx{0.0, 0.0});
    pointer[0] = cx{1.0, 0.0};
    return make_scheme({d, d}, UnitaryDynamics{u}, position_diag(d), position_diag(d), pointer,
                       "discrete-von-neumann-d" + std::to_string(d));
}

GroupAction vn_shift_action(std::size_t d, Side side) {
    std::vector<CMatrix> elements;
    const CMatrix s = cyclic_shift(d);
    CMatrix sb = CMatrix::identity(d);
    for (std::size_t b = 0; b < d; ++b) {
        elements.push_back(sb);
        sb = s * sb;
    }
    return GroupAction::finite(side, std::move(elements));
}

GroupAction vn_phase_action(std::size_t d, Side side) {
    return GroupAction::one_parameter(side, position_diag(d));
}

FockModel build_fock_model(std::size_t modes, std::size_t cutoff) {
    if (modes < 1 || cutoff < 1) throw BadDimensionError("build_fock_model: need modes,cutoff >= 1");
    const std::size_t per_mode = cutoff + 1;
    CMatrix a(per_mode, per_mode);
    for (std::size_t n = 1; n <= cutoff; ++n) a(n - 1, n) = cx{std::sqrt(double(n)), 0.0};

    FockModel model;
    model.modes = modes;
    model.cutoff = cutoff;
    std::size_t total = 1;
    for (std::size_t j = 0; j < modes; ++j) total *= per_mode;
    model.number_op = CMatrix(total, total);
    for (std::size_t j = 0; j < modes; ++j) {
        CMatrix aj = (j == 0) ? a : CMatrix::identity(per_mode);
        for (std::size_t k = 1; k < modes; ++k)
            aj = kron(aj, (k == j) ? a : CMatrix::identity(per_mode));
        model.number_op += aj.adjoint() * aj;
        model.ladder_ops.push_back(std::move(aj));
    }
    return model;
}

CMatrix way_object_charge() { return pauli_z() * cx{0.5, 0.0}; }

CMatrix way_apparatus_charge(std::size_t apparatus_spin_dim) { return spin_z(apparatus_spin_dim); }

MeasurementScheme build_way_spin_model(std::size_t apparatus_spin_dim, double coupling,
                                       double time) {
    if (apparatus_spin_dim < 2)
        throw BadDimensionError("build_way_spin_model: need apparatus_spin_dim >= 2");
    const std::size_t n = apparatus_spin_dim;
    const CMatrix sp = spin_raise(2);      // sigma_+
    const CMatrix sm = sp.adjoint();       // sigma_-
    const CMatrix ap = spin_raise(n);      // apparatus S_+
    const CMatrix am = ap.adjoint();

    // Exchange coupling plus free z-terms; both conserve sigma_z/2 + S_z.
    CMatrix h = kron(sp, am) + kron(sm, ap);
    h *= cx{coupling, 0.0};
    h += kron(way_object_charge(), CMatrix::identity(n));
    h += kron(CMatrix::identity(2), spin_z(n));

    CVector xi(n, cx{1.0, 0.0});
    xi = normalized(xi);
    return make_scheme({2, n}, HamiltonianDynamics{h, time}, pauli_x(), spin_z(n), xi,
                       "way-spin-n" + std::to_string(n));
}

MeasurementScheme build_symmetry_breaking_model(double field, double time,
                                                std::size_t apparatus_dim) {
    if (apparatus_dim < 4)
        throw BadDimensionError("build_symmetry_breaking_model: apparatus dim too small");
    const std::size_t d = apparatus_dim;
    CMatrix h = kron(pauli_z(), lattice_translation_generator(d));
    h *= cx{field, 0.0};
    const double center = (double(d) - 1.0) / 2.0;
    return make_scheme({2, d}, HamiltonianDynamics{h, time}, pauli_z(), position_diag(d),
                       gaussian_pointer(d, center, kBreakingPointerWidth), "symmetry-breaking");
}

}  // namespace supersel
