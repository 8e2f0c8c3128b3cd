#ifndef SUPERSEL_SCHEMES_HPP
#define SUPERSEL_SCHEMES_HPP

#include <string>
#include <variant>
#include <vector>

#include "supersel/algebra.hpp"
#include "supersel/cmatrix.hpp"

namespace supersel {

struct HamiltonianDynamics {
    CMatrix hamiltonian;
    double time = 0.0;
};

struct UnitaryDynamics {
    CMatrix unitary;
};

using Dynamics = std::variant<HamiltonianDynamics, UnitaryDynamics>;

// A measurement scheme: composite space, dynamics, object observable A,
// meter M on the apparatus factor, and the prepared apparatus state.
// The composite initial state is psi (x) apparatus_state per object state psi.
struct MeasurementScheme {
    CompositeSpace space;
    Dynamics dynamics;
    CMatrix object_observable;
    CMatrix meter;
    CVector apparatus_state;
    std::string label;

    bool has_hamiltonian() const { return std::holds_alternative<HamiltonianDynamics>(dynamics); }
    const HamiltonianDynamics& hamiltonian_dynamics() const {
        return std::get<HamiltonianDynamics>(dynamics);
    }
    // The evolution unitary: e^{iHt} in the Hamiltonian form, the stored
    // matrix otherwise.
    CMatrix evolution() const;

    void validate() const;
};

MeasurementScheme make_scheme(CompositeSpace space, Dynamics dynamics, CMatrix object_observable,
                              CMatrix meter, CVector apparatus_state, std::string label);

// alpha(1 (x) M): the meter after the measurement interaction.
CMatrix evolve_meter(const MeasurementScheme& scheme);

// ---------------------------------------------------------------------------
// Discrete Weyl / lattice helpers.

CMatrix cyclic_shift(std::size_t d);     // S|k> = |k+1 mod d>
CMatrix clock_phase(std::size_t d);      // diag(1, w, ..., w^{d-1}), w = e^{2 pi i / d}
CMatrix position_diag(std::size_t d);    // diag(0, 1, ..., d-1)
CMatrix fourier(std::size_t d);
// Hermitian generator of lattice translations with centered integer spectrum:
// exp(-i 2 pi G / d) is the one-site up-shift, so exp(-i theta G) displaces by
// theta * d / (2 pi) sites (exactly, for integer displacements).
CMatrix lattice_translation_generator(std::size_t d);
// diag(sign(x - threshold)); the one-argument form bins at the lattice
// midpoint (d - 1) / 2.
CMatrix sign_binned_meter(std::size_t d, double threshold);
CMatrix sign_binned_meter(std::size_t d);
CVector gaussian_pointer(std::size_t d, double center, double width);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix spin_z(std::size_t dim);      // diag(j, j-1, ..., -j), j = (dim-1)/2
CMatrix spin_raise(std::size_t dim);  // S_+ in the same basis

// ---------------------------------------------------------------------------
// Canonical builders.

// Position measurement on Z_d: a controlled cyclic shift copies the object
// position onto a sharp pointer. Object observable and meter are both
// diag(0..d-1); the apparatus starts in |0>.
MeasurementScheme build_discrete_von_neumann(std::size_t d);

// The cyclic-shift symmetry of the Z_d model (finite group, d elements).
GroupAction vn_shift_action(std::size_t d, Side side);
// The position-phase symmetry (one-parameter, generator diag(0..d-1)).
GroupAction vn_phase_action(std::size_t d, Side side);

struct FockModel {
    std::size_t modes = 0;
    std::size_t cutoff = 0;
    std::vector<CMatrix> ladder_ops;  // annihilation operator per mode
    CMatrix number_op;
};

// Truncated occupation-number space: `modes` modes, each capped at `cutoff`
// quanta. The number operator is the sum of per-mode occupations.
FockModel build_fock_model(std::size_t modes, std::size_t cutoff);

// Spin exchange model: object spin-1/2 with observable sigma_x and charge
// sigma_z / 2; apparatus spin of the given dimension with charge S_z and a
// meter commuting with it. The exchange coupling conserves the total charge
// exactly.
MeasurementScheme build_way_spin_model(std::size_t apparatus_spin_dim, double coupling,
                                       double time);
CMatrix way_object_charge();                          // sigma_z / 2
CMatrix way_apparatus_charge(std::size_t apparatus_spin_dim);  // S_z

inline constexpr std::size_t kBreakingApparatusDim = 16;
inline constexpr double kBreakingPointerWidth = 0.6;

// Stern-Gerlach-like pointer displacement: H = field * sigma_z (x) G with G a
// pointer-translation generator, which breaks the object's sigma_x symmetry
// explicitly. field * time = pi/2 displaces the packets by a quarter lattice
// in opposite directions.
MeasurementScheme build_symmetry_breaking_model(double field, double time,
                                                std::size_t apparatus_dim = kBreakingApparatusDim);

}  // namespace supersel

#endif
