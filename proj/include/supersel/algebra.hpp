#ifndef SUPERSEL_ALGEBRA_HPP
#define SUPERSEL_ALGEBRA_HPP

#include <cstddef>
#include <vector>

#include "supersel/cmatrix.hpp"
#include "supersel/eig.hpp"

namespace supersel {

enum class Side { Object, Apparatus, Composite };

// Ordered tensor factorization, object (x) apparatus.
struct CompositeSpace {
    std::size_t object_dim = 0;
    std::size_t apparatus_dim = 0;

    std::size_t total_dim() const { return object_dim * apparatus_dim; }
};

// A (x) 1 or 1 (x) M on the composite space.
CMatrix embed(const CompositeSpace& space, const CMatrix& op, Side side);

// ab - ba.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

// u b u^†.
CMatrix heisenberg(const CMatrix& u, const CMatrix& b);

// A symmetry action on one factor (or on a whole space): either a
// one-parameter group with a Hermitian generator, conjugation by
// e^{i * generator * s}, or a finite group given by an explicit unitary list
// whose element 0 is the identity.
class GroupAction {
public:
    enum class Kind { OneParameter, Finite };

    static GroupAction one_parameter(Side side, CMatrix generator,
                                     std::vector<double> parameter_samples = default_samples());
    static GroupAction finite(Side side, std::vector<CMatrix> unitaries);

    Kind kind() const { return kind_; }
    Side side() const { return side_; }
    std::size_t dim() const { return dim_; }
    const CMatrix& generator() const { return generator_; }
    const std::vector<double>& parameter_samples() const { return samples_; }
    std::size_t element_count() const { return unitaries_.size(); }

    CMatrix unitary_at(double s) const;            // one-parameter only
    CMatrix unitary_element(std::size_t g) const;  // finite only

    // The unitaries the checking layer probes: the sampled parameters for a
    // one-parameter action, every element for a finite one.
    std::vector<CMatrix> sampled_unitaries() const;

    static const std::vector<double>& default_samples();

private:
    GroupAction() = default;
    Kind kind_ = Kind::OneParameter;
    Side side_ = Side::Object;
    std::size_t dim_ = 0;
    CMatrix generator_;
    std::vector<double> samples_;
    std::vector<CMatrix> unitaries_;
};

CMatrix act(const GroupAction& action, double s, const CMatrix& x);
CMatrix act(const GroupAction& action, std::size_t g, const CMatrix& x);

struct SectorDecomposition {
    std::vector<double> charge_eigenvalues;
    std::vector<CMatrix> sector_projectors;
    std::vector<std::size_t> sector_dims;
};

// Eigenvalue-block decomposition of a Hermitian charge.
SectorDecomposition sector_decompose(const CMatrix& charge, double cluster_abs_tol = 1e-9,
                                     double cluster_rel_tol = 1e-9);

// sqrt(sum_{i != j} ||P_i op P_j||_F^2): the total weight of op connecting
// distinct sectors. Zero exactly when op commutes with the charge.
double off_sector_norm(const CMatrix& op, const SectorDecomposition& sectors);

}  // namespace supersel

#endif
