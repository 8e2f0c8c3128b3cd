#include "supersel/algebra.hpp"

#include <string>
#include <utility>

namespace supersel {

CMatrix embed(const CompositeSpace& space, const CMatrix& op, Side side) {
    require_square(op, "embed");
    switch (side) {
        case Side::Object:
            if (op.rows() != space.object_dim)
                throw DimMismatchError("embed: operator dim " + std::to_string(op.rows()) +
                                       " does not match object dim " +
                                       std::to_string(space.object_dim));
            return kron(op, CMatrix::identity(space.apparatus_dim));
        case Side::Apparatus:
            if (op.rows() != space.apparatus_dim)
                throw DimMismatchError("embed: operator dim " + std::to_string(op.rows()) +
                                       " does not match apparatus dim " +
                                       std::to_string(space.apparatus_dim));
            return kron(CMatrix::identity(space.object_dim), op);
        case Side::Composite:
            if (op.rows() != space.total_dim())
                throw DimMismatchError("embed: operator dim does not match composite dim");
            return op;
    }
    throw DimMismatchError("embed: unknown side");
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    require_square(a, "commutator");
    require_same_shape(a, b, "commutator");
    return a * b - b * a;
}

CMatrix heisenberg(const CMatrix& u, const CMatrix& b) {
    require_unitary(u, "heisenberg");
    require_same_shape(u, b, "heisenberg");
    return u * b * u.adjoint();
}

const std::vector<double>& GroupAction::default_samples() {
    static const std::vector<double> samples{1.0, -1.0, 1.0471975511965977, -1.0471975511965977,
                                             0.7071};
    return samples;
}

GroupAction GroupAction::one_parameter(Side side, CMatrix generator,
                                       std::vector<double> parameter_samples) {
    require_hermitian(generator, "GroupAction::one_parameter");
    GroupAction a;
    a.kind_ = Kind::OneParameter;
    a.side_ = side;
    a.dim_ = generator.rows();
    a.generator_ = std::move(generator);
    a.samples_ = std::move(parameter_samples);
    return a;
}

GroupAction GroupAction::finite(Side side, std::vector<CMatrix> unitaries) {
    if (unitaries.empty()) throw BadDimensionError("GroupAction::finite: empty unitary list");
    for (const CMatrix& u : unitaries) require_unitary(u, "GroupAction::finite");
    const std::size_t dim = unitaries.front().rows();
    for (const CMatrix& u : unitaries)
        if (u.rows() != dim) throw DimMismatchError("GroupAction::finite: mixed dimensions");
    if (fnorm_diff(unitaries.front(), CMatrix::identity(dim)) > 1e-10)
        throw BadDimensionError("GroupAction::finite: element 0 must be the identity");
    GroupAction a;
    a.kind_ = Kind::Finite;
    a.side_ = side;
    a.dim_ = dim;
    a.unitaries_ = std::move(unitaries);
    return a;
}

CMatrix GroupAction::unitary_at(double s) const {
    if (kind_ != Kind::OneParameter)
        throw UnknownElementError("GroupAction: real parameter on a finite action");
    return expi(generator_, s);
}

CMatrix GroupAction::unitary_element(std::size_t g) const {
    if (kind_ != Kind::Finite)
        throw UnknownElementError("GroupAction: group index on a one-parameter action");
    if (g >= unitaries_.size())
        throw UnknownElementError("GroupAction: element index " + std::to_string(g) +
                                  " out of range");
    return unitaries_[g];
}

std::vector<CMatrix> GroupAction::sampled_unitaries() const {
    std::vector<CMatrix> out;
    if (kind_ == Kind::OneParameter) {
        out.reserve(samples_.size());
        for (double s : samples_) out.push_back(unitary_at(s));
    } else {
        out = unitaries_;
    }
    return out;
}

CMatrix act(const GroupAction& action, double s, const CMatrix& x) {
    if (x.rows() != action.dim())
        throw DimMismatchError("act: operand dim does not match the action's side");
    return heisenberg(action.unitary_at(s), x);
}

CMatrix act(const GroupAction& action, std::size_t g, const CMatrix& x) {
    if (x.rows() != action.dim())
        throw DimMismatchError("act: operand dim does not match the action's side");
    return heisenberg(action.unitary_element(g), x);
}

SectorDecomposition sector_decompose(const CMatrix& charge, double cluster_abs_tol,
                                     double cluster_rel_tol) {
    require_hermitian(charge, "sector_decompose");
    const EigResult eg = eig_hermitian(charge);
    const std::vector<EigenCluster> clusters =
        cluster_eigenvalues(eg.values, cluster_abs_tol, cluster_rel_tol);

    SectorDecomposition sec;
    for (const EigenCluster& cl : clusters) {
        sec.charge_eigenvalues.push_back(cl.value);
        sec.sector_projectors.push_back(cluster_projector(eg.vectors, cl.members));
        sec.sector_dims.push_back(cl.members.size());
    }
    return sec;
}

double off_sector_norm(const CMatrix& op, const SectorDecomposition& sectors) {
    if (sectors.sector_projectors.empty())
        throw DimMismatchError("off_sector_norm: empty decomposition");
    require_same_shape(op, sectors.sector_projectors.front(), "off_sector_norm");
    double total_sq = 0.0;
    const std::size_t k = sectors.sector_projectors.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            const CMatrix block =
                sectors.sector_projectors[i] * op * sectors.sector_projectors[j];
            const double f = block.fnorm();
            total_sq += f * f;
        }
    return std::sqrt(total_sq);
}

}  // namespace supersel
