#ifndef SUPERSEL_RNG_HPP
#define SUPERSEL_RNG_HPP

#include <cstdint>
#include <random>

#include "supersel/cmatrix.hpp"

namespace supersel {

// splitmix64 step, used to derive independent stream seeds from a master
// seed so concurrent consumers stay deterministic regardless of scheduling.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic RNG. Doubles are produced from raw mt19937_64 output rather
// than std::*_distribution, whose exact sequences are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t integer(std::uint64_t bound) {  // [0, bound)
        return engine_() % bound;
    }

    double gaussian() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    cx complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return cx{re, im};
    }

    CVector state(std::size_t dim) {
        CVector v(dim);
        for (cx& z : v) z = complex_gaussian();
        return normalized(v);
    }

    CMatrix hermitian(std::size_t dim, double scale = 1.0) {
        CMatrix g(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_gaussian();
        CMatrix h = g + g.adjoint();
        h *= cx{0.5 * scale, 0.0};
        return h;
    }

private:
    std::mt19937_64 engine_;
};

// Haar-like random unitary: exponential of a random Hermitian generator.
CMatrix random_unitary(Rng& rng, std::size_t dim);

}  // namespace supersel

#endif
