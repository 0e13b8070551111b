#pragma once

#include <cstdint>
#include <vector>

#include "dgha/builders.hpp"
#include "dgha/local.hpp"
#include "dgha/matrix.hpp"

/* Deterministic test RNG (splitmix64): identical streams on every platform. */
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // uniform in [lo, hi]
    long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

private:
    std::uint64_t state_;
};

inline dgha::ExactMatrix random_matrix(TestRng& rng, dgha::FieldSpec field, int rows, int cols,
                                       long lo = -3, long hi = 3)
{
    dgha::ExactMatrix m(field, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.set(i, j, rng.range(lo, hi));
    return m;
}

/* Random invertible matrix as a product of two unitriangular factors. */
inline dgha::ExactMatrix random_invertible(TestRng& rng, dgha::FieldSpec field, int n)
{
    dgha::ExactMatrix l = dgha::ExactMatrix::identity(field, n);
    dgha::ExactMatrix u = dgha::ExactMatrix::identity(field, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            l.set(i, j, rng.range(-2, 2));
            u.set(j, i, rng.range(-2, 2));
        }
    return l * u;
}
