#include <catch2/catch_amalgamated.hpp>

#include "dgha/graded.hpp"
#include "helpers.hpp"

using namespace dgha;

namespace {

/* The length-two complex R --X--> R of free K[X]/(X^2)-modules viewed as a
 * complex of K-vector spaces: dims {-1:2, 0:2}, d(1) = x, d(x) = 0. */
VComplex two_by_two_x_complex()
{
    GradedSpace s(FieldSpec::rationals());
    s.set_dim(-1, 2);
    s.set_dim(0, 2);
    GradedMap d(s, s, +1);
    ExactMatrix blk(s.field, 2, 2);
    blk.set(1, 0, 1);  // basis (1, x): 1 -> x, x -> 0
    d.set_block(-1, blk);
    return VComplex(s, d);
}

}  // namespace

TEST_CASE("cohomology: zero differential returns identity representatives")
{
    GradedSpace s(FieldSpec::rationals());
    s.set_dim(0, 2);
    VComplex c(s);
    auto h = cohomology(c);
    CHECK(h.h.dim(0) == 2);
    CHECK(h.reps.at(0) == ExactMatrix::identity(s.field, 2));
}

TEST_CASE("cohomology: cone of the identity is acyclic")
{
    GradedSpace s(FieldSpec::rationals());
    s.set_dim(-1, 1);
    s.set_dim(0, 1);
    GradedMap d(s, s, +1);
    d.set_block(-1, ExactMatrix::identity(s.field, 1));
    auto h = cohomology(VComplex(s, d));
    CHECK(h.h.empty());
}

TEST_CASE("cohomology of the X-multiplication complex is K in degrees 0 and -1")
{
    auto c = two_by_two_x_complex();
    auto h = cohomology(c);
    CHECK(h.h.dim(-1) == 1);
    CHECK(h.h.dim(0) == 1);
    CHECK(h.h.total_dim() == 2);
}

TEST_CASE("cohomology rejects non-complexes")
{
    GradedSpace s(FieldSpec::rationals());
    s.set_dim(-1, 1);
    s.set_dim(0, 1);
    s.set_dim(1, 1);
    GradedMap d(s, s, +1);
    d.set_block(-1, ExactMatrix::identity(s.field, 1));
    d.set_block(0, ExactMatrix::identity(s.field, 1));
    CHECK_THROWS_AS(cohomology(VComplex(s, d)), Error);
}

TEST_CASE("shift: zero shift is the identity, opposite shifts invert")
{
    auto c = two_by_two_x_complex();
    auto c0 = shift(c, 0);
    CHECK(c0.space == c.space);
    CHECK(c0.d.block(-1) == c.d.block(-1));
    auto back = shift(shift(c, 3), -3);
    CHECK(back.space == c.space);
    CHECK(back.d.block(-1) == c.d.block(-1));
}

TEST_CASE("shift moves cohomology: H(c[1]) in degree d equals H(c) in degree d+1")
{
    auto c = two_by_two_x_complex();
    auto h = cohomology(shift(c, 1)).h;
    CHECK(h.dim(-2) == 1);
    CHECK(h.dim(-1) == 1);
    CHECK(h.total_dim() == 2);
}

TEST_CASE("inf/sup/amp conventions")
{
    // acyclic: inf = +inf, sup = -inf, amp = -inf
    GradedSpace s(FieldSpec::rationals());
    s.set_dim(-1, 1);
    s.set_dim(0, 1);
    GradedMap d(s, s, +1);
    d.set_block(-1, ExactMatrix::identity(s.field, 1));
    auto acyc = inf_sup_amp(VComplex(s, d));
    CHECK(acyc.acyclic);
    CHECK(acyc.inf_str() == "+inf");
    CHECK(acyc.sup_str() == "-inf");

    auto ex = inf_sup_amp(two_by_two_x_complex());
    CHECK(!ex.acyclic);
    CHECK(ex.inf == -1);
    CHECK(ex.sup == 0);
    CHECK(ex.amp == 1);

    GradedSpace pt(FieldSpec::rationals());
    pt.set_dim(0, 1);
    auto k = inf_sup_amp(VComplex(pt));
    CHECK(k.inf == 0);
    CHECK(k.sup == 0);
    CHECK(k.amp == 0);
}

/* Random complexes with known cohomology: a direct sum of elementary pieces
 * (identity cones and bare K's) conjugated by random invertible maps. */
TEST_CASE("cohomology properties on random conjugated complexes")
{
    TestRng rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        FieldSpec f = (trial % 4 == 0) ? FieldSpec::prime_field(3) : FieldSpec::rationals();
        int lo = -3, hi = 1;
        std::map<int, int> units;  // surviving K's per degree
        std::map<int, int> cones;  // cone pieces with head at degree n
        GradedSpace s(f);
        for (int n = lo; n <= hi; ++n) {
            units[n] = static_cast<int>(rng.below(3));
            cones[n] = (n > lo) ? static_cast<int>(rng.below(3)) : 0;
        }
        for (int n = lo; n <= hi; ++n) {
            int d = units[n] + cones[n] + (n < hi ? cones[n + 1] : 0);
            if (d > 0)
                s.set_dim(n, d);
        }
        // block layout per degree: [units | cone-heads(n) | cone-tails(n+1)]
        GradedMap d(s, s, +1);
        for (int n = lo; n < hi; ++n) {
            if (s.dim(n) == 0 || s.dim(n + 1) == 0)
                continue;
            ExactMatrix blk(f, s.dim(n + 1), s.dim(n));
            for (int c = 0; c < cones[n + 1]; ++c) {
                int src = units[n] + cones[n] + c;               // tail slot in degree n
                int tgt = units[n + 1] + c;                      // head slot in degree n+1
                blk.set(tgt, src, 1);
            }
            d.set_block(n, blk);
        }
        VComplex base(s, d);
        REQUIRE(base.is_complex());

        // conjugate by random invertible degreewise maps
        std::map<int, ExactMatrix> p, pinv;
        for (auto& [n, dim] : s.dims) {
            ExactMatrix pn = random_invertible(rng, f, dim);
            p[n] = pn;
            pinv[n] = *RrefSolver(pn).solve(ExactMatrix::identity(f, dim));
        }
        GradedMap dconj(s, s, +1);
        for (int n = lo; n < hi; ++n) {
            if (s.dim(n) == 0 || s.dim(n + 1) == 0)
                continue;
            dconj.set_block(n, p[n + 1] * d.block(n) * pinv[n]);
        }
        VComplex c(s, dconj);
        REQUIRE(c.is_complex());

        auto h = cohomology(c);
        for (int n = lo; n <= hi; ++n) {
            CHECK(h.h.dim(n) == units[n]);
            // rank-nullity cross-check
            int expect = c.d.block(n).kernel_basis().cols() - c.d.block(n - 1).rank();
            CHECK(h.h.dim(n) == expect);
            // representatives are cocycles
            if (h.h.dim(n) > 0)
                CHECK((c.d.block(n) * h.reps.at(n)).is_zero());
        }

        // Euler characteristic agreement
        long chi_c = 0, chi_h = 0;
        for (int n = lo; n <= hi; ++n) {
            long sign = (n % 2 == 0) ? 1 : -1;
            chi_c += sign * s.dim(n);
            chi_h += sign * h.h.dim(n);
        }
        CHECK(chi_c == chi_h);
    }
}
