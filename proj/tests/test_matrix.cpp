#include <catch2/catch_amalgamated.hpp>

#include "dgha/matrix.hpp"
#include "helpers.hpp"

using namespace dgha;

static ExactMatrix from_rows(FieldSpec f, std::vector<std::vector<long>> rows)
{
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    ExactMatrix m(f, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    return m;
}

TEST_CASE("rref: identity is fixed with pivots [0,1]")
{
    auto id = ExactMatrix::identity(FieldSpec::rationals(), 2);
    auto r = id.rref();
    CHECK(r.mat == id);
    CHECK(r.pivots == std::vector<int>{0, 1});
}

TEST_CASE("rref: dependent rows over Q")
{
    auto m = from_rows(FieldSpec::rationals(), {{1, 2}, {2, 4}});
    auto r = m.rref();
    CHECK(r.pivots == std::vector<int>{0});
    CHECK(m.rank() == 1);
}

TEST_CASE("rref over F2: [[1,1],[1,2]] has rank 2")
{
    // hand row-reduction: over F2 the matrix is [[1,1],[1,0]]; r2 += r1 gives
    // [[1,1],[0,1]] and back-substitution yields the identity
    auto f2 = FieldSpec::prime_field(2);
    auto m = from_rows(f2, {{1, 1}, {1, 2}});
    auto r = m.rref();
    CHECK(r.mat == ExactMatrix::identity(f2, 2));
    CHECK(r.pivots.size() == 2);
}

TEST_CASE("kernel: zero 3x3 has identity kernel, identity has none")
{
    auto z = ExactMatrix::zeros(FieldSpec::rationals(), 3, 3);
    CHECK(z.kernel_basis() == ExactMatrix::identity(FieldSpec::rationals(), 3));
    CHECK(ExactMatrix::identity(FieldSpec::rationals(), 3).kernel_basis().cols() == 0);
}

TEST_CASE("kernel of [[1,1]] is span{(1,-1)}")
{
    auto m = from_rows(FieldSpec::rationals(), {{1, 1}});
    auto k = m.kernel_basis();
    REQUIRE(k.cols() == 1);
    // solved by hand: x0 + x1 = 0 with free x1 = 1
    CHECK(k.get(0, 0) == mpq_class(-1));
    CHECK(k.get(1, 0) == mpq_class(1));
}

TEST_CASE("solve: identity, free variable zeroed, and no-solution cases")
{
    auto q = FieldSpec::rationals();
    auto id = ExactMatrix::identity(q, 2);
    ExactMatrix b(q, 2, 1);
    b.set(0, 0, 5);
    b.set(1, 0, -7);
    CHECK(*id.solve(b) == b);

    auto m = from_rows(q, {{1, 1}});
    ExactMatrix zero1(q, 1, 1);
    auto x = m.solve(zero1);
    REQUIRE(x.has_value());
    CHECK(x->is_zero());  // free variable set to 0

    auto z = from_rows(q, {{0}});
    ExactMatrix one(q, 1, 1);
    one.set(0, 0, 1);
    CHECK(!z.solve(one).has_value());
}

TEST_CASE("matrix properties on random instances")
{
    TestRng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        FieldSpec f = (trial % 3 == 0) ? FieldSpec::prime_field(trial % 2 ? 5 : 2)
                                       : FieldSpec::rationals();
        int rows = static_cast<int>(rng.below(6));
        int cols = static_cast<int>(rng.below(6));
        ExactMatrix m = random_matrix(rng, f, rows, cols);

        ExactMatrix k = m.kernel_basis();
        CHECK((m * k).is_zero());
        CHECK(m.rank() + k.cols() == cols);

        // rref is idempotent
        auto r = m.rref();
        CHECK(r.mat.rref().mat == r.mat);

        // solve returns an exact solution whenever one exists
        if (cols > 0) {
            ExactMatrix x0 = random_matrix(rng, f, cols, 1);
            ExactMatrix b = m * x0;
            auto x = m.solve(b);
            REQUIRE(x.has_value());
            CHECK(m * *x == b);
        }
    }
}

TEST_CASE("RrefSolver agrees with one-shot solve and rejects outside image")
{
    TestRng rng(99);
    auto q = FieldSpec::rationals();
    ExactMatrix m = random_matrix(rng, q, 4, 3);
    RrefSolver solver(m);
    for (int t = 0; t < 10; ++t) {
        ExactMatrix x0 = random_matrix(rng, q, 3, 1);
        ExactMatrix b = m * x0;
        auto x = solver.solve(b);
        REQUIRE(x.has_value());
        CHECK(m * *x == b);
    }
}
