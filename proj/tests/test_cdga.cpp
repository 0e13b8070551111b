#include <catch2/catch_amalgamated.hpp>

#include "dgha/builders.hpp"
#include "dgha/local.hpp"
#include "helpers.hpp"

using namespace dgha;

TEST_CASE("field algebra validates and is local with m = 0")
{
    auto k = field_algebra(FieldSpec::rationals());
    CHECK(validate(k).ok());
    auto ctx = analyze(k);
    CHECK(ctx.local);
    CHECK(ctx.m_basis.cols() == 0);
}

TEST_CASE("dual numbers validate; m = span{x}")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 1, {{2}});
    CHECK(a.basis.size() == 2);
    CHECK(validate(*a.ring).ok());
    auto ctx = analyze(a.ring);
    CHECK(ctx.local);
    REQUIRE(ctx.m_basis.cols() == 1);
    // the maximal ideal is spanned by the class of x
    int xi = a.index_of({1});
    CHECK(ctx.m_basis.get(xi, 0) != 0);
    // graded socle of H = (x), one-dimensional
    REQUIRE(ctx.h_socle.count(0) == 1);
    CHECK(ctx.h_socle.at(0).cols() == 1);
}

TEST_CASE("an inconsistent odd generator square is rejected")
{
    // K + K.xi + K.w with |xi| = -1, |w| = -2 and xi.xi declared to be w:
    // graded commutativity forces xi^2 = -xi^2 = 0 over Q
    FieldSpec q = FieldSpec::rationals();
    Cdga r;
    r.field = q;
    r.components = GradedSpace(q);
    r.components.set_dim(0, 1);
    r.components.set_dim(-1, 1);
    r.components.set_dim(-2, 1);
    r.unit = ExactMatrix(q, 1, 1);
    r.unit.set(0, 0, 1);
    r.differential = GradedMap(r.components, r.components, +1);
    ExactMatrix d1(q, 1, 1);
    d1.set(0, 0, 1);
    r.differential.set_block(-1, d1);
    ExactMatrix one(q, 1, 1);
    one.set(0, 0, 1);
    r.set_mult_block(0, 0, one);
    r.set_mult_block(0, -1, one);
    r.set_mult_block(-1, 0, one);
    r.set_mult_block(0, -2, one);
    r.set_mult_block(-2, 0, one);
    ExactMatrix sq(q, 1, 1);
    sq.set(0, 0, 1);  // xi.xi = w (bad)
    r.set_mult_block(-1, -1, sq);

    auto rep = validate(r);
    CHECK(!rep.ok());
    bool saw_comm = false;
    for (auto& v : rep.violations)
        saw_comm |= (v.axiom == "commutativity");
    CHECK(saw_comm);
}

TEST_CASE("the acyclic exterior algebra with d(xi) = 1 is valid but not local")
{
    // same algebra as above with the lawful xi^2 = 0: every axiom holds,
    // but H = 0, so the locality analysis rejects it
    FieldSpec q = FieldSpec::rationals();
    Cdga r;
    r.field = q;
    r.components = GradedSpace(q);
    r.components.set_dim(0, 1);
    r.components.set_dim(-1, 1);
    r.unit = ExactMatrix(q, 1, 1);
    r.unit.set(0, 0, 1);
    r.differential = GradedMap(r.components, r.components, +1);
    ExactMatrix d1(q, 1, 1);
    d1.set(0, 0, 1);
    r.differential.set_block(-1, d1);
    ExactMatrix one(q, 1, 1);
    one.set(0, 0, 1);
    r.set_mult_block(0, 0, one);
    r.set_mult_block(0, -1, one);
    r.set_mult_block(-1, 0, one);

    CHECK(validate(r).ok());
    auto ctx = analyze(r);
    CHECK(!ctx.local);
    CHECK(ctx.local_failure == "H^0 = 0");
}

TEST_CASE("K x K is rejected: not local")
{
    FieldSpec q = FieldSpec::rationals();
    Cdga r;
    r.field = q;
    r.components = GradedSpace(q);
    r.components.set_dim(0, 2);
    r.unit = ExactMatrix(q, 2, 1);
    r.unit.set(0, 0, 1);
    r.unit.set(1, 0, 1);
    r.differential = GradedMap(r.components, r.components, +1);
    ExactMatrix m(q, 2, 4);
    m.set(0, 0, 1);  // e0 e0 = e0
    m.set(1, 3, 1);  // e1 e1 = e1
    r.set_mult_block(0, 0, m);
    CHECK(validate(r).ok());
    auto ctx = analyze(r);
    CHECK(!ctx.local);
}

TEST_CASE("locality analysis over F2 uses the Frobenius kernel")
{
    auto f2 = FieldSpec::prime_field(2);
    auto local_ring = make_monomial_quotient(f2, 1, {{2}});
    CHECK(validate(*local_ring.ring).ok());
    CHECK(analyze(local_ring.ring).local);

    // F2 x F2 must still be refused
    Cdga r;
    r.field = f2;
    r.components = GradedSpace(f2);
    r.components.set_dim(0, 2);
    r.unit = ExactMatrix(f2, 2, 1);
    r.unit.set(0, 0, 1);
    r.unit.set(1, 0, 1);
    r.differential = GradedMap(r.components, r.components, +1);
    ExactMatrix m(f2, 2, 4);
    m.set(0, 0, 1);
    m.set(1, 3, 1);
    r.set_mult_block(0, 0, m);
    CHECK(validate(r).ok());
    CHECK(!analyze(r).local);
}

TEST_CASE("K[x,y]/(x^2,xy,y^2) has a two-dimensional socle")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 2, {{2, 0}, {1, 1}, {0, 2}});
    CHECK(a.basis.size() == 3);
    CHECK(validate(*a.ring).ok());
    auto ctx = analyze(a.ring);
    CHECK(ctx.local);
    CHECK(ctx.m_basis.cols() == 2);
    CHECK(ctx.h_socle.at(0).cols() == 2);
}

TEST_CASE("K[x,y]/(x^3,y^3) is a 9-dimensional complete intersection with simple socle")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 2, {{3, 0}, {0, 3}});
    CHECK(a.basis.size() == 9);
    CHECK(validate(*a.ring).ok());
    auto ctx = analyze(a.ring);
    CHECK(ctx.local);
    CHECK(ctx.h_socle.at(0).cols() == 1);  // socle spanned by x^2 y^2
}

TEST_CASE("non-finite monomial quotients are rejected")
{
    CHECK_THROWS_AS(make_monomial_quotient(FieldSpec::rationals(), 2, {{1, 1}}), Error);
}

TEST_CASE("trivial extensions validate and have simple socle")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 2, {{2, 0}, {1, 1}, {0, 2}});
    for (int t : {0, 1, 2}) {
        Cdga ext = trivial_extension(*a.ring, t);
        CHECK(validate(ext).ok());
        auto ctx = analyze(ext);
        CHECK(ctx.local);
        int soc_total = 0;
        for (auto& [n, s] : ctx.h_socle)
            soc_total += s.cols();
        CHECK(soc_total == 1);
    }
}

TEST_CASE("cohomology algebra of a zero-differential ring reproduces the ring")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 2, {{2, 0}, {0, 2}});
    auto ctx = analyze(a.ring);
    CHECK(ctx.h->components == a.ring->components);
    CHECK(ctx.h->mult_block(0, 0) == a.ring->mult_block(0, 0));
}

TEST_CASE("residue module is a valid one-dimensional module")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 1, {{2}});
    auto ctx = analyze(a.ring);
    DgModule k = residue_module(ctx);
    CHECK(k.dim(0) == 1);
    CHECK(validate_module(k).ok());
    // x acts by zero, 1 acts as identity
    int xi = a.index_of({1});
    ExactMatrix x = a.ring->basis_vector(0, xi);
    CHECK(k.act_operator(0, x, 0).is_zero());
}

TEST_CASE("the algebra as a module over itself validates")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 2, {{2, 0}, {1, 1}, {0, 2}});
    CHECK(validate_module(as_module(a.ring)).ok());
}

TEST_CASE("cohomology module of R over itself is H")
{
    auto a = make_monomial_quotient(FieldSpec::rationals(), 1, {{3}});
    auto ctx = analyze(a.ring);
    auto hm = cohomology_module(ctx, as_module(a.ring));
    CHECK(hm.mod.components == ctx.h->components);
    CHECK(validate_module(hm.mod).ok());
}
