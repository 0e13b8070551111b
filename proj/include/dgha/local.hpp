#pragma once

#include <memory>

#include "dgha/cdga.hpp"

namespace dgha {

/* Nilradical of a finite-dimensional commutative algebra, as a column basis.
 * Characteristic 0: radical of the trace form Tr(L_a L_b) (Dickson).
 * Characteristic p: kernel of the iterated Frobenius a -> a^{p^K} with
 * p^K >= dim, which is F_p-linear over the prime field. */
inline ExactMatrix nilradical_basis(FieldSpec field, int d0, const ExactMatrix& multblock)
{
    require(multblock.rows() == d0 && multblock.cols() == d0 * d0, "E_DIM", "mult block shape");
    auto left_op = [&](const ExactMatrix& v) {
        ExactMatrix op(field, d0, d0);
        for (int a = 0; a < d0; ++a) {
            mpq_class c = v.get(a, 0);
            if (c == 0)
                continue;
            for (int b = 0; b < d0; ++b)
                for (int t = 0; t < d0; ++t) {
                    mpq_class e = multblock.get(t, a * d0 + b);
                    if (e != 0)
                        op.set(t, b, op.get(t, b) + c * e);
                }
        }
        return op;
    };

    if (field.is_q()) {
        std::vector<ExactMatrix> L;
        for (int a = 0; a < d0; ++a) {
            ExactMatrix v(field, d0, 1);
            v.set(a, 0, 1);
            L.push_back(left_op(v));
        }
        ExactMatrix trace_form(field, d0, d0);
        for (int a = 0; a < d0; ++a)
            for (int b = a; b < d0; ++b) {
                ExactMatrix prod = L[a] * L[b];
                mpq_class tr = 0;
                for (int t = 0; t < d0; ++t)
                    tr += prod.get(t, t);
                trace_form.set(a, b, tr);
                trace_form.set(b, a, tr);
            }
        return trace_form.kernel_basis();
    }

    // frobenius matrix: columns e_a^p via square-and-multiply on exponents
    std::int64_t p = field.p;
    ExactMatrix frob(field, d0, d0);
    for (int a = 0; a < d0; ++a) {
        ExactMatrix base(field, d0, 1);
        base.set(a, 0, 1);
        // acc = base^p
        ExactMatrix acc;
        bool acc_set = false;
        ExactMatrix sq = base;
        std::int64_t e = p;
        while (e > 0) {
            if (e & 1) {
                acc = acc_set ? left_op(acc) * sq : sq;
                acc_set = true;
            }
            e >>= 1;
            if (e > 0)
                sq = left_op(sq) * sq;
        }
        for (int t = 0; t < d0; ++t)
            frob.set(t, a, acc.get(t, 0));
    }
    ExactMatrix fk = frob;
    std::int64_t power = p;
    while (power < d0) {
        fk = frob * fk;
        power *= p;
    }
    return fk.kernel_basis();
}

/* Analyzed ring: cohomology with representatives, the cohomology algebra H
 * as a zero-differential Cdga, and the local structure of H^0 (maximal
 * ideal, residue functional, graded socle of H). */
struct RingCtx {
    std::shared_ptr<const Cdga> ring;
    Cohomology coh;                    // of the underlying complex of R
    std::shared_ptr<const Cdga> h;     // cohomology algebra, zero differential
    bool local = false;
    std::string local_failure;         // why locality analysis failed, if it did
    ExactMatrix m_basis;               // dim H^0 x t, maximal ideal of H^0
    ExactMatrix mbar_basis;            // dim R^0 x s, preimage of m in R^0
    std::map<int, ExactMatrix> h_socle;  // graded socle of H per degree
    std::shared_ptr<const RrefSolver> r0_residue;  // solver for [1 | mbar] in R^0
    std::shared_ptr<const RrefSolver> h0_residue;  // solver for [1 | m] in H^0

    int h0_dim() const { return h ? h->dim(0) : 0; }

    /* Residue functional on R^0: coefficient of the unit modulo mbar. */
    mpq_class lambda_r0(const ExactMatrix& v) const
    {
        auto x = r0_residue->solve(v);
        require(x.has_value(), "E_INTERNAL", "R^0 not spanned by unit + mbar");
        return x->get(0, 0);
    }

    mpq_class lambda_h0(const ExactMatrix& v) const
    {
        auto x = h0_residue->solve(v);
        require(x.has_value(), "E_INTERNAL", "H^0 not spanned by unit + m");
        return x->get(0, 0);
    }

    /* Lift H^n class coordinates to the stored cocycle representatives. */
    ExactMatrix rep_of_class(int n, const ExactMatrix& cls) const
    {
        auto it = coh.reps.find(n);
        if (it == coh.reps.end())
            return ExactMatrix::zeros(ring->field, ring->dim(n), cls.cols());
        return it->second * cls;
    }
};

/* Cohomology of a DG-module as a DG-module over ctx.h (zero differential),
 * together with the representative data used to lift classes. */
struct HModule {
    DgModule mod;    // over ctx.h
    Cohomology coh;  // of the underlying complex of the original module
};

namespace detail {

inline Cdga build_h_algebra(const Cdga& r, const Cohomology& coh)
{
    Cdga h;
    h.field = r.field;
    h.components = coh.h;
    h.differential = GradedMap(coh.h, coh.h, +1);
    if (coh.h.dim(0) > 0) {
        h.unit = coh.class_coords(0, r.unit);
    } else {
        h.unit = ExactMatrix(r.field, 0, 1);
    }
    for (auto& [i, di] : coh.h.dims)
        for (auto& [j, dj] : coh.h.dims) {
            int t = coh.h.dim(i + j);
            if (t == 0)
                continue;
            ExactMatrix blk(r.field, t, di * dj);
            const ExactMatrix& ri = coh.reps.at(i);
            const ExactMatrix& rj = coh.reps.at(j);
            for (int a = 0; a < di; ++a) {
                ExactMatrix rep_a = ri.column(a);
                ExactMatrix lop = r.left_mult_operator(i, rep_a, j);
                for (int b = 0; b < dj; ++b) {
                    ExactMatrix prod = lop * rj.column(b);
                    ExactMatrix cls = coh.class_coords(i + j, prod);
                    for (int s = 0; s < t; ++s)
                        blk.set(s, a * dj + b, cls.get(s, 0));
                }
            }
            h.set_mult_block(i, j, std::move(blk));
        }
    return h;
}

}  // namespace detail

/* Analyze a (presumed valid) Cdga: cohomology algebra and local structure.
 * Does not re-run the axiom checks; pair with validate() where needed. */
inline RingCtx analyze(std::shared_ptr<const Cdga> ring)
{
    RingCtx ctx;
    ctx.ring = ring;
    ctx.coh = cohomology(ring->underlying_complex());
    ctx.h = std::make_shared<const Cdga>(detail::build_h_algebra(*ring, ctx.coh));

    int d0 = ctx.h->dim(0);
    if (d0 == 0) {
        ctx.local_failure = "H^0 = 0";
        return ctx;
    }

    ExactMatrix nil = nilradical_basis(ring->field, d0, ctx.h->mult_block(0, 0));
    if (nil.cols() != d0 - 1) {
        ctx.local_failure = "H^0 is not local with residue field K (nilradical codim != 1)";
        return ctx;
    }
    if (ctx.h->unit.hstack(nil).rank() != d0) {
        ctx.local_failure = "unit lies in the nilradical span";
        return ctx;
    }
    // nilpotency of m (artinian guarantee, but verified)
    {
        ExactMatrix cur = nil;
        int guard = 0;
        while (cur.cols() > 0 && guard++ <= d0 + 1) {
            ExactMatrix prods(ring->field, d0, 0);
            for (int a = 0; a < nil.cols(); ++a) {
                ExactMatrix lop = ctx.h->left_mult_operator(0, nil.column(a), 0);
                prods = prods.hstack(lop * cur);
            }
            cur = prods.image_basis();
        }
        if (cur.cols() > 0) {
            ctx.local_failure = "maximal ideal candidate is not nilpotent";
            return ctx;
        }
    }

    ctx.local = true;
    ctx.m_basis = nil;

    // mbar = preimage of m in R^0 = im(d^-1) + lifts of m
    ExactMatrix imd = ring->differential.block(-1).image_basis();
    ExactMatrix lifted = ctx.rep_of_class(0, nil);
    ctx.mbar_basis = imd.hstack(lifted).image_basis();
    require(ctx.mbar_basis.cols() == ring->dim(0) - 1, "E_INTERNAL", "mbar has wrong codimension");

    ctx.r0_residue = std::make_shared<const RrefSolver>(ring->unit.hstack(ctx.mbar_basis));
    ctx.h0_residue = std::make_shared<const RrefSolver>(ctx.h->unit.hstack(ctx.m_basis));

    // graded socle of H with respect to m' = m + H^{<0}
    for (auto& [n, dn] : ctx.h->components.dims) {
        ExactMatrix stacked(ring->field, 0, dn);
        for (int a = 0; a < ctx.m_basis.cols(); ++a)
            stacked = stacked.vstack(ctx.h->left_mult_operator(0, ctx.m_basis.column(a), n));
        for (auto& [i, di] : ctx.h->components.dims) {
            if (i >= 0)
                continue;
            for (int a = 0; a < di; ++a)
                stacked = stacked.vstack(ctx.h->left_mult_operator(i, ctx.h->basis_vector(i, a), n));
        }
        ExactMatrix soc = stacked.kernel_basis();
        if (soc.cols() > 0)
            ctx.h_socle[n] = std::move(soc);
    }
    return ctx;
}

inline RingCtx analyze(const Cdga& ring)
{
    return analyze(std::make_shared<const Cdga>(ring));
}

/* H(M) as a DG-module over ctx.h. */
inline HModule cohomology_module(const RingCtx& ctx, const DgModule& m)
{
    HModule out;
    out.coh = cohomology(m.underlying_complex());
    out.mod.over = ctx.h;
    out.mod.components = out.coh.h;
    out.mod.differential = GradedMap(out.coh.h, out.coh.h, +1);
    for (auto& [i, di] : ctx.h->components.dims)
        for (auto& [j, dj] : out.coh.h.dims) {
            int t = out.coh.h.dim(i + j);
            if (t == 0)
                continue;
            ExactMatrix blk(ctx.ring->field, t, di * dj);
            const ExactMatrix& ri = ctx.coh.reps.at(i);
            const ExactMatrix& rj = out.coh.reps.at(j);
            for (int a = 0; a < di; ++a) {
                ExactMatrix lop = m.act_operator(i, ri.column(a), j);
                for (int b = 0; b < dj; ++b) {
                    ExactMatrix prod = lop * rj.column(b);
                    ExactMatrix cls = out.coh.class_coords(i + j, prod);
                    for (int s = 0; s < t; ++s)
                        blk.set(s, a * dj + b, cls.get(s, 0));
                }
            }
            out.mod.set_action_block(i, j, std::move(blk));
        }
    return out;
}

/* Induced map on cohomology of a degree-0 chain map. */
inline GradedMap induced_on_h(const DgMorphism& f, const Cohomology& src, const Cohomology& tgt)
{
    GradedMap out(src.h, tgt.h, 0);
    for (auto& [n, dn] : src.h.dims) {
        ExactMatrix imgs = f.block(n) * src.reps.at(n);
        out.set_block(n, tgt.class_coords(n, imgs));
    }
    return out;
}

/* The residue field k as a DG-module over R (one-dimensional, degree 0). */
inline DgModule residue_module(const RingCtx& ctx)
{
    require(ctx.local, "E_NOT_LOCAL", "residue module needs a local ring");
    DgModule k;
    k.over = ctx.ring;
    k.components = GradedSpace(ctx.ring->field);
    k.components.set_dim(0, 1);
    k.differential = GradedMap(k.components, k.components, +1);
    int d0 = ctx.ring->dim(0);
    ExactMatrix act(ctx.ring->field, 1, d0);
    for (int a = 0; a < d0; ++a)
        act.set(0, a, ctx.lambda_r0(ctx.ring->basis_vector(0, a)));
    k.set_action_block(0, 0, std::move(act));
    return k;
}

/* Socle of an H^0-module presented by an action operator family:
 * columns v with m_i . v = 0 for every maximal-ideal basis vector. */
inline ExactMatrix module_socle(const RingCtx& ctx, int deg, const DgModule& hmod)
{
    int dn = hmod.dim(deg);
    ExactMatrix stacked(ctx.ring->field, 0, dn);
    for (int a = 0; a < ctx.m_basis.cols(); ++a)
        stacked = stacked.vstack(hmod.act_operator(0, ctx.m_basis.column(a), deg));
    return stacked.kernel_basis();
}

}  // namespace dgha
