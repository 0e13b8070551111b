#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dgha/local.hpp"

namespace dgha {

/* ---- shifts ---------------------------------------------------------- */

/* M[s]: component in degree d is M^{d+s}, differential (-1)^s d, action of
 * R^i twisted by (-1)^{i s}. */
inline DgModule shift_module(const DgModule& m, int s)
{
    DgModule out;
    out.over = m.over;
    out.components = GradedSpace(m.components.field);
    for (auto& [d, dim] : m.components.dims)
        out.components.set_dim(d - s, dim);
    out.differential = GradedMap(out.components, out.components, +1);
    mpq_class dsign = (s % 2 == 0) ? 1 : -1;
    for (auto& [d, blk] : m.differential.blocks)
        out.differential.set_block(d - s, blk.scaled(dsign));
    for (auto& [key, blk] : m.action) {
        auto [i, j] = key;
        mpq_class asign = ((i * s) % 2 == 0) ? 1 : -1;
        out.set_action_block(i, j - s, blk.scaled(asign));
    }
    return out;
}

/* ---- direct sums ------------------------------------------------------ */

struct DirectSum {
    DgModule sum;
    DgMorphism incl_left, incl_right;
    DgMorphism proj_left, proj_right;
};

inline DirectSum direct_sum(const DgModule& a, const DgModule& b)
{
    require(a.over == b.over, "E_BASE", "direct sum over different bases");
    FieldSpec f = a.components.field;
    DgModule s;
    s.over = a.over;
    s.components = GradedSpace(f);
    for (auto& [d, dim] : a.components.dims)
        s.components.set_dim(d, dim);
    for (auto& [d, dim] : b.components.dims)
        s.components.set_dim(d, s.components.dim(d) + dim);
    s.differential = GradedMap(s.components, s.components, +1);

    auto embed = [&](const ExactMatrix& am, const ExactMatrix& bm) {
        // block diagonal [am 0; 0 bm]
        ExactMatrix top = am.hstack(ExactMatrix::zeros(f, am.rows(), bm.cols()));
        ExactMatrix bot = ExactMatrix::zeros(f, bm.rows(), am.cols()).hstack(bm);
        return top.vstack(bot);
    };

    for (int d = s.components.lo(); d <= s.components.hi() + 1; ++d) {
        if (s.components.dim(d) == 0 || s.components.dim(d + 1) == 0)
            continue;
        s.differential.set_block(d, embed(a.differential.block(d), b.differential.block(d)));
    }
    for (auto& [i, di] : a.over->components.dims)
        for (int j = s.components.lo(); j <= s.components.hi(); ++j) {
            if (s.components.dim(j) == 0 || s.components.dim(i + j) == 0)
                continue;
            // action block with interleaved source layout [a_j | b_j]
            int aj = a.dim(j), bj = b.dim(j);
            int at = a.dim(i + j), bt = b.dim(i + j);
            ExactMatrix blk(f, at + bt, di * (aj + bj));
            ExactMatrix ablk = a.action_block(i, j), bblk = b.action_block(i, j);
            for (int r = 0; r < di; ++r) {
                for (int c = 0; c < aj; ++c)
                    for (int t = 0; t < at; ++t) {
                        mpq_class v = ablk.get(t, r * aj + c);
                        if (v != 0)
                            blk.set(t, r * (aj + bj) + c, v);
                    }
                for (int c = 0; c < bj; ++c)
                    for (int t = 0; t < bt; ++t) {
                        mpq_class v = bblk.get(t, r * bj + c);
                        if (v != 0)
                            blk.set(at + t, r * (aj + bj) + aj + c, v);
                    }
            }
            s.set_action_block(i, j, std::move(blk));
        }

    DirectSum out;
    out.incl_left = DgMorphism::zero(a, s);
    out.incl_right = DgMorphism::zero(b, s);
    out.proj_left = DgMorphism::zero(s, a);
    out.proj_right = DgMorphism::zero(s, b);
    for (auto& [d, dim] : s.components.dims) {
        int ad = a.dim(d), bd = b.dim(d);
        ExactMatrix il(f, dim, ad), ir(f, dim, bd), pl(f, ad, dim), pr(f, bd, dim);
        for (int t = 0; t < ad; ++t) {
            il.set(t, t, 1);
            pl.set(t, t, 1);
        }
        for (int t = 0; t < bd; ++t) {
            ir.set(ad + t, t, 1);
            pr.set(t, ad + t, 1);
        }
        out.incl_left.blocks.set_block(d, il);
        out.incl_right.blocks.set_block(d, ir);
        out.proj_left.blocks.set_block(d, pl);
        out.proj_right.blocks.set_block(d, pr);
    }
    out.sum = s;
    out.incl_left.target = out.incl_right.target = s;
    out.proj_left.source = out.proj_right.source = s;
    return out;
}

/* ---- cones ------------------------------------------------------------ */

/* cone(f : M -> N) = N (+) M[1] with differential [[dN, f],[0, -dM]] and
 * the shifted action on the M[1] part.  Witnesses: the exact triangle
 * M -f-> N -incl-> cone -proj-> M[1]. */
struct Cone {
    DgModule cone;
    DgMorphism incl;  // N -> cone
    DgMorphism proj;  // cone -> M[1]
};

inline Cone cone(const DgMorphism& f)
{
    require(f.source.over == f.target.over, "E_BASE", "cone over different bases");
    const DgModule& m = f.source;
    const DgModule& n = f.target;
    FieldSpec fl = m.components.field;

    DgModule c;
    c.over = m.over;
    c.components = GradedSpace(fl);
    for (auto& [d, dim] : n.components.dims)
        c.components.set_dim(d, dim);
    for (auto& [d, dim] : m.components.dims)
        c.components.set_dim(d - 1, c.components.dim(d - 1) + dim);
    c.differential = GradedMap(c.components, c.components, +1);

    auto cdim_n = [&](int d) { return n.dim(d); };
    auto cdim_m = [&](int d) { return m.dim(d + 1); };

    for (int d = c.components.lo(); d <= c.components.hi(); ++d) {
        int rows = c.components.dim(d + 1), cols = c.components.dim(d);
        if (rows == 0 || cols == 0)
            continue;
        ExactMatrix blk(fl, rows, cols);
        ExactMatrix dn = n.differential.block(d);
        ExactMatrix dm = m.differential.block(d + 1);
        ExactMatrix fb = f.block(d + 1);
        for (int t = 0; t < cdim_n(d + 1); ++t) {
            for (int ccol = 0; ccol < cdim_n(d); ++ccol)
                if (!dn.entry_is_zero(t, ccol))
                    blk.set(t, ccol, dn.get(t, ccol));
            for (int ccol = 0; ccol < cdim_m(d); ++ccol)
                if (!fb.entry_is_zero(t, ccol))
                    blk.set(t, cdim_n(d) + ccol, fb.get(t, ccol));
        }
        for (int t = 0; t < cdim_m(d + 1); ++t)
            for (int ccol = 0; ccol < cdim_m(d); ++ccol)
                if (!dm.entry_is_zero(t, ccol))
                    blk.set(cdim_n(d + 1) + t, cdim_n(d) + ccol, -dm.get(t, ccol));
        c.differential.set_block(d, std::move(blk));
    }

    for (auto& [i, di] : m.over->components.dims)
        for (int j = c.components.lo(); j <= c.components.hi(); ++j) {
            int cols = c.components.dim(j), rows = c.components.dim(i + j);
            if (cols == 0 || rows == 0)
                continue;
            ExactMatrix blk(fl, rows, di * cols);
            ExactMatrix an = n.action_block(i, j);
            ExactMatrix am = m.action_block(i, j + 1);
            mpq_class sgn = (i % 2 == 0) ? 1 : -1;
            for (int r = 0; r < di; ++r) {
                for (int ccol = 0; ccol < cdim_n(j); ++ccol)
                    for (int t = 0; t < cdim_n(i + j); ++t) {
                        mpq_class v = an.get(t, r * cdim_n(j) + ccol);
                        if (v != 0)
                            blk.set(t, r * cols + ccol, v);
                    }
                for (int ccol = 0; ccol < cdim_m(j); ++ccol)
                    for (int t = 0; t < cdim_m(i + j); ++t) {
                        mpq_class v = am.get(t, r * cdim_m(j) + ccol);
                        if (v != 0)
                            blk.set(cdim_n(i + j) + t, r * cols + cdim_n(j) + ccol, sgn * v);
                    }
            }
            c.set_action_block(i, j, std::move(blk));
        }

    Cone out;
    out.cone = c;
    out.incl = DgMorphism::zero(n, c);
    DgModule m1 = shift_module(m, 1);
    out.proj = DgMorphism::zero(c, m1);
    for (auto& [d, dim] : c.components.dims) {
        ExactMatrix il(fl, dim, cdim_n(d));
        for (int t = 0; t < cdim_n(d); ++t)
            il.set(t, t, 1);
        out.incl.blocks.set_block(d, il);
        ExactMatrix pr(fl, cdim_m(d), dim);
        for (int t = 0; t < cdim_m(d); ++t)
            pr.set(t, cdim_n(d) + t, 1);
        out.proj.blocks.set_block(d, pr);
    }
    return out;
}

/* ---- kernels of morphisms --------------------------------------------- */

struct Submodule {
    DgModule sub;
    DgMorphism incl;
};

/* Degreewise kernel of a morphism, a DG-submodule. */
inline Submodule kernel_module(const DgMorphism& f)
{
    const DgModule& m = f.source;
    FieldSpec fl = m.components.field;
    std::map<int, ExactMatrix> bases;
    DgModule k;
    k.over = m.over;
    k.components = GradedSpace(fl);
    for (auto& [d, dim] : m.components.dims) {
        ExactMatrix kb = f.block(d).kernel_basis();
        if (kb.cols() > 0) {
            k.components.set_dim(d, kb.cols());
            bases.emplace(d, std::move(kb));
        }
    }
    k.differential = GradedMap(k.components, k.components, +1);
    auto basis_of = [&](int d) -> const ExactMatrix* {
        auto it = bases.find(d);
        return it == bases.end() ? nullptr : &it->second;
    };
    for (auto& [d, dim] : k.components.dims) {
        const ExactMatrix* src = basis_of(d);
        const ExactMatrix* tgt = basis_of(d + 1);
        if (!src || !tgt)
            continue;
        ExactMatrix img = m.differential.block(d) * *src;
        auto x = tgt->solve(img);
        require(x.has_value(), "E_INTERNAL", "kernel not preserved by differential");
        k.differential.set_block(d, std::move(*x));
    }
    for (auto& [i, di] : m.over->components.dims)
        for (auto& [j, dj] : k.components.dims) {
            const ExactMatrix* src = basis_of(j);
            const ExactMatrix* tgt = basis_of(i + j);
            if (!src || !tgt)
                continue;
            ExactMatrix blk(fl, tgt->cols(), di * src->cols());
            for (int r = 0; r < di; ++r) {
                ExactMatrix img = m.act_operator(i, m.over->basis_vector(i, r), j) * *src;
                auto x = tgt->solve(img);
                require(x.has_value(), "E_INTERNAL", "kernel not preserved by action");
                for (int ccol = 0; ccol < src->cols(); ++ccol)
                    for (int t = 0; t < tgt->cols(); ++t) {
                        mpq_class v = x->get(t, ccol);
                        if (v != 0)
                            blk.set(t, r * src->cols() + ccol, v);
                    }
            }
            k.set_action_block(i, j, std::move(blk));
        }

    Submodule out;
    out.incl = DgMorphism::zero(k, m);
    for (auto& [d, b] : bases)
        out.incl.blocks.set_block(d, b);
    out.sub = k;
    out.incl.source = out.sub;
    return out;
}

/* ---- smart truncations ------------------------------------------------ */

/* sigma^{<=n}: subcomplex with ker d^n in degree n.  H^i agrees with M for
 * i <= n and vanishes above. */
inline DgModule truncate_le(const DgModule& m, int n)
{
    FieldSpec fl = m.components.field;
    ExactMatrix ker = m.differential.block(n).kernel_basis();
    DgModule t;
    t.over = m.over;
    t.components = GradedSpace(fl);
    for (auto& [d, dim] : m.components.dims) {
        if (d < n)
            t.components.set_dim(d, dim);
        else if (d == n && ker.cols() > 0)
            t.components.set_dim(d, ker.cols());
    }
    t.differential = GradedMap(t.components, t.components, +1);
    for (auto& [d, blk] : m.differential.blocks) {
        if (d + 1 < n && t.components.dim(d) > 0)
            t.differential.set_block(d, blk);
        else if (d + 1 == n && t.components.dim(d) > 0 && ker.cols() > 0) {
            auto x = ker.solve(blk);
            require(x.has_value(), "E_INTERNAL", "boundaries are cocycles");
            t.differential.set_block(d, *x);
        }
    }
    for (auto& [key, blk] : m.action) {
        auto [i, j] = key;
        if (j > n || i + j > n)
            continue;
        if (t.components.dim(j) == 0 || t.components.dim(i + j) == 0)
            continue;
        if (j < n) {
            // i + j <= j < n over a connective base: target is a full component
            t.set_action_block(i, j, blk);
        } else if (i == 0) {
            // degree-0 action on the cut degree stays inside ker d^n
            ExactMatrix restricted(fl, ker.cols(), m.over->dim(0) * ker.cols());
            for (int r = 0; r < m.over->dim(0); ++r) {
                ExactMatrix img = m.act_operator(0, m.over->basis_vector(0, r), n) * ker;
                auto x = ker.solve(img);
                require(x.has_value(), "E_INTERNAL", "kernel closed under degree-0 action");
                for (int c = 0; c < ker.cols(); ++c)
                    for (int tt = 0; tt < ker.cols(); ++tt) {
                        mpq_class v = x->get(tt, c);
                        if (v != 0)
                            restricted.set(tt, r * ker.cols() + c, v);
                    }
            }
            t.set_action_block(i, j, std::move(restricted));
        } else {
            // i < 0 acting on the cut degree lands in a full component
            ExactMatrix mapped(fl, m.dim(i + n), m.over->dim(i) * ker.cols());
            for (int r = 0; r < m.over->dim(i); ++r) {
                ExactMatrix img = m.act_operator(i, m.over->basis_vector(i, r), n) * ker;
                for (int c = 0; c < ker.cols(); ++c)
                    for (int tt = 0; tt < img.rows(); ++tt) {
                        mpq_class v = img.get(tt, c);
                        if (v != 0)
                            mapped.set(tt, r * ker.cols() + c, v);
                    }
            }
            t.set_action_block(i, j, std::move(mapped));
        }
    }
    return t;
}

/* sigma^{>n}: quotient with a pivot-column complement of ker d^n in degree n.
 * H^i agrees with M for i > n and vanishes at n and below. */
inline DgModule truncate_gt(const DgModule& m, int n)
{
    FieldSpec fl = m.components.field;
    std::vector<int> keep = m.differential.block(n).rref().pivots;
    ExactMatrix ker = m.differential.block(n).kernel_basis();
    ExactMatrix sel(fl, m.dim(n), static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c)
        sel.set(keep[c], static_cast<int>(c), 1);
    ExactMatrix proj_sys = ker.hstack(sel);  // [ker | chosen] spans M^n

    DgModule t;
    t.over = m.over;
    t.components = GradedSpace(fl);
    for (auto& [d, dim] : m.components.dims) {
        if (d > n)
            t.components.set_dim(d, dim);
        else if (d == n && !keep.empty())
            t.components.set_dim(d, static_cast<int>(keep.size()));
    }
    t.differential = GradedMap(t.components, t.components, +1);

    RrefSolver proj_solver(proj_sys);
    auto project_at_n = [&](const ExactMatrix& v) {
        auto x = proj_solver.solve(v);
        require(x.has_value(), "E_INTERNAL", "projection system is spanning");
        ExactMatrix out(fl, static_cast<int>(keep.size()), v.cols());
        for (size_t r = 0; r < keep.size(); ++r)
            for (int c = 0; c < v.cols(); ++c)
                out.set(static_cast<int>(r), c, x->get(ker.cols() + static_cast<int>(r), c));
        return out;
    };

    for (auto& [d, blk] : m.differential.blocks) {
        if (d > n && t.components.dim(d) > 0)
            t.differential.set_block(d, blk);
        else if (d == n && !keep.empty())
            t.differential.set_block(d, blk * sel);
    }
    for (auto& [key, blk] : m.action) {
        auto [i, j] = key;
        if (t.components.dim(j) == 0 || t.components.dim(i + j) == 0)
            continue;
        if (j > n && i + j > n) {
            t.set_action_block(i, j, blk);
        } else if (j == n && i == 0) {
            ExactMatrix restricted(fl, static_cast<int>(keep.size()),
                                   m.over->dim(0) * static_cast<int>(keep.size()));
            for (int r = 0; r < m.over->dim(0); ++r) {
                ExactMatrix img = m.act_operator(0, m.over->basis_vector(0, r), n) * sel;
                ExactMatrix prj = project_at_n(img);
                for (int c = 0; c < prj.cols(); ++c)
                    for (int tt = 0; tt < prj.rows(); ++tt) {
                        mpq_class v = prj.get(tt, c);
                        if (v != 0)
                            restricted.set(tt, r * prj.cols() + c, v);
                    }
            }
            t.set_action_block(i, j, std::move(restricted));
        } else if (j > n && i + j == n) {
            ExactMatrix prj = project_at_n(blk);
            t.set_action_block(i, j, std::move(prj));
        }
    }
    return t;
}

inline DgModule truncate_lt(const DgModule& m, int n) { return truncate_le(m, n - 1); }
inline DgModule truncate_ge(const DgModule& m, int n) { return truncate_gt(m, n - 1); }

/* ---- free and semifree modules ---------------------------------------- */

/* Module that is free over R^# on listed generators; the differential is
 * determined by its values on generators:
 *   dgen[j] = list of (k, coefficient in R^{deg_j + 1 - deg_k}).
 * Component layout groups coordinates by generator, in order. */
struct SemifreeModule {
    std::shared_ptr<const Cdga> over;
    std::vector<int> gen_degs;
    std::vector<std::vector<std::pair<int, ExactMatrix>>> dgen;

    int gen_count() const { return static_cast<int>(gen_degs.size()); }

    int component_dim(int n) const
    {
        int d = 0;
        for (int g : gen_degs)
            d += over->dim(n - g);
        return d;
    }

    int offset(int n, int j) const
    {
        int off = 0;
        for (int t = 0; t < j; ++t)
            off += over->dim(n - gen_degs[t]);
        return off;
    }

    /* Component window derived from the ring window and generator degrees. */
    int lo() const
    {
        int best = 0;
        for (size_t j = 0; j < gen_degs.size(); ++j)
            best = std::min(best, gen_degs[j] + over->components.lo());
        return best;
    }
    int hi() const
    {
        int best = gen_degs.empty() ? 0 : gen_degs[0];
        for (int g : gen_degs)
            best = std::max(best, g);
        return best;
    }

    ExactMatrix gen_vector(int j) const
    {
        int n = gen_degs[j];
        ExactMatrix v(over->field, component_dim(n), 1);
        int off = offset(n, j);
        for (int t = 0; t < over->dim(0); ++t) {
            mpq_class u = over->unit.get(t, 0);
            if (u != 0)
                v.set(off + t, 0, u);
        }
        return v;
    }

    DgModule materialize() const;
};

inline DgModule SemifreeModule::materialize() const
{
    FieldSpec fl = over->field;
    DgModule m;
    m.over = over;
    m.components = GradedSpace(fl);
    if (gen_degs.empty()) {
        m.differential = GradedMap(m.components, m.components, +1);
        return m;
    }
    for (int n = lo(); n <= hi(); ++n) {
        int d = component_dim(n);
        if (d > 0)
            m.components.set_dim(n, d);
    }
    m.differential = GradedMap(m.components, m.components, +1);

    // differential: d(r e_j) = d(r) e_j + (-1)^{|r|} sum_k r c_{jk} e_k
    for (int n = lo(); n < hi() + 1; ++n) {
        int rows = m.dim(n + 1), cols = m.dim(n);
        if (rows == 0 || cols == 0)
            continue;
        ExactMatrix blk(fl, rows, cols);
        for (int j = 0; j < gen_count(); ++j) {
            int rdeg = n - gen_degs[j];
            int src_off = offset(n, j);
            int dr = over->dim(rdeg);
            if (dr == 0)
                continue;
            ExactMatrix drblk = over->differential.block(rdeg);
            int tgt_off_j = offset(n + 1, j);
            for (int c = 0; c < dr; ++c)
                for (int t = 0; t < over->dim(rdeg + 1); ++t) {
                    mpq_class v = drblk.get(t, c);
                    if (v != 0)
                        blk.set(tgt_off_j + t, src_off + c, v);
                }
            mpq_class sgn = (rdeg % 2 == 0) ? 1 : -1;
            for (auto& [k, coeff] : dgen[j]) {
                // r . c_{jk} lands in R^{n + 1 - deg_k} inside block k
                int tgt_off_k = offset(n + 1, k);
                ExactMatrix mb = over->mult_block(rdeg, gen_degs[j] + 1 - gen_degs[k]);
                int dcoeff = coeff.rows();
                for (int c = 0; c < dr; ++c) {
                    // column: e_c * coeff
                    for (int b = 0; b < dcoeff; ++b) {
                        mpq_class cb = coeff.get(b, 0);
                        if (cb == 0)
                            continue;
                        for (int t = 0; t < over->dim(n + 1 - gen_degs[k]); ++t) {
                            mpq_class v = mb.get(t, c * dcoeff + b);
                            if (v != 0)
                                blk.set(tgt_off_k + t, src_off + c,
                                        blk.get(tgt_off_k + t, src_off + c) + sgn * cb * v);
                        }
                    }
                }
            }
        }
        m.differential.set_block(n, std::move(blk));
    }

    // action: blockwise multiplication of R on each generator block
    for (auto& [i, di] : over->components.dims)
        for (int j = lo(); j <= hi(); ++j) {
            int rows = m.dim(i + j), cols = m.dim(j);
            if (rows == 0 || cols == 0)
                continue;
            ExactMatrix blk(fl, rows, di * cols);
            for (int g = 0; g < gen_count(); ++g) {
                int rdeg = j - gen_degs[g];
                int dr = over->dim(rdeg);
                if (dr == 0)
                    continue;
                ExactMatrix mb = over->mult_block(i, rdeg);
                int src_off = offset(j, g);
                int tgt_off = offset(i + j, g);
                for (int a = 0; a < di; ++a)
                    for (int b = 0; b < dr; ++b)
                        for (int t = 0; t < over->dim(i + rdeg); ++t) {
                            mpq_class v = mb.get(t, a * dr + b);
                            if (v != 0)
                                blk.set(tgt_off + t, a * cols + src_off + b, v);
                        }
            }
            m.set_action_block(i, j, std::move(blk));
        }
    return m;
}

/* Free module on generators in the given degrees (zero differential on
 * generators). */
inline SemifreeModule free_module(std::shared_ptr<const Cdga> r, std::vector<int> gen_degs)
{
    SemifreeModule f;
    f.over = std::move(r);
    f.gen_degs = std::move(gen_degs);
    f.dgen.assign(f.gen_degs.size(), {});
    return f;
}

/* Contractible disk: generators (e, f) in degrees (n, n+1) with d e = f. */
inline SemifreeModule disk_module(std::shared_ptr<const Cdga> r, int n)
{
    SemifreeModule d;
    d.over = r;
    d.gen_degs = {n, n + 1};
    d.dgen.resize(2);
    ExactMatrix unit = r->unit;
    d.dgen[0].push_back({1, unit});
    return d;
}

/* ---- algebra maps and restriction of scalars --------------------------- */

struct CdgaMap {
    std::shared_ptr<const Cdga> source;
    std::shared_ptr<const Cdga> target;
    GradedMap blocks;  // degree 0
};

inline DgModule restrict_scalars(const CdgaMap& phi, const DgModule& m)
{
    require(m.over == phi.target, "E_BASE", "module is not over the map target");
    DgModule out;
    out.over = phi.source;
    out.components = m.components;
    out.differential = m.differential;
    for (auto& [i, di] : phi.source->components.dims)
        for (auto& [j, dj] : m.components.dims) {
            if (m.dim(i + j) == 0)
                continue;
            ExactMatrix blk(m.components.field, m.dim(i + j), di * dj);
            bool nonzero = false;
            for (int a = 0; a < di; ++a) {
                ExactMatrix img = phi.blocks.block(i) * phi.source->basis_vector(i, a);
                if (img.is_zero())
                    continue;
                ExactMatrix op = m.act_operator(i, img, j);
                for (int b = 0; b < dj; ++b)
                    for (int t = 0; t < m.dim(i + j); ++t) {
                        mpq_class v = op.get(t, b);
                        if (v != 0) {
                            blk.set(t, a * dj + b, v);
                            nonzero = true;
                        }
                    }
            }
            if (nonzero)
                out.set_action_block(i, j, std::move(blk));
        }
    return out;
}

/* ---- Koszul quotients --------------------------------------------------- */

/* R \ xR for a degree-0 element x with class in m: the model R[xi]/(xi^2),
 * deg xi = -1, d xi = x, presented on components R^n (+) R^{n+1} with the
 * block differential [[d, x],[0, -d]].  Products in these coordinates:
 *   (a, b)_i (c, d)_j = (a c, (-1)^i a d + b c). */
struct KoszulQuotient {
    std::shared_ptr<const Cdga> ring;  // R \ xR
    CdgaMap canonical;                 // R -> R \ xR
};

inline KoszulQuotient quotient_by_element(const RingCtx& ctx, const ExactMatrix& x)
{
    const Cdga& r = *ctx.ring;
    FieldSpec fl = r.field;
    require(x.rows() == r.dim(0) && x.cols() == 1, "E_DEGREE", "x must be a degree-0 element");
    require(ctx.local, "E_NOT_LOCAL", "Koszul quotient needs a local base");
    {
        ExactMatrix cls = ctx.coh.class_coords(0, x);
        require(ctx.m_basis.solve(cls).has_value(), "E_NOT_IN_M",
                "class of x must lie in the maximal ideal");
    }

    Cdga s;
    s.field = fl;
    s.components = GradedSpace(fl);
    for (int n = r.components.lo() - 1; n <= 0; ++n) {
        int d = r.dim(n) + r.dim(n + 1);
        if (d > 0)
            s.components.set_dim(n, d);
    }
    s.differential = GradedMap(s.components, s.components, +1);
    s.unit = ExactMatrix(fl, s.components.dim(0), 1);
    for (int t = 0; t < r.dim(0); ++t)
        s.unit.set(t, 0, r.unit.get(t, 0));

    for (int n = s.components.lo(); n < 0; ++n) {
        int rows = s.components.dim(n + 1), cols = s.components.dim(n);
        if (rows == 0 || cols == 0)
            continue;
        ExactMatrix blk(fl, rows, cols);
        ExactMatrix da = r.differential.block(n);
        ExactMatrix db = r.differential.block(n + 1);
        ExactMatrix lx = r.left_mult_operator(0, x, n + 1);
        for (int t = 0; t < r.dim(n + 1); ++t) {
            for (int c = 0; c < r.dim(n); ++c)
                if (!da.entry_is_zero(t, c))
                    blk.set(t, c, da.get(t, c));
            for (int c = 0; c < r.dim(n + 1); ++c)
                if (!lx.entry_is_zero(t, c))
                    blk.set(t, r.dim(n) + c, lx.get(t, c));
        }
        for (int t = 0; t < r.dim(n + 2); ++t)
            for (int c = 0; c < r.dim(n + 1); ++c)
                if (!db.entry_is_zero(t, c))
                    blk.set(r.dim(n + 1) + t, r.dim(n) + c, -db.get(t, c));
        s.differential.set_block(n, std::move(blk));
    }

    for (auto& [i, di_s] : s.components.dims)
        for (auto& [j, dj_s] : s.components.dims) {
            int tdim = s.components.dim(i + j);
            if (tdim == 0)
                continue;
            ExactMatrix blk(fl, tdim, di_s * dj_s);
            mpq_class sgn = (i % 2 == 0) ? 1 : -1;
            int ai = r.dim(i), bi = r.dim(i + 1);
            int aj = r.dim(j), bj = r.dim(j + 1);
            int at = r.dim(i + j);
            ExactMatrix m_aa = r.mult_block(i, j);          // a c -> a-part
            ExactMatrix m_ab = r.mult_block(i, j + 1);      // a d -> b-part
            ExactMatrix m_ba = r.mult_block(i + 1, j);      // b c -> b-part
            for (int a = 0; a < ai; ++a) {
                for (int ccol = 0; ccol < aj; ++ccol)
                    for (int t = 0; t < at; ++t) {
                        mpq_class v = m_aa.get(t, a * aj + ccol);
                        if (v != 0)
                            blk.set(t, a * dj_s + ccol, v);
                    }
                for (int dcol = 0; dcol < bj; ++dcol)
                    for (int t = 0; t < r.dim(i + j + 1); ++t) {
                        mpq_class v = m_ab.get(t, a * bj + dcol);
                        if (v != 0)
                            blk.set(at + t, a * dj_s + aj + dcol, sgn * v);
                    }
            }
            for (int b = 0; b < bi; ++b)
                for (int ccol = 0; ccol < aj; ++ccol)
                    for (int t = 0; t < r.dim(i + j + 1); ++t) {
                        mpq_class v = m_ba.get(t, b * aj + ccol);
                        if (v != 0)
                            blk.set(at + t, (ai + b) * dj_s + ccol, v);
                    }
            s.set_mult_block(i, j, std::move(blk));
        }

    KoszulQuotient out;
    out.ring = std::make_shared<const Cdga>(std::move(s));
    out.canonical.source = ctx.ring;
    out.canonical.target = out.ring;
    out.canonical.blocks = GradedMap(r.components, out.ring->components, 0);
    for (auto& [n, dn] : r.components.dims) {
        ExactMatrix inc(fl, out.ring->dim(n), dn);
        for (int t = 0; t < dn; ++t)
            inc.set(t, t, 1);
        out.canonical.blocks.set_block(n, std::move(inc));
    }
    return out;
}

/* M \ xM over R \ xR: the cone of multiplication by x with the canonical
 * S-action  (a, b).(m, m') = (a m, (-1)^{|a|} a m' + b m). */
inline DgModule quotient_module(const KoszulQuotient& q, const DgModule& m, const ExactMatrix& x)
{
    const Cdga& r = *q.canonical.source;
    const Cdga& s = *q.ring;
    FieldSpec fl = r.field;
    require(m.over == q.canonical.source, "E_BASE", "module must live over the map source");

    DgModule out;
    out.over = q.ring;
    out.components = GradedSpace(fl);
    for (int n = m.components.lo() - 1; n <= m.components.hi(); ++n) {
        int d = m.dim(n) + m.dim(n + 1);
        if (d > 0)
            out.components.set_dim(n, d);
    }
    out.differential = GradedMap(out.components, out.components, +1);
    for (int n = out.components.lo(); n <= out.components.hi(); ++n) {
        int rows = out.components.dim(n + 1), cols = out.components.dim(n);
        if (rows == 0 || cols == 0)
            continue;
        ExactMatrix blk(fl, rows, cols);
        ExactMatrix da = m.differential.block(n);
        ExactMatrix db = m.differential.block(n + 1);
        ExactMatrix lx = m.act_operator(0, x, n + 1);
        for (int t = 0; t < m.dim(n + 1); ++t) {
            for (int c = 0; c < m.dim(n); ++c)
                if (!da.entry_is_zero(t, c))
                    blk.set(t, c, da.get(t, c));
            for (int c = 0; c < m.dim(n + 1); ++c)
                if (!lx.entry_is_zero(t, c))
                    blk.set(t, m.dim(n) + c, lx.get(t, c));
        }
        for (int t = 0; t < m.dim(n + 2); ++t)
            for (int c = 0; c < m.dim(n + 1); ++c)
                if (!db.entry_is_zero(t, c))
                    blk.set(m.dim(n + 1) + t, m.dim(n) + c, -db.get(t, c));
        out.differential.set_block(n, std::move(blk));
    }

    for (auto& [i, di_s] : s.components.dims)
        for (auto& [j, dj_out] : out.components.dims) {
            int tdim = out.components.dim(i + j);
            if (tdim == 0)
                continue;
            ExactMatrix blk(fl, tdim, di_s * dj_out);
            mpq_class sgn = (i % 2 == 0) ? 1 : -1;
            int ai = r.dim(i), bi = r.dim(i + 1);
            int aj = m.dim(j), bj = m.dim(j + 1);
            int at = m.dim(i + j);
            ExactMatrix a_mm = m.action_block(i, j);
            ExactMatrix a_mb = m.action_block(i, j + 1);
            ExactMatrix a_bm = m.action_block(i + 1, j);
            for (int a = 0; a < ai; ++a) {
                for (int ccol = 0; ccol < aj; ++ccol)
                    for (int t = 0; t < at; ++t) {
                        mpq_class v = a_mm.get(t, a * aj + ccol);
                        if (v != 0)
                            blk.set(t, a * dj_out + ccol, v);
                    }
                for (int dcol = 0; dcol < bj; ++dcol)
                    for (int t = 0; t < m.dim(i + j + 1); ++t) {
                        mpq_class v = a_mb.get(t, a * bj + dcol);
                        if (v != 0)
                            blk.set(at + t, a * dj_out + aj + dcol, sgn * v);
                    }
            }
            for (int b = 0; b < bi; ++b)
                for (int ccol = 0; ccol < aj; ++ccol)
                    for (int t = 0; t < m.dim(i + j + 1); ++t) {
                        mpq_class v = a_bm.get(t, b * aj + ccol);
                        if (v != 0)
                            blk.set(at + t, (ai + b) * dj_out + ccol, v);
                    }
            out.set_action_block(i, j, std::move(blk));
        }
    return out;
}

/* Iterated Koszul quotient R \ x_1 R \ ... \ x_r R.  Each x_i is an element
 * of the original R^0, carried through the canonical embeddings. */
inline std::shared_ptr<const Cdga> koszul(std::shared_ptr<const Cdga> r,
                                          const std::vector<ExactMatrix>& xs)
{
    std::shared_ptr<const Cdga> cur = std::move(r);
    int base_d0 = cur->dim(0);
    for (const auto& x : xs) {
        require(x.rows() == base_d0 && x.cols() == 1, "E_DEGREE",
                "Koszul element must be a degree-0 element of the base");
        RingCtx ctx = analyze(cur);
        // embed x into the current degree-0 component (a-part is preserved
        // along the tower since R^1 = 0 at every stage)
        ExactMatrix emb(cur->field, cur->dim(0), 1);
        for (int t = 0; t < base_d0; ++t)
            emb.set(t, 0, x.get(t, 0));
        cur = quotient_by_element(ctx, emb).ring;
    }
    return cur;
}

}  // namespace dgha
