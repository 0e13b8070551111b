#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgha/matrix.hpp"

namespace dgha {

/* Finitely supported graded vector space: degree -> dimension, nonzero
 * entries only.  Cohomological (upper) indexing throughout. */
struct GradedSpace {
    FieldSpec field;
    std::map<int, int> dims;

    GradedSpace() : field(FieldSpec::rationals()) {}
    explicit GradedSpace(FieldSpec f) : field(f) {}

    int dim(int n) const
    {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    void set_dim(int n, int d)
    {
        require(d >= 0, "E_DIM", "negative dimension");
        if (d == 0)
            dims.erase(n);
        else
            dims[n] = d;
    }

    int total_dim() const
    {
        int t = 0;
        for (auto& [n, d] : dims)
            t += d;
        return t;
    }

    bool empty() const { return dims.empty(); }

    /* Window [lo, hi] of possibly-nonzero degrees; (0, -1)-style empty
     * window for the zero space. */
    int lo() const { return dims.empty() ? 0 : dims.begin()->first; }
    int hi() const { return dims.empty() ? -1 : dims.rbegin()->first; }

    bool operator==(const GradedSpace& o) const { return field == o.field && dims == o.dims; }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }
};

/* Degree-homogeneous linear map between graded spaces.  The block at degree
 * n maps source degree n to target degree n + shift; absent blocks are zero. */
struct GradedMap {
    GradedSpace source;
    GradedSpace target;
    int shift = 0;
    std::map<int, ExactMatrix> blocks;

    GradedMap() = default;
    GradedMap(GradedSpace src, GradedSpace tgt, int sh)
        : source(std::move(src)), target(std::move(tgt)), shift(sh) {}

    static GradedMap zero(const GradedSpace& src, const GradedSpace& tgt, int sh)
    {
        return GradedMap(src, tgt, sh);
    }

    static GradedMap identity(const GradedSpace& s)
    {
        GradedMap m(s, s, 0);
        for (auto& [n, d] : s.dims)
            m.blocks.emplace(n, ExactMatrix::identity(s.field, d));
        return m;
    }

    ExactMatrix block(int n) const
    {
        auto it = blocks.find(n);
        if (it != blocks.end())
            return it->second;
        return ExactMatrix::zeros(source.field, target.dim(n + shift), source.dim(n));
    }

    void set_block(int n, ExactMatrix m)
    {
        require(m.rows() == target.dim(n + shift) && m.cols() == source.dim(n), "E_DIM",
                "block shape mismatch at degree " + std::to_string(n));
        if (m.is_zero())
            blocks.erase(n);
        else
            blocks[n] = std::move(m);
    }

    bool shapes_ok() const
    {
        for (auto& [n, m] : blocks)
            if (m.rows() != target.dim(n + shift) || m.cols() != source.dim(n))
                return false;
        return true;
    }

    bool is_zero() const
    {
        for (auto& [n, m] : blocks)
            if (!m.is_zero())
                return false;
        return true;
    }

    GradedMap compose_after(const GradedMap& inner) const
    {
        // this o inner
        require(inner.target == source, "E_DIM", "composition space mismatch");
        GradedMap r(inner.source, target, shift + inner.shift);
        for (auto& [n, m] : inner.blocks) {
            ExactMatrix prod = block(n + inner.shift) * m;
            if (!prod.is_zero())
                r.blocks.emplace(n, std::move(prod));
        }
        return r;
    }

    GradedMap operator+(const GradedMap& o) const
    {
        require(source == o.source && target == o.target && shift == o.shift, "E_DIM",
                "sum shape mismatch");
        GradedMap r(source, target, shift);
        for (auto& [n, d] : source.dims) {
            ExactMatrix s = block(n) + o.block(n);
            if (!s.is_zero())
                r.blocks.emplace(n, std::move(s));
        }
        return r;
    }

    GradedMap scaled(const mpq_class& c) const
    {
        GradedMap r(source, target, shift);
        for (auto& [n, m] : blocks) {
            ExactMatrix s = m.scaled(c);
            if (!s.is_zero())
                r.blocks.emplace(n, std::move(s));
        }
        return r;
    }
};

/* Cochain complex of vector spaces: differential raises degree by one. */
struct VComplex {
    GradedSpace space;
    GradedMap d;  // shift +1

    VComplex() = default;
    explicit VComplex(GradedSpace s) : space(s), d(s, s, +1) {}
    VComplex(GradedSpace s, GradedMap diff) : space(std::move(s)), d(std::move(diff))
    {
        require(d.shift == 1, "E_COMPLEX", "differential must have shift +1");
    }

    bool is_complex() const
    {
        if (!d.shapes_ok())
            return false;
        return d.compose_after(d).is_zero();
    }
};

/* Cohomology with deterministic cocycle representatives: per degree, the
 * kernel columns that extend an echelon basis of the coboundary space. */
struct Cohomology {
    GradedSpace h;
    std::map<int, ExactMatrix> reps;        // space.dim(n) x h.dim(n), columns are cocycles
    std::map<int, ExactMatrix> bnd_basis;   // echelon basis of im d^{n-1}

    /* Coordinates of cocycle columns v (in degree n) with respect to the
     * representative basis, modulo coboundaries. */
    ExactMatrix class_coords(int n, const ExactMatrix& v) const
    {
        auto r = reps.find(n);
        ExactMatrix rep = (r != reps.end())
                              ? r->second
                              : ExactMatrix::zeros(v.field(), v.rows(), 0);
        auto b = bnd_basis.find(n);
        ExactMatrix bnd = (b != bnd_basis.end())
                              ? b->second
                              : ExactMatrix::zeros(v.field(), v.rows(), 0);
        ExactMatrix sys = rep.hstack(bnd);
        auto x = sys.solve(v);
        require(x.has_value(), "E_COCYCLE", "vector is not a cocycle class combination");
        std::vector<int> top;
        for (int i = 0; i < rep.cols(); ++i)
            top.push_back(i);
        // rows of the solution corresponding to representative columns
        ExactMatrix out(v.field(), rep.cols(), v.cols());
        for (int i = 0; i < rep.cols(); ++i)
            for (int c = 0; c < v.cols(); ++c)
                out.set(i, c, x->get(i, c));
        return out;
    }
};

inline Cohomology cohomology(const VComplex& c)
{
    require(c.is_complex(), "E_NOT_A_COMPLEX", "d o d != 0");
    Cohomology out;
    out.h = GradedSpace(c.space.field);
    if (c.space.empty())
        return out;
    for (int n = c.space.lo(); n <= c.space.hi(); ++n) {
        int dn = c.space.dim(n);
        if (dn == 0)
            continue;
        ExactMatrix ker = c.d.block(n).kernel_basis();
        ExactMatrix bnd = c.d.block(n - 1).image_basis();
        std::vector<int> pick = independent_columns_mod(bnd, ker);
        ExactMatrix reps = ker.columns(pick);
        int hdim = reps.cols();
        if (hdim > 0)
            out.h.set_dim(n, hdim);
        out.reps[n] = std::move(reps);
        out.bnd_basis[n] = std::move(bnd);
    }
    return out;
}

inline VComplex shift(const VComplex& c, int n)
{
    GradedSpace s(c.space.field);
    for (auto& [deg, dim] : c.space.dims)
        s.set_dim(deg - n, dim);
    GradedMap d(s, s, +1);
    mpq_class sign = (n % 2 == 0) ? 1 : -1;
    for (auto& [deg, m] : c.d.blocks)
        d.set_block(deg - n, m.scaled(sign));
    return VComplex(std::move(s), std::move(d));
}

/* inf / sup / amplitude of cohomology, with the zero-object conventions
 * inf 0 = +infty, sup 0 = -infty, amp 0 = -infty. */
struct InfSupAmp {
    bool acyclic = true;
    int inf = 0, sup = 0, amp = 0;

    std::string inf_str() const { return acyclic ? "+inf" : std::to_string(inf); }
    std::string sup_str() const { return acyclic ? "-inf" : std::to_string(sup); }
    std::string amp_str() const { return acyclic ? "-inf" : std::to_string(amp); }
};

inline InfSupAmp inf_sup_amp(const GradedSpace& h)
{
    InfSupAmp r;
    if (h.empty())
        return r;
    r.acyclic = false;
    r.inf = h.lo();
    r.sup = h.hi();
    r.amp = r.sup - r.inf;
    return r;
}

inline InfSupAmp inf_sup_amp(const VComplex& c)
{
    return inf_sup_amp(cohomology(c).h);
}

}  // namespace dgha
