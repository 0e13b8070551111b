#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgha/graded.hpp"

namespace dgha {

/* Connective commutative DG-algebra with finite-dimensional components,
 * given degreewise by bases.  Multiplication is stored per degree pair
 * (i, j) as a matrix  R^i (x) R^j -> R^{i+j}  of shape
 * dim(i+j) x (dim(i) * dim(j)), column index a * dim(j) + b. */
struct Cdga {
    FieldSpec field;
    GradedSpace components;
    ExactMatrix unit;  // column vector in degree 0
    std::map<std::pair<int, int>, ExactMatrix> mult;
    GradedMap differential;  // shift +1

    int dim(int n) const { return components.dim(n); }

    ExactMatrix mult_block(int i, int j) const
    {
        auto it = mult.find({i, j});
        if (it != mult.end())
            return it->second;
        return ExactMatrix::zeros(field, dim(i + j), dim(i) * dim(j));
    }

    void set_mult_block(int i, int j, ExactMatrix m)
    {
        require(m.rows() == dim(i + j) && m.cols() == dim(i) * dim(j), "E_DIM",
                "mult block shape mismatch");
        if (m.is_zero())
            mult.erase({i, j});
        else
            mult[{i, j}] = std::move(m);
    }

    /* Matrix of (v . -) : R^j -> R^{i+j} for v in degree i. */
    ExactMatrix left_mult_operator(int i, const ExactMatrix& v, int j) const
    {
        require(v.rows() == dim(i) && v.cols() == 1, "E_DIM", "left operand shape");
        ExactMatrix m = mult_block(i, j);
        int dj = dim(j), dt = dim(i + j);
        ExactMatrix op(field, dt, dj);
        for (int a = 0; a < dim(i); ++a) {
            mpq_class c = v.get(a, 0);
            if (c == 0)
                continue;
            for (int b = 0; b < dj; ++b)
                for (int t = 0; t < dt; ++t) {
                    mpq_class e = m.get(t, a * dj + b);
                    if (e != 0)
                        op.set(t, b, op.get(t, b) + c * e);
                }
        }
        return op;
    }

    /* Product of two vectors in fixed degrees. */
    ExactMatrix multiply(int i, const ExactMatrix& va, int j, const ExactMatrix& vb) const
    {
        return left_mult_operator(i, va, j) * vb;
    }

    ExactMatrix basis_vector(int deg, int index) const
    {
        ExactMatrix v(field, dim(deg), 1);
        v.set(index, 0, 1);
        return v;
    }

    VComplex underlying_complex() const { return VComplex(components, differential); }
};

/* Bounded DG-module over a Cdga.  Action tensors follow the same layout as
 * Cdga::mult: block (i, j) maps R^i (x) M^j -> M^{i+j}. */
struct DgModule {
    std::shared_ptr<const Cdga> over;
    GradedSpace components;
    std::map<std::pair<int, int>, ExactMatrix> action;
    GradedMap differential;

    int dim(int n) const { return components.dim(n); }

    ExactMatrix action_block(int i, int j) const
    {
        auto it = action.find({i, j});
        if (it != action.end())
            return it->second;
        return ExactMatrix::zeros(components.field, dim(i + j), over->dim(i) * dim(j));
    }

    void set_action_block(int i, int j, ExactMatrix m)
    {
        require(m.rows() == dim(i + j) && m.cols() == over->dim(i) * dim(j), "E_DIM",
                "action block shape mismatch");
        if (m.is_zero())
            action.erase({i, j});
        else
            action[{i, j}] = std::move(m);
    }

    /* Matrix of (r . -) : M^j -> M^{i+j} for a ring vector r in degree i. */
    ExactMatrix act_operator(int i, const ExactMatrix& r, int j) const
    {
        require(r.rows() == over->dim(i) && r.cols() == 1, "E_DIM", "ring vector shape");
        ExactMatrix m = action_block(i, j);
        int dj = dim(j), dt = dim(i + j);
        ExactMatrix op(components.field, dt, dj);
        for (int a = 0; a < over->dim(i); ++a) {
            mpq_class c = r.get(a, 0);
            if (c == 0)
                continue;
            for (int b = 0; b < dj; ++b)
                for (int t = 0; t < dt; ++t) {
                    mpq_class e = m.get(t, a * dj + b);
                    if (e != 0)
                        op.set(t, b, op.get(t, b) + c * e);
                }
        }
        return op;
    }

    ExactMatrix act(int i, const ExactMatrix& r, int j, const ExactMatrix& mv) const
    {
        return act_operator(i, r, j) * mv;
    }

    VComplex underlying_complex() const { return VComplex(components, differential); }

    bool is_zero_object() const { return components.empty(); }
};

/* The algebra as a module over itself (shares the mult tensors). */
inline DgModule as_module(std::shared_ptr<const Cdga> r)
{
    DgModule m;
    m.over = r;
    m.components = r->components;
    m.action = r->mult;
    m.differential = r->differential;
    return m;
}

/* Degree-0 morphism of DG-modules over one base. */
struct DgMorphism {
    DgModule source;
    DgModule target;
    GradedMap blocks;  // shift 0

    static DgMorphism zero(DgModule src, DgModule tgt)
    {
        DgMorphism f;
        f.blocks = GradedMap(src.components, tgt.components, 0);
        f.source = std::move(src);
        f.target = std::move(tgt);
        return f;
    }

    static DgMorphism identity(const DgModule& m)
    {
        DgMorphism f;
        f.source = m;
        f.target = m;
        f.blocks = GradedMap::identity(m.components);
        return f;
    }

    ExactMatrix block(int n) const { return blocks.block(n); }
};

/* Violations found by the axiom checkers; empty report means valid. */
struct Violation {
    std::string axiom;
    std::string witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool local_ok = false;  // H^0 is artinian local with residue field K

    bool ok() const { return violations.empty(); }

    void add(const std::string& axiom, const std::string& witness)
    {
        violations.push_back({axiom, witness});
    }

    std::string str() const
    {
        std::string s;
        for (auto& v : violations)
            s += v.axiom + " [" + v.witness + "]\n";
        return s;
    }
};

namespace detail {

inline std::string ijk(int i, int j, int a, int b)
{
    return "deg(" + std::to_string(i) + "," + std::to_string(j) + ") basis(" + std::to_string(a) +
           "," + std::to_string(b) + ")";
}

inline std::string ijk(int i, int j, int k, int a, int b, int c)
{
    return "deg(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
           ") basis(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace detail

/* Full axiom check for a Cdga (unit, associativity, graded commutativity,
 * Leibniz, d^2 = 0, d(1) = 0, connectivity).  Strict commutativity a^2 = 0
 * for odd |a| is NOT required. */
inline ValidationReport validate(const Cdga& r)
{
    ValidationReport rep;
    const auto& cs = r.components;

    if (!cs.empty() && cs.hi() > 0)
        rep.add("connective", "component above degree 0");
    if (cs.field != r.field)
        rep.add("field", "component field mismatch");
    if (r.unit.rows() != r.dim(0) || r.unit.cols() != 1)
        rep.add("unit-shape", "unit must be a degree-0 column vector");
    if (!r.differential.shapes_ok() || r.differential.shift != 1)
        rep.add("differential-shape", "blocks must match dims with shift +1");
    for (auto& [key, m] : r.mult) {
        auto [i, j] = key;
        if (m.rows() != r.dim(i + j) || m.cols() != r.dim(i) * r.dim(j))
            rep.add("mult-shape", detail::ijk(i, j, -1, -1));
    }
    if (!rep.ok())
        return rep;  // shape errors make the remaining checks meaningless

    if (!r.differential.compose_after(r.differential).is_zero())
        rep.add("d-squared", "d o d != 0");
    if (r.dim(0) > 0 && !(r.differential.block(0) * r.unit).is_zero())
        rep.add("d-unit", "d(1) != 0");

    // unit is a two-sided identity
    for (auto& [j, dj] : cs.dims) {
        ExactMatrix left = r.left_mult_operator(0, r.unit, j);
        if (left != ExactMatrix::identity(r.field, dj))
            rep.add("unit-left", "degree " + std::to_string(j));
        ExactMatrix right(r.field, dj, dj);
        ExactMatrix m = r.mult_block(j, 0);
        for (int a = 0; a < dj; ++a) {
            ExactMatrix col = r.multiply(j, r.basis_vector(j, a), 0, r.unit);
            for (int t = 0; t < dj; ++t)
                right.set(t, a, col.get(t, 0));
        }
        if (right != ExactMatrix::identity(r.field, dj))
            rep.add("unit-right", "degree " + std::to_string(j));
    }

    // graded commutativity: a b = (-1)^{|a||b|} b a
    for (auto& [i, di] : cs.dims)
        for (auto& [j, dj] : cs.dims) {
            if (i > j)
                continue;
            if (r.dim(i + j) == 0)
                continue;
            ExactMatrix mij = r.mult_block(i, j), mji = r.mult_block(j, i);
            mpq_class sign = ((i * j) % 2 == 0) ? 1 : -1;
            for (int a = 0; a < di; ++a)
                for (int b = 0; b < dj; ++b)
                    for (int t = 0; t < r.dim(i + j); ++t) {
                        if (mij.get(t, a * dj + b) != sign * mji.get(t, b * di + a)) {
                            rep.add("commutativity", detail::ijk(i, j, a, b));
                            t = r.dim(i + j);
                            b = dj;
                            a = di;
                        }
                    }
        }

    // associativity on basis triples
    for (auto& [i, di] : cs.dims)
        for (auto& [j, dj] : cs.dims)
            for (auto& [k, dk] : cs.dims) {
                if (r.dim(i + j + k) == 0)
                    continue;
                ExactMatrix mij = r.mult_block(i, j);
                ExactMatrix mjk = r.mult_block(j, k);
                for (int a = 0; a < di; ++a) {
                    ExactMatrix la_jk = r.left_mult_operator(i, r.basis_vector(i, a), j + k);
                    for (int b = 0; b < dj; ++b) {
                        ExactMatrix ab = mij.column(a * dj + b);
                        if (ab.is_zero()) {
                            // (ab)c = 0; a(bc) must vanish too
                            for (int c = 0; c < dk; ++c) {
                                ExactMatrix bc = mjk.column(b * dk + c);
                                if (!(la_jk * bc).is_zero()) {
                                    rep.add("associativity", detail::ijk(i, j, k, a, b, c));
                                }
                            }
                            continue;
                        }
                        ExactMatrix lab_k = r.left_mult_operator(i + j, ab, k);
                        for (int c = 0; c < dk; ++c) {
                            ExactMatrix lhs = lab_k.column(c);
                            ExactMatrix rhs = la_jk * mjk.column(b * dk + c);
                            if (lhs != rhs)
                                rep.add("associativity", detail::ijk(i, j, k, a, b, c));
                        }
                    }
                }
            }

    // Leibniz rule on basis pairs
    for (auto& [i, di] : cs.dims)
        for (auto& [j, dj] : cs.dims) {
            if (r.dim(i + j) == 0 && r.dim(i + j + 1) == 0)
                continue;
            ExactMatrix mij = r.mult_block(i, j);
            ExactMatrix di_blk = r.differential.block(i);
            ExactMatrix dj_blk = r.differential.block(j);
            ExactMatrix dij_blk = r.differential.block(i + j);
            mpq_class sign = (i % 2 == 0) ? 1 : -1;
            for (int a = 0; a < di; ++a) {
                ExactMatrix ea = r.basis_vector(i, a);
                ExactMatrix dea = di_blk * ea;
                for (int b = 0; b < dj; ++b) {
                    ExactMatrix eb = r.basis_vector(j, b);
                    ExactMatrix lhs = dij_blk * mij.column(a * dj + b);
                    ExactMatrix rhs = r.multiply(i + 1, dea, j, eb) +
                                      r.multiply(i, ea, j + 1, dj_blk * eb).scaled(sign);
                    if (lhs != rhs)
                        rep.add("leibniz", detail::ijk(i, j, a, b));
                }
            }
        }

    return rep;
}

/* Axiom check for a DG-module. */
inline ValidationReport validate_module(const DgModule& m)
{
    ValidationReport rep;
    const Cdga& r = *m.over;

    if (!m.differential.shapes_ok() || m.differential.shift != 1)
        rep.add("differential-shape", "module differential");
    for (auto& [key, blk] : m.action) {
        auto [i, j] = key;
        if (blk.rows() != m.dim(i + j) || blk.cols() != r.dim(i) * m.dim(j))
            rep.add("action-shape", detail::ijk(i, j, -1, -1));
    }
    if (!rep.ok())
        return rep;

    if (!m.differential.compose_after(m.differential).is_zero())
        rep.add("d-squared", "d o d != 0");

    for (auto& [j, dj] : m.components.dims) {
        if (m.act_operator(0, r.unit, j) != ExactMatrix::identity(m.components.field, dj))
            rep.add("unit-action", "degree " + std::to_string(j));
    }

    // associativity of the action: r (r' x) = (r r') x
    for (auto& [i, di] : r.components.dims)
        for (auto& [j, dj] : r.components.dims)
            for (auto& [k, dk] : m.components.dims) {
                if (m.dim(i + j + k) == 0)
                    continue;
                ExactMatrix mij = r.mult_block(i, j);
                ExactMatrix ajk = m.action_block(j, k);
                for (int a = 0; a < di; ++a) {
                    ExactMatrix la = m.act_operator(i, r.basis_vector(i, a), j + k);
                    for (int b = 0; b < dj; ++b) {
                        ExactMatrix ab = mij.column(a * dj + b);
                        ExactMatrix lab = m.act_operator(i + j, ab, k);
                        for (int c = 0; c < dk; ++c) {
                            ExactMatrix lhs = la * ajk.column(b * dk + c);
                            ExactMatrix rhs = lab.column(c);
                            if (lhs != rhs)
                                rep.add("action-associativity", detail::ijk(i, j, k, a, b, c));
                        }
                    }
                }
            }

    // Leibniz: d(r x) = d(r) x + (-1)^{|r|} r d(x)
    for (auto& [i, di] : r.components.dims)
        for (auto& [j, dj] : m.components.dims) {
            if (m.dim(i + j) == 0 && m.dim(i + j + 1) == 0)
                continue;
            ExactMatrix aij = m.action_block(i, j);
            ExactMatrix dr = r.differential.block(i);
            ExactMatrix dm = m.differential.block(j);
            ExactMatrix dij = m.differential.block(i + j);
            mpq_class sign = (i % 2 == 0) ? 1 : -1;
            for (int a = 0; a < di; ++a) {
                ExactMatrix ea = r.basis_vector(i, a);
                ExactMatrix dea = dr * ea;
                for (int b = 0; b < dj; ++b) {
                    ExactMatrix eb(m.components.field, dj, 1);
                    eb.set(b, 0, 1);
                    ExactMatrix lhs = dij * aij.column(a * dj + b);
                    ExactMatrix rhs = m.act(i + 1, dea, j, eb) + m.act(i, ea, j + 1, dm * eb).scaled(sign);
                    if (lhs != rhs)
                        rep.add("module-leibniz", detail::ijk(i, j, a, b));
                }
            }
        }

    return rep;
}

/* Morphism check: chain map + R-linearity on basis elements. */
inline ValidationReport check_morphism(const DgMorphism& f)
{
    ValidationReport rep;
    if (f.source.over != f.target.over)
        rep.add("morphism-base", "source and target bases differ");
    if (f.blocks.shift != 0 || !f.blocks.shapes_ok())
        rep.add("morphism-shape", "blocks must be degree 0 and match dims");
    if (!rep.ok())
        return rep;

    // commutes with differentials
    for (auto& [n, dn] : f.source.components.dims) {
        ExactMatrix lhs = f.target.differential.block(n) * f.block(n);
        ExactMatrix rhs = f.block(n + 1) * f.source.differential.block(n);
        if (lhs != rhs)
            rep.add("morphism-chain", "degree " + std::to_string(n));
    }

    // commutes with the action
    const Cdga& r = *f.source.over;
    for (auto& [i, di] : r.components.dims)
        for (auto& [j, dj] : f.source.components.dims) {
            if (f.source.dim(i + j) == 0 && f.target.dim(i + j) == 0)
                continue;
            for (int a = 0; a < di; ++a) {
                ExactMatrix ea = r.basis_vector(i, a);
                ExactMatrix lhs = f.block(i + j) * f.source.act_operator(i, ea, j);
                ExactMatrix rhs = f.target.act_operator(i, ea, j) * f.block(j);
                if (lhs != rhs) {
                    rep.add("morphism-linearity", detail::ijk(i, j, a, -1));
                    a = di;
                }
            }
        }
    return rep;
}

}  // namespace dgha
