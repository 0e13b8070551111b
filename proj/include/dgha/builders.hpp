#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <vector>

#include "dgha/cdga.hpp"

namespace dgha {

/* The base field as a Cdga concentrated in degree 0. */
inline Cdga field_algebra(FieldSpec field)
{
    Cdga r;
    r.field = field;
    r.components = GradedSpace(field);
    r.components.set_dim(0, 1);
    r.unit = ExactMatrix(field, 1, 1);
    r.unit.set(0, 0, 1);
    r.differential = GradedMap(r.components, r.components, +1);
    ExactMatrix m(field, 1, 1);
    m.set(0, 0, 1);
    r.set_mult_block(0, 0, std::move(m));
    return r;
}

/* Artinian monomial quotient K[x_1..x_v]/(monomial ideal), concentrated in
 * degree 0.  Monomials are exponent vectors; the basis is every monomial not
 * divisible by a relation, in lexicographic order.  Rejected if the basis is
 * not finite (some variable has no pure power in the ideal). */
struct MonomialAlgebra {
    std::shared_ptr<const Cdga> ring;
    int nvars = 0;
    std::vector<std::vector<int>> basis;         // exponent vectors, index order
    std::map<std::vector<int>, int> index;       // exponents -> basis index
    std::vector<std::vector<int>> relations;

    bool reduces_to_zero(const std::vector<int>& e) const
    {
        for (const auto& r : relations) {
            bool divides = true;
            for (int v = 0; v < nvars; ++v)
                if (e[v] < r[v]) {
                    divides = false;
                    break;
                }
            if (divides)
                return true;
        }
        return false;
    }

    /* Basis index of a monomial, or -1 when it reduces to zero. */
    int index_of(const std::vector<int>& e) const
    {
        if (reduces_to_zero(e))
            return -1;
        auto it = index.find(e);
        require(it != index.end(), "E_INTERNAL", "monomial outside enumerated basis");
        return it->second;
    }

    ExactMatrix monomial_vector(const std::vector<int>& e) const
    {
        ExactMatrix v(ring->field, static_cast<int>(basis.size()), 1);
        int i = index_of(e);
        if (i >= 0)
            v.set(i, 0, 1);
        return v;
    }
};

inline MonomialAlgebra make_monomial_quotient(FieldSpec field, int nvars,
                                              std::vector<std::vector<int>> relations,
                                              int basis_cap = 4096)
{
    require(nvars >= 0, "E_ARG", "negative variable count");
    for (auto& r : relations) {
        require(static_cast<int>(r.size()) == nvars, "E_ARG", "relation arity mismatch");
        int total = 0;
        for (int e : r) {
            require(e >= 0, "E_ARG", "negative exponent");
            total += e;
        }
        require(total > 0, "E_ARG", "unit relation would collapse the ring");
    }

    MonomialAlgebra alg;
    alg.nvars = nvars;
    alg.relations = relations;

    // enumerate the standard monomials breadth-first from 1
    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> queue{std::vector<int>(nvars, 0)};
    seen[queue[0]] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int> cur = queue[qi];
        for (int v = 0; v < nvars; ++v) {
            std::vector<int> next = cur;
            next[v] += 1;
            if (seen.count(next) || alg.reduces_to_zero(next))
                continue;
            require(static_cast<int>(seen.size()) < basis_cap, "E_NOT_FINITE",
                    "monomial basis is not finite (or exceeds cap)");
            seen[next] = 0;
            queue.push_back(next);
        }
    }
    for (auto& [e, idx] : seen)
        alg.basis.push_back(e);
    std::sort(alg.basis.begin(), alg.basis.end());
    for (size_t i = 0; i < alg.basis.size(); ++i)
        alg.index[alg.basis[i]] = static_cast<int>(i);

    int d = static_cast<int>(alg.basis.size());
    Cdga r;
    r.field = field;
    r.components = GradedSpace(field);
    r.components.set_dim(0, d);
    r.differential = GradedMap(r.components, r.components, +1);
    r.unit = ExactMatrix(field, d, 1);
    r.unit.set(alg.index.at(std::vector<int>(nvars, 0)), 0, 1);

    ExactMatrix mult(field, d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            std::vector<int> prod(nvars);
            for (int v = 0; v < nvars; ++v)
                prod[v] = alg.basis[a][v] + alg.basis[b][v];
            if (alg.reduces_to_zero(prod))
                continue;
            auto it = alg.index.find(prod);
            if (it != alg.index.end())
                mult.set(it->second, a * d + b, 1);
            // a standard monomial product is either standard or zero
        }
    r.set_mult_block(0, 0, std::move(mult));

    alg.ring = std::make_shared<const Cdga>(std::move(r));
    return alg;
}

/* Trivial extension A (+) A^dual of a degree-0 algebra, with the dual part
 * placed in degree -t (t >= 0) and zero differential.  Square-zero on the
 * dual part; (a, f)(b, g) = (ab, a.g + b.f) with (a.f)(c) = f(ac). */
inline Cdga trivial_extension(const Cdga& a, int t)
{
    require(t >= 0, "E_ARG", "dual part must sit in non-positive degree");
    require(a.components.dims.size() == 1 && a.components.dim(0) > 0 && a.differential.is_zero(),
            "E_ARG", "trivial extension expects an ordinary degree-0 algebra");
    int n = a.dim(0);
    FieldSpec field = a.field;

    Cdga r;
    r.field = field;
    r.components = GradedSpace(field);
    ExactMatrix m00 = a.mult_block(0, 0);

    if (t == 0) {
        // both parts in degree 0: basis (e_0..e_{n-1}, f_0..f_{n-1})
        int d = 2 * n;
        r.components.set_dim(0, d);
        r.differential = GradedMap(r.components, r.components, +1);
        r.unit = ExactMatrix(field, d, 1);
        for (int i = 0; i < n; ++i)
            r.unit.set(i, 0, a.unit.get(i, 0));
        ExactMatrix mult(field, d, d * d);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                for (int tgt = 0; tgt < n; ++tgt) {
                    mpq_class c = m00.get(tgt, x * n + y);
                    if (c != 0)
                        mult.set(tgt, x * d + y, c);  // e_x e_y
                }
                // e_x f_y: (e_x . f_y)(e_c) = f_y(e_x e_c) -> coeff of f_c is m00[y, x*n+c]
                for (int c = 0; c < n; ++c) {
                    mpq_class v = m00.get(y, x * n + c);
                    if (v != 0) {
                        mult.set(n + c, x * d + (n + y), v);
                        mult.set(n + c, (n + y) * d + x, v);  // f_y e_x, even degrees commute
                    }
                }
            }
        r.set_mult_block(0, 0, std::move(mult));
        return r;
    }

    r.components.set_dim(0, n);
    r.components.set_dim(-t, n);
    r.differential = GradedMap(r.components, r.components, +1);
    r.unit = a.unit;
    r.set_mult_block(0, 0, m00);
    ExactMatrix blk0t(field, n, n * n);  // A (x) dual -> dual
    ExactMatrix blkt0(field, n, n * n);  // dual (x) A -> dual
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int c = 0; c < n; ++c) {
                mpq_class v = m00.get(y, x * n + c);
                if (v != 0) {
                    blk0t.set(c, x * n + y, v);
                    // commutativity sign (-1)^{0 * t} = 1
                    blkt0.set(c, y * n + x, v);
                }
            }
    r.set_mult_block(0, -t, std::move(blk0t));
    r.set_mult_block(-t, 0, std::move(blkt0));
    // dual . dual lands in degree -2t = 0 component: identically zero
    return r;
}

}  // namespace dgha
