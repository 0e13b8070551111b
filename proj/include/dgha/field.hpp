#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dgha/error.hpp"

namespace dgha {

/* Scalars live in QQ (arbitrary-precision rationals) or in a prime field F_p.
 * Every matrix, algebra and module carries one FieldSpec; mixing fields in a
 * single computation is a contract violation. */
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::int64_t p = 0;  // modulus, PrimeField only

    static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }

    static FieldSpec prime_field(std::int64_t p)
    {
        require(is_prime(p), "E_FIELD", "modulus must be a prime in [2, 2^31)");
        return FieldSpec{Kind::PrimeField, p};
    }

    bool is_q() const { return kind == Kind::Rationals; }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    std::string str() const
    {
        return is_q() ? std::string("Q") : "F" + std::to_string(p);
    }

    static bool is_prime(std::int64_t n)
    {
        if (n < 2 || n >= (std::int64_t(1) << 31))
            return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }
};

/* Residue arithmetic helpers (canonical representatives in [0, p)). */
inline std::int64_t fp_reduce(std::int64_t x, std::int64_t p)
{
    std::int64_t r = x % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t fp_add(std::int64_t a, std::int64_t b, std::int64_t p) { return (a + b) % p; }
inline std::int64_t fp_sub(std::int64_t a, std::int64_t b, std::int64_t p) { return fp_reduce(a - b, p); }
inline std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p) { return (a * b) % p; }
inline std::int64_t fp_neg(std::int64_t a, std::int64_t p) { return a == 0 ? 0 : p - a; }

inline std::int64_t fp_inv(std::int64_t a, std::int64_t p)
{
    require(a % p != 0, "E_DIV0", "inverse of zero in F_p");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = fp_reduce(a, p);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return fp_reduce(t, p);
}

/* Embed a rational into F_p (denominator must be invertible mod p). */
inline std::int64_t fp_from_mpq(const mpq_class& x, std::int64_t p)
{
    mpz_class num = x.get_num(), den = x.get_den();
    std::int64_t n = fp_reduce(mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)), p);
    std::int64_t d = fp_reduce(mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)), p);
    require(d != 0, "E_FIELD", "rational with denominator divisible by p");
    return fp_mul(n, fp_inv(d, p), p);
}

}  // namespace dgha
