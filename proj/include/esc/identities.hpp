#pragma once

// Closed-form decompositions of 4/n. Each constructor returns a verified
// Decomposition for the n its parameters generate.

#include <optional>

#include "esc/arith.hpp"
#include "esc/triple.hpp"

namespace esc {

/// 4/D = 1/(kab) + 1/(kaD) + 1/(kbD) with D = 4kab - a - b.
///
/// k = 1 is the two-parameter family (c1, c2) = (a, b). Substituting
/// a = 10*n1 - i, b = 10*n2 - j fixes the unit digit of D when k is a multiple
/// of 5, which yields the unit-digit families.
[[nodiscard]] inline Decomposition eq5_general(Int k, Int a, Int b)
{
    if (k < 1 || a < 1 || b < 1) throw DomainError("eq5_general parameters must be >= 1");
    const Int kab = checked_product(k, a, b);
    const Int n = checked_sub(checked_mul(4, kab), checked_add(a, b));
    if (n < 2) throw DomainError("eq5_general: 4kab - a - b must be >= 2");
    IdentityParams p;
    p.k = k;
    p.a = a;
    p.b = b;
    return Decomposition::make(n, {kab, checked_product(k, a, n), checked_product(k, b, n)},
                               Method::eq5_general, std::move(p));
}

// From 8c1c2 = 2(2c1+1)(2c2-1) + (4(c1-c2)+1) + 1, divided through by
// 2c1c2(2c1+1)(2c2-1)(4(c1-c2)+1). Requires c1 >= c2 for a positive middle factor.
[[nodiscard]] inline Decomposition eq6_corrected(Int c1, Int c2)
{
    if (c1 < 1 || c2 < 1) throw DomainError("eq6_corrected parameters must be >= 1");
    if (c1 < c2) throw DomainError("eq6_corrected requires c1 >= c2");
    const Int u = checked_add(checked_mul(2, c1), 1);
    const Int v = checked_sub(checked_mul(2, c2), 1);
    const Int w = checked_add(checked_mul(4, c1 - c2), 1);
    const Int n = checked_product(u, v, w);
    const Int two_c = checked_product(2, c1, c2);
    IdentityParams p;
    p.c1 = c1;
    p.c2 = c2;
    return Decomposition::make(n,
                               {checked_product(c1, c2, w), checked_product(two_c, u, v),
                                checked_product(two_c, u, v, w)},
                               Method::eq6_corrected, std::move(p));
}

[[nodiscard]] inline Decomposition eq7(Int c1, Int c2)
{
    if (c1 < 1 || c2 < 1) throw DomainError("eq7 parameters must be >= 1");
    const Int u1 = 2 * c1 - 1;
    const Int u2 = 2 * c2 - 1;
    const Int v1 = checked_sub(checked_mul(4, c1), 1);
    const Int v2 = checked_sub(checked_mul(4, c2), 1);
    const Int two_c = checked_product(2, c1, c2);
    IdentityParams p;
    p.c1 = c1;
    p.c2 = c2;
    return Decomposition::make(checked_product(u1, u2, v1, v2),
                               {checked_product(c1, c2, v1, v2), checked_product(two_c, u1, u2, v2),
                                checked_product(two_c, u1, u2, v1)},
                               Method::eq7, std::move(p));
}

[[nodiscard]] inline Decomposition eq8(Int c1, Int c2)
{
    if (c1 < 1 || c2 < 1) throw DomainError("eq8 parameters must be >= 1");
    const Int s = checked_add(c1, c2);
    const Int f1 = checked_add(checked_mul(4, c1), 1);
    const Int f2 = checked_sub(checked_mul(4, c2), 1);
    const Int tail = checked_product(2, s, f1);
    IdentityParams p;
    p.c1 = c1;
    p.c2 = c2;
    return Decomposition::make(checked_mul(f1, f2), {checked_mul(s, f2), tail, tail}, Method::eq8,
                               std::move(p));
}

// 4/(6k-1) = 1/2k + 1/(6k-1) + 1/(2k(6k-1))
[[nodiscard]] inline Decomposition family_6k_minus_1(Int k)
{
    if (k < 1) throw DomainError("family_6k_minus_1 requires k >= 1");
    const Int n = checked_sub(checked_mul(6, k), 1);
    IdentityParams p;
    p.k = k;
    return Decomposition::make(n, {2 * k, n, checked_product(2, k, n)}, Method::family_6k_minus_1,
                               std::move(p));
}

// 4/(4k-1) = 1/k + 2/(2k(4k-1)); the squared form is the same identity scaled
// by 4k-1. Valid for every k >= 1.
[[nodiscard]] inline Decomposition family_4k_minus_1(Int k, bool squared)
{
    if (k < 1) throw DomainError("family_4k_minus_1 requires k >= 1");
    const Int base = checked_sub(checked_mul(4, k), 1);
    const Int scale = squared ? base : 1;
    const Int n = checked_mul(base, scale);
    const Int tail = checked_product(2, k, base, scale);
    IdentityParams p;
    p.k = k;
    p.squared = squared;
    return Decomposition::make(n, {checked_mul(k, scale), tail, tail}, Method::family_4k_minus_1,
                               std::move(p));
}

// 4/(8k-3) = 1/(3k-1) + 1/(2(3k-1)) + 1/(2(3k-1)(8k-3)), and its square.
[[nodiscard]] inline Decomposition family_8k_minus_3(Int k, bool squared)
{
    if (k < 1) throw DomainError("family_8k_minus_3 requires k >= 1");
    const Int base = checked_sub(checked_mul(8, k), 3);
    const Int r = checked_sub(checked_mul(3, k), 1);
    const Int scale = squared ? base : 1;
    IdentityParams p;
    p.k = k;
    p.squared = squared;
    return Decomposition::make(checked_mul(base, scale),
                               {checked_mul(r, scale), checked_product(2, r, scale),
                                checked_product(2, r, base, scale)},
                               Method::family_8k_minus_3, std::move(p));
}

/// 4/2k = 1/2k + 1/2k + 1/k, else 4/3k = 1/2k + 1/2k + 1/3k.
[[nodiscard]] inline std::optional<Decomposition> trivial_small_factor(Int n)
{
    if (n < 2) throw DomainError("trivial_small_factor requires n >= 2");
    IdentityParams p;
    if (n % 2 == 0) {
        const Int k = n / 2;
        p.k = k;
        return Decomposition::make(n, {2 * k, 2 * k, k}, Method::trivial_small_factor, std::move(p));
    }
    if (n % 3 == 0) {
        const Int k = n / 3;
        p.k = k;
        return Decomposition::make(n, {2 * k, 2 * k, 3 * k}, Method::trivial_small_factor, std::move(p));
    }
    return std::nullopt;
}

// 4/n = 1/n + 1/((n+1)/3) + 1/(n(n+1)/3) for n = 2 (mod 3).
[[nodiscard]] inline Decomposition mod3_identity(Int n)
{
    if (n < 2 || n % 3 != 2) throw DomainError("mod3_identity requires n >= 2 and n = 2 (mod 3)");
    const Int third = (n + 1) / 3;
    return Decomposition::make(n, {n, third, checked_mul(n, third)}, Method::mod3_identity);
}

enum class SequenceKind { a_sequence, b_sequence };

struct SequenceSpec {
    SequenceKind kind = SequenceKind::a_sequence;
    Int k = 1;
    int index = 0;
};

// Numerator of the closed form before the exact division by 3:
// a: (3k+1) * 2^(2i+2) - 1,  b: (3k-1) * 2^(2i+1) - 1.
[[nodiscard]] inline Int sequence_numerator(const SequenceSpec& s)
{
    if (s.k < 1) throw DomainError("sequence k must be >= 1");
    if (s.index < 0) throw DomainError("sequence index must be >= 0");
    const int shift = s.kind == SequenceKind::a_sequence ? 2 * s.index + 2 : 2 * s.index + 1;
    if (shift > 125) throw OverflowError("sequence index too large");
    const Int lead = s.kind == SequenceKind::a_sequence ? checked_add(checked_mul(3, s.k), 1)
                                                        : checked_sub(checked_mul(3, s.k), 1);
    return checked_sub(checked_mul(lead, static_cast<Int>(1) << shift), 1);
}

[[nodiscard]] inline Int sequence_value(const SequenceSpec& s)
{
    const Int num = sequence_numerator(s);
    // (3k+-1) * 4^i * {4, 2} is 1 mod 3 for every i.
    if (num % 3 != 0) throw std::logic_error("sequence numerator not divisible by 3");
    return num / 3;
}

} // namespace esc
