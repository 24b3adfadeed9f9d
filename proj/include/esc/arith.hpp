#pragma once

// Checked 128-bit integer arithmetic used throughout the library.
//
// Every product and sum that feeds a denominator goes through the checked_*
// helpers; a wrap raises OverflowError instead of producing a wrong answer.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace esc {

using Int = __int128;

inline constexpr Int kIntMax = static_cast<Int>((static_cast<unsigned __int128>(1) << 127) - 1);

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

[[nodiscard]] constexpr Int checked_add(Int a, Int b)
{
    Int r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
    return r;
}

[[nodiscard]] constexpr Int checked_sub(Int a, Int b)
{
    Int r = 0;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
    return r;
}

[[nodiscard]] constexpr Int checked_mul(Int a, Int b)
{
    Int r = 0;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
    return r;
}

template <typename... Ts>
[[nodiscard]] constexpr Int checked_product(Int first, Ts... rest)
{
    Int r = first;
    ((r = checked_mul(r, static_cast<Int>(rest))), ...);
    return r;
}

[[nodiscard]] constexpr Int abs_value(Int a) { return a < 0 ? -a : a; }

[[nodiscard]] constexpr Int gcd(Int a, Int b)
{
    a = abs_value(a);
    b = abs_value(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Ceiling of a/b for a >= 0, b > 0.
[[nodiscard]] constexpr Int ceil_div(Int a, Int b) { return a / b + (a % b != 0 ? 1 : 0); }

// Floor of the square root, exact for every non-negative Int.
[[nodiscard]] inline Int isqrt(Int v)
{
    if (v < 0) throw DomainError("isqrt of a negative value");
    if (v < 2) return v;
    auto r = static_cast<Int>(std::sqrt(static_cast<long double>(v)));
    // r is within a few units of the true root; walk it in without squaring past 2^127.
    while (r > 0 && r > v / r) --r;
    while ((r + 1) <= v / (r + 1)) ++r;
    return r;
}

// Root if v is a perfect square, -1 otherwise.
[[nodiscard]] inline Int exact_sqrt(Int v)
{
    if (v < 0) return -1;
    Int r = isqrt(v);
    return r * r == v ? r : -1;
}

[[nodiscard]] inline std::string to_string(Int v)
{
    if (v == 0) return "0";
    const bool neg = v < 0;
    auto u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

// Parses an unsigned decimal of any length; rejects signs, blanks and
// anything that does not fit in Int.
[[nodiscard]] inline Int parse_int(std::string_view text)
{
    if (text.empty()) throw DomainError("empty integer");
    Int v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') throw DomainError("not a decimal integer: " + std::string(text));
        try {
            v = checked_add(checked_mul(v, 10), c - '0');
        } catch (const OverflowError&) {
            throw OverflowError("integer exceeds 128-bit capacity: " + std::string(text));
        }
    }
    return v;
}

// Trial-division factorization into (prime, exponent) pairs, primes ascending.
[[nodiscard]] inline std::vector<std::pair<Int, int>> factorize(Int n)
{
    if (n < 1) throw DomainError("factorize requires a positive value");
    std::vector<std::pair<Int, int>> out;
    auto take = [&](Int p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (Int p = 5; p <= n / p; p += 6) {
        take(p);
        take(p + 2);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// All positive divisors, ascending.
[[nodiscard]] inline std::vector<Int> divisors(Int n)
{
    std::vector<Int> ds{1};
    for (auto [p, e] : factorize(n)) {
        const std::size_t base = ds.size();
        Int pk = 1;
        for (int i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

} // namespace esc
