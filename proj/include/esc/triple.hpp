#pragma once

#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "esc/arith.hpp"

namespace esc {

/// Three positive denominators with 4/n = 1/x + 1/y + 1/z for some n.
struct UnitTriple {
    Int x = 1;
    Int y = 1;
    Int z = 1;

    friend constexpr auto operator<=>(const UnitTriple&, const UnitTriple&) = default;
};

[[nodiscard]] constexpr UnitTriple canonicalize(UnitTriple t)
{
    if (t.x > t.y) std::swap(t.x, t.y);
    if (t.y > t.z) std::swap(t.y, t.z);
    if (t.x > t.y) std::swap(t.x, t.y);
    return t;
}

[[nodiscard]] inline std::string to_string(const UnitTriple& t)
{
    return "(" + to_string(t.x) + "," + to_string(t.y) + "," + to_string(t.z) + ")";
}

/// True iff 4/n = 1/x + 1/y + 1/z exactly.
///
/// Works on the smallest denominator first: 4/n - 1/x is reduced, then 1/y is
/// subtracted and the remainder compared with 1/z. Range checks on x and y
/// reject impossible triples before any product is formed, which bounds every
/// intermediate by roughly n^4. Throws OverflowError past that capacity and
/// DomainError for n < 2 or non-positive entries.
[[nodiscard]] inline bool verify_triple(Int n, const UnitTriple& t)
{
    if (n < 2) throw DomainError("verify_triple requires n >= 2");
    if (t.x < 1 || t.y < 1 || t.z < 1) throw DomainError("unit triple entries must be positive");
    const UnitTriple c = canonicalize(t);

    // 1/x must be below 4/n, and 3/x must reach it.
    if (checked_mul(4, c.x) <= n) return false;
    if (checked_mul(4, c.x) > checked_mul(3, n)) return false;

    Int p = 4 * c.x - n;
    Int q = checked_mul(n, c.x);
    Int g = gcd(p, q);
    p /= g;
    q /= g;

    // p/q = 1/y + 1/z with y <= z needs q < p*y <= 2q.
    const Int py = checked_mul(p, c.y);
    if (py <= q || py > checked_mul(2, q)) return false;

    g = gcd(q, c.y);
    Int num = checked_sub(checked_mul(p, c.y / g), q / g);
    Int den = checked_mul(q / g, c.y);
    const Int h = gcd(num, den);
    num /= h;
    den /= h;
    return num == 1 && den == c.z;
}

enum class Method {
    trivial_small_factor,
    mod3_identity,
    family_6k_minus_1,
    family_4k_minus_1,
    family_8k_minus_3,
    eq5_general,
    eq6_corrected,
    eq7,
    eq8,
    match_eq8,
    composite_reduction,
    match_eq5,
    oracle_search,
};

inline constexpr std::array kAllMethods{
    Method::trivial_small_factor, Method::mod3_identity, Method::family_6k_minus_1,
    Method::family_4k_minus_1,    Method::family_8k_minus_3, Method::eq5_general,
    Method::eq6_corrected,        Method::eq7,           Method::eq8,
    Method::match_eq8,            Method::composite_reduction, Method::match_eq5,
    Method::oracle_search,
};

[[nodiscard]] constexpr std::string_view to_string(Method m)
{
    switch (m) {
    case Method::trivial_small_factor: return "trivial_small_factor";
    case Method::mod3_identity: return "mod3_identity";
    case Method::family_6k_minus_1: return "family_6k_minus_1";
    case Method::family_4k_minus_1: return "family_4k_minus_1";
    case Method::family_8k_minus_3: return "family_8k_minus_3";
    case Method::eq5_general: return "eq5_general";
    case Method::eq6_corrected: return "eq6_corrected";
    case Method::eq7: return "eq7";
    case Method::eq8: return "eq8";
    case Method::match_eq8: return "match_eq8";
    case Method::composite_reduction: return "composite-reduction";
    case Method::match_eq5: return "match_eq5";
    case Method::oracle_search: return "oracle_search";
    }
    return "unknown";
}

[[nodiscard]] constexpr std::optional<Method> method_from_string(std::string_view s)
{
    for (Method m : kAllMethods)
        if (to_string(m) == s) return m;
    return std::nullopt;
}

/// Parameters of the identity that produced a decomposition. Only the fields
/// the producing method uses are set.
struct IdentityParams {
    std::optional<Int> k;
    std::optional<Int> a;
    std::optional<Int> b;
    std::optional<Int> c1;
    std::optional<Int> c2;
    std::optional<Int> seq_index;
    std::optional<bool> squared;
    // composite reduction: 4/(d*m) from a decomposition of 4/d found by `base`
    std::optional<Int> m;
    std::optional<Int> d;
    std::optional<Method> base;

    friend bool operator==(const IdentityParams&, const IdentityParams&) = default;
};

class InvalidDecomposition : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A verified triple for 4/n together with its provenance.
///
/// The only way to build one is make(), which runs verify_triple; an
/// unverifiable triple is a bug in the producer and raises
/// InvalidDecomposition. The triple keeps the producer's term order;
/// comparisons use the canonical (ascending) form.
class Decomposition {
public:
    [[nodiscard]] static Decomposition make(Int n, UnitTriple t, Method method, IdentityParams params = {})
    {
        if (!verify_triple(n, t))
            throw InvalidDecomposition(std::string(to_string(method)) + " produced " + esc::to_string(t) +
                                       " which does not sum to 4/" + esc::to_string(n));
        return Decomposition(n, t, method, std::move(params));
    }

    [[nodiscard]] Int n() const noexcept { return n_; }
    [[nodiscard]] const UnitTriple& triple() const noexcept { return triple_; }
    [[nodiscard]] UnitTriple canonical() const noexcept { return canonicalize(triple_); }
    [[nodiscard]] Method method() const noexcept { return method_; }
    [[nodiscard]] const IdentityParams& params() const noexcept { return params_; }

    // Same n and same multiset of denominators.
    friend bool operator==(const Decomposition& l, const Decomposition& r)
    {
        return l.n_ == r.n_ && l.canonical() == r.canonical();
    }

private:
    Decomposition(Int n, UnitTriple t, Method m, IdentityParams p)
        : n_(n), triple_(t), method_(m), params_(std::move(p))
    {
    }

    Int n_;
    UnitTriple triple_;
    Method method_;
    IdentityParams params_;
};

/// 4/(n*m) from 4/n by multiplying every denominator by m.
[[nodiscard]] inline Decomposition scale_decomposition(const Decomposition& d, Int m)
{
    if (m < 1) throw DomainError("scale factor must be >= 1");
    const UnitTriple& t = d.triple();
    IdentityParams p;
    p.m = m;
    p.d = d.n();
    p.base = d.method();
    return Decomposition::make(checked_mul(d.n(), m),
                               {checked_mul(t.x, m), checked_mul(t.y, m), checked_mul(t.z, m)},
                               Method::composite_reduction, std::move(p));
}

} // namespace esc
