#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "esc/arith.hpp"
#include "esc/identities.hpp"
#include "esc/triple.hpp"

namespace esc {

inline constexpr std::array<int, 8> kProfileModuli{2, 3, 4, 6, 8, 10, 24, 840};

struct ResidueProfile {
    Int n = 2;
    std::map<int, int> residues; // modulus -> n mod modulus
    int unit_digit = 0;

    [[nodiscard]] int mod(int m) const { return residues.at(m); }
};

[[nodiscard]] inline ResidueProfile classify(Int n)
{
    if (n < 2) throw DomainError("classify requires n >= 2");
    ResidueProfile r;
    r.n = n;
    for (int m : kProfileModuli) r.residues[m] = static_cast<int>(n % m);
    r.unit_digit = static_cast<int>(n % 10);
    return r;
}

[[nodiscard]] inline std::vector<Method> default_method_order()
{
    return {Method::trivial_small_factor, Method::mod3_identity,     Method::family_6k_minus_1,
            Method::family_4k_minus_1,    Method::family_8k_minus_3, Method::match_eq8,
            Method::composite_reduction,  Method::match_eq5,         Method::oracle_search};
}

struct SolveConfig {
    Int k_max = 100;
    std::optional<Int> oracle_x_max;
    std::vector<Method> method_order = default_method_order();
};

class UnsolvedError : public std::runtime_error {
public:
    UnsolvedError(Int n)
        : std::runtime_error("no decomposition found for 4/" + to_string(n) + " within configured bounds"), n_(n)
    {
    }
    [[nodiscard]] Int n() const noexcept { return n_; }

private:
    Int n_;
};

/// Finds (k, a, b) with eq5_general(k, a, b).n() == n, k = 1..k_max.
///
/// 4/n = 1/kab + ... rearranges to (4ka - 1)(4kb - 1) = 4kn + 1, so each k
/// needs a factor pair of 4kn + 1 with both factors = -1 (mod 4k). Trial
/// division only visits that residue class; the smallest a wins.
[[nodiscard]] inline std::optional<IdentityParams> match_eq5(Int n, Int k_max)
{
    if (n < 2) throw DomainError("match_eq5 requires n >= 2");
    if (k_max < 1) throw DomainError("k_max must be >= 1");
    for (Int k = 1; k <= k_max; ++k) {
        const Int step = checked_mul(4, k);
        const Int target = checked_add(checked_mul(step, n), 1);
        for (Int f = step - 1; f <= target / f; f += step) {
            if (target % f != 0) continue;
            const Int g = target / f;
            // f*g = 1 (mod 4k) and f = -1 force g = -1.
            IdentityParams p;
            p.k = k;
            p.a = (f + 1) / step;
            p.b = (g + 1) / step;
            return p;
        }
    }
    return std::nullopt;
}

/// n = (4c1 + 1)(4c2 - 1) with 4c1 + 1 >= 5 and 4c2 - 1 >= 3; smallest c2 wins.
[[nodiscard]] inline std::optional<IdentityParams> match_eq8(Int n)
{
    if (n < 2) throw DomainError("match_eq8 requires n >= 2");
    for (Int f2 = 3; f2 <= n / 5; f2 += 4) {
        if (n % f2 != 0) continue;
        const Int f1 = n / f2;
        if (f1 % 4 != 1 || f1 < 5) continue;
        IdentityParams p;
        p.c1 = (f1 - 1) / 4;
        p.c2 = (f2 + 1) / 4;
        return p;
    }
    return std::nullopt;
}

namespace detail {

inline std::optional<Decomposition> family_4k_minus_1_layer(Int n)
{
    if (n % 4 == 3) return family_4k_minus_1((n + 1) / 4, false);
    const Int r = exact_sqrt(n);
    if (r > 0 && r % 4 == 3) return family_4k_minus_1((r + 1) / 4, true);
    return std::nullopt;
}

inline std::optional<Decomposition> family_8k_minus_3_layer(Int n)
{
    if (n % 8 == 5) return family_8k_minus_3((n + 3) / 8, false);
    const Int r = exact_sqrt(n);
    if (r > 0 && r % 8 == 5) return family_8k_minus_3((r + 3) / 8, true);
    return std::nullopt;
}

inline std::optional<Decomposition> match_eq8_layer(Int n)
{
    auto p = match_eq8(n);
    if (!p) return std::nullopt;
    const Decomposition d = eq8(*p->c1, *p->c2);
    return Decomposition::make(n, d.triple(), Method::match_eq8, d.params());
}

inline std::optional<Decomposition> match_eq5_layer(Int n, Int k_max)
{
    auto p = match_eq5(n, k_max);
    if (!p) return std::nullopt;
    const Decomposition d = eq5_general(*p->k, *p->a, *p->b);
    return Decomposition::make(n, d.triple(), Method::match_eq5, d.params());
}

// Every closed-form layer that applies to n, in dispatch order.
inline std::vector<Decomposition> closed_form_layers(Int n, bool first_only)
{
    std::vector<Decomposition> out;
    auto push = [&](std::optional<Decomposition> d) {
        if (d && !(first_only && !out.empty())) out.push_back(std::move(*d));
        return first_only && !out.empty();
    };
    if (push(trivial_small_factor(n))) return out;
    if (n % 3 == 2 && push(mod3_identity(n))) return out;
    if (n % 6 == 5 && push(family_6k_minus_1((n + 1) / 6))) return out;
    // squares are 0, 1 or 4 mod 8, so plain and squared shapes never both apply
    if (push(family_4k_minus_1_layer(n))) return out;
    if (push(family_8k_minus_3_layer(n))) return out;
    push(match_eq8_layer(n));
    return out;
}

inline std::optional<Decomposition> first_closed_form(Int n)
{
    auto v = closed_form_layers(n, true);
    if (v.empty()) return std::nullopt;
    return std::move(v.front());
}

} // namespace detail

struct CompositeSplit {
    Int d = 0;
    Int m = 0;

    friend bool operator==(const CompositeSplit&, const CompositeSplit&) = default;
};

/// Smallest proper divisor d of n (1 < d < n) whose 4/d a closed-form layer
/// solves, with m = n/d. Absent for primes.
[[nodiscard]] inline std::optional<CompositeSplit> composite_reduce(Int n)
{
    if (n < 2) throw DomainError("composite_reduce requires n >= 2");
    for (Int d : divisors(n)) {
        if (d == 1 || d == n) continue;
        if (detail::first_closed_form(d)) return CompositeSplit{d, n / d};
    }
    return std::nullopt;
}

enum class OracleScope { all, first };

// How (y, z) are enumerated for a fixed x. Both produce identical lists.
enum class PairEnumeration {
    divisor, // divisors d of q^2 via (py - q)(pz - q) = q^2
    linear,  // y over q/p < y <= 2q/p, z solved exactly
};

namespace detail {

// Primes dividing a * b, ascending, from factorizations of the two parts.
inline std::vector<Int> prime_support(Int a, Int b)
{
    std::vector<Int> ps;
    for (auto [p, e] : factorize(a)) ps.push_back(p);
    for (auto [p, e] : factorize(b)) ps.push_back(p);
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

// Calls emit(y, z) for every y <= z, y >= y_min with p/q = 1/y + 1/z.
// q's primes are drawn from `support`.
template <typename Emit>
bool pairs_by_divisors(Int p, Int q, Int y_min, const std::vector<Int>& support, Emit&& emit)
{
    std::vector<std::pair<Int, int>> fac;
    Int rest = q;
    for (Int pr : support) {
        int e = 0;
        while (rest % pr == 0) {
            rest /= pr;
            ++e;
        }
        if (e > 0) fac.emplace_back(pr, 2 * e);
    }
    if (rest != 1) throw std::logic_error("prime support does not cover q");

    std::vector<Int> ds{1};
    for (auto [pr, e] : fac) {
        const std::size_t base = ds.size();
        for (std::size_t j = 0; j < base; ++j) {
            Int v = ds[j];
            for (int i = 0; i < e; ++i) {
                if (v > q / pr) break; // only d <= q matters
                v *= pr;
                ds.push_back(v);
            }
        }
    }
    std::sort(ds.begin(), ds.end());
    const Int q2 = checked_mul(q, q);
    for (Int d : ds) {
        if ((q + d) % p != 0) continue;
        const Int y = (q + d) / p;
        if (y < y_min) continue;
        const Int e = q2 / d;
        const Int zn = checked_add(q, e);
        if (zn % p != 0) continue;
        if (emit(y, zn / p)) return true;
    }
    return false;
}

template <typename Emit>
bool pairs_linear(Int p, Int q, Int y_min, Emit&& emit)
{
    const Int lo = std::max(y_min, q / p + 1);
    const Int hi = checked_mul(2, q) / p;
    for (Int y = lo; y <= hi; ++y) {
        const Int num = checked_mul(p, y) - q;
        const Int den = checked_mul(q, y);
        if (den % num != 0) continue;
        const Int z = den / num;
        if (z >= y && emit(y, z)) return true;
    }
    return false;
}

} // namespace detail

/// Exhaustive canonical solutions x <= y <= z of 4/n = 1/x + 1/y + 1/z,
/// sorted lexicographically. cfg.oracle_x_max caps x.
[[nodiscard]] inline std::vector<UnitTriple> oracle_search(Int n, const SolveConfig& cfg = {},
                                                           OracleScope scope = OracleScope::all,
                                                           PairEnumeration how = PairEnumeration::divisor)
{
    if (n < 2) throw DomainError("oracle_search requires n >= 2");
    std::vector<UnitTriple> out;
    Int x_hi = checked_mul(3, n) / 4;
    if (cfg.oracle_x_max) x_hi = std::min(x_hi, *cfg.oracle_x_max);
    for (Int x = n / 4 + 1; x <= x_hi; ++x) {
        Int p = 4 * x - n;
        Int q = checked_mul(n, x);
        const Int g = gcd(p, q);
        p /= g;
        q /= g;
        auto emit = [&](Int y, Int z) {
            out.push_back({x, y, z});
            return scope == OracleScope::first;
        };
        const bool stop = how == PairEnumeration::divisor
                              ? detail::pairs_by_divisors(p, q, x, detail::prime_support(n, x), emit)
                              : detail::pairs_linear(p, q, x, emit);
        if (stop) break;
    }
    return out;
}

[[nodiscard]] inline std::optional<Decomposition> run_layer(Method layer, Int n, const SolveConfig& cfg)
{
    switch (layer) {
    case Method::trivial_small_factor: return trivial_small_factor(n);
    case Method::mod3_identity:
        if (n % 3 == 2) return mod3_identity(n);
        return std::nullopt;
    case Method::family_6k_minus_1:
        if (n % 6 == 5) return family_6k_minus_1((n + 1) / 6);
        return std::nullopt;
    case Method::family_4k_minus_1: return detail::family_4k_minus_1_layer(n);
    case Method::family_8k_minus_3: return detail::family_8k_minus_3_layer(n);
    case Method::match_eq8: return detail::match_eq8_layer(n);
    case Method::composite_reduction: {
        auto split = composite_reduce(n);
        if (!split) return std::nullopt;
        return scale_decomposition(*detail::first_closed_form(split->d), split->m);
    }
    case Method::match_eq5: return detail::match_eq5_layer(n, cfg.k_max);
    case Method::oracle_search: {
        auto found = oracle_search(n, cfg, OracleScope::first);
        if (found.empty()) return std::nullopt;
        return Decomposition::make(n, found.front(), Method::oracle_search);
    }
    default: throw DomainError("not a dispatch layer: " + std::string(to_string(layer)));
    }
}

/// First verified decomposition along cfg.method_order; UnsolvedError if
/// every layer comes back empty.
[[nodiscard]] inline Decomposition solve(Int n, const SolveConfig& cfg = {})
{
    if (n < 2) throw DomainError("solve requires n >= 2");
    for (Method layer : cfg.method_order)
        if (auto d = run_layer(layer, n, cfg)) return std::move(*d);
    throw UnsolvedError(n);
}

/// Every identity layer's answer (oracle excluded), one entry per distinct
/// canonical triple, sorted by canonical triple. A triple produced by several
/// layers keeps the earliest layer's tag.
[[nodiscard]] inline std::vector<Decomposition> solve_all(Int n, const SolveConfig& cfg = {})
{
    if (n < 2) throw DomainError("solve_all requires n >= 2");
    std::vector<Decomposition> found = detail::closed_form_layers(n, false);
    for (Int d : divisors(n)) {
        if (d == 1 || d == n) continue;
        if (auto base = detail::first_closed_form(d)) found.push_back(scale_decomposition(*base, n / d));
    }
    if (auto d = detail::match_eq5_layer(n, cfg.k_max)) found.push_back(std::move(*d));

    std::stable_sort(found.begin(), found.end(),
                     [](const Decomposition& l, const Decomposition& r) { return l.canonical() < r.canonical(); });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

struct GreedyExpansion {
    Int numerator = 0;
    Int denominator = 1;
    std::vector<Int> terms;
    // remainder numerator (in lowest terms) after each emitted term
    std::vector<Int> remainder_numerators;
};

class MaxTermsExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fibonacci-Sylvester expansion: each term is the largest unit fraction not
/// exceeding what remains.
[[nodiscard]] inline GreedyExpansion greedy_expand(Int num, Int den, int max_terms = 10)
{
    if (num < 1 || den < 1) throw DomainError("greedy_expand requires a positive fraction");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
    GreedyExpansion g{num, den, {}, {}};
    Int g0 = gcd(num, den);
    num /= g0;
    den /= g0;
    while (num != 0) {
        if (static_cast<int>(g.terms.size()) == max_terms)
            throw MaxTermsExceeded("greedy expansion of " + to_string(g.numerator) + "/" + to_string(g.denominator) +
                                   " needs more than " + std::to_string(max_terms) + " terms");
        const Int t = ceil_div(den, num);
        g.terms.push_back(t);
        if (num == 1) {
            // exact final term; skip the den * t product
            g.remainder_numerators.push_back(0);
            break;
        }
        Int rn = checked_sub(checked_mul(num, t), den);
        Int rd = checked_mul(den, t);
        const Int h = gcd(rn, rd);
        if (h > 1) {
            rn /= h;
            rd /= h;
        }
        num = rn;
        den = rn == 0 ? 1 : rd;
        g.remainder_numerators.push_back(num);
    }
    return g;
}

} // namespace esc
