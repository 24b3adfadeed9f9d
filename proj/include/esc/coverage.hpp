#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "esc/arith.hpp"
#include "esc/solver.hpp"
#include "esc/triple.hpp"

namespace esc {

// ---------------------------------------------------------------------------
// Range sweeps

struct RangeOptions {
    unsigned threads = 1;
    Int block_size = Int{1} << 16;
};

struct CoverageReport {
    Int lo = 2;
    Int hi = 1;
    std::map<Method, std::uint64_t> per_method_counts;
    std::vector<Int> unsolved;
    // (modulus, residue) -> number of n only the oracle solved
    std::map<std::pair<int, int>, std::uint64_t> residue_histogram;
    std::chrono::nanoseconds elapsed{0};

    [[nodiscard]] std::uint64_t solved() const
    {
        std::uint64_t s = 0;
        for (auto& [m, c] : per_method_counts) s += c;
        return s;
    }

    [[nodiscard]] std::uint64_t count(Method m) const
    {
        auto it = per_method_counts.find(m);
        return it == per_method_counts.end() ? 0 : it->second;
    }

    // Absorbs a report over an adjacent or disjoint range.
    void merge(const CoverageReport& o)
    {
        lo = std::min(lo, o.lo);
        hi = std::max(hi, o.hi);
        for (auto& [m, c] : o.per_method_counts) per_method_counts[m] += c;
        unsolved.insert(unsolved.end(), o.unsolved.begin(), o.unsolved.end());
        std::sort(unsolved.begin(), unsolved.end());
        for (auto& [key, c] : o.residue_histogram) residue_histogram[key] += c;
        elapsed += o.elapsed;
    }

    // Everything except timing.
    [[nodiscard]] bool same_counts(const CoverageReport& o) const
    {
        return lo == o.lo && hi == o.hi && per_method_counts == o.per_method_counts && unsolved == o.unsolved &&
               residue_histogram == o.residue_histogram;
    }
};

namespace detail {

// Runs work(block_lo, block_hi, block_index) over contiguous blocks of
// [lo, hi] on opts.threads workers. The first exception thrown by any worker
// is rethrown after all workers finish.
template <typename Work>
void parallel_blocks(Int lo, Int hi, const RangeOptions& opts, Work&& work)
{
    if (hi < lo) return;
    const Int bs = std::max<Int>(1, opts.block_size);
    const auto nblocks = static_cast<std::uint64_t>((hi - lo) / bs + 1);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            const Int blo = lo + static_cast<Int>(b) * bs;
            const Int bhi = std::min(hi, blo + bs - 1);
            try {
                work(blo, bhi, b);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
                next.store(nblocks);
            }
        }
    };

    const unsigned nthreads =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, opts.threads), nblocks));
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

/// Solves every n in [lo, hi] and tallies which layer answered. Unsolved n
/// are recorded, not thrown; overflow propagates.
[[nodiscard]] inline CoverageReport coverage_report(Int lo, Int hi, const SolveConfig& cfg = {},
                                                    const RangeOptions& opts = {})
{
    if (lo < 2 || hi < lo) throw DomainError("coverage_report requires 2 <= lo <= hi");
    const auto start = std::chrono::steady_clock::now();

    std::vector<CoverageReport> parts(static_cast<std::size_t>((hi - lo) / std::max<Int>(1, opts.block_size) + 1));
    detail::parallel_blocks(lo, hi, opts, [&](Int blo, Int bhi, std::uint64_t b) {
        CoverageReport& part = parts[b];
        part.lo = blo;
        part.hi = bhi;
        for (Int n = blo; n <= bhi; ++n) {
            try {
                const Decomposition d = solve(n, cfg);
                ++part.per_method_counts[d.method()];
                if (d.method() == Method::oracle_search)
                    for (int m : kProfileModuli) ++part.residue_histogram[{m, static_cast<int>(n % m)}];
            } catch (const UnsolvedError&) {
                part.unsolved.push_back(n);
            }
        }
    });

    CoverageReport report;
    report.lo = lo;
    report.hi = hi;
    for (auto& p : parts) report.merge(p);
    report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
    return report;
}

struct RangeResult {
    Int n = 0;
    std::optional<Decomposition> decomposition; // empty: unsolved
};

/// Solves [lo, hi] in parallel and hands results to sink in increasing n.
/// Memory stays at one window of threads * block_size results.
inline void for_each_solution(Int lo, Int hi, const SolveConfig& cfg, const RangeOptions& opts,
                              const std::function<void(const RangeResult&)>& sink)
{
    if (lo < 2 || hi < lo) throw DomainError("range requires 2 <= lo <= hi");
    const Int bs = std::max<Int>(1, opts.block_size);
    const Int window = bs * std::max(1u, opts.threads);
    for (Int wlo = lo; wlo <= hi; wlo += window) {
        const Int whi = std::min(hi, wlo + window - 1);
        std::vector<RangeResult> results(static_cast<std::size_t>(whi - wlo + 1));
        detail::parallel_blocks(wlo, whi, opts, [&](Int blo, Int bhi, std::uint64_t) {
            for (Int n = blo; n <= bhi; ++n) {
                RangeResult& r = results[static_cast<std::size_t>(n - wlo)];
                r.n = n;
                try {
                    r.decomposition = solve(n, cfg);
                } catch (const UnsolvedError&) {
                }
            }
        });
        for (const auto& r : results) sink(r);
    }
}

// ---------------------------------------------------------------------------
// Mordell classes

inline constexpr std::array<int, 6> kMordellResidues{1, 121, 169, 289, 361, 529};

[[nodiscard]] inline bool mordell_class(Int n)
{
    if (n < 2) throw DomainError("mordell_class requires n >= 2");
    const int r = static_cast<int>(n % 840);
    return std::find(kMordellResidues.begin(), kMordellResidues.end(), r) != kMordellResidues.end();
}

// ---------------------------------------------------------------------------
// Residue-set identities

/// {s*i + t : i >= start}, {(s*i + t)^2 : i >= start}, or an explicit list.
struct ProgressionSet {
    enum class Kind { linear, squared_linear, explicit_values };

    Kind kind = Kind::linear;
    Int stride = 1;
    Int offset = 0;
    Int start = 1;
    std::vector<Int> values; // explicit_values only, sorted

    static ProgressionSet linear(Int s, Int t, Int start = 1) { return {Kind::linear, s, t, start, {}}; }
    static ProgressionSet squared(Int s, Int t, Int start = 1) { return {Kind::squared_linear, s, t, start, {}}; }
    static ProgressionSet explicit_set(std::vector<Int> vs)
    {
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return {Kind::explicit_values, 0, 0, 0, std::move(vs)};
    }

    [[nodiscard]] bool contains(Int v) const
    {
        switch (kind) {
        case Kind::linear: return linear_member(v);
        case Kind::squared_linear: {
            const Int r = exact_sqrt(v);
            // the base s*i + t may be negative for small i
            return r >= 0 && (linear_member(r) || linear_member(-r));
        }
        case Kind::explicit_values: return std::binary_search(values.begin(), values.end(), v);
        }
        return false;
    }

    // Members in [1, limit], ascending.
    [[nodiscard]] std::vector<Int> materialize(Int limit) const
    {
        std::vector<Int> out;
        if (kind == Kind::explicit_values) {
            for (Int v : values)
                if (v >= 1 && v <= limit) out.push_back(v);
            return out;
        }
        for (Int i = start;; ++i) {
            const Int base = checked_add(checked_mul(stride, i), offset);
            const Int v = kind == Kind::linear ? base : checked_mul(base, base);
            if (v > limit) {
                if (base >= 0) break;
                continue;
            }
            if (v >= 1) out.push_back(v);
        }
        if (kind == Kind::squared_linear) {
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
        return out;
    }

    [[nodiscard]] std::string describe() const
    {
        if (kind == Kind::explicit_values) {
            std::string s = "{";
            for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + to_string(values[i]);
            return s + "}";
        }
        std::string term = to_string(stride) + "n";
        if (offset > 0) term += "+" + to_string(offset);
        if (offset < 0) term += "-" + to_string(-offset);
        if (kind == Kind::squared_linear) term = "(" + term + ")^2";
        return "{" + term + " : n>=" + to_string(start) + "}";
    }

private:
    [[nodiscard]] bool linear_member(Int v) const
    {
        const Int first = stride * start + offset;
        return v >= first && (v - offset) % stride == 0;
    }
};

/// Unions and differences over progression leaves.
struct SetExpr {
    enum class Op { leaf, union_of, difference };

    Op op = Op::leaf;
    ProgressionSet set;
    std::vector<SetExpr> operands; // union: any count; difference: exactly two

    static SetExpr of(ProgressionSet s) { return {Op::leaf, std::move(s), {}}; }
    static SetExpr unite(std::vector<SetExpr> parts) { return {Op::union_of, {}, std::move(parts)}; }
    static SetExpr minus(SetExpr a, SetExpr b) { return {Op::difference, {}, {std::move(a), std::move(b)}}; }

    [[nodiscard]] bool contains(Int v) const
    {
        switch (op) {
        case Op::leaf: return set.contains(v);
        case Op::union_of:
            return std::any_of(operands.begin(), operands.end(), [v](const SetExpr& e) { return e.contains(v); });
        case Op::difference: return operands.at(0).contains(v) && !operands.at(1).contains(v);
        }
        return false;
    }

    [[nodiscard]] std::vector<Int> materialize(Int limit) const
    {
        switch (op) {
        case Op::leaf: return set.materialize(limit);
        case Op::union_of: {
            std::vector<Int> acc;
            for (const auto& e : operands) {
                auto part = e.materialize(limit);
                std::vector<Int> merged;
                std::set_union(acc.begin(), acc.end(), part.begin(), part.end(), std::back_inserter(merged));
                acc = std::move(merged);
            }
            return acc;
        }
        case Op::difference: {
            auto a = operands.at(0).materialize(limit);
            auto b = operands.at(1).materialize(limit);
            std::vector<Int> out;
            std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
            return out;
        }
        }
        return {};
    }

    [[nodiscard]] std::string describe() const
    {
        switch (op) {
        case Op::leaf: return set.describe();
        case Op::union_of: {
            std::string s;
            for (std::size_t i = 0; i < operands.size(); ++i) s += (i ? " u " : "") + operands[i].describe();
            return s;
        }
        case Op::difference: return operands.at(0).describe() + " \\ " + operands.at(1).describe();
        }
        return {};
    }
};

enum class Side { lhs_only, rhs_only };

[[nodiscard]] constexpr std::string_view to_string(Side s) { return s == Side::lhs_only ? "lhs-only" : "rhs-only"; }

struct SetCounterexample {
    Int value = 0;
    Side side = Side::lhs_only;

    friend bool operator==(const SetCounterexample&, const SetCounterexample&) = default;
};

/// Symmetric difference of both sides restricted to [1, limit], ascending.
/// Empty means the identity holds up to limit.
[[nodiscard]] inline std::vector<SetCounterexample> check_set_identity(const SetExpr& lhs, const SetExpr& rhs, Int limit)
{
    if (limit < 1) throw DomainError("limit must be >= 1");
    const auto l = lhs.materialize(limit);
    const auto r = rhs.materialize(limit);
    std::vector<SetCounterexample> out;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < l.size() || j < r.size()) {
        if (j == r.size() || (i < l.size() && l[i] < r[j])) {
            out.push_back({l[i++], Side::lhs_only});
        } else if (i == l.size() || r[j] < l[i]) {
            out.push_back({r[j++], Side::rhs_only});
        } else {
            ++i;
            ++j;
        }
    }
    return out;
}

struct NamedSetIdentity {
    std::string name;
    SetExpr lhs;
    SetExpr rhs;
};

// The three residue-set statements, with index ranges exactly as printed.
[[nodiscard]] inline std::vector<NamedSetIdentity> lemma1_identities()
{
    using P = ProgressionSet;
    using E = SetExpr;
    std::vector<NamedSetIdentity> ids;
    ids.push_back({"eq1", E::unite({E::of(P::linear(6, -1)), E::of(P::linear(6, 1))}), E::of(P::linear(2, -1, 3))});
    ids.push_back({"eq2", E::minus(E::of(P::linear(6, 1)), E::of(P::linear(8, 1))),
                   E::unite({E::of(P::linear(4, -1)), E::of(P::squared(4, -1)), E::of(P::linear(8, -3)),
                             E::of(P::squared(8, -3))})});
    ids.push_back({"mod10_partition", E::of(P::linear(1, 0, 2)),
                   E::unite({E::of(P::linear(2, 0)), E::of(P::linear(10, -1)), E::of(P::linear(10, -3)),
                             E::of(P::linear(10, -5)), E::of(P::linear(10, -7)), E::of(P::linear(10, -9))})});
    return ids;
}

} // namespace esc
