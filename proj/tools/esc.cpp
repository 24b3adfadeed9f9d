// esc: decompose 4/n into three unit fractions and sweep ranges.
//
// Exit codes: 0 success, 1 mathematical failure (unsolved n, counterexample
// found), 2 usage or environment error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "esc/esc.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

esc::Int parse_bounded(const std::string& text, const char* what, esc::Int min)
{
    const esc::Int v = esc::parse_int(text);
    if (v < min) throw UsageError(std::string(what) + " must be >= " + esc::to_string(min));
    return v;
}

// Range endpoints and counts go through 64-bit JSON numbers.
std::uint64_t to_u64(esc::Int v)
{
    if (v < 0 || v > static_cast<esc::Int>(UINT64_MAX)) throw esc::OverflowError("value exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

esc::Format parse_format(const std::string& s)
{
    auto f = esc::format_from_string(s);
    if (!f) throw UsageError("unknown format: " + s);
    return *f;
}

void write_record(std::ostream& out, esc::Format f, const esc::OutputRecord& r)
{
    switch (f) {
    case esc::Format::json: out << esc::to_json_line(r) << '\n'; break;
    case esc::Format::csv: out << esc::to_csv_line(r) << '\n'; break;
    case esc::Format::text: out << esc::to_text_line(r) << '\n'; break;
    }
}

struct Options {
    std::string n;
    std::string lo;
    std::string hi;
    bool all = false;
    bool stats = false;
    bool timing = false;
    std::string format = "text";
    std::string out_path;
    unsigned threads = 0;
    std::string k_max = "100";
    std::string x_max;
    std::string block_size = "65536";
    int max_terms = 10;
    std::string limit = "1000";
};

esc::SolveConfig make_config(const Options& o)
{
    esc::SolveConfig cfg;
    cfg.k_max = parse_bounded(o.k_max, "--k-max", 1);
    if (!o.x_max.empty()) cfg.oracle_x_max = parse_bounded(o.x_max, "--x-max", 1);
    return cfg;
}

int cmd_solve(const Options& o)
{
    const esc::Int n = parse_bounded(o.n, "n", 2);
    const auto cfg = make_config(o);
    const auto fmt = parse_format(o.format);
    if (fmt == esc::Format::csv) std::cout << esc::kCsvHeader << '\n';
    if (o.all) {
        for (const auto& d : esc::solve_all(n, cfg)) write_record(std::cout, fmt, esc::OutputRecord::from(d));
    } else {
        write_record(std::cout, fmt, esc::OutputRecord::from(esc::solve(n, cfg)));
    }
    return kOk;
}

void write_stats(std::ostream& out, esc::Format fmt, const esc::CoverageReport& r, bool timing)
{
    if (fmt == esc::Format::csv) {
        out << "method,count\n";
        for (auto& [m, c] : r.per_method_counts) out << esc::to_string(m) << ',' << c << '\n';
        out << "unsolved," << r.unsolved.size() << '\n';
        return;
    }
    if (fmt == esc::Format::text) {
        out << "range [" << esc::to_string(r.lo) << ", " << esc::to_string(r.hi) << "]\n";
        for (auto& [m, c] : r.per_method_counts) out << "  " << esc::to_string(m) << ": " << c << '\n';
        out << "  unsolved: " << r.unsolved.size() << '\n';
        for (esc::Int n : r.unsolved) out << "    " << esc::to_string(n) << '\n';
        if (!r.residue_histogram.empty()) {
            out << "oracle-only residues\n";
            for (auto& [key, c] : r.residue_histogram)
                out << "  " << key.second << " mod " << key.first << ": " << c << '\n';
        }
        if (timing) out << "elapsed_s: " << std::chrono::duration<double>(r.elapsed).count() << '\n';
        return;
    }
    nlohmann::ordered_json j;
    j["lo"] = to_u64(r.lo);
    j["hi"] = to_u64(r.hi);
    j["per_method_counts"] = nlohmann::ordered_json::object();
    for (auto& [m, c] : r.per_method_counts) j["per_method_counts"][std::string(esc::to_string(m))] = c;
    j["unsolved"] = nlohmann::ordered_json::array();
    for (esc::Int n : r.unsolved) j["unsolved"].push_back(to_u64(n));
    j["residue_histogram"] = nlohmann::ordered_json::array();
    for (auto& [key, c] : r.residue_histogram)
        j["residue_histogram"].push_back({{"modulus", key.first}, {"residue", key.second}, {"count", c}});
    if (timing) j["elapsed_s"] = std::chrono::duration<double>(r.elapsed).count();
    out << j.dump() << '\n';
}

int cmd_range(const Options& o)
{
    const esc::Int lo = parse_bounded(o.lo, "lo", 2);
    const esc::Int hi = parse_bounded(o.hi, "hi", 2);
    if (hi < lo) throw UsageError("range requires lo <= hi");
    to_u64(hi);
    const auto cfg = make_config(o);
    esc::RangeOptions ropts;
    ropts.threads = o.threads != 0 ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    ropts.block_size = parse_bounded(o.block_size, "--block-size", 1);

    std::ofstream file;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) throw UsageError("cannot open " + o.out_path);
    }
    std::ostream& out = o.out_path.empty() ? std::cout : file;

    int rc = kOk;
    if (o.stats) {
        const auto fmt = o.format == "text" ? esc::Format::text : parse_format(o.format);
        const auto report = esc::coverage_report(lo, hi, cfg, ropts);
        write_stats(out, fmt, report, o.timing);
        if (!report.unsolved.empty()) rc = kMathFailure;
    } else {
        const auto fmt = parse_format(o.format);
        if (fmt == esc::Format::csv) out << esc::kCsvHeader << '\n';
        esc::for_each_solution(lo, hi, cfg, ropts, [&](const esc::RangeResult& r) {
            if (r.decomposition) {
                write_record(out, fmt, esc::OutputRecord::from(*r.decomposition));
            } else {
                std::cerr << "unsolved: " << esc::to_string(r.n) << '\n';
                rc = kMathFailure;
            }
        });
    }
    out.flush();
    if (!out) throw UsageError("write failed");
    return rc;
}

int cmd_oracle(const Options& o)
{
    const esc::Int n = parse_bounded(o.n, "n", 2);
    const auto cfg = make_config(o);
    const auto fmt = parse_format(o.format);
    const auto triples = esc::oracle_search(n, cfg, o.all ? esc::OracleScope::all : esc::OracleScope::first);
    if (fmt == esc::Format::csv) std::cout << esc::kCsvHeader << '\n';
    for (const auto& t : triples)
        write_record(std::cout, fmt, esc::OutputRecord::from(esc::Decomposition::make(n, t, esc::Method::oracle_search)));
    return triples.empty() ? kMathFailure : kOk;
}

int cmd_greedy(const Options& o)
{
    const esc::Int n = parse_bounded(o.n, "n", 2);
    const auto fmt = parse_format(o.format);
    const auto g = esc::greedy_expand(4, n, o.max_terms);
    if (fmt == esc::Format::json) {
        std::string terms;
        for (std::size_t i = 0; i < g.terms.size(); ++i) terms += (i ? "," : "") + esc::to_string(g.terms[i]);
        std::cout << "{\"numerator\":4,\"denominator\":" << esc::to_string(n) << ",\"terms\":[" << terms << "]}\n";
    } else if (fmt == esc::Format::csv) {
        std::cout << "index,denominator\n";
        for (std::size_t i = 0; i < g.terms.size(); ++i) std::cout << i << ',' << esc::to_string(g.terms[i]) << '\n';
    } else {
        std::cout << "4/" << esc::to_string(n) << " =";
        for (std::size_t i = 0; i < g.terms.size(); ++i) std::cout << (i ? " + 1/" : " 1/") << esc::to_string(g.terms[i]);
        std::cout << "  (" << g.terms.size() << " terms)\n";
    }
    return kOk;
}

int cmd_lemma1(const Options& o)
{
    const esc::Int limit = parse_bounded(o.limit, "--limit", 1);
    const auto fmt = parse_format(o.format);
    int rc = kOk;
    if (fmt == esc::Format::csv) std::cout << "identity,value,side\n";
    for (const auto& id : esc::lemma1_identities()) {
        const auto bad = esc::check_set_identity(id.lhs, id.rhs, limit);
        if (!bad.empty()) rc = kMathFailure;
        if (fmt == esc::Format::json) {
            nlohmann::ordered_json j;
            j["identity"] = id.name;
            j["lhs"] = id.lhs.describe();
            j["rhs"] = id.rhs.describe();
            j["limit"] = to_u64(limit);
            j["holds"] = bad.empty();
            j["counterexamples"] = nlohmann::ordered_json::array();
            for (const auto& c : bad)
                j["counterexamples"].push_back({{"value", to_u64(c.value)}, {"side", std::string(esc::to_string(c.side))}});
            std::cout << j.dump() << '\n';
        } else if (fmt == esc::Format::csv) {
            for (const auto& c : bad)
                std::cout << id.name << ',' << esc::to_string(c.value) << ',' << esc::to_string(c.side) << '\n';
        } else {
            std::cout << id.name << ": " << id.lhs.describe() << "  =  " << id.rhs.describe() << '\n';
            if (bad.empty()) {
                std::cout << "  holds up to " << esc::to_string(limit) << '\n';
            } else {
                std::cout << "  " << bad.size() << " counterexamples up to " << esc::to_string(limit) << ":";
                for (const auto& c : bad) std::cout << ' ' << esc::to_string(c.value) << '(' << esc::to_string(c.side) << ')';
                std::cout << '\n';
            }
        }
    }
    return rc;
}

int cmd_mordell(const Options& o)
{
    std::cout << (esc::mordell_class(parse_bounded(o.n, "n", 2)) ? "true" : "false") << '\n';
    return kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Three-term unit fraction decompositions of 4/n"};
    app.require_subcommand(1);
    Options o;

    auto* solve = app.add_subcommand("solve", "decompose 4/n");
    solve->add_option("n", o.n, "denominator, n >= 2")->required();
    solve->add_flag("--all", o.all, "every identity-layer decomposition");
    solve->add_option("--format", o.format, "text|json|csv");
    solve->add_option("--k-max", o.k_max, "largest k tried by the eq5 matcher");
    solve->add_option("--x-max", o.x_max, "bound on the smallest denominator in the oracle fallback");

    auto* range = app.add_subcommand("range", "solve every n in [lo, hi]");
    range->add_option("lo", o.lo)->required();
    range->add_option("hi", o.hi)->required();
    range->add_flag("--stats", o.stats, "emit the coverage report instead of records");
    range->add_flag("--timing", o.timing, "include elapsed time in --stats output");
    range->add_option("--out", o.out_path, "write to a file instead of stdout");
    range->add_option("--format", o.format, "json|csv (records) or json|csv|text (stats)");
    range->add_option("--threads", o.threads, "worker threads (default: hardware concurrency)");
    range->add_option("--k-max", o.k_max);
    range->add_option("--x-max", o.x_max);
    range->add_option("--block-size", o.block_size, "values per work unit");

    auto* oracle = app.add_subcommand("oracle", "exhaustive search");
    oracle->add_option("n", o.n)->required();
    oracle->add_flag("--all", o.all, "all solutions instead of the first");
    oracle->add_option("--x-max", o.x_max);
    oracle->add_option("--format", o.format);

    auto* greedy = app.add_subcommand("greedy", "greedy (Fibonacci-Sylvester) expansion of 4/n");
    greedy->add_option("n", o.n)->required();
    greedy->add_option("--max-terms", o.max_terms);
    greedy->add_option("--format", o.format);

    auto* lemma1 = app.add_subcommand("lemma1", "check the residue-set identities up to a limit");
    lemma1->add_option("--limit", o.limit);
    lemma1->add_option("--format", o.format);

    auto* mordell = app.add_subcommand("mordell", "is n in one of the six uncovered classes mod 840");
    mordell->add_option("n", o.n)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*solve) return cmd_solve(o);
        if (*range) return cmd_range(o);
        if (*oracle) return cmd_oracle(o);
        if (*greedy) return cmd_greedy(o);
        if (*lemma1) return cmd_lemma1(o);
        if (*mordell) return cmd_mordell(o);
    } catch (const esc::UnsolvedError& e) {
        std::cerr << "esc: " << e.what() << '\n';
        return kMathFailure;
    } catch (const std::exception& e) {
        std::cerr << "esc: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
