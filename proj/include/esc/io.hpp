#pragma once

// Line-oriented record formats shared by the CLI and anything consuming its
// output.
//
//   JSON (one object per line):
//     {"n":341,"method":"eq5_general","params":{"k":1,"a":10,"b":9},"x":90,"y":3410,"z":3069}
//   CSV:
//     n,method,x,y,z
//
// Integers are written as plain decimal digits of any width. The JSON reader
// keeps the raw digits, so values beyond 64 bits survive a round trip.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "esc/arith.hpp"
#include "esc/triple.hpp"

namespace esc {

struct OutputRecord {
    Int n = 0;
    Method method = Method::oracle_search;
    IdentityParams params;
    Int x = 0;
    Int y = 0;
    Int z = 0;

    static OutputRecord from(const Decomposition& d)
    {
        const UnitTriple& t = d.triple();
        return {d.n(), d.method(), d.params(), t.x, t.y, t.z};
    }

    friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { text, json, csv };

[[nodiscard]] inline std::optional<Format> format_from_string(std::string_view s)
{
    if (s == "text") return Format::text;
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    return std::nullopt;
}

[[nodiscard]] inline std::string params_to_json(const IdentityParams& p)
{
    std::string out = "{";
    auto field = [&](std::string_view key, const std::string& value) {
        if (out.size() > 1) out += ',';
        out += '"';
        out += key;
        out += "\":";
        out += value;
    };
    auto num = [&](std::string_view key, const std::optional<Int>& v) {
        if (v) field(key, to_string(*v));
    };
    num("k", p.k);
    num("a", p.a);
    num("b", p.b);
    num("c1", p.c1);
    num("c2", p.c2);
    num("seq_index", p.seq_index);
    if (p.squared) field("squared", *p.squared ? "true" : "false");
    num("m", p.m);
    num("d", p.d);
    if (p.base) field("base", "\"" + std::string(to_string(*p.base)) + "\"");
    return out + "}";
}

[[nodiscard]] inline std::string to_json_line(const OutputRecord& r)
{
    return "{\"n\":" + to_string(r.n) + ",\"method\":\"" + std::string(to_string(r.method)) +
           "\",\"params\":" + params_to_json(r.params) + ",\"x\":" + to_string(r.x) + ",\"y\":" + to_string(r.y) +
           ",\"z\":" + to_string(r.z) + "}";
}

inline constexpr std::string_view kCsvHeader = "n,method,x,y,z";

[[nodiscard]] inline std::string to_csv_line(const OutputRecord& r)
{
    return to_string(r.n) + "," + std::string(to_string(r.method)) + "," + to_string(r.x) + "," + to_string(r.y) +
           "," + to_string(r.z);
}

// "4/5 = 1/2 + 1/5 + 1/10  [mod3_identity]" with denominators ascending.
[[nodiscard]] inline std::string to_text_line(const OutputRecord& r)
{
    const UnitTriple c = canonicalize({r.x, r.y, r.z});
    return "4/" + to_string(r.n) + " = 1/" + to_string(c.x) + " + 1/" + to_string(c.y) + " + 1/" + to_string(c.z) +
           "  " + to_string(c) + "  [" + std::string(to_string(r.method)) + "]";
}

namespace detail {

// Collects one flat record; numbers are taken from their source text.
class RecordSax : public nlohmann::json_sax<nlohmann::json> {
public:
    OutputRecord record;
    unsigned seen = 0; // bitmask over n, method, x, y, z

    bool null() override { return fail("null"); }
    bool boolean(bool v) override
    {
        if (depth_ == 2 && key_ == "squared") {
            record.params.squared = v;
            return true;
        }
        return fail("boolean");
    }
    bool number_integer(number_integer_t v) override
    {
        if (v < 0) return fail("negative number");
        return number(std::to_string(v));
    }
    bool number_unsigned(number_unsigned_t v) override { return number(std::to_string(v)); }
    bool number_float(number_float_t, const string_t& raw) override { return number(raw); }
    bool string(string_t& v) override
    {
        if (depth_ == 1 && key_ == "method") {
            auto m = method_from_string(v);
            if (!m) return fail("unknown method " + v);
            record.method = *m;
            seen |= 2;
            return true;
        }
        if (depth_ == 2 && key_ == "base") {
            auto m = method_from_string(v);
            if (!m) return fail("unknown method " + v);
            record.params.base = *m;
            return true;
        }
        return fail("string");
    }
    bool binary(binary_t&) override { return fail("binary"); }
    bool start_object(std::size_t) override
    {
        if (depth_ == 1 && key_ != "params") return fail("object");
        return ++depth_ <= 2;
    }
    bool end_object() override
    {
        --depth_;
        return true;
    }
    bool start_array(std::size_t) override { return fail("array"); }
    bool end_array() override { return false; }
    bool key(string_t& k) override
    {
        key_ = k;
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& e) override
    {
        error = e.what();
        return false;
    }

    std::string error;

private:
    bool fail(const std::string& what)
    {
        error = "unexpected " + what + " at key \"" + key_ + "\"";
        return false;
    }

    bool number(const std::string& raw)
    {
        Int v = 0;
        try {
            v = parse_int(raw);
        } catch (const std::exception& e) {
            return fail(std::string("number (") + e.what() + ")");
        }
        if (depth_ == 1) {
            if (key_ == "n") { record.n = v; seen |= 1; }
            else if (key_ == "x") { record.x = v; seen |= 4; }
            else if (key_ == "y") { record.y = v; seen |= 8; }
            else if (key_ == "z") { record.z = v; seen |= 16; }
            else return fail("number");
            return true;
        }
        auto& p = record.params;
        if (key_ == "k") p.k = v;
        else if (key_ == "a") p.a = v;
        else if (key_ == "b") p.b = v;
        else if (key_ == "c1") p.c1 = v;
        else if (key_ == "c2") p.c2 = v;
        else if (key_ == "seq_index") p.seq_index = v;
        else if (key_ == "m") p.m = v;
        else if (key_ == "d") p.d = v;
        else return fail("number");
        return true;
    }

    int depth_ = 0;
    std::string key_;
};

} // namespace detail

[[nodiscard]] inline OutputRecord parse_json_line(std::string_view line)
{
    detail::RecordSax sax;
    const bool ok = nlohmann::json::sax_parse(line.begin(), line.end(), &sax);
    if (!ok) throw FormatError("bad record: " + sax.error);
    if (sax.seen != 31) throw FormatError("record is missing one of n, method, x, y, z");
    return sax.record;
}

[[nodiscard]] inline OutputRecord parse_csv_line(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = line.find(',', pos);
        cells.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (cells.size() != 5) throw FormatError("csv record needs 5 fields");
    auto m = method_from_string(cells[1]);
    if (!m) throw FormatError("unknown method " + std::string(cells[1]));
    try {
        return {parse_int(cells[0]), *m, {}, parse_int(cells[2]), parse_int(cells[3]), parse_int(cells[4])};
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad csv number: ") + e.what());
    }
}

} // namespace esc
