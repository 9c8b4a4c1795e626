#ifndef DSPKIT_IO_HPP
#define DSPKIT_IO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dspkit/catalog.hpp"
#include "dspkit/error.hpp"
#include "dspkit/genericity.hpp"
#include "dspkit/jnf.hpp"
#include "dspkit/rational.hpp"
#include "dspkit/reduction.hpp"

// JSON forms of the domain types. Every *_to_json has a matching
// *_from_json that accepts its output.

namespace dspkit::io {

using Json = nlohmann::json;

inline Json parse_json(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

namespace detail {

template <class F>
auto guarded(const char* what, F&& f)
{
    try {
        return f();
    } catch (const Json::exception& e) {
        throw ParseError(std::string("malformed ") + what + ": " + e.what());
    } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid ") + what + ": " + e.what());
    }
}

inline std::vector<std::int64_t> int_array(const Json& j)
{
    if (!j.is_array())
        throw ParseError("expected an array of integers");
    std::vector<std::int64_t> v;
    for (const auto& x : j) {
        if (!x.is_number_integer())
            throw ParseError("expected an integer, got " + x.dump());
        auto y = x.get<std::int64_t>();
        if (y < 1 || y > kMaxSize)
            throw ParseError("part out of range: " + std::to_string(y));
        v.push_back(y);
    }
    if (v.empty())
        throw ParseError("empty partition");
    return v;
}

} // namespace detail

// ------------------------------------------------------------ tuples

/// {"eigenvalues":[[4,2,2],[5,1]]}: block sizes per eigenvalue.
inline Json to_json(const Jnf& j)
{
    Json slots = Json::array();
    for (const auto& s : j.slots())
        slots.push_back(s.parts());
    return Json{{"eigenvalues", slots}};
}

inline Jnf jnf_from_json(const Json& j)
{
    return detail::guarded("JNF", [&] {
        std::vector<Partition> slots;
        for (const auto& s : j.at("eigenvalues"))
            slots.push_back(normalize(detail::int_array(s)));
        return Jnf(std::move(slots));
    });
}

inline Json to_json(const JnfTuple& t)
{
    Json entries = Json::array();
    for (const auto& j : t.entries())
        entries.push_back(to_json(j));
    return Json{{"n", t.n()}, {"entries", entries}};
}

inline JnfTuple tuple_from_json(const Json& j)
{
    return detail::guarded("tuple", [&] {
        std::vector<Jnf> entries;
        for (const auto& e : j.at("entries"))
            entries.push_back(jnf_from_json(e));
        JnfTuple t(std::move(entries));
        if (j.contains("n") && j.at("n").get<std::int64_t>() != t.n())
            throw ParseError("field n disagrees with the entries");
        return t;
    });
}

/// Accepts the text grammar or a JSON object (leading '{' followed by '"').
inline JnfTuple parse_tuple_any(std::string_view s, std::vector<std::string>* warnings = nullptr)
{
    auto first = s.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && s[first] == '{') {
        auto second = s.find_first_not_of(" \t\r\n", first + 1);
        if (second != std::string_view::npos && s[second] == '"')
            return tuple_from_json(parse_json(s));
    }
    return parse_tuple(s, warnings);
}

// ------------------------------------------------------------ traces

inline Json to_json(const ConditionReport& r)
{
    return Json{{"alpha", r.alpha},         {"alpha_slack", r.alpha_slack}, {"beta", r.beta},
                {"beta_margins", r.beta_margins}, {"omega", r.omega},       {"omega_slack", r.omega_slack}};
}

inline ConditionReport report_from_json(const Json& j)
{
    return detail::guarded("condition report", [&] {
        ConditionReport r;
        r.alpha = j.at("alpha").get<bool>();
        r.alpha_slack = j.at("alpha_slack").get<std::int64_t>();
        r.beta = j.at("beta").get<bool>();
        r.beta_margins = j.at("beta_margins").get<std::vector<std::int64_t>>();
        r.omega = j.at("omega").get<bool>();
        r.omega_slack = j.at("omega_slack").get<std::int64_t>();
        return r;
    });
}

inline Json to_json(const Verdict& v)
{
    return Json{{"solvable", v.solvable}, {"reason", std::string(to_string(v.reason))}, {"at_step", v.at_step}};
}

inline Verdict verdict_from_json(const Json& j)
{
    return detail::guarded("verdict", [&] {
        return Verdict{j.at("solvable").get<bool>(), parse_reason(j.at("reason").get<std::string>()),
                       j.at("at_step").get<std::size_t>()};
    });
}

inline Json to_json(const ReductionTrace& tr)
{
    Json steps = Json::array();
    for (const auto& s : tr.steps) {
        Json row{{"tuple", to_string(s.tuple)}, {"n", s.n}, {"dropped", s.dropped}, {"conditions", to_json(s.report)}};
        row["n1"] = s.n1 ? Json(*s.n1) : Json(nullptr);
        steps.push_back(std::move(row));
    }
    return Json{{"steps", steps}, {"verdict", to_json(tr.verdict)}};
}

inline ReductionTrace trace_from_json(const Json& j)
{
    return detail::guarded("trace", [&] {
        ReductionTrace tr;
        for (const auto& row : j.at("steps")) {
            TraceStep s;
            s.tuple = parse_tuple(row.at("tuple").get<std::string>());
            s.n = row.at("n").get<std::int64_t>();
            s.dropped = row.at("dropped").get<std::vector<std::size_t>>();
            s.report = report_from_json(row.at("conditions"));
            if (!row.at("n1").is_null())
                s.n1 = row.at("n1").get<std::int64_t>();
            tr.steps.push_back(std::move(s));
        }
        tr.verdict = verdict_from_json(j.at("verdict"));
        return tr;
    });
}

// ------------------------------------------------------- assignments

/// {"1":"-1/2","t1":"1"}: "1" is the constant, "tB" the formal t_B.
inline Json to_json(const ExactValue& v)
{
    Json c = Json::object();
    for (const auto& [b, q] : v.coeffs())
        c[b == 0 ? std::string("1") : "t" + std::to_string(b)] = to_string(q);
    return c;
}

inline ExactValue value_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParseError("coefficients must be a JSON object");
    ExactValue v;
    for (const auto& [key, q] : j.items()) {
        int b = 0;
        if (key != "1") {
            if (key.size() < 2 || key[0] != 't' || key.find_first_not_of("0123456789", 1) != std::string::npos ||
                key.size() > 8)
                throw ParseError("bad coefficient key '" + key + "'");
            b = std::stoi(key.substr(1));
            if (b < 1)
                throw ParseError("bad coefficient key '" + key + "'");
        }
        if (!q.is_string())
            throw ParseError("coefficients are rational strings like \"-1/2\"");
        v.set(b, v.coeff(b) + parse_rational(q.get<std::string>()));
    }
    return v;
}

inline Json to_json(const EigenvalueAssignment& a)
{
    Json entries = Json::array();
    for (const auto& e : a.entries) {
        Json row = Json::array();
        for (const auto& ev : e)
            row.push_back(Json{{"coeffs", to_json(ev.value)}, {"mult", ev.mult}});
        entries.push_back(std::move(row));
    }
    return Json{{"mode", std::string(to_string(a.mode))}, {"entries", entries}};
}

inline EigenvalueAssignment assignment_from_json(const Json& j)
{
    return detail::guarded("assignment", [&] {
        EigenvalueAssignment a;
        a.mode = parse_mode(j.at("mode").get<std::string>());
        for (const auto& row : j.at("entries")) {
            std::vector<Eigenvalue> e;
            for (const auto& ev : row)
                e.push_back({value_from_json(ev.at("coeffs")), ev.at("mult").get<std::int64_t>()});
            a.entries.push_back(std::move(e));
        }
        validate(a);
        return a;
    });
}

inline Json to_json(const GenericityWitness& w)
{
    return Json{{"kappa", w.kappa}, {"sub", w.sub}};
}

inline GenericityWitness witness_from_json(const Json& j)
{
    return detail::guarded("witness", [&] {
        return GenericityWitness{j.at("kappa").get<std::int64_t>(),
                                 j.at("sub").get<std::vector<std::vector<std::int64_t>>>()};
    });
}

// ----------------------------------------------------------- catalog

inline Json names_json(const std::vector<SeriesId>& ids)
{
    Json names = Json::array();
    for (const auto& id : ids)
        names.push_back(to_string(id));
    return names;
}

/// One catalog line: {n, entries, defect, series_names}.
inline Json catalog_line(const JnfTuple& t)
{
    auto j = to_json(t);
    j["defect"] = defect(t);
    j["series_names"] = names_json(identify(t));
    return j;
}

} // namespace dspkit::io

#endif
