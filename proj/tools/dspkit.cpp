#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dspkit/catalog.hpp"
#include "dspkit/genericity.hpp"
#include "dspkit/io.hpp"
#include "dspkit/reduction.hpp"

using namespace dspkit;
using io::Json;

namespace {

enum Exit { kOk = 0, kDomain = 1, kParse = 2, kResource = 3 };

struct Options {
    bool json = false;
    std::string tuple;
    std::string file;
    // enum-rigid
    std::int64_t n = 0;
    std::size_t entries = 3;
    std::optional<std::int64_t> u;
    bool no_all_ones = false;
    bool no_scalar = false;
    std::int64_t defect = 2;
    bool any_defect = false;
    unsigned jobs = 1;
    // series / chain
    std::string name;
    // dual
    std::string jnf;
    std::string partition;
    // min-d
    std::int64_t r = 0;
    // genericity
    std::string assignment;
    std::string mode = "additive";
    std::uint64_t seed = 1;
    // catalog-verify
    std::int64_t max_n = 60;
};

JnfTuple read_tuple(const std::string& text)
{
    std::vector<std::string> warnings;
    auto t = io::parse_tuple_any(text, &warnings);
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << "\n";
    return t;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string verdict_text(const Verdict& v)
{
    std::ostringstream os;
    os << (v.solvable ? "Solvable" : "NotSolvable") << " (" << to_string(v.reason) << " at step " << v.at_step << ")";
    return os.str();
}

std::string arrow_join(const std::vector<std::string>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? " -> " : "") + xs[i];
    return out;
}

/* Symbolic chain for a catalog tuple; otherwise the per-step names where
 * a step is recognized, "?" where it is not. */
std::vector<std::string> chain_names(const JnfTuple& t, const ReductionTrace& tr)
{
    for (const auto& id : identify(t)) {
        try {
            std::vector<std::string> out;
            for (const auto& s : verify_chain(id))
                out.push_back(to_string(s));
            return out;
        } catch (const ChainMismatch&) {
        }
    }
    std::vector<std::string> out;
    bool any = false;
    for (const auto& s : tr.steps) {
        auto ids = identify(s.tuple);
        any = any || !ids.empty();
        out.push_back(ids.empty() ? "?" : to_string(ids.front()));
    }
    if (!any)
        out.clear();
    return out;
}

Json decide_json(const JnfTuple& t)
{
    auto tr = decide(t);
    return Json{{"input", io::to_json(t)}, {"verdict", io::to_json(tr.verdict)}, {"chain", chain_names(t, tr)}};
}

int cmd_decide(const Options& o)
{
    std::vector<JnfTuple> inputs;
    if (!o.file.empty()) {
        std::istringstream in(slurp(o.file));
        std::string line;
        while (std::getline(in, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                inputs.push_back(read_tuple(line));
    } else {
        if (o.tuple.empty())
            throw ParseError("decide needs a tuple or --file");
        inputs.push_back(read_tuple(o.tuple));
    }
    for (const auto& t : inputs) {
        auto j = decide_json(t);
        if (o.json) {
            std::cout << j.dump() << "\n";
            continue;
        }
        const auto v = io::verdict_from_json(j["verdict"]);
        std::cout << to_string(t) << "\n  verdict: " << verdict_text(v) << "\n";
        const auto chain = j["chain"].get<std::vector<std::string>>();
        if (!chain.empty())
            std::cout << "  chain: " << arrow_join(chain) << "\n";
    }
    return kOk;
}

int cmd_trace(const Options& o)
{
    const auto t = read_tuple(o.tuple);
    const auto tr = decide(t);
    if (o.json) {
        std::cout << io::to_json(tr).dump() << "\n";
        return kOk;
    }
    for (std::size_t i = 0; i < tr.steps.size(); ++i) {
        const auto& s = tr.steps[i];
        std::cout << "step " << i << ": n=" << s.n << "  " << to_string(s.tuple) << "\n";
        if (!s.dropped.empty()) {
            std::cout << "  dropped scalar entries:";
            for (auto k : s.dropped)
                std::cout << " " << k;
            std::cout << "\n";
        }
        const auto& r = s.report;
        std::cout << "  alpha " << (r.alpha ? "holds" : "fails") << " (slack " << r.alpha_slack << "), beta "
                  << (r.beta ? "holds" : "fails") << ", omega " << (r.omega ? "holds" : "fails") << " (slack "
                  << r.omega_slack << ")\n";
        if (s.n1)
            std::cout << "  psi -> n1=" << *s.n1 << "\n";
    }
    std::cout << "verdict: " << verdict_text(tr.verdict) << "\n";
    return kOk;
}

int cmd_defect(const Options& o)
{
    const auto t = read_tuple(o.tuple);
    const auto n = t.n();
    Json j{{"n", n},
           {"sum_d", sum_d(t)},
           {"sum_r", sum_r(t)},
           {"defect", defect(t)},
           {"rigid", is_rigid(t)},
           {"conditions", io::to_json(check_conditions(t))}};
    if (o.json) {
        std::cout << j.dump() << "\n";
        return kOk;
    }
    std::cout << "n = " << n << ", sum d = " << sum_d(t) << ", sum r = " << sum_r(t) << "\n"
              << "defect 2n^2 - sum d = " << defect(t) << (is_rigid(t) ? " (rigid)" : "") << "\n";
    return kOk;
}

int cmd_enum(const Options& o)
{
    EnumConstraints c;
    c.n = o.n;
    c.num_entries = o.entries;
    c.max_first_part = o.u;
    c.forbid_all_ones = o.no_all_ones;
    c.forbid_scalar = o.no_scalar;
    if (o.any_defect)
        c.require_defect.reset();
    else
        c.require_defect = o.defect;
    c.jobs = std::max(1u, o.jobs);
    c.max_n = enum_max_n_from_env();
    for (const auto& t : enumerate_rigid(c)) {
        auto line = io::catalog_line(t);
        if (o.json) {
            std::cout << line.dump() << "\n";
            continue;
        }
        std::cout << to_string(t);
        const auto names = line["series_names"].get<std::vector<std::string>>();
        if (!names.empty()) {
            std::cout << "  [";
            for (std::size_t i = 0; i < names.size(); ++i)
                std::cout << (i ? " = " : "") << names[i];
            std::cout << "]";
        }
        std::cout << "\n";
    }
    return kOk;
}

int cmd_series(const Options& o)
{
    const auto id = parse_series_id(o.name);
    const auto t = series(id);
    if (o.json) {
        auto j = io::catalog_line(t);
        j["name"] = to_string(id);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << to_string(t) << "\n";
    }
    return kOk;
}

int cmd_chain(const Options& o)
{
    const auto id = parse_series_id(o.name);
    std::vector<SeriesId> chain;
    try {
        chain = verify_chain(id);
    } catch (const ChainMismatch& e) {
        if (o.json)
            std::cout << Json{{"name", to_string(id)}, {"ok", false}, {"step", e.step()}, {"error", e.what()}}.dump()
                      << "\n";
        std::cerr << "chain mismatch at step " << e.step() << ": " << e.what() << "\n";
        return kDomain;
    }
    std::vector<std::string> names;
    for (const auto& s : chain)
        names.push_back(to_string(s));
    if (o.json)
        std::cout << Json{{"name", to_string(id)}, {"ok", true}, {"chain", names}}.dump() << "\n";
    else
        std::cout << arrow_join(names) << "\n";
    return kOk;
}

int cmd_dual(const Options& o)
{
    if (o.jnf.empty() == o.partition.empty())
        throw ParseError("dual needs exactly one of --jnf or --partition");
    Partition out;
    if (!o.jnf.empty())
        out = corresponding_diagonal(io::jnf_from_json(io::parse_json(o.jnf))).partition();
    else
        out = dual(parse_partition(o.partition));
    if (o.json)
        std::cout << Json{{"partition", out.parts()}}.dump() << "\n";
    else
        std::cout << to_string(out) << "\n";
    return kOk;
}

int cmd_min_d(const Options& o)
{
    const auto mv = min_d_mv(o.n, o.r);
    if (o.json)
        std::cout << Json{{"mv", mv.partition().parts()}, {"r", r_of(mv)}, {"d", d_of(mv)}}.dump() << "\n";
    else
        std::cout << to_string(mv) << "  r=" << r_of(mv) << " d=" << d_of(mv) << "\n";
    return kOk;
}

int cmd_generic_check(const Options& o)
{
    std::string text = o.assignment;
    if (!o.file.empty())
        text = slurp(o.file);
    if (text.empty())
        throw ParseError("generic-check needs an assignment or --file");
    const auto a = io::assignment_from_json(io::parse_json(text));
    if (!o.tuple.empty() && !matches_shape(a, read_tuple(o.tuple)))
        throw ParseError("assignment multiplicities do not match the tuple");
    const bool trace = trace_condition(a);
    const auto res = is_generic(a);
    if (o.json) {
        Json j{{"trace_condition", trace}, {"generic", res.generic}};
        j["witness"] = res.witness ? io::to_json(*res.witness) : Json(nullptr);
        std::cout << j.dump() << "\n";
        return kOk;
    }
    std::cout << "trace condition: " << (trace ? "holds" : "fails") << "\n"
              << "generic: " << (res.generic ? "yes" : "no") << "\n";
    if (res.witness) {
        std::cout << "relation at kappa=" << res.witness->kappa << ":";
        for (const auto& row : res.witness->sub) {
            std::cout << " (";
            for (std::size_t i = 0; i < row.size(); ++i)
                std::cout << (i ? "," : "") << row[i];
            std::cout << ")";
        }
        std::cout << "\n";
    }
    return kOk;
}

int cmd_generic_gen(const Options& o)
{
    const auto t = read_tuple(o.tuple);
    const auto mode = parse_mode(o.mode);
    EigenvalueAssignment a;
    try {
        a = generate_generic(t, mode, o.seed);
    } catch (const GenerationError& e) {
        std::cerr << "generation failed: " << e.what() << "\n";
        return kDomain;
    }
    if (o.json) {
        std::cout << io::to_json(a).dump() << "\n";
        return kOk;
    }
    std::cout << "mode: " << to_string(a.mode) << "\n";
    for (std::size_t j = 0; j < a.entries.size(); ++j) {
        std::cout << "entry " << j << ":";
        for (const auto& ev : a.entries[j])
            std::cout << "  " << to_string(ev.value) << " (mult " << ev.mult << ")";
        std::cout << "\n";
    }
    return kOk;
}

int cmd_catalog_verify(const Options& o)
{
    std::int64_t checked = 0;
    Json failures = Json::array();
    for (auto f : kAllFamilies)
        for (std::int64_t p = 0; p <= o.max_n + 1; ++p) {
            SeriesId id{f, p};
            if (!series_valid(id) || series_size(id) > o.max_n)
                continue;
            ++checked;
            const auto t = series(id);
            std::string why;
            if (t.n() > 1 && !is_rigid(t))
                why = "defect " + std::to_string(defect(t));
            else if (!decide(t).verdict.solvable)
                why = "not solvable";
            else {
                try {
                    verify_chain(id);
                } catch (const ChainMismatch& e) {
                    why = e.what();
                }
            }
            if (!why.empty())
                failures.push_back(Json{{"name", to_string(id)}, {"error", why}});
        }
    if (o.json) {
        std::cout << Json{{"checked", checked}, {"failures", failures}}.dump() << "\n";
    } else {
        for (const auto& f : failures)
            std::cout << "FAIL " << f["name"].get<std::string>() << ": " << f["error"].get<std::string>() << "\n";
        std::cout << "checked " << checked << " series instances up to n=" << o.max_n << ", " << failures.size()
                  << " failures\n";
    }
    return failures.empty() ? kOk : kDomain;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Deligne-Simpson toolkit: solvability, rigid tuples and generic eigenvalues"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "JSON output");

    auto tuple_arg = [&](CLI::App* s, bool required) {
        auto opt = s->add_option("tuple", o.tuple, "tuple as text, e.g. \"(2,2,1);(3,2);(4,1)\", or JSON");
        if (required)
            opt->required();
    };

    auto* decide_cmd = app.add_subcommand("decide", "decide solvability for generic eigenvalues");
    tuple_arg(decide_cmd, false);
    decide_cmd->add_option("--file", o.file, "JSON lines of tuples");

    tuple_arg(app.add_subcommand("trace", "show every reduction step"), true);
    tuple_arg(app.add_subcommand("defect", "dimension sums and defect"), true);

    auto* enum_cmd = app.add_subcommand("enum-rigid", "enumerate rigid solvable tuples");
    enum_cmd->add_option("--n", o.n, "size")->required();
    enum_cmd->add_option("--entries", o.entries, "number of entries")->capture_default_str();
    enum_cmd->add_option("--u", o.u, "bound on the multiplicities of one entry");
    enum_cmd->add_flag("--no-all-ones", o.no_all_ones, "exclude the all-ones multiplicity vector");
    enum_cmd->add_flag("--no-scalar", o.no_scalar, "exclude scalar entries");
    enum_cmd->add_option("--defect", o.defect, "required defect")->capture_default_str();
    enum_cmd->add_flag("--any-defect", o.any_defect, "do not filter by defect");
    enum_cmd->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();

    app.add_subcommand("series", "print a named series instance")->add_option("name", o.name, "e.g. W_2")->required();
    app.add_subcommand("chain", "reduction chain of a named series")->add_option("name", o.name)->required();

    auto* dual_cmd = app.add_subcommand("dual", "dual partition or corresponding diagonal form");
    dual_cmd->add_option("--jnf", o.jnf, "JNF as JSON");
    dual_cmd->add_option("--partition", o.partition, "partition as text");

    auto* min_cmd = app.add_subcommand("min-d", "multiplicity vector of least d for given n and r");
    min_cmd->add_option("--n", o.n)->required();
    min_cmd->add_option("--r", o.r)->required();

    auto* check_cmd = app.add_subcommand("generic-check", "check an eigenvalue assignment for relations");
    check_cmd->add_option("assignment", o.assignment, "assignment JSON");
    check_cmd->add_option("--file", o.file, "read the assignment from a file");
    check_cmd->add_option("--tuple", o.tuple, "also check the shape against this tuple");

    auto* gen_cmd = app.add_subcommand("generic-gen", "generate a generic eigenvalue assignment");
    tuple_arg(gen_cmd, true);
    gen_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"additive", "multiplicative"}))->capture_default_str();
    gen_cmd->add_option("--seed", o.seed)->capture_default_str();

    app.add_subcommand("catalog-verify", "check rigidity, solvability and chains of every series")
        ->add_option("--max-n", o.max_n)
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kParse;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        if (cmd == "decide")
            return cmd_decide(o);
        if (cmd == "trace")
            return cmd_trace(o);
        if (cmd == "defect")
            return cmd_defect(o);
        if (cmd == "enum-rigid")
            return cmd_enum(o);
        if (cmd == "series")
            return cmd_series(o);
        if (cmd == "chain")
            return cmd_chain(o);
        if (cmd == "dual")
            return cmd_dual(o);
        if (cmd == "min-d")
            return cmd_min_d(o);
        if (cmd == "generic-check")
            return cmd_generic_check(o);
        if (cmd == "generic-gen")
            return cmd_generic_gen(o);
        return cmd_catalog_verify(o);
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDomain;
    }
}
