#include "recur/cli.hpp"

#include "recur/conjecture.hpp"
#include "recur/dsl.hpp"
#include "recur/expansion.hpp"
#include "recur/identity.hpp"
#include "recur/sequence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <optional>
#include <sstream>

namespace recur::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Plain, Json, Csv };

struct Globals {
    Format format = Format::Plain;
    unsigned jobs = 1;
    bool quiet = false;
};

// Thrown for bad argument values that CLI11 cannot see (ranges, spec names).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Everything a command produces.  The three renderings are built together
// so each format is a pure function of the inputs.
struct Output {
    json record;
    std::vector<std::vector<std::string>> csv; // first row is the header
    std::ostringstream plain;
    int exit_code = kOk;
};

struct IndexRange {
    Index lo = 0;
    Index hi = 0;
};

Index parse_index(std::string_view s, std::string_view what) {
    Index v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

IndexRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw UsageError("range must look like lo..hi, got '" + text + "'");
    IndexRange r{parse_index(std::string_view(text).substr(0, dots), "range start"),
                 parse_index(std::string_view(text).substr(dots + 2), "range end")};
    if (r.lo > r.hi)
        throw UsageError("range start exceeds end in '" + text + "'");
    return r;
}

SequenceSpec resolve_spec(const std::string& ref) {
    if (ref == "builtin:fib" || ref == "builtin:fibonacci")
        return fibonacci_spec();
    if (ref == "builtin:lucas")
        return lucas_spec();
    if (ref == "builtin:trib" || ref == "builtin:tribonacci")
        return tribonacci_spec();
    if (ref.starts_with("builtin:"))
        throw UsageError("unknown builtin '" + ref + "' (fib, lucas, tribonacci)");
    if (ref.starts_with("seq ") || ref.starts_with("seq\t"))
        return parse({ref, "<inline>"});
    try {
        return parse(read_source(ref));
    } catch (const ParseError&) {
        throw;
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

std::string term_text(const std::string& name, const Integer& c, Index shift, bool first) {
    std::string out;
    if (c < 0)
        out += first ? "-" : " - ";
    else if (!first)
        out += " + ";
    const Integer mag = abs(c);
    if (mag != 1)
        out += mag.get_str() + "*";
    return out + name + "(n-" + std::to_string(shift) + ")";
}

std::string rule_text(const Recurrence& rule) {
    std::string out;
    for (std::size_t i = 0; i < rule.order(); ++i) {
        if (i)
            out += ' ';
        out += to_decimal(rule.coeffs[i]);
    }
    return out;
}

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_decimal(x));
    return a;
}

json spec_json(const SequenceSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["text"] = format(spec);
    return j;
}

// -- commands ---------------------------------------------------------------

void cmd_eval(const SequenceSpec& spec, std::optional<Index> n, std::optional<IndexRange> range,
              Output& o) {
    IndexRange r = range ? *range : IndexRange{*n, *n};
    std::vector<Integer> values;
    const bool builtin = spec == fibonacci_spec() || spec == lucas_spec();
    if (builtin && r.lo >= 0 && r.lo == r.hi)
        values.push_back(spec == fibonacci_spec() ? fib(r.lo) : lucas(r.lo));
    else
        values = eval_range(spec, r.lo, r.hi);

    o.record["command"] = "eval";
    o.record["parameters"] = {{"spec", spec_json(spec)}, {"lo", r.lo}, {"hi", r.hi}};
    json vals = json::array();
    o.csv.push_back({"n", "value"});
    for (Index i = r.lo; i <= r.hi; ++i) {
        const auto& v = values[static_cast<std::size_t>(i - r.lo)];
        vals.push_back({{"n", i}, {"value", to_decimal(v)}});
        o.csv.push_back({std::to_string(i), to_decimal(v)});
        if (range)
            o.plain << spec.name << "(" << i << ") = " << to_decimal(v) << '\n';
        else
            o.plain << to_decimal(v) << '\n';
    }
    o.record["results"] = {{"values", vals}};
}

void cmd_expand(const SequenceSpec& spec, Index depth, Output& o) {
    const LinearForm form = expansion(spec, depth);
    o.record["command"] = "expand";
    o.record["parameters"] = {{"spec", spec_json(spec)}, {"depth", depth}};
    json terms = json::array();
    o.csv.push_back({"shift", "coefficient"});
    o.plain << "E(" << depth << "): " << spec.name << "(n) = ";
    bool first = true;
    for (const auto& [k, c] : form.terms) {
        terms.push_back({{"shift", k}, {"coefficient", to_decimal(c)}});
        o.csv.push_back({std::to_string(k), to_decimal(c)});
        o.plain << term_text(spec.name, c, k, first);
        first = false;
    }
    o.plain << '\n';
    o.record["results"] = {{"terms", terms}};
}

void cmd_collect(const SequenceSpec& spec, Index n, Output& o) {
    const CollectedWeights w = collect_general(spec, n);
    o.record["command"] = "collect";
    o.record["parameters"] = {{"spec", spec_json(spec)}, {"n", n}};
    json weights = json::array();
    json residual = json::array();
    o.csv.push_back({"kind", "shift", "coefficient"});
    o.plain << "n=" << n << '\n' << "weights:";
    for (Index k = 1; k <= n - 1; ++k) {
        weights.push_back(to_decimal(w.weight(k)));
        o.csv.push_back({"weight", std::to_string(k), to_decimal(w.weight(k))});
        o.plain << ' ' << to_decimal(w.weight(k));
    }
    o.plain << '\n' << "residual:" << (w.residual.empty() ? " none" : "") << '\n';
    for (const auto& [k, c] : w.residual) {
        residual.push_back({{"shift", k}, {"coefficient", to_decimal(c)}});
        o.csv.push_back({"residual", std::to_string(k), to_decimal(c)});
        o.plain << "shift " << k << ": " << to_decimal(c) << '\n';
    }
    o.record["results"] = {{"weights", weights}, {"residual", residual}};
}

void cmd_verify(IndexRange r, bool inductive, const ConvolutionInputs& in,
                const Globals& g, Output& o) {
    if (r.lo < 2)
        throw UsageError("verify range must start at 2 or above");
    const auto rows = identity_rows(r.lo, r.hi, in, g.jobs);

    o.record["command"] = "verify";
    o.record["parameters"] = {{"lo", r.lo},
                              {"hi", r.hi},
                              {"inductive", inductive},
                              {"fibonacci", spec_json(in.fibonacci)},
                              {"lucas", spec_json(in.lucas)}};
    o.csv.push_back({"kind", "n", "S", "lhs", "quotient", "pass"});
    json jrows = json::array();
    const IdentityRow* failure = nullptr;
    for (const auto& row : rows) {
        const std::string quotient = row.divisible ? to_decimal(row.quotient) : "";
        jrows.push_back({{"n", row.n},
                         {"S", to_decimal(row.sum)},
                         {"lhs", to_decimal(row.multiplied)},
                         {"divisible", row.divisible},
                         {"quotient", row.divisible ? json(quotient) : json(nullptr)},
                         {"pass", row.passed}});
        o.csv.push_back({"identity", std::to_string(row.n), to_decimal(row.sum),
                         to_decimal(row.multiplied), quotient, row.passed ? "PASS" : "FAIL"});
        if (!g.quiet || !row.passed)
            o.plain << "n=" << row.n << ": S=" << to_decimal(row.sum)
                    << " (n-1)F=" << to_decimal(row.multiplied) << (row.passed ? " PASS" : " FAIL")
                    << '\n';
        if (!row.passed && !failure)
            failure = &row;
    }

    json induct = json::array();
    std::optional<Index> inductive_failure;
    if (inductive) {
        for (Index m = std::max<Index>(r.lo, 3); m <= r.hi; ++m) {
            const bool ok = inductive_step_check(m);
            induct.push_back({{"m", m}, {"pass", ok}});
            o.csv.push_back({"inductive", std::to_string(m), "", "", "", ok ? "PASS" : "FAIL"});
            if (!g.quiet || !ok)
                o.plain << "m=" << m << ": S(m+1) = F(m) + S(m) + L(0)F(m-1) + S(m-1) = mF(m+1)"
                        << (ok ? " PASS" : " FAIL") << '\n';
            if (!ok && !inductive_failure)
                inductive_failure = m;
        }
    }

    json results = {{"rows", jrows}};
    if (inductive)
        results["inductive"] = induct;
    if (failure) {
        const Integer diff = failure->sum - failure->multiplied;
        results["first_failure"] = {{"n", failure->n},
                                    {"lhs", to_decimal(failure->multiplied)},
                                    {"rhs", to_decimal(failure->sum)},
                                    {"difference", to_decimal(diff)}};
        o.plain << "first failure at n=" << failure->n
                << ": (n-1)F=" << to_decimal(failure->multiplied)
                << " S=" << to_decimal(failure->sum) << " difference=" << to_decimal(diff)
                << '\n';
    } else {
        results["first_failure"] = nullptr;
    }
    if (inductive_failure)
        o.plain << "inductive step fails at m=" << *inductive_failure << '\n';
    o.record["results"] = results;
    const bool ok = !failure && !inductive_failure;
    if (g.quiet && ok)
        o.plain << "PASS " << r.lo << ".." << r.hi << '\n';
    o.exit_code = ok ? kOk : kCheckFailed;
}

void cmd_conjecture(const SequenceSpec& spec, Index probe_n, Index verify_to,
                    std::size_t max_order, Output& o) {
    const ConjecturedIdentity c = conjecture(spec, probe_n, verify_to, max_order);
    o.record["command"] = "conjecture";
    o.record["parameters"] = {{"spec", spec_json(spec)},
                              {"probe_n", probe_n},
                              {"verify_to", verify_to},
                              {"max_order", max_order}};
    json res;
    res["status"] = to_string(c.status);
    res["note"] = c.note;
    o.csv.push_back({"part", "offset", "order", "coefficients", "seeds"});
    o.plain << "sequence: " << format(spec) << '\n';
    if (!c.weights.rule.coeffs.empty()) {
        res["weights"] = {{"order", c.weights.rule.order()},
                          {"coefficients", rationals(c.weights.rule.coeffs)},
                          {"seeds", rationals(c.weights.seeds)}};
        o.csv.push_back({"weights", "", std::to_string(c.weights.rule.order()),
                         rule_text(c.weights.rule), rule_text({c.weights.seeds})});
        o.plain << "weights a(k): order " << c.weights.rule.order() << ", coefficients ("
                << rule_text(c.weights.rule) << "), a(1..) = " << rule_text({c.weights.seeds})
                << '\n';
    }
    json resid = json::array();
    for (const auto& t : c.residual) {
        resid.push_back({{"offset", t.offset},
                         {"multiplies", spec.name + "(" + std::to_string(-t.offset) + ")"},
                         {"order", t.coefficient.rule.order()},
                         {"coefficients", rationals(t.coefficient.rule.coeffs)},
                         {"seeds_from_n2", rationals(t.coefficient.seeds)}});
        o.csv.push_back({"residual", std::to_string(t.offset),
                         std::to_string(t.coefficient.rule.order()),
                         rule_text(t.coefficient.rule), rule_text({t.coefficient.seeds})});
        o.plain << "residual term r(n)*" << spec.name << "(" << -t.offset << "): order "
                << t.coefficient.rule.order() << ", coefficients ("
                << rule_text(t.coefficient.rule) << "), r(2..) = "
                << rule_text({t.coefficient.seeds}) << '\n';
    }
    res["residual"] = resid;
    if (c.status != ConjectureStatus::Undetermined)
        res["verified_range"] = {{"lo", c.verified_lo}, {"hi", c.verified_hi}};
    if (c.counterexample) {
        res["counterexample"] = {{"n", c.counterexample->n},
                                 {"lhs", to_decimal(c.counterexample->lhs)},
                                 {"rhs", to_decimal(c.counterexample->rhs)},
                                 {"difference",
                                  to_decimal(Rational(c.counterexample->rhs - c.counterexample->lhs))}};
    }
    o.plain << "status: " << to_string(c.status) << "; " << c.note << '\n';
    o.record["results"] = res;
    o.exit_code = c.status == ConjectureStatus::Verified ? kOk : kCheckFailed;
}

void render(const Output& o, const Globals& g, std::ostream& out) {
    switch (g.format) {
    case Format::Json: {
        json rec = o.record;
        rec["status"] = o.exit_code == kOk ? "pass" : "fail";
        rec["exit_code"] = o.exit_code;
        out << rec.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        for (const auto& row : o.csv) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
        break;
    case Format::Plain:
        out << o.plain.str();
        break;
    }
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of Fibonacci-Lucas convolution identities", "recur"};
    app.fallthrough();
    app.require_subcommand(1);

    Globals g;
    std::string format_name = "plain";
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--quiet", g.quiet, "Only print failures and a summary");

    std::string spec_ref, range_text;
    std::optional<Index> n_opt;
    Index depth = 0, n_val = 0, probe_n = 0, verify_to = 0;
    std::size_t max_order = kDefaultMaxOrder;
    bool inductive = false;
    std::string fib_ref, lucas_ref;

    auto* eval = app.add_subcommand("eval", "Evaluate a sequence at an index or range");
    eval->add_option("--spec", spec_ref, "builtin:fib, builtin:lucas, builtin:tribonacci, a spec file or inline text")
        ->required();
    auto* eval_n = eval->add_option("--n", n_opt, "Index");
    auto* eval_range_opt = eval->add_option("--range", range_text, "Index range lo..hi");
    eval_n->excludes(eval_range_opt);

    auto* expand = app.add_subcommand("expand", "Print the expansion E(r)");
    expand->add_option("--spec", spec_ref)->required();
    expand->add_option("--depth", depth, "Expansion depth r >= 1")->required();

    auto* collect = app.add_subcommand("collect", "Collected weights and residual of E(1)+...+E(n-1)");
    collect->add_option("--spec", spec_ref)->required();
    collect->add_option("--n", n_val, "Target index n >= 2")->required();

    auto* verify = app.add_subcommand("verify", "Check (n-1)F(n) = sum L(k)F(n-k) over a range");
    verify->add_option("--range", range_text, "Range lo..hi, lo >= 2")->required();
    verify->add_flag("--inductive", inductive, "Also replay the inductive step for each m >= 3");
    verify->add_option("--fib-spec", fib_ref, "Replace the Fibonacci input");
    verify->add_option("--lucas-spec", lucas_ref, "Replace the Lucas input");

    auto* conj = app.add_subcommand("conjecture", "Discover and verify the analogous identity for a sequence");
    conj->add_option("--spec", spec_ref)->required();
    conj->add_option("--probe-n", probe_n, "Index used to detect the weight recurrence")->required();
    conj->add_option("--verify-to", verify_to, "Upper end of the brute-force check")->required();
    conj->add_option("--max-order", max_order, "Largest recurrence order to try")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));

    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.emplace_back("recur");
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    g.format = format_name == "json" ? Format::Json
               : format_name == "csv"  ? Format::Csv
                                       : Format::Plain;

    Output o;
    try {
        if (*eval) {
            if (!n_opt && range_text.empty())
                throw UsageError("eval needs --n or --range");
            std::optional<IndexRange> r;
            if (!range_text.empty())
                r = parse_range(range_text);
            cmd_eval(resolve_spec(spec_ref), n_opt, r, o);
        } else if (*expand) {
            cmd_expand(resolve_spec(spec_ref), depth, o);
        } else if (*collect) {
            cmd_collect(resolve_spec(spec_ref), n_val, o);
        } else if (*verify) {
            ConvolutionInputs in;
            if (!fib_ref.empty())
                in.fibonacci = resolve_spec(fib_ref);
            if (!lucas_ref.empty())
                in.lucas = resolve_spec(lucas_ref);
            cmd_verify(parse_range(range_text), inductive, in, g, o);
        } else if (*conj) {
            cmd_conjecture(resolve_spec(spec_ref), probe_n, verify_to, max_order, o);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    } catch (const std::logic_error& e) {
        // DomainError, InvalidSpec, InsufficientData
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NonInvertibleStep& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    render(o, g, out);
    return o.exit_code;
}

} // namespace recur::cli
