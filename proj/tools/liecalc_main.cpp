// liecalc - batch front end for the slope/groupoid/cubic-ring engine.
//
// Subcommands: slope, lift, check, converge, split. Errors exit with
// 1 = parse, 2 = domain, 3 = backend/arity, 4 = invertibility, and put a
// JSON error object on stderr.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "liecalc/calculus.hpp"
#include "liecalc/jsonio.hpp"
#include "liecalc/suites.hpp"

using namespace liecalc;

namespace {

struct CliParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BackendTag parse_backend(const std::string& name, double tol) {
    if (name == "rational") return BackendTag::rational();
    if (name == "float") return BackendTag::floating(tol);
    if (name.rfind("fp:", 0) == 0) {
        const long p = std::strtol(name.c_str() + 3, nullptr, 10);
        if (p < 2) throw backend_error("bad prime in backend: " + name);
        return BackendTag::prime_field(static_cast<std::uint32_t>(p));
    }
    throw backend_error("unknown backend: " + name);
}

std::string default_backend_name() {
    if (const char* env = std::getenv("LIECALC_BACKEND")) return env;
    return "rational";
}

RingValue parse_scalar(const std::string& text, const BackendTag& tag) {
    if (tag.kind == Backend::Float) {
        char* end = nullptr;
        const double v = std::strtod(text.c_str(), &end);
        if (end == text.c_str() || *end != '\0')
            throw CliParseError("bad float literal: " + text);
        return RingValue::floating(v);
    }
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0)
        throw CliParseError("bad rational literal: " + text);
    q.canonicalize();
    return RingValue::from_mpq(q, tag);
}

Vec parse_vector(const std::string& text, const BackendTag& tag) {
    Vec out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_scalar(text.substr(pos, comma - pos), tag));
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

Json load_json(const std::string& arg) {
    std::string text = arg;
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw CliParseError("cannot read file: " + arg.substr(1));
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    return Json::parse(text);
}

ExprVec parse_or_die(const std::string& text, int arity) {
    auto r = parse(text, arity);
    if (auto* pe = std::get_if<ParseError>(&r))
        throw CliParseError("at offset " + std::to_string(pe->offset) + ": expected " +
                            pe->expected);
    return std::get<ExprVec>(std::move(r));
}

void print_values(const Vec& v, const std::string& format) {
    if (format == "json") {
        Json j = Json::array();
        for (const auto& c : v) j.push_back(rv_to_json(c));
        std::cout << j.dump() << "\n";
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        std::cout << v[i].str() << (i + 1 < v.size() ? (format == "csv" ? "," : " ") : "");
    std::cout << "\n";
}

int run_slope(const std::string& expr_text, const std::string& backend_name, double tol,
              const std::string& xs, const std::string& vs, const std::string& ts, int order,
              const std::string& mode, const std::string& v2s, const std::string& v12s,
              const std::string& t2s, const std::string& t12s, const std::string& format) {
    const BackendTag tag = parse_backend(backend_name, tol);
    Vec x = parse_vector(xs, tag);
    Vec v = parse_vector(vs, tag);
    if (x.size() != v.size()) throw backend_error("x and v must have the same dimension");
    RingValue t = parse_scalar(ts, tag);
    const int dim = static_cast<int>(x.size());
    MapFn f = MapFn::from_expr(parse_or_die(expr_text, dim));
    if (order == 1) {
        print_values(slope1(f, x, v, t), format);
        return 0;
    }
    if (v2s.empty() || t2s.empty())
        throw backend_error("order 2 needs --v2 and --t2");
    Vec v2 = parse_vector(v2s, tag);
    Vec v12 = v12s.empty() ? vec_zero(dim, tag) : parse_vector(v12s, tag);
    RingValue t2 = parse_scalar(t2s, tag);
    if (mode == "sym") {
        SymPoint q;
        q.order = 2;
        q.base = x;
        q.u = {vec_zero(dim, tag), v, v2, v12};
        q.t = {t, t2};
        q.domain = f.domain;
        print_values(slope2_sym(f, q), format);
        return 0;
    }
    RingValue t12 = t12s.empty() ? RingValue::zero(tag) : parse_scalar(t12s, tag);
    HyperPoint p = make_hyper(2, {x, v, v2, v12}, {RingValue::one(tag), t, t2, t12}, f.domain);
    print_values(slope2_full(f, p), format);
    return 0;
}

int run_lift(const std::string& expr_text, const std::string& backend_name, double tol,
             const std::string& input_arg) {
    const BackendTag tag = parse_backend(backend_name, tol);
    Json in = load_json(input_arg);
    std::vector<CubicScalar> inputs;
    if (in.is_array())
        for (const auto& item : in) inputs.push_back(cubic_from_json(item, tag));
    else
        inputs.push_back(cubic_from_json(in, tag));
    if (inputs.empty()) throw backend_error("empty lift input");
    MapFn f = MapFn::from_expr(parse_or_die(expr_text, static_cast<int>(inputs.size())));
    auto out = lift_sym(f, inputs, inputs[0].params());
    if (out.size() == 1) {
        std::cout << cubic_to_json(out[0]).dump() << "\n";
    } else {
        Json j = Json::array();
        for (const auto& c : out) j.push_back(cubic_to_json(c));
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int run_check(const std::string& suite, const std::string& backend_name, double tol,
              std::uint64_t samples, std::uint64_t seed, const std::string& format) {
    if (!is_suite_name(suite)) throw backend_error("unknown suite: " + suite);
    SuiteConfig cfg{parse_backend(backend_name, tol), seed, samples};
    auto reports = run_suite(suite, cfg);
    bool all_ok = true;
    for (const auto& r : reports) {
        all_ok = all_ok && r.ok();
        if (format == "json") {
            std::cout << report_to_json(r).dump() << "\n";
        } else if (format == "csv") {
            std::cout << r.law << "," << r.samples << "," << r.failures << "\n";
        } else {
            std::cout << (r.ok() ? "ok   " : "FAIL ") << r.law << "  samples=" << r.samples
                      << " failures=" << r.failures;
            if (!r.ok()) std::cout << "  counterexample: " << r.counterexample;
            std::cout << "\n";
        }
    }
    return all_ok ? 0 : 5;
}

int run_converge(const std::string& expr_text, const std::string& backend_name,
                 const std::string& xs, const std::string& vs, double t0, int halvings) {
    const BackendTag tag = parse_backend(backend_name, 1e-9);
    if (tag.kind != Backend::Float) throw backend_error("converge needs the float backend");
    Vec x = parse_vector(xs, tag);
    Vec v = parse_vector(vs, tag);
    MapFn f = MapFn::from_expr(parse_or_die(expr_text, static_cast<int>(x.size())));
    std::cout << estimate_limit_slope(f, x, v, t0, halvings).csv();
    return 0;
}

int run_split(const std::string& backend_name, double tol, const std::string& input_arg) {
    const BackendTag tag = parse_backend(backend_name, tol);
    CubicScalar a = cubic_from_json(load_json(input_arg), tag);
    for (int k = 1; k <= a.params()->order; ++k)
        if ((a.carrier() & dir_bit(k)) &&
            !try_invert(a.params()->t[static_cast<std::size_t>(k - 1)]))
            throw invert_error("split needs unit parameters on the carrier");
    auto values = cs_anchor_split(a);
    CubicScalar back = cs_anchor_unsplit(values, a.params(), a.carrier());
    if (!cs_eq(back, a, tag.tol)) throw domain_error("anchor round-trip failed");
    Json j;
    Json vals = Json::array();
    for (const auto& v : values) vals.push_back(rv_to_json(v));
    j["values"] = std::move(vals);
    j["roundtrip"] = "ok";
    std::cout << j.dump() << "\n";
    return 0;
}

void emit_error(const std::string& kind, const std::string& message) {
    Json j;
    j["error"] = Json{{"kind", kind}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slope operators, cubic scalar extensions and groupoid law checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string backend = default_backend_name();
    double tol = 1e-9;
    std::string format = "plain";
    app.add_option("--backend,-b", backend, "rational | float | fp:<p>")
        ->envname("LIECALC_BACKEND");
    app.add_option("--tol", tol, "relative tolerance (float backend)");
    app.add_option("--format,-f", format, "json | csv | plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));

    auto* slope_cmd = app.add_subcommand("slope", "evaluate slope operators");
    std::string expr_text, xs, vs = "0", ts = "0", v2s, v12s, t2s, t12s, mode = "full";
    int order = 1;
    slope_cmd->add_option("--expr,-e", expr_text, "expression vector")->required();
    slope_cmd->add_option("-x", xs, "base point (comma separated)")->required();
    slope_cmd->add_option("-v", vs, "direction");
    slope_cmd->add_option("-t", ts, "scalar parameter");
    slope_cmd->add_option("--order", order, "1 or 2")->check(CLI::IsMember({1, 2}));
    slope_cmd->add_option("--mode", mode, "full | sym")->check(CLI::IsMember({"full", "sym"}));
    slope_cmd->add_option("--v2", v2s, "second direction (order 2)");
    slope_cmd->add_option("--v12", v12s, "corner direction (order 2)");
    slope_cmd->add_option("--t2", t2s, "second parameter (order 2)");
    slope_cmd->add_option("--t12", t12s, "corner parameter (order 2, full mode)");

    auto* lift_cmd = app.add_subcommand("lift", "apply a map with cubic-ring arithmetic");
    std::string lift_input;
    lift_cmd->add_option("--expr,-e", expr_text, "expression vector")->required();
    lift_cmd->add_option("--input,-i", lift_input, "cubic scalar JSON (or @file)")->required();

    auto* check_cmd = app.add_subcommand("check", "run a law suite");
    std::string suite;
    std::uint64_t samples = 200, seed = 0;
    check_cmd->add_option("suite", suite, "groupoid|chain|interchange|schwarz|torsor|ring|all")
        ->required();
    check_cmd->add_option("--samples", samples, "samples per law");
    check_cmd->add_option("--seed", seed, "sampler seed");

    auto* conv_cmd = app.add_subcommand("converge", "difference-quotient limit table");
    double t0 = 1.0;
    int halvings = 10;
    conv_cmd->add_option("--expr,-e", expr_text, "expression vector")->required();
    conv_cmd->add_option("-x", xs, "base point")->required();
    conv_cmd->add_option("-v", vs, "direction");
    conv_cmd->add_option("--t0", t0, "starting parameter");
    conv_cmd->add_option("--halvings", halvings, "number of halvings");

    auto* split_cmd = app.add_subcommand("split", "anchor character decomposition");
    std::string split_input;
    split_cmd->add_option("--input,-i", split_input, "cubic scalar JSON (or @file)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (slope_cmd->parsed())
            return run_slope(expr_text, backend, tol, xs, vs, ts, order, mode, v2s, v12s, t2s,
                             t12s, format);
        if (lift_cmd->parsed()) return run_lift(expr_text, backend, tol, lift_input);
        if (check_cmd->parsed()) return run_check(suite, backend, tol, samples, seed, format);
        if (conv_cmd->parsed()) return run_converge(expr_text, backend, xs, vs, t0, halvings);
        if (split_cmd->parsed()) return run_split(backend, tol, split_input);
    } catch (const CliParseError& e) {
        emit_error("parse", e.what());
        return 1;
    } catch (const Json::parse_error& e) {
        emit_error("parse", e.what());
        return 1;
    } catch (const domain_error& e) {
        emit_error("domain", e.what());
        return 2;
    } catch (const invert_error& e) {
        emit_error("invert", e.what());
        return 4;
    } catch (const backend_error& e) {
        emit_error("backend", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 3;
    }
    return 0;
}
