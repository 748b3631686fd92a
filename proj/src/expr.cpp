#include "liecalc/expr.hpp"

#include <cctype>
#include <cmath>

namespace liecalc {

namespace {

ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

bool is_const(const ExprPtr& e, long v) {
    return e->kind == ExKind::Const && e->cval == v;
}

}  // namespace

ExprPtr ex_var(int index) {
    Expr e;
    e.kind = ExKind::Var;
    e.var = index;
    return node(std::move(e));
}

ExprPtr ex_const(const mpq_class& q) {
    Expr e;
    e.kind = ExKind::Const;
    e.cval = q;
    e.cval.canonicalize();
    return node(std::move(e));
}

ExprPtr ex_const(long num, long den) {
    return ex_const(mpq_class(num, den));
}

ExprPtr ex_neg(ExprPtr x) {
    Expr e;
    e.kind = ExKind::Neg;
    e.a = std::move(x);
    return node(std::move(e));
}

namespace {
ExprPtr binary(ExKind k, ExprPtr l, ExprPtr r) {
    Expr e;
    e.kind = k;
    e.a = std::move(l);
    e.b = std::move(r);
    return node(std::move(e));
}
}  // namespace

ExprPtr ex_add(ExprPtr l, ExprPtr r) { return binary(ExKind::Add, std::move(l), std::move(r)); }
ExprPtr ex_sub(ExprPtr l, ExprPtr r) { return binary(ExKind::Sub, std::move(l), std::move(r)); }
ExprPtr ex_mul(ExprPtr l, ExprPtr r) { return binary(ExKind::Mul, std::move(l), std::move(r)); }
ExprPtr ex_div(ExprPtr l, ExprPtr r) { return binary(ExKind::Div, std::move(l), std::move(r)); }

ExprPtr ex_pow(ExprPtr x, long exponent) {
    if (exponent < 0) throw backend_error("negative exponent");
    Expr e;
    e.kind = ExKind::Pow;
    e.a = std::move(x);
    e.exponent = exponent;
    return node(std::move(e));
}

ExprPtr ex_native(ExKind kind, ExprPtr x) {
    switch (kind) {
        case ExKind::Exp:
        case ExKind::Sin:
        case ExKind::Cos:
        case ExKind::Log: {
            Expr e;
            e.kind = kind;
            e.a = std::move(x);
            return node(std::move(e));
        }
        default:
            throw backend_error("not a native primitive");
    }
}

ExprPtr mk_add(ExprPtr l, ExprPtr r) {
    if (is_const(l, 0)) return r;
    if (is_const(r, 0)) return l;
    if (l->kind == ExKind::Const && r->kind == ExKind::Const)
        return ex_const(mpq_class(l->cval + r->cval));
    return ex_add(std::move(l), std::move(r));
}

ExprPtr mk_sub(ExprPtr l, ExprPtr r) {
    if (is_const(r, 0)) return l;
    if (l->kind == ExKind::Const && r->kind == ExKind::Const)
        return ex_const(mpq_class(l->cval - r->cval));
    if (is_const(l, 0)) return mk_neg(std::move(r));
    return ex_sub(std::move(l), std::move(r));
}

ExprPtr mk_mul(ExprPtr l, ExprPtr r) {
    if (is_const(l, 0) || is_const(r, 0)) return ex_const(0);
    if (is_const(l, 1)) return r;
    if (is_const(r, 1)) return l;
    if (l->kind == ExKind::Const && r->kind == ExKind::Const)
        return ex_const(mpq_class(l->cval * r->cval));
    return ex_mul(std::move(l), std::move(r));
}

ExprPtr mk_div(ExprPtr l, ExprPtr r) {
    if (is_const(r, 1)) return l;
    if (is_const(l, 0) && r->kind == ExKind::Const && r->cval != 0) return ex_const(0);
    if (l->kind == ExKind::Const && r->kind == ExKind::Const && r->cval != 0)
        return ex_const(mpq_class(l->cval / r->cval));
    return ex_div(std::move(l), std::move(r));
}

ExprPtr mk_neg(ExprPtr x) {
    if (x->kind == ExKind::Const) return ex_const(mpq_class(-x->cval));
    if (x->kind == ExKind::Neg) return x->a;
    return ex_neg(std::move(x));
}

ExprPtr mk_pow(ExprPtr x, long exponent) {
    if (exponent == 0) return ex_const(1);
    if (exponent == 1) return x;
    if (x->kind == ExKind::Const) {
        mpq_class acc(1);
        for (long i = 0; i < exponent; ++i) acc *= x->cval;
        return ex_const(acc);
    }
    return ex_pow(std::move(x), exponent);
}

// --- parser ---------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int arity;
    ParseError err;
    bool failed = false;

    explicit Parser(const std::string& text, int arity_) : s(text), arity(arity_) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < s.size() && s[pos] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos;
            return true;
        }
        return false;
    }
    ExprPtr fail(std::size_t at, const std::string& expected) {
        if (!failed) {
            failed = true;
            err = {at, expected};
        }
        return nullptr;
    }

    std::optional<long> integer_literal() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            return std::nullopt;
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            if (v > 100000000) {
                fail(pos, "smaller integer literal");
                return std::nullopt;
            }
            v = v * 10 + (s[pos] - '0');
            ++pos;
        }
        return v;
    }

    std::string ident() {
        skip_ws();
        std::string out;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])))) {
            out += s[pos];
            ++pos;
        }
        return out;
    }

    ExprPtr expr() {
        ExprPtr l = term();
        if (!l) return nullptr;
        for (;;) {
            if (eat('+')) {
                ExprPtr r = term();
                if (!r) return nullptr;
                l = ex_add(std::move(l), std::move(r));
            } else if (eat('-')) {
                ExprPtr r = term();
                if (!r) return nullptr;
                l = ex_sub(std::move(l), std::move(r));
            } else {
                return l;
            }
        }
    }

    ExprPtr term() {
        ExprPtr l = unary();
        if (!l) return nullptr;
        for (;;) {
            if (eat('*')) {
                ExprPtr r = unary();
                if (!r) return nullptr;
                l = ex_mul(std::move(l), std::move(r));
            } else if (eat('/')) {
                ExprPtr r = unary();
                if (!r) return nullptr;
                l = ex_div(std::move(l), std::move(r));
            } else {
                return l;
            }
        }
    }

    ExprPtr unary() {
        if (eat('-')) {
            ExprPtr x = unary();
            if (!x) return nullptr;
            return ex_neg(std::move(x));
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (!base) return nullptr;
        if (!eat('^')) return base;
        auto e = exponent_spec();
        if (!e) return nullptr;
        return ex_pow(std::move(base), *e);
    }

    // Right-associative chain of non-negative integer exponents; a
    // parenthesized exponent must fold to a non-negative integer constant.
    std::optional<long> exponent_spec() {
        skip_ws();
        const std::size_t at = pos;
        std::optional<long> head;
        if (eat('(')) {
            ExprPtr inner = expr();
            if (!inner) return std::nullopt;
            if (!eat(')')) {
                fail(pos, "')'");
                return std::nullopt;
            }
            ExprPtr folded = fold_const(inner);
            if (!folded || folded->kind != ExKind::Const || folded->cval.get_den() != 1 ||
                folded->cval < 0) {
                fail(at, "non-negative integer exponent");
                return std::nullopt;
            }
            if (!folded->cval.get_num().fits_slong_p()) {
                fail(at, "smaller exponent");
                return std::nullopt;
            }
            head = folded->cval.get_num().get_si();
        } else {
            head = integer_literal();
            if (!head) {
                fail(pos, "non-negative integer exponent");
                return std::nullopt;
            }
        }
        if (eat('^')) {
            auto tail = exponent_spec();
            if (!tail) return std::nullopt;
            if (*tail > 64 || *head > 64) {
                fail(at, "exponent tower too large");
                return std::nullopt;
            }
            long acc = 1;
            for (long i = 0; i < *tail; ++i) {
                acc *= *head;
                if (acc > 1000000000L) {
                    fail(at, "exponent tower too large");
                    return std::nullopt;
                }
            }
            return acc;
        }
        return head;
    }

    static ExprPtr fold_const(const ExprPtr& e) {
        switch (e->kind) {
            case ExKind::Const:
                return e;
            case ExKind::Neg: {
                ExprPtr x = fold_const(e->a);
                if (x && x->kind == ExKind::Const) return ex_const(mpq_class(-x->cval));
                return nullptr;
            }
            case ExKind::Add:
            case ExKind::Sub:
            case ExKind::Mul:
            case ExKind::Div: {
                ExprPtr l = fold_const(e->a), r = fold_const(e->b);
                if (!l || !r || l->kind != ExKind::Const || r->kind != ExKind::Const)
                    return nullptr;
                switch (e->kind) {
                    case ExKind::Add: return ex_const(mpq_class(l->cval + r->cval));
                    case ExKind::Sub: return ex_const(mpq_class(l->cval - r->cval));
                    case ExKind::Mul: return ex_const(mpq_class(l->cval * r->cval));
                    default:
                        if (r->cval == 0) return nullptr;
                        return ex_const(mpq_class(l->cval / r->cval));
                }
            }
            default:
                return nullptr;
        }
    }

    ExprPtr atom() {
        skip_ws();
        const std::size_t at = pos;
        if (eat('(')) {
            ExprPtr inner = expr();
            if (!inner) return nullptr;
            if (!eat(')')) return fail(pos, "')'");
            return inner;
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            auto v = integer_literal();
            if (!v) return nullptr;
            return ex_const(*v);
        }
        if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) {
            std::string name = ident();
            if (name.size() >= 2 && name[0] == 'x' &&
                std::all_of(name.begin() + 1, name.end(),
                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
                const long idx = std::stol(name.substr(1));
                if (idx < 1 || idx > arity)
                    return fail(at, "variable index in 1.." + std::to_string(arity));
                return ex_var(static_cast<int>(idx - 1));
            }
            ExKind k;
            if (name == "exp") k = ExKind::Exp;
            else if (name == "sin") k = ExKind::Sin;
            else if (name == "cos") k = ExKind::Cos;
            else if (name == "log") k = ExKind::Log;
            else return fail(at, "variable x1..x" + std::to_string(arity) + " or function name");
            if (!eat('(')) return fail(pos, "'(' after function name");
            ExprPtr inner = expr();
            if (!inner) return nullptr;
            if (!eat(')')) return fail(pos, "')'");
            return ex_native(k, std::move(inner));
        }
        return fail(at, "atom");
    }
};

}  // namespace

std::variant<ExprVec, ParseError> parse(const std::string& text, int arity) {
    Parser p(text, arity);
    ExprVec out;
    out.arity = arity;
    for (;;) {
        ExprPtr e = p.expr();
        if (!e) return p.err;
        out.comps.push_back(std::move(e));
        if (!p.eat(';')) break;
    }
    p.skip_ws();
    if (p.pos != p.s.size()) return ParseError{p.pos, "operator or end of input"};
    return out;
}

// --- printer ----------------------------------------------------------------

namespace {

int precedence(const Expr& e) {
    switch (e.kind) {
        case ExKind::Add:
        case ExKind::Sub: return 1;
        case ExKind::Mul:
        case ExKind::Div: return 2;
        case ExKind::Neg: return 3;
        case ExKind::Pow: return 4;
        default: return 5;
    }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& child, int min_prec, std::string& out) {
    if (precedence(child) < min_prec) {
        out += '(';
        print(child, out);
        out += ')';
    } else {
        print(child, out);
    }
}

void print(const Expr& e, std::string& out) {
    switch (e.kind) {
        case ExKind::Var:
            out += "x" + std::to_string(e.var + 1);
            return;
        case ExKind::Const: {
            if (e.cval < 0) {
                out += '-';
                mpq_class q(-e.cval);
                out += q.get_str();
            } else {
                out += e.cval.get_str();
            }
            return;
        }
        case ExKind::Add:
            print_child(*e.a, 1, out);
            out += '+';
            print_child(*e.b, 2, out);
            return;
        case ExKind::Sub:
            print_child(*e.a, 1, out);
            out += '-';
            print_child(*e.b, 2, out);
            return;
        case ExKind::Mul:
            print_child(*e.a, 2, out);
            out += '*';
            print_child(*e.b, 3, out);
            return;
        case ExKind::Div:
            print_child(*e.a, 2, out);
            out += '/';
            print_child(*e.b, 3, out);
            return;
        case ExKind::Neg:
            out += '-';
            print_child(*e.a, 3, out);
            return;
        case ExKind::Pow:
            print_child(*e.a, 5, out);
            out += '^' + std::to_string(e.exponent);
            return;
        case ExKind::Exp: out += "exp("; break;
        case ExKind::Sin: out += "sin("; break;
        case ExKind::Cos: out += "cos("; break;
        case ExKind::Log: out += "log("; break;
    }
    print(*e.a, out);
    out += ')';
}

}  // namespace

std::string pretty(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

std::string pretty(const ExprVec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.comps.size(); ++i) {
        if (i) out += "; ";
        out += pretty(*v.comps[i]);
    }
    return out;
}

std::variant<std::string, ParseError> canonical(const std::string& text, int arity) {
    auto r = parse(text, arity);
    if (auto* pe = std::get_if<ParseError>(&r)) return *pe;
    return pretty(std::get<ExprVec>(r));
}

bool expr_equal(const Expr& x, const Expr& y) {
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case ExKind::Var: return x.var == y.var;
        case ExKind::Const: return x.cval == y.cval;
        case ExKind::Pow: return x.exponent == y.exponent && expr_equal(*x.a, *y.a);
        case ExKind::Neg:
        case ExKind::Exp:
        case ExKind::Sin:
        case ExKind::Cos:
        case ExKind::Log: return expr_equal(*x.a, *y.a);
        default: return expr_equal(*x.a, *y.a) && expr_equal(*x.b, *y.b);
    }
}

bool uses_div(const Expr& e) {
    if (e.kind == ExKind::Div) return true;
    if (e.a && uses_div(*e.a)) return true;
    return e.b && uses_div(*e.b);
}

bool uses_native(const Expr& e) {
    switch (e.kind) {
        case ExKind::Exp:
        case ExKind::Sin:
        case ExKind::Cos:
        case ExKind::Log: return true;
        default: break;
    }
    if (e.a && uses_native(*e.a)) return true;
    return e.b && uses_native(*e.b);
}

ExprPtr diff_symbolic(const ExprPtr& e, int var) {
    switch (e->kind) {
        case ExKind::Var: return ex_const(e->var == var ? 1 : 0);
        case ExKind::Const: return ex_const(0);
        case ExKind::Neg: return mk_neg(diff_symbolic(e->a, var));
        case ExKind::Add: return mk_add(diff_symbolic(e->a, var), diff_symbolic(e->b, var));
        case ExKind::Sub: return mk_sub(diff_symbolic(e->a, var), diff_symbolic(e->b, var));
        case ExKind::Mul:
            return mk_add(mk_mul(diff_symbolic(e->a, var), e->b),
                          mk_mul(e->a, diff_symbolic(e->b, var)));
        case ExKind::Div:
            // (a/b)' = (a'b - ab') / b^2
            return mk_div(mk_sub(mk_mul(diff_symbolic(e->a, var), e->b),
                                 mk_mul(e->a, diff_symbolic(e->b, var))),
                          mk_pow(e->b, 2));
        case ExKind::Pow:
            if (e->exponent == 0) return ex_const(0);
            return mk_mul(mk_mul(ex_const(e->exponent), mk_pow(e->a, e->exponent - 1)),
                          diff_symbolic(e->a, var));
        case ExKind::Exp: return mk_mul(ex_native(ExKind::Exp, e->a), diff_symbolic(e->a, var));
        case ExKind::Sin: return mk_mul(ex_native(ExKind::Cos, e->a), diff_symbolic(e->a, var));
        case ExKind::Cos:
            return mk_neg(mk_mul(ex_native(ExKind::Sin, e->a), diff_symbolic(e->a, var)));
        case ExKind::Log: return mk_div(diff_symbolic(e->a, var), e->a);
    }
    throw backend_error("unreachable");
}

ExprPtr substitute(const ExprPtr& e, const std::vector<ExprPtr>& args) {
    switch (e->kind) {
        case ExKind::Var:
            if (e->var < 0 || static_cast<std::size_t>(e->var) >= args.size())
                throw backend_error("substitution index out of range");
            return args[static_cast<std::size_t>(e->var)];
        case ExKind::Const: return e;
        case ExKind::Neg: return ex_neg(substitute(e->a, args));
        case ExKind::Add: return ex_add(substitute(e->a, args), substitute(e->b, args));
        case ExKind::Sub: return ex_sub(substitute(e->a, args), substitute(e->b, args));
        case ExKind::Mul: return ex_mul(substitute(e->a, args), substitute(e->b, args));
        case ExKind::Div: return ex_div(substitute(e->a, args), substitute(e->b, args));
        case ExKind::Pow: return ex_pow(substitute(e->a, args), e->exponent);
        default: return ex_native(e->kind, substitute(e->a, args));
    }
}

ExprVec substitute(const ExprVec& outer, const ExprVec& inner) {
    if (outer.arity != static_cast<int>(inner.comps.size()))
        throw backend_error("composition arity mismatch");
    ExprVec out;
    out.arity = inner.arity;
    for (const auto& c : outer.comps) out.comps.push_back(substitute(c, inner.comps));
    return out;
}

RingValue ScalarOps::invert(const RingValue& a) const {
    auto r = try_invert(a);
    if (!r) throw invert_error("division by a non-unit");
    return *r;
}

RingValue ScalarOps::native(ExKind kind, const RingValue& x) const {
    if (tag.kind != Backend::Float)
        throw backend_error("native primitive on an exact backend");
    switch (kind) {
        case ExKind::Exp: return RingValue::floating(std::exp(x.flt()));
        case ExKind::Sin: return RingValue::floating(std::sin(x.flt()));
        case ExKind::Cos: return RingValue::floating(std::cos(x.flt()));
        case ExKind::Log:
            if (!(x.flt() > 0.0)) throw domain_error("log of a non-positive value");
            return RingValue::floating(std::log(x.flt()));
        default: throw backend_error("not a native primitive");
    }
}

RingValue eval_scalar(const Expr& e, const Vec& env, const BackendTag& tag) {
    return eval_expr<RingValue>(e, std::span<const RingValue>(env.data(), env.size()),
                                ScalarOps{tag});
}

Vec eval_scalar(const ExprVec& f, const Vec& env, const BackendTag& tag) {
    if (static_cast<int>(env.size()) != f.arity) throw backend_error("arity mismatch");
    Vec out;
    out.reserve(f.comps.size());
    for (const auto& c : f.comps) out.push_back(eval_scalar(*c, env, tag));
    return out;
}

ExprPtr sample_bounded_poly(Rng& rng, int arity, int max_degree) {
    ExprPtr acc = ex_const(static_cast<long>(rng.below(7)) - 3);
    const int terms = 1 + static_cast<int>(rng.below(4));
    for (int t = 0; t < terms; ++t) {
        const int degree = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_degree)));
        ExprPtr mono = ex_const(static_cast<long>(rng.below(9)) - 4);
        for (int j = 0; j < degree; ++j)
            mono = ex_mul(std::move(mono),
                          ex_var(static_cast<int>(rng.below(static_cast<std::uint64_t>(arity)))));
        acc = ex_add(std::move(acc), std::move(mono));
    }
    return acc;
}

ExprPtr sample_poly_expr(Rng& rng, int arity, int depth, long max_pow) {
    if (depth <= 0 || rng.below(5) == 0) {
        if (rng.below(3) == 0) {
            long num = static_cast<long>(rng.below(9)) - 4;
            return ex_const(num);
        }
        return ex_var(static_cast<int>(rng.below(static_cast<std::uint64_t>(arity))));
    }
    switch (rng.below(5)) {
        case 0: return ex_add(sample_poly_expr(rng, arity, depth - 1, max_pow),
                              sample_poly_expr(rng, arity, depth - 1, max_pow));
        case 1: return ex_sub(sample_poly_expr(rng, arity, depth - 1, max_pow),
                              sample_poly_expr(rng, arity, depth - 1, max_pow));
        case 2: return ex_mul(sample_poly_expr(rng, arity, depth - 1, max_pow),
                              sample_poly_expr(rng, arity, depth - 1, max_pow));
        case 3: return ex_neg(sample_poly_expr(rng, arity, depth - 1, max_pow));
        default:
            return ex_pow(sample_poly_expr(rng, arity, depth - 1, max_pow),
                          static_cast<long>(rng.below(static_cast<std::uint64_t>(max_pow))) + 1);
    }
}

}  // namespace liecalc
