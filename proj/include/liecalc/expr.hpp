#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "liecalc/errors.hpp"
#include "liecalc/ring.hpp"

namespace liecalc {

enum class ExKind { Var, Const, Neg, Add, Sub, Mul, Div, Pow, Exp, Sin, Cos, Log };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST node for maps between finite-rank modules. Exp/Sin/Cos/Log
/// are Float-only primitives.
struct Expr {
    ExKind kind = ExKind::Const;
    int var = 0;          // Var: 0-based index
    mpq_class cval;       // Const
    long exponent = 0;    // Pow: exponent >= 0
    ExprPtr a, b;
};

ExprPtr ex_var(int index);
ExprPtr ex_const(const mpq_class& q);
ExprPtr ex_const(long num, long den = 1);
ExprPtr ex_neg(ExprPtr x);
ExprPtr ex_add(ExprPtr l, ExprPtr r);
ExprPtr ex_sub(ExprPtr l, ExprPtr r);
ExprPtr ex_mul(ExprPtr l, ExprPtr r);
ExprPtr ex_div(ExprPtr l, ExprPtr r);
ExprPtr ex_pow(ExprPtr x, long exponent);
ExprPtr ex_native(ExKind kind, ExprPtr x);

/// Folding constructors; used by diff_symbolic to keep derivatives small.
ExprPtr mk_add(ExprPtr l, ExprPtr r);
ExprPtr mk_sub(ExprPtr l, ExprPtr r);
ExprPtr mk_mul(ExprPtr l, ExprPtr r);
ExprPtr mk_div(ExprPtr l, ExprPtr r);
ExprPtr mk_neg(ExprPtr x);
ExprPtr mk_pow(ExprPtr x, long exponent);

/// One Expr per output coordinate.
struct ExprVec {
    int arity = 0;
    std::vector<ExprPtr> comps;
};

struct ParseError {
    std::size_t offset = 0;
    std::string expected;
};

/// Grammar, loosest to tightest: additive < multiplicative < unary minus
/// < power (right-assoc, non-negative integer exponents) < atoms
/// (x1..xd, integer literals, func(expr), parentheses). Components are
/// separated by ';'. Whitespace is ignored.
std::variant<ExprVec, ParseError> parse(const std::string& text, int arity);

std::string pretty(const Expr& e);
std::string pretty(const ExprVec& v);

/// pretty . parse; idempotent.
std::variant<std::string, ParseError> canonical(const std::string& text, int arity);

bool expr_equal(const Expr& x, const Expr& y);
bool uses_div(const Expr& e);
bool uses_native(const Expr& e);

/// d e / d x_var with the usual rules; an independent oracle for the slope
/// operators, cross-checked in tests rather than assumed.
ExprPtr diff_symbolic(const ExprPtr& e, int var);

/// Replace Var(i) by args[i]; how composition g o f is formed.
ExprPtr substitute(const ExprPtr& e, const std::vector<ExprPtr>& args);
ExprVec substitute(const ExprVec& outer, const ExprVec& inner);

/// Ring-generic evaluation: Ops supplies the arithmetic of the carrier R.
template <class R, class Ops>
R eval_expr(const Expr& e, std::span<const R> env, const Ops& ops) {
    switch (e.kind) {
        case ExKind::Var:
            if (e.var < 0 || static_cast<std::size_t>(e.var) >= env.size())
                throw backend_error("variable index out of range");
            return env[static_cast<std::size_t>(e.var)];
        case ExKind::Const:
            return ops.constant(e.cval);
        case ExKind::Neg:
            return ops.neg(eval_expr(*e.a, env, ops));
        case ExKind::Add:
            return ops.add(eval_expr(*e.a, env, ops), eval_expr(*e.b, env, ops));
        case ExKind::Sub:
            return ops.sub(eval_expr(*e.a, env, ops), eval_expr(*e.b, env, ops));
        case ExKind::Mul:
            return ops.mul(eval_expr(*e.a, env, ops), eval_expr(*e.b, env, ops));
        case ExKind::Div: {
            R num = eval_expr(*e.a, env, ops);
            R den = eval_expr(*e.b, env, ops);
            return ops.mul(std::move(num), ops.invert(den));
        }
        case ExKind::Pow: {
            R base = eval_expr(*e.a, env, ops);
            R acc = ops.constant(mpq_class(1));
            long k = e.exponent;
            while (k > 0) {
                if (k & 1) acc = ops.mul(acc, base);
                k >>= 1;
                if (k) base = ops.mul(base, base);
            }
            return acc;
        }
        default:
            return ops.native(e.kind, eval_expr(*e.a, env, ops));
    }
}

/// Plain backend arithmetic on RingValue.
struct ScalarOps {
    BackendTag tag;
    RingValue constant(const mpq_class& q) const { return RingValue::from_mpq(q, tag); }
    RingValue add(const RingValue& a, const RingValue& b) const { return a + b; }
    RingValue sub(const RingValue& a, const RingValue& b) const { return a - b; }
    RingValue mul(const RingValue& a, const RingValue& b) const { return a * b; }
    RingValue neg(const RingValue& a) const { return -a; }
    RingValue invert(const RingValue& a) const;
    RingValue native(ExKind kind, const RingValue& x) const;
};

RingValue eval_scalar(const Expr& e, const Vec& env, const BackendTag& tag);
Vec eval_scalar(const ExprVec& f, const Vec& env, const BackendTag& tag);

/// Deterministic Div-free polynomial generator for the law suites.
ExprPtr sample_poly_expr(Rng& rng, int arity, int depth, long max_pow = 4);

/// Sum of a few monomials with total degree bounded by max_degree.
ExprPtr sample_bounded_poly(Rng& rng, int arity, int max_degree);

}  // namespace liecalc
