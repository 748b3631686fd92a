#pragma once

#include <memory>
#include <variant>

#include "liecalc/cubic.hpp"
#include "liecalc/domain.hpp"
#include "liecalc/expr.hpp"
#include "liecalc/laws.hpp"

namespace liecalc {

enum class NativeKind { Exp, Sin, Cos, Log };

/// A map between finite-rank modules: either an expression vector (portable
/// across backends) or a componentwise Float-native primitive.
struct MapFn {
    int d_in = 1, d_out = 1;
    std::variant<ExprVec, NativeKind> body;
    std::shared_ptr<const DomainSpec> domain;  // the set U the map lives on

    static MapFn from_expr(ExprVec f, std::shared_ptr<const DomainSpec> domain = nullptr);
    static MapFn from_text(const std::string& text, int arity,
                           std::shared_ptr<const DomainSpec> domain = nullptr);
    static MapFn native(NativeKind kind, int dim,
                        std::shared_ptr<const DomainSpec> domain = nullptr);

    bool is_expr() const { return std::holds_alternative<ExprVec>(body); }
    const ExprVec& expr() const { return std::get<ExprVec>(body); }
    NativeKind native_kind() const { return std::get<NativeKind>(body); }
};

Vec map_eval(const MapFn& f, const Vec& x, const BackendTag& tag);

/// Point of the n-th extended domain: vector components per subset of
/// {1..n} (indexed by mask) and scalar parameters per nonempty subset.
struct HyperPoint {
    int order = 0;
    std::vector<Vec> w;          // size 2^order
    std::vector<RingValue> t;    // size 2^order; entry 0 is fixed to 1
    std::shared_ptr<const DomainSpec> domain;
};

HyperPoint make_hyper(int order, std::vector<Vec> w, std::vector<RingValue> t,
                      std::shared_ptr<const DomainSpec> domain);

/// Point of the symmetric extension: base x, one direction vector per
/// nonempty subset (indexed by mask; entry 0 unused) and t in K^n.
struct SymPoint {
    int order = 0;
    Vec base;
    std::vector<Vec> u;          // size 2^order
    std::vector<RingValue> t;    // size order
    std::shared_ptr<const DomainSpec> domain;
};

/// Membership in U^[n], by the recursive description of the domain.
bool extended_contains(const DomainSpec& u, const HyperPoint& p);
/// Membership in U^[n]_t: every partial-sum evaluation point lies in U.
bool sym_contains(const DomainSpec& u, const SymPoint& q);

/// First-order slope. Unit t: the difference quotient (f(x+tv) - f(x))/t.
/// t = 0: the e1-coefficient of the lift of f at x + e1 v over the dual
/// extension (the directional derivative).
Vec slope1(const MapFn& f, const Vec& x, const Vec& v, const RingValue& t);

/// (f(x), slope1(f, x, v, t)).
std::pair<Vec, Vec> tangent_map_t(const MapFn& f, const RingValue& t, const Vec& x,
                                  const Vec& v);

/// Iterated slope at a HyperPoint of order n <= 4. Expression bodies are
/// evaluated for every parameter vector; Float natives need unit parameters
/// beyond level one.
Vec slope_n_full(const MapFn& f, const HyperPoint& p);
Vec slope2_full(const MapFn& f, const HyperPoint& p);

/// The explicit two-term order-2 formula; defined when t1, t2 and
/// t1 + t2 t12 are units.
Vec slope2_full_closed(const MapFn& f, const HyperPoint& p);

/// Nested difference quotients; every divisor must be a unit (level-one
/// zeros are allowed and take the jet path). The independent route the
/// tower evaluation is checked against.
Vec slope_n_recursive(const MapFn& f, const HyperPoint& p);

/// Four-point second-order slope; t1, t2 must be units.
Vec slope2_sym(const MapFn& f, const SymPoint& q);

/// Scalar extension: f applied coordinatewise with K_t^{C;n}-arithmetic.
/// Expression bodies run on plain cubic arithmetic; Float natives factor
/// through characters on unit directions and jets on zero directions.
std::vector<CubicScalar> lift_sym(const MapFn& f, const std::vector<CubicScalar>& input,
                                  const CubicParamsPtr& params);

/// Second route for all-unit parameters: split the inputs into character
/// points, evaluate f on each, and reassemble. Equal to lift_sym on the
/// overlap; kept separate so the pair can be cross-checked.
std::vector<CubicScalar> lift_via_anchor(const MapFn& f, const std::vector<CubicScalar>& input,
                                         const CubicParamsPtr& params);

/// Lift of a unary native primitive to one cubic scalar (Float backend).
CubicScalar native_lift(ExKind kind, const CubicScalar& a);

struct ConvergenceRow {
    double t = 0;
    std::vector<double> slope;
    double richardson_err = 0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    std::vector<double> limit;  // affine Richardson extrapolation from the last pair
    std::string csv() const;   // header: t,slope_0..slope_{d-1},richardson_err
};

/// Slopes at t = t0 / 2^k for k = 0..halvings on the Float backend.
ConvergenceTable estimate_limit_slope(const MapFn& f, const Vec& x, const Vec& v, double t0,
                                      int halvings);

/// (g o f)_t^1 = g_t^1 o f_t^1 on sampled (x, v, t) including t = 0.
LawReport check_chain_rule(const MapFn& f, const MapFn& g, const BackendTag& tag,
                           std::uint64_t seed, std::uint64_t n_samples);

/// Flip invariance of slope2_sym, the jet flip at t = (0,0), and agreement
/// of the symmetric slope with the full slope at t12 = 0.
std::vector<LawReport> check_schwarz(const MapFn& f, const BackendTag& tag, std::uint64_t seed,
                                     std::uint64_t n_samples);

// Deterministic point samplers used by tests and the law suites.
HyperPoint sample_hyper(Rng& rng, int order, int dim, const BackendTag& tag,
                        std::shared_ptr<const DomainSpec> domain, bool unit_params);
SymPoint sample_sym(Rng& rng, int order, int dim, const BackendTag& tag,
                    std::shared_ptr<const DomainSpec> domain, bool unit_params);

}  // namespace liecalc
