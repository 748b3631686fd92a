#include "liecalc/finite_groupoid.hpp"

#include <algorithm>

namespace liecalc {

int FiniteGroupoid::compose(int a, int b) const {
    if (!composable(a, b)) throw domain_error("finite groupoid: arrows not composable");
    const int r = comp[static_cast<std::size_t>(a) * arrows.size() + static_cast<std::size_t>(b)];
    if (r < 0) throw domain_error("finite groupoid: missing composite");
    return r;
}

void FiniteGroupoid::validate() const {
    const int n = n_arrows();
    if (static_cast<int>(unit_of_object.size()) != n_objects ||
        static_cast<int>(inverse_of.size()) != n ||
        static_cast<int>(comp.size()) != n * n)
        throw backend_error("finite groupoid: table sizes inconsistent");
    for (int x = 0; x < n_objects; ++x) {
        const int u = unit_of_object[static_cast<std::size_t>(x)];
        if (source(u) != x || target(u) != x) throw domain_error("unit arrow not an endo at x");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int r = comp[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                               static_cast<std::size_t>(b)];
            if (composable(a, b)) {
                if (r < 0) throw domain_error("composable pair without composite");
                if (source(r) != source(b) || target(r) != target(a))
                    throw domain_error("composite has wrong endpoints");
            } else if (r >= 0) {
                throw domain_error("composite defined on non-composable pair");
            }
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (composable(b, c) && composable(a, b) &&
                    compose(compose(a, b), c) != compose(a, compose(b, c)))
                    throw domain_error("associativity fails");
    for (int a = 0; a < n; ++a) {
        if (compose(a, unit_of_object[static_cast<std::size_t>(source(a))]) != a ||
            compose(unit_of_object[static_cast<std::size_t>(target(a))], a) != a)
            throw domain_error("unit law fails");
        const int inv = inverse_of[static_cast<std::size_t>(a)];
        if (source(inv) != target(a) || target(inv) != source(a) ||
            compose(a, inv) != unit_of_object[static_cast<std::size_t>(target(a))] ||
            compose(inv, a) != unit_of_object[static_cast<std::size_t>(source(a))])
            throw domain_error("inverse law fails");
    }
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(int m) {
    FiniteGroupoid g;
    g.n_objects = m;
    auto id_of = [m](int dst, int src) { return dst * m + src; };
    g.arrows.resize(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int y = 0; y < m; ++y)
        for (int x = 0; x < m; ++x) g.arrows[static_cast<std::size_t>(id_of(y, x))] = {x, y};
    g.unit_of_object.resize(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) g.unit_of_object[static_cast<std::size_t>(x)] = id_of(x, x);
    const int n = g.n_arrows();
    g.inverse_of.resize(static_cast<std::size_t>(n));
    for (int y = 0; y < m; ++y)
        for (int x = 0; x < m; ++x)
            g.inverse_of[static_cast<std::size_t>(id_of(y, x))] = id_of(x, y);
    g.comp.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
    // (z,y) * (y,x) = (z,x)
    for (int z = 0; z < m; ++z)
        for (int y = 0; y < m; ++y)
            for (int x = 0; x < m; ++x)
                g.comp[static_cast<std::size_t>(id_of(z, y)) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(id_of(y, x))] = id_of(z, x);
    g.validate();
    return g;
}

ArrowSet rel_compose(const FiniteGroupoid& g, const ArrowSet& s, const ArrowSet& r) {
    ArrowSet out;
    for (int a : s)
        for (int b : r)
            if (g.composable(a, b)) out.insert(g.compose(a, b));
    return out;
}

ArrowSet unit_section(const FiniteGroupoid& g) {
    return ArrowSet(g.unit_of_object.begin(), g.unit_of_object.end());
}

ArrowSet invert_set(const FiniteGroupoid& g, const ArrowSet& s) {
    ArrowSet out;
    for (int a : s) out.insert(g.inverse_of[static_cast<std::size_t>(a)]);
    return out;
}

bool is_bisection(const ArrowSet& s, const FiniteGroupoid& g) {
    std::vector<int> alpha_hits(static_cast<std::size_t>(g.n_objects), 0);
    std::vector<int> beta_hits(static_cast<std::size_t>(g.n_objects), 0);
    for (int a : s) {
        ++alpha_hits[static_cast<std::size_t>(g.source(a))];
        ++beta_hits[static_cast<std::size_t>(g.target(a))];
    }
    return std::all_of(alpha_hits.begin(), alpha_hits.end(), [](int h) { return h == 1; }) &&
           std::all_of(beta_hits.begin(), beta_hits.end(), [](int h) { return h == 1; });
}

std::vector<ArrowSet> all_bisections(const FiniteGroupoid& g) {
    // One arrow per alpha-fiber; backtrack over choices, keep the bisections.
    std::vector<std::vector<int>> by_source(static_cast<std::size_t>(g.n_objects));
    for (int a = 0; a < g.n_arrows(); ++a)
        by_source[static_cast<std::size_t>(g.source(a))].push_back(a);
    std::vector<ArrowSet> out;
    std::vector<int> pick;
    auto rec = [&](auto&& self, int x) -> void {
        if (x == g.n_objects) {
            ArrowSet s(pick.begin(), pick.end());
            if (is_bisection(s, g)) out.push_back(std::move(s));
            return;
        }
        for (int a : by_source[static_cast<std::size_t>(x)]) {
            pick.push_back(a);
            self(self, x + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<int> bisection_to_bijection(const FiniteGroupoid& g, const ArrowSet& s) {
    if (!is_bisection(s, g)) throw domain_error("not a bisection");
    std::vector<int> f(static_cast<std::size_t>(g.n_objects), -1);
    for (int a : s) f[static_cast<std::size_t>(g.source(a))] = g.target(a);
    return f;
}

}  // namespace liecalc
