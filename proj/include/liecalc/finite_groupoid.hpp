#pragma once

#include <set>
#include <string>
#include <vector>

#include "liecalc/errors.hpp"

namespace liecalc {

/// Explicit-table groupoid on small object/arrow sets. All axioms are
/// validated on construction.
struct FiniteGroupoid {
    int n_objects = 0;
    struct ArrowRec {
        int src = 0, dst = 0;
    };
    std::vector<ArrowRec> arrows;
    std::vector<int> unit_of_object;   // object -> arrow
    std::vector<int> inverse_of;       // arrow -> arrow
    std::vector<int> comp;             // comp[a * n_arrows + b] = a*b, or -1

    int n_arrows() const { return static_cast<int>(arrows.size()); }
    int source(int a) const { return arrows[static_cast<std::size_t>(a)].src; }
    int target(int a) const { return arrows[static_cast<std::size_t>(a)].dst; }
    bool composable(int a, int b) const { return source(a) == target(b); }
    int compose(int a, int b) const;

    void validate() const;

    /// PG(M) on m objects: arrows are ordered pairs (dst, src).
    static FiniteGroupoid pair_groupoid(int m);
};

using ArrowSet = std::set<int>;

/// S * R = { s * r | s in S, r in R, alpha(s) = beta(r) }.
ArrowSet rel_compose(const FiniteGroupoid& g, const ArrowSet& s, const ArrowSet& r);

ArrowSet unit_section(const FiniteGroupoid& g);
ArrowSet invert_set(const FiniteGroupoid& g, const ArrowSet& s);

/// True iff S meets every alpha-fiber exactly once and every beta-fiber
/// exactly once.
bool is_bisection(const ArrowSet& s, const FiniteGroupoid& g);

std::vector<ArrowSet> all_bisections(const FiniteGroupoid& g);

/// The bijection of objects induced by a bisection: x -> beta(S cap alpha^-1(x)).
std::vector<int> bisection_to_bijection(const FiniteGroupoid& g, const ArrowSet& s);

}  // namespace liecalc
