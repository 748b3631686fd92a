#pragma once

#include <variant>
#include <vector>

#include "liecalc/ring.hpp"

namespace liecalc {

/// A testable description of the nonempty set U inside the ambient module.
/// Membership is decidable for every vector of the right dimension.
class DomainSpec {
  public:
    struct FullSpace {};
    struct OpenBall {  // Float backend only
        Vec center;
        RingValue radius;
    };
    struct FiniteComplement {  // exact backends only
        std::vector<Vec> excluded;
    };
    struct HalfSpacePositive {  // Float backend only
        int coord;
    };

    static DomainSpec full_space(int dim);
    static DomainSpec open_ball(Vec center, RingValue radius);
    static DomainSpec finite_complement(int dim, std::vector<Vec> excluded);
    static DomainSpec half_space_positive(int dim, int coord);

    int dim() const { return dim_; }
    bool contains(const Vec& x) const;
    bool is_full_space() const { return std::holds_alternative<FullSpace>(shape_); }

  private:
    int dim_ = 0;
    std::variant<FullSpace, OpenBall, FiniteComplement, HalfSpacePositive> shape_;
};

}  // namespace liecalc
