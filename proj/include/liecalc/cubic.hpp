#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "liecalc/ring.hpp"

namespace liecalc {

/// Subsets of the direction set {1..n}, bit k-1 standing for direction k.
using SubsetMask = std::uint32_t;

inline int mask_size(SubsetMask m) { return std::popcount(m); }
inline SubsetMask dir_bit(int k) { return SubsetMask{1} << (k - 1); }

/// Deposits the low bits of `rank` into the set positions of `carrier`,
/// lowest direction first. Inverse of mask_rank.
SubsetMask mask_expand(SubsetMask carrier, std::uint32_t rank);
std::uint32_t mask_rank(SubsetMask carrier, SubsetMask subset);

/// Order n with its parameter vector t in K^n.  t_A is computed on demand.
struct CubicParams {
    int order = 0;  // 0 <= n <= 16
    std::vector<RingValue> t;
    BackendTag backend;

    static std::shared_ptr<const CubicParams> make(int order, std::vector<RingValue> t,
                                                   BackendTag backend);
    RingValue t_of(SubsetMask a) const;  // t_A, with t_empty = 1
    bool same(const CubicParams& o) const;
};

using CubicParamsPtr = std::shared_ptr<const CubicParams>;

/// Element of the vertex ring with basis (e_A) for A inside the carrier set
/// and relations e_A * e_B = t_{A cap B} e_{A cup B}.
class CubicScalar {
  public:
    CubicScalar() = default;

    static CubicScalar constant(CubicParamsPtr params, SubsetMask carrier,
                                const RingValue& c);
    static CubicScalar zero(CubicParamsPtr params, SubsetMask carrier);
    static CubicScalar one(CubicParamsPtr params, SubsetMask carrier);
    static CubicScalar basis(CubicParamsPtr params, SubsetMask carrier, SubsetMask a);
    /// From coefficients listed in rank order (one per subset of carrier).
    static CubicScalar from_coeffs(CubicParamsPtr params, SubsetMask carrier,
                                   std::vector<RingValue> coeffs);

    const CubicParamsPtr& params() const { return params_; }
    SubsetMask carrier() const { return carrier_; }
    int dim() const { return 1 << mask_size(carrier_); }

    const RingValue& coeff(SubsetMask a) const;
    CubicScalar with_coeff(SubsetMask a, const RingValue& v) const;
    const std::vector<RingValue>& raw() const { return coeffs_; }

    CubicScalar operator+(const CubicScalar& o) const;
    CubicScalar operator-(const CubicScalar& o) const;
    CubicScalar operator*(const CubicScalar& o) const;
    CubicScalar operator-() const;

    std::string str() const;

  private:
    CubicParamsPtr params_;
    SubsetMask carrier_ = 0;
    std::vector<RingValue> coeffs_;  // dense, indexed by mask_rank
};

bool cs_eq(const CubicScalar& a, const CubicScalar& b, double tol = 1e-9);

/// Edge source: drop every coefficient whose subset contains direction k.
CubicScalar cs_source(const CubicScalar& a, int k);
/// Edge target: v'_A = v_A + t_k v_{A u {k}} on the shrunk carrier.
CubicScalar cs_target(const CubicScalar& a, int k);
/// Unit section of the edge in direction k: pad with zero coefficients.
CubicScalar cs_unit_embed(const CubicScalar& a, int k);

/// Relabel directions by a permutation sigma of {1..n} (sigma[k-1] = image
/// of k); coefficients move to the renamed subsets and t is permuted along.
CubicScalar cs_flip(const CubicScalar& a, const std::vector<int>& sigma);

/// e_k -> s_k e_k, t_k -> t_k / s_k; an isomorphism onto the rescaled ring.
CubicScalar cs_rescale(const CubicScalar& a, const std::vector<RingValue>& s);

/// chi_S(a) = sum over A inside S of t_A v_A, one value per S inside the
/// carrier (rank order). Each chi_S is a ring morphism for every t.
std::vector<RingValue> cs_anchor_split(const CubicScalar& a);

/// Moebius inverse of the character vector; needs every carrier t_k a unit.
CubicScalar cs_anchor_unsplit(const std::vector<RingValue>& values, CubicParamsPtr params,
                              SubsetMask carrier);

/// Characters taken only along the directions in `dirs` (a submask of the
/// carrier); components live on the remaining carrier.
std::vector<CubicScalar> cs_partial_split(const CubicScalar& a, SubsetMask dirs);
CubicScalar cs_partial_unsplit(const std::vector<CubicScalar>& comps, CubicParamsPtr params,
                               SubsetMask carrier, SubsetMask dirs);

/// Inverse when one exists: every character constant term must be a unit;
/// nilpotent parts are handled by a geometric series.
std::optional<CubicScalar> cs_try_invert(const CubicScalar& a);

/// Basis subsets {A : B included in A included in C} of the core ideal.
std::vector<SubsetMask> core_ideal_basis(SubsetMask b, SubsetMask c);

/// The hypercube of vertex rings for fixed params, with its edges. Mostly a
/// navigation aid for the law suites.
struct CubicRingDescriptor {
    CubicParamsPtr params;

    struct Edge {
        SubsetMask low, high;  // high = low u {dir}
        int dir;
    };
    std::vector<SubsetMask> vertices() const;
    std::vector<Edge> edges() const;
    struct Face {
        SubsetMask base;  // D; A = D u {j,k}
        int j, k;
    };
    std::vector<Face> faces() const;
};

/// Deterministic random element with coefficients from sample_ring.
CubicScalar sample_cubic(Rng& rng, CubicParamsPtr params, SubsetMask carrier);

/// Subset names for the serialized form: "∅", "1", "12", ...
std::string subset_name(SubsetMask a);
std::optional<SubsetMask> subset_from_name(const std::string& name);

}  // namespace liecalc
