#pragma once

#include "liecalc/calculus.hpp"
#include "liecalc/finite_groupoid.hpp"
#include "liecalc/laws.hpp"

namespace liecalc {

/// Building blocks for the check suites. Every function is deterministic in
/// (tag, seed, n); failures land in the reports, nothing throws on a law
/// violation.

std::vector<LawReport> groupoid_axioms(std::shared_ptr<const DomainSpec> domain,
                                       const BackendTag& tag, std::uint64_t seed,
                                       std::uint64_t n, const std::string& label);
LawReport anchor_roundtrip(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport anchor_functor(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport rescale_automorphism(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport rescale_composition(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);

std::vector<LawReport> chain_suite(const BackendTag& tag, std::uint64_t seed,
                                   std::uint64_t n_pairs, std::uint64_t n_samples);
LawReport interchange_suite(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);

std::vector<LawReport> schwarz_suite(const BackendTag& tag, std::uint64_t seed,
                                     std::uint64_t n);
std::vector<LawReport> additivity_suite(const BackendTag& tag, std::uint64_t seed,
                                        std::uint64_t n);
LawReport mul_slope_literal(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport full_slope_consistency(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport ad_first_order(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);
LawReport ad_second_order(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);

std::vector<LawReport> torsor_suite(const BackendTag& tag, std::uint64_t seed,
                                    std::uint64_t n);
std::vector<LawReport> ring_suite(const BackendTag& tag, std::uint64_t seed, std::uint64_t n);

struct SuiteConfig {
    BackendTag tag;
    std::uint64_t seed = 0;
    std::uint64_t samples = 200;
};

/// Suite names accepted by the CLI: groupoid, chain, interchange, schwarz,
/// torsor, ring, all.
std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);
std::vector<LawReport> run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace liecalc
