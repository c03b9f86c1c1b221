#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isotope/classify.hpp"

namespace isotope {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // counterexample or summary statistics
};

struct VerifyOptions {
    int p = 2, m = 1, n = 3;
    std::uint64_t seed = 1;
    long long samples = 1000;
    bool exhaustive = true;  // level: exhaustive | random
};

// Field / Galois layer ------------------------------------------------------
CheckResult check_field_axioms(const CyclicExtension& ext, std::uint64_t seed);
CheckResult check_encoding_roundtrip(const CyclicExtension& ext);
CheckResult check_frobenius(const CyclicExtension& ext);
CheckResult check_norm_trace(const CyclicExtension& ext, std::uint64_t seed);
CheckResult check_hilbert90(const CyclicExtension& ext);
CheckResult check_representatives(const CyclicExtension& ext);
CheckResult check_scale_to_M(const CyclicExtension& ext);
CheckResult check_rep_scaling_uniqueness(const CyclicExtension& ext);

// Twisted operators ---------------------------------------------------------
CheckResult check_determinant_identity(const CyclicExtension& ext, long long samples,
                                       std::uint64_t seed);
CheckResult check_closed_form_norm(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed);
CheckResult check_matrix_roundtrip(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed);
CheckResult check_compose(const CyclicExtension& ext, long long samples, std::uint64_t seed);
CheckResult check_inverse(const CyclicExtension& ext, long long samples, std::uint64_t seed);
CheckResult check_transform_invertibility(const CyclicExtension& ext, long long samples,
                                std::uint64_t seed);

// Algebra layer -------------------------------------------------------------
CheckResult check_isotope_identities(const CyclicExtension& ext, long long samples,
                                     std::uint64_t seed);
CheckResult check_jordan_isotopes(const CyclicExtension& ext, long long samples,
                                  std::uint64_t seed);
CheckResult check_kaplansky(const CyclicExtension& ext, long long samples, std::uint64_t seed);
CheckResult check_heart_uniqueness(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed);
CheckResult check_division_closure(const CyclicExtension& ext, long long samples,
                                   std::uint64_t seed);

// Classification ------------------------------------------------------------
CheckResult check_canonical_stability(const CyclicExtension& ext, long long samples,
                                      std::uint64_t seed);
CheckResult check_type_emptiness_q2(const CyclicExtension& ext);
CheckResult check_type_soundness(const CyclicExtension& ext);
CheckResult check_oracle_equivalence(const CyclicExtension& ext, long long samples,
                                     std::uint64_t seed);
CheckResult check_cubic_cases_agreement(const CyclicExtension& ext, long long samples,
                                        std::uint64_t seed);
/// Directed generator: same-type canonical pairs for every cubic type that is
/// nonempty over F, compared between the fast path and the generic search.
CheckResult check_cubic_cases_per_type(const CyclicExtension& ext, long long pairs_per_type,
                                       std::uint64_t seed);
CheckResult check_scaling_isomorphism(const CyclicExtension& ext, long long samples,
                                      std::uint64_t seed);
CheckResult check_det_invariant(const CyclicExtension& ext, long long samples,
                                std::uint64_t seed);
CheckResult check_atlas_consistency(const CyclicExtension& ext);

/// All distinct canonical forms of invertible pairs over ext (exhaustive
/// enumeration), sorted by (type, f, g) key.
std::vector<CanonicalForm> collect_canonical_forms(const CyclicExtension& ext);

/// The suites behind `verify --level exhaustive|random`.
std::vector<CheckResult> run_verify(const VerifyOptions& opt);

}  // namespace isotope
