#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "isotope/algebra.hpp"

namespace isotope {

/// Isomorphism-invariant type data of a presentation: the partition of
/// coefficient indices of the canonical f into zero / noninvertible-nonzero /
/// invertible (N1 is always empty over a field), plus the cubic type index
/// 1..8 when n = 3 and, for f = id, the normalized constant term of g.
struct TypeTag {
    std::vector<int> N0, N1, N2;
    int cubic_type = 0;  // 1..8 for n = 3, else 0
    int g_const = -1;    // 0 or 1 when f = id, else -1

    std::string key() const;

    friend bool operator==(const TypeTag& a, const TypeTag& b) {
        return a.N0 == b.N0 && a.N1 == b.N1 && a.cubic_type == b.cubic_type &&
               a.g_const == b.g_const;
    }
    friend bool operator!=(const TypeTag& a, const TypeTag& b) { return !(a == b); }
};

/// A witness (u, v, sigma = tau^s) for the critical relations
///   y'_i = tau^i(u) tau^i(v) v^-1 sigma(y_i)
///   g'   = L(u^-1) sigma g sigma^-1 L(u v)
struct CriticalWitness {
    elem_t u = 1;
    elem_t v = 1;
    int sigma = 0;
};

/// Either critical relations or an explicit isomorphism matrix.
using IsoWitness = std::variant<CriticalWitness, FMatrix>;

struct CanonicalForm {
    IsotopePresentation pres;
    TypeTag tag;
    CriticalWitness applied;  // sigma = id throughout canonicalization
};

/// (N0, N1, N2) of a raw operator.
TypeTag type_partition(const TwistedOperator& f);

/// Normal form of a presentation under the critical relations:
///   (a) y_0 scaled into {0, 1};
///   (b) for n = 3 the tight-enumeration shape per type (designated
///       coefficient in M, or reduced to 1 for the y_0 = 0 types);
///       for general n the M-scaling of the smallest nonzero coefficient
///       whose tau-power generates the Galois group (when y_0 = 1);
///   (c) for f = id, g's constant term scaled into {0, 1}.
/// Throws NotInvertible unless both operators are invertible.
CanonicalForm canonicalize(const IsotopePresentation& p);

/// Do the critical relations hold for this witness? The f-relations are
/// checked coefficient-wise, the g-relation as an operator equality.
bool check_critical(const IsotopePresentation& p, const IsotopePresentation& pp,
                    const CriticalWitness& w);

/// Witnesses form a group: applying a then b equals applying their composite;
/// the inverse undoes a witness.
CriticalWitness witness_compose(const CyclicExtension& ext, const CriticalWitness& a,
                                const CriticalWitness& b);
CriticalWitness witness_inverse(const CyclicExtension& ext, const CriticalWitness& w);
/// The presentation a witness maps p to.
IsotopePresentation witness_apply(const IsotopePresentation& p, const CriticalWitness& w);

/// Decides K^(f,g) iso K^(f',g') by searching (sigma, u, v), first witness in
/// lexicographic (sigma, enc(u), enc(v)) order. When some coefficient index i
/// with gcd(i, n) = 1 has y_i != 0, v is confined to one Hilbert-90 coset per
/// (sigma, u). Throws ExtensionMismatch.
std::optional<CriticalWitness> iso_critical(const IsotopePresentation& p,
                                            const IsotopePresentation& pp);

/// Independent oracle: first phi in GL(n, F) (enumerated column by column in
/// ascending element order) with phi(e_i e_j) = phi(e_i) phi(e_j) everywhere.
std::optional<FMatrix> iso_bruteforce(const AlgebraStructure& a, const AlgebraStructure& b);

/// Closed-form isomorphism conditions of the cubic classification, one case
/// per type; requires both forms canonical with equal type (TypeMismatch).
/// Degenerate inputs (x_1 = 0 in the f = id, constant-free case) fall back to
/// iso_critical.
std::optional<CriticalWitness> iso_cubic_cases(const CanonicalForm& a, const CanonicalForm& b);

/// Norm-coset labels (det f mod N(K^x), det g mod N(K^x)); over a finite
/// field the norm is surjective, so both labels are always "trivial".
std::pair<std::string, std::string> det_invariant(const IsotopePresentation& p);

struct AtlasOptions {
    std::uint64_t seed = 0;
    long long samples = 0;  // 0: exhaustive enumeration
    bool oracle = false;
    unsigned long long max_pairs = 200000;  // exhaustive budget
    int threads = 1;  // parallel canonicalization partitions (ISOTOPE_THREADS)
};

struct AtlasClass {
    IsotopePresentation rep;       // lex-smallest canonical member
    unsigned long long members;    // presentations (or samples) seen in the class
};

struct AtlasTypeReport {
    TypeTag tag;
    std::vector<AtlasClass> classes;
    unsigned long long oracle_class_count = 0;  // only when oracle ran
};

struct AtlasReport {
    int p = 0, m = 0, n = 0;
    std::uint64_t seed = 0;
    long long samples = 0;
    bool oracle_checked = false;
    bool oracle_agrees = true;
    std::vector<AtlasTypeReport> types;
};

/// Enumerates (or samples) invertible pairs, groups them by canonical type,
/// partitions each type into isomorphism classes with iso_critical, and —
/// when the oracle flag is set — recomputes the partition with iso_bruteforce
/// and compares class counts. Throws BudgetExceeded.
AtlasReport atlas(const CyclicExtension& ext, const AtlasOptions& opt);

/// All invertible coefficient vectors in ascending lexicographic order.
std::vector<std::vector<elem_t>> enumerate_invertible_ops(const CyclicExtension& ext);

/// Deterministic GL(n, F) enumeration; fn returns false to stop early.
void for_each_gl(const CyclicExtension& ext, const std::function<bool(const FMatrix&)>& fn);

/// Seeded deterministic RNG used for all sampling (raw mt19937_64 output,
/// reduced by modulo so that streams are identical across platforms).
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

TwistedOperator random_invertible_op(const CyclicExtension& ext, SampleRng& rng);

}  // namespace isotope
