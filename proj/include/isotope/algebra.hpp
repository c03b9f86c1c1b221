#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isotope/twistop.hpp"

namespace isotope {

/// A pair of invertible twisted operators (f, g) presenting the principal
/// Albert isotope K^(f,g) with product x * y = f(x) g(y).
struct IsotopePresentation {
    const CyclicExtension* ext = nullptr;
    TwistedOperator f, g;

    IsotopePresentation() = default;
    IsotopePresentation(const CyclicExtension* e, TwistedOperator ff, TwistedOperator gg)
        : ext(e), f(std::move(ff)), g(std::move(gg)) {}

    friend bool operator==(const IsotopePresentation& a, const IsotopePresentation& b) {
        return a.f == b.f && a.g == b.g;
    }
};

/// A nonassociative multiplication on V = F^n given by its structure tensor:
/// e_i * e_j = sum_k c[i][j][k] e_k with c[i][j][k] in F. Entries are stored
/// as encodings of subfield elements of the ambient K.
class AlgebraStructure {
public:
    AlgebraStructure() = default;
    AlgebraStructure(const CyclicExtension* ext, std::vector<elem_t> tensor);

    const CyclicExtension* ext() const { return ext_; }
    int dim() const { return n_; }
    const std::vector<elem_t>& tensor() const { return c_; }
    elem_t at(int i, int j, int k) const { return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }
    elem_t& at(int i, int j, int k) { return c_[(static_cast<size_t>(i) * n_ + j) * n_ + k]; }

    /// Number of elements of V.
    elem_t size() const;
    /// Element of V by its digit index (base-q digits are subfield indices).
    std::vector<elem_t> element(elem_t index) const;
    elem_t index_of(const std::vector<elem_t>& v) const;

    std::vector<elem_t> multiply(const std::vector<elem_t>& x, const std::vector<elem_t>& y) const;
    FMatrix left_mult(const std::vector<elem_t>& u) const;   // L_A(u)
    FMatrix right_mult(const std::vector<elem_t>& v) const;  // R_A(v)

    /// Tensor of the opposite algebra (arguments swapped).
    AlgebraStructure opposite() const;

    bool is_commutative() const;
    bool is_associative() const;
    bool is_zero() const;
    /// Unit element if one exists.
    std::optional<std::vector<elem_t>> unit() const;

    /// Exhaustive zero-divisor scan for q^n <= 512, otherwise the exact
    /// rank criterion (every L_a invertible for a != 0).
    bool has_zero_divisors() const;
    bool is_division() const { return !is_zero() && !has_zero_divisors(); }

    /// The presentation this tensor was built from, when it was (equality
    /// and all algebraic operations ignore it).
    const std::optional<IsotopePresentation>& provenance() const { return provenance_; }
    void set_provenance(IsotopePresentation p) { provenance_ = std::move(p); }

    friend bool operator==(const AlgebraStructure& a, const AlgebraStructure& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const AlgebraStructure& a, const AlgebraStructure& b) {
        return !(a == b);
    }

private:
    const CyclicExtension* ext_ = nullptr;
    int n_ = 0;
    std::vector<elem_t> c_;  // n^3 entries
    std::optional<IsotopePresentation> provenance_;
};

/// The tensor of K itself in the fixed F-basis.
AlgebraStructure field_algebra(const CyclicExtension& ext);

/// Homotope A^(f,g,h): x * y = h(f(x) A g(y)). All three maps must be
/// invertible (throws SingularMap); h defaults to the identity, giving the
/// principal Albert isotope.
AlgebraStructure albert_isotope(const AlgebraStructure& a, const FMatrix& f, const FMatrix& g);
AlgebraStructure albert_isotope(const AlgebraStructure& a, const FMatrix& f, const FMatrix& g,
                         const FMatrix& h);

/// Tensor of K^(f,g): c[i][j] = coords(f(b_i) g(b_j)).
AlgebraStructure from_presentation(const IsotopePresentation& p);

/// First (u, v) in element order whose left and right multiplications are
/// invertible, or nullopt (the algebra is singular).
std::optional<std::pair<std::vector<elem_t>, std::vector<elem_t>>> is_regular(
    const AlgebraStructure& a);

struct HeartExtraction {
    AlgebraStructure heart;  // B = A^(f^-1, g^-1), unital with unit u A v
    FMatrix f, g;            // f = R_A(v), g = L_A(u); A = B^(f,g) exactly
    std::vector<elem_t> unit;
};

/// Kaplansky's trick on the witnesses from is_regular (or a supplied pair).
/// Throws SingularAlgebra when no witnesses exist.
HeartExtraction kaplansky_heart(const AlgebraStructure& a);
HeartExtraction kaplansky_heart(const AlgebraStructure& a, const std::vector<elem_t>& u,
                                const std::vector<elem_t>& v);

/// If the unital algebra B is commutative, associative and zero-divisor-free,
/// an F-algebra isomorphism B -> K as a matrix (columns: images of e_j).
/// Throws NotAField otherwise.
FMatrix recognize_field_heart(const AlgebraStructure& b);

struct Decomposition {
    IsotopePresentation presentation;
    FMatrix witness;  // isomorphism A -> from_presentation(presentation)
};

/// Chains is_regular -> kaplansky_heart -> recognize_field_heart and
/// transports (f, g) along the recognition isomorphism. nullopt when A is
/// singular or the heart is not a field isomorphic to K.
std::optional<Decomposition> decompose_as_presentation(const AlgebraStructure& a);

/// phi(x *_A y) == phi(x) *_B phi(y) on all basis pairs.
bool is_algebra_isomorphism(const AlgebraStructure& a, const AlgebraStructure& b,
                            const FMatrix& phi);

}  // namespace isotope
