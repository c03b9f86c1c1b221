#pragma once

#include <memory>
#include <vector>

#include "isotope/ff.hpp"

namespace isotope {

/// The cyclic Galois extension K/F of degree n, K = GF(p^(m n)), F = GF(q),
/// q = p^m, with generator tau : x -> x^q. F lives inside K as Fix(tau).
///
/// Everything that the classifier needs in inner loops (tau powers, norm,
/// trace, S(K), the transversal M, coordinates in the fixed F-basis) is
/// precomputed at construction. Instances are immutable and shareable.
class CyclicExtension {
public:
    static std::shared_ptr<const CyclicExtension> build(int p, int m, int n);

    const FieldSpec& field() const { return *K_; }
    std::shared_ptr<const FieldSpec> field_ptr() const { return K_; }
    int p() const { return p_; }
    int m() const { return m_; }
    int n() const { return n_; }
    elem_t q() const { return q_; }
    elem_t order() const { return K_->order(); }

    FieldElement element(elem_t enc) const { return {K_.get(), enc}; }
    FieldElement zero() const { return element(0); }
    FieldElement one() const { return element(1); }

    // tau^i on encodings; i is reduced mod n.
    elem_t tau(elem_t x, int i = 1) const { return tau_[mod_n(i)][x]; }
    elem_t norm(elem_t x) const { return norm_[x]; }
    elem_t trace(elem_t x) const { return trace_[x]; }
    FieldElement norm(const FieldElement& x) const { return element(norm_[x.value()]); }
    FieldElement trace(const FieldElement& x) const { return element(trace_[x.value()]); }

    bool in_subfield(elem_t x) const { return tau_[1 % n_][x] == x || n_ == 1; }
    /// Encodings of the subfield F, ascending (q entries, first is 0).
    const std::vector<elem_t>& subfield() const { return subfield_; }
    /// Index of a subfield element in subfield(), -1 if not in F.
    int subfield_index(elem_t x) const { return sub_index_[x]; }

    /// S(K) = {x : N(x) = 1}, ascending encodings.
    const std::vector<elem_t>& norm_one_set() const { return norm_one_; }
    /// M: one representative per coset of S(K) in K^x, the encoding-smallest
    /// element of each norm class; ascending encodings, starts with 1.
    const std::vector<elem_t>& representatives() const { return reps_; }
    /// The m in M with N(m) = N(y); y must be nonzero.
    elem_t reduce_to_M(elem_t y) const;
    bool in_M(elem_t y) const;

    /// Smallest v in K^x with s = tau^i(v) v^-1. Requires N(s) = 1 and
    /// gcd(i, n) = 1. Throws NormNotOne / NonGeneratingPower.
    elem_t hilbert90_solve(elem_t s, int i = 1) const;

    /// The unique m in M congruent to y mod S(K), and v with
    /// m = tau^i(v) v^-1 y. Throws NotInvertible on y = 0,
    /// NonGeneratingPower unless gcd(i, n) = 1 and 1 <= i.
    std::pair<elem_t, elem_t> scale_to_M(elem_t y, int i) const;

    /// Smallest generator of K^x by encoding.
    elem_t primitive_root() const { return root_; }
    /// The fixed F-basis of K: 1, g, ..., g^(n-1).
    const std::vector<elem_t>& basis() const { return basis_; }
    /// Coordinates of x in the F-basis (n subfield encodings).
    const std::vector<elem_t>& coords(elem_t x) const { return coords_[x]; }
    /// Inverse of coords: sum c_k basis[k] for subfield encodings c_k.
    elem_t from_coords(const std::vector<elem_t>& c) const;

    int mod_n(int i) const {
        i %= n_;
        return i < 0 ? i + n_ : i;
    }

private:
    CyclicExtension(int p, int m, int n);

    std::shared_ptr<const FieldSpec> K_;
    int p_, m_, n_;
    elem_t q_;
    elem_t root_ = 1;

    std::vector<std::vector<elem_t>> tau_;     // tau_[i][x] = tau^i(x)
    std::vector<elem_t> norm_, trace_;
    std::vector<elem_t> subfield_;
    std::vector<int> sub_index_;
    std::vector<elem_t> norm_one_;
    std::vector<elem_t> reps_;                 // M sorted ascending
    std::vector<elem_t> rep_of_norm_;          // norm enc -> m in M
    std::vector<std::vector<elem_t>> h90_;     // h90_[i][s]: min v with tau^i(v)/v = s
    std::vector<elem_t> basis_;
    std::vector<std::vector<elem_t>> coords_;
};

}  // namespace isotope
