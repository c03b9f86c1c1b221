#pragma once

#include <vector>

#include "isotope/fmatrix.hpp"
#include "isotope/galois.hpp"

namespace isotope {

/// An F-endomorphism of K written in twisted coordinates
/// sum_i L(y_i) tau^i. The coefficient vector determines the operator
/// uniquely, and the operator is invertible exactly when its reduced norm
/// (the determinant of right multiplication in the split cyclic algebra
/// (K/F, tau, 1)) is nonzero.
class TwistedOperator {
public:
    TwistedOperator() = default;
    TwistedOperator(const CyclicExtension* ext, std::vector<elem_t> coeffs);

    const CyclicExtension* ext() const { return ext_; }
    const std::vector<elem_t>& coeffs() const { return y_; }
    elem_t coeff(int i) const { return y_[i]; }

    /// sum_i y_i tau^i(x)
    elem_t apply(elem_t x) const;

    /// this o other, via (y_i t^i)(z_j t^j) = y_i tau^i(z_j) t^(i+j), t^n = 1
    TwistedOperator compose(const TwistedOperator& other) const;

    /// Matrix in the fixed F-basis of K; a ring isomorphism image.
    FMatrix to_matrix() const;

    /// det over K of the right-multiplication matrix R(y); lands in F.
    elem_t reduced_norm() const;

    bool is_invertible() const { return reduced_norm() != 0; }
    /// from_matrix(to_matrix()^-1); throws SingularOperator.
    TwistedOperator inverse() const;

    friend bool operator==(const TwistedOperator& a, const TwistedOperator& b) {
        return a.y_ == b.y_;
    }
    friend bool operator!=(const TwistedOperator& a, const TwistedOperator& b) {
        return !(a == b);
    }

private:
    const CyclicExtension* ext_ = nullptr;
    std::vector<elem_t> y_;
};

/// L(u): coefficients (u, 0, ..., 0).
TwistedOperator left_mul(const CyclicExtension& ext, elem_t u);
/// tau^s as a twisted operator.
TwistedOperator tau_op(const CyclicExtension& ext, int s);
TwistedOperator identity_op(const CyclicExtension& ext);

/// Unique twisted coefficients of an arbitrary n x n matrix over F, by
/// solving the n^2 x n^2 F-linear system in the basis {L(b_k) tau^i}.
/// Throws SingularSystem (the coefficient map is bijective, so this
/// only signals an internal bug).
TwistedOperator from_matrix(const CyclicExtension& ext, const FMatrix& m);

/// The right-multiplication matrix R(y) over K with
/// R[k][j] = tau^j(y_((k-j) mod n)).
FMatrix right_mult_matrix(const CyclicExtension& ext, const std::vector<elem_t>& y);

}  // namespace isotope
