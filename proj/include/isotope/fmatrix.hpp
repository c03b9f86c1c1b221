#pragma once

#include <optional>
#include <vector>

#include "isotope/ff.hpp"

namespace isotope {

/// Dense n x n matrix with entries given as field encodings. Used both for
/// matrices over the subfield F (operator matrices, GL(n, q) elements) and
/// for matrices over K (the right-multiplication matrix behind the reduced
/// norm); the arithmetic comes from the ambient FieldSpec either way.
struct FMatrix {
    int n = 0;
    std::vector<elem_t> a;  // row-major

    FMatrix() = default;
    explicit FMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0) {}

    elem_t& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    elem_t at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static FMatrix identity(int size) {
        FMatrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1;
        return m;
    }

    friend bool operator==(const FMatrix& x, const FMatrix& y) { return x.n == y.n && x.a == y.a; }
    friend bool operator!=(const FMatrix& x, const FMatrix& y) { return !(x == y); }
};

FMatrix fmat_mul(const FieldSpec& k, const FMatrix& x, const FMatrix& y);
std::vector<elem_t> fmat_apply(const FieldSpec& k, const FMatrix& x, const std::vector<elem_t>& v);

/// Determinant by fraction-free (Bareiss) elimination; pivots are the first
/// nonzero entry in row order, so the result is deterministic.
elem_t fmat_det(const FieldSpec& k, FMatrix m);

bool fmat_invertible(const FieldSpec& k, const FMatrix& m);
std::optional<FMatrix> fmat_inverse(const FieldSpec& k, FMatrix m);

/// Solves a (possibly rectangular row count) dense linear system in place.
/// Returns nullopt if the square system is singular.
std::optional<std::vector<elem_t>> solve_linear(const FieldSpec& k, FMatrix m,
                                                std::vector<elem_t> rhs);

}  // namespace isotope
