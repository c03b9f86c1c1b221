#include "isotope/fmatrix.hpp"

namespace isotope {

FMatrix fmat_mul(const FieldSpec& k, const FMatrix& x, const FMatrix& y) {
    FMatrix r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int l = 0; l < x.n; ++l) {
            elem_t xv = x.at(i, l);
            if (xv == 0) continue;
            for (int j = 0; j < x.n; ++j)
                r.at(i, j) = k.add(r.at(i, j), k.mul(xv, y.at(l, j)));
        }
    return r;
}

std::vector<elem_t> fmat_apply(const FieldSpec& k, const FMatrix& x,
                               const std::vector<elem_t>& v) {
    std::vector<elem_t> r(x.n, 0);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j)
            if (x.at(i, j) != 0 && v[j] != 0) r[i] = k.add(r[i], k.mul(x.at(i, j), v[j]));
    return r;
}

elem_t fmat_det(const FieldSpec& k, FMatrix m) {
    const int n = m.n;
    if (n == 0) return 1;
    bool negate = false;
    elem_t prev = 1;
    for (int col = 0; col < n - 1; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.a[piv * n + j], m.a[col * n + j]);
            negate = !negate;
        }
        const elem_t pivot = m.at(col, col);
        const elem_t prev_inv = k.inv(prev);
        for (int i = col + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j) {
                elem_t t = k.sub(k.mul(m.at(i, j), pivot), k.mul(m.at(i, col), m.at(col, j)));
                m.at(i, j) = k.mul(t, prev_inv);
            }
            m.at(i, col) = 0;
        }
        prev = pivot;
    }
    elem_t det = m.at(n - 1, n - 1);
    return negate ? k.neg(det) : det;
}

std::optional<FMatrix> fmat_inverse(const FieldSpec& k, FMatrix m) {
    const int n = m.n;
    FMatrix inv = FMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(m.a[piv * n + j], m.a[col * n + j]);
                std::swap(inv.a[piv * n + j], inv.a[col * n + j]);
            }
        const elem_t s = k.inv(m.at(col, col));
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = k.mul(m.at(col, j), s);
            inv.at(col, j) = k.mul(inv.at(col, j), s);
        }
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const elem_t f = m.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(col, j)));
                inv.at(i, j) = k.sub(inv.at(i, j), k.mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

bool fmat_invertible(const FieldSpec& k, const FMatrix& m) { return fmat_det(k, m) != 0; }

std::optional<std::vector<elem_t>> solve_linear(const FieldSpec& k, FMatrix m,
                                                std::vector<elem_t> rhs) {
    const int n = m.n;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.a[piv * n + j], m.a[col * n + j]);
            std::swap(rhs[piv], rhs[col]);
        }
        const elem_t s = k.inv(m.at(col, col));
        for (int j = col; j < n; ++j) m.at(col, j) = k.mul(m.at(col, j), s);
        rhs[col] = k.mul(rhs[col], s);
        for (int i = 0; i < n; ++i) {
            if (i == col) continue;
            const elem_t f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < n; ++j) m.at(i, j) = k.sub(m.at(i, j), k.mul(f, m.at(col, j)));
            rhs[i] = k.sub(rhs[i], k.mul(f, rhs[col]));
        }
    }
    return rhs;
}

}  // namespace isotope
