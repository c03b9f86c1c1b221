#include "isotope/algebra.hpp"

#include <cassert>

namespace isotope {

AlgebraStructure::AlgebraStructure(const CyclicExtension* ext, std::vector<elem_t> tensor)
    : ext_(ext), n_(ext->n()), c_(std::move(tensor)) {
    if (c_.size() != static_cast<size_t>(n_) * n_ * n_) throw Error("tensor must have n^3 entries");
    for (elem_t v : c_)
        if (v >= ext_->order() || !ext_->in_subfield(v))
            throw Error("tensor entries must lie in the subfield F");
}

elem_t AlgebraStructure::size() const {
    elem_t s = 1;
    for (int i = 0; i < n_; ++i) s *= ext_->q();
    return s;
}

std::vector<elem_t> AlgebraStructure::element(elem_t index) const {
    std::vector<elem_t> v(n_);
    for (int i = 0; i < n_; ++i) {
        v[i] = ext_->subfield()[index % ext_->q()];
        index /= ext_->q();
    }
    return v;
}

elem_t AlgebraStructure::index_of(const std::vector<elem_t>& v) const {
    elem_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i)
        idx = idx * ext_->q() + static_cast<elem_t>(ext_->subfield_index(v[i]));
    return idx;
}

std::vector<elem_t> AlgebraStructure::multiply(const std::vector<elem_t>& x,
                                               const std::vector<elem_t>& y) const {
    const FieldSpec& k = ext_->field();
    std::vector<elem_t> r(n_, 0);
    for (int i = 0; i < n_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[j] == 0) continue;
            const elem_t s = k.mul(x[i], y[j]);
            for (int kk = 0; kk < n_; ++kk) {
                const elem_t cc = at(i, j, kk);
                if (cc != 0) r[kk] = k.add(r[kk], k.mul(s, cc));
            }
        }
    }
    return r;
}

FMatrix AlgebraStructure::left_mult(const std::vector<elem_t>& u) const {
    const FieldSpec& k = ext_->field();
    FMatrix m(n_);
    for (int j = 0; j < n_; ++j)
        for (int kk = 0; kk < n_; ++kk) {
            elem_t acc = 0;
            for (int i = 0; i < n_; ++i)
                if (u[i] != 0 && at(i, j, kk) != 0) acc = k.add(acc, k.mul(u[i], at(i, j, kk)));
            m.at(kk, j) = acc;
        }
    return m;
}

FMatrix AlgebraStructure::right_mult(const std::vector<elem_t>& v) const {
    const FieldSpec& k = ext_->field();
    FMatrix m(n_);
    for (int i = 0; i < n_; ++i)
        for (int kk = 0; kk < n_; ++kk) {
            elem_t acc = 0;
            for (int j = 0; j < n_; ++j)
                if (v[j] != 0 && at(i, j, kk) != 0) acc = k.add(acc, k.mul(v[j], at(i, j, kk)));
            m.at(kk, i) = acc;
        }
    return m;
}

AlgebraStructure AlgebraStructure::opposite() const {
    AlgebraStructure r(*this);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int kk = 0; kk < n_; ++kk) r.at(i, j, kk) = at(j, i, kk);
    return r;
}

bool AlgebraStructure::is_commutative() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            for (int kk = 0; kk < n_; ++kk)
                if (at(i, j, kk) != at(j, i, kk)) return false;
    return true;
}

bool AlgebraStructure::is_associative() const {
    // (e_i e_j) e_k == e_i (e_j e_k) suffices by bilinearity
    for (int i = 0; i < n_; ++i) {
        std::vector<elem_t> ei(n_, 0);
        ei[i] = 1;
        for (int j = 0; j < n_; ++j) {
            std::vector<elem_t> ej(n_, 0);
            ej[j] = 1;
            const std::vector<elem_t> ij = multiply(ei, ej);
            for (int kk = 0; kk < n_; ++kk) {
                std::vector<elem_t> ek(n_, 0);
                ek[kk] = 1;
                if (multiply(ij, ek) != multiply(ei, multiply(ej, ek))) return false;
            }
        }
    }
    return true;
}

bool AlgebraStructure::is_zero() const {
    for (elem_t v : c_)
        if (v != 0) return false;
    return true;
}

std::optional<std::vector<elem_t>> AlgebraStructure::unit() const {
    const elem_t total = size();
    for (elem_t idx = 1; idx < total; ++idx) {
        const std::vector<elem_t> e = element(idx);
        bool ok = true;
        for (int j = 0; j < n_ && ok; ++j) {
            std::vector<elem_t> ej(n_, 0);
            ej[j] = 1;
            if (multiply(e, ej) != ej || multiply(ej, e) != ej) ok = false;
        }
        if (ok) return e;
    }
    return std::nullopt;
}

bool AlgebraStructure::has_zero_divisors() const {
    const elem_t total = size();
    const std::vector<elem_t> zero(n_, 0);
    if (total <= 512) {
        for (elem_t i = 1; i < total; ++i) {
            const std::vector<elem_t> x = element(i);
            for (elem_t j = 1; j < total; ++j)
                if (multiply(x, element(j)) == zero) return true;
        }
        return false;
    }
    // exact criterion: x is a left zero divisor iff L_x is singular
    for (elem_t i = 1; i < total; ++i)
        if (!fmat_invertible(ext_->field(), left_mult(element(i)))) return true;
    return false;
}

AlgebraStructure field_algebra(const CyclicExtension& ext) {
    const int n = ext.n();
    const FieldSpec& k = ext.field();
    std::vector<elem_t> c(static_cast<size_t>(n) * n * n, 0);
    AlgebraStructure a(&ext, std::move(c));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::vector<elem_t>& coords =
                ext.coords(k.mul(ext.basis()[i], ext.basis()[j]));
            for (int kk = 0; kk < n; ++kk) a.at(i, j, kk) = coords[kk];
        }
    return a;
}

AlgebraStructure albert_isotope(const AlgebraStructure& a, const FMatrix& f, const FMatrix& g) {
    return albert_isotope(a, f, g, FMatrix::identity(a.dim()));
}

AlgebraStructure albert_isotope(const AlgebraStructure& a, const FMatrix& f, const FMatrix& g,
                         const FMatrix& h) {
    const CyclicExtension& ext = *a.ext();
    const FieldSpec& k = ext.field();
    const int n = a.dim();
    if (f.n != n || g.n != n || h.n != n) throw Error("map dimension mismatch");
    if (!fmat_invertible(k, f) || !fmat_invertible(k, g) || !fmat_invertible(k, h))
        throw SingularMap();
    AlgebraStructure r(&ext, std::vector<elem_t>(static_cast<size_t>(n) * n * n, 0));
    for (int i = 0; i < n; ++i) {
        std::vector<elem_t> fi(n);
        for (int kk = 0; kk < n; ++kk) fi[kk] = f.at(kk, i);
        for (int j = 0; j < n; ++j) {
            std::vector<elem_t> gj(n);
            for (int kk = 0; kk < n; ++kk) gj[kk] = g.at(kk, j);
            const std::vector<elem_t> prod = fmat_apply(k, h, a.multiply(fi, gj));
            for (int kk = 0; kk < n; ++kk) r.at(i, j, kk) = prod[kk];
        }
    }
    return r;
}

AlgebraStructure from_presentation(const IsotopePresentation& p) {
    const CyclicExtension& ext = *p.ext;
    const FieldSpec& k = ext.field();
    const int n = ext.n();
    AlgebraStructure r(&ext, std::vector<elem_t>(static_cast<size_t>(n) * n * n, 0));
    for (int i = 0; i < n; ++i) {
        const elem_t fi = p.f.apply(ext.basis()[i]);
        for (int j = 0; j < n; ++j) {
            const elem_t gj = p.g.apply(ext.basis()[j]);
            const std::vector<elem_t>& coords = ext.coords(k.mul(fi, gj));
            for (int kk = 0; kk < n; ++kk) r.at(i, j, kk) = coords[kk];
        }
    }
    r.set_provenance(p);
    return r;
}

std::optional<std::pair<std::vector<elem_t>, std::vector<elem_t>>> is_regular(
    const AlgebraStructure& a) {
    const FieldSpec& k = a.ext()->field();
    const elem_t total = a.size();
    std::optional<std::vector<elem_t>> u, v;
    for (elem_t i = 1; i < total && !u; ++i) {
        std::vector<elem_t> x = a.element(i);
        if (fmat_invertible(k, a.left_mult(x))) u = std::move(x);
    }
    if (!u) return std::nullopt;
    for (elem_t i = 1; i < total && !v; ++i) {
        std::vector<elem_t> x = a.element(i);
        if (fmat_invertible(k, a.right_mult(x))) v = std::move(x);
    }
    if (!v) return std::nullopt;
    return std::make_pair(std::move(*u), std::move(*v));
}

HeartExtraction kaplansky_heart(const AlgebraStructure& a) {
    auto reg = is_regular(a);
    if (!reg) throw SingularAlgebra();
    return kaplansky_heart(a, reg->first, reg->second);
}

HeartExtraction kaplansky_heart(const AlgebraStructure& a, const std::vector<elem_t>& u,
                                const std::vector<elem_t>& v) {
    const FieldSpec& k = a.ext()->field();
    const FMatrix f = a.right_mult(v);
    const FMatrix g = a.left_mult(u);
    auto finv = fmat_inverse(k, f);
    auto ginv = fmat_inverse(k, g);
    if (!finv || !ginv) throw SingularAlgebra();
    HeartExtraction h{albert_isotope(a, *finv, *ginv), f, g, a.multiply(u, v)};
    return h;
}

FMatrix recognize_field_heart(const AlgebraStructure& b) {
    const CyclicExtension& ext = *b.ext();
    const FieldSpec& k = ext.field();
    const int n = b.dim();
    auto e = b.unit();
    if (!e) throw NotAField("no unit element");
    if (!b.is_commutative()) throw NotAField("not commutative");
    if (!b.is_associative()) throw NotAField("not associative");
    if (b.has_zero_divisors()) throw NotAField("zero divisors exist");

    // find the encoding-smallest element with minimal polynomial of degree n
    const elem_t total = b.size();
    for (elem_t idx = 0; idx < total; ++idx) {
        const std::vector<elem_t> cand = b.element(idx);
        // powers cand^0 .. cand^n as F-coordinate columns
        std::vector<std::vector<elem_t>> pows;
        pows.push_back(*e);
        for (int d = 1; d <= n; ++d) pows.push_back(b.multiply(pows.back(), cand));
        // degree of the minimal polynomial: first d with cand^d dependent on lower powers
        int deg = n;
        std::vector<elem_t> minpoly;  // c_0..c_d with sum c_i cand^i = 0, c_d = 1
        for (int d = 1; d <= n; ++d) {
            // solve sum_{i<d} x_i cand^i = cand^d; dependence <=> solvable;
            // elimination on the n x (d+1) augmented matrix
            std::vector<std::vector<elem_t>> m(n, std::vector<elem_t>(d + 1, 0));
            for (int row = 0; row < n; ++row) {
                for (int col = 0; col < d; ++col) m[row][col] = pows[col][row];
                m[row][d] = pows[d][row];
            }
            // gaussian elimination
            int rank = 0;
            std::vector<int> pivot_col(n, -1);
            for (int col = 0; col < d && rank < n; ++col) {
                int piv = -1;
                for (int row = rank; row < n; ++row)
                    if (m[row][col] != 0) {
                        piv = row;
                        break;
                    }
                if (piv < 0) continue;
                std::swap(m[piv], m[rank]);
                const elem_t s = k.inv(m[rank][col]);
                for (int j = col; j <= d; ++j) m[rank][j] = k.mul(m[rank][j], s);
                for (int row = 0; row < n; ++row) {
                    if (row == rank || m[row][col] == 0) continue;
                    const elem_t fac = m[row][col];
                    for (int j = col; j <= d; ++j)
                        m[row][j] = k.sub(m[row][j], k.mul(fac, m[rank][j]));
                }
                pivot_col[rank] = col;
                ++rank;
            }
            bool solvable = true;
            for (int row = rank; row < n; ++row)
                if (m[row][d] != 0) solvable = false;
            if (solvable) {
                deg = d;
                // cand^d = sum_i x_i cand^i, so minpoly = t^d - sum_i x_i t^i
                std::vector<elem_t> coeffs(d + 1, 0);
                coeffs[d] = 1;
                for (int r = 0; r < rank; ++r) coeffs[pivot_col[r]] = k.neg(m[r][d]);
                minpoly = std::move(coeffs);
                break;
            }
        }
        if (deg != n) continue;

        // smallest root of the minimal polynomial in K
        elem_t root = 0;
        bool found = false;
        for (elem_t r = 0; r < ext.order(); ++r) {
            elem_t valr = 0, p = 1;
            for (int i = 0; i <= n; ++i) {
                valr = k.add(valr, k.mul(minpoly[i], p));
                p = k.mul(p, r);
            }
            if (valr == 0) {
                root = r;
                found = true;
                break;
            }
        }
        if (!found) throw NoRoot();

        // extend cand -> root F-linearly over the power basis
        FMatrix pb(n);  // columns: coordinates of cand^j in B
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) pb.at(i, j) = pows[j][i];
        auto pbinv = fmat_inverse(k, pb);
        assert(pbinv && "powers of a degree-n element are independent");
        FMatrix rootmat(n);  // columns: K-coordinates of root^j
        elem_t rp = 1;
        for (int j = 0; j < n; ++j) {
            const std::vector<elem_t>& co = ext.coords(rp);
            for (int i = 0; i < n; ++i) rootmat.at(i, j) = co[i];
            rp = k.mul(rp, root);
        }
        FMatrix phi = fmat_mul(k, rootmat, *pbinv);

        AlgebraStructure kk = field_algebra(ext);
        if (!is_algebra_isomorphism(b, kk, phi))
            throw Error("internal: recognition map failed multiplicativity");
        return phi;
    }
    throw NotAField("no element of full degree");
}

std::optional<Decomposition> decompose_as_presentation(const AlgebraStructure& a) {
    auto reg = is_regular(a);
    if (!reg) return std::nullopt;
    HeartExtraction h = kaplansky_heart(a, reg->first, reg->second);
    FMatrix phi;
    try {
        phi = recognize_field_heart(h.heart);
    } catch (const NotAField&) {
        return std::nullopt;
    }
    const CyclicExtension& ext = *a.ext();
    const FieldSpec& k = ext.field();
    auto phiinv = fmat_inverse(k, phi);
    assert(phiinv);
    const FMatrix fk = fmat_mul(k, phi, fmat_mul(k, h.f, *phiinv));
    const FMatrix gk = fmat_mul(k, phi, fmat_mul(k, h.g, *phiinv));
    Decomposition d;
    d.presentation = IsotopePresentation(&ext, from_matrix(ext, fk), from_matrix(ext, gk));
    d.witness = phi;
    return d;
}

bool is_algebra_isomorphism(const AlgebraStructure& a, const AlgebraStructure& b,
                            const FMatrix& phi) {
    const FieldSpec& k = a.ext()->field();
    const int n = a.dim();
    if (b.dim() != n || phi.n != n) return false;
    if (!fmat_invertible(k, phi)) return false;
    for (int i = 0; i < n; ++i) {
        std::vector<elem_t> ei(n, 0);
        ei[i] = 1;
        const std::vector<elem_t> phi_ei = fmat_apply(k, phi, ei);
        for (int j = 0; j < n; ++j) {
            std::vector<elem_t> ej(n, 0);
            ej[j] = 1;
            const std::vector<elem_t> lhs = fmat_apply(k, phi, a.multiply(ei, ej));
            const std::vector<elem_t> rhs = b.multiply(phi_ei, fmat_apply(k, phi, ej));
            if (lhs != rhs) return false;
        }
    }
    return true;
}

}  // namespace isotope
