#include "isotope/twistop.hpp"

#include <cassert>

namespace isotope {

TwistedOperator::TwistedOperator(const CyclicExtension* ext, std::vector<elem_t> coeffs)
    : ext_(ext), y_(std::move(coeffs)) {
    if (static_cast<int>(y_.size()) != ext_->n()) throw Error("coefficient count must equal n");
    for (elem_t c : y_)
        if (c >= ext_->order()) throw Error("coefficient encoding out of range");
}

elem_t TwistedOperator::apply(elem_t x) const {
    const FieldSpec& k = ext_->field();
    elem_t r = 0;
    for (int i = 0; i < ext_->n(); ++i)
        if (y_[i] != 0) r = k.add(r, k.mul(y_[i], ext_->tau(x, i)));
    return r;
}

TwistedOperator TwistedOperator::compose(const TwistedOperator& other) const {
    if (ext_ != other.ext_) throw ExtensionMismatch();
    const FieldSpec& k = ext_->field();
    const int n = ext_->n();
    std::vector<elem_t> r(n, 0);
    for (int i = 0; i < n; ++i) {
        if (y_[i] == 0) continue;
        for (int j = 0; j < n; ++j) {
            if (other.y_[j] == 0) continue;
            int idx = (i + j) % n;
            r[idx] = k.add(r[idx], k.mul(y_[i], ext_->tau(other.y_[j], i)));
        }
    }
    return {ext_, std::move(r)};
}

FMatrix TwistedOperator::to_matrix() const {
    const int n = ext_->n();
    FMatrix m(n);
    for (int j = 0; j < n; ++j) {
        const std::vector<elem_t>& col = ext_->coords(apply(ext_->basis()[j]));
        for (int i = 0; i < n; ++i) m.at(i, j) = col[i];
    }
    return m;
}

FMatrix right_mult_matrix(const CyclicExtension& ext, const std::vector<elem_t>& y) {
    const int n = ext.n();
    FMatrix r(n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) r.at(k, j) = ext.tau(y[(k - j + n) % n], j);
    return r;
}

elem_t TwistedOperator::reduced_norm() const {
    elem_t d = fmat_det(ext_->field(), right_mult_matrix(*ext_, y_));
    assert(ext_->in_subfield(d));
    return d;
}

TwistedOperator TwistedOperator::inverse() const {
    if (!is_invertible()) throw SingularOperator();
    auto inv = fmat_inverse(ext_->field(), to_matrix());
    assert(inv.has_value());
    return from_matrix(*ext_, *inv);
}

TwistedOperator left_mul(const CyclicExtension& ext, elem_t u) {
    std::vector<elem_t> y(ext.n(), 0);
    y[0] = u;
    return {&ext, std::move(y)};
}

TwistedOperator tau_op(const CyclicExtension& ext, int s) {
    std::vector<elem_t> y(ext.n(), 0);
    y[ext.mod_n(s)] = 1;
    return {&ext, std::move(y)};
}

TwistedOperator identity_op(const CyclicExtension& ext) { return left_mul(ext, 1); }

TwistedOperator from_matrix(const CyclicExtension& ext, const FMatrix& m) {
    const int n = ext.n();
    if (m.n != n) throw Error("matrix dimension must equal n");
    const FieldSpec& k = ext.field();
    // unknowns: F-coordinates c_(i,k) with y_i = sum_k c_(i,k) b_k;
    // one n^2-column per (i, k), rows flatten the operator matrix
    FMatrix sys(n * n);
    for (int i = 0; i < n; ++i)
        for (int kk = 0; kk < n; ++kk) {
            std::vector<elem_t> y(n, 0);
            y[i] = ext.basis()[kk];
            FMatrix e = TwistedOperator(&ext, std::move(y)).to_matrix();
            const int col = i * n + kk;
            for (int r = 0; r < n * n; ++r) sys.at(r, col) = e.a[r];
        }
    std::vector<elem_t> rhs(m.a.begin(), m.a.end());
    auto sol = solve_linear(k, std::move(sys), std::move(rhs));
    if (!sol) throw SingularSystem();
    std::vector<elem_t> y(n, 0);
    for (int i = 0; i < n; ++i) {
        std::vector<elem_t> c(sol->begin() + i * n, sol->begin() + (i + 1) * n);
        y[i] = ext.from_coords(c);
    }
    return {&ext, std::move(y)};
}

}  // namespace isotope
