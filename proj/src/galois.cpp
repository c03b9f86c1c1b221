#include "isotope/galois.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace isotope {

std::shared_ptr<const CyclicExtension> CyclicExtension::build(int p, int m, int n) {
    if (m < 1 || n < 1) throw Error("extension degrees must be >= 1");
    return std::shared_ptr<const CyclicExtension>(new CyclicExtension(p, m, n));
}

CyclicExtension::CyclicExtension(int p, int m, int n) : p_(p), m_(m), n_(n) {
    K_ = FieldSpec::make(p, m * n);
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= static_cast<elem_t>(p);
    const elem_t N = K_->order();

    tau_.assign(n_, std::vector<elem_t>(N));
    for (elem_t x = 0; x < N; ++x) tau_[0][x] = x;
    for (elem_t x = 0; x < N; ++x) tau_[1 % n_][x] = K_->frobenius(x, q_);
    for (int i = 2; i < n_; ++i)
        for (elem_t x = 0; x < N; ++x) tau_[i][x] = tau_[1][tau_[i - 1][x]];

    norm_.assign(N, 0);
    trace_.assign(N, 0);
    for (elem_t x = 0; x < N; ++x) {
        elem_t nv = x, tv = x;
        for (int i = 1; i < n_; ++i) {
            nv = K_->mul(nv, tau_[i][x]);
            tv = K_->add(tv, tau_[i][x]);
        }
        norm_[x] = nv;
        trace_[x] = tv;
    }

    sub_index_.assign(N, -1);
    for (elem_t x = 0; x < N; ++x)
        if (tau_[1 % n_][x] == x) {
            sub_index_[x] = static_cast<int>(subfield_.size());
            subfield_.push_back(x);
        }
    assert(subfield_.size() == q_);

    for (elem_t x = 1; x < N; ++x)
        if (norm_[x] == 1) norm_one_.push_back(x);

    rep_of_norm_.assign(N, 0);
    for (elem_t x = 1; x < N; ++x) {
        elem_t c = norm_[x];
        if (rep_of_norm_[c] == 0) {
            rep_of_norm_[c] = x;  // first hit is the encoding-smallest
            reps_.push_back(x);
        }
    }
    std::sort(reps_.begin(), reps_.end());
    assert(reps_.size() == q_ - 1);
    assert(reps_[0] == 1);

    // minimal Hilbert-90 solutions per generating power of tau
    h90_.assign(n_, {});
    for (int i = 1; i < n_; ++i) {
        if (std::gcd(i, n_) != 1) continue;
        auto& table = h90_[i];
        table.assign(N, 0);
        for (elem_t v = 1; v < N; ++v) {
            elem_t s = K_->mul(tau_[i][v], K_->inv(v));
            if (table[s] == 0) table[s] = v;
        }
    }

    root_ = K_->generator();
    basis_.assign(n_, 1);
    for (int k = 1; k < n_; ++k) basis_[k] = K_->mul(basis_[k - 1], root_);

    // coords: enumerate all F-combinations once; the map F^n -> K is a bijection
    // because 1, g, ..., g^(n-1) are F-independent for a primitive root g
    coords_.assign(N, {});
    std::vector<char> seen(N, 0);
    std::vector<int> digits(n_, 0);
    elem_t filled = 0;
    for (;;) {
        elem_t x = 0;
        std::vector<elem_t> combo(n_);
        for (int k = 0; k < n_; ++k) {
            combo[k] = subfield_[digits[k]];
            x = K_->add(x, K_->mul(combo[k], basis_[k]));
        }
        assert(!seen[x]);
        seen[x] = 1;
        ++filled;
        coords_[x] = std::move(combo);
        int k = 0;
        while (k < n_ && ++digits[k] == static_cast<int>(q_)) digits[k++] = 0;
        if (k == n_) break;
    }
    assert(filled == N);
}

elem_t CyclicExtension::reduce_to_M(elem_t y) const {
    if (y == 0) throw NotInvertible();
    return rep_of_norm_[norm_[y]];
}

bool CyclicExtension::in_M(elem_t y) const { return y != 0 && rep_of_norm_[norm_[y]] == y; }

elem_t CyclicExtension::hilbert90_solve(elem_t s, int i) const {
    int ii = mod_n(i);
    if (i < 1 || std::gcd(ii == 0 ? n_ : ii, n_) != 1) throw NonGeneratingPower(i, n_);
    if (s == 0 || norm_[s] != 1) throw NormNotOne();
    if (n_ == 1) return 1;  // S(K) = {1}, tau = id
    elem_t v = h90_[ii][s];
    assert(v != 0);
    return v;
}

std::pair<elem_t, elem_t> CyclicExtension::scale_to_M(elem_t y, int i) const {
    if (y == 0) throw NotInvertible();
    int ii = mod_n(i);
    if (i < 1 || std::gcd(ii == 0 ? n_ : ii, n_) != 1) throw NonGeneratingPower(i, n_);
    elem_t mrep = reduce_to_M(y);
    elem_t s = K_->mul(mrep, K_->inv(y));
    elem_t v = hilbert90_solve(s, i);
    return {mrep, v};
}

elem_t CyclicExtension::from_coords(const std::vector<elem_t>& c) const {
    elem_t x = 0;
    for (int k = 0; k < n_ && k < static_cast<int>(c.size()); ++k)
        x = K_->add(x, K_->mul(c[k], basis_[k]));
    return x;
}

}  // namespace isotope
