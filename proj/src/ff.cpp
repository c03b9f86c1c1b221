#include "isotope/ff.hpp"

#include <algorithm>
#include <cassert>

namespace isotope {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

namespace poly {

std::vector<int> trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

static std::vector<int> reduce(std::vector<int> a, const std::vector<int>& f, int p) {
    // f monic; long division, keep the remainder
    const int df = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= df; --i) {
        int c = a[i];
        if (c == 0) continue;
        for (int j = 0; j <= df; ++j) {
            int k = i - df + j;
            a[k] = static_cast<int>(((long long)a[k] - (long long)c * f[j]) % p);
            if (a[k] < 0) a[k] += p;
        }
    }
    a.resize(df);
    return a;
}

std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b,
                        const std::vector<int>& f, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<int>((prod[i + j] + (long long)a[i] * b[j]) % p);
    }
    return trim(reduce(std::move(prod), f, p));
}

std::vector<int> powmod(std::vector<int> a, long long e, const std::vector<int>& f, int p) {
    std::vector<int> r = {1};
    a = trim(reduce(std::move(a), f, p));
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, f, p);
        a = mulmod(a, a, f, p);
        e >>= 1;
    }
    return r;
}

std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        // remainder of a by b (b need not be monic)
        long long lead_inv = 1;
        {  // inverse of b's leading coefficient mod p
            long long l = b.back(), r = 1;
            for (int i = 0; i < p - 2; ++i) r = r * l % p;
            lead_inv = r;
        }
        const int db = static_cast<int>(b.size()) - 1;
        for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
            long long c = a[i] * lead_inv % p;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j) {
                int k = i - db + j;
                a[k] = static_cast<int>(((long long)a[k] - c * b[j]) % p);
                if (a[k] < 0) a[k] += p;
            }
        }
        a = trim(std::move(a));
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const std::vector<int>& f, int p) {
    // Rabin: f of degree d is irreducible over GF(p) iff
    //   x^(p^d) == x mod f, and gcd(x^(p^(d/r)) - x, f) = 1 for every prime r | d.
    const int d = static_cast<int>(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;
    const std::vector<int> x = {0, 1};
    auto pow_p = [&](int k) {  // x^(p^k) mod f
        std::vector<int> r = x;
        for (int i = 0; i < k; ++i) r = powmod(std::move(r), p, f, p);
        return r;
    };
    if (trim(pow_p(d)) != trim(x)) return false;
    for (int r = 2; r <= d; ++r) {
        if (d % r != 0 || !is_prime(r)) continue;
        std::vector<int> h = pow_p(d / r);
        // h - x
        if (h.size() < 2) h.resize(2, 0);
        h[1] = (h[1] - 1 + p) % p;
        std::vector<int> g = gcd(h, f, p);
        if (trim(g).size() != 1) return false;
    }
    return true;
}

}  // namespace poly

static elem_t ipow(int p, int d) {
    elem_t r = 1;
    for (int i = 0; i < d; ++i) r *= static_cast<elem_t>(p);
    return r;
}

std::shared_ptr<const FieldSpec> FieldSpec::make(int p, int d,
                                                 std::optional<std::vector<int>> modulus) {
    if (!is_prime(p)) throw NotPrime(p);
    if (d < 1) throw Error("degree must be >= 1");
    std::vector<int> f;
    if (modulus) {
        f = *modulus;
        if (static_cast<int>(f.size()) != d + 1 || f.back() != 1)
            throw Error("modulus must be monic of degree d");
        for (int& c : f) {
            c %= p;
            if (c < 0) c += p;
        }
        if (f.back() != 1) throw Error("modulus must be monic of degree d");
        if (!poly::is_irreducible(f, p)) throw ReducibleModulus();
    } else {
        // lexicographic scan over the low coefficients by integer encoding
        const elem_t count = ipow(p, d);
        for (elem_t lo = 0; lo < count; ++lo) {
            f.assign(d + 1, 0);
            elem_t t = lo;
            for (int i = 0; i < d; ++i) {
                f[i] = static_cast<int>(t % p);
                t /= p;
            }
            f[d] = 1;
            if (poly::is_irreducible(f, p)) break;
            f.clear();
        }
        assert(!f.empty());  // irreducibles of every degree exist
    }
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, d, std::move(f)));
}

FieldSpec::FieldSpec(int p, int d, std::vector<int> modulus)
    : p_(p), d_(d), order_(ipow(p, d)), modulus_(std::move(modulus)) {
    build_tables();
}

std::vector<int> FieldSpec::decode(elem_t a) const {
    std::vector<int> c(d_);
    for (int i = 0; i < d_; ++i) {
        c[i] = static_cast<int>(a % p_);
        a /= p_;
    }
    return c;
}

elem_t FieldSpec::encode(const std::vector<int>& coeffs) const {
    elem_t a = 0;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        int c = coeffs[i] % p_;
        if (c < 0) c += p_;
        a = a * p_ + static_cast<elem_t>(c);
    }
    return a;
}

elem_t FieldSpec::add(elem_t a, elem_t b) const {
    if (p_ == 2) return a ^ b;
    elem_t r = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        int s = static_cast<int>(a % p_) + static_cast<int>(b % p_);
        if (s >= p_) s -= p_;
        r += static_cast<elem_t>(s) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

elem_t FieldSpec::neg(elem_t a) const {
    if (p_ == 2) return a;
    elem_t r = 0, mult = 1;
    for (int i = 0; i < d_; ++i) {
        int c = static_cast<int>(a % p_);
        r += static_cast<elem_t>(c == 0 ? 0 : p_ - c) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

elem_t FieldSpec::sub(elem_t a, elem_t b) const { return add(a, neg(b)); }

elem_t FieldSpec::mul(elem_t a, elem_t b) const {
    if (a == 0 || b == 0) return 0;
    if (has_tables_) return antilog_[log_[a] + log_[b]];
    return encode(poly::mulmod(decode(a), decode(b), modulus_, p_));
}

elem_t FieldSpec::inv(elem_t a) const {
    if (a == 0) throw DivisionByZero();
    if (has_tables_) {
        const std::int32_t n = static_cast<std::int32_t>(order_) - 1;
        return antilog_[(n - log_[a]) % n];
    }
    return pow(a, static_cast<long long>(order_) - 2);
}

elem_t FieldSpec::pow(elem_t a, long long k) const {
    const long long n = static_cast<long long>(order_) - 1;
    if (a == 0) {
        if (k < 0) throw DivisionByZero();
        return k == 0 ? 1 : 0;
    }
    k %= n;
    if (k < 0) k += n;
    if (has_tables_) return antilog_[static_cast<std::size_t>(log_[a] * k % n)];
    elem_t r = 1, base = a;
    while (k > 0) {
        if (k & 1) r = mul(r, base);
        base = mul(base, base);
        k >>= 1;
    }
    return r;
}

elem_t FieldSpec::frobenius(elem_t a, elem_t q) const {
    // q must be p^j with j <= d
    elem_t t = q;
    int j = 0;
    while (t > 1 && t % p_ == 0) {
        t /= p_;
        ++j;
    }
    if (t != 1 || j > d_) throw Error("frobenius power must be p^j with j <= d");
    return pow(a, static_cast<long long>(q));
}

bool FieldSpec::same_field(const FieldSpec& o) const {
    return p_ == o.p_ && d_ == o.d_ && modulus_ == o.modulus_;
}

void FieldSpec::build_tables() {
    const elem_t n = order_ - 1;

    // order of a candidate is n iff g^(n/r) != 1 for every prime r | n
    std::vector<elem_t> prime_factors;
    {
        elem_t t = n;
        for (elem_t r = 2; r * r <= t; ++r)
            if (t % r == 0) {
                prime_factors.push_back(r);
                while (t % r == 0) t /= r;
            }
        if (t > 1) prime_factors.push_back(t);
    }
    auto raw_pow = [&](elem_t a, elem_t e) {
        elem_t r = 1;
        while (e > 0) {
            if (e & 1) r = encode(poly::mulmod(decode(r), decode(a), modulus_, p_));
            a = encode(poly::mulmod(decode(a), decode(a), modulus_, p_));
            e >>= 1;
        }
        return r;
    };
    generator_ = 1;
    if (n > 1) {
        for (elem_t g = 2; g < order_; ++g) {
            bool primitive = true;
            for (elem_t r : prime_factors)
                if (raw_pow(g, n / r) == 1) {
                    primitive = false;
                    break;
                }
            if (primitive) {
                generator_ = g;
                break;
            }
        }
    }

    if (order_ > (1u << 16)) return;  // schoolbook fallback above table range

    log_.assign(order_, 0);
    antilog_.assign(2 * n + 1, 1);
    elem_t x = 1;
    for (elem_t k = 0; k < n; ++k) {
        antilog_[k] = x;
        antilog_[k + n] = x;
        log_[x] = static_cast<std::int32_t>(k);
        x = encode(poly::mulmod(decode(x), decode(generator_), modulus_, p_));
    }
    has_tables_ = true;
}

}  // namespace isotope
