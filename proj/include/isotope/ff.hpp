#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "isotope/errors.hpp"

namespace isotope {

using elem_t = std::uint32_t;  // canonical integer encoding of a field element

class FieldElement;

/// GF(p^d) in a fixed polynomial-quotient representation GF(p)[x]/(modulus).
///
/// Elements are identified with their canonical integer encoding
/// enc(a) = sum a_i p^i where a = sum a_i x^i, 0 <= a_i < p.
/// The spec is immutable after construction and safe to share across threads.
class FieldSpec {
public:
    /// Builds GF(p^d). If no modulus is given, picks the lexicographically
    /// smallest irreducible monic polynomial of degree d over GF(p) (ordered
    /// by the integer encoding of the coefficient vector).
    /// Throws NotPrime / ReducibleModulus.
    static std::shared_ptr<const FieldSpec> make(int p, int d,
                                                 std::optional<std::vector<int>> modulus = {});

    int characteristic() const { return p_; }
    int degree() const { return d_; }
    elem_t order() const { return order_; }
    /// Modulus coefficients c_0..c_d, little-endian, c_d = 1.
    const std::vector<int>& modulus() const { return modulus_; }

    // Arithmetic on encodings. All operations are exact.
    elem_t add(elem_t a, elem_t b) const;
    elem_t sub(elem_t a, elem_t b) const;
    elem_t neg(elem_t a) const;
    elem_t mul(elem_t a, elem_t b) const;
    elem_t inv(elem_t a) const;  // throws DivisionByZero on 0
    elem_t pow(elem_t a, long long k) const;
    /// a^q for q = p^j a power of p with j <= d; an automorphism fixing GF(q).
    elem_t frobenius(elem_t a, elem_t q) const;

    /// Coefficient vector of an encoding (little-endian, length d).
    std::vector<int> decode(elem_t a) const;
    elem_t encode(const std::vector<int>& coeffs) const;

    /// Multiplicative generator with the smallest encoding.
    elem_t generator() const { return generator_; }

    bool same_field(const FieldSpec& other) const;

private:
    FieldSpec(int p, int d, std::vector<int> modulus);
    void build_tables();

    int p_ = 0;
    int d_ = 0;
    elem_t order_ = 0;
    std::vector<int> modulus_;
    elem_t generator_ = 0;

    bool has_tables_ = false;            // log/antilog kept while p^d <= 2^16
    std::vector<std::int32_t> log_;      // log_[enc] for enc != 0
    std::vector<elem_t> antilog_;        // antilog_[k] = g^k, k in [0, 2(order-1))
};

/// An element of GF(p^d): its encoding plus the spec it lives in.
/// Value type; comparison and arithmetic require matching specs.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldSpec* spec, elem_t value) : spec_(spec), v_(value) {}

    elem_t value() const { return v_; }
    const FieldSpec* spec() const { return spec_; }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.spec_, a.spec_->add(a.v_, b.v_)};
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.spec_, a.spec_->sub(a.v_, b.v_)};
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return {a.spec_, a.spec_->mul(a.v_, b.v_)};
    }
    FieldElement operator-() const { return {spec_, spec_->neg(v_)}; }
    FieldElement inv() const { return {spec_, spec_->inv(v_)}; }
    FieldElement pow(long long k) const { return {spec_, spec_->pow(v_, k)}; }
    FieldElement frobenius(elem_t q) const { return {spec_, spec_->frobenius(v_, q)}; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

private:
    void check(const FieldElement& other) const {
        if (spec_ != other.spec_ && !spec_->same_field(*other.spec_)) throw FieldMismatch();
    }

    const FieldSpec* spec_ = nullptr;
    elem_t v_ = 0;
};

namespace poly {
// Dense polynomials over GF(p), little-endian coefficient vectors.
// Utility layer for modulus selection and irreducibility testing.

std::vector<int> trim(std::vector<int> a);
std::vector<int> mulmod(const std::vector<int>& a, const std::vector<int>& b,
                        const std::vector<int>& f, int p);
std::vector<int> powmod(std::vector<int> a, long long e, const std::vector<int>& f, int p);
std::vector<int> gcd(std::vector<int> a, std::vector<int> b, int p);
bool is_irreducible(const std::vector<int>& f, int p);

}  // namespace poly

bool is_prime(long long n);

}  // namespace isotope
