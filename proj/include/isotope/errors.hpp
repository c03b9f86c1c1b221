#pragma once

#include <stdexcept>
#include <string>

namespace isotope {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NotPrime : Error {
    explicit NotPrime(long long p) : Error("not a prime: " + std::to_string(p)) {}
};

struct ReducibleModulus : Error {
    ReducibleModulus() : Error("modulus polynomial is reducible") {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in finite field") {}
};

struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different fields") {}
};

struct NormNotOne : Error {
    NormNotOne() : Error("element does not have norm 1") {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& what = "element is not invertible") : Error(what) {}
};

struct NonGeneratingPower : Error {
    explicit NonGeneratingPower(int i, int n)
        : Error("tau^" + std::to_string(i) + " does not generate the Galois group of order " +
                std::to_string(n)) {}
};

struct SingularOperator : Error {
    SingularOperator() : Error("twisted operator has reduced norm 0") {}
};

struct SingularSystem : Error {
    SingularSystem() : Error("internal: coefficient-extraction system is singular") {}
};

struct SingularMap : Error {
    SingularMap() : Error("linear map is singular") {}
};

struct SingularAlgebra : Error {
    SingularAlgebra() : Error("algebra is singular (no regular pair)") {}
};

struct NotAField : Error {
    explicit NotAField(const std::string& why) : Error("heart is not a field: " + why) {}
};

struct NoRoot : Error {
    NoRoot() : Error("internal: minimal polynomial has no root in K") {}
};

struct ExtensionMismatch : Error {
    ExtensionMismatch() : Error("operands belong to different extensions") {}
};

struct TypeMismatch : Error {
    TypeMismatch() : Error("presentations have different canonical types") {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

}  // namespace isotope
