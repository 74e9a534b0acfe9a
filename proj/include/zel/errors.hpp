#pragma once

#include <stdexcept>
#include <string>

namespace zel {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

class NotDivisible : public Error {
public:
    explicit NotDivisible(const std::string& what = "exact division impossible") : Error(what) {}
};

class NotAUnit : public Error {
public:
    explicit NotAUnit(const std::string& what = "element is not a unit") : Error(what) {}
};

class InvalidModulus : public Error {
public:
    explicit InvalidModulus(const std::string& what = "modulus must be a nonzero non-unit") : Error(what) {}
};

class ModulusMismatch : public Error {
public:
    explicit ModulusMismatch(const std::string& what = "operands live in different residue rings") : Error(what) {}
};

class Unsolvable : public Error {
public:
    explicit Unsolvable(const std::string& what = "linear equation has no solution") : Error(what) {}
};

class RingTooLarge : public Error {
public:
    explicit RingTooLarge(const std::string& what = "residue ring exceeds the enumeration bound") : Error(what) {}
};

class MalformedChain : public Error {
public:
    explicit MalformedChain(const std::string& what = "diagonal is not a divisor chain pattern") : Error(what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what = "matrix dimensions do not agree") : Error(what) {}
};

class NotInvertible : public Error {
public:
    explicit NotInvertible(const std::string& what = "matrix determinant is not a unit") : Error(what) {}
};

class SamplingExhausted : public Error {
public:
    explicit SamplingExhausted(const std::string& what = "sampler retry budget exhausted") : Error(what) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& what = "index outside the valid range") : Error(what) {}
};

class SizeOutOfRange : public Error {
public:
    explicit SizeOutOfRange(const std::string& what = "size outside the supported range") : Error(what) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& what = "operation precondition violated") : Error(what) {}
};

class MalformedInput : public Error {
public:
    explicit MalformedInput(const std::string& what = "malformed input") : Error(what) {}
};

} // namespace zel
