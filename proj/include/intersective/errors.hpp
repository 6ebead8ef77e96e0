#pragma once

#include <stdexcept>
#include <string>

namespace intersective {

// Domain-specific failures. Everything derives from std::runtime_error so
// callers that do not care about the distinction can catch one type.

struct ZeroModP : std::runtime_error {
    explicit ZeroModP(const std::string& m) : std::runtime_error(m) {}
};

struct NonMonicInput : std::runtime_error {
    explicit NonMonicInput(const std::string& m) : std::runtime_error(m) {}
};

struct ConstantPolynomial : std::runtime_error {
    explicit ConstantPolynomial(const std::string& m) : std::runtime_error(m) {}
};

struct SumMismatch : std::runtime_error {
    explicit SumMismatch(const std::string& m) : std::runtime_error(m) {}
};

struct DegenerateElimination : std::runtime_error {
    explicit DegenerateElimination(const std::string& m) : std::runtime_error(m) {}
};

// An elimination step exceeded the monomial budget; records which step.
struct EliminationBlowup : std::runtime_error {
    std::string step;
    EliminationBlowup(const std::string& step_, const std::string& m)
        : std::runtime_error(m), step(step_) {}
};

struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& m) : std::runtime_error(m) {}
};

struct ResourceExhausted : std::runtime_error {
    explicit ResourceExhausted(const std::string& m) : std::runtime_error(m) {}
};

struct NotSquarefree : std::runtime_error {
    explicit NotSquarefree(const std::string& m) : std::runtime_error(m) {}
};

struct SharedFactor : std::runtime_error {
    explicit SharedFactor(const std::string& m) : std::runtime_error(m) {}
};

struct IrreducibilityFailure : std::runtime_error {
    explicit IrreducibilityFailure(const std::string& m) : std::runtime_error(m) {}
};

struct IncompleteFactorization : std::runtime_error {
    explicit IncompleteFactorization(const std::string& m) : std::runtime_error(m) {}
};

} // namespace intersective
