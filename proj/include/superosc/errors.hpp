#pragma once

#include <stdexcept>
#include <string>

namespace superosc {

// Outcome classes double as CLI exit codes.
enum class ErrorClass {
    Parse        = 2,  // malformed input files / unknown names
    Precondition = 3,  // violated construction hypotheses
    Numeric      = 4,  // overflow, non-convergence, exhausted precision
    Verification = 5,  // a checked claim failed
};

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }

private:
    ErrorClass cls_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

struct PreconditionViolation : Error {
    explicit PreconditionViolation(const std::string& what) : Error(ErrorClass::Precondition, what) {}
};

struct DuplicateFrequency : PreconditionViolation {
    explicit DuplicateFrequency(const std::string& what) : PreconditionViolation(what) {}
};

struct ImageBoundViolation : PreconditionViolation {
    explicit ImageBoundViolation(const std::string& what) : PreconditionViolation(what) {}
};

struct HypothesisViolation : PreconditionViolation {
    explicit HypothesisViolation(const std::string& what) : PreconditionViolation(what) {}
};

struct UnknownSymbol : ParseError {
    explicit UnknownSymbol(const std::string& what) : ParseError(what) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

struct QuadratureNonConvergence : Error {
    explicit QuadratureNonConvergence(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

struct NearZeroSignal : Error {
    explicit NearZeroSignal(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

struct StencilOverflow : Error {
    explicit StencilOverflow(const std::string& what) : Error(ErrorClass::Numeric, what) {}
};

}  // namespace superosc
