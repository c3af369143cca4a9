#pragma once

#include <stdexcept>
#include <string>

namespace crn {

/// Stable CLI exit codes. Library errors carry the category they map to.
enum class ExitCode : int {
    ok = 0,
    validation = 1,
    io = 2,
    condition = 3,
    component = 4,
    simulation = 5,
    usage = 64,
    internal = 70,
};

class Error : public std::runtime_error {
public:
    Error(ExitCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
    ExitCode exit_code() const { return code_; }

private:
    ExitCode code_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(ExitCode::io, message) {}
};

/// Positioned parse failure (1-based line/column).
class SyntaxError : public Error {
public:
    SyntaxError(int line, int col, const std::string& message)
        : Error(ExitCode::validation,
                "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + message),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Rate expression evaluated to something outside the kinetics contract
/// (negative value, division by zero, positivity mismatch with the reactant).
class ExprEvaluationError : public Error {
public:
    explicit ExprEvaluationError(const std::string& message) : Error(ExitCode::validation, message) {}
};

class NotNonInteracting : public Error {
public:
    explicit NotNonInteracting(const std::string& complex_text)
        : Error(ExitCode::validation, "complex " + complex_text + " carries more than one tagged molecule"),
          complex_text_(complex_text) {}
    const std::string& witness() const { return complex_text_; }

private:
    std::string complex_text_;
};

class Condition1Violated : public Error {
public:
    explicit Condition1Violated(const std::string& witness)
        : Error(ExitCode::condition, "cycle with nonzero net effect: " + witness), witness_(witness) {}
    const std::string& witness() const { return witness_; }

private:
    std::string witness_;
};

/// Search budget exhausted before a definite answer; never coerced to "no".
class CapExceeded : public Error {
public:
    explicit CapExceeded(const std::string& what_cap) : Error(ExitCode::condition, what_cap + " cap exceeded") {}
};

class ChainNotFinite : public Error {
public:
    explicit ChainNotFinite(const std::string& message) : Error(ExitCode::condition, message) {}
};

class NotClosed : public Error {
public:
    explicit NotClosed(const std::string& message) : Error(ExitCode::component, message) {}
};

class NotReversible : public Error {
public:
    explicit NotReversible(const std::string& message) : Error(ExitCode::component, message) {}
};

class EmptySlice : public Error {
public:
    explicit EmptySlice(const std::string& message) : Error(ExitCode::component, message) {}
};

class SingularBeyondNullity : public Error {
public:
    explicit SingularBeyondNullity(const std::string& message) : Error(ExitCode::component, message) {}
};

class BoundExceeded : public Error {
public:
    explicit BoundExceeded(const std::string& message) : Error(ExitCode::component, message) {}
};

class OverflowGuard : public Error {
public:
    explicit OverflowGuard(const std::string& message) : Error(ExitCode::component, message) {}
};

class ExplosionGuard : public Error {
public:
    explicit ExplosionGuard(const std::string& message) : Error(ExitCode::simulation, message) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message) : Error(ExitCode::usage, message) {}
};

class InternalError : public Error {
public:
    explicit InternalError(const std::string& message) : Error(ExitCode::internal, message) {}
};

}  // namespace crn
