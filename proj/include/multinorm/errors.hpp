#pragma once

#include <stdexcept>
#include <string>

namespace multinorm {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data: bad JSON shape, unknown kinds, invalid constructor
// arguments coming from files. CLI exit code 2.
struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error(msg) {}
};

// Invalid arguments at API level (p < 1, empty part lists, bad indices).
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// A documented operation precondition does not hold (x inside K,
// uncertified family where certification is required). CLI exit code 3.
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// Norm pair/family failed the pointwise-ordering certification.
struct OrderingError : PreconditionError {
    explicit OrderingError(const std::string& msg) : PreconditionError(msg) {}
};

// A discretization would exceed the configured point budget.
struct BudgetError : PreconditionError {
    explicit BudgetError(const std::string& msg) : PreconditionError(msg) {}
};

// The solver produced results that fail an internal consistency check
// (e.g. chain nesting beyond tolerance). Never silently suppressed.
struct SolverAccuracyError : Error {
    explicit SolverAccuracyError(const std::string& msg) : Error(msg) {}
};

// The sum objective's optimum sits measurably above the sum of the separate
// optima, i.e. the norms attain their minima at separated points and no
// common nearest point exists on this instance. This is a property of the
// instance, not of the solver; it is detected and surfaced, never averaged
// away. Carries the measured gap.
struct CommonMinimizerDefect : SolverAccuracyError {
    double defect;
    CommonMinimizerDefect(const std::string& msg, double gap)
        : SolverAccuracyError(msg), defect(gap) {}
};

// Vector dimension disagreement between operands.
struct DimensionError : InvalidArgument {
    explicit DimensionError(const std::string& msg) : InvalidArgument(msg) {}
};

}  // namespace multinorm
