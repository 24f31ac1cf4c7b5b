#ifndef ISAR_ERRORS_HPP
#define ISAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace isar {

struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Violation of a required matrix structure (Hermitian lag symmetry etc).
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model order incompatible with the data geometry (MUSIC / Cadzow).
struct OrderError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside an iterative solver; carries the iteration index.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, int iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration(iteration) {}
    int iteration;
};

}  // namespace isar

#endif
