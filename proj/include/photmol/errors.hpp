#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace photmol {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag that the CLI forwards in its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

/// Bose factor evaluated exactly at its pole (omega == mu).
class DistributionPole : public Error {
public:
    explicit DistributionPole(const std::string& what) : Error("distribution_pole", what) {}
};

/// Grid does not hold enough of a function's mass or support.
class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& what) : Error("grid_coverage", what) {}
};

/// Transform input is not small enough at the grid edges.
class EdgeTruncation : public Error {
public:
    explicit EdgeTruncation(const std::string& what) : Error("edge_truncation", what) {}
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved, double requested)
        : Error("quadrature_tolerance", what), achieved_(achieved), requested_(requested) {}

    double achieved() const noexcept { return achieved_; }
    double requested() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

class NoBracket : public Error {
public:
    explicit NoBracket(const std::string& what) : Error("no_bracket", what) {}
};

/// Pair propagator evaluated where both the Bose factor and the
/// two-particle energy denominator are singular.
class SingularPropagator : public Error {
public:
    explicit SingularPropagator(const std::string& what) : Error("singular_pair_propagator", what) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension_mismatch", what) {}
};

}  // namespace photmol
