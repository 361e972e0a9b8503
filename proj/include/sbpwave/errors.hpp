#pragma once

#include <stdexcept>
#include <string>

namespace sbpwave {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedOrder : public Error {
public:
    explicit UnsupportedOrder(int order)
        : Error("unsupported operator order " + std::to_string(order)) {}
};

class GridTooSmall : public Error {
public:
    GridTooSmall(int n, int min_n)
        : Error("grid has " + std::to_string(n) + " points, need at least " +
                std::to_string(min_n)),
          minimal_n(min_n) {}
    int minimal_n;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

class LayoutMismatch : public Error {
public:
    explicit LayoutMismatch(const std::string& what) : Error(what) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& what) : Error(what) {}
};

class UnstablePenalty : public Error {
public:
    UnstablePenalty(double tau, double threshold)
        : Error("penalty " + std::to_string(tau) + " below stability threshold " +
                std::to_string(threshold)) {}
};

// Raised when a time integration produces NaN/Inf, signalling instability.
class NonFiniteState : public Error {
public:
    NonFiniteState(long step, double max_abs)
        : Error("non-finite state at step " + std::to_string(step) +
                " (max |u| = " + std::to_string(max_abs) + ")"),
          step(step), max_abs(max_abs) {}
    long step;
    double max_abs;
};

class UnsupportedPair : public Error {
public:
    explicit UnsupportedPair(const std::string& what) : Error(what) {}
};

class RankDeficiencyNotOne : public Error {
public:
    explicit RankDeficiencyNotOne(int deficiency)
        : Error("coupling scalar undefined: rank deficiency is " +
                std::to_string(deficiency) + ", not 1"),
          deficiency(deficiency) {}
    int deficiency;
};

class InvalidSymbol : public Error {
public:
    explicit InvalidSymbol(double symbol)
        : Error("Fourier symbol must be nonpositive, got " + std::to_string(symbol)) {}
};

class NonPositiveError : public Error {
public:
    explicit NonPositiveError(const std::string& what) : Error(what) {}
};

} // namespace sbpwave
