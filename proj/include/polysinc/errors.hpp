#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polysinc {

// Argument outside the mathematical domain of an operation (bad interval,
// evaluation point outside the box, random parameter outside [-1,1], ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Coefficient expression could not be parsed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbolError : public ParseError {
public:
    UnknownSymbolError(const std::string& symbol, std::size_t position)
        : ParseError("unknown symbol '" + symbol + "'", position), symbol_(symbol) {}

    const std::string& symbol() const noexcept { return symbol_; }

private:
    std::string symbol_;
};

// Configuration document violates the schema or a parameter range.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Random diffusion coefficient is not bounded away from zero.
class NonCoerciveError : public std::runtime_error {
public:
    NonCoerciveError(double floor, double x, double y);

    double floor() const noexcept { return floor_; }
    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

private:
    double floor_;
    double x_;
    double y_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Linear algebra failure: rank deficiency, non-finite data, no convergence.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RankDeficientError : public NumericError {
public:
    RankDeficientError(std::size_t rank, std::size_t cols)
        : NumericError("least-squares matrix is rank deficient (rank " + std::to_string(rank) +
                       " < " + std::to_string(cols) + " columns)"),
          rank_(rank) {}

    std::size_t rank() const noexcept { return rank_; }

private:
    std::size_t rank_;
};

}  // namespace polysinc
