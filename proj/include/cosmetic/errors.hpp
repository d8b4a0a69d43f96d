#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cosmetic {

// Bad caller input: malformed vectors, zero slopes, mixed fields.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested precision cannot support the computation.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Gluing data fails schema or rank validation.
class MalformedSystem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis of a lemma or theorem does not hold for the input.
class HypothesisError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A proven statement failed on a valid instance. Must never fire.
class LemmaViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Branch tracking saw a jump too large to continue a logarithm.
class StepSizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Newton or continuation failed. Carries the last iterate as decimal strings (re, im).
class NoConvergence : public std::runtime_error {
public:
    NoConvergence(const std::string& what, std::vector<std::pair<std::string, std::string>> last)
        : std::runtime_error(what), last_(std::move(last)) {}
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
    const std::vector<std::pair<std::string, std::string>>& last_iterate() const { return last_; }

private:
    std::vector<std::pair<std::string, std::string>> last_;
};

}  // namespace cosmetic
