#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fockport {

/// Raised for out-of-range spins/projections, parity mismatches and other
/// violated preconditions on numeric inputs.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A number-sum outcome with zero probability; C(q) is undefined there.
class UnreachableOutcome : public std::runtime_error {
public:
    explicit UnreachableOutcome(int q)
        : std::runtime_error("outcome q=" + std::to_string(q) + " has zero probability"), q_(q) {}

    [[nodiscard]] int q() const noexcept { return q_; }

private:
    int q_;
};

/// Sweep specification rejected; carries one "field: reason" entry per problem.
class SpecError : public std::invalid_argument {
public:
    explicit SpecError(std::vector<std::string> issues)
        : std::invalid_argument(join(issues)), issues_(std::move(issues)) {}

    [[nodiscard]] const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues) {
        std::string out = "invalid sweep spec";
        for (const auto& i : issues) out += "; " + i;
        return out;
    }

    std::vector<std::string> issues_;
};

}  // namespace fockport
