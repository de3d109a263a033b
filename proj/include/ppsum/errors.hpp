// errors.hpp
// Exception types shared by every module. The CLI maps each one onto a
// distinct exit status (see cli.hpp).

#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppsum {

// Default ceiling on the memory a single sieve or DP allocation may claim.
inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{1} << 30;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A parameter failed validation. The message names the parameter.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A requested sieve/DP size exceeds the configured memory budget.
class ResourceLimit : public Error {
public:
    ResourceLimit(const std::string& what, std::uint64_t required, std::uint64_t budget)
        : Error(what + ": needs " + std::to_string(required) + " bytes, budget is " +
                std::to_string(budget) + " bytes"),
          required_(required), budget_(budget) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

class CheckpointError : public Error {
public:
    enum class Kind { io, version_mismatch, parameter_mismatch, corrupted };

    CheckpointError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

inline void require_budget(const std::string& what, std::uint64_t required,
                           std::uint64_t budget) {
    if (required > budget) throw ResourceLimit(what, required, budget);
}

}  // namespace ppsum
