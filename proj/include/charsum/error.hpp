#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace charsum {

enum class ErrorKind {
    NotOddPrime,
    CapacityExceeded,
    ZeroInverse,
    IndexOutOfRange,
    MixedOrder,
    PrincipalCharacter,
    ShiftNotCoprime,
    DegenerateShifts,
    ZeroInD,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this one exception type; callers
// branch on kind() rather than on the message text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Largest p accepted by make_ctx (tables are built eagerly).
inline constexpr std::uint64_t kMaxFieldPrime = 10'000'000;
// Largest root order m for which exact cyclotomic arithmetic is offered.
inline constexpr std::uint64_t kMaxExactOrder = 10'000;

}  // namespace charsum
