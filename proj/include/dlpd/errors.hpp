#ifndef DLPD_ERRORS_HPP
#define DLPD_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlpd {

/// Bad input: unknown type, invalid rank, malformed word or datum.
class UsageError : public std::invalid_argument
{
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// An enumeration would exceed its configured cap.
class CapacityError : public std::runtime_error
{
public:
    CapacityError(const std::string& what, std::uint64_t predicted)
        : std::runtime_error(what + " (predicted " + std::to_string(predicted) + ")"), predicted_(predicted)
    {}

    std::uint64_t predicted() const noexcept { return predicted_; }

private:
    std::uint64_t predicted_;
};

/// A postcondition that the mathematics guarantees was violated.
class InternalError : public std::logic_error
{
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace dlpd

#endif // DLPD_ERRORS_HPP
