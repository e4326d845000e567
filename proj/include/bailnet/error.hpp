#ifndef BAILNET_ERROR_HPP
#define BAILNET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bailnet {

// Status values double as CLI exit codes and C API return codes.
enum class Status : int {
    ok = 0,
    input = 2,
    capacity = 3,
    internal = 4,
};

class Error : public std::runtime_error {
public:
    Error(Status status, const std::string& what) : std::runtime_error(what), status_(status) {}
    Status status() const noexcept { return status_; }

private:
    Status status_;
};

/// Malformed documents, unknown ids, violated preconditions.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(Status::input, what) {}
};

/// Instance too large for the requested method, or wall-clock cap hit.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(Status::capacity, what) {}
};

/// An engine invariant failed at runtime. Always a bug.
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& what) : Error(Status::internal, what) {}
};

const char* status_code_name(Status status) noexcept;

} // namespace bailnet

#endif
