#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ebkit {

/// Error thrown by library operations.  `code()` is a stable machine-readable
/// name ("PoleAtX", "EmptySample", ...); what() carries the human detail.
class EbError : public std::runtime_error {
public:
    EbError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void throw_error(std::string code, const std::string& message) {
    throw EbError(std::move(code), message);
}

}  // namespace ebkit
