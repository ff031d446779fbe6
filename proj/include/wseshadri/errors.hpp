#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wseshadri {

/* Every recoverable domain failure carries a stable machine-readable code
 * (used by the CLI for structured error JSON and exit status 1) plus a
 * human-readable message. */
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw DomainError(code, message);
}

inline void require(bool ok, const std::string& code, const std::string& message) {
    if (!ok) fail(code, message);
}

} // namespace wseshadri
