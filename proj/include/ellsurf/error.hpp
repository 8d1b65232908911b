#pragma once

#include <stdexcept>
#include <string>

namespace ellsurf {

/// Domain error with a stable machine-readable code ("NotElliptic",
/// "OffCurve", ...) next to the human message. The CLI maps codes to
/// exit status 1 and a structured JSON error object.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
    throw Error(code, msg);
}

inline void check(bool ok, const std::string& code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

} // namespace ellsurf
