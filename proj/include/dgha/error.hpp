#pragma once

#include <stdexcept>
#include <string>

namespace dgha {

/* Engine errors carry a stable machine-readable code alongside the message.
 * Validation problems are reported through ValidationReport instead; only
 * contract violations (bad dimensions, bad preconditions) throw. */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline void require(bool cond, const char* code, const std::string& msg)
{
    if (!cond)
        throw Error(code, msg);
}

}  // namespace dgha
