#pragma once

#include <stdexcept>
#include <string>

namespace mph {

// Malformed input: bad file syntax, failed validation, unusable arguments.
// The CLI maps this to exit code 2.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
    parse_error(const std::string& msg, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg) {}
};

// A computed internal invariant failed. This is always a bug or a box that is
// too small; the CLI maps it to exit code 3.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

inline void check(bool cond, const std::string& msg) {
    if (!cond) throw invariant_error(msg);
}

}  // namespace mph
