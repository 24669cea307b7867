#pragma once

#include <stdexcept>
#include <string>

namespace rsz {

// Exit-code taxonomy used by the CLI: 1 input, 2 precondition, 3 window.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A window of an infinite covering quiver was too narrow for the request.
// Retrying with the reported window is expected to succeed.
struct window_error : std::runtime_error {
    long long needed_jmin;
    long long needed_jmax;
    window_error(const std::string& msg, long long jmin, long long jmax)
        : std::runtime_error(msg), needed_jmin(jmin), needed_jmax(jmax) {}
};

struct arithmetic_overflow : std::runtime_error {
    explicit arithmetic_overflow(const std::string& msg) : std::runtime_error(msg) {}
};

inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw arithmetic_overflow("integer overflow in addition");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw arithmetic_overflow("integer overflow in multiplication");
    return r;
}

inline unsigned long long checked_add_u(unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw arithmetic_overflow("path count overflow");
    return r;
}

} // namespace rsz
