#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace anskit {

// Malformed input: bad documents, unknown letters, words outside a language.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A structural hypothesis of an operation does not hold (prefix-closure,
// finiteness, supported semiring, exhausted budget).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultBudget = 100000;

// Reads ANSKIT_BUDGET, falling back to the default when unset or unparsable.
inline std::size_t budget_from_env() {
    const char* raw = std::getenv("ANSKIT_BUDGET");
    if (raw == nullptr || *raw == '\0') return kDefaultBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) return kDefaultBudget;
    return static_cast<std::size_t>(v);
}

}  // namespace anskit
