#ifndef CLASSEX_COMMON_HPP
#define CLASSEX_COMMON_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace classex {

inline constexpr std::uint32_t kCodeVersion = 1;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an enumeration or search exceeds its configured budget
/// (element limit, memory ceiling, product budget). CLI maps it to exit 3.
struct BudgetError : Error {
    using Error::Error;
};

/// Raised for malformed user input (bad parameters, bad files). Exit 64.
struct InputError : Error {
    using Error::Error;
};

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::string& s,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
    return fnv1a64(s.data(), s.size(), seed);
}

std::string to_hex(std::uint64_t v);

}  // namespace classex

#endif
