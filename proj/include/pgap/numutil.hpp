#pragma once

#include <cstdint>
#include <cmath>

namespace pgap {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

inline bool is_perfect_square(std::uint64_t n) {
    std::uint64_t r = isqrt_u64(n);
    return r * r == n;
}

}  // namespace pgap
