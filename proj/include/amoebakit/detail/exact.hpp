#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace amoebakit::detail {

using i128 = __int128;

inline i128 cross2(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
    return static_cast<i128>(ax) * by - static_cast<i128>(ay) * bx;
}

// Sign of the 3x3 determinant with rows a, b, c.
inline int sign_det3(const i128 a[3], const i128 b[3], const i128 c[3]) {
    const i128 d = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
                   a[2] * (b[0] * c[1] - b[1] * c[0]);
    return (d > 0) - (d < 0);
}

inline int sign(i128 v) { return (v > 0) - (v < 0); }

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace amoebakit::detail
