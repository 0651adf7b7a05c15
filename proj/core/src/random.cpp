#include "cddo/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cddo {

double RandomStream::uniform(double a, double b) {
    const double value = a + (b - a) * uniform01();
    // a + (b - a) * u can round up to b when u is close to 1.
    return value < b ? value : (a < b ? std::nextafter(b, a) : a);
}

std::size_t RandomStream::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    // Rejection sampling over the largest multiple of n.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t draw = 0;
    do {
        draw = engine_();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % bound);
}

}  // namespace cddo
