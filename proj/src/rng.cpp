#include "progcode/rng.hpp"

#include <cmath>

namespace progcode {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ mix64(a + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ mix64(b + 0x8cb92ba72f3d8dd7ULL));
    return RngStream(h);
}

double RngStream::standard_normal() {
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

}  // namespace progcode
