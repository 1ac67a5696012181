#include "chernflow/rng.hpp"

namespace chernflow {

std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 of (seed ^ golden-ratio-scrambled stream)
    std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Vector random_unit_vector(std::mt19937_64& eng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(n);
    double norm2 = 0.0;
    do {
        for (int i = 0; i < n; ++i) {
            v(i) = Complex(gauss(eng), gauss(eng));
        }
        norm2 = v.squaredNorm();
    } while (norm2 < 1e-12);
    return v / std::sqrt(norm2);
}

Vector random_point(std::mt19937_64& eng, int n, double rmin, double rmax) {
    std::uniform_real_distribution<double> radius(rmin, rmax);
    Vector dir = random_unit_vector(eng, n);
    return radius(eng) * dir;
}

}  // namespace chernflow
