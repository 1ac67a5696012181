#pragma once

#include <cstdint>
#include <random>

#include "chernflow/types.hpp"

namespace chernflow {

/// Derive an independent stream seed from (seed, stream).  Work items seed
/// their own engines through this, so results do not depend on how the items
/// are scheduled across threads.
std::uint64_t subseed(std::uint64_t seed, std::uint64_t stream);

/// Unit vector uniform on the complex (2n-1)-sphere.
Vector random_unit_vector(std::mt19937_64& eng, int n);

/// Random point with direction uniform on the sphere and |z| uniform in
/// [rmin, rmax].
Vector random_point(std::mt19937_64& eng, int n, double rmin, double rmax);

}  // namespace chernflow
