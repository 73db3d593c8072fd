#pragma once

#include <cstdint>
#include <vector>

#include "mwtl/matrix.hpp"

namespace mwtl {

/// Deterministic generator with platform-independent output streams
/// (splitmix64 core; no std::distribution involved).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform in [0,1).
    double uniform();
    /// Standard normal via Box-Muller.
    double normal();
    /// Standard complex normal (independent re/im).
    cplx cnormal();
    /// Haar-ish random unit vector in C^m.
    Vec unit_vector(int m);
    /// Random Hermitian positive definite matrix with condition spread `spread`.
    Mat hermitian_pd(int m, double spread = 4.0);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// m standard basis vectors followed by `extra` seeded unit vectors.
std::vector<Vec> direction_set(int m, int extra, std::uint64_t seed);

}  // namespace mwtl
