#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cenreg {

std::uint64_t splitmix64(std::uint64_t x);

// Mixes a master seed with stream coordinates (cell, replication, purpose...).
// Different coordinate tuples give statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords);

// mt19937_64 plus hand-rolled transforms so draws are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }
    // Uniform on [0,1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal();
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace cenreg
