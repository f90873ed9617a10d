/* Copyright 2026 trojansim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef TROJANSIM_RNG_HPP
#define TROJANSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace trojansim {

// splitmix64 finalizer. Full-avalanche 64-bit mix; also the basis of the
// counter-based per-slot uniforms below.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Derives the seed of logical stream `stream` from a master seed. Streams for
// distinct indices are decorrelated; equal inputs always give equal outputs,
// so run k is replayable from (master_seed, k) alone.
constexpr std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t stream) noexcept
{
    return mix64(master_seed ^ mix64(stream + 0x6a09e667f3bcc909ull));
}

// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double bits_to_unit_double(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Small sequential generator: splitmix64. Used for per-run setup draws
// (infiltrator choice, visit periods) where a stream is the natural shape.
// Deliberately not std::mt19937_64 behind std::*_distribution: the stdlib
// distributions are implementation-defined, and bit-stable output across
// compilers is part of this library's contract.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next_u64() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1).
    double uniform() noexcept { return bits_to_unit_double(next_u64()); }

    // Uniform integer on [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t n) noexcept
    {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    // Exponential with the given mean; log1p keeps precision for small u.
    double exponential(double mean) noexcept { return -mean * std::log1p(-uniform()); }

    bool bernoulli(double p) noexcept { return uniform() < p; }

private:
    std::uint64_t state_;
};

// Purpose tags for per-slot uniforms. Each (run, step, node, purpose) slot has
// its own deterministic uniform, so a decision's randomness does not depend on
// which other decisions were drawn before it.
enum class Draw : std::uint64_t {
    immunize = 1,
    infect   = 2,
    recover  = 3,
};

// Counter-based uniform for one decision slot. Two mixing rounds over the
// combined key; equal keys give equal values on every platform.
inline double slot_uniform(std::uint64_t run_seed, std::uint32_t t, std::uint32_t node, Draw purpose) noexcept
{
    std::uint64_t key = run_seed ^ mix64((std::uint64_t{t} << 32) | node);
    key               = mix64(key ^ static_cast<std::uint64_t>(purpose));
    return bits_to_unit_double(key);
}

} // namespace trojansim

#endif
