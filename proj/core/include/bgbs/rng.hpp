/*
 * Copyright 2026 The bgbs authors
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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace bgbs {

/// Counter-based splittable random stream.  A value type: two streams with
/// the same (seed, stream_index) produce identical sequences regardless of
/// thread count or call interleaving elsewhere.  Each 64-bit output is a
/// stateless mix of (seed, stream_index, counter), so parallel tasks simply
/// take disjoint stream indices.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : key_(mix(mix(seed) ^ 0x9e3779b97f4a7c15ULL) ^ mix(stream_index + 0x632be59bd9b4e019ULL)) {}

    std::uint64_t seed_key() const { return key_; }

    std::uint64_t next_u64() { return mix(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL); }

    /// Uniform in (0, 1]; never exactly 0 so log() is safe.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard real normal via the Box-Muller transform (pairs cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Standard complex normal: E[z] = 0, E[|z|^2] = 1 (real and imaginary
    /// parts each N(0, 1/2)).
    std::complex<double> gaussian_complex() {
        constexpr double half = 0.7071067811865476;  // 1/sqrt(2)
        const double re = gaussian() * half;
        const double im = gaussian() * half;
        return {re, im};
    }

    /// Geometric count of failures before success: P(n) = (1-p) p^n for the
    /// given continuation probability p in [0, 1).
    std::uint64_t geometric(double p) {
        if (p <= 0.0) return 0;
        const double u = uniform();
        return static_cast<std::uint64_t>(std::floor(std::log(u) / std::log(p)));
    }

private:
    static constexpr std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return x;
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bgbs
