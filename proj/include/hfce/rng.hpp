// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace hfce
{

using Rng = std::mt19937_64;

// Independent stream keyed by a base seed and a tuple of tags (trial index, stream id, grid cell...).
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags = {})
{
    std::vector<std::uint32_t> words;
    words.reserve(2 + 2 * tags.size());
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    for (auto t : tags)
        push(t);
    std::seed_seq seq(words.begin(), words.end());
    return Rng(seq);
}

// Uniform on the open interval (lo, hi).
inline double uniform_open(Rng& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> dist(lo, hi);
    double x = dist(rng);
    while (x <= lo)
        x = dist(rng);
    return x;
}

} // namespace hfce
