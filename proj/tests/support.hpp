#ifndef DSPKIT_TESTS_SUPPORT_HPP
#define DSPKIT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dspkit/jnf.hpp"

namespace dspkit::test_support {

/// Uniform-ish random partition of n: random cuts, then sorted.
inline Partition random_partition(std::int64_t n, std::mt19937_64& rng)
{
    std::vector<std::int64_t> parts;
    std::int64_t left = n;
    while (left > 0) {
        std::uniform_int_distribution<std::int64_t> d(1, left);
        auto x = d(rng);
        parts.push_back(x);
        left -= x;
    }
    return normalize(parts);
}

inline MultiplicityVector random_mv(std::int64_t n, std::mt19937_64& rng)
{
    return MultiplicityVector(random_partition(n, rng));
}

/// Random eigenvalue multiplicities, each split into random Jordan blocks.
inline Jnf random_jnf(std::int64_t n, std::mt19937_64& rng)
{
    std::vector<Partition> slots;
    for (auto m : random_partition(n, rng))
        slots.push_back(random_partition(m, rng));
    return Jnf(std::move(slots));
}

inline JnfTuple random_tuple(std::int64_t n, std::size_t entries, std::mt19937_64& rng, bool diagonal)
{
    std::vector<Jnf> e;
    for (std::size_t i = 0; i < entries; ++i)
        e.push_back(diagonal ? Jnf::diagonal(random_mv(n, rng)) : random_jnf(n, rng));
    return JnfTuple(std::move(e));
}

/// Calls f on every multiset of `count` items drawn from [0, size).
template <class F>
void for_each_multiset(std::size_t size, std::size_t count, F&& f)
{
    if (size == 0)
        return;
    std::vector<std::size_t> idx(count, 0);
    for (;;) {
        f(idx);
        std::size_t j = count;
        while (j > 0 && idx[j - 1] == size - 1)
            --j;
        if (j == 0)
            return;
        ++idx[j - 1];
        for (std::size_t q = j; q < count; ++q)
            idx[q] = idx[j - 1];
    }
}

} // namespace dspkit::test_support

#endif
