#ifndef DSPKIT_PARTITION_HPP
#define DSPKIT_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dspkit/error.hpp"

namespace dspkit {

/// Largest size accepted anywhere in the library; keeps n^2 and every
/// dimension sum far away from int64 overflow.
inline constexpr std::int64_t kMaxSize = 10000;

/* An integer partition: positive parts in non-increasing order. The empty
 * partition (size 0) is a legal value; it shows up transiently while
 * blocks are being shrunk. */
class Partition {
public:
    using value_type = std::int64_t;

    Partition() = default;

    /// Validating constructor: parts must already be positive and
    /// non-increasing. Use normalize() for raw input.
    explicit Partition(std::vector<value_type> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 1)
                throw PreconditionError("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw PreconditionError("partition parts must be non-increasing");
            size_ += parts_[i];
            if (size_ > kMaxSize)
                throw ResourceError("partition size exceeds " + std::to_string(kMaxSize));
        }
    }

    Partition(std::initializer_list<value_type> parts)
        : Partition(std::vector<value_type>(parts)) {}

    const std::vector<value_type>& parts() const noexcept { return parts_; }
    value_type size() const noexcept { return size_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    value_type operator[](std::size_t i) const { return parts_[i]; }
    value_type largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

    auto begin() const noexcept { return parts_.begin(); }
    auto end() const noexcept { return parts_.end(); }

    /// Σ parts².
    value_type sum_of_squares() const noexcept
    {
        value_type s = 0;
        for (auto p : parts_)
            s += p * p;
        return s;
    }

    /// True when every part equals 1.
    bool all_ones() const noexcept
    {
        return !parts_.empty() && parts_.front() == 1;
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b)
    {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<value_type> parts_;
    value_type size_ = 0;
};

/// Drop zeros and sort non-increasing. Negative entries are rejected.
inline Partition normalize(std::span<const std::int64_t> raw)
{
    std::vector<std::int64_t> v;
    v.reserve(raw.size());
    for (auto x : raw) {
        if (x < 0)
            throw PreconditionError("negative part " + std::to_string(x));
        if (x > 0)
            v.push_back(x);
    }
    std::sort(v.begin(), v.end(), std::greater<>());
    return Partition(std::move(v));
}

inline Partition normalize(std::initializer_list<std::int64_t> raw)
{
    return normalize(std::span<const std::int64_t>(raw.begin(), raw.size()));
}

/// Young-diagram conjugate: part k of the result counts the parts of p
/// that are >= k.
inline Partition dual(const Partition& p)
{
    std::vector<std::int64_t> out(static_cast<std::size_t>(p.largest()), 0);
    for (auto part : p)
        for (std::int64_t k = 0; k < part; ++k)
            ++out[static_cast<std::size_t>(k)];
    return Partition(std::move(out));
}

/// Multiset union of all parts.
inline Partition disjoint_sum(std::span<const Partition> ps)
{
    std::vector<std::int64_t> all;
    for (const auto& p : ps)
        all.insert(all.end(), p.begin(), p.end());
    return normalize(all);
}

/// Partition of n with all parts equal to 1.
inline Partition ones(std::int64_t n)
{
    return Partition(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
}

/* Visit every partition of n whose parts are <= max_part, in
 * lexicographically decreasing order. The callback receives the parts. */
inline void for_each_partition(std::int64_t n, std::int64_t max_part,
                               const std::function<void(const std::vector<std::int64_t>&)>& f)
{
    if (n < 0)
        return;
    if (n == 0) {
        f({});
        return;
    }
    std::vector<std::int64_t> cur;
    std::function<void(std::int64_t, std::int64_t)> rec = [&](std::int64_t rest, std::int64_t cap) {
        if (rest == 0) {
            f(cur);
            return;
        }
        for (std::int64_t k = std::min(rest, cap); k >= 1; --k) {
            cur.push_back(k);
            rec(rest - k, k);
            cur.pop_back();
        }
    };
    rec(n, max_part);
}

/// All partitions of n, lexicographically decreasing.
inline std::vector<Partition> partitions_of(std::int64_t n)
{
    std::vector<Partition> out;
    for_each_partition(n, n, [&](const std::vector<std::int64_t>& v) { out.emplace_back(v); });
    return out;
}

/// Text form "(4,2,2)"; the empty partition prints as "()".
inline std::string to_string(const Partition& p)
{
    std::string s = "(";
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p[i]);
    }
    s += ')';
    return s;
}

namespace detail {

inline void skip_ws(std::string_view s, std::size_t& i)
{
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r'))
        ++i;
}

/* Parse "(a,b,...)" starting at s[i]; leaves i after ')'. Returns the raw
 * integers, unsorted. */
inline std::vector<std::int64_t> parse_parenthesized(std::string_view s, std::size_t& i)
{
    skip_ws(s, i);
    if (i >= s.size() || s[i] != '(')
        throw ParseError("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<std::int64_t> raw;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ')') {
        ++i;
        return raw;
    }
    for (;;) {
        skip_ws(s, i);
        std::size_t start = i;
        std::int64_t v = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            v = v * 10 + (s[i] - '0');
            if (v > kMaxSize)
                throw ParseError("part too large at offset " + std::to_string(start));
            ++i;
        }
        if (i == start)
            throw ParseError("expected integer at offset " + std::to_string(i));
        raw.push_back(v);
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') {
            ++i;
            continue;
        }
        if (i < s.size() && s[i] == ')') {
            ++i;
            return raw;
        }
        throw ParseError("expected ',' or ')' at offset " + std::to_string(i));
    }
}

} // namespace detail

/* Parse "(4,2,2)". Zero parts are rejected; unsorted input is normalized
 * and, when `reordered` is given, flagged there. */
inline Partition parse_partition(std::string_view s, bool* reordered = nullptr)
{
    std::size_t i = 0;
    auto raw = detail::parse_parenthesized(s, i);
    detail::skip_ws(s, i);
    if (i != s.size())
        throw ParseError("trailing characters after partition");
    for (auto x : raw)
        if (x == 0)
            throw ParseError("zero part in partition");
    auto p = normalize(raw);
    if (reordered)
        *reordered = !std::equal(raw.begin(), raw.end(), p.begin(), p.end());
    return p;
}

} // namespace dspkit

#endif
