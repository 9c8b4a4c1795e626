#ifndef DSPKIT_JNF_HPP
#define DSPKIT_JNF_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "dspkit/error.hpp"
#include "dspkit/partition.hpp"
#include "dspkit/rational.hpp"

namespace dspkit {

/* Multiplicities of the eigenvalues of a diagonalizable class, in
 * non-increasing order. Strong wrapper so it cannot be confused with a
 * block-size partition. */
class MultiplicityVector {
public:
    MultiplicityVector() = default;
    explicit MultiplicityVector(Partition p) : parts_(std::move(p)) {}
    MultiplicityVector(std::initializer_list<std::int64_t> parts) : parts_(normalize(parts)) {}

    const Partition& partition() const noexcept { return parts_; }
    std::int64_t size() const noexcept { return parts_.size(); }
    std::size_t length() const noexcept { return parts_.length(); }
    std::int64_t operator[](std::size_t i) const { return parts_[i]; }
    bool is_scalar() const noexcept { return parts_.length() == 1; }

    friend bool operator==(const MultiplicityVector&, const MultiplicityVector&) = default;
    friend auto operator<=>(const MultiplicityVector& a, const MultiplicityVector& b)
    {
        return a.parts_ <=> b.parts_;
    }

private:
    Partition parts_;
};

/// r = m_2 + ... + m_i = n - m_1.
inline std::int64_t r_of(const MultiplicityVector& mv)
{
    return mv.size() - mv.partition().largest();
}

/// d = n^2 - Σ m_i^2.
inline std::int64_t d_of(const MultiplicityVector& mv)
{
    return mv.size() * mv.size() - mv.partition().sum_of_squares();
}

/* A Jordan normal form: one block-size partition per (abstract)
 * eigenvalue slot. Slots are kept sorted descending, so two Jnfs compare
 * equal exactly when their slot multisets agree. */
class Jnf {
public:
    Jnf() = default;

    explicit Jnf(std::vector<Partition> slots) : slots_(std::move(slots))
    {
        if (slots_.empty())
            throw PreconditionError("a JNF needs at least one eigenvalue");
        for (const auto& s : slots_) {
            if (s.empty())
                throw PreconditionError("empty eigenvalue slot in JNF");
            size_ += s.size();
        }
        if (size_ > kMaxSize)
            throw ResourceError("JNF size exceeds " + std::to_string(kMaxSize));
        std::sort(slots_.begin(), slots_.end(), std::greater<>());
    }

    /// Diagonal JNF with the given eigenvalue multiplicities.
    static Jnf diagonal(const MultiplicityVector& mv)
    {
        std::vector<Partition> slots;
        slots.reserve(mv.length());
        for (auto m : mv.partition())
            slots.push_back(ones(m));
        return Jnf(std::move(slots));
    }

    const std::vector<Partition>& slots() const noexcept { return slots_; }
    std::int64_t size() const noexcept { return size_; }

    bool is_diagonal() const noexcept
    {
        return std::all_of(slots_.begin(), slots_.end(), [](const Partition& p) { return p.largest() == 1; });
    }

    /// Total algebraic multiplicity of each eigenvalue, non-increasing.
    MultiplicityVector eigenvalue_multiplicities() const
    {
        std::vector<std::int64_t> m;
        for (const auto& s : slots_)
            m.push_back(s.size());
        return MultiplicityVector(normalize(m));
    }

    /// Largest number of Jordan blocks sharing one eigenvalue.
    std::int64_t max_block_count() const noexcept
    {
        std::int64_t best = 0;
        for (const auto& s : slots_)
            best = std::max<std::int64_t>(best, static_cast<std::int64_t>(s.length()));
        return best;
    }

    friend bool operator==(const Jnf&, const Jnf&) = default;
    friend auto operator<=>(const Jnf& a, const Jnf& b) { return a.slots_ <=> b.slots_; }

private:
    std::vector<Partition> slots_;
    std::int64_t size_ = 0;
};

inline std::int64_t r_of(const Jnf& j)
{
    return j.size() - j.max_block_count();
}

/* Class dimension n^2 - dim Z(Y); the centralizer of a JNF has dimension
 * Σ over eigenvalues Σ_k (k-th part of the dual block partition)^2. */
inline std::int64_t d_of(const Jnf& j)
{
    std::int64_t centralizer = 0;
    for (const auto& s : j.slots())
        centralizer += dual(s).sum_of_squares();
    return j.size() * j.size() - centralizer;
}

/// Zero-dimensional class, i.e. a scalar matrix.
inline bool is_scalar(const Jnf& j)
{
    return r_of(j) == 0;
}

/// Disjoint sum of the duals of every slot's block partition.
inline MultiplicityVector corresponding_diagonal(const Jnf& j)
{
    std::vector<Partition> duals;
    duals.reserve(j.slots().size());
    for (const auto& s : j.slots())
        duals.push_back(dual(s));
    return MultiplicityVector(disjoint_sum(duals));
}

/// Largest n the explicit-matrix oracle accepts.
inline constexpr std::int64_t kOracleMaxSize = 8;

/* Independent check of d_of: build an explicit matrix Y with this JNF
 * (eigenvalues 0,1,2,... per slot, ones on the superdiagonal inside each
 * block), form the n^2 x n^2 matrix of X -> XY - YX and return the
 * dimension of its kernel, computed with exact rational elimination. */
inline std::int64_t centralizer_dim_oracle(const Jnf& j)
{
    const auto n = j.size();
    if (n > kOracleMaxSize)
        throw ResourceError("centralizer oracle limited to n <= " + std::to_string(kOracleMaxSize));
    const auto un = static_cast<std::size_t>(n);
    std::vector<std::int64_t> y(un * un, 0);
    std::size_t pos = 0;
    std::int64_t eigenvalue = 0;
    for (const auto& slot : j.slots()) {
        for (auto block : slot) {
            for (std::int64_t k = 0; k < block; ++k) {
                y[(pos + k) * un + pos + k] = eigenvalue;
                if (k + 1 < block)
                    y[(pos + k) * un + pos + k + 1] = 1;
            }
            pos += static_cast<std::size_t>(block);
        }
        ++eigenvalue;
    }
    // (XY - YX)_{ab} = Σ_c X_{ac} Y_{cb} - Y_{ac} X_{cb}; unknown X_{uv} -> column u*n+v.
    RationalMatrix m(un * un, un * un);
    for (std::size_t a = 0; a < un; ++a)
        for (std::size_t b = 0; b < un; ++b) {
            const std::size_t row = a * un + b;
            for (std::size_t c = 0; c < un; ++c) {
                if (y[c * un + b] != 0)
                    m(row, a * un + c) += y[c * un + b];
                if (y[a * un + c] != 0)
                    m(row, c * un + b) -= y[a * un + c];
            }
        }
    return n * n - static_cast<std::int64_t>(exact_rank(std::move(m)));
}

/* A (p+1)-tuple of Jnfs of a common size n. Entry order is kept as given
 * (indices matter in condition reports); canonical() sorts it. */
class JnfTuple {
public:
    JnfTuple() = default;

    explicit JnfTuple(std::vector<Jnf> entries) : entries_(std::move(entries))
    {
        if (entries_.size() < 2)
            throw PreconditionError("a tuple needs at least two entries");
        n_ = entries_.front().size();
        if (n_ < 1)
            throw PreconditionError("tuple size must be positive");
        for (const auto& e : entries_)
            if (e.size() != n_)
                throw PreconditionError("tuple entries have different sizes");
    }

    static JnfTuple diagonal(const std::vector<MultiplicityVector>& pmv)
    {
        std::vector<Jnf> e;
        e.reserve(pmv.size());
        for (const auto& mv : pmv)
            e.push_back(Jnf::diagonal(mv));
        return JnfTuple(std::move(e));
    }

    const std::vector<Jnf>& entries() const noexcept { return entries_; }
    std::size_t count() const noexcept { return entries_.size(); }
    std::int64_t n() const noexcept { return n_; }
    const Jnf& operator[](std::size_t i) const { return entries_[i]; }

    bool is_diagonal() const
    {
        return std::all_of(entries_.begin(), entries_.end(), [](const Jnf& j) { return j.is_diagonal(); });
    }

    /// Entries sorted descending; equality of canonical forms is equality
    /// up to permutation of entries.
    JnfTuple canonical() const
    {
        JnfTuple c = *this;
        std::sort(c.entries_.begin(), c.entries_.end(), std::greater<>());
        return c;
    }

    friend bool operator==(const JnfTuple&, const JnfTuple&) = default;
    friend auto operator<=>(const JnfTuple& a, const JnfTuple& b) { return a.entries_ <=> b.entries_; }

private:
    std::vector<Jnf> entries_;
    std::int64_t n_ = 0;
};

inline JnfTuple corresponding_diagonal(const JnfTuple& t)
{
    std::vector<MultiplicityVector> pmv;
    for (const auto& j : t.entries())
        pmv.push_back(corresponding_diagonal(j));
    return JnfTuple::diagonal(pmv);
}

inline std::int64_t sum_d(const JnfTuple& t)
{
    std::int64_t s = 0;
    for (const auto& j : t.entries())
        s += d_of(j);
    return s;
}

inline std::int64_t sum_r(const JnfTuple& t)
{
    std::int64_t s = 0;
    for (const auto& j : t.entries())
        s += r_of(j);
    return s;
}

/* Every JNF of size n, each exactly once (slots in canonical order). */
inline std::vector<Jnf> jnfs_of(std::int64_t n)
{
    std::vector<Partition> pool;
    for (std::int64_t s = 1; s <= n; ++s)
        for (auto& p : partitions_of(s))
            pool.push_back(std::move(p));
    std::sort(pool.begin(), pool.end(), std::greater<>());
    std::vector<Jnf> out;
    std::vector<Partition> cur;
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t from, std::int64_t rest) {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (std::size_t i = from; i < pool.size(); ++i) {
            if (pool[i].size() > rest)
                continue;
            cur.push_back(pool[i]);
            rec(i, rest - pool[i].size());
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

// ---------------------------------------------------------------- text

/// Diagonal JNFs print as their MV "(3,2)", others as "{(5,1),(4,2,2)}".
inline std::string to_string(const Jnf& j)
{
    if (j.is_diagonal())
        return to_string(j.eigenvalue_multiplicities().partition());
    std::string s = "{";
    for (std::size_t i = 0; i < j.slots().size(); ++i) {
        if (i)
            s += ',';
        s += to_string(j.slots()[i]);
    }
    return s + "}";
}

inline std::string to_string(const MultiplicityVector& mv)
{
    return to_string(mv.partition());
}

inline std::string to_string(const JnfTuple& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.count(); ++i) {
        if (i)
            s += ';';
        s += to_string(t[i]);
    }
    return s;
}

/* Tuple grammar:  ENTRY (';' ENTRY)*
 *   ENTRY := MV | '{' MV (',' MV)* '}'
 *   MV    := '(' INT (',' INT)* ')'
 * A bare MV is a diagonal JNF; the brace form lists block partitions per
 * eigenvalue. Whitespace is ignored. Unsorted components are accepted and
 * reported through `warnings`. */
inline JnfTuple parse_tuple(std::string_view s, std::vector<std::string>* warnings = nullptr)
{
    std::size_t i = 0;
    std::vector<Jnf> entries;
    auto note = [&](const std::vector<std::int64_t>& raw, const Partition& p) {
        if (warnings && !std::equal(raw.begin(), raw.end(), p.begin(), p.end()))
            warnings->push_back("components of " + to_string(p) + " were reordered");
    };
    auto take_partition = [&]() {
        auto raw = detail::parse_parenthesized(s, i);
        if (raw.empty())
            throw ParseError("empty multiplicity vector");
        for (auto x : raw)
            if (x == 0)
                throw ParseError("zero component in tuple");
        auto p = normalize(raw);
        note(raw, p);
        return p;
    };
    for (;;) {
        detail::skip_ws(s, i);
        if (i >= s.size())
            throw ParseError("expected a tuple entry at offset " + std::to_string(i));
        if (s[i] == '{') {
            ++i;
            std::vector<Partition> slots;
            for (;;) {
                slots.push_back(take_partition());
                detail::skip_ws(s, i);
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                if (i < s.size() && s[i] == '}') {
                    ++i;
                    break;
                }
                throw ParseError("expected ',' or '}' at offset " + std::to_string(i));
            }
            entries.emplace_back(std::move(slots));
        } else {
            entries.push_back(Jnf::diagonal(MultiplicityVector(take_partition())));
        }
        detail::skip_ws(s, i);
        if (i == s.size())
            break;
        if (s[i] != ';')
            throw ParseError("expected ';' at offset " + std::to_string(i));
        ++i;
    }
    if (entries.size() < 2)
        throw ParseError("a tuple needs at least two entries");
    const auto n = entries.front().size();
    for (const auto& e : entries)
        if (e.size() != n)
            throw ParseError("tuple entries have different sizes");
    return JnfTuple(std::move(entries));
}

} // namespace dspkit

#endif
