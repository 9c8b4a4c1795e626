#ifndef DSPKIT_CATALOG_HPP
#define DSPKIT_CATALOG_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "dspkit/error.hpp"
#include "dspkit/jnf.hpp"
#include "dspkit/partition.hpp"
#include "dspkit/reduction.hpp"

namespace dspkit {

// ------------------------------------------------------------ series ids

/* Named families of rigid polymultiplicity vectors. The first block is
 * indexed by k, the rest by the size n (Psi6 only exists at n = 6,
 * Trivial(e) is the n = 1 tuple with e entries). */
enum class Family {
    W, B, C, D, E, F, Phi, G, H, I, J, K, L, V, N, P, R, S, T, OG,
    HG, OF, EF, FF, Star, Trivial, Xi, Theta, Psi6, Pi, Delta,
    Gamma1, Gamma2, Gamma3, Gamma4, X1, X2, Z1, Z2, Z3, Z4,
    Y1, Y2, Y3, Y4, Y5, Y6, Y7,
};

inline constexpr std::array kAllFamilies = {
    Family::W, Family::B, Family::C, Family::D, Family::E, Family::F, Family::Phi, Family::G,
    Family::H, Family::I, Family::J, Family::K, Family::L, Family::V, Family::N, Family::P,
    Family::R, Family::S, Family::T, Family::OG, Family::HG, Family::OF, Family::EF, Family::FF,
    Family::Star, Family::Trivial, Family::Xi, Family::Theta, Family::Psi6, Family::Pi,
    Family::Delta, Family::Gamma1, Family::Gamma2, Family::Gamma3, Family::Gamma4, Family::X1,
    Family::X2, Family::Z1, Family::Z2, Family::Z3, Family::Z4, Family::Y1, Family::Y2,
    Family::Y3, Family::Y4, Family::Y5, Family::Y6, Family::Y7,
};

inline std::string_view family_name(Family f)
{
    switch (f) {
    case Family::W: return "W";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::Phi: return "Phi";
    case Family::G: return "G";
    case Family::H: return "H";
    case Family::I: return "I";
    case Family::J: return "J";
    case Family::K: return "K";
    case Family::L: return "L";
    case Family::V: return "V";
    case Family::N: return "N";
    case Family::P: return "P";
    case Family::R: return "R";
    case Family::S: return "S";
    case Family::T: return "T";
    case Family::OG: return "OG";
    case Family::HG: return "HG";
    case Family::OF: return "OF";
    case Family::EF: return "EF";
    case Family::FF: return "FF";
    case Family::Star: return "Star";
    case Family::Trivial: return "Trivial";
    case Family::Xi: return "Xi";
    case Family::Theta: return "Theta";
    case Family::Psi6: return "Psi6";
    case Family::Pi: return "Pi";
    case Family::Delta: return "Delta";
    case Family::Gamma1: return "Gamma1";
    case Family::Gamma2: return "Gamma2";
    case Family::Gamma3: return "Gamma3";
    case Family::Gamma4: return "Gamma4";
    case Family::X1: return "X1";
    case Family::X2: return "X2";
    case Family::Z1: return "Z1";
    case Family::Z2: return "Z2";
    case Family::Z3: return "Z3";
    case Family::Z4: return "Z4";
    case Family::Y1: return "Y1";
    case Family::Y2: return "Y2";
    case Family::Y3: return "Y3";
    case Family::Y4: return "Y4";
    case Family::Y5: return "Y5";
    case Family::Y6: return "Y6";
    case Family::Y7: return "Y7";
    }
    return "?";
}

/// Families whose parameter is k rather than the size n.
inline bool indexed_by_k(Family f)
{
    switch (f) {
    case Family::W: case Family::B: case Family::C: case Family::D: case Family::E:
    case Family::F: case Family::Phi: case Family::G: case Family::H: case Family::I:
    case Family::J: case Family::K: case Family::L: case Family::V: case Family::N:
    case Family::P: case Family::R: case Family::S: case Family::T: case Family::OG:
        return true;
    default:
        return false;
    }
}

struct SeriesId {
    Family family = Family::W;
    std::int64_t param = 0;

    friend bool operator==(const SeriesId&, const SeriesId&) = default;
    friend auto operator<=>(const SeriesId&, const SeriesId&) = default;
};

/// "W_2", "Gamma1_22", "Psi6".
inline std::string to_string(const SeriesId& id)
{
    if (id.family == Family::Psi6)
        return "Psi6";
    return std::string(family_name(id.family)) + "_" + std::to_string(id.param);
}

inline SeriesId parse_series_id(std::string_view s)
{
    if (s == "Psi6" || s == "Psi6_6")
        return {Family::Psi6, 6};
    auto us = s.rfind('_');
    if (us == std::string_view::npos || us + 1 >= s.size())
        throw ParseError("series id must look like NAME_PARAM, got '" + std::string(s) + "'");
    auto name = s.substr(0, us);
    std::int64_t param = 0;
    for (auto c : s.substr(us + 1)) {
        if (c < '0' || c > '9')
            throw ParseError("bad series parameter in '" + std::string(s) + "'");
        param = param * 10 + (c - '0');
        if (param > kMaxSize)
            throw ParseError("series parameter too large in '" + std::string(s) + "'");
    }
    for (auto f : kAllFamilies)
        if (family_name(f) == name)
            return {f, param};
    throw ParseError("unknown series '" + std::string(name) + "'");
}

/// Size n of the instance, assuming the parameter is valid.
inline std::int64_t series_size(const SeriesId& id)
{
    const auto k = id.param;
    switch (id.family) {
    case Family::W: return 3 * k + 1;
    case Family::B: return 3 * k - 1;
    case Family::C: return 3 * k;
    case Family::D: return 4 * k + 1;
    case Family::E: return 4 * k - 1;
    case Family::F: case Family::Phi: return 4 * k;
    case Family::G: return 4 * k + 2;
    case Family::H: return 6 * k + 1;
    case Family::I: return 6 * k - 1;
    case Family::J: case Family::K: case Family::L: return 6 * k;
    case Family::V: return 6 * k + 2;
    case Family::N: return 6 * k + 3;
    case Family::P: return 6 * k - 2;
    case Family::R: return 2 * k;
    case Family::S: return 2 * k + 1;
    case Family::T: return 4 * k;
    case Family::OG: return 2 * k + 1;
    case Family::Trivial: return 1;
    case Family::Psi6: return 6;
    default: return k;
    }
}

/// Parameter ranges; parity and lower bounds per family.
inline bool series_valid(const SeriesId& id)
{
    const auto k = id.param;
    const bool even = k % 2 == 0;
    if (k < 0 || series_size(id) > kMaxSize)
        return false;
    switch (id.family) {
    case Family::W: case Family::D: case Family::G: case Family::H: case Family::V:
    case Family::N: case Family::S:
        return k >= 0;
    case Family::B: case Family::C: case Family::E: case Family::F: case Family::Phi:
    case Family::I: case Family::J: case Family::K: case Family::L: case Family::P:
    case Family::R: case Family::T: case Family::OG:
        return k >= 1;
    case Family::HG: return k >= 1;
    case Family::OF: return !even && k >= 1;
    case Family::EF: return even && k >= 2;
    case Family::FF: return k >= 5 && k <= 8;
    case Family::Star: return k >= 2;
    case Family::Trivial: return k >= 2;
    case Family::Xi: return even && k >= 4;
    case Family::Theta: return even && k >= 4;
    case Family::Psi6: return k == 6;
    case Family::Pi: case Family::Delta: return !even && k >= 3;
    case Family::Gamma1: return even && k >= 6;
    case Family::Gamma2: case Family::Gamma3: case Family::Gamma4: return even && k >= 4;
    case Family::X1: return !even && k >= 5;
    case Family::X2: return !even && k >= 3;
    case Family::Z1: case Family::Z3: case Family::Z4: return !even && k >= 3;
    case Family::Z2: return !even && k >= 5;
    case Family::Y1: case Family::Y2: case Family::Y3: case Family::Y6: return even && k >= 4;
    case Family::Y4: case Family::Y7: return even && k >= 6;
    case Family::Y5: return even && k >= 2;
    }
    return false;
}

/// Case label in the u = 2 triple classification ("1a".."1k" for even n,
/// "2a".."2g" for odd n); OG is case 2c.
inline std::optional<std::string> classification_label(Family f)
{
    switch (f) {
    case Family::Gamma1: return "1a";
    case Family::Gamma2: return "1b";
    case Family::Gamma3: return "1c";
    case Family::Gamma4: return "1d";
    case Family::Y1: return "1e";
    case Family::Y2: return "1f";
    case Family::Y3: return "1g";
    case Family::Y4: return "1h";
    case Family::Y5: return "1i";
    case Family::Y6: return "1j";
    case Family::Y7: return "1k";
    case Family::X1: return "2a";
    case Family::X2: return "2b";
    case Family::OG: return "2c";
    case Family::Z1: return "2d";
    case Family::Z2: return "2e";
    case Family::Z3: return "2f";
    case Family::Z4: return "2g";
    default: return std::nullopt;
    }
}

namespace detail {

using Raw = std::vector<std::int64_t>;

/// `twos` copies of 2 followed by `units` ones.
inline Raw twos_then_ones(std::int64_t twos, std::int64_t units)
{
    Raw v(static_cast<std::size_t>(twos), 2);
    v.insert(v.end(), static_cast<std::size_t>(units), 1);
    return v;
}

inline Raw repeat(std::int64_t value, std::int64_t times, Raw tail = {})
{
    Raw v(static_cast<std::size_t>(times), value);
    v.insert(v.end(), tail.begin(), tail.end());
    return v;
}

inline std::vector<Raw> series_rows(const SeriesId& id)
{
    const auto k = id.param;
    const auto n = k;
    switch (id.family) {
    case Family::W: return {{k, k, k + 1}, {k, k, k + 1}, {k, k, k + 1}};
    case Family::B: return {{k, k, k - 1}, {k, k, k - 1}, {k, k, k - 1}};
    case Family::C: return {{k, k, k}, {k, k, k}, {k, k + 1, k - 1}};
    case Family::D: return {{k, k, k, k + 1}, {k, k, k, k + 1}, {2 * k, 2 * k + 1}};
    case Family::E: return {{k, k, k, k - 1}, {k, k, k, k - 1}, {2 * k, 2 * k - 1}};
    case Family::F: return {{k, k, k, k}, {k, k, k, k}, {2 * k + 1, 2 * k - 1}};
    case Family::Phi: return {{k, k, k + 1, k - 1}, {k, k, k, k}, {2 * k, 2 * k}};
    case Family::G: return {{k, k, k + 1, k + 1}, {k, k, k + 1, k + 1}, {2 * k + 1, 2 * k + 1}};
    case Family::H: return {repeat(k, 5, {k + 1}), {3 * k, 3 * k + 1}, {2 * k, 2 * k, 2 * k + 1}};
    case Family::I: return {repeat(k, 5, {k - 1}), {3 * k, 3 * k - 1}, {2 * k, 2 * k, 2 * k - 1}};
    case Family::J: return {repeat(k, 6), {3 * k + 1, 3 * k - 1}, {2 * k, 2 * k, 2 * k}};
    case Family::K: return {repeat(k, 6), {3 * k, 3 * k}, {2 * k, 2 * k + 1, 2 * k - 1}};
    case Family::L: return {repeat(k, 4, {k + 1, k - 1}), {3 * k, 3 * k}, {2 * k, 2 * k, 2 * k}};
    case Family::V: return {repeat(k, 4, {k + 1, k + 1}), {3 * k + 1, 3 * k + 1}, {2 * k, 2 * k + 1, 2 * k + 1}};
    case Family::N: return {repeat(k, 3, {k + 1, k + 1, k + 1}), {3 * k + 1, 3 * k + 2}, {2 * k + 1, 2 * k + 1, 2 * k + 1}};
    case Family::P: return {repeat(k, 4, {k - 1, k - 1}), {3 * k - 1, 3 * k - 1}, {2 * k, 2 * k - 1, 2 * k - 1}};
    case Family::R: return {{k, k}, {k, k}, {k, k}, {k + 1, k - 1}};
    case Family::S: return {{k + 1, k}, {k + 1, k}, {k + 1, k}, {k + 1, k}};
    case Family::T: return {{2 * k + 1, 2 * k - 1}, {3 * k, k}, {3 * k, k}, {3 * k, k}, {3 * k, k}};
    case Family::OG: return {twos_then_ones(k - 1, 3), twos_then_ones(k, 1), {2 * k - 1, 1, 1}};
    case Family::HG: return {{n - 1, 1}, repeat(1, n), repeat(1, n)};
    case Family::OF: return {{(n + 1) / 2, (n - 1) / 2}, {(n - 1) / 2, (n - 1) / 2, 1}, repeat(1, n)};
    case Family::EF: return {{n / 2, n / 2}, {n / 2, (n - 2) / 2, 1}, repeat(1, n)};
    case Family::FF: return {twos_then_ones(1, n - 2), twos_then_ones(n - 4, 8 - n), {n - 2, 2}};
    case Family::Star: return std::vector<Raw>(static_cast<std::size_t>(n + 1), Raw{n - 1, 1});
    case Family::Trivial: return std::vector<Raw>(static_cast<std::size_t>(k), Raw{1});
    case Family::Xi: return {twos_then_ones(n / 2, 0), {n / 2, n / 2}, {n / 2, n / 2}, {n - 1, 1}};
    case Family::Theta: return {twos_then_ones(n / 2 - 1, 2), {n / 2, n / 2}, {n / 2 + 1, n / 2 - 1}, {n - 1, 1}};
    case Family::Psi6: return {{2, 2, 2}, {3, 3}, {4, 1, 1}, {5, 1}};
    case Family::Pi: return {twos_then_ones(n / 2, 1), {(n + 1) / 2, (n - 1) / 2}, {(n + 1) / 2, (n - 1) / 2}, {n - 1, 1}};
    case Family::Delta: return {twos_then_ones(n / 2, 1), twos_then_ones(n / 2, 1), {n - 1, 1}, {n - 1, 1}};
    case Family::Gamma1: return {twos_then_ones(n / 2, 0), twos_then_ones(n / 2 - 3, 6), {n - 2, 2}};
    case Family::Gamma2: return {twos_then_ones(n / 2 - 1, 2), twos_then_ones(n / 2 - 2, 4), {n - 2, 2}};
    case Family::Gamma3: return {twos_then_ones(n / 2 - 1, 2), twos_then_ones(n / 2 - 1, 2), {n - 2, 1, 1}};
    case Family::Gamma4: return {twos_then_ones(n / 2, 0), twos_then_ones(n / 2 - 2, 4), {n - 2, 1, 1}};
    case Family::X1: return {twos_then_ones((n - 5) / 2, 5), twos_then_ones((n - 1) / 2, 1), {n - 2, 2}};
    case Family::X2: return {twos_then_ones((n - 3) / 2, 3), twos_then_ones((n - 3) / 2, 3), {n - 2, 2}};
    case Family::Z1: {
        const auto m = (n - 1) / 2;
        return {twos_then_ones(m, 1), {m, m, 1}, {m, m, 1}};
    }
    case Family::Z2: {
        const auto m = (n - 1) / 2;
        return {twos_then_ones(m - 2, 5), {m, m - 1, 2}, {m + 1, m}};
    }
    case Family::Z3: {
        const auto m = (n - 1) / 2;
        return {twos_then_ones(m - 1, 3), {m, m - 1, 1, 1}, {m + 1, m}};
    }
    case Family::Z4: {
        const auto m = (n - 1) / 2;
        return {twos_then_ones(m - 1, 3), {m, m, 1}, {m + 1, m - 1, 1}};
    }
    case Family::Y1: {
        const auto m = (n - 2) / 2;
        return {twos_then_ones(n / 2 - 2, 4), {m, m, 2}, {m + 1, m + 1}};
    }
    case Family::Y2: {
        const auto m = (n - 2) / 2;
        return {twos_then_ones(n / 2 - 1, 2), {m, m, 1, 1}, {m + 1, m + 1}};
    }
    case Family::Y3: {
        const auto m = (n - 4) / 2;
        return {twos_then_ones(n / 2 - 2, 4), {m + 2, m, 1, 1}, {m + 2, m + 2}};
    }
    case Family::Y4: {
        const auto m = (n - 4) / 2;
        return {twos_then_ones(n / 2 - 3, 6), {m + 2, m, 2}, {m + 2, m + 2}};
    }
    case Family::Y5: {
        const auto m = (n - 2) / 2;
        return {twos_then_ones(n / 2 - 1, 2), {m + 1, m, 1}, {m + 1, m, 1}};
    }
    case Family::Y6: {
        const auto m = (n - 2) / 2;
        return {twos_then_ones(n / 2 - 2, 4), {m, m, 1, 1}, {m + 2, m}};
    }
    case Family::Y7: {
        const auto m = (n - 2) / 2;
        return {twos_then_ones(n / 2 - 3, 6), {m, m, 2}, {m + 2, m}};
    }
    }
    return {};
}

} // namespace detail

/* The polymultiplicity vector of a named family, as a diagonal tuple. Each
 * MV is normalized (zero multiplicities dropped, sorted); entries keep the
 * order of the family's table row. */
inline JnfTuple series(const SeriesId& id)
{
    if (!series_valid(id))
        throw PreconditionError("parameter out of range for " + to_string(id));
    const auto n = series_size(id);
    std::vector<MultiplicityVector> pmv;
    for (const auto& row : detail::series_rows(id)) {
        auto p = normalize(row);
        if (p.size() != n)
            throw PreconditionError("internal: " + to_string(id) + " row " + to_string(p) + " has wrong size");
        pmv.emplace_back(std::move(p));
    }
    return JnfTuple::diagonal(pmv);
}

/* Successor of a series instance under Ψ, as named in the reduction chains
 * (W_k -> B_k -> W_{k-1} ..., Γ^1_6 -> X^1_5 -> Γ^2_4 -> HG_3, ...).
 * nullopt once the chain has reached n = 1. */
inline std::optional<SeriesId> chain_successor(const SeriesId& id)
{
    using enum Family;
    const auto k = id.param;
    auto to = [](Family f, std::int64_t p) { return std::optional<SeriesId>(SeriesId{f, p}); };
    if (series_size(id) == 1)
        return std::nullopt;
    switch (id.family) {
    case W: return to(B, k);
    case B: return to(W, k - 1);
    case C: return to(B, k);
    case D: case F: case Phi: return to(E, k);
    case E: return to(G, k - 1);
    case G: return to(D, k);
    case H: case J: case K: case L: return to(I, k);
    case I: return to(P, k);
    case P: return to(N, k - 1);
    case N: return to(V, k);
    case V: return to(H, k);
    case S: case R: case T: return to(S, k - 1);
    case OG: return k >= 2 ? to(OG, k - 1) : to(HG, 2);
    case HG: return to(HG, k - 1);
    case OF: return to(EF, k - 1);
    case EF: return to(OF, k - 1);
    case FF:
        switch (k) {
        case 5: return to(HG, 3);
        case 6: return to(Gamma2, 4);
        case 7: return to(X1, 5);
        default: return to(Gamma1, 6);
        }
    case Star: return to(Trivial, k + 1);
    case Trivial: return std::nullopt;
    case Xi: return to(Pi, k - 1);
    case Pi: return k >= 5 ? to(Pi, k - 2) : to(Trivial, 4);
    case Delta: return k >= 5 ? to(Delta, k - 2) : to(Trivial, 4);
    case Theta: return k >= 6 ? to(Theta, k - 2) : to(HG, 2);
    case Psi6: return to(Theta, 4);
    case Gamma1: return k >= 8 ? to(Gamma1, k - 2) : to(X1, 5);
    case Gamma2: return k >= 6 ? to(Gamma2, k - 2) : to(HG, 3);
    case Gamma3: return k >= 6 ? to(Gamma3, k - 2) : to(HG, 2);
    case Gamma4: return k >= 6 ? to(Gamma4, k - 2) : to(HG, 3);
    case X1: return k >= 7 ? to(X1, k - 2) : to(Gamma2, 4);
    case X2: return k >= 5 ? to(X2, k - 2) : to(HG, 2);
    case Y1: return k >= 6 ? to(Z2, k - 1) : to(HG, 3);
    case Z2: return k >= 7 ? to(Z2, k - 2) : to(Gamma4, 4);
    case Z3: case Z4: return k >= 5 ? to(id.family, k - 2) : to(HG, 2);
    case Z1: return to(Y5, k - 1);
    case Y5: return k >= 4 ? to(Y5, k - 2) : to(HG, 1);
    case Y2: return to(Z3, k - 1);
    case Y3: return k >= 6 ? to(Y6, k - 2) : to(HG, 3);
    case Y6: return k >= 6 ? to(Y3, k - 2) : to(HG, 3);
    case Y4: return k >= 8 ? to(Y7, k - 2) : to(X1, 5);
    case Y7: return k >= 8 ? to(Y4, k - 2) : to(X1, 5);
    }
    return std::nullopt;
}

/* Equality up to permutation of entries and up to scalar entries (which
 * carry no dimension and are dropped by the reduction). All n = 1 tuples
 * are equal. */
inline bool same_up_to_scalars(const JnfTuple& a, const JnfTuple& b)
{
    if (a.n() != b.n())
        return false;
    auto key = [](const JnfTuple& t) {
        std::vector<Jnf> v;
        for (const auto& j : t.entries())
            if (!is_scalar(j))
                v.push_back(j);
        std::sort(v.begin(), v.end());
        return v;
    };
    return key(a) == key(b);
}

/// Every catalog instance equal to t up to permutation and scalar entries.
inline std::vector<SeriesId> identify(const JnfTuple& t)
{
    std::vector<SeriesId> out;
    if (!t.is_diagonal())
        return out;
    const auto n = t.n();
    for (auto f : kAllFamilies) {
        if (f == Family::Trivial) {
            if (n == 1)
                out.push_back({f, static_cast<std::int64_t>(t.count())});
            continue;
        }
        // every family grows at least one unit of n per unit of parameter
        for (std::int64_t p = 0; p <= n + 1; ++p) {
            SeriesId id{f, p};
            if (!series_valid(id) || series_size(id) != n)
                continue;
            if (same_up_to_scalars(series(id), t))
                out.push_back(id);
        }
    }
    return out;
}

/* Run the reduction on series(id) and check that every step is the
 * catalog instance named by the chain rules. Returns the chain. */
inline std::vector<SeriesId> verify_chain(const SeriesId& id)
{
    std::vector<SeriesId> expected{id};
    while (auto next = chain_successor(expected.back()))
        expected.push_back(*next);
    const auto trace = decide(series(id));
    const auto& steps = trace.steps;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i >= steps.size())
            throw ChainMismatch("chain of " + to_string(id) + " stopped early with verdict " +
                                    std::string(to_string(trace.verdict.reason)),
                                i);
        if (!same_up_to_scalars(steps[i].tuple, series(expected[i])))
            throw ChainMismatch("step " + std::to_string(i) + " of " + to_string(id) + " is " +
                                    to_string(steps[i].tuple) + ", expected " + to_string(expected[i]),
                                i);
    }
    if (steps.size() != expected.size())
        throw ChainMismatch("chain of " + to_string(id) + " continues past " + to_string(expected.back()),
                            expected.size());
    if (!trace.verdict.solvable)
        throw ChainMismatch("chain of " + to_string(id) + " ends unsolvable", steps.size() - 1);
    return expected;
}

// ------------------------------------------------- passages, minimal d

/* Passage: with m_1 = ... = m_mu > m_{mu+1} and mu+1 < length, raise
 * m_{mu+1} by one and lower the last component by one. Keeps n and r,
 * lowers d by 2(m_{mu+1} - m_last + 1). */
inline std::optional<MultiplicityVector> try_passage(const MultiplicityVector& mv)
{
    const auto& p = mv.partition().parts();
    std::size_t mu = 0;
    while (mu < p.size() && p[mu] == p[0])
        ++mu;
    // 1-based: position mu+1 exists and is not the last one
    if (mu + 1 >= p.size())
        return std::nullopt;
    auto raw = p;
    ++raw[mu];
    --raw.back();
    return MultiplicityVector(normalize(raw));
}

inline MultiplicityVector passage(const MultiplicityVector& mv)
{
    if (auto r = try_passage(mv))
        return *r;
    throw PreconditionError("undefined-move: no passage from " + to_string(mv));
}

/// All MVs whose passage is mv, sorted.
inline std::vector<MultiplicityVector> antipassage_targets(const MultiplicityVector& mv)
{
    std::vector<MultiplicityVector> out;
    const auto n = mv.size();
    const auto top = mv.partition().largest();
    // a passage never changes the largest component
    for_each_partition(n - top, top, [&](const std::vector<std::int64_t>& rest) {
        std::vector<std::int64_t> raw{top};
        raw.insert(raw.end(), rest.begin(), rest.end());
        MultiplicityVector x(Partition(std::move(raw)));
        auto y = try_passage(x);
        if (y && *y == mv)
            out.push_back(std::move(x));
    });
    std::sort(out.begin(), out.end());
    return out;
}

/* The MV of size n and rank r with the smallest d: (n-r, r) when
 * r <= n/2, otherwise (m, ..., m, q) with m = n - r and 1 <= q <= m. */
inline MultiplicityVector min_d_mv(std::int64_t n, std::int64_t r)
{
    if (n < 1 || r < 0 || r > n - 1)
        throw PreconditionError("min_d_mv: need 0 <= r <= n-1");
    if (2 * r <= n)
        return MultiplicityVector(normalize({n - r, r}));
    const auto m = n - r;
    auto l = n / m;
    auto q = n % m;
    if (q == 0) {
        q = m;
        --l;
    }
    std::vector<std::int64_t> raw(static_cast<std::size_t>(l), m);
    raw.push_back(q);
    return MultiplicityVector(normalize(raw));
}

/* Rebalancing of two MVs (α,β), (v,w) with α > β, v >= w, β >= w and
 * β + 1 <= n/2: returns (α-1, β+1), (v+1, w-1). The r-sum is unchanged and
 * the d-sum drops by 2((v-α) + (β-w) + 2). */
inline std::pair<MultiplicityVector, MultiplicityVector>
two_mv_move(const MultiplicityVector& a, const MultiplicityVector& b)
{
    if (a.length() != 2 || b.length() != 2 || a.size() != b.size())
        throw PreconditionError("two_mv_move: needs two 2-component MVs of one size");
    const auto alpha = a[0], beta = a[1], v = b[0], w = b[1];
    const auto n = a.size();
    if (!(alpha > beta && v >= w && beta >= w && 2 * (beta + 1) <= n))
        throw PreconditionError("two_mv_move: hypotheses not met");
    return {MultiplicityVector(normalize({alpha - 1, beta + 1})), MultiplicityVector(normalize({v + 1, w - 1}))};
}

// ---------------------------------------------------------- enumeration

inline constexpr std::int64_t kDefaultEnumMaxN = 40;
inline constexpr std::size_t kEnumMaxEntries = 6;

struct EnumConstraints {
    std::int64_t n = 1;
    std::size_t num_entries = 3;
    std::optional<std::int64_t> max_first_part;   // u
    bool forbid_all_ones = false;
    bool forbid_scalar = false;
    std::optional<std::int64_t> require_defect = 2;
    unsigned jobs = 1;
    std::int64_t max_n = kDefaultEnumMaxN;
};

/* All diagonal tuples (up to permutation) meeting the constraints whose
 * defect matches and whose reduction ends solvable. One entry must have
 * every multiplicity <= u when u is set. Output is canonical and sorted.
 *
 * Work is sharded over the candidates for the u-capped entry; every worker
 * walks the remaining entries as a multiset in order of decreasing d, so a
 * partial d-sum that can no longer reach the target cuts the branch. */
inline std::vector<JnfTuple> enumerate_rigid(const EnumConstraints& c)
{
    if (c.n < 1 || c.num_entries < 2)
        throw PreconditionError("enumerate_rigid: need n >= 1 and at least two entries");
    if (c.n > c.max_n || c.num_entries > kEnumMaxEntries)
        throw ResourceError("enumerate_rigid: n <= " + std::to_string(c.max_n) + " and at most " +
                            std::to_string(kEnumMaxEntries) + " entries");
    const auto n = c.n;

    struct Cand {
        MultiplicityVector mv;
        std::int64_t d;
    };
    std::vector<Cand> pool;
    for (auto& p : partitions_of(n)) {
        if (c.forbid_scalar && p.length() == 1)
            continue;
        if (c.forbid_all_ones && p.all_ones())
            continue;
        MultiplicityVector mv(std::move(p));
        pool.push_back({mv, d_of(mv)});
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) { return a.d > b.d; });

    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < pool.size(); ++i)
        if (!c.max_first_part || pool[i].mv.partition().largest() <= *c.max_first_part)
            first.push_back(i);

    const std::optional<std::int64_t> target =
        c.require_defect ? std::optional<std::int64_t>(2 * n * n - *c.require_defect) : std::nullopt;
    const std::size_t rest_count = c.num_entries - 1;

    auto work = [&](std::size_t shard, std::size_t shards, std::set<JnfTuple>& found) {
        std::vector<std::size_t> pick(rest_count);
        for (std::size_t fi = shard; fi < first.size(); fi += shards) {
            const auto& head = pool[first[fi]];
            auto emit = [&]() {
                std::vector<MultiplicityVector> pmv{head.mv};
                for (auto idx : pick)
                    pmv.push_back(pool[idx].mv);
                auto t = JnfTuple::diagonal(pmv).canonical();
                if (found.count(t))
                    return;
                if (decide(t).verdict.solvable)
                    found.insert(std::move(t));
            };
            auto rec = [&](auto&& self, std::size_t depth, std::size_t from, std::int64_t partial) -> void {
                if (depth == rest_count) {
                    if (!target || partial == *target)
                        emit();
                    return;
                }
                const auto left = static_cast<std::int64_t>(rest_count - depth);
                for (std::size_t i = from; i < pool.size(); ++i) {
                    if (target) {
                        if (partial + left * pool[i].d < *target)
                            break;   // d only decreases from here on
                        if (partial + pool[i].d > *target)
                            continue;
                    }
                    pick[depth] = i;
                    self(self, depth + 1, i, partial + pool[i].d);
                }
            };
            rec(rec, 0, 0, head.d);
        }
    };

    const unsigned jobs = std::max(1u, std::min<unsigned>(c.jobs, static_cast<unsigned>(std::max<std::size_t>(1, first.size()))));
    std::vector<std::set<JnfTuple>> shards(jobs);
    if (jobs == 1) {
        work(0, 1, shards[0]);
    } else {
        std::vector<std::jthread> threads;
        for (unsigned s = 0; s < jobs; ++s)
            threads.emplace_back([&, s] { work(s, jobs, shards[s]); });
    }
    std::set<JnfTuple> merged;
    for (auto& s : shards)
        merged.merge(s);
    return {merged.begin(), merged.end()};
}

/// Resource guard for enumeration, overridable through DSPKIT_MAX_N.
inline std::int64_t enum_max_n_from_env()
{
    if (const char* v = std::getenv("DSPKIT_MAX_N")) {
        char* end = nullptr;
        long long x = std::strtoll(v, &end, 10);
        if (end && *end == '\0' && x > 0 && x <= kMaxSize)
            return x;
    }
    return kDefaultEnumMaxN;
}

} // namespace dspkit

#endif
