#ifndef DSPKIT_GENERICITY_HPP
#define DSPKIT_GENERICITY_HPP

#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dspkit/error.hpp"
#include "dspkit/jnf.hpp"
#include "dspkit/rational.hpp"

namespace dspkit {

/* q_0 + Σ q_b t_b with the t_b formally independent. Key 0 holds the
 * constant; only nonzero coefficients are stored. */
class ExactValue {
public:
    ExactValue() = default;
    explicit ExactValue(Rational constant) { set(0, std::move(constant)); }

    static ExactValue formal(int b, Rational coeff = 1)
    {
        if (b < 1)
            throw PreconditionError("formal basis index must be >= 1");
        ExactValue v;
        v.set(b, std::move(coeff));
        return v;
    }

    const std::map<int, Rational>& coeffs() const noexcept { return c_; }

    Rational coeff(int b) const
    {
        auto it = c_.find(b);
        return it == c_.end() ? Rational(0) : it->second;
    }
    Rational constant() const { return coeff(0); }

    void set(int b, Rational q)
    {
        if (b < 0)
            throw PreconditionError("negative basis index");
        if (q == 0)
            c_.erase(b);
        else
            c_[b] = std::move(q);
    }

    bool is_zero() const noexcept { return c_.empty(); }
    bool formal_part_zero() const noexcept { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }

    ExactValue& operator+=(const ExactValue& o)
    {
        for (const auto& [b, q] : o.c_)
            set(b, coeff(b) + q);
        return *this;
    }
    ExactValue& operator-=(const ExactValue& o)
    {
        for (const auto& [b, q] : o.c_)
            set(b, coeff(b) - q);
        return *this;
    }
    ExactValue& operator*=(const Rational& s)
    {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& [b, q] : c_)
            q *= s;
        return *this;
    }
    friend ExactValue operator+(ExactValue a, const ExactValue& b) { return a += b; }
    friend ExactValue operator-(ExactValue a, const ExactValue& b) { return a -= b; }
    friend ExactValue operator*(ExactValue a, const Rational& s) { return a *= s; }

    friend bool operator==(const ExactValue&, const ExactValue&) = default;
    friend bool operator<(const ExactValue& a, const ExactValue& b) { return a.c_ < b.c_; }

private:
    std::map<int, Rational> c_;
};

/// "3/2 + t1 - 1/2*t3"; zero prints as "0".
inline std::string to_string(const ExactValue& v)
{
    if (v.is_zero())
        return "0";
    std::string s;
    for (const auto& [b, q] : v.coeffs()) {
        Rational a = q;
        if (!s.empty()) {
            s += a < 0 ? " - " : " + ";
            if (a < 0)
                a = -a;
        }
        if (b == 0)
            s += to_string(a);
        else if (a == 1)
            s += "t" + std::to_string(b);
        else if (a == -1)
            s += "-t" + std::to_string(b);
        else
            s += to_string(a) + "*t" + std::to_string(b);
    }
    return s;
}

enum class Mode { Additive, Multiplicative };

inline std::string_view to_string(Mode m)
{
    return m == Mode::Additive ? "additive" : "multiplicative";
}

inline Mode parse_mode(std::string_view s)
{
    if (s == "additive")
        return Mode::Additive;
    if (s == "multiplicative")
        return Mode::Multiplicative;
    throw ParseError("mode must be 'additive' or 'multiplicative', got '" + std::string(s) + "'");
}

/* Additive mode stores λ directly; multiplicative mode stores x with
 * σ = exp(2πi x), so products of σ become sums of x. */
struct Eigenvalue {
    ExactValue value;
    std::int64_t mult = 1;

    friend bool operator==(const Eigenvalue&, const Eigenvalue&) = default;
};

struct EigenvalueAssignment {
    Mode mode = Mode::Additive;
    std::vector<std::vector<Eigenvalue>> entries;

    friend bool operator==(const EigenvalueAssignment&, const EigenvalueAssignment&) = default;
};

/// Checks the structural invariants; returns n.
inline std::int64_t validate(const EigenvalueAssignment& a)
{
    if (a.entries.size() < 2)
        throw PreconditionError("assignment needs at least two entries");
    std::int64_t n = -1;
    for (const auto& e : a.entries) {
        if (e.empty())
            throw PreconditionError("assignment entry without eigenvalues");
        std::int64_t s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i].mult < 1)
                throw PreconditionError("eigenvalue multiplicity must be positive");
            s += e[i].mult;
            if (s > kMaxSize)
                throw ResourceError("assignment size exceeds limit");
            for (std::size_t k = 0; k < i; ++k)
                if (e[k].value == e[i].value)
                    throw PreconditionError("repeated eigenvalue within one entry");
        }
        if (n >= 0 && s != n)
            throw PreconditionError("assignment entries have different sizes");
        n = s;
    }
    return n;
}

/// Multiplicities of entry j match the eigenvalue slots of t[j] as multisets.
inline bool matches_shape(const EigenvalueAssignment& a, const JnfTuple& t)
{
    if (a.entries.size() != t.count())
        return false;
    for (std::size_t j = 0; j < t.count(); ++j) {
        std::vector<std::int64_t> m;
        for (const auto& ev : a.entries[j])
            m.push_back(ev.mult);
        if (normalize(m) != t[j].eigenvalue_multiplicities().partition())
            return false;
    }
    return true;
}

namespace detail {

inline Rational floor_of(const Rational& q)
{
    BigInt num = numerator(q), den = denominator(q);
    BigInt f = num / den;   // truncates toward zero
    if (num < 0 && f * den != num)
        f -= 1;
    return Rational(f);
}

/// Sum of an entry's values with given (sub-)multiplicities.
inline ExactValue weighted_sum(const std::vector<Eigenvalue>& e, const std::vector<std::int64_t>& mult)
{
    ExactValue s;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (mult[i] != 0)
            s += e[i].value * Rational(mult[i]);
    return s;
}

/// Key under which two partial sums cancel to a relation: additive needs
/// the exact value, multiplicative only the value modulo integers.
inline ExactValue relation_key(ExactValue v, Mode mode)
{
    if (mode == Mode::Multiplicative) {
        auto c = v.constant();
        v.set(0, c - floor_of(c));
    }
    return v;
}

inline bool is_relation(const ExactValue& total, Mode mode)
{
    if (mode == Mode::Additive)
        return total.is_zero();
    return total.formal_part_zero() && denominator(total.constant()) == 1;
}

/// Sub-multiplicity vectors 0 <= m'_i <= m_i with Σ m'_i = kappa, in
/// lexicographically increasing order.
inline std::vector<std::vector<std::int64_t>> sub_vectors(const std::vector<Eigenvalue>& e, std::int64_t kappa)
{
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> suffix(e.size() + 1, 0);
    for (std::size_t i = e.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + e[i].mult;
    std::vector<std::int64_t> cur(e.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
        if (i == e.size()) {
            if (left == 0)
                out.push_back(cur);
            return;
        }
        // the rest must still be able to absorb what is left
        const auto lo = std::max<std::int64_t>(0, left - suffix[i + 1]);
        const auto hi = std::min(left, e[i].mult);
        for (auto v = lo; v <= hi; ++v) {
            cur[i] = v;
            self(self, i + 1, left - v);
        }
        cur[i] = 0;
    };
    rec(rec, 0, kappa);
    return out;
}

} // namespace detail

/// Σ mult·value is 0 (additive) or an integer (multiplicative: Π σ = 1).
inline bool trace_condition(const EigenvalueAssignment& a)
{
    validate(a);
    ExactValue total;
    for (const auto& e : a.entries)
        for (const auto& ev : e)
            total += ev.value * Rational(ev.mult);
    return detail::is_relation(total, a.mode);
}

inline constexpr std::int64_t kGenericityMaxSize = 14;

struct GenericityWitness {
    std::int64_t kappa = 0;
    std::vector<std::vector<std::int64_t>> sub;   // per entry, per eigenvalue

    friend bool operator==(const GenericityWitness&, const GenericityWitness&) = default;
};

struct GenericityResult {
    bool generic = true;
    std::optional<GenericityWitness> witness;
};

/// Number of relation candidates examined at one κ: Π_j #sub-vectors.
inline std::uint64_t relation_candidate_count(const EigenvalueAssignment& a, std::int64_t kappa)
{
    std::uint64_t total = 1;
    for (const auto& e : a.entries)
        total *= detail::sub_vectors(e, kappa).size();
    return total;
}

/* Search every κ in (1, n) for a non-genericity relation. The witness
 * returned is the smallest by (κ, sub-vectors in lex order). The last
 * entry's partial sums are indexed by the value that would cancel them, so
 * the scan is over the product of the other entries only. */
inline GenericityResult is_generic(const EigenvalueAssignment& a)
{
    const auto n = validate(a);
    if (n > kGenericityMaxSize)
        throw ResourceError("is_generic: n must be <= " + std::to_string(kGenericityMaxSize));
    const std::size_t p1 = a.entries.size();
    for (std::int64_t kappa = 2; kappa < n; ++kappa) {
        std::vector<std::vector<std::vector<std::int64_t>>> subs(p1);
        std::vector<std::vector<ExactValue>> sums(p1);
        for (std::size_t j = 0; j < p1; ++j) {
            subs[j] = detail::sub_vectors(a.entries[j], kappa);
            for (const auto& v : subs[j])
                sums[j].push_back(detail::weighted_sum(a.entries[j], v));
        }
        // the first vector stored under a key is the lex-smallest one
        std::map<ExactValue, std::size_t> last;
        for (std::size_t i = 0; i < subs.back().size(); ++i)
            last.try_emplace(detail::relation_key(ExactValue() - sums.back()[i], a.mode), i);

        std::vector<std::size_t> pick(p1 - 1, 0);
        for (;;) {
            ExactValue partial;
            for (std::size_t j = 0; j + 1 < p1; ++j)
                partial += sums[j][pick[j]];
            auto it = last.find(detail::relation_key(partial, a.mode));
            if (it != last.end()) {
                GenericityWitness w{kappa, {}};
                for (std::size_t j = 0; j + 1 < p1; ++j)
                    w.sub.push_back(subs[j][pick[j]]);
                w.sub.push_back(subs.back()[it->second]);
                return {false, std::move(w)};
            }
            // odometer, last position fastest
            bool exhausted = true;
            for (std::size_t j = p1 - 1; j-- > 0;) {
                if (++pick[j] < subs[j].size()) {
                    exhausted = false;
                    break;
                }
                pick[j] = 0;
            }
            if (exhausted)
                break;
        }
    }
    return {true, std::nullopt};
}

/* gcd of all eigenvalue multiplicities over all entries when it is >= 2.
 * Then the trace condition divided by g is itself a relation at κ = n/g,
 * so no additive assignment is generic. */
inline std::optional<std::int64_t> gcd_obstruction(const JnfTuple& t)
{
    std::int64_t g = 0;
    for (const auto& j : t.entries())
        for (const auto& s : j.slots())
            g = std::gcd(g, s.size());
    if (g >= 2)
        return g;
    return std::nullopt;
}

namespace detail {

/// Eigenvalue multiplicities of every entry, in slot order.
inline std::vector<std::vector<std::int64_t>> slot_mults(const JnfTuple& t)
{
    std::vector<std::vector<std::int64_t>> out;
    for (const auto& j : t.entries()) {
        std::vector<std::int64_t> m;
        for (const auto& s : j.slots())
            m.push_back(s.size());
        out.push_back(std::move(m));
    }
    return out;
}

/* Fill the last slot of the last entry so that Σ mult·value equals
 * `total`. Returns false if that makes two values of the entry coincide. */
inline bool close_trace(EigenvalueAssignment& a, const ExactValue& total)
{
    ExactValue rest;
    for (std::size_t j = 0; j < a.entries.size(); ++j)
        for (std::size_t i = 0; i < a.entries[j].size(); ++i)
            if (!(j + 1 == a.entries.size() && i + 1 == a.entries[j].size()))
                rest += a.entries[j][i].value * Rational(a.entries[j][i].mult);
    auto& dep = a.entries.back().back();
    dep.value = (total - rest) * Rational(BigInt(1), BigInt(dep.mult));
    const auto& e = a.entries.back();
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
        if (e[i].value == dep.value)
            return false;
    return true;
}

inline Rational random_rational(std::mt19937_64& rng, int span, int max_den)
{
    std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
    return Rational(num(rng), den(rng));
}

} // namespace detail

/* A seeded random assignment of rational constants (no formal part) that
 * satisfies the trace condition; `total` is the required Σ mult·value
 * (an integer in multiplicative mode). */
inline EigenvalueAssignment random_assignment(const JnfTuple& t, Mode mode, std::uint64_t seed,
                                              const Rational& total = 0)
{
    std::mt19937_64 rng(seed);
    const auto mults = detail::slot_mults(t);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        EigenvalueAssignment a{mode, {}};
        bool distinct = true;
        for (const auto& ms : mults) {
            std::vector<Eigenvalue> e;
            for (auto m : ms) {
                ExactValue v(detail::random_rational(rng, 20, 6));
                for (const auto& prev : e)
                    distinct = distinct && !(prev.value == v);
                e.push_back({std::move(v), m});
            }
            a.entries.push_back(std::move(e));
        }
        if (distinct && detail::close_trace(a, ExactValue(total)))
            return a;
    }
    throw GenerationError("random_assignment: could not draw distinct eigenvalues");
}

inline constexpr int kGenerateRetries = 16;

/* Fresh formal t_b plus a seeded rational offset for every slot; the last
 * slot of the last entry closes the trace condition with Σ mult·value =
 * total. nullopt if the dependent value collides within its entry. */
inline std::optional<EigenvalueAssignment> formal_assignment(const JnfTuple& t, Mode mode, std::mt19937_64& rng,
                                                             const Rational& total)
{
    EigenvalueAssignment a{mode, {}};
    int b = 0;
    for (const auto& ms : detail::slot_mults(t)) {
        std::vector<Eigenvalue> e;
        for (auto m : ms)
            e.push_back({ExactValue::formal(++b) + ExactValue(detail::random_rational(rng, 9, 4)), m});
        a.entries.push_back(std::move(e));
    }
    if (!detail::close_trace(a, ExactValue(total)))
        return std::nullopt;
    return a;
}

/* Total 0 in additive mode; total 1 in multiplicative mode, so that for
 * every divisor g of n the product of the eigenvalues taken with 1/g of
 * their multiplicities is a primitive g-th root of unity. The result is
 * certified by is_generic. */
inline EigenvalueAssignment generate_generic(const JnfTuple& t, Mode mode, std::uint64_t seed)
{
    if (mode == Mode::Additive)
        if (auto g = gcd_obstruction(t))
            throw GenerationError("obstruction: every eigenvalue multiplicity is divisible by " +
                                  std::to_string(*g) + ", so the trace condition forces a relation at kappa = n/" +
                                  std::to_string(*g));
    const Rational total = mode == Mode::Additive ? 0 : 1;
    std::mt19937_64 rng(seed);
    std::optional<GenericityWitness> last_witness;
    for (int attempt = 0; attempt < kGenerateRetries; ++attempt) {
        auto a = formal_assignment(t, mode, rng, total);
        if (!a)
            continue;
        if (!trace_condition(*a))
            throw GenerationError("internal: trace condition not met");
        auto res = is_generic(*a);
        if (res.generic)
            return std::move(*a);
        last_witness = res.witness;
    }
    std::string why = "generation failed after " + std::to_string(kGenerateRetries) + " attempts";
    if (last_witness)
        why += "; last relation at kappa = " + std::to_string(last_witness->kappa);
    throw GenerationError(why);
}

} // namespace dspkit

#endif
