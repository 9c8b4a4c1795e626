#ifndef DSPKIT_REDUCTION_HPP
#define DSPKIT_REDUCTION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dspkit/error.hpp"
#include "dspkit/jnf.hpp"

namespace dspkit {

/* Necessary conditions (α), (β) and the sufficient condition (ω) for a
 * tuple of size n:
 *   α: Σ d_j >= 2n^2 - 2
 *   β: for every j, Σ_{i != j} r_i >= n
 *   ω: Σ r_j >= 2n
 * Each flag is true exactly when its slack/margin is >= 0. */
struct ConditionReport {
    bool alpha = false;
    std::int64_t alpha_slack = 0;
    bool beta = false;
    std::vector<std::int64_t> beta_margins;
    bool omega = false;
    std::int64_t omega_slack = 0;

    friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

inline ConditionReport check_conditions(const JnfTuple& t)
{
    const auto n = t.n();
    ConditionReport rep;
    rep.alpha_slack = sum_d(t) - (2 * n * n - 2);
    rep.alpha = rep.alpha_slack >= 0;
    const auto rsum = sum_r(t);
    rep.beta = true;
    for (const auto& j : t.entries()) {
        rep.beta_margins.push_back(rsum - r_of(j) - n);
        if (rep.beta_margins.back() < 0)
            rep.beta = false;
    }
    rep.omega_slack = rsum - 2 * n;
    rep.omega = rep.omega_slack >= 0;
    return rep;
}

/// 2n^2 - Σ d_j; the tuple is rigid when this equals 2.
inline std::int64_t defect(const JnfTuple& t)
{
    return 2 * t.n() * t.n() - sum_d(t);
}

inline bool is_rigid(const JnfTuple& t)
{
    return defect(t) == 2;
}

/* Shrink one entry: in the first eigenvalue slot (canonical order) that has
 * the maximal number of blocks, the `shrink` smallest blocks lose one unit
 * each; blocks of size 0 disappear, and so does an emptied slot. */
inline Jnf shrink_entry(const Jnf& j, std::int64_t shrink)
{
    const auto target = j.max_block_count();
    std::vector<Partition> slots = j.slots();
    for (auto& slot : slots) {
        if (static_cast<std::int64_t>(slot.length()) != target)
            continue;
        std::vector<std::int64_t> parts = slot.parts();
        for (std::int64_t k = 0; k < shrink; ++k)
            --parts[parts.size() - 1 - static_cast<std::size_t>(k)];
        slot = normalize(parts);
        break;
    }
    std::erase_if(slots, [](const Partition& p) { return p.empty(); });
    return Jnf(std::move(slots));
}

/* One Ψ step: n -> n1 = Σ r_j - n. Requires n > 1, (β) and not (ω). The
 * entry order of the result matches the input. */
inline JnfTuple psi_step(const JnfTuple& t)
{
    const auto n = t.n();
    if (n <= 1)
        throw PreconditionError("psi_step: n must exceed 1");
    const auto rep = check_conditions(t);
    if (!rep.beta)
        throw PreconditionError("psi_step: condition (beta) fails");
    if (rep.omega)
        throw PreconditionError("psi_step: condition (omega) holds");
    const auto n1 = sum_r(t) - n;
    const auto shrink = n - n1;
    std::vector<Jnf> out;
    out.reserve(t.count());
    for (const auto& j : t.entries()) {
        // (β) gives n - n1 <= n - r_j, the block count of the chosen slot.
        if (shrink > j.max_block_count())
            throw PreconditionError("psi_step: not enough blocks to shrink");
        out.push_back(shrink_entry(j, shrink));
    }
    return JnfTuple(std::move(out));
}

enum class Reason { OmegaHolds, ReducedToSize1, AlphaFails, BetaFails, DegenerateInput };

inline std::string_view to_string(Reason r)
{
    switch (r) {
    case Reason::OmegaHolds: return "OmegaHolds";
    case Reason::ReducedToSize1: return "ReducedToSize1";
    case Reason::AlphaFails: return "AlphaFails";
    case Reason::BetaFails: return "BetaFails";
    case Reason::DegenerateInput: return "DegenerateInput";
    }
    return "?";
}

inline Reason parse_reason(std::string_view s)
{
    for (auto r : {Reason::OmegaHolds, Reason::ReducedToSize1, Reason::AlphaFails, Reason::BetaFails,
                   Reason::DegenerateInput})
        if (to_string(r) == s)
            return r;
    throw ParseError("unknown verdict reason '" + std::string(s) + "'");
}

struct Verdict {
    bool solvable = false;
    Reason reason = Reason::DegenerateInput;
    std::size_t at_step = 0;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/* One row of a reduction trace. `tuple` is the tuple as produced by the
 * previous Ψ step (or the input); `dropped` lists the indices of its
 * scalar entries, which are removed before the conditions are evaluated. */
struct TraceStep {
    JnfTuple tuple;
    std::int64_t n = 0;
    std::vector<std::size_t> dropped;
    ConditionReport report;
    std::optional<std::int64_t> n1;   // set when Ψ was applied at this step

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ReductionTrace {
    std::vector<TraceStep> steps;
    Verdict verdict;

    friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

namespace detail {

inline std::vector<Jnf> non_scalar_entries(const JnfTuple& t, std::vector<std::size_t>& dropped)
{
    std::vector<Jnf> keep;
    for (std::size_t i = 0; i < t.count(); ++i) {
        if (is_scalar(t[i]))
            dropped.push_back(i);
        else
            keep.push_back(t[i]);
    }
    return keep;
}

} // namespace detail

/* Decide solvability for generic eigenvalues by iterating Ψ.
 *
 * (α) is evaluated on the input only; 2n^2 - Σd is invariant under Ψ and
 * under removal of scalar entries. Each step drops scalar entries, then:
 * n = 1 -> solvable; fewer than two non-scalar entries -> degenerate;
 * (ω) -> solvable; not (β) -> not solvable; otherwise apply Ψ. */
inline ReductionTrace decide(const JnfTuple& input)
{
    ReductionTrace tr;
    JnfTuple cur = input;
    for (std::size_t step = 0;; ++step) {
        TraceStep row;
        row.tuple = cur;
        row.n = cur.n();
        auto active = detail::non_scalar_entries(cur, row.dropped);
        auto finish = [&](bool ok, Reason why) {
            tr.steps.push_back(std::move(row));
            tr.verdict = Verdict{ok, why, step};
            return tr;
        };
        row.report = check_conditions(cur);
        if (row.n == 1)
            return finish(true, Reason::ReducedToSize1);
        if (active.size() < 2)
            return finish(false, Reason::DegenerateInput);
        JnfTuple reduced(std::move(active));
        row.report = check_conditions(reduced);
        if (step == 0 && !row.report.alpha)
            return finish(false, Reason::AlphaFails);
        if (row.report.omega)
            return finish(true, Reason::OmegaHolds);
        if (!row.report.beta)
            return finish(false, Reason::BetaFails);
        JnfTuple next = psi_step(reduced);
        if (next.n() >= row.n)
            throw PreconditionError("psi_step did not decrease n");
        row.n1 = next.n();
        tr.steps.push_back(std::move(row));
        cur = std::move(next);
    }
}

/// Solvability of t and of its corresponding diagonal tuple agree.
inline bool decide_diagonal_crosscheck(const JnfTuple& t)
{
    return decide(t).verdict.solvable == decide(corresponding_diagonal(t)).verdict.solvable;
}

/// The tuple after scalar entries are removed, or nullopt when fewer than
/// two entries would remain.
inline std::optional<JnfTuple> without_scalars(const JnfTuple& t)
{
    std::vector<std::size_t> dropped;
    auto keep = detail::non_scalar_entries(t, dropped);
    if (keep.size() < 2)
        return std::nullopt;
    return JnfTuple(std::move(keep));
}

} // namespace dspkit

#endif
