#ifndef BAILNET_OPTIMIZER_HPP
#define BAILNET_OPTIMIZER_HPP

#include "bailnet/objectives.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

namespace bailnet {

enum class Method { exact, greedy, analytic, oracle };

std::string_view to_string(Method m);

/// Identifier of the deterministic tie-break among equally good plans.
inline constexpr std::string_view kTieBreakPolicy = "objective>min-spend>min-count>lex-ids";

struct SolveOptions {
    std::size_t insolvent_cap = 20;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolveReport {
    BailoutPlan best;
    std::uint64_t explored = 0;  // candidate sets whose clearing was computed
    Method method = Method::exact;
    std::uint64_t ties_broken = 0;
};

/// Optimal over all subsets of the initially insolvent banks (exact bailouts),
/// by depth-first branch and bound. Pruning uses only bounds that hold for
/// every completion of the current set; see optimizer.cpp.
SolveReport optimize_exact(const FinancialNetwork& network, const ObjectiveSpec& spec, const SolveOptions& options = {});

/// Bail out every bank short of funds at full payments (none when beta = 1).
SolveReport analytic_unlimited_total_value(const FinancialNetwork& network);

/// Repeatedly adds the insolvent bank with the best gain per unit of extra
/// spend until nothing feasible improves the objective.
SolveReport optimize_greedy(const FinancialNetwork& network, const ObjectiveSpec& spec, const SolveOptions& options = {});

struct GridOptions {
    std::size_t max_banks = 6;
    std::uint64_t max_points = 2'000'000;
};

/// Test oracle: tries every allocation of multiples of `resolution` (plus the
/// shortfall itself) to each initially insolvent bank, capped at its
/// shortfall, and keeps the best. Amounts in the result are the raw
/// allocations, not exact bailouts.
SolveReport oracle_grid_search(const FinancialNetwork& network, const ObjectiveSpec& spec, const Rational& resolution,
                               const GridOptions& options = {});

} // namespace bailnet

#endif
