#ifndef BAILNET_OBJECTIVES_HPP
#define BAILNET_OBJECTIVES_HPP

#include "bailnet/clearing.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bailnet {

/// A central-bank objective. All kinds are maximized: welfare loss is
/// reported through `objective_value = -WL`.
struct ObjectiveSpec {
    enum class Kind { total_value, own_value, max_saved, welfare_loss };

    Kind kind = Kind::total_value;
    std::optional<Money> budget;
    std::string bank;      // own_value only
    Rational lambda{1};    // welfare_loss only

    static ObjectiveSpec total_value(std::optional<Money> budget = std::nullopt);
    static ObjectiveSpec own_value(std::string bank, std::optional<Money> budget = std::nullopt);
    static ObjectiveSpec max_saved(Money budget);
    static ObjectiveSpec welfare_loss(Rational lambda, std::optional<Money> budget = std::nullopt);

    /// Short stable name, e.g. "welfare(lambda=2)".
    std::string describe() const;
};

/// Throws InputError if the spec does not fit the network.
void validate_spec(const FinancialNetwork& network, const ObjectiveSpec& spec);

struct BailoutPlan {
    std::vector<std::string> set;            // sorted ids, every amount positive
    std::map<std::string, Money> amounts;
    Money total;                              // B
    Rational objective_value;
    bool feasible = true;                     // total within budget
    std::size_t saved = 0;                    // insolvent before, solvent after
    std::optional<Money> welfare_loss;        // welfare objectives only
    std::optional<Money> central_value;       // central bank value net of B
    ClearingResult clearing_after;
};

struct ExactBailout {
    FinancialNetwork network;                 // cash augmented by the amounts
    std::map<std::string, Money> amounts;     // zero for members saved by the others
};

/// Forces every member to pay in full, clears around them jointly and charges
/// each its shortfall at that joint clearing. Members must be insolvent in
/// the pre-bailout clearing.
ExactBailout apply_exact_bailouts(const FinancialNetwork& network, const std::vector<std::string>& set);

/// (1-beta) * sum of defaulted assets + lambda * (sum of senior losses + spend).
Money welfare_loss(const FinancialNetwork& network, const ClearingResult& clearing, const Rational& lambda,
                   const Money& spend);

BailoutPlan evaluate(const FinancialNetwork& network, const ObjectiveSpec& spec, const std::vector<std::string>& set);

/// Shared evaluation machinery for the optimizer: one compiled network, its
/// pre-bailout clearing, and objective scoring over forced-solvent sets.
class Evaluator {
public:
    Evaluator(const FinancialNetwork& network, ObjectiveSpec spec);

    const Clearer& clearer() const { return clearer_; }
    const FinancialNetwork& network() const { return clearer_.network(); }
    const ObjectiveSpec& spec() const { return spec_; }
    const ClearingResult& baseline() const { return baseline_; }
    /// Indices of banks defaulting in the pre-bailout clearing.
    const std::vector<std::size_t>& insolvent() const { return insolvent_; }

    struct Outcome {
        ClearingResult clearing;
        Money total;
        Rational objective;
        bool feasible = true;
        bool redundant = false; // some forced member was solvent anyway
    };

    /// Scores the joint exact bailout of the banks marked in `forced`.
    Outcome evaluate_forced(const std::vector<char>& forced) const;

    /// Objective of an arbitrary clearing given the spend that produced it.
    Rational objective_of(const ClearingResult& clearing, const Money& spend) const;
    bool within_budget(const Money& spend) const { return !spec_.budget || spend <= *spec_.budget; }
    std::size_t saved_count(const ClearingResult& clearing) const;

    /// Materializes a plan: re-clears the cash-augmented network and checks
    /// that it reproduces the forced clearing with every member at value 0.
    BailoutPlan plan(const std::vector<std::size_t>& members) const;

private:
    Clearer clearer_;
    ObjectiveSpec spec_;
    ClearingResult baseline_;
    std::vector<std::size_t> insolvent_;
};

} // namespace bailnet

#endif
