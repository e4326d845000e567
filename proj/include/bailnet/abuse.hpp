#ifndef BAILNET_ABUSE_HPP
#define BAILNET_ABUSE_HPP

#include "bailnet/optimizer.hpp"

#include <string>
#include <vector>

namespace bailnet {

/// The lender hands `principal` to the borrower now in exchange for a new
/// junior claim of `face` on the borrower.
struct ContractProposal {
    std::string lender;
    std::string borrower;
    Money principal;
    Money face;

    friend bool operator==(const ContractProposal&, const ContractProposal&) = default;
};

FinancialNetwork apply_contract(const FinancialNetwork& network, const ContractProposal& proposal);

struct PartyValues {
    Money lender;
    Money borrower;
    std::optional<Money> central; // net of bailout spend; absent without a central bank
};

struct ExploitReport {
    ContractProposal proposal;
    PartyValues before;
    PartyValues after;
    BailoutPlan policy_before;
    BailoutPlan policy_after;
    /// Neither does the central bank lose value nor does its spend rise, so
    /// the gain is not paid for by the bailout policy.
    bool benign = false;

    Money combined_gain() const { return after.lender - before.lender + after.borrower - before.borrower; }
};

struct AbuseGrid {
    Money step{1};          // principal step
    Money face_step{1};
    Money max_face{4};
};

/// Every single bilateral contract on the grid that leaves both parties
/// strictly better off once the optimal bailout policy reacts. Sorted by
/// combined gain, then lender, borrower, principal and face.
std::vector<ExploitReport> find_exploits(const FinancialNetwork& network, const ObjectiveSpec& spec,
                                         const AbuseGrid& grid, const SolveOptions& options = {});

/// The report for one proposal, whether or not it is an exploit.
ExploitReport assess_contract(const FinancialNetwork& network, const ObjectiveSpec& spec,
                              const ContractProposal& proposal, const SolveOptions& options = {});

} // namespace bailnet

#endif
