#include "bailnet/abuse.hpp"

#include "bailnet/error.hpp"

#include <algorithm>

namespace bailnet {

FinancialNetwork apply_contract(const FinancialNetwork& network, const ContractProposal& p)
{
    require_valid(network);
    if (p.lender == p.borrower)
        throw InputError("a contract needs two different banks, got " + p.lender + " twice");
    for (const auto* id : {&p.lender, &p.borrower})
        if (network.central_bank && *id == *network.central_bank)
            throw InputError("the central bank " + *id + " cannot be a party to a contract");
    if (p.principal.sign() <= 0)
        throw InputError("principal must be > 0, got " + p.principal.to_string());
    if (p.face < p.principal)
        throw InputError("face " + p.face.to_string() + " is below the principal " + p.principal.to_string());

    FinancialNetwork out = network;
    auto& lender = out.bank(p.lender);
    auto& borrower = out.bank(p.borrower);
    if (lender.cash < p.principal)
        throw InputError("lender " + p.lender + " holds " + lender.cash.to_string() + ", less than the principal " +
                         p.principal.to_string());
    lender.cash -= p.principal;
    borrower.cash += p.principal;
    auto existing = std::find_if(out.liabilities.begin(), out.liabilities.end(), [&](const Liability& l) {
        return l.debtor == p.borrower && l.creditor == p.lender;
    });
    if (existing == out.liabilities.end())
        out.add_liability(p.borrower, p.lender, p.face);
    else if (existing->seniority == Seniority::junior)
        existing->amount += p.face;
    else
        throw InputError("borrower " + p.borrower + " already owes senior debt to " + p.lender);
    return out;
}

namespace {

PartyValues values_of(const BailoutPlan& plan, const ContractProposal& p)
{
    const auto& c = plan.clearing_after;
    return {c.market_value[c.index(p.lender)], c.market_value[c.index(p.borrower)], plan.central_value};
}

bool benign(const ExploitReport& r)
{
    const bool central_loses = r.before.central && r.after.central && *r.after.central < *r.before.central;
    return !central_loses && !(r.policy_after.total > r.policy_before.total);
}

} // namespace

ExploitReport assess_contract(const FinancialNetwork& network, const ObjectiveSpec& spec,
                              const ContractProposal& proposal, const SolveOptions& options)
{
    ExploitReport r;
    r.proposal = proposal;
    r.policy_before = optimize_exact(network, spec, options).best;
    const auto after = apply_contract(network, proposal);
    r.policy_after = optimize_exact(after, spec, options).best;
    r.before = values_of(r.policy_before, proposal);
    r.after = values_of(r.policy_after, proposal);
    r.benign = benign(r);
    return r;
}

std::vector<ExploitReport> find_exploits(const FinancialNetwork& network, const ObjectiveSpec& spec,
                                         const AbuseGrid& grid, const SolveOptions& options)
{
    if (grid.step.sign() <= 0 || grid.face_step.sign() <= 0)
        throw InputError("grid steps must be > 0");
    validate_spec(network, spec);
    const auto before = optimize_exact(network, spec, options).best;

    std::vector<ExploitReport> out;
    for (const auto& lender : network.banks) {
        if (network.central_bank && lender.id == *network.central_bank)
            continue;
        for (const auto& borrower : network.banks) {
            if (borrower.id == lender.id || (network.central_bank && borrower.id == *network.central_bank))
                continue;
            for (Money principal = grid.step; principal <= lender.cash; principal += grid.step) {
                for (Money face = principal; face <= grid.max_face; face += grid.face_step) {
                    if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
                        throw CapacityError("abuse search exceeded its time limit");
                    ContractProposal p{lender.id, borrower.id, principal, face};
                    const auto changed = apply_contract(network, p);
                    ExploitReport r;
                    r.proposal = p;
                    r.policy_before = before;
                    r.policy_after = optimize_exact(changed, spec, options).best;
                    r.before = values_of(before, p);
                    r.after = values_of(r.policy_after, p);
                    if (!(r.after.lender > r.before.lender && r.after.borrower > r.before.borrower))
                        continue;
                    r.benign = benign(r);
                    out.push_back(std::move(r));
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const ExploitReport& a, const ExploitReport& b) {
        const auto ga = a.combined_gain(), gb = b.combined_gain();
        if (ga != gb)
            return ga > gb;
        const auto& x = a.proposal;
        const auto& y = b.proposal;
        return std::tie(x.lender, x.borrower, x.principal, x.face) < std::tie(y.lender, y.borrower, y.principal, y.face);
    });
    return out;
}

} // namespace bailnet
