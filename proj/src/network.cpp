#include "bailnet/network.hpp"

#include "bailnet/error.hpp"

#include <set>
#include <unordered_set>
#include <utility>

namespace bailnet {

std::string_view to_string(Seniority s) { return s == Seniority::senior ? "senior" : "junior"; }

bool operator==(const Bank& a, const Bank& b) { return a.id == b.id && a.cash == b.cash; }

bool operator==(const Liability& a, const Liability& b)
{
    return a.debtor == b.debtor && a.creditor == b.creditor && a.amount == b.amount && a.seniority == b.seniority;
}

bool operator==(const FinancialNetwork& a, const FinancialNetwork& b)
{
    return a.banks == b.banks && a.liabilities == b.liabilities && a.beta == b.beta && a.central_bank == b.central_bank;
}

std::optional<std::size_t> FinancialNetwork::index_of(std::string_view id) const
{
    for (std::size_t i = 0; i < banks.size(); ++i)
        if (banks[i].id == id)
            return i;
    return std::nullopt;
}

std::size_t FinancialNetwork::require_index(std::string_view id) const
{
    if (auto i = index_of(id))
        return *i;
    throw InputError("unknown bank id \"" + std::string(id) + "\"");
}

Money FinancialNetwork::total_liabilities(std::string_view id) const
{
    require_index(id);
    Money sum;
    for (const auto& l : liabilities)
        if (l.debtor == id)
            sum += l.amount;
    return sum;
}

Money FinancialNetwork::total_cash() const
{
    Money sum;
    for (const auto& b : banks)
        sum += b.cash;
    return sum;
}

FinancialNetwork& FinancialNetwork::add_bank(std::string id, Money cash)
{
    banks.push_back({std::move(id), std::move(cash)});
    return *this;
}

FinancialNetwork& FinancialNetwork::add_liability(std::string debtor, std::string creditor, Money amount,
                                                  Seniority seniority)
{
    liabilities.push_back({std::move(debtor), std::move(creditor), std::move(amount), seniority});
    return *this;
}

std::vector<Violation> validate(const FinancialNetwork& network)
{
    std::vector<Violation> out;
    auto add = [&](std::string subject, std::string rule, std::string message) {
        out.push_back({std::move(subject), std::move(rule), std::move(message)});
    };

    if (network.beta < Rational(0) || network.beta > Rational(1))
        add("beta", "beta-range", "beta " + network.beta.to_string() + " is outside [0,1]");

    std::unordered_set<std::string> ids;
    for (const auto& b : network.banks) {
        if (b.id.empty())
            add(b.id, "empty-id", "bank id is empty");
        if (!ids.insert(b.id).second)
            add(b.id, "duplicate-id", "bank id " + b.id + " appears more than once");
        if (b.cash.sign() < 0)
            add(b.id, "negative-cash", "negative cash " + b.cash.to_string() + " at " + b.id);
    }

    if (network.central_bank && !ids.count(*network.central_bank))
        add(*network.central_bank, "unknown-central-bank", "central bank " + *network.central_bank + " is not a bank");

    std::set<std::pair<std::string, std::string>> edges;
    for (const auto& l : network.liabilities) {
        const std::string subject = l.debtor + "->" + l.creditor;
        if (!ids.count(l.debtor))
            add(subject, "unknown-debtor", "liability references unknown debtor " + l.debtor);
        if (!ids.count(l.creditor))
            add(subject, "unknown-creditor", "liability references unknown creditor " + l.creditor);
        if (l.debtor == l.creditor)
            add(l.debtor, "self-liability", "self-liability at " + l.debtor);
        if (l.amount.sign() <= 0)
            add(subject, "nonpositive-amount", "liability amount " + l.amount.to_string() + " must be > 0");
        if (!edges.insert({l.debtor, l.creditor}).second)
            add(subject, "duplicate-liability", "liability " + subject + " appears more than once");
        if (l.seniority == Seniority::senior) {
            if (!network.central_bank)
                add(subject, "senior-without-central-bank", "senior liability " + subject + " but no central bank is designated");
            else if (l.creditor != *network.central_bank)
                add(subject, "senior-to-non-central", "senior liability " + subject + " is not owed to the central bank");
        }
    }
    return out;
}

void require_valid(const FinancialNetwork& network)
{
    auto violations = validate(network);
    if (violations.empty())
        return;
    std::string msg = "invalid network:";
    for (const auto& v : violations)
        msg += " [" + v.message + "]";
    throw InputError(msg);
}

} // namespace bailnet
