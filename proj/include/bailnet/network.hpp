#ifndef BAILNET_NETWORK_HPP
#define BAILNET_NETWORK_HPP

#include "bailnet/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bailnet {

enum class Seniority { junior, senior };

std::string_view to_string(Seniority s);

struct Bank {
    std::string id;
    Money cash; // external assets
};

struct Liability {
    std::string debtor;
    std::string creditor;
    Money amount;
    Seniority seniority = Seniority::junior;
};

/// Banks, their cash, the liability matrix (stored sparsely as an edge list),
/// the default-cost parameter beta and the optional senior central bank.
struct FinancialNetwork {
    std::vector<Bank> banks;
    std::vector<Liability> liabilities;
    Rational beta{1};
    std::optional<std::string> central_bank;

    std::optional<std::size_t> index_of(std::string_view id) const;
    /// Throws InputError naming the id when it does not exist.
    std::size_t require_index(std::string_view id) const;
    const Bank& bank(std::string_view id) const { return banks[require_index(id)]; }
    Bank& bank(std::string_view id) { return banks[require_index(id)]; }

    /// Sum of all liabilities owed by the bank, junior and senior.
    Money total_liabilities(std::string_view id) const;
    Money total_cash() const;

    FinancialNetwork& add_bank(std::string id, Money cash);
    FinancialNetwork& add_liability(std::string debtor, std::string creditor, Money amount,
                                    Seniority seniority = Seniority::junior);

    friend bool operator==(const FinancialNetwork&, const FinancialNetwork&);
};

bool operator==(const Bank& a, const Bank& b);
bool operator==(const Liability& a, const Liability& b);

struct Violation {
    std::string subject; // bank id or "debtor->creditor"
    std::string rule;    // short machine-readable tag
    std::string message;
};

/// Every broken FinancialNetwork invariant. Empty means the network is valid.
std::vector<Violation> validate(const FinancialNetwork& network);

/// Throws InputError carrying the whole violation list unless the network is valid.
void require_valid(const FinancialNetwork& network);

} // namespace bailnet

#endif
