#ifndef BAILNET_CLEARING_HPP
#define BAILNET_CLEARING_HPP

#include "bailnet/network.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bailnet {

/// Outcome of clearing a network. Per-bank vectors follow the bank order of
/// the network; `payments` follows its liability order.
struct ClearingResult {
    std::vector<std::string> ids;
    std::vector<Rational> recovery;          // junior recovery rate r_u
    std::vector<Money> assets;               // a_u
    std::vector<Money> post_default_assets;  // a'_u, after default costs and senior payments
    std::vector<Money> market_value;         // V_u
    std::vector<Money> shortfall;            // Delta_u
    std::vector<Money> senior_loss;          // delta_u, zero without a central bank
    std::vector<Money> payments;             // p_{u,v} per liability
    std::vector<bool> defaulted;             // membership in N^-
    std::vector<bool> forced;                // paid in full because of a bailout

    std::size_t index(std::string_view id) const;
    std::vector<std::string> defaults() const;
    std::size_t default_count() const;

    friend bool operator==(const ClearingResult&, const ClearingResult&) = default;
};

Money market_value(const ClearingResult& clearing, std::string_view bank);
Money shortfall(const ClearingResult& clearing, std::string_view bank);

/// Greatest clearing vector engine. Construction validates the network and
/// precomputes the strongly connected components of the liability graph,
/// which are then cleared upstream-first. Inside a component the default set
/// is grown monotonically from "everyone solvent"; with the default set fixed
/// the defaulted banks' assets are found by exact piecewise-linear descent
/// (a bank either covers its senior claim or drains everything into it).
class Clearer {
public:
    explicit Clearer(FinancialNetwork network);

    const FinancialNetwork& network() const { return network_; }
    std::size_t size() const { return network_.banks.size(); }
    std::span<const Money> cash() const { return cash_; }
    const Money& total_liabilities(std::size_t bank) const { return total_[bank]; }
    const Money& senior_liabilities(std::size_t bank) const { return senior_total_[bank]; }
    std::optional<std::size_t> central() const { return central_; }

    ClearingResult clear() const;

    /// Clears with the given cash vector and with every `forced` bank paying
    /// its liabilities in full regardless of its assets. Both spans have one
    /// entry per bank (an empty `forced` span means no bank is forced).
    ClearingResult clear(std::span<const Money> cash, std::span<const char> forced) const;

private:
    enum class Mode : std::uint8_t { full, cover, drain };

    struct Edge {
        std::size_t creditor;
        std::size_t liability;
        Money amount;
        bool senior;
    };

    Money payment(std::size_t debtor, const Edge& e, const Money& assets, Mode mode) const;
    Mode default_mode(std::size_t bank, const Money& assets) const;
    void refresh_full(const std::vector<std::size_t>& members, std::span<const Money> cash,
                      const std::vector<Money>& inflow, std::vector<Money>& assets,
                      const std::vector<Mode>& modes) const;
    void settle_defaulted(const std::vector<std::size_t>& members, std::span<const Money> cash,
                          const std::vector<Money>& inflow, std::vector<Money>& assets,
                          std::vector<Mode>& modes) const;
    void solve_component(const std::vector<std::size_t>& members, std::span<const Money> cash,
                         std::span<const char> forced, const std::vector<Money>& inflow,
                         std::vector<Money>& assets, std::vector<Mode>& modes) const;

    FinancialNetwork network_;
    std::vector<Money> cash_;
    std::vector<std::vector<Edge>> out_;
    std::vector<Money> junior_total_;
    std::vector<Money> senior_total_;
    std::vector<Money> total_;
    std::vector<std::vector<std::size_t>> components_; // upstream first
    std::vector<std::size_t> component_of_;
    std::optional<std::size_t> central_;
};

/// Convenience wrapper: validate and clear.
ClearingResult clear(const FinancialNetwork& network);

} // namespace bailnet

#endif
