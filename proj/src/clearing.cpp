#include "bailnet/clearing.hpp"

#include "bailnet/error.hpp"

#include <algorithm>
#include <functional>

namespace bailnet {

std::size_t ClearingResult::index(std::string_view id) const
{
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id)
            return i;
    throw InputError("unknown bank id \"" + std::string(id) + "\"");
}

std::vector<std::string> ClearingResult::defaults() const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (defaulted[i])
            out.push_back(ids[i]);
    return out;
}

std::size_t ClearingResult::default_count() const
{
    return static_cast<std::size_t>(std::count(defaulted.begin(), defaulted.end(), true));
}

Money market_value(const ClearingResult& clearing, std::string_view bank)
{
    return clearing.market_value[clearing.index(bank)];
}

Money shortfall(const ClearingResult& clearing, std::string_view bank)
{
    return clearing.shortfall[clearing.index(bank)];
}

Clearer::Clearer(FinancialNetwork network) : network_(std::move(network))
{
    require_valid(network_);
    const std::size_t n = network_.banks.size();
    cash_.reserve(n);
    for (const auto& b : network_.banks)
        cash_.push_back(b.cash);
    out_.resize(n);
    junior_total_.assign(n, Money{});
    senior_total_.assign(n, Money{});
    total_.assign(n, Money{});
    if (network_.central_bank)
        central_ = network_.require_index(*network_.central_bank);

    for (std::size_t k = 0; k < network_.liabilities.size(); ++k) {
        const auto& l = network_.liabilities[k];
        const std::size_t u = network_.require_index(l.debtor);
        const std::size_t v = network_.require_index(l.creditor);
        const bool senior = l.seniority == Seniority::senior;
        out_[u].push_back({v, k, l.amount, senior});
        (senior ? senior_total_[u] : junior_total_[u]) += l.amount;
        total_[u] += l.amount;
    }

    // Tarjan emits a component only after everything reachable from it, i.e.
    // creditors before debtors; reversing gives upstream-first order.
    std::vector<long> order(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    long counter = 0;
    component_of_.assign(n, 0);
    std::function<void(std::size_t)> visit = [&](std::size_t u) {
        order[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = 1;
        for (const auto& e : out_[u]) {
            if (order[e.creditor] < 0) {
                visit(e.creditor);
                low[u] = std::min(low[u], low[e.creditor]);
            } else if (on_stack[e.creditor]) {
                low[u] = std::min(low[u], order[e.creditor]);
            }
        }
        if (low[u] == order[u]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp.push_back(w);
            } while (w != u);
            std::sort(comp.begin(), comp.end());
            components_.push_back(std::move(comp));
        }
    };
    for (std::size_t u = 0; u < n; ++u)
        if (order[u] < 0)
            visit(u);
    std::reverse(components_.begin(), components_.end());
    for (std::size_t c = 0; c < components_.size(); ++c)
        for (auto u : components_[c])
            component_of_[u] = c;
}

Money Clearer::payment(std::size_t debtor, const Edge& e, const Money& assets, Mode mode) const
{
    switch (mode) {
    case Mode::full:
        return e.amount;
    case Mode::cover:
        if (e.senior)
            return e.amount;
        return (network_.beta * assets - senior_total_[debtor]) * e.amount / junior_total_[debtor];
    case Mode::drain:
        return e.senior ? network_.beta * assets : Money{};
    }
    return Money{};
}

Clearer::Mode Clearer::default_mode(std::size_t bank, const Money& assets) const
{
    return network_.beta * assets >= senior_total_[bank] ? Mode::cover : Mode::drain;
}

namespace {

// Gaussian elimination over the rationals; `m` is row-major n x (n+1).
// Returns nothing when the system is singular.
std::optional<std::vector<Money>> solve_exact(std::vector<Money> m, std::size_t n)
{
    const std::size_t w = n + 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot * w + col].is_zero())
            ++pivot;
        if (pivot == n)
            return std::nullopt;
        if (pivot != col)
            for (std::size_t j = col; j < w; ++j)
                std::swap(m[pivot * w + j], m[col * w + j]);
        const Money inv = Money(1) / m[col * w + col];
        for (std::size_t j = col; j < w; ++j)
            m[col * w + j] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r * w + col].is_zero())
                continue;
            const Money f = m[r * w + col];
            for (std::size_t j = col; j < w; ++j)
                if (!m[col * w + j].is_zero())
                    m[r * w + j] -= f * m[col * w + j];
        }
    }
    std::vector<Money> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m[i * w + n];
    return x;
}

constexpr long kMaxUpdateSteps = 100000;

} // namespace

// Recomputes the assets of the component's full-paying members from the
// current assets and modes of everyone else in the component.
void Clearer::refresh_full(const std::vector<std::size_t>& members, std::span<const Money> cash,
                           const std::vector<Money>& inflow, std::vector<Money>& assets,
                           const std::vector<Mode>& modes) const
{
    const std::size_t comp = component_of_[members.front()];
    for (auto u : members)
        if (modes[u] == Mode::full)
            assets[u] = cash[u] + inflow[u];
    for (auto v : members)
        for (const auto& e : out_[v])
            if (component_of_[e.creditor] == comp && modes[e.creditor] == Mode::full)
                assets[e.creditor] += payment(v, e, assets[v], modes[v]);
}

// With the default set fixed, walks the defaulted members' assets down from a
// supersolution to the greatest fixed point. Inside one mode assignment the
// update map is affine; its fixed point is solved exactly and approached along
// a straight segment, stopping where the first covering bank can no longer
// cover its senior claim. Banks only ever move from cover to drain.
void Clearer::settle_defaulted(const std::vector<std::size_t>& members, std::span<const Money> cash,
                               const std::vector<Money>& inflow, std::vector<Money>& assets,
                               std::vector<Mode>& modes) const
{
    const std::size_t comp = component_of_[members.front()];
    const Money& beta = network_.beta;
    std::vector<long> slot(size(), -1);
    std::vector<std::size_t> defaulted;
    for (auto u : members)
        if (modes[u] != Mode::full) {
            slot[u] = static_cast<long>(defaulted.size());
            defaulted.push_back(u);
        }
    const std::size_t d = defaulted.size();
    if (d == 0)
        return;

    for (long step = 0;; ++step) {
        if (step > kMaxUpdateSteps)
            throw InvariantError("clearing did not settle within the step limit");

        const std::size_t w = d + 1;
        std::vector<Money> m(d * w);
        for (std::size_t i = 0; i < d; ++i) {
            const auto u = defaulted[i];
            m[i * w + i] = Money(1);
            m[i * w + d] = cash[u] + inflow[u];
        }
        for (auto v : members) {
            for (const auto& e : out_[v]) {
                if (component_of_[e.creditor] != comp || slot[e.creditor] < 0)
                    continue;
                const auto row = static_cast<std::size_t>(slot[e.creditor]);
                if (modes[v] == Mode::full) {
                    m[row * w + d] += e.amount;
                    continue;
                }
                const auto col = static_cast<std::size_t>(slot[v]);
                if (modes[v] == Mode::cover) {
                    if (e.senior) {
                        m[row * w + d] += e.amount;
                    } else {
                        const Money share = e.amount / junior_total_[v];
                        m[row * w + col] -= beta * share;
                        m[row * w + d] -= senior_total_[v] * share;
                    }
                } else if (e.senior) {
                    m[row * w + col] -= beta;
                }
            }
        }

        auto target = solve_exact(std::move(m), d);
        if (!target) {
            // Only reachable with beta = 1: a closed loop of covering banks.
            // Take one exact update step instead; it stays above the answer.
            std::vector<Money> next(d);
            for (std::size_t i = 0; i < d; ++i)
                next[i] = cash[defaulted[i]] + inflow[defaulted[i]];
            for (auto v : members)
                for (const auto& e : out_[v])
                    if (component_of_[e.creditor] == comp && slot[e.creditor] >= 0)
                        next[static_cast<std::size_t>(slot[e.creditor])] += payment(v, e, assets[v], modes[v]);
            bool moved = false;
            for (std::size_t i = 0; i < d; ++i) {
                const auto u = defaulted[i];
                moved |= next[i] != assets[u];
                assets[u] = std::move(next[i]);
                if (modes[u] == Mode::cover && beta * assets[u] < senior_total_[u])
                    modes[u] = Mode::drain;
            }
            if (!moved)
                return;
            continue;
        }

        // Earliest point on the segment where a covering bank hits its senior claim.
        std::optional<Money> t_min;
        for (std::size_t i = 0; i < d; ++i) {
            const auto u = defaulted[i];
            if (modes[u] != Mode::cover || !(beta * (*target)[i] < senior_total_[u]))
                continue;
            const Money t = (beta * assets[u] - senior_total_[u]) / (beta * (assets[u] - (*target)[i]));
            if (!t_min || t < *t_min)
                t_min = t;
        }
        if (!t_min) {
            for (std::size_t i = 0; i < d; ++i)
                assets[defaulted[i]] = std::move((*target)[i]);
            return;
        }
        for (std::size_t i = 0; i < d; ++i) {
            const auto u = defaulted[i];
            assets[u] += *t_min * ((*target)[i] - assets[u]);
        }
        for (std::size_t i = 0; i < d; ++i) {
            const auto u = defaulted[i];
            if (modes[u] == Mode::cover && beta * assets[u] <= senior_total_[u] && beta * (*target)[i] < senior_total_[u])
                modes[u] = Mode::drain;
        }
    }
}

void Clearer::solve_component(const std::vector<std::size_t>& members, std::span<const Money> cash,
                              std::span<const char> forced, const std::vector<Money>& inflow,
                              std::vector<Money>& assets, std::vector<Mode>& modes) const
{
    for (auto u : members)
        modes[u] = Mode::full;
    refresh_full(members, cash, inflow, assets, modes);

    // Grow the default set from "everyone pays in full". Each round's assets
    // are a supersolution for the next, larger default set.
    for (;;) {
        bool grown = false;
        for (auto u : members)
            if (modes[u] == Mode::full && !(forced.size() && forced[u]) && assets[u] < total_[u]) {
                modes[u] = default_mode(u, assets[u]);
                grown = true;
            }
        if (!grown)
            return;
        settle_defaulted(members, cash, inflow, assets, modes);
        refresh_full(members, cash, inflow, assets, modes);
    }
}

ClearingResult Clearer::clear() const { return clear(cash_, {}); }

ClearingResult Clearer::clear(std::span<const Money> cash, std::span<const char> forced) const
{
    const std::size_t n = size();
    if (cash.size() != n || (!forced.empty() && forced.size() != n))
        throw InvariantError("clearing input size mismatch");

    std::vector<Money> inflow(n), assets(n);
    std::vector<Mode> modes(n, Mode::full);

    for (const auto& comp : components_) {
        if (comp.size() == 1) {
            const auto u = comp.front();
            assets[u] = cash[u] + inflow[u];
            const bool is_forced = !forced.empty() && forced[u];
            modes[u] = (is_forced || assets[u] >= total_[u]) ? Mode::full : default_mode(u, assets[u]);
        } else {
            solve_component(comp, cash, forced, inflow, assets, modes);
        }
        const std::size_t c = component_of_[comp.front()];
        for (auto u : comp)
            for (const auto& e : out_[u])
                if (component_of_[e.creditor] != c)
                    inflow[e.creditor] += payment(u, e, assets[u], modes[u]);
    }

    ClearingResult r;
    r.ids.reserve(n);
    for (const auto& b : network_.banks)
        r.ids.push_back(b.id);
    r.recovery.resize(n);
    r.post_default_assets.resize(n);
    r.market_value.resize(n);
    r.shortfall.resize(n);
    r.senior_loss.resize(n);
    r.defaulted.assign(n, false);
    r.forced.assign(n, false);
    r.payments.resize(network_.liabilities.size());

    const Money& beta = network_.beta;
    for (std::size_t u = 0; u < n; ++u) {
        const Money& a = assets[u];
        r.forced[u] = !forced.empty() && forced[u];
        for (const auto& e : out_[u])
            r.payments[e.liability] = payment(u, e, a, modes[u]);
        if (modes[u] == Mode::full) {
            r.recovery[u] = Rational(1);
            r.post_default_assets[u] = a - senior_total_[u];
        } else {
            r.defaulted[u] = true;
            const Money senior_paid = modes[u] == Mode::cover ? senior_total_[u] : beta * a;
            r.post_default_assets[u] = beta * a - senior_paid;
            r.recovery[u] = junior_total_[u].is_zero() ? Rational(0) : r.post_default_assets[u] / junior_total_[u];
            r.senior_loss[u] = senior_total_[u] - senior_paid;
        }
        r.market_value[u] = max(a - total_[u], Money{});
        r.shortfall[u] = max(total_[u] - a, Money{});
    }
    r.assets = std::move(assets);
    return r;
}

ClearingResult clear(const FinancialNetwork& network) { return Clearer(network).clear(); }

} // namespace bailnet
