#include "bailnet/optimizer.hpp"

#include "bailnet/error.hpp"

#include <algorithm>
#include <numeric>

namespace bailnet {

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::exact: return "exact";
    case Method::greedy: return "greedy";
    case Method::analytic: return "analytic";
    case Method::oracle: return "oracle";
    }
    return "?";
}

namespace {

struct Candidate {
    Rational objective;
    Money total;
    std::vector<std::size_t> members;
    std::vector<std::string> ids; // sorted
};

Candidate make_candidate(const Evaluator& ev, std::vector<std::size_t> members, Rational objective, Money total)
{
    Candidate c{std::move(objective), std::move(total), std::move(members), {}};
    for (auto u : c.members)
        c.ids.push_back(ev.network().banks[u].id);
    std::sort(c.ids.begin(), c.ids.end());
    return c;
}

// Strict "a is preferred to b" under the published tie-break.
bool preferred(const Candidate& a, const Candidate& b)
{
    if (a.objective != b.objective)
        return a.objective > b.objective;
    if (a.total != b.total)
        return a.total < b.total;
    if (a.ids.size() != b.ids.size())
        return a.ids.size() < b.ids.size();
    return a.ids < b.ids;
}

class Search {
public:
    Search(const Evaluator& ev, const SolveOptions& options) : ev_(ev), options_(options)
    {
        const auto& base = ev.baseline();
        order_ = ev.insolvent();
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            if (base.shortfall[a] != base.shortfall[b])
                return base.shortfall[a] < base.shortfall[b];
            return ev.network().banks[a].id < ev.network().banks[b].id;
        });
    }

    void offer(Candidate c)
    {
        if (!best_) {
            best_ = std::move(c);
            return;
        }
        if (c.objective == best_->objective)
            ++ties_;
        if (preferred(c, *best_))
            best_ = std::move(c);
    }

    void run()
    {
        std::vector<char> forced(ev_.clearer().size(), 0);
        auto root = ev_.evaluate_forced(forced);
        ++explored_;
        offer(make_candidate(ev_, {}, root.objective, root.total));
        std::vector<std::size_t> members;
        descend(forced, members, root.clearing, 0);
    }

    const Candidate& best() const { return *best_; }
    std::uint64_t explored() const { return explored_; }
    std::uint64_t ties() const { return ties_; }

private:
    void check_deadline() const
    {
        if (options_.deadline && std::chrono::steady_clock::now() > *options_.deadline)
            throw CapacityError("optimization exceeded its time limit; try --method greedy");
    }

    // Upper bound on the objective of every set I + S with S drawn from
    // order_[next..], plus a lower bound on its spend. Forcing all undecided
    // banks as well gives every bank at least the assets of any completion,
    // so the members' shortfalls there bound their shortfalls from below.
    struct Bound {
        Rational objective;
        Money spend;
    };

    Bound bound(std::vector<char> forced, const std::vector<std::size_t>& members, std::size_t next)
    {
        for (std::size_t j = next; j < order_.size(); ++j)
            forced[order_[j]] = 1;
        const auto top = ev_.clearer().clear(ev_.clearer().cash(), forced);
        ++explored_;
        Money spend;
        for (auto u : members)
            spend += top.shortfall[u];
        const auto& spec = ev_.spec();
        Rational obj;
        switch (spec.kind) {
        case ObjectiveSpec::Kind::total_value: {
            Money sum;
            for (const auto& v : top.market_value)
                sum += v;
            obj = spec.budget ? sum : sum - spend;
            break;
        }
        case ObjectiveSpec::Kind::own_value: {
            const auto b = ev_.network().require_index(spec.bank);
            obj = max(top.assets[b] - ev_.clearer().total_liabilities(b) - spend, Money{});
            break;
        }
        case ObjectiveSpec::Kind::max_saved:
            obj = Rational(static_cast<long>(ev_.saved_count(top)));
            break;
        case ObjectiveSpec::Kind::welfare_loss: {
            Money losses;
            for (const auto& d : top.senior_loss)
                losses += d;
            obj = -(spec.lambda * (losses + spend));
            break;
        }
        }
        return {std::move(obj), std::move(spend)};
    }

    bool hopeless(const Bound& b) const
    {
        if (!ev_.within_budget(b.spend))
            return true;
        const auto& inc = *best_;
        if (b.objective < inc.objective)
            return true;
        // Equal objective can still win the tie only with a smaller spend.
        return b.objective == inc.objective && b.spend > inc.total;
    }

    void descend(std::vector<char>& forced, std::vector<std::size_t>& members, const ClearingResult& here,
                 std::size_t next)
    {
        if (next >= order_.size())
            return;
        check_deadline();
        if (hopeless(bound(forced, members, next)))
            return;
        for (std::size_t j = next; j < order_.size(); ++j) {
            const auto u = order_[j];
            // Already solvent here: adding u is redundant in this whole subtree.
            if (!here.defaulted[u])
                continue;
            forced[u] = 1;
            members.push_back(u);
            auto out = ev_.evaluate_forced(forced);
            ++explored_;
            if (!out.redundant) {
                if (out.feasible)
                    offer(make_candidate(ev_, members, out.objective, out.total));
                descend(forced, members, out.clearing, j + 1);
            }
            members.pop_back();
            forced[u] = 0;
        }
    }

    const Evaluator& ev_;
    const SolveOptions& options_;
    std::vector<std::size_t> order_;
    std::optional<Candidate> best_;
    std::uint64_t explored_ = 0;
    std::uint64_t ties_ = 0;
};

SolveReport finish(const Evaluator& ev, std::vector<std::size_t> members, Method method, std::uint64_t explored,
                   std::uint64_t ties)
{
    std::sort(members.begin(), members.end());
    SolveReport report;
    report.best = ev.plan(members);
    report.method = method;
    report.explored = explored;
    report.ties_broken = ties;
    return report;
}

std::vector<std::size_t> greedy_members(const Evaluator& ev, std::uint64_t& explored, const SolveOptions& options)
{
    std::vector<char> forced(ev.clearer().size(), 0);
    auto current = ev.evaluate_forced(forced);
    ++explored;
    std::vector<std::size_t> members;
    for (;;) {
        if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
            throw CapacityError("optimization exceeded its time limit");
        struct Step {
            std::size_t bank;
            Rational gain;
            Money cost;
        };
        std::optional<Step> pick;
        auto better = [&](const Step& a, const Step& b) {
            // Free or money-saving additions rank first, by gain.
            const bool a_free = a.cost.sign() <= 0, b_free = b.cost.sign() <= 0;
            if (a_free != b_free)
                return a_free;
            if (a_free) {
                if (a.gain != b.gain)
                    return a.gain > b.gain;
            } else {
                const Rational ra = a.gain / a.cost, rb = b.gain / b.cost;
                if (ra != rb)
                    return ra > rb;
            }
            return ev.network().banks[a.bank].id < ev.network().banks[b.bank].id;
        };
        for (auto u : ev.insolvent()) {
            if (forced[u] || !current.clearing.defaulted[u])
                continue;
            forced[u] = 1;
            auto out = ev.evaluate_forced(forced);
            ++explored;
            forced[u] = 0;
            if (out.redundant || !out.feasible)
                continue;
            Step s{u, out.objective - current.objective, out.total - current.total};
            if (s.gain.sign() <= 0)
                continue;
            if (!pick || better(s, *pick))
                pick = std::move(s);
        }
        if (!pick)
            return members;
        forced[pick->bank] = 1;
        members.push_back(pick->bank);
        current = ev.evaluate_forced(forced);
        ++explored;
    }
}

} // namespace

SolveReport optimize_exact(const FinancialNetwork& network, const ObjectiveSpec& spec, const SolveOptions& options)
{
    Evaluator ev(network, spec);
    if (ev.insolvent().size() > options.insolvent_cap)
        throw CapacityError(std::to_string(ev.insolvent().size()) + " insolvent banks exceed the exact-search cap of " +
                            std::to_string(options.insolvent_cap) + "; use the greedy method");
    Search search(ev, options);
    // Seed the incumbent with the greedy plan so pruning bites early.
    std::uint64_t seed_explored = 0;
    auto seed = greedy_members(ev, seed_explored, options);
    {
        std::vector<char> forced(ev.clearer().size(), 0);
        for (auto u : seed)
            forced[u] = 1;
        auto out = ev.evaluate_forced(forced);
        search.offer(make_candidate(ev, seed, out.objective, out.total));
    }
    search.run();
    return finish(ev, search.best().members, Method::exact, search.explored() + seed_explored, search.ties());
}

SolveReport optimize_greedy(const FinancialNetwork& network, const ObjectiveSpec& spec, const SolveOptions& options)
{
    Evaluator ev(network, spec);
    std::uint64_t explored = 0;
    auto members = greedy_members(ev, explored, options);
    return finish(ev, std::move(members), Method::greedy, explored, 0);
}

SolveReport analytic_unlimited_total_value(const FinancialNetwork& network)
{
    Evaluator ev(network, ObjectiveSpec::total_value());
    const auto& clearer = ev.clearer();
    std::vector<std::size_t> members;
    if (network.beta != Rational(1)) {
        // Shortfalls assuming every incoming liability is paid in full.
        std::vector<Money> full(clearer.cash().begin(), clearer.cash().end());
        for (const auto& l : network.liabilities)
            full[network.require_index(l.creditor)] += l.amount;
        for (auto u : ev.insolvent())
            if (full[u] < clearer.total_liabilities(u))
                members.push_back(u);
    }
    auto report = finish(ev, members, Method::analytic, 1, 0);
    for (const auto& id : report.best.set) {
        const auto u = network.require_index(id);
        Money full = clearer.cash()[u];
        for (const auto& l : network.liabilities)
            if (l.creditor == id)
                full += l.amount;
        if (report.best.amounts.at(id) != clearer.total_liabilities(u) - full)
            throw InvariantError("bailout of " + id + " differs from its full-payment shortfall");
    }
    return report;
}

SolveReport oracle_grid_search(const FinancialNetwork& network, const ObjectiveSpec& spec, const Rational& resolution,
                               const GridOptions& options)
{
    if (network.banks.size() > options.max_banks)
        throw CapacityError("grid oracle handles at most " + std::to_string(options.max_banks) + " banks");
    if (resolution.sign() <= 0)
        throw InputError("grid resolution must be > 0");
    Evaluator ev(network, spec);
    const auto& clearer = ev.clearer();
    const auto& insolvent = ev.insolvent();

    std::vector<std::vector<Money>> axes;
    long double points = 1;
    for (auto u : insolvent) {
        const Money& cap = ev.baseline().shortfall[u];
        std::vector<Money> axis;
        for (Money v; v < cap; v += resolution)
            axis.push_back(v);
        axis.push_back(cap);
        points *= static_cast<long double>(axis.size());
        if (points > static_cast<long double>(options.max_points))
            throw CapacityError("grid oracle would visit more than " + std::to_string(options.max_points) + " points");
        axes.push_back(std::move(axis));
    }

    std::vector<std::size_t> at(axes.size(), 0);
    std::vector<Money> cash(clearer.cash().begin(), clearer.cash().end());
    std::optional<std::tuple<Rational, Money, std::vector<std::size_t>>> best;
    std::uint64_t explored = 0;
    std::uint64_t ties = 0;
    for (;;) {
        Money spend;
        for (std::size_t i = 0; i < axes.size(); ++i) {
            const auto u = insolvent[i];
            cash[u] = clearer.cash()[u] + axes[i][at[i]];
            spend += axes[i][at[i]];
        }
        if (ev.within_budget(spend)) {
            const auto clearing = clearer.clear(cash, {});
            ++explored;
            auto obj = ev.objective_of(clearing, spend);
            if (best && obj == std::get<0>(*best))
                ++ties;
            if (!best || obj > std::get<0>(*best) || (obj == std::get<0>(*best) && spend < std::get<1>(*best)))
                best.emplace(std::move(obj), spend, at);
        }
        std::size_t i = 0;
        while (i < at.size() && ++at[i] == axes[i].size())
            at[i++] = 0;
        if (i == at.size())
            break;
    }

    SolveReport report;
    report.method = Method::oracle;
    report.explored = explored;
    report.ties_broken = ties;
    auto& plan = report.best;
    const auto& choice = std::get<2>(*best);
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const auto u = insolvent[i];
        const Money& amount = axes[i][choice[i]];
        cash[u] = clearer.cash()[u] + amount;
        if (amount.is_zero())
            continue;
        plan.set.push_back(network.banks[u].id);
        plan.amounts[network.banks[u].id] = amount;
        plan.total += amount;
    }
    std::sort(plan.set.begin(), plan.set.end());
    plan.clearing_after = clearer.clear(cash, {});
    plan.objective_value = std::get<0>(*best);
    plan.feasible = true;
    plan.saved = ev.saved_count(plan.clearing_after);
    if (const auto c = clearer.central()) {
        if (spec.kind == ObjectiveSpec::Kind::welfare_loss)
            plan.welfare_loss = welfare_loss(network, plan.clearing_after, spec.lambda, plan.total);
        plan.central_value =
            max(plan.clearing_after.assets[*c] - clearer.total_liabilities(*c) - plan.total, Money{});
    }
    return report;
}

} // namespace bailnet
