#include "bailnet/objectives.hpp"

#include "bailnet/error.hpp"

#include <algorithm>

namespace bailnet {

ObjectiveSpec ObjectiveSpec::total_value(std::optional<Money> budget)
{
    ObjectiveSpec s;
    s.kind = Kind::total_value;
    s.budget = std::move(budget);
    return s;
}

ObjectiveSpec ObjectiveSpec::own_value(std::string bank, std::optional<Money> budget)
{
    ObjectiveSpec s;
    s.kind = Kind::own_value;
    s.bank = std::move(bank);
    s.budget = std::move(budget);
    return s;
}

ObjectiveSpec ObjectiveSpec::max_saved(Money budget)
{
    ObjectiveSpec s;
    s.kind = Kind::max_saved;
    s.budget = std::move(budget);
    return s;
}

ObjectiveSpec ObjectiveSpec::welfare_loss(Rational lambda, std::optional<Money> budget)
{
    ObjectiveSpec s;
    s.kind = Kind::welfare_loss;
    s.lambda = std::move(lambda);
    s.budget = std::move(budget);
    return s;
}

std::string ObjectiveSpec::describe() const
{
    std::string out;
    switch (kind) {
    case Kind::total_value: out = "total"; break;
    case Kind::own_value: out = "own:" + bank; break;
    case Kind::max_saved: out = "saved"; break;
    case Kind::welfare_loss: out = "welfare(lambda=" + lambda.to_string() + ")"; break;
    }
    if (budget)
        out += "[budget=" + budget->to_string() + "]";
    return out;
}

void validate_spec(const FinancialNetwork& network, const ObjectiveSpec& spec)
{
    if (spec.budget && spec.budget->sign() < 0)
        throw InputError("budget must be >= 0, got " + spec.budget->to_string());
    switch (spec.kind) {
    case ObjectiveSpec::Kind::own_value:
        network.require_index(spec.bank);
        break;
    case ObjectiveSpec::Kind::max_saved:
        if (!spec.budget)
            throw InputError("the saved-banks objective needs a budget");
        break;
    case ObjectiveSpec::Kind::welfare_loss:
        if (spec.lambda.sign() < 0)
            throw InputError("lambda must be >= 0, got " + spec.lambda.to_string());
        if (!network.central_bank)
            throw InputError("welfare loss needs a designated central bank");
        break;
    case ObjectiveSpec::Kind::total_value:
        break;
    }
}

Money welfare_loss(const FinancialNetwork& network, const ClearingResult& clearing, const Rational& lambda,
                   const Money& spend)
{
    if (!network.central_bank)
        throw InputError("welfare loss needs a designated central bank");
    Money default_assets, senior_losses;
    for (std::size_t u = 0; u < clearing.ids.size(); ++u) {
        if (!clearing.defaulted[u])
            continue;
        default_assets += clearing.assets[u];
        senior_losses += clearing.senior_loss[u];
    }
    return (Rational(1) - network.beta) * default_assets + lambda * (senior_losses + spend);
}

Evaluator::Evaluator(const FinancialNetwork& network, ObjectiveSpec spec)
    : clearer_(network), spec_(std::move(spec)), baseline_(clearer_.clear())
{
    validate_spec(clearer_.network(), spec_);
    for (std::size_t u = 0; u < baseline_.ids.size(); ++u)
        if (baseline_.defaulted[u])
            insolvent_.push_back(u);
}

std::size_t Evaluator::saved_count(const ClearingResult& clearing) const
{
    std::size_t saved = 0;
    for (auto u : insolvent_)
        if (!clearing.defaulted[u])
            ++saved;
    return saved;
}

Rational Evaluator::objective_of(const ClearingResult& clearing, const Money& spend) const
{
    switch (spec_.kind) {
    case ObjectiveSpec::Kind::total_value: {
        Money sum;
        for (const auto& v : clearing.market_value)
            sum += v;
        // Unlimited budget: value net of spend. Fixed budget: plain total value.
        return spec_.budget ? sum : sum - spend;
    }
    case ObjectiveSpec::Kind::own_value: {
        const std::size_t b = clearer_.network().require_index(spec_.bank);
        return max(clearing.assets[b] - clearer_.total_liabilities(b) - spend, Money{});
    }
    case ObjectiveSpec::Kind::max_saved:
        return Rational(static_cast<long>(saved_count(clearing)));
    case ObjectiveSpec::Kind::welfare_loss:
        return -welfare_loss(clearer_.network(), clearing, spec_.lambda, spend);
    }
    return Rational{};
}

Evaluator::Outcome Evaluator::evaluate_forced(const std::vector<char>& forced) const
{
    Outcome out;
    out.clearing = clearer_.clear(clearer_.cash(), forced);
    // Book each injection as cash of its recipient, exactly as re-clearing
    // the augmented network would report it.
    for (std::size_t u = 0; u < forced.size(); ++u) {
        if (!forced[u])
            continue;
        auto& gap = out.clearing.shortfall[u];
        if (gap.is_zero())
            out.redundant = true;
        out.total += gap;
        out.clearing.assets[u] += gap;
        out.clearing.post_default_assets[u] += gap;
        gap = Money{};
    }
    out.feasible = within_budget(out.total);
    out.objective = objective_of(out.clearing, out.total);
    return out;
}

BailoutPlan Evaluator::plan(const std::vector<std::size_t>& members) const
{
    const auto& net = clearer_.network();
    std::vector<char> forced(clearer_.size(), 0);
    for (auto u : members) {
        if (!baseline_.defaulted.at(u))
            throw InputError("bank " + net.banks[u].id + " is solvent before any bailout; bailing it out never helps");
        forced[u] = 1;
    }
    const Outcome joint = evaluate_forced(forced);

    BailoutPlan plan;
    FinancialNetwork augmented = net;
    const auto raw = clearer_.clear(clearer_.cash(), forced);
    for (auto u : members) {
        const Money& amount = raw.shortfall[u];
        if (amount.is_zero())
            continue;
        plan.set.push_back(net.banks[u].id);
        plan.amounts[net.banks[u].id] = amount;
        augmented.banks[u].cash += amount;
    }
    std::sort(plan.set.begin(), plan.set.end());
    plan.total = joint.total;

    plan.clearing_after = Clearer(augmented).clear();
    if (plan.clearing_after.assets != joint.clearing.assets || plan.clearing_after.payments != joint.clearing.payments)
        throw InvariantError("exact bailout clearing differs from the forced-solvent clearing");
    for (const auto& id : plan.set) {
        const auto u = plan.clearing_after.index(id);
        if (!plan.clearing_after.market_value[u].is_zero() || plan.clearing_after.defaulted[u])
            throw InvariantError("bailed-out bank " + id + " does not end at market value exactly 0");
    }

    plan.objective_value = objective_of(plan.clearing_after, plan.total);
    plan.feasible = within_budget(plan.total);
    plan.saved = saved_count(plan.clearing_after);
    if (const auto c = clearer_.central()) {
        if (spec_.kind == ObjectiveSpec::Kind::welfare_loss)
            plan.welfare_loss = welfare_loss(net, plan.clearing_after, spec_.lambda, plan.total);
        plan.central_value = max(plan.clearing_after.assets[*c] - clearer_.total_liabilities(*c) - plan.total, Money{});
    }
    return plan;
}

ExactBailout apply_exact_bailouts(const FinancialNetwork& network, const std::vector<std::string>& set)
{
    Clearer clearer(network);
    const auto baseline = clearer.clear();
    std::vector<char> forced(clearer.size(), 0);
    for (const auto& id : set) {
        const auto u = network.require_index(id);
        if (!baseline.defaulted[u])
            throw InputError("bank " + id + " is solvent before any bailout; bailing it out never helps");
        forced[u] = 1;
    }
    const auto joint = clearer.clear(clearer.cash(), forced);
    ExactBailout out{network, {}};
    for (const auto& id : set) {
        const auto u = network.require_index(id);
        out.amounts[id] = joint.shortfall[u];
        out.network.banks[u].cash += joint.shortfall[u];
    }
    return out;
}

BailoutPlan evaluate(const FinancialNetwork& network, const ObjectiveSpec& spec, const std::vector<std::string>& set)
{
    Evaluator ev(network, spec);
    std::vector<std::size_t> members;
    for (const auto& id : set)
        members.push_back(network.require_index(id));
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return ev.plan(members);
}

} // namespace bailnet
