#include "doctest.h"

#include "bailnet/abuse.hpp"
#include "bailnet/error.hpp"
#include "bailnet/reductions.hpp"

using namespace bailnet;

namespace {

const FinancialNetwork& example(const std::string& name)
{
    static const auto all = bundled_examples();
    return all.at(name);
}

const ContractProposal kFig5{"w", "v", Rational(1), Rational(2)};

} // namespace

TEST_CASE("the fig5 contract turns fig5a into fig5b")
{
    CHECK(apply_contract(example("fig5a_abuse"), kFig5) == example("fig5b_abuse"));
}

TEST_CASE("contract preconditions")
{
    const auto& net = example("fig5a_abuse");
    CHECK_THROWS_AS(apply_contract(net, {"w", "v", Rational(0), Rational(0)}), InputError);
    CHECK_THROWS_AS(apply_contract(net, {"w", "v", Rational(3), Rational(3)}), InputError);
    CHECK_THROWS_AS(apply_contract(net, {"w", "v", Rational(1), Rational(1, 2)}), InputError);
    CHECK_THROWS_AS(apply_contract(net, {"w", "w", Rational(1), Rational(1)}), InputError);
    CHECK_THROWS_AS(apply_contract(net, {"0", "v", Rational(1), Rational(1)}), InputError);
    CHECK_THROWS_AS(apply_contract(net, {"w", "zz", Rational(1), Rational(1)}), InputError);
    const auto drained = apply_contract(net, {"w", "v", Rational(2), Rational(2)});
    CHECK(drained.bank("w").cash.is_zero());
}

TEST_CASE("abuse search finds the fig5 contract at lambda 2")
{
    const auto& net = example("fig5a_abuse");
    const auto reports = find_exploits(net, ObjectiveSpec::welfare_loss(Rational(2)), AbuseGrid{});
    auto it = std::find_if(reports.begin(), reports.end(), [](const auto& r) { return r.proposal == kFig5; });
    REQUIRE(it != reports.end());
    CHECK(it->before.borrower == Rational(0));
    CHECK(it->after.borrower == Rational(1));
    CHECK(it->before.lender == Rational(0));
    CHECK(it->after.lender == Rational(1));
    CHECK(*it->before.central == Rational(3));
    CHECK(*it->after.central == Rational(2));
    CHECK(it->policy_before.set == std::vector<std::string>{"v"});
    CHECK(it->policy_after.set == std::vector<std::string>{"u"});
    CHECK(!it->benign);

    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        CHECK(r.after.lender > r.before.lender);
        CHECK(r.after.borrower > r.before.borrower);
        if (i > 0)
            CHECK(reports[i - 1].combined_gain() >= r.combined_gain());
        // Replays exactly.
        const auto again = assess_contract(net, ObjectiveSpec::welfare_loss(Rational(2)), r.proposal);
        CHECK(again.policy_after.set == r.policy_after.set);
        CHECK(again.after.lender == r.after.lender);
        CHECK(again.after.borrower == r.after.borrower);
        CHECK(again.after.central == r.after.central);
        CHECK(again.benign == r.benign);
    }
}

TEST_CASE("no exploit through a policy that already bails u")
{
    // Preferred fig5a policy per lambda: {v} while 1 + lambda < 2 lambda, i.e. lambda > 1.
    const auto& net = example("fig5a_abuse");
    for (const Rational lambda : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
        CAPTURE(lambda.to_string());
        const auto spec = ObjectiveSpec::welfare_loss(lambda);
        const auto r = assess_contract(net, spec, kFig5);
        const bool exploit = r.after.lender > r.before.lender && r.after.borrower > r.before.borrower;
        const bool u_already = r.policy_before.set == std::vector<std::string>{"u"};
        if (u_already)
            CHECK(!exploit);
        CHECK(exploit == (r.policy_before.set == std::vector<std::string>{"v"} &&
                          r.policy_after.set == std::vector<std::string>{"u"}));
    }
}

TEST_CASE("all-solvent networks have no exploits")
{
    FinancialNetwork net;
    net.beta = Rational(1, 2);
    net.add_bank("a", 5).add_bank("b", 5).add_liability("a", "b", 2);
    CHECK(find_exploits(net, ObjectiveSpec::total_value(), AbuseGrid{}).empty());
    CHECK_THROWS_AS(find_exploits(net, ObjectiveSpec::total_value(), AbuseGrid{Rational(0), Rational(1), Rational(4)}),
                    InputError);
}
