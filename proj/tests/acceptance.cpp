// Runs every acceptance criterion of the engine and prints one PASS/FAIL
// line per criterion. Exit status is nonzero if any criterion fails.

#include "bailnet/abuse.hpp"
#include "bailnet/bailnet.h"
#include "bailnet/document.hpp"
#include "bailnet/error.hpp"
#include "bailnet/optimizer.hpp"
#include "bailnet/reductions.hpp"
#include "support/brute.hpp"
#include "support/oracle.hpp"

#include "httplib.h"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#ifndef BAILNET_CLI_PATH
#error "BAILNET_CLI_PATH must name the CLI binary"
#endif

using namespace bailnet;

namespace {

using Ids = std::vector<std::string>;

// Collects failed checks for one criterion.
struct Check {
    std::vector<std::string> failures;

    void operator()(bool ok, const std::string& what)
    {
        if (!ok && failures.size() < 8)
            failures.push_back(what);
        else if (!ok)
            ++extra;
    }
    int extra = 0;
};

const FinancialNetwork& example(const std::string& name)
{
    static const auto all = bundled_examples();
    return all.at(name);
}

std::string str(const Rational& r) { return r.to_string(); }

// ---------------------------------------------------------------------------

void criterion_1(Check& check)
{
    const auto& net = example("fig1");
    const auto base = Clearer(net).clear();
    check(base.defaults() == Ids{"s", "t", "d"} || base.default_count() == 3, "three defaults");
    for (const char* id : {"d", "t", "s"})
        check(base.defaulted[base.index(id)], std::string(id) + " defaults");
    check(!base.defaulted[base.index("u")], "u solvent");
    const auto plan = evaluate(net, ObjectiveSpec::total_value(), {"d"});
    check(plan.total == Rational(1), "bailing d costs " + str(plan.total));
    check(plan.clearing_after.default_count() == 0, "defaults remain after bailing d");
}

void criterion_2(Check& check)
{
    const auto& indirect = example("indirect_bailout");
    const auto base = Clearer(indirect).clear();
    check(base.shortfall[base.index("d")] == Rational(9), "shortfall of d is " + str(base.shortfall[base.index("d")]));
    std::optional<Money> cheapest;
    Ids via;
    for (const auto& p : brute::all_plans(indirect, ObjectiveSpec::total_value())) {
        if (p.clearing_after.defaulted[p.clearing_after.index("d")])
            continue;
        if (!cheapest || p.total < *cheapest) {
            cheapest = p.total;
            via = p.set;
        }
    }
    check(cheapest && *cheapest == Rational(4), "minimum cost to save d");
    check(via == Ids{"v", "w"}, "cheapest rescue goes through v and w");

    const auto plan = evaluate(example("too_big_to_fail"), ObjectiveSpec::total_value(), {"f", "g", "h", "j", "k"});
    check(plan.total == Rational(5), "saving f,g,h,j,k costs " + str(plan.total));
}

void criterion_3(Check& check)
{
    const auto& net = example("fig4_welfare");
    const auto spec = ObjectiveSpec::welfare_loss(Rational(2));
    check(*evaluate(net, spec, {}).welfare_loss == Rational(31), "WL of no bailout");
    check(*evaluate(net, spec, {"w"}).welfare_loss == Rational(36), "WL of {w}");
    const auto best = optimize_exact(net, spec).best;
    check(best.set == Ids{"u", "w"}, "optimal set");
    check(*best.welfare_loss == Rational(14), "optimal WL " + str(*best.welfare_loss));
}

void criterion_4(Check& check)
{
    const Rational two(2);
    const auto a = optimize_exact(example("fig5a_abuse"), ObjectiveSpec::welfare_loss(two)).best;
    const auto b = optimize_exact(example("fig5b_abuse"), ObjectiveSpec::welfare_loss(two)).best;
    check(a.set == Ids{"v"} && *a.welfare_loss == Rational(3), "fig5a policy {v} with WL 3");
    check(b.set == Ids{"u"} && *b.welfare_loss == Rational(4), "fig5b policy {u} with WL 4");

    struct Row {
        const char* network;
        Ids set;
        std::function<Rational(const Rational&)> wl;
        Money central;
    };
    const std::vector<Row> rows{
        {"fig5a_abuse", {}, [](const Rational& l) { return Rational(3, 2) + Rational(3, 2) * l; }, Rational(5, 2)},
        {"fig5a_abuse", {"u"}, [](const Rational& l) { return Rational(2) * l; }, Rational(2)},
        {"fig5a_abuse", {"v"}, [](const Rational& l) { return Rational(1) + l; }, Rational(3)},
        {"fig5b_abuse", {}, [](const Rational& l) { return Rational(5, 2) + Rational(5, 2) * l; }, Rational(3, 2)},
        {"fig5b_abuse", {"u"}, [](const Rational& l) { return Rational(2) * l; }, Rational(2)},
        {"fig5b_abuse", {"v"}, [](const Rational& l) { return Rational(1) + Rational(2) * l; }, Rational(2)},
        {"fig5b_abuse", {"w"}, [](const Rational& l) { return Rational(2) + Rational(2) * l; }, Rational(2)},
    };
    for (const Rational lambda : {Rational(3, 2), two, Rational(3)}) {
        for (const auto& row : rows) {
            const auto plan = evaluate(example(row.network), ObjectiveSpec::welfare_loss(lambda), row.set);
            std::string label = std::string(row.network) + " {";
            for (const auto& id : row.set)
                label += id;
            label += "} at lambda " + str(lambda);
            check(*plan.welfare_loss == row.wl(lambda), label + ": WL " + str(*plan.welfare_loss));
            check(*plan.central_value == row.central, label + ": central value " + str(*plan.central_value));
        }
    }

    const auto reports = find_exploits(example("fig5a_abuse"), ObjectiveSpec::welfare_loss(two), AbuseGrid{});
    const ContractProposal wanted{"w", "v", Rational(1), Rational(2)};
    auto it = std::find_if(reports.begin(), reports.end(), [&](const auto& r) { return r.proposal == wanted; });
    check(it != reports.end(), "w lends 1 to v for 2 is reported");
    if (it != reports.end()) {
        check(it->before.borrower == Rational(0) && it->after.borrower == Rational(1), "v: 0 -> 1");
        check(it->before.lender == Rational(0) && it->after.lender == Rational(1), "w: 0 -> 1");
        check(*it->before.central == Rational(3) && *it->after.central == Rational(2), "central: 3 -> 2");
    }
}

void criterion_5(Check& check)
{
    std::mt19937_64 rng(2024);
    const Rational betas[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int trial = 0; trial < 200; ++trial) {
        oracle::RandomSpec rs;
        rs.min_banks = 2;
        rs.max_banks = 10;
        rs.min_cash = 1;
        rs.random_beta = false;
        rs.beta = betas[trial % 4];
        const auto net = oracle::random_network(rng, rs);
        const auto exact = optimize_exact(net, ObjectiveSpec::total_value()).best;
        const auto analytic = analytic_unlimited_total_value(net).best;
        const std::string at = "trial " + std::to_string(trial);

        Money full_shortfalls;
        const auto top = oracle::top_assets(net);
        const auto owed = oracle::liabilities_total(net);
        for (std::size_t u = 0; u < top.size(); ++u)
            full_shortfalls += max(owed[u] - top[u], Money{});

        check(analytic.objective_value == exact.objective_value, at + ": analytic objective differs");
        check(analytic.set == exact.set, at + ": analytic set differs");
        check(exact.objective_value == net.total_cash(), at + ": optimum is not the total cash");
        check(exact.total == full_shortfalls, at + ": minimal spend " + str(exact.total) + " vs " + str(full_shortfalls));
    }
}

void criterion_6(Check& check, std::string& note)
{
    std::mt19937_64 rng(77);
    int accepted = 0, rejected = 0, compared = 0;
    while (accepted < 100) {
        oracle::RandomSpec rs;
        rs.max_banks = 6;
        rs.max_cash = 6;
        rs.max_amount = 6;
        rs.with_central = accepted % 2 == 1;
        auto net = oracle::random_network(rng, rs);
        if (net.banks.size() > 6)
            continue;
        const auto base = Clearer(net).clear();
        std::optional<Money> smallest;
        for (std::size_t u = 0; u < base.ids.size(); ++u)
            if (base.defaulted[u] && (!smallest || base.shortfall[u] < *smallest))
                smallest = base.shortfall[u];
        const Rational resolution = smallest ? *smallest / Rational(8) : Rational(1);

        std::vector<ObjectiveSpec> specs{ObjectiveSpec::total_value(),
                                         ObjectiveSpec::own_value(net.banks[rng() % net.banks.size()].id),
                                         ObjectiveSpec::own_value(net.banks[rng() % net.banks.size()].id, Rational(2)),
                                         ObjectiveSpec::max_saved(Rational(static_cast<long>(rng() % 8)))};
        if (net.central_bank) {
            specs.push_back(ObjectiveSpec::welfare_loss(Rational(static_cast<long>(rng() % 4) + 1, 2)));
            specs.push_back(ObjectiveSpec::welfare_loss(Rational(1), Rational(3)));
        }
        GridOptions grid;
        grid.max_points = 40000;
        std::vector<std::pair<BailoutPlan, BailoutPlan>> results;
        try {
            for (const auto& spec : specs)
                results.emplace_back(optimize_exact(net, spec).best, oracle_grid_search(net, spec, resolution, grid).best);
        } catch (const CapacityError&) {
            ++rejected;
            continue;
        }
        for (std::size_t i = 0; i < specs.size(); ++i) {
            ++compared;
            check(results[i].first.objective_value >= results[i].second.objective_value,
                  "instance " + std::to_string(accepted) + " " + specs[i].describe() + ": grid " +
                      str(results[i].second.objective_value) + " beats exact " + str(results[i].first.objective_value));
        }
        ++accepted;
    }
    note = std::to_string(compared) + " comparisons, " + std::to_string(rejected) + " oversized grids resampled";
}

void criterion_7(Check& check, std::string& note)
{
    const Rational half(1, 2);
    // The larger welfare instances carry a long black-hole chain of
    // defaulting banks; lift the default exact-search cap for them.
    SolveOptions wide;
    wide.insolvent_cap = 64;
    int graphs = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const auto& g : brute::connected_graphs(n)) {
            ++graphs;
            std::ostringstream label;
            label << "n=" << n << " edges=";
            for (auto [a, b] : g.edges)
                label << a << b << ' ';
            const int vc = brute::min_vertex_cover(g);

            const auto cover = gen_vertex_cover(g, half);
            const auto own = optimize_exact(cover.network, cover.objective, wide).best.objective_value;
            const Rational formula = Rational(n) + (Rational(1) + half) * Rational(static_cast<long>(g.edges.size())) -
                                     cover.params.at("epsilon") * Rational(vc);
            check(own == formula, "(a) " + label.str() + ": " + str(own) + " vs " + str(formula));

            for (int k = 0; k <= n; ++k) {
                const auto dk = gen_densest_k(g, k, half);
                const auto saved = optimize_exact(dk.network, dk.objective, wide).best.saved;
                check(saved == static_cast<std::size_t>(k + brute::densest_k_edges(g, k)),
                      "(b) " + label.str() + "k=" + std::to_string(k));

                const auto is = gen_independent_set(g, k);
                const auto reached = optimize_exact(is.network, is.objective, wide).best.saved ==
                                     static_cast<std::size_t>(g.edges.size()) + k;
                check(reached == brute::has_independent_set(g, k), "(c) " + label.str() + "k=" + std::to_string(k));
            }

            const auto wel = gen_welfare_blackhole(g, vc, half, Rational(1));
            const auto best = optimize_exact(wel.network, wel.objective, wide).best;
            unsigned mask = 0;
            for (std::size_t v = 0; v < wel.vertex_bank_ids.size(); ++v)
                if (std::find(best.set.begin(), best.set.end(), wel.vertex_bank_ids[v]) != best.set.end())
                    mask |= 1u << v;
            const bool vertex_only = std::popcount(mask) == static_cast<int>(best.set.size());
            check(vertex_only && brute::is_vertex_cover(g, mask) && std::popcount(mask) == vc,
                  "(d) " + label.str() + ": optimal set is not a minimum vertex cover");
        }
    }
    note = std::to_string(graphs) + " graphs";
}

void criterion_8(Check& check)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        oracle::RandomSpec rs;
        rs.max_banks = 8;
        rs.with_central = trial % 3 == 0;
        const auto net = oracle::random_network(rng, rs);
        const auto r = Clearer(net).clear();
        const std::string at = "trial " + std::to_string(trial);

        check(oracle::update(net, r.assets) == r.assets, at + ": not a fixed point");

        const auto top = oracle::iterate_from_top(net, 3000);
        const auto low = oracle::iterate_from_cash(net, 3000);
        for (std::size_t u = 0; u < top.size(); ++u) {
            const double a = r.assets[u].to_double();
            check(top[u] >= a - 1e-9, at + ": a clearing above the returned one");
            check(low[u] <= a + 1e-9, at + ": returned clearing below the least one");
        }

        auto richer = net;
        auto& bank = richer.banks[rng() % richer.banks.size()];
        bank.cash += Rational(static_cast<long>(rng() % 5) + 1, 2);
        const auto r2 = Clearer(richer).clear();
        for (std::size_t u = 0; u < r.assets.size(); ++u)
            check(r2.assets[u] >= r.assets[u], at + ": more cash lowered assets of " + r.ids[u]);

        if (!net.central_bank) {
            Money value, losses;
            for (std::size_t u = 0; u < r.ids.size(); ++u) {
                value += r.market_value[u];
                if (r.defaulted[u])
                    losses += (Rational(1) - net.beta) * r.assets[u];
            }
            check(value == net.total_cash() - losses, at + ": conservation identity");
        }

        // Uniqueness is a property of proportional payments: with senior
        // claims two clearing vectors can coexist even at beta = 1, so the
        // check runs on the same instance with every debt pro rata.
        auto frictionless = net;
        frictionless.beta = Rational(1);
        frictionless.central_bank.reset();
        for (auto& l : frictionless.liabilities)
            l.seniority = Seniority::junior;
        for (auto& b : frictionless.banks)
            b.cash += Rational(1);
        const auto rf = Clearer(frictionless).clear();
        const auto lowf = oracle::iterate_from_cash(frictionless, 20000);
        for (std::size_t u = 0; u < lowf.size(); ++u)
            check(std::abs(lowf[u] - rf.assets[u].to_double()) <= 1e-6,
                  at + ": beta=1 clearing not unique at " + rf.ids[u]);
    }
}

void criterion_9(Check& check)
{
    std::mt19937_64 rng(9);
    for (const Rational beta : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
        for (int n : {2, 3, 5}) {
            const unsigned m = black_hole_length(beta, n);
            const Money link = Rational(6L * n * n);
            for (int s = 0; s < 10; ++s) {
                const Money a = link * Rational(static_cast<long>(rng() % 999) + 1, 1000);
                auto chain = black_hole_chain(m, beta, link);
                chain.banks.front().cash = a;
                const auto r = Clearer(chain).clear();
                check(r.assets.back() == a * pow(beta, m),
                      "beta " + str(beta) + " n " + std::to_string(n) + " A " + str(a));
            }
        }
    }
}

std::string run_cli(const std::string& args)
{
    const std::string cmd = std::string(BAILNET_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    if (FILE* pipe = popen(cmd.c_str(), "r")) {
        char buf[4096];
        for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;)
            out.append(buf, n);
        pclose(pipe);
    }
    return out;
}

void criterion_10(Check& check, std::string& note)
{
    // Round trip on bundled and generated documents.
    int documents = 0;
    auto round_trip = [&](const NetworkDocument& doc, const std::string& label) {
        ++documents;
        const auto text = serialize_document(doc);
        const auto again = parse_document(text);
        check(again == doc, label + ": parse(serialize) changed the document");
        check(serialize_document(again) == text, label + ": serialization not stable");
    };
    for (const auto& name : example_names()) {
        const auto doc = parse_document(example_document(name));
        round_trip(doc, name);
        check(serialize_document(doc) == example_document(name), name + ": bundled text differs");
    }
    for (int n = 1; n <= 4; ++n)
        for (const auto& g : brute::connected_graphs(n)) {
            const int k = std::min(2, n);
            const std::vector<ReductionInstance> made{gen_vertex_cover(g, Rational(1, 2)), gen_densest_k(g, k, Rational(1, 3)),
                                                      gen_independent_set(g, k),
                                                      gen_welfare_blackhole(g, k, Rational(3, 4), Rational(2)),
                                                      gen_total_value_budget(g, k, Rational(1, 4))};
            for (const auto& inst : made)
                round_trip(NetworkDocument{inst.network, std::string(to_string(inst.family)), inst.params},
                           std::string(to_string(inst.family)) + " n=" + std::to_string(n));
        }

    // CLI and HTTP produce the same bytes.
    bailnet_server* server = nullptr;
    if (bailnet_server_create("127.0.0.1", 0, nullptr, nullptr, &server) != BAILNET_OK ||
        bailnet_server_start(server) != BAILNET_OK) {
        check(false, std::string("service did not start: ") + bailnet_last_error());
        return;
    }
    httplib::Client http("127.0.0.1", bailnet_server_port(server));
    int compared = 0;
    auto same = [&](const std::string& cli_args, const std::string& path, const std::string& body,
                    const std::string& label) {
        ++compared;
        const auto cli = run_cli(cli_args);
        auto res = body.empty() ? http.Get(path) : http.Post(path, body, "application/json");
        check(res && res->status == 200, label + ": HTTP request failed");
        check(!cli.empty(), label + ": CLI produced nothing");
        if (res)
            check(cli == res->body, label + ": CLI and HTTP differ");
    };
    const std::string dir = std::string(BAILNET_EXAMPLES_DIR) + "/";
    same("examples", "/api/examples", "", "examples");
    for (const auto& name : example_names()) {
        const std::string file = dir + name + ".json";
        const std::string doc(example_document(name));
        const bool central = example(name).central_bank.has_value();
        const std::string objective = central ? "welfare" : "total";
        same("examples " + name, "/api/examples/" + name, "", name + " document");
        same("clear " + file, "/api/clear", "{\"network\":" + doc + "}", name + " clear");
        same("optimize " + file + " --objective " + objective, "/api/optimize",
             "{\"network\":" + doc + ",\"objective\":\"" + objective + "\"}", name + " optimize");
        const auto best = optimize_exact(example(name), central ? ObjectiveSpec::welfare_loss(Rational(2))
                                                                 : ObjectiveSpec::total_value())
                              .best.set;
        std::string ids, list;
        for (const auto& id : best) {
            ids += (ids.empty() ? "" : ",") + id;
            list += (list.empty() ? "\"" : ",\"") + id + "\"";
        }
        same("whatif " + file + " --bailout '" + ids + "'", "/api/whatif",
             "{\"network\":" + doc + ",\"bailout\":[" + list + "]}", name + " whatif");
        if (central)
            same("abuse-search " + file + " --max-face 3", "/api/abuse", "{\"network\":" + doc + ",\"max_face\":\"3\"}",
                 name + " abuse");
    }
    bailnet_server_stop(server);
    bailnet_server_free(server);
    note = std::to_string(documents) + " documents, " + std::to_string(compared) + " CLI/HTTP pairs";
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* title;
        double limit_s;
        std::function<void(Check&, std::string&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "fig1 cascade and single rescue", 1, [](Check& c, std::string&) { criterion_1(c); }},
        {2, "indirect bailout and too-big-to-fail costs", 1, [](Check& c, std::string&) { criterion_2(c); }},
        {3, "fig4 welfare optimum", 1, [](Check& c, std::string&) { criterion_3(c); }},
        {4, "abuse tables and exploit search", 5, [](Check& c, std::string&) { criterion_4(c); }},
        {5, "unlimited total value closed form", 60, [](Check& c, std::string&) { criterion_5(c); }},
        {6, "exact bailouts dominate partial allocations", 120, criterion_6},
        {7, "reduction oracles on connected graphs", 600, criterion_7},
        {8, "clearing properties", 60, [](Check& c, std::string&) { criterion_8(c); }},
        {9, "black-hole attenuation", 60, [](Check& c, std::string&) { criterion_9(c); }},
        {10, "round trip and CLI/HTTP identity", 120, criterion_10},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Check check;
        std::string note;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(check, note);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.limit_s)
            check.failures.push_back("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_s) + " s");
        const bool ok = check.failures.empty();
        failed += ok ? 0 : 1;
        std::printf("criterion %2d: %s  %-46s %8.2f s%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds,
                    note.empty() ? "" : "  ", note.c_str());
        for (const auto& f : check.failures)
            std::printf("    - %s\n", f.c_str());
        if (check.extra > 0)
            std::printf("    - ... %d more\n", check.extra);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
