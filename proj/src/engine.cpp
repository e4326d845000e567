#include "engine.hpp"

#include "bailnet/abuse.hpp"
#include "bailnet/document.hpp"
#include "bailnet/optimizer.hpp"
#include "bailnet/reductions.hpp"
#include "json_io.hpp"

#include <algorithm>

namespace bailnet::engine {

namespace {

using io::Json;
using io::number;

Json envelope(Json result)
{
    Json out;
    out["engine"] = kVersion;
    out["tie_break"] = kTieBreakPolicy;
    out["result"] = std::move(result);
    return out;
}

Json parse_request(std::string_view body)
{
    if (body.find_first_not_of(" \t\r\n") == std::string_view::npos)
        return Json::object();
    Json request = io::parse_text(body);
    if (!request.is_object())
        throw InputError("request: expected an object");
    return request;
}

std::optional<Rational> optional_rational(const Json& request, const char* key)
{
    auto it = request.find(key);
    if (it == request.end() || it->is_null())
        return std::nullopt;
    return io::read_rational(*it, key);
}

std::string string_field(const Json& request, const char* key, std::string fallback)
{
    auto it = request.find(key);
    if (it == request.end() || it->is_null())
        return fallback;
    if (!it->is_string())
        throw InputError(std::string(key) + ": expected a string");
    return it->get<std::string>();
}

NetworkDocument request_document(const Json& request)
{
    if (auto it = request.find("network"); it != request.end())
        return io::document_from_json(*it, "network");
    if (auto it = request.find("example"); it != request.end()) {
        if (!it->is_string())
            throw InputError("example: expected a name");
        return parse_document(example_document(it->get<std::string>()));
    }
    throw InputError("network: missing (give a network document or an example name)");
}

SolveOptions solve_options(const Config& config)
{
    SolveOptions options;
    options.insolvent_cap = config.insolvent_cap;
    if (config.timeout_ms > 0)
        options.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(config.timeout_ms);
    return options;
}

std::optional<Rational> param(const NetworkDocument& doc, const std::string& key)
{
    auto it = doc.params.find(key);
    if (it == doc.params.end())
        return std::nullopt;
    return it->second;
}

/// "total", "own:<id>", "saved" or "welfare", with budget and lambda taken
/// from the request or, failing that, from the document's metadata.
ObjectiveSpec objective_from(const Json& request, const NetworkDocument& doc, const std::string& fallback)
{
    const std::string name = string_field(request, "objective", fallback);
    const auto budget = optional_rational(request, "budget");
    const auto lambda = optional_rational(request, "lambda");
    const bool generated_total = doc.family && *doc.family == to_string(Family::total_value_budget);

    if (name == "total")
        return ObjectiveSpec::total_value(budget ? budget : (generated_total ? param(doc, "budget") : std::nullopt));
    if (name.rfind("own:", 0) == 0) {
        if (name.size() == 4)
            throw InputError("objective: own needs a bank id, e.g. own:0");
        return ObjectiveSpec::own_value(name.substr(4), budget);
    }
    if (name == "saved") {
        const auto b = budget ? budget : param(doc, "budget");
        if (!b)
            throw InputError("budget: the saved objective needs a budget");
        return ObjectiveSpec::max_saved(*b);
    }
    if (name == "welfare")
        return ObjectiveSpec::welfare_loss(lambda ? *lambda : param(doc, "lambda").value_or(Rational(1)), budget);
    throw InputError("objective: unknown objective \"" + name + "\"; expected total, own:<id>, saved or welfare");
}

Json id_list(const std::vector<std::string>& ids)
{
    Json out = Json::array();
    for (const auto& id : ids)
        out.push_back(id);
    return out;
}

Json clearing_json(const FinancialNetwork& net, const ClearingResult& r)
{
    Json out;
    out["beta"] = number(net.beta);
    out["defaults"] = id_list(r.defaults());
    Money total_value, default_cost;
    Json banks = Json::array();
    for (std::size_t u = 0; u < r.ids.size(); ++u) {
        Json b;
        b["id"] = r.ids[u];
        b["cash"] = number(net.banks[u].cash);
        b["liabilities"] = number(net.total_liabilities(r.ids[u]));
        b["assets"] = number(r.assets[u]);
        b["post_default_assets"] = number(r.post_default_assets[u]);
        b["recovery"] = number(r.recovery[u]);
        b["market_value"] = number(r.market_value[u]);
        b["shortfall"] = number(r.shortfall[u]);
        b["senior_loss"] = number(r.senior_loss[u]);
        b["defaulted"] = static_cast<bool>(r.defaulted[u]);
        b["forced"] = static_cast<bool>(r.forced[u]);
        banks.push_back(std::move(b));
        total_value += r.market_value[u];
        if (r.defaulted[u])
            default_cost += (Rational(1) - net.beta) * r.assets[u];
    }
    out["banks"] = std::move(banks);
    Json payments = Json::array();
    for (std::size_t k = 0; k < net.liabilities.size(); ++k) {
        const auto& l = net.liabilities[k];
        payments.push_back(Json{{"from", l.debtor},
                                {"to", l.creditor},
                                {"seniority", std::string(to_string(l.seniority))},
                                {"amount", number(l.amount)},
                                {"paid", number(r.payments[k])}});
    }
    out["payments"] = std::move(payments);
    out["total_market_value"] = number(total_value);
    out["default_cost"] = number(default_cost);
    return out;
}

Json plan_json(const FinancialNetwork& net, const BailoutPlan& plan, bool with_clearing = true)
{
    Json out;
    out["set"] = id_list(plan.set);
    Json amounts = Json::object();
    for (const auto& id : plan.set)
        amounts[id] = number(plan.amounts.at(id));
    out["amounts"] = std::move(amounts);
    out["total"] = number(plan.total);
    out["objective_value"] = number(plan.objective_value);
    out["feasible"] = plan.feasible;
    out["saved"] = plan.saved;
    if (plan.welfare_loss)
        out["welfare_loss"] = number(*plan.welfare_loss);
    if (plan.central_value)
        out["central_value"] = number(*plan.central_value);
    if (with_clearing)
        out["clearing"] = clearing_json(net, plan.clearing_after);
    else
        out["defaults"] = id_list(plan.clearing_after.defaults());
    return out;
}

Method parse_method(const std::string& name)
{
    for (auto m : {Method::exact, Method::greedy, Method::analytic})
        if (to_string(m) == name)
            return m;
    throw InputError("method: unknown method \"" + name + "\"; expected exact, greedy or analytic");
}

Json do_clear(const Json& request)
{
    auto doc = request_document(request);
    if (auto beta = optional_rational(request, "beta")) {
        doc.network.beta = *beta;
        require_valid(doc.network);
    }
    return clearing_json(doc.network, Clearer(doc.network).clear());
}

Json do_optimize(const Json& request, const Config& config)
{
    const auto doc = request_document(request);
    const auto spec = objective_from(request, doc, "total");
    const auto method = parse_method(string_field(request, "method", "exact"));
    SolveReport report;
    switch (method) {
    case Method::exact: report = optimize_exact(doc.network, spec, solve_options(config)); break;
    case Method::greedy: report = optimize_greedy(doc.network, spec, solve_options(config)); break;
    case Method::analytic:
        if (spec.kind != ObjectiveSpec::Kind::total_value || spec.budget)
            throw InputError("method: analytic only solves the unlimited total-value objective");
        report = analytic_unlimited_total_value(doc.network);
        break;
    case Method::oracle: break;
    }
    Json out;
    out["objective"] = spec.describe();
    out["method"] = to_string(report.method);
    out["explored"] = report.explored;
    out["ties_broken"] = report.ties_broken;
    out["plan"] = plan_json(doc.network, report.best);
    return out;
}

Json do_whatif(const Json& request, const Config& config)
{
    const auto doc = request_document(request);
    const bool welfare_default =
        doc.network.central_bank && (request.contains("lambda") || doc.params.count("lambda") > 0);
    const auto spec = objective_from(request, doc, welfare_default ? "welfare" : "total");

    std::vector<std::string> set;
    auto it = request.find("bailout");
    if (it == request.end() || !it->is_array())
        throw InputError("bailout: expected a list of bank ids");
    for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string())
            throw InputError("bailout[" + std::to_string(i) + "]: expected a bank id");
        set.push_back((*it)[i].get<std::string>());
    }
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());

    Json out;
    out["objective"] = spec.describe();
    out["plan"] = plan_json(doc.network, evaluate(doc.network, spec, set));
    out["baseline"] = plan_json(doc.network, evaluate(doc.network, spec, {}), false);
    if (auto r = request.find("recommend"); r != request.end() && r->is_boolean() && r->get<bool>())
        out["recommended"] = plan_json(doc.network, optimize_exact(doc.network, spec, solve_options(config)).best, false);
    return out;
}

SimpleGraph graph_from(const Json& request)
{
    const auto& g = io::require(request, "graph", "");
    return parse_graph(g.dump());
}

Json do_generate(const Json& request)
{
    const auto family = parse_family(string_field(request, "family", ""));
    const auto graph = graph_from(request);
    int k = std::min(1, graph.n);
    if (auto it = request.find("k"); it != request.end()) {
        if (!it->is_number_integer())
            throw InputError("k: expected an integer");
        k = it->get<int>();
    }
    const Rational beta = optional_rational(request, "beta").value_or(Rational(1, 2));
    const Rational lambda = optional_rational(request, "lambda").value_or(Rational(1));

    ReductionInstance inst;
    switch (family) {
    case Family::vertex_cover: inst = gen_vertex_cover(graph, beta); break;
    case Family::densest_k: inst = gen_densest_k(graph, k, beta); break;
    case Family::independent_set: inst = gen_independent_set(graph, k); break;
    case Family::welfare_black_hole: inst = gen_welfare_blackhole(graph, k, beta, lambda); break;
    case Family::total_value_budget: inst = gen_total_value_budget(graph, k, beta); break;
    }
    NetworkDocument doc{inst.network, std::string(to_string(family)), inst.params};
    Json out = io::document_json(doc);
    out["metadata"]["objective"] = inst.objective.describe();
    out["metadata"]["warnings"] = id_list(inst.warnings);
    return out;
}

Json values_json(const PartyValues& v)
{
    Json out;
    out["lender"] = number(v.lender);
    out["borrower"] = number(v.borrower);
    if (v.central)
        out["central"] = number(*v.central);
    return out;
}

Json report_json(const FinancialNetwork& before, const ExploitReport& r)
{
    const auto after = apply_contract(before, r.proposal);
    Json out;
    out["proposal"] = Json{{"lender", r.proposal.lender},
                           {"borrower", r.proposal.borrower},
                           {"principal", number(r.proposal.principal)},
                           {"face", number(r.proposal.face)}};
    out["before"] = values_json(r.before);
    out["after"] = values_json(r.after);
    out["policy_before"] = plan_json(before, r.policy_before, false);
    out["policy_after"] = plan_json(after, r.policy_after, false);
    out["combined_gain"] = number(r.combined_gain());
    out["exploit"] = r.after.lender > r.before.lender && r.after.borrower > r.before.borrower;
    out["benign"] = r.benign;
    return out;
}

Json do_abuse(const Json& request, const Config& config)
{
    const auto doc = request_document(request);
    const auto spec = objective_from(request, doc, doc.network.central_bank ? "welfare" : "total");
    Json out;
    out["objective"] = spec.describe();
    Json reports = Json::array();
    if (auto p = request.find("proposal"); p != request.end()) {
        // One contract, reported whether or not it pays off.
        ContractProposal proposal{string_field(*p, "lender", ""), string_field(*p, "borrower", ""),
                                  io::read_rational(io::require(*p, "principal", "proposal"), "proposal.principal"),
                                  io::read_rational(io::require(*p, "face", "proposal"), "proposal.face")};
        reports.push_back(report_json(doc.network, assess_contract(doc.network, spec, proposal, solve_options(config))));
    } else {
        AbuseGrid grid;
        grid.step = optional_rational(request, "step").value_or(Rational(1));
        grid.face_step = optional_rational(request, "face_step").value_or(grid.step);
        grid.max_face = optional_rational(request, "max_face").value_or(Rational(4));
        for (const auto& r : find_exploits(doc.network, spec, grid, solve_options(config)))
            reports.push_back(report_json(doc.network, r));
    }
    out["reports"] = std::move(reports);
    return out;
}

Json do_examples()
{
    Json out;
    out["examples"] = id_list(example_names());
    return out;
}

} // namespace

std::string handle(std::string_view endpoint, std::string_view body, const Config& config)
{
    const Json request = parse_request(body);
    if (endpoint == "clear")
        return io::dump(envelope(do_clear(request)));
    if (endpoint == "optimize")
        return io::dump(envelope(do_optimize(request, config)));
    if (endpoint == "whatif")
        return io::dump(envelope(do_whatif(request, config)));
    if (endpoint == "generate")
        return io::dump(do_generate(request));
    if (endpoint == "abuse")
        return io::dump(envelope(do_abuse(request, config)));
    if (endpoint == "examples")
        return io::dump(envelope(do_examples()));
    if (endpoint == "example")
        return std::string(example_document(string_field(request, "name", "")));
    if (endpoint == "health")
        return io::dump(Json{{"status", "ok"}, {"engine", kVersion}, {"tie_break", kTieBreakPolicy}});
    throw InputError("unknown endpoint \"" + std::string(endpoint) + "\"");
}

std::string error_document(Status status, std::string_view message)
{
    return io::dump(Json{{"error", Json{{"code", status_code_name(status)}, {"message", message}}}});
}

} // namespace bailnet::engine
