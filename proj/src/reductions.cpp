#include "bailnet/reductions.hpp"

#include "bailnet/document.hpp"
#include "bailnet/error.hpp"

#include <algorithm>
#include <set>

namespace bailnet {

namespace detail {
struct EmbeddedExample {
    const char* name;
    const char* text;
};
// Generated at configure time from data/examples/*.json.
extern const EmbeddedExample kEmbeddedExamples[];
extern const std::size_t kEmbeddedExampleCount;
} // namespace detail

void SimpleGraph::validate() const
{
    if (n < 0)
        throw InputError("graph: vertex count must be >= 0");
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [a, b] = edges[i];
        const std::string at = "graph.edges[" + std::to_string(i) + "]";
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw InputError(at + ": vertex out of range 0.." + std::to_string(n - 1));
        if (a == b)
            throw InputError(at + ": self-loop at vertex " + std::to_string(a));
        if (!seen.insert(std::minmax(a, b)).second)
            throw InputError(at + ": repeated edge " + std::to_string(a) + "-" + std::to_string(b));
    }
}

int SimpleGraph::degree(int v) const
{
    return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                          [v](const auto& e) { return e.first == v || e.second == v; }));
}

std::string_view to_string(Family f)
{
    switch (f) {
    case Family::vertex_cover: return "vertex-cover";
    case Family::densest_k: return "densest-k";
    case Family::independent_set: return "independent-set";
    case Family::welfare_black_hole: return "welfare";
    case Family::total_value_budget: return "total-value";
    }
    return "?";
}

Family parse_family(std::string_view name)
{
    for (auto f : {Family::vertex_cover, Family::densest_k, Family::independent_set, Family::welfare_black_hole,
                   Family::total_value_budget})
        if (to_string(f) == name)
            return f;
    throw InputError("unknown family \"" + std::string(name) +
                     "\"; expected vertex-cover, densest-k, independent-set, welfare or total-value");
}

std::string vertex_bank_id(int v) { return "v" + std::to_string(v); }

std::string edge_bank_id(int a, int b)
{
    auto [lo, hi] = std::minmax(a, b);
    return "e" + std::to_string(lo) + "-" + std::to_string(hi);
}

namespace {

const std::string kZero = "0";

void require_beta_below_one(const Rational& beta)
{
    if (beta.sign() < 0 || beta >= Rational(1))
        throw InputError("beta must lie in [0,1), got " + beta.to_string());
}

void require_k(int k, const SimpleGraph& g)
{
    if (k < 0 || k > g.n)
        throw InputError("k must lie in 0.." + std::to_string(g.n) + ", got " + std::to_string(k));
}

/// Vertex banks with cash d_v owing 1 + eps/d_v to each incident edge bank.
/// A vertex of degree 0 instead holds nothing and owes eps to bank 0, so it
/// starts insolvent with shortfall eps like every other vertex bank.
void add_vertex_gadgets(ReductionInstance& inst, const SimpleGraph& g, const Rational& eps, Seniority isolated_debt)
{
    auto& net = inst.network;
    for (int v = 0; v < g.n; ++v) {
        const int d = g.degree(v);
        inst.vertex_bank_ids.push_back(vertex_bank_id(v));
        net.add_bank(vertex_bank_id(v), Rational(d));
        if (d == 0) {
            net.add_liability(vertex_bank_id(v), kZero, eps, isolated_debt);
            inst.warnings.push_back("vertex " + std::to_string(v) + " is isolated; its bank owes " +
                                    eps.to_string() + " to bank 0 instead of edge debts");
        }
    }
    for (auto [a, b] : g.edges) {
        for (int v : {a, b})
            net.add_liability(vertex_bank_id(v), edge_bank_id(a, b), Rational(1) + eps / Rational(g.degree(v)));
    }
}

void add_edge_banks(ReductionInstance& inst, const SimpleGraph& g, const Money& cash)
{
    for (auto [a, b] : g.edges) {
        inst.edge_bank_ids.push_back(edge_bank_id(a, b));
        inst.network.add_bank(edge_bank_id(a, b), cash);
    }
}

void set_common_params(ReductionInstance& inst, const SimpleGraph& g, const Rational& beta)
{
    inst.params["beta"] = beta;
    inst.params["n"] = Rational(g.n);
    inst.params["edges"] = Rational(static_cast<long>(g.edges.size()));
}

ReductionInstance densest_like(const SimpleGraph& g, int k, const Rational& beta, const Money& edge_cash,
                               const Money& edge_debt, Family family)
{
    g.validate();
    require_beta_below_one(beta);
    require_k(k, g);
    ReductionInstance inst;
    inst.family = family;
    auto& net = inst.network;
    net.beta = beta;
    const Rational eps = (Rational(1) - beta) / Rational(3);
    net.add_bank(kZero, Rational(0));
    add_vertex_gadgets(inst, g, eps, Seniority::junior);
    add_edge_banks(inst, g, edge_cash);
    for (auto [a, b] : g.edges)
        net.add_liability(edge_bank_id(a, b), kZero, edge_debt);

    const Money budget = Rational(k) * eps;
    set_common_params(inst, g, beta);
    inst.params["epsilon"] = eps;
    inst.params["k"] = Rational(k);
    inst.params["budget"] = budget;
    if (family == Family::densest_k) {
        for (std::size_t m = 0; m <= g.edges.size(); ++m)
            inst.params["m_prime[" + std::to_string(m) + "]"] = Rational(k + static_cast<long>(m));
        inst.objective = ObjectiveSpec::max_saved(budget);
    } else {
        inst.objective = ObjectiveSpec::total_value(budget);
    }
    require_valid(net);
    return inst;
}

} // namespace

ReductionInstance gen_vertex_cover(const SimpleGraph& g, const Rational& beta)
{
    g.validate();
    require_beta_below_one(beta);
    ReductionInstance inst;
    inst.family = Family::vertex_cover;
    auto& net = inst.network;
    net.beta = beta;
    const Rational eps = (Rational(1) - beta) / Rational(2);
    net.add_bank(kZero, Rational(g.n));
    add_vertex_gadgets(inst, g, eps, Seniority::junior);
    add_edge_banks(inst, g, Rational(0));
    for (auto [a, b] : g.edges)
        net.add_liability(edge_bank_id(a, b), kZero, Rational(1) + beta);

    set_common_params(inst, g, beta);
    inst.params["epsilon"] = eps;
    const Rational base = Rational(g.n) + (Rational(1) + beta) * Rational(static_cast<long>(g.edges.size()));
    for (int k = 0; k <= g.n; ++k)
        inst.params["k_prime[" + std::to_string(k) + "]"] = base - Rational(k) * eps;
    inst.objective = ObjectiveSpec::own_value(kZero);
    require_valid(net);
    return inst;
}

ReductionInstance gen_densest_k(const SimpleGraph& g, int k, const Rational& beta)
{
    return densest_like(g, k, beta, Rational(0), Rational(2), Family::densest_k);
}

ReductionInstance gen_total_value_budget(const SimpleGraph& g, int k, const Rational& beta)
{
    return densest_like(g, k, beta, Rational(2 * g.n), Rational(2 * g.n + 2), Family::total_value_budget);
}

ReductionInstance gen_independent_set(const SimpleGraph& g, int k)
{
    g.validate();
    if (k < 0 || k > g.n)
        throw InputError("k must lie in 0.." + std::to_string(g.n) + ", got " + std::to_string(k));
    ReductionInstance inst;
    inst.family = Family::independent_set;
    auto& net = inst.network;
    net.beta = Rational(1);
    net.add_bank("0", Rational(0)).add_bank("1", Rational(0));
    for (int v = 0; v < g.n; ++v) {
        inst.vertex_bank_ids.push_back(vertex_bank_id(v));
        net.add_bank(vertex_bank_id(v), Rational(0));
    }
    add_edge_banks(inst, g, Rational(0));
    for (auto [a, b] : g.edges) {
        net.add_liability(edge_bank_id(a, b), "0", Rational(1));
        net.add_liability(vertex_bank_id(a), edge_bank_id(a, b), Rational(1));
        net.add_liability(vertex_bank_id(b), edge_bank_id(a, b), Rational(1));
    }
    for (int v = 0; v < g.n; ++v)
        net.add_liability(vertex_bank_id(v), "1", Rational(1));

    const Money budget = Rational(static_cast<long>(g.edges.size()) + k);
    set_common_params(inst, g, Rational(1));
    inst.params["k"] = Rational(k);
    inst.params["budget"] = budget;
    inst.params["target"] = budget;
    inst.objective = ObjectiveSpec::max_saved(budget);
    require_valid(net);
    return inst;
}

unsigned black_hole_length(const Rational& beta, int n)
{
    if (beta.sign() <= 0 || beta >= Rational(1))
        throw InputError("black hole needs beta in (0,1), got " + beta.to_string());
    if (n < 1)
        throw InputError("black hole needs n >= 1");
    const Rational target = Rational(1) / Rational(4L * n * n);
    unsigned m = 0;
    Rational power(1);
    while (power > target) {
        power *= beta;
        ++m;
    }
    return m;
}

static std::string black_hole_id(unsigned i) { return "bh" + std::to_string(i); }

FinancialNetwork black_hole_chain(unsigned m, const Rational& beta, const Money& link)
{
    FinancialNetwork net;
    net.beta = beta;
    for (unsigned i = 0; i <= m; ++i)
        net.add_bank(black_hole_id(i), Rational(0));
    for (unsigned i = 0; i < m; ++i)
        net.add_liability(black_hole_id(i), black_hole_id(i + 1), link);
    return net;
}

ReductionInstance gen_welfare_blackhole(const SimpleGraph& g, int k, const Rational& beta, const Rational& lambda)
{
    g.validate();
    if (beta.sign() <= 0 || beta >= Rational(1))
        throw InputError("welfare instance needs beta in (0,1), got " + beta.to_string());
    require_k(k, g);
    if (lambda.sign() < 0)
        throw InputError("lambda must be >= 0, got " + lambda.to_string());
    if (g.n < 1)
        throw InputError("welfare instance needs at least one vertex");

    ReductionInstance inst;
    inst.family = Family::welfare_black_hole;
    auto& net = inst.network;
    net.beta = beta;
    net.central_bank = kZero;
    const Rational eps = beta * (Rational(1) - beta) / Rational(2);
    const unsigned m = black_hole_length(beta, g.n);
    const Money link = Rational(6L * g.n * g.n);

    net.add_bank(kZero, Rational(0));
    add_vertex_gadgets(inst, g, eps, Seniority::senior);
    add_edge_banks(inst, g, Rational(0));
    const auto chain = black_hole_chain(m, beta, link);
    for (const auto& b : chain.banks) {
        inst.black_hole_ids.push_back(b.id);
        net.banks.push_back(b);
    }
    for (auto [a, b] : g.edges) {
        net.add_liability(edge_bank_id(a, b), kZero, beta * (Rational(1) + beta), Seniority::senior);
        net.add_liability(edge_bank_id(a, b), black_hole_id(0), Rational(5));
    }
    for (const auto& l : chain.liabilities)
        net.liabilities.push_back(l);

    // Stand-in for unbounded central-bank cash: more than every claim combined.
    Money all = Rational(1);
    for (const auto& l : net.liabilities)
        all += l.amount;
    net.bank(kZero).cash = all;

    const auto edges = Rational(static_cast<long>(g.edges.size()));
    set_common_params(inst, g, beta);
    inst.params["epsilon"] = eps;
    inst.params["k"] = Rational(k);
    inst.params["m"] = Rational(static_cast<long>(m));
    inst.params["lambda"] = lambda;
    inst.params["link"] = link;
    inst.params["central_cash"] = all;
    inst.params["k_prime"] = (Rational(2) - beta * (Rational(1) + beta)) * edges + Rational(k) * lambda * eps;
    inst.objective = ObjectiveSpec::welfare_loss(lambda);
    require_valid(net);
    return inst;
}

const std::vector<std::string>& example_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < detail::kEmbeddedExampleCount; ++i)
            out.emplace_back(detail::kEmbeddedExamples[i].name);
        return out;
    }();
    return names;
}

std::string_view example_document(std::string_view name)
{
    for (std::size_t i = 0; i < detail::kEmbeddedExampleCount; ++i)
        if (name == detail::kEmbeddedExamples[i].name)
            return detail::kEmbeddedExamples[i].text;
    std::string known;
    for (const auto& n : example_names())
        known += (known.empty() ? "" : ", ") + n;
    throw InputError("unknown example \"" + std::string(name) + "\"; available: " + known);
}

std::map<std::string, FinancialNetwork> bundled_examples()
{
    std::map<std::string, FinancialNetwork> out;
    for (const auto& name : example_names())
        out.emplace(name, parse_document(example_document(name)).network);
    return out;
}

} // namespace bailnet
