#ifndef BAILNET_REDUCTIONS_HPP
#define BAILNET_REDUCTIONS_HPP

#include "bailnet/objectives.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bailnet {

struct SimpleGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges; // unordered pairs, stored as given

    /// Throws InputError on out-of-range vertices, self-loops or repeated pairs.
    void validate() const;
    int degree(int v) const;
};

enum class Family { vertex_cover, densest_k, independent_set, welfare_black_hole, total_value_budget };

std::string_view to_string(Family f);
/// Accepts the CLI names: vertex-cover, densest-k, independent-set, welfare, total-value.
Family parse_family(std::string_view name);

/// A generated hardness instance plus the numbers needed to check an optimal
/// bailout against the graph problem it encodes.
struct ReductionInstance {
    FinancialNetwork network;
    Family family = Family::vertex_cover;
    std::map<std::string, Rational> params;
    ObjectiveSpec objective;                 // the objective the construction targets
    std::vector<std::string> vertex_bank_ids;  // index = graph vertex
    std::vector<std::string> edge_bank_ids;    // index = position in graph.edges
    std::vector<std::string> black_hole_ids;   // BH_0 .. BH_m
    std::vector<std::string> warnings;
};

std::string vertex_bank_id(int v);
std::string edge_bank_id(int a, int b);

/// Own-value instance for bank 0; k' = n + (1+beta)|E| - k*eps is stored as
/// params "k_prime[k]" for every k in 0..n.
ReductionInstance gen_vertex_cover(const SimpleGraph& graph, const Rational& beta);

/// Saved-banks instance with budget k*eps; saving k vertex banks that span
/// m edges saves k + m banks.
ReductionInstance gen_densest_k(const SimpleGraph& graph, int k, const Rational& beta);

/// Saved-banks instance without default costs; budget and target |E| + k.
ReductionInstance gen_independent_set(const SimpleGraph& graph, int k);

/// Welfare instance with a black-hole chain. k' = (2 - beta(1+beta))|E| + k*lambda*eps.
ReductionInstance gen_welfare_blackhole(const SimpleGraph& graph, int k, const Rational& beta,
                                        const Rational& lambda = Rational(1));

/// Total value on a budget: the densest-k instance with edge banks holding
/// cash 2n and owing 2n + 2.
ReductionInstance gen_total_value_budget(const SimpleGraph& graph, int k, const Rational& beta);

/// Smallest m with beta^m <= 1/(4 n^2), for beta in (0,1) and n >= 1.
unsigned black_hole_length(const Rational& beta, int n);

/// A bare chain BH_0 -> ... -> BH_m, zero cash, each link owing `link`.
FinancialNetwork black_hole_chain(unsigned m, const Rational& beta, const Money& link);

/// The bundled figure networks, keyed by name, in a stable order.
const std::vector<std::string>& example_names();
/// Document text of a bundled example; throws InputError for unknown names.
std::string_view example_document(std::string_view name);
std::map<std::string, FinancialNetwork> bundled_examples();

} // namespace bailnet

#endif
