#ifndef BAILNET_TESTS_BRUTE_HPP
#define BAILNET_TESTS_BRUTE_HPP

// Exhaustive references: every subset of insolvent banks for the optimizer,
// every vertex subset for the graph problems behind the reductions.

#include "bailnet/objectives.hpp"
#include "bailnet/reductions.hpp"

#include <optional>
#include <vector>

namespace brute {

using bailnet::BailoutPlan;
using bailnet::FinancialNetwork;
using bailnet::ObjectiveSpec;
using bailnet::SimpleGraph;

/// Evaluates every subset of the initially insolvent banks and keeps the best
/// under objective, then lower spend, then fewer banks, then smaller ids.
/// Infeasible plans (over budget) are skipped; the empty plan always exists.
BailoutPlan best_plan(const FinancialNetwork& net, const ObjectiveSpec& spec);

/// All plans, one per subset, in subset-mask order.
std::vector<BailoutPlan> all_plans(const FinancialNetwork& net, const ObjectiveSpec& spec);

/// Connected simple graphs on exactly n vertices, one per isomorphism class.
std::vector<SimpleGraph> connected_graphs(int n);

bool is_vertex_cover(const SimpleGraph& g, unsigned mask);
int min_vertex_cover(const SimpleGraph& g);
/// Most edges induced by any k vertices.
int densest_k_edges(const SimpleGraph& g, int k);
bool has_independent_set(const SimpleGraph& g, int k);

} // namespace brute

#endif
