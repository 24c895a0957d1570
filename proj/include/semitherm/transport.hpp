#pragma once

#include <cstddef>
#include <vector>

#include "semitherm/dynamics.hpp"
#include "semitherm/grid.hpp"

namespace semitherm {

// Min-cost flow with real capacities (primal-dual: Dijkstra with
// potentials, then a blocking flow on the zero reduced-cost subgraph).
class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes);

  int add_arc(int from, int to, double capacity, double cost);
  // supply[i] > 0 is a source, < 0 a sink; must sum to ~0.
  // Returns the optimal cost; throws NumericalGuard if infeasible.
  double solve(const std::vector<double>& supply);

  // Node potentials y with y_u - y_v <= cost(u,v) on every arc with
  // spare capacity; sum_i supply_i y_i equals the optimum.
  std::vector<double> dual() const;
  double flow(int arc) const;
  int nodes() const { return n_; }

 private:
  struct Arc {
    int to;
    int rev;
    double cap;
    double cost;
  };
  bool dijkstra(int s, int t);
  double blocking_flow(int s, int t, double limit);
  double dfs(int u, int t, double pushed);

  int n_;
  std::vector<std::vector<Arc>> g_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<double> orig_cap_;
  std::vector<double> pot_;
  std::vector<double> dist_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
  double eps_ = 1e-15;
  double cost_tol_ = 1e-12;
};

struct TransportResult {
  double cost = 0.0;
  // Kantorovich potential on the atoms (certificate)
  std::vector<double> potential;
};

// Exact OT between atoms at arbitrary points with cost d*(x,y); masses of
// the two sides must agree. Dense bipartite formulation after cancelling
// common mass at shared points.
TransportResult transport_dstar_atoms(const MetricConstants& mc, const std::vector<double>& xs,
                                      const std::vector<double>& mx,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& my);

// W-bar between grid measures. For alpha = 1 the truncated cost is the
// shortest-path metric of the circle graph plus a hub at distance 1/2 from
// every node, so the transshipment problem is solved exactly at any N.
// Otherwise measures above `max_atoms` bins are coarsened first.
double wasserstein_dstar(const MetricConstants& mc, const GridMeasure& mu, const GridMeasure& nu,
                         std::size_t max_atoms = 512);

// Forced dense route (coarsened above max_atoms); used as a cross-check.
double wasserstein_dstar_dense(const MetricConstants& mc, const GridMeasure& mu,
                               const GridMeasure& nu, std::size_t max_atoms = 512);

// W with arc-length cost on the circle: (1/N) sum_j |D_j - median D|,
// D the cumulative difference.
double wasserstein_euclid(const GridMeasure& mu, const GridMeasure& nu);

// Same for atoms at arbitrary points.
double wasserstein_euclid_atoms(const std::vector<double>& xs, const std::vector<double>& mx,
                                const std::vector<double>& ys, const std::vector<double>& my);

enum class MetricKind { euclid, dstar };
double wasserstein(const GridMeasure& mu, const GridMeasure& nu, MetricKind kind,
                   const MetricConstants& mc);

}  // namespace semitherm
