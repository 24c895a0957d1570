#include "semitherm/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "semitherm/errors.hpp"

namespace semitherm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

MinCostFlow::MinCostFlow(int nodes) : n_(nodes), g_(static_cast<std::size_t>(nodes) + 2) {}

int MinCostFlow::add_arc(int from, int to, double capacity, double cost) {
  auto& a = g_[static_cast<std::size_t>(from)];
  auto& b = g_[static_cast<std::size_t>(to)];
  a.push_back({to, static_cast<int>(b.size()), capacity, cost});
  b.push_back({from, static_cast<int>(a.size()) - 1, 0.0, -cost});
  arcs_.emplace_back(from, static_cast<int>(a.size()) - 1);
  orig_cap_.push_back(capacity);
  return static_cast<int>(arcs_.size()) - 1;
}

double MinCostFlow::flow(int arc) const {
  const auto [u, idx] = arcs_[static_cast<std::size_t>(arc)];
  return orig_cap_[static_cast<std::size_t>(arc)] -
         g_[static_cast<std::size_t>(u)][static_cast<std::size_t>(idx)].cap;
}

bool MinCostFlow::dijkstra(int s, int t) {
  const std::size_t n = g_.size();
  dist_.assign(n, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist_[static_cast<std::size_t>(s)] = 0.0;
  pq.emplace(0.0, s);
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    const auto uu = static_cast<std::size_t>(u);
    if (d > dist_[uu]) continue;
    for (const Arc& e : g_[uu]) {
      if (e.cap <= eps_) continue;
      const auto v = static_cast<std::size_t>(e.to);
      double rc = e.cost + pot_[uu] - pot_[v];
      if (rc < 0.0) rc = 0.0;
      const double nd = d + rc;
      if (nd < dist_[v]) {
        dist_[v] = nd;
        pq.emplace(nd, e.to);
      }
    }
  }
  const double dt = dist_[static_cast<std::size_t>(t)];
  if (dt == kInf) return false;
  for (std::size_t v = 0; v < n; ++v) pot_[v] += std::min(dist_[v], dt);
  return true;
}

double MinCostFlow::dfs(int u, int t, double pushed) {
  if (u == t) return pushed;
  const auto uu = static_cast<std::size_t>(u);
  for (std::size_t& i = iter_[uu]; i < g_[uu].size(); ++i) {
    Arc& e = g_[uu][i];
    const auto v = static_cast<std::size_t>(e.to);
    if (e.cap <= eps_ || level_[v] != level_[uu] + 1) continue;
    if (std::fabs(e.cost + pot_[uu] - pot_[v]) > cost_tol_) continue;
    const double d = dfs(e.to, t, std::min(pushed, e.cap));
    if (d > eps_) {
      e.cap -= d;
      g_[v][static_cast<std::size_t>(e.rev)].cap += d;
      return d;
    }
  }
  return 0.0;
}

double MinCostFlow::blocking_flow(int s, int t, double limit) {
  double total = 0.0;
  const std::size_t n = g_.size();
  while (total < limit) {
    level_.assign(n, -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const auto u = static_cast<std::size_t>(q.front());
      q.pop();
      for (const Arc& e : g_[u]) {
        const auto v = static_cast<std::size_t>(e.to);
        if (e.cap <= eps_ || level_[v] >= 0) continue;
        if (std::fabs(e.cost + pot_[u] - pot_[v]) > cost_tol_) continue;
        level_[v] = level_[u] + 1;
        q.push(e.to);
      }
    }
    if (level_[static_cast<std::size_t>(t)] < 0) break;
    iter_.assign(n, 0);
    double got = 0.0;
    while (true) {
      const double f = dfs(s, t, limit - total - got);
      if (f <= eps_) break;
      got += f;
    }
    if (got <= eps_) break;
    total += got;
  }
  return total;
}

double MinCostFlow::solve(const std::vector<double>& supply) {
  if (static_cast<int>(supply.size()) != n_) throw ConfigError("supply size mismatch");
  const int s = n_;
  const int t = n_ + 1;
  double total = 0.0, neg = 0.0, maxcost = 0.0;
  for (double x : supply) (x > 0 ? total : neg) += std::fabs(x);
  for (const auto& adj : g_)
    for (const Arc& e : adj) maxcost = std::max(maxcost, std::fabs(e.cost));
  if (std::fabs(total - neg) > 1e-9 * std::max(1.0, total))
    throw NumericalGuard("transport supplies do not balance");
  eps_ = 1e-15 * std::max(total, 1e-300);
  cost_tol_ = 1e-11 * std::max(maxcost, 1.0);
  const std::size_t real_arcs = arcs_.size();
  for (int i = 0; i < n_; ++i) {
    const double x = supply[static_cast<std::size_t>(i)];
    if (x > 0)
      add_arc(s, i, x, 0.0);
    else if (x < 0)
      add_arc(i, t, -x, 0.0);
  }
  pot_.assign(g_.size(), 0.0);
  double sent = 0.0;
  const double target = std::min(total, neg);
  while (target - sent > 1e-13 * std::max(target, 1e-300)) {
    if (!dijkstra(s, t)) throw NumericalGuard("transport problem infeasible");
    const double f = blocking_flow(s, t, target - sent);
    if (f <= 0.0) break;
    sent += f;
  }
  if (target - sent > 1e-9 * std::max(target, 1e-300))
    throw NumericalGuard("min-cost flow stalled before routing all mass");
  double cost = 0.0;
  for (std::size_t a = 0; a < real_arcs; ++a) {
    const auto [u, idx] = arcs_[a];
    cost += flow(static_cast<int>(a)) *
            g_[static_cast<std::size_t>(u)][static_cast<std::size_t>(idx)].cost;
  }
  return cost;
}

std::vector<double> MinCostFlow::dual() const {
  std::vector<double> y(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) y[static_cast<std::size_t>(i)] = -pot_[static_cast<std::size_t>(i)];
  return y;
}

TransportResult transport_dstar_atoms(const MetricConstants& mc, const std::vector<double>& xs,
                                      const std::vector<double>& mx,
                                      const std::vector<double>& ys,
                                      const std::vector<double>& my) {
  // cancel common mass at coincident points
  std::map<double, double> net;
  for (std::size_t i = 0; i < xs.size(); ++i) net[wrap(xs[i])] += mx[i];
  for (std::size_t i = 0; i < ys.size(); ++i) net[wrap(ys[i])] -= my[i];
  std::vector<double> pts, sup;
  for (auto [x, m] : net) {
    if (m == 0.0) continue;
    pts.push_back(x);
    sup.push_back(m);
  }
  TransportResult r;
  if (pts.empty()) return r;
  const int n = static_cast<int>(pts.size());
  MinCostFlow mcf(n);
  const double big = 2.0 * std::accumulate(sup.begin(), sup.end(), 0.0,
                                           [](double a, double b) { return a + std::fabs(b); });
  for (int p = 0; p < n; ++p) {
    if (sup[static_cast<std::size_t>(p)] <= 0) continue;
    for (int q = 0; q < n; ++q) {
      if (sup[static_cast<std::size_t>(q)] >= 0) continue;
      mcf.add_arc(p, q, big, mc.dstar(pts[static_cast<std::size_t>(p)], pts[static_cast<std::size_t>(q)]));
    }
  }
  r.cost = mcf.solve(sup);
  const auto y = mcf.dual();
  // potential per input atom
  std::map<double, double> pot;
  for (int i = 0; i < n; ++i) pot[pts[static_cast<std::size_t>(i)]] = y[static_cast<std::size_t>(i)];
  for (double x : xs) r.potential.push_back(pot.count(wrap(x)) ? pot[wrap(x)] : 0.0);
  for (double x : ys) r.potential.push_back(pot.count(wrap(x)) ? pot[wrap(x)] : 0.0);
  return r;
}

namespace {

void coarsen(const GridMeasure& mu, std::size_t bins, std::vector<double>& pts,
             std::vector<double>& w) {
  const std::size_t n = mu.size();
  pts.assign(bins, 0.0);
  w.assign(bins, 0.0);
  std::vector<double> cnt(bins, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t b = j * bins / n;
    pts[b] += static_cast<double>(j) / static_cast<double>(n);
    cnt[b] += 1.0;
    w[b] += mu[j];
  }
  for (std::size_t b = 0; b < bins; ++b) pts[b] /= cnt[b];
}

}  // namespace

double wasserstein_dstar_dense(const MetricConstants& mc, const GridMeasure& mu,
                               const GridMeasure& nu, std::size_t max_atoms) {
  mu.require_probability();
  nu.require_probability();
  if (mu.size() != nu.size()) throw ConfigError("grid size mismatch");
  const std::size_t n = mu.size();
  const std::size_t bins = std::min(n, max_atoms);
  std::vector<double> px, wx, py, wy;
  coarsen(mu, bins, px, wx);
  coarsen(nu, bins, py, wy);
  return transport_dstar_atoms(mc, px, wx, py, wy).cost;
}

double wasserstein_dstar(const MetricConstants& mc, const GridMeasure& mu, const GridMeasure& nu,
                         std::size_t max_atoms) {
  if (mc.alpha != 1.0) return wasserstein_dstar_dense(mc, mu, nu, max_atoms);
  mu.require_probability();
  nu.require_probability();
  if (mu.size() != nu.size()) throw ConfigError("grid size mismatch");
  const std::size_t n = mu.size();
  std::vector<double> sup(n + 1, 0.0);
  bool any = false;
  for (std::size_t j = 0; j < n; ++j) {
    sup[j] = mu[j] - nu[j];
    if (sup[j] != 0.0) any = true;
  }
  if (!any) return 0.0;
  double pos = 0.0, neg = 0.0;
  for (std::size_t j = 0; j < n; ++j) (sup[j] > 0 ? pos : neg) += std::fabs(sup[j]);
  // tiny imbalance from rounding goes to the hub at zero cost difference
  sup[n] = neg - pos;
  const int hub = static_cast<int>(n);
  MinCostFlow mcf(static_cast<int>(n) + 1);
  const double step = mc.Delta / static_cast<double>(n);
  const double cap = 4.0;
  for (std::size_t j = 0; j < n; ++j) {
    const int a = static_cast<int>(j);
    const int b = static_cast<int>((j + 1) % n);
    if (step < 1.0) {
      mcf.add_arc(a, b, cap, step);
      mcf.add_arc(b, a, cap, step);
    }
    mcf.add_arc(a, hub, cap, 0.5);
    mcf.add_arc(hub, a, cap, 0.5);
  }
  return mcf.solve(sup);
}

double wasserstein_euclid(const GridMeasure& mu, const GridMeasure& nu) {
  mu.require_probability();
  nu.require_probability();
  if (mu.size() != nu.size()) throw ConfigError("grid size mismatch");
  const std::size_t n = mu.size();
  std::vector<double> D(n);
  double c = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    c += mu[j] - nu[j];
    D[j] = c;
  }
  std::vector<double> tmp(D);
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(n / 2), tmp.end());
  const double med = tmp[n / 2];
  double s = 0.0;
  for (double d : D) s += std::fabs(d - med);
  return s / static_cast<double>(n);
}

double wasserstein_euclid_atoms(const std::vector<double>& xs, const std::vector<double>& mx,
                                const std::vector<double>& ys, const std::vector<double>& my) {
  std::map<double, double> net;
  for (std::size_t i = 0; i < xs.size(); ++i) net[wrap(xs[i])] += mx[i];
  for (std::size_t i = 0; i < ys.size(); ++i) net[wrap(ys[i])] -= my[i];
  if (net.size() < 2) return 0.0;
  std::vector<double> pts, D, len;
  double c = 0.0;
  for (auto [x, m] : net) {
    pts.push_back(x);
    c += m;
    D.push_back(c);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double next = i + 1 < pts.size() ? pts[i + 1] : pts[0] + 1.0;
    len.push_back(next - pts[i]);
  }
  // weighted median of D with weights len
  std::vector<std::size_t> idx(D.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return D[a] < D[b]; });
  double half = 0.5, acc = 0.0, med = D[idx.back()];
  for (std::size_t i : idx) {
    acc += len[i];
    if (acc >= half) {
      med = D[i];
      break;
    }
  }
  double s = 0.0;
  for (std::size_t i = 0; i < D.size(); ++i) s += len[i] * std::fabs(D[i] - med);
  return s;
}

double wasserstein(const GridMeasure& mu, const GridMeasure& nu, MetricKind kind,
                   const MetricConstants& mc) {
  return kind == MetricKind::euclid ? wasserstein_euclid(mu, nu) : wasserstein_dstar(mc, mu, nu);
}

}  // namespace semitherm
