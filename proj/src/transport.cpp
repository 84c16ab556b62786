// Exact capped transport for small supports: successive shortest paths on the
// dense bipartite graph, Dijkstra with potentials.
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rootgas/measures.hpp"

namespace rootgas {

double capped_transport(const Points& a, const Eigen::VectorXd& p, const Points& b, const Eigen::VectorXd& q,
                        Space space) {
  std::vector<Eigen::Index> src, dst;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (p(i) > 0.0) src.push_back(i);
  for (Eigen::Index j = 0; j < b.rows(); ++j)
    if (q(j) > 0.0) dst.push_back(j);
  const std::size_t m = src.size(), k = dst.size();
  if (m == 0 || k == 0) return 0.0;

  Eigen::MatrixXd cost(m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j)
      cost(i, j) = std::min(point_distance(space, a.row(src[i]), b.row(dst[j])), 2.0);

  std::vector<double> supply(m), demand(k);
  for (std::size_t i = 0; i < m; ++i) supply[i] = p(src[i]);
  for (std::size_t j = 0; j < k; ++j) demand[j] = q(dst[j]);
  // rescale the smaller side so both carry the same total mass
  double ts = 0.0, td = 0.0;
  for (double s : supply) ts += s;
  for (double d : demand) td += d;
  for (double& d : demand) d *= ts / td;

  Eigen::MatrixXd flow = Eigen::MatrixXd::Zero(m, k);
  std::vector<double> pot(m + k, 0.0);
  for (std::size_t j = 0; j < k; ++j) pot[m + j] = cost.col(j).minCoeff();

  const double eps = 1e-15 * ts;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(m + k);
  std::vector<long> prev(m + k);
  std::vector<char> done(m + k);
  double remaining = ts;

  while (remaining > eps) {
    std::fill(dist.begin(), dist.end(), inf);
    std::fill(prev.begin(), prev.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    for (std::size_t i = 0; i < m; ++i)
      if (supply[i] > eps) dist[i] = 0.0;

    long target = -1;
    for (;;) {
      long u = -1;
      double best = inf;
      for (std::size_t v = 0; v < m + k; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = static_cast<long>(v);
        }
      if (u < 0) break;
      done[static_cast<std::size_t>(u)] = 1;
      if (static_cast<std::size_t>(u) >= m && demand[static_cast<std::size_t>(u) - m] > eps) {
        target = u;
        break;
      }
      if (static_cast<std::size_t>(u) < m) {
        const std::size_t i = static_cast<std::size_t>(u);
        for (std::size_t j = 0; j < k; ++j) {
          if (done[m + j]) continue;
          const double rc = std::max(0.0, cost(i, j) + pot[i] - pot[m + j]);
          if (dist[i] + rc < dist[m + j]) {
            dist[m + j] = dist[i] + rc;
            prev[m + j] = u;
          }
        }
      } else {
        const std::size_t j = static_cast<std::size_t>(u) - m;
        for (std::size_t i = 0; i < m; ++i) {
          if (done[i] || flow(i, j) <= eps) continue;
          const double rc = std::max(0.0, -cost(i, j) + pot[m + j] - pot[i]);
          if (dist[u] + rc < dist[i]) {
            dist[i] = dist[u] + rc;
            prev[i] = u;
          }
        }
      }
    }
    if (target < 0) break;  // only round-off mass left

    const double dt = dist[static_cast<std::size_t>(target)];
    for (std::size_t v = 0; v < m + k; ++v) pot[v] += std::min(dist[v], dt);

    // bottleneck along the path
    double push = demand[static_cast<std::size_t>(target) - m];
    long v = target;
    while (prev[static_cast<std::size_t>(v)] >= 0) {
      const long u = prev[static_cast<std::size_t>(v)];
      if (static_cast<std::size_t>(u) >= m)  // reverse edge sink u -> source v
        push = std::min(push, flow(static_cast<std::size_t>(v), static_cast<std::size_t>(u) - m));
      v = u;
    }
    push = std::min(push, supply[static_cast<std::size_t>(v)]);

    v = target;
    while (prev[static_cast<std::size_t>(v)] >= 0) {
      const long u = prev[static_cast<std::size_t>(v)];
      if (static_cast<std::size_t>(u) < m)
        flow(static_cast<std::size_t>(u), static_cast<std::size_t>(v) - m) += push;
      else
        flow(static_cast<std::size_t>(v), static_cast<std::size_t>(u) - m) -= push;
      v = u;
    }
    supply[static_cast<std::size_t>(v)] -= push;
    demand[static_cast<std::size_t>(target) - m] -= push;
    remaining -= push;
  }
  return (flow.array() * cost.array()).sum();
}

}  // namespace rootgas
