#pragma once

// Reference implementations written independently of the library code:
// brute force, textbook algorithms, or a different formulation.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

#include "micropush/bench/metrics.hpp"
#include "micropush/control/params.hpp"
#include "micropush/core/vec2.hpp"
#include "micropush/planning/astar.hpp"
#include "micropush/planning/polyline.hpp"

namespace oracle {

using micropush::Vec2;

// Exhaustive minimum over every choice of K cells and every permutation.
inline double brute_force_cost(const std::vector<Vec2>& cells, const std::vector<Vec2>& verts) {
  const std::size_t b = cells.size(), k = verts.size();
  double best = INFINITY;
  std::vector<int> pick(b, 0);
  std::fill(pick.end() - static_cast<long>(k), pick.end(), 1);
  do {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < b; ++i) {
      if (pick[i]) chosen.push_back(i);
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double c = 0.0;
      for (std::size_t j = 0; j < k; ++j) c += distance(cells[chosen[perm[j]]], verts[j]);
      best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

// Plain Dijkstra over step counts.
inline micropush::planning::GridCost dijkstra_cost(const micropush::planning::OccupancyMask& m,
                                                   micropush::planning::GridCell s,
                                                   micropush::planning::GridCell t, bool& reachable) {
  using micropush::planning::GridCost;
  const int w = m.width;
  std::vector<double> dist(m.cells.size(), INFINITY);
  std::vector<GridCost> cost(m.cells.size());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s.y * w + s.x] = 0.0;
  pq.push({0.0, s.y * w + s.x});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    const int x = i % w, y = i / w;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy) continue;
        const int nx = x + dx, ny = y + dy;
        if (!m.in_bounds(nx, ny) || m.at(nx, ny)) continue;
        if (dx && dy && (m.at(x + dx, y) || m.at(x, y + dy))) continue;
        GridCost c = cost[i];
        (dx && dy ? c.diagonal : c.cardinal)++;
        const double nd = c.value();
        if (nd < dist[ny * w + nx]) {
          dist[ny * w + nx] = nd;
          cost[ny * w + nx] = c;
          pq.push({nd, ny * w + nx});
        }
      }
    }
  }
  reachable = std::isfinite(dist[t.y * w + t.x]);
  return cost[t.y * w + t.x];
}

// Dense sampling, refined by ternary search around the best sample of each
// segment (distance along a segment is unimodal).
inline double dense_polyline_distance(Vec2 p, const micropush::planning::Polyline& line,
                                      int samples = 10000) {
  double best = INFINITY;
  for (std::size_t i = 1; i < line.size(); ++i) {
    int best_k = 0;
    double seg_best = INFINITY;
    for (int k = 0; k <= samples; ++k) {
      const double d = distance(p, lerp(line[i - 1], line[i], double(k) / samples));
      if (d < seg_best) {
        seg_best = d;
        best_k = k;
      }
    }
    double lo = std::max(0, best_k - 1) / double(samples);
    double hi = std::min(samples, best_k + 1) / double(samples);
    for (int it = 0; it < 100; ++it) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (distance(p, lerp(line[i - 1], line[i], m1)) < distance(p, lerp(line[i - 1], line[i], m2))) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    seg_best = std::min(seg_best, distance(p, lerp(line[i - 1], line[i], 0.5 * (lo + hi))));
    best = std::min(best, seg_best);
  }
  return best;
}

// Wilson bounds as the roots of (phat - p)^2 = z^2 p (1 - p) / n, clamped to [0, 1].
inline micropush::bench::Interval wilson_roots(int k, int n, double z = 1.96) {
  const double ph = static_cast<double>(k) / n, z2n = z * z / n;
  const double a = 1.0 + z2n, b = -(2.0 * ph + z2n), c = ph * ph;
  const double disc = std::sqrt(std::max(0.0, b * b - 4.0 * a * c));
  return {std::max(0.0, (-b - disc) / (2.0 * a)), std::min(1.0, (-b + disc) / (2.0 * a))};
}

// Generic equality-constrained QP over states and inputs.
// Variables z = (x_1..x_N, u_0..u_{N-1}), both axes interleaved.
struct MpcQp {
  Eigen::MatrixXd P, A;
  Eigen::VectorXd q, b;
  int n = 0;
  int ui(int k, int a) const { return 2 * n + 2 * k + a; }
};

inline MpcQp mpc_qp(Vec2 x0, Vec2 r, Vec2 up, double dt, const micropush::control::MpcParams& p) {
  MpcQp qp;
  const int n = qp.n = p.horizon;
  const int nz = 4 * n, nc = 2 * n;
  qp.P = Eigen::MatrixXd::Zero(nz, nz);
  qp.q = Eigen::VectorXd::Zero(nz);
  auto xi = [](int k, int a) { return 2 * (k - 1) + a; };  // k = 1..N
  const double rr[2] = {r.x, r.y}, uu[2] = {up.x, up.y}, xx[2] = {x0.x, x0.y};
  for (int a = 0; a < 2; ++a) {
    for (int k = 1; k <= n; ++k) {
      const double w = k == n ? p.qf_scale * p.q_pos : p.q_pos;
      qp.P(xi(k, a), xi(k, a)) += 2 * w;
      qp.q(xi(k, a)) += -2 * w * rr[a];
    }
    for (int k = 0; k < n; ++k) qp.P(qp.ui(k, a), qp.ui(k, a)) += 2 * p.r_ctl;
    qp.P(qp.ui(0, a), qp.ui(0, a)) += 2 * p.s_smooth;
    qp.q(qp.ui(0, a)) += -2 * p.s_smooth * uu[a];
  }
  qp.A = Eigen::MatrixXd::Zero(nc, nz);
  qp.b = Eigen::VectorXd::Zero(nc);
  int row = 0;
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < 2; ++a, ++row) {
      // x_{k+1} - x_k - dt u_k = 0
      qp.A(row, xi(k + 1, a)) = 1.0;
      if (k > 0) qp.A(row, xi(k, a)) = -1.0; else qp.b(row) = xx[a];
      qp.A(row, qp.ui(k, a)) = -dt;
    }
  }
  return qp;
}

// Solves the QP through its KKT system.
inline std::vector<Vec2> mpc_kkt(Vec2 x0, Vec2 r, Vec2 up, double dt,
                                 const micropush::control::MpcParams& p) {
  const MpcQp qp = mpc_qp(x0, r, up, dt, p);
  const long nz = qp.P.rows(), nc = qp.A.rows();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(nz + nc, nz + nc);
  K.topLeftCorner(nz, nz) = qp.P;
  K.topRightCorner(nz, nc) = qp.A.transpose();
  K.bottomLeftCorner(nc, nz) = qp.A;
  Eigen::VectorXd rhs(nz + nc);
  rhs << -qp.q, qp.b;
  const Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
  std::vector<Vec2> u(qp.n);
  for (int k = 0; k < qp.n; ++k) u[k] = {sol(qp.ui(k, 0)), sol(qp.ui(k, 1))};
  return u;
}

// KKT residual of a candidate input sequence: the states are rolled out from
// u, the multipliers fitted by least squares, and the largest violation of
// stationarity and feasibility returned.
inline double mpc_kkt_residual(Vec2 x0, Vec2 r, Vec2 up, double dt,
                               const micropush::control::MpcParams& p, const std::vector<Vec2>& u) {
  const MpcQp qp = mpc_qp(x0, r, up, dt, p);
  Eigen::VectorXd z(qp.P.rows());
  Vec2 x = x0;
  for (int k = 0; k < qp.n; ++k) {
    x = x + u[k] * dt;
    z(2 * k) = x.x;
    z(2 * k + 1) = x.y;
    z(qp.ui(k, 0)) = u[k].x;
    z(qp.ui(k, 1)) = u[k].y;
  }
  const Eigen::VectorXd g = qp.P * z + qp.q;
  const Eigen::VectorXd lambda = qp.A.transpose().colPivHouseholderQr().solve(-g);
  const double stat = (g + qp.A.transpose() * lambda).cwiseAbs().maxCoeff();
  const double feas = (qp.A * z - qp.b).cwiseAbs().maxCoeff();
  return std::max(stat, feas);
}

}  // namespace oracle
