#include "micropush/control/mpc.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

namespace micropush::control {

namespace {

double stage_weight(int k, const MpcParams& p) {
  return k == p.horizon ? p.qf_scale * p.q_pos : p.q_pos;
}

}  // namespace

double mpc_cost(Vec2 x, Vec2 p_ref, Vec2 u_prev, const std::vector<Vec2>& u, double dt,
                const MpcParams& p) {
  double j = 0.0;
  Vec2 xk = x;
  for (int k = 0; k < p.horizon; ++k) {
    j += p.q_pos * (xk - p_ref).norm2() + p.r_ctl * u[k].norm2();
    xk += u[k] * dt;
  }
  j += p.qf_scale * p.q_pos * (xk - p_ref).norm2();
  j += p.s_smooth * (u[0] - u_prev).norm2();
  return j;
}

std::vector<Vec2> mpc_gradient(Vec2 x, Vec2 p_ref, Vec2 u_prev, const std::vector<Vec2>& u,
                               double dt, const MpcParams& p) {
  const int n = p.horizon;
  // Error after step k (k = 1..N) feeds back into every earlier input.
  std::vector<Vec2> err(n + 1);
  Vec2 xk = x;
  for (int k = 0; k < n; ++k) {
    xk += u[k] * dt;
    err[k + 1] = xk - p_ref;
  }
  std::vector<Vec2> g(n);
  Vec2 tail;
  for (int k = n; k >= 1; --k) {
    tail += err[k] * (2.0 * stage_weight(k, p) * dt);
    g[k - 1] = tail + u[k - 1] * (2.0 * p.r_ctl);
  }
  g[0] += (u[0] - u_prev) * (2.0 * p.s_smooth);
  return g;
}

MpcSolution mpc_solve(Vec2 x, Vec2 p_ref, Vec2 u_prev, double dt, const MpcParams& p) {
  const int n = p.horizon;
  // Per axis: e_k = e_0 + dt * sum_{i<k} u_i. With w_k the stage weight,
  // H_ij = dt^2 sum_{k > max(i,j)} w_k + r delta_ij + s [i=j=0],
  // b_i  = -(dt e_0 sum_{k > i} w_k) + s u_prev [i=0].
  Eigen::VectorXd tail(n);  // tail(i) = sum_{k=i+1..N} w_k
  double acc = 0.0;
  for (int i = n - 1; i >= 0; --i) {
    acc += stage_weight(i + 1, p);
    tail(i) = acc;
  }
  Eigen::MatrixXd h(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) h(i, j) = dt * dt * tail(std::max(i, j));
    h(i, i) += p.r_ctl;
  }
  h(0, 0) += p.s_smooth;
  const Vec2 e0 = x - p_ref;
  Eigen::MatrixXd rhs(n, 2);
  for (int i = 0; i < n; ++i) {
    rhs(i, 0) = -dt * e0.x * tail(i);
    rhs(i, 1) = -dt * e0.y * tail(i);
  }
  rhs(0, 0) += p.s_smooth * u_prev.x;
  rhs(0, 1) += p.s_smooth * u_prev.y;

  MpcSolution sol;
  const Eigen::LLT<Eigen::MatrixXd> llt(h);
  if (llt.info() != Eigen::Success) {
    sol.u.assign(static_cast<std::size_t>(n), u_prev);
    return sol;
  }
  const Eigen::MatrixXd u = llt.solve(rhs);
  if (!u.allFinite()) {
    sol.u.assign(static_cast<std::size_t>(n), u_prev);
    return sol;
  }
  sol.u.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sol.u[i] = {u(i, 0), u(i, 1)};
  sol.ok = true;
  return sol;
}

}  // namespace micropush::control
