#pragma once

#include <vector>

#include "micropush/control/params.hpp"
#include "micropush/core/vec2.hpp"

namespace micropush::control {

struct MpcSolution {
  std::vector<Vec2> u;  ///< u_0 .. u_{N-1} [px/s]
  bool ok = false;      ///< false when the Hessian could not be factored
  Vec2 first() const { return u.empty() ? Vec2{} : u.front(); }
};

/// Horizon cost  sum_{k<N} |x_k - p_ref|^2_Q + |u_k|^2_R + |x_N - p_ref|^2_Qf
/// + |u_0 - u_prev|^2_S  with x_{k+1} = x_k + dt u_k, p_ref held constant.
double mpc_cost(Vec2 x, Vec2 p_ref, Vec2 u_prev, const std::vector<Vec2>& u, double dt,
                const MpcParams& p);

/// Exact unconstrained minimizer. The states are eliminated, leaving one
/// N x N positive definite system shared by both axes (isotropic weights),
/// solved by Cholesky. On failure, returns u_prev repeated with ok = false.
MpcSolution mpc_solve(Vec2 x, Vec2 p_ref, Vec2 u_prev, double dt, const MpcParams& p);

/// Gradient of mpc_cost with respect to the stacked inputs (x then y per step).
std::vector<Vec2> mpc_gradient(Vec2 x, Vec2 p_ref, Vec2 u_prev, const std::vector<Vec2>& u,
                               double dt, const MpcParams& p);

}  // namespace micropush::control
