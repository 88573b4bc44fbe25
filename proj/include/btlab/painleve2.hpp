#pragma once

// Hastings-McLeod solution of the inhomogeneous Painleve II equation
//   u'' = 2u^3 + x u + (nu + 1/2)
// as a two-point BVP with asymptotic Dirichlet data, solved by damped Newton
// on central differences with Richardson extrapolation across N and 2N
// grids. Native double precision throughout (10^-8 residual target).
//
// For non-natural nu > 0 the relevant solution has real poles and cannot be
// reached as a smooth BVP; it is obtained instead by solving the pole-free
// problem at nu - ceil(nu) in (-1, 0) and lifting with ceil(nu) Backlund
// steps  u -> -u - (2a+1)/(2(u^2+u') + x),  a = nu + 1/2  (a -> a+1 each
// step). Poles of the lifted profile set pole_flag/pole_x; values away from
// the poles remain accurate.

#include <utility>
#include <vector>

namespace btlab {

enum class PiiBranch { automatic, generic, integer_nu };

struct PiiProblem {
  double nu = 0.0;
  double xl = -12.0;
  double xr = 12.0;
  int grid = 4000;  // base grid; the solver also runs 2x for extrapolation
  double tol = 1e-12;
  PiiBranch branch = PiiBranch::automatic;
};

struct PiiSolution {
  std::vector<double> x, u, du, H;
  int newton_iters = 0;
  double final_residual = 0.0;  // sup-norm of the 4th-order discrete ODE residual
  bool converged = false;       // Newton reached tolerance on both grids
  bool pole_flag = false;       // solver failure or real poles on the grid
  double pole_x = 0.0;          // pole nearest the origin, if any
  std::vector<double> poles;    // all detected real pole locations

  // cubic (4-point Lagrange) interpolation on the uniform grid
  double interp_u(double xq) const;
  double interp_du(double xq) const;
  double interp_H(double xq) const;
};

bool is_natural(double nu);

// Dirichlet data from the x -> +-inf expansions. integer_branch selects the
// negative-root branch of the left expansion (nu in N).
std::pair<double, double> boundary_values(double nu, double xl, double xr, bool integer_branch);

PiiSolution solve_hastings_mcleod(const PiiProblem& prob);

// z = u' - u^2 - x/2;  H = z(z+x)/2 + z u^2 - nu u.
double pii_hamiltonian(double nu, double x, double u, double du);

// Independent shooting oracle for the homogeneous case nu = -1/2: integrate
// backward from xr with the decaying far-field ratio u'/u and bisect the
// one-parameter family; returns u(0).
double shooting_u0_homogeneous();

}  // namespace btlab
