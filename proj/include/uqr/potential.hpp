#pragma once

#include <Eigen/Dense>
#include <vector>

#include "uqr/measure.hpp"

namespace uqr {

/// U^mu(x) = Σ w_j / |x - x_j|^{n-1}; +infinity when x is within 1e-12 of an atom.
double riesz_potential(const DiscreteMeasure& mu, const SpherePoint& x);

/// Off-diagonal energy Σ_{j != l} w_j w_l / |x_j - x_l|^{n-1}; +infinity for a
/// single atom.
double riesz_energy(const DiscreteMeasure& mu);

/// Energy of one uniformly charged flat cell of radius h in dimension n under the
/// kernel |x - y|^{-(n-1)}: 16 / (3 pi h) for n = 2, 9 / (4 h^2) for n = 3.
double cell_self_energy(int n, double h);

/// Equal-area cell radius of an N-point quasi-uniform grid on S^2: 2 / sqrt(N).
double grid_cell_radius(std::size_t count);

struct KernelSolution {
  Eigen::VectorXd weights;
  double energy = 0.0;        ///< w^T A w
  double kkt_residual = 0.0;  ///< relative to the multiplier lambda = energy
  int iterations = 0;
  bool converged = false;
};

/// Minimizes w^T A w over the probability simplex for a symmetric kernel matrix A
/// (primal active set with an LDLT solve per step, projected gradient as fallback).
KernelSolution minimize_kernel_energy(const Eigen::MatrixXd& kernel, double tolerance,
                                      int max_iterations = 100000);

/// Kernel matrix of a distance matrix: off-diagonal D_ij^{-(n-1)}, diagonal the
/// cell self-energy at radius h.
Eigen::MatrixXd riesz_kernel_matrix(const Eigen::MatrixXd& distances, int n, double cell_radius);

struct CapacityReport {
  std::vector<SpherePoint> support;
  std::vector<double> weights;
  double energy = 0.0;              ///< W_1: minimal energy including cell self-energies
  double capacity = 0.0;            ///< C_1 = 1 / W_1
  double offdiagonal_energy = 0.0;  ///< off-diagonal double sum at the reported weights
  double cell_radius = 0.0;
  double max_support_potential = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Equilibrium measure of a finite point set, each point standing for a cell of
/// radius `cell_radius` (<= 0: half the minimum pairwise distance). Sets with fewer
/// than two points get capacity 0.
CapacityReport equilibrium_weights(const std::vector<SpherePoint>& points, double tolerance = 1e-10,
                                   double cell_radius = 0.0);

}  // namespace uqr
