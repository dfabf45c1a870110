#include "uqr/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uqr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoincident = 1e-12;

double kernel(double r, int n) { return n == 2 ? 1.0 / r : 1.0 / std::pow(r, n - 1); }

// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

double kkt_residual(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
  const Eigen::VectorXd g = A * w;
  const double lambda = w.dot(g);
  double res = std::abs(w.sum() - 1.0);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < 0.0) res = std::max(res, -w[i]);
    if (w[i] > 0.0) {
      res = std::max(res, std::abs(g[i] - lambda) / lambda);
    } else {
      res = std::max(res, (lambda - g[i]) / lambda);
    }
  }
  return res;
}

KernelSolution projected_gradient(const Eigen::MatrixXd& A, Eigen::VectorXd w, double tolerance,
                                  int max_iterations, int used) {
  // Lipschitz constant of the gradient 2 A w by power iteration.
  Eigen::VectorXd v = Eigen::VectorXd::Ones(A.rows()).normalized();
  double L = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd Av = A * v;
    L = Av.norm();
    if (L == 0.0) break;
    v = Av / L;
  }
  const double step = 1.0 / (2.0 * std::max(L, 1e-300));
  KernelSolution s;
  int it = used;
  for (; it < max_iterations; ++it) {
    w = project_simplex(w - step * 2.0 * (A * w));
    if (it % 64 == 0 && kkt_residual(A, w) <= tolerance) break;
  }
  s.weights = w;
  s.energy = w.dot(A * w);
  s.kkt_residual = kkt_residual(A, w);
  s.iterations = it;
  s.converged = s.kkt_residual <= tolerance;
  return s;
}

}  // namespace

double riesz_potential(const DiscreteMeasure& mu, const SpherePoint& x) {
  const int n = x.dimension();
  double u = 0.0;
  for (const auto& a : mu.atoms()) {
    const double r = chordal_distance(a.point, x);
    if (r < kCoincident) return kInf;
    u += a.weight * kernel(r, n);
  }
  return u;
}

double riesz_energy(const DiscreteMeasure& mu) {
  const auto& atoms = mu.atoms();
  if (atoms.size() < 2) return kInf;
  const int n = mu.dimension();
  double e = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    double row = 0.0;
    for (std::size_t l = j + 1; l < atoms.size(); ++l) {
      row += atoms[l].weight * kernel(chordal_distance(atoms[j].point, atoms[l].point), n);
    }
    e += 2.0 * atoms[j].weight * row;
  }
  return e;
}

double cell_self_energy(int n, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("cell radius must be positive");
  if (n == 2) return 16.0 / (3.0 * std::numbers::pi * h);
  if (n == 3) return 9.0 / (4.0 * h * h);
  throw DimensionError("cell self-energy: unsupported dimension");
}

double grid_cell_radius(std::size_t count) { return 2.0 / std::sqrt(static_cast<double>(count)); }

Eigen::MatrixXd riesz_kernel_matrix(const Eigen::MatrixXd& distances, int n, double cell_radius) {
  const Eigen::Index N = distances.rows();
  Eigen::MatrixXd A(N, N);
  const double self = cell_self_energy(n, cell_radius);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) A(i, j) = i == j ? self : kernel(distances(i, j), n);
  }
  return A;
}

KernelSolution minimize_kernel_energy(const Eigen::MatrixXd& A, double tolerance, int max_iterations) {
  const Eigen::Index N = A.rows();
  if (N < 1 || A.cols() != N) throw std::invalid_argument("kernel matrix must be square and nonempty");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(N, 1.0 / static_cast<double>(N));
  std::vector<char> free(static_cast<std::size_t>(N), 1);

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < N; ++i) {
      if (free[static_cast<std::size_t>(i)]) idx.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd Aff(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) Aff(a, b) = A(idx[a], idx[b]);
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Aff);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) break;
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(m);
    Eigen::VectorXd x = ldlt.solve(ones);
    x += ldlt.solve(ones - Aff * x);
    if (!(x.sum() > 0.0)) break;
    const Eigen::VectorXd v = x / x.sum();

    if (v.minCoeff() >= 0.0) {
      w.setZero();
      for (Eigen::Index a = 0; a < m; ++a) w[idx[a]] = v[a];
      const Eigen::VectorXd g = A * w;
      const double lambda = w.dot(g);
      Eigen::Index worst = -1;
      double worst_gap = tolerance * lambda;
      for (Eigen::Index i = 0; i < N; ++i) {
        if (free[static_cast<std::size_t>(i)]) continue;
        const double gap = lambda - g[i];
        if (gap > worst_gap) {
          worst_gap = gap;
          worst = i;
        }
      }
      if (worst < 0) {
        KernelSolution s;
        s.weights = w;
        s.energy = lambda;
        s.kkt_residual = kkt_residual(A, w);
        s.iterations = it + 1;
        s.converged = s.kkt_residual <= tolerance;
        if (s.converged) return s;
        return projected_gradient(A, w, tolerance, max_iterations, it + 1);
      }
      free[static_cast<std::size_t>(worst)] = 1;
      continue;
    }

    // Step from the feasible w toward v until the first free weight hits zero.
    double alpha = 1.0;
    Eigen::Index block = -1;
    for (Eigen::Index a = 0; a < m; ++a) {
      const double wi = w[idx[a]];
      if (v[a] < 0.0 && wi / (wi - v[a]) < alpha) {
        alpha = wi / (wi - v[a]);
        block = idx[a];
      }
    }
    for (Eigen::Index a = 0; a < m; ++a) {
      const Eigen::Index i = idx[a];
      w[i] = std::max(0.0, w[i] + alpha * (v[a] - w[i]));
      if (i == block || w[i] == 0.0) {
        w[i] = 0.0;
        free[static_cast<std::size_t>(i)] = 0;
      }
    }
    w /= w.sum();
  }
  return projected_gradient(A, project_simplex(w), tolerance, max_iterations, it);
}

CapacityReport equilibrium_weights(const std::vector<SpherePoint>& points, double tolerance,
                                   double cell_radius) {
  CapacityReport r;
  r.support = points;
  if (points.size() < 2) {
    r.weights.assign(points.size(), 1.0);
    r.energy = kInf;
    r.offdiagonal_energy = kInf;
    r.capacity = 0.0;
    r.converged = true;
    return r;
  }
  const int n = points.front().dimension();
  const auto N = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N, N);
  double dmin = kInf;
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      if (points[static_cast<std::size_t>(j)].dimension() != n) {
        throw DimensionError("equilibrium_weights: mixed dimensions");
      }
      const double d = chordal_distance(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]);
      if (d < kCoincident) throw std::invalid_argument("equilibrium_weights: points must be pairwise distinct");
      D(i, j) = D(j, i) = d;
      dmin = std::min(dmin, d);
    }
  }
  r.cell_radius = cell_radius > 0.0 ? cell_radius : 0.5 * dmin;
  const Eigen::MatrixXd A = riesz_kernel_matrix(D, n, r.cell_radius);
  const KernelSolution s = minimize_kernel_energy(A, tolerance);

  r.weights.assign(s.weights.data(), s.weights.data() + s.weights.size());
  r.energy = s.energy;
  r.capacity = 1.0 / s.energy;
  Eigen::MatrixXd off = A;
  off.diagonal().setZero();
  r.offdiagonal_energy = s.weights.dot(off * s.weights);
  const Eigen::VectorXd g = A * s.weights;
  for (Eigen::Index i = 0; i < N; ++i) {
    if (s.weights[i] > 0.0) r.max_support_potential = std::max(r.max_support_potential, g[i]);
  }
  r.kkt_residual = s.kkt_residual;
  r.iterations = s.iterations;
  r.converged = s.converged;
  return r;
}

}  // namespace uqr
