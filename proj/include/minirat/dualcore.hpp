#ifndef MINIRAT_DUALCORE_HPP
#define MINIRAT_DUALCORE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "orthobasis.hpp"
#include "problems.hpp"

namespace minirat {

// A node whose denominator modulus falls at or below this floor counts as
// pole-adjacent; its pointwise error is reported as +inf.
inline constexpr double kPoleFloor = 1e-300;

// Two smallest singular values closer than this relative spread mark the dual
// value as a multiple minimum (the gradient formula assumes a simple one).
inline constexpr double kMultipleMinimumSpread = 1e-10;

/// Probability weights over the nodes. Inactive nodes carry weight zero and
/// take no part in basis construction or weight updates.
struct SimplexWeights {
  Eigen::VectorXd w;                 // length m, zero off the active set
  std::vector<Eigen::Index> active;  // sorted node indices still in play

  static SimplexWeights uniform(Eigen::Index m) {
    if (m < 1) throw std::invalid_argument("weights: need at least one node");
    SimplexWeights s;
    s.w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
    s.active.resize(static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < s.active.size(); ++j) s.active[j] = static_cast<Eigen::Index>(j);
    return s;
  }

  /// Normalizes a nonnegative vector onto the simplex; every node starts active.
  static SimplexWeights from_vector(const Eigen::VectorXd& raw) {
    if (raw.size() == 0) throw std::invalid_argument("weights: empty vector");
    double total = 0.0;
    for (Eigen::Index j = 0; j < raw.size(); ++j) {
      if (!std::isfinite(raw[j]) || raw[j] < 0.0)
        throw std::invalid_argument("weights: entry " + std::to_string(j) +
                                    " is negative or non-finite");
      total += raw[j];
    }
    if (total <= 0.0) throw std::invalid_argument("weights: all entries are zero");
    SimplexWeights s;
    s.w = raw / total;
    s.active.resize(static_cast<std::size_t>(raw.size()));
    for (std::size_t j = 0; j < s.active.size(); ++j) s.active[j] = static_cast<Eigen::Index>(j);
    return s;
  }
};

/// Result of one dual evaluation: the dual value d2, the weighted
/// least-squares pair (p, q) realizing it, and pointwise errors of p/q over
/// every original node. Bases live on the support {j : w_j > 0}; values at the
/// remaining nodes come from the recurrence replay.
struct DualEvaluation {
  double d2 = 0.0;
  Eigen::VectorXcd hat_a;  // numerator coordinates in the Q_p basis
  Eigen::VectorXcd hat_b;  // denominator coordinates in the Q_q basis, unit norm
  Eigen::VectorXcd p_vals, q_vals;  // length m
  Eigen::VectorXcd lin_residual;    // f .* q - p, length m
  Eigen::VectorXd residual;         // |f - p/q|, +inf at pole-adjacent nodes
  std::vector<Eigen::Index> pole_adjacent;
  KrylovBasis basis_p, basis_q;
  std::vector<Eigen::Index> support;
  Eigen::MatrixXcd cross_gram;  // Q_p^H F Q_q
  Eigen::MatrixXcd sf_gram;     // Q_q^H |F|^2 Q_q
  double sigma_min = 0.0;
  double sigma_next = std::numeric_limits<double>::infinity();
  bool multiple_minimum = false;
};

/// Dual value for an arbitrary nonnegative, not identically zero weight
/// vector. The value is invariant under positive scaling of w; the recovered
/// pair (p, q) picks up the normalization of w through the seed.
inline DualEvaluation eval_d2_raw(const SampleSet& samples, const Eigen::VectorXd& w,
                                  Eigen::Index n1, Eigen::Index n2) {
  const Eigen::Index m = samples.size();
  if (w.size() != m) throw std::invalid_argument("eval_d2: weight length mismatch");
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("eval_d2: negative degree");

  std::vector<Eigen::Index> support, rest;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!std::isfinite(w[j]) || w[j] < 0.0)
      throw std::invalid_argument("eval_d2: weight entry " + std::to_string(j) +
                                  " is negative or non-finite");
    if (w[j] > 0.0) support.push_back(j);
    else rest.push_back(j);
  }
  const Eigen::Index ms = static_cast<Eigen::Index>(support.size());
  if (ms < n2 + 1)
    throw std::invalid_argument("eval_d2: needs at least n2 + 1 = " + std::to_string(n2 + 1) +
                                " positive weights, got " + std::to_string(ms));

  Eigen::VectorXcd xs(ms), fs(ms);
  Eigen::VectorXd seed(ms);
  for (Eigen::Index k = 0; k < ms; ++k) {
    xs[k] = samples.x[support[static_cast<std::size_t>(k)]];
    fs[k] = samples.f[support[static_cast<std::size_t>(k)]];
    seed[k] = std::sqrt(w[support[static_cast<std::size_t>(k)]]);
  }

  DualEvaluation ev;
  ev.support = std::move(support);
  ev.basis_p = weighted_arnoldi(xs, seed, n1);
  ev.basis_q = weighted_arnoldi(xs, seed, n2);
  const Eigen::Index r2 = ev.basis_q.rank;

  // d2 = sigma_min^2 of the numerator-orthogonal part of F Q_q; the minimizing
  // right singular vector is the denominator in orthonormal coordinates.
  Eigen::MatrixXcd FQq = fs.asDiagonal() * ev.basis_q.Q;
  ev.cross_gram = ev.basis_p.Q.adjoint() * FQq;
  Eigen::MatrixXcd M = FQq - ev.basis_p.Q * ev.cross_gram;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  ev.sigma_min = sigma[r2 - 1];
  ev.d2 = ev.sigma_min * ev.sigma_min;
  if (r2 >= 2) {
    ev.sigma_next = sigma[r2 - 2];
    ev.multiple_minimum = (ev.sigma_next - ev.sigma_min) <= kMultipleMinimumSpread * ev.sigma_next;
  }
  ev.hat_b = svd.matrixV().col(r2 - 1);
  ev.hat_a = ev.cross_gram * ev.hat_b;
  ev.sf_gram = ev.basis_q.Q.adjoint() * (fs.cwiseAbs2().asDiagonal() * ev.basis_q.Q);

  // Recover p, q at the support directly, elsewhere through the replay.
  ev.p_vals.resize(m);
  ev.q_vals.resize(m);
  Eigen::VectorXcd ps = ev.basis_p.Q * ev.hat_a;
  Eigen::VectorXcd qs = ev.basis_q.Q * ev.hat_b;
  for (Eigen::Index k = 0; k < ms; ++k) {
    ev.p_vals[ev.support[static_cast<std::size_t>(k)]] = ps[k] / seed[k];
    ev.q_vals[ev.support[static_cast<std::size_t>(k)]] = qs[k] / seed[k];
  }
  if (!rest.empty()) {
    Eigen::VectorXcd xr(static_cast<Eigen::Index>(rest.size()));
    for (std::size_t k = 0; k < rest.size(); ++k) xr[static_cast<Eigen::Index>(k)] = samples.x[rest[k]];
    Eigen::VectorXcd pr = reevaluate(ev.basis_p, xr) * ev.hat_a / ev.basis_p.seed_norm;
    Eigen::VectorXcd qr = reevaluate(ev.basis_q, xr) * ev.hat_b / ev.basis_q.seed_norm;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      ev.p_vals[rest[k]] = pr[static_cast<Eigen::Index>(k)];
      ev.q_vals[rest[k]] = qr[static_cast<Eigen::Index>(k)];
    }
  }

  ev.lin_residual = samples.f.cwiseProduct(ev.q_vals) - ev.p_vals;
  ev.residual.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (std::abs(ev.q_vals[j]) <= kPoleFloor) {
      ev.residual[j] = std::numeric_limits<double>::infinity();
      ev.pole_adjacent.push_back(j);
    } else {
      ev.residual[j] = std::abs(samples.f[j] - ev.p_vals[j] / ev.q_vals[j]);
    }
  }
  return ev;
}

/// Dual value at simplex weights. Requires enough active nodes to make the
/// primal problem meaningful.
inline DualEvaluation eval_d2(const SampleSet& samples, const SimplexWeights& weights,
                              Eigen::Index n1, Eigen::Index n2) {
  if (static_cast<Eigen::Index>(weights.active.size()) < n1 + n2 + 2)
    throw std::invalid_argument("eval_d2: active node count " +
                                std::to_string(weights.active.size()) + " below n1 + n2 + 2 = " +
                                std::to_string(n1 + n2 + 2));
  return eval_d2_raw(samples, weights.w, n1, n2);
}

struct OracleResult {
  double d2 = 0.0;
  bool scale_warning = false;  // set when the dense route leaves its comfort zone
};

/// Independent check of eval_d2: explicit monomial Vandermonde matrices,
/// column-pivoted dense QR, and the smallest eigenvalue of the projected Gram
/// matrix. Intended for small instances (m <= 200, degrees <= 10); larger ones
/// get the scale warning because monomial conditioning degrades.
inline OracleResult eval_d2_oracle(const SampleSet& samples, const Eigen::VectorXd& w,
                                   Eigen::Index n1, Eigen::Index n2) {
  const Eigen::Index m = samples.size();
  if (w.size() != m) throw std::invalid_argument("oracle: weight length mismatch");
  OracleResult out;
  out.scale_warning = (m > 200 || n1 > 10 || n2 > 10);

  Eigen::VectorXd sqw = w.cwiseSqrt();
  auto vandermonde = [&](Eigen::Index degree) {
    Eigen::MatrixXcd V(m, degree + 1);
    V.col(0).setOnes();
    for (Eigen::Index k = 1; k <= degree; ++k) V.col(k) = V.col(k - 1).cwiseProduct(samples.x);
    return V;
  };
  auto thin_q = [&](const Eigen::MatrixXcd& A) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::Index r = qr.rank();
    return Eigen::MatrixXcd(qr.householderQ() * Eigen::MatrixXcd::Identity(m, r));
  };

  Eigen::MatrixXcd Qp = thin_q(sqw.asDiagonal() * vandermonde(n1));
  Eigen::MatrixXcd Qq = thin_q(sqw.asDiagonal() * vandermonde(n2));
  Eigen::MatrixXcd SF = Qq.adjoint() * (samples.f.cwiseAbs2().asDiagonal() * Qq);
  Eigen::MatrixXcd Sqp = Qq.adjoint() * (samples.f.conjugate().asDiagonal() * Qp);
  Eigen::MatrixXcd S = SF - Sqp * Sqp.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
  out.d2 = es.eigenvalues()[0];
  return out;
}

/// Gradient of the dual value in the weights, one entry per node:
/// |f_j q_j - p_j|^2 - d2 |q_j|^2. Valid as stated only for a simple minimum;
/// check ev.multiple_minimum before trusting it.
inline Eigen::VectorXd gradient(const DualEvaluation& ev) {
  return ev.lin_residual.cwiseAbs2() - ev.d2 * ev.q_vals.cwiseAbs2();
}

/// The dual block matrix [[I, -S_qp^H], [-S_qp, S_F - shift I]] whose smallest
/// eigenvalue tests positive semidefiniteness of the shifted dual form.
inline Eigen::MatrixXcd dual_block(const DualEvaluation& ev, double shift) {
  const Eigen::Index r1 = ev.basis_p.rank;
  const Eigen::Index r2 = ev.basis_q.rank;
  Eigen::MatrixXcd D(r1 + r2, r1 + r2);
  D.topLeftCorner(r1, r1) = Eigen::MatrixXcd::Identity(r1, r1);
  D.topRightCorner(r1, r2) = -ev.cross_gram;
  D.bottomLeftCorner(r2, r1) = -ev.cross_gram.adjoint();
  D.bottomRightCorner(r2, r2) = ev.sf_gram - shift * Eigen::MatrixXcd::Identity(r2, r2);
  return D;
}

inline double smallest_eigenvalue(const Eigen::MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

/// Consistency check: with the shift equal to d2 itself the dual block is
/// positive semidefinite by construction, so the result should only dip below
/// zero by rounding.
inline double psd_self_test(const DualEvaluation& ev) {
  return smallest_eigenvalue(dual_block(ev, ev.d2));
}

struct HessianResult {
  Eigen::MatrixXd matrix;        // m x m, symmetric
  Eigen::Index kernel_dim = 0;   // eigenvalues dropped by the pseudo-inverse; expect 1
  double asym_defect = 0.0;      // Frobenius asymmetry before symmetrization
};

/// Second derivative of the dual value at interior weights (all w_j > 0),
/// assembled from the same factor pair as the evaluation:
///   H = -2 Re(R D^+ R^H) - g |q|^2' - |q|^2 g',
/// with D the dual block at shift d2 and R the sensitivity of the optimality
/// residuals. D has a one-dimensional kernel at a simple minimum; the
/// pseudo-inverse drops eigenvalues at or below 1e-12 of the largest.
inline HessianResult hessian(const SampleSet& samples, const SimplexWeights& weights,
                             const DualEvaluation& ev) {
  const Eigen::Index m = samples.size();
  if (static_cast<Eigen::Index>(ev.support.size()) != m)
    throw std::invalid_argument("hessian: requires strictly positive weights at every node");
  const Eigen::Index r1 = ev.basis_p.rank;
  const Eigen::Index r2 = ev.basis_q.rank;

  Eigen::VectorXd g = gradient(ev);
  Eigen::VectorXd inv_sqw = weights.w.cwiseSqrt().cwiseInverse();

  // Left block: -W^{-1/2} conj(diag(fq - p)) Q_p.
  // Right block: W^{-1/2} diag(conj(fq - p) f - d2 conj(q)) Q_q - g hat_b^H.
  Eigen::MatrixXcd R(m, r1 + r2);
  R.leftCols(r1) =
      -(inv_sqw.asDiagonal() * (ev.lin_residual.conjugate().asDiagonal() * ev.basis_p.Q));
  Eigen::VectorXcd diag_right =
      ev.lin_residual.conjugate().cwiseProduct(samples.f) - ev.d2 * ev.q_vals.conjugate();
  R.rightCols(r2) = inv_sqw.asDiagonal() * (diag_right.asDiagonal() * ev.basis_q.Q) -
                    g.cast<std::complex<double>>() * ev.hat_b.adjoint();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dual_block(ev, ev.d2));
  const Eigen::VectorXd& lambda = es.eigenvalues();
  const double lambda_max = lambda[lambda.size() - 1];
  const double threshold = 1e-12 * lambda_max;

  HessianResult out;
  Eigen::MatrixXcd Z = R * es.eigenvectors();
  Eigen::VectorXd inv_lambda(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (lambda[k] <= threshold) {
      inv_lambda[k] = 0.0;
      ++out.kernel_dim;
    } else {
      inv_lambda[k] = 1.0 / lambda[k];
    }
  }

  Eigen::VectorXd qa2 = ev.q_vals.cwiseAbs2();
  Eigen::MatrixXd raw = -2.0 * (Z * inv_lambda.asDiagonal() * Z.adjoint()).real();
  raw.noalias() -= g * qa2.transpose();
  raw.noalias() -= qa2 * g.transpose();
  out.asym_defect = (raw - raw.transpose()).norm();
  out.matrix = 0.5 * (raw + raw.transpose());
  return out;
}

/// Optimality certificate for the pair recovered at w: the relative distance
/// between sqrt(d2) and the worst pointwise error, plus the smallest
/// eigenvalue of the dual block shifted by that worst error squared. A gap
/// within eps_r certifies the approximant as minimax to that tolerance.
struct Certificate {
  double gap = std::numeric_limits<double>::infinity();
  double sqrt_d2 = 0.0;
  double max_err = 0.0;
  double lambda_min = 0.0;
  bool satisfied = false;
  bool interpolation_regime = false;  // max_err was exactly zero; gap is absolute
  bool multiple_minimum = false;
  std::vector<Eigen::Index> support;
};

inline Certificate certify_ruttan(const SampleSet& samples, const SimplexWeights& weights,
                                  const DualEvaluation& ev, double eps_r, double eps_w = 0.0) {
  if (weights.w.size() != samples.size())
    throw std::invalid_argument("certify: weight length mismatch");
  Certificate cert;
  cert.sqrt_d2 = std::sqrt(std::max(ev.d2, 0.0));
  cert.max_err = ev.residual.maxCoeff();
  cert.multiple_minimum = ev.multiple_minimum;
  for (Eigen::Index j = 0; j < weights.w.size(); ++j)
    if (weights.w[j] > eps_w) cert.support.push_back(j);

  if (cert.max_err == 0.0) {
    // Interpolation: the error bound is already zero, report sqrt(d2) itself.
    cert.interpolation_regime = true;
    cert.gap = cert.sqrt_d2;
    cert.lambda_min = smallest_eigenvalue(dual_block(ev, 0.0));
  } else if (std::isinf(cert.max_err)) {
    cert.gap = std::numeric_limits<double>::infinity();
    cert.lambda_min = -std::numeric_limits<double>::infinity();
  } else {
    cert.gap = std::abs(cert.sqrt_d2 - cert.max_err) / cert.max_err;
    cert.lambda_min = smallest_eigenvalue(dual_block(ev, cert.max_err * cert.max_err));
  }
  cert.satisfied = cert.gap <= eps_r;
  return cert;
}

}  // namespace minirat

#endif  // MINIRAT_DUALCORE_HPP
