#ifndef MINIRAT_SOLVERS_HPP
#define MINIRAT_SOLVERS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dualcore.hpp"
#include "orthobasis.hpp"
#include "problems.hpp"

namespace minirat {

struct SolverConfig {
  double beta = 1.0;     // Lawson exponent, 0 < beta <= 1
  double eps_r = 1e-5;   // relative duality gap target
  double eps_w = 1e-40;  // node filtering threshold
  int k_max = 40;        // weight update budget

  void validate() const {
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("config: beta must lie in (0, 1]");
    if (!(eps_r > 0.0)) throw std::invalid_argument("config: eps_r must be positive");
    if (!(eps_w >= 0.0)) throw std::invalid_argument("config: eps_w must be nonnegative");
    if (k_max < 1) throw std::invalid_argument("config: k_max must be at least 1");
  }
};

struct TraceRow {
  int k = 0;
  double sqrt_d2 = std::numeric_limits<double>::quiet_NaN();
  double max_err = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index active_nodes = 0;
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  int best_k = -1;
};

/// Thrown when an iteration cannot continue; carries whatever trace exists.
struct SolveAbort : std::runtime_error {
  SolveTrace partial;
  SolveAbort(const std::string& msg, SolveTrace trace)
      : std::runtime_error(msg), partial(std::move(trace)) {}
};

/// FNV-1a over the IEEE-754 bytes of the node coordinates in index order.
/// Ties a serialized approximant to the sample set it was built from.
inline std::uint64_t nodes_digest(const Eigen::VectorXcd& x) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ull;
    }
  };
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    mix(x[j].real());
    mix(x[j].imag());
  }
  return h;
}

/// Rational approximant in recurrence form: two Hessenberg recurrences share
/// one seed, so their norms cancel in the ratio and evaluation needs no
/// original node data.
struct Approximant {
  Eigen::Index n1 = 0, n2 = 0;
  KrylovBasis recurrence_p, recurrence_q;  // Q detached; H, seed_norm, rank kept
  Eigen::VectorXcd hat_a, hat_b;
  std::uint64_t source_nodes_digest = 0;

  Eigen::VectorXcd evaluate(const Eigen::VectorXcd& y) const {
    if (hat_a.size() != recurrence_p.rank || hat_b.size() != recurrence_q.rank)
      throw std::invalid_argument("approximant: coefficient length does not match recurrence rank");
    Eigen::VectorXcd num = reevaluate(recurrence_p, y) * hat_a / recurrence_p.seed_norm;
    Eigen::VectorXcd den = reevaluate(recurrence_q, y) * hat_b / recurrence_q.seed_norm;
    return num.cwiseQuotient(den);
  }
};

namespace detail {

inline KrylovBasis detach_q(KrylovBasis basis) {
  basis.Q.resize(0, 0);
  return basis;
}

inline Approximant make_approximant(Eigen::Index n1, Eigen::Index n2, const DualEvaluation& ev,
                                    const Eigen::VectorXcd& nodes) {
  Approximant a;
  a.n1 = n1;
  a.n2 = n2;
  a.recurrence_p = detach_q(ev.basis_p);
  a.recurrence_q = detach_q(ev.basis_q);
  a.hat_a = ev.hat_a;
  a.hat_b = ev.hat_b;
  a.source_nodes_digest = nodes_digest(nodes);
  return a;
}

// Worst finite entry, or +inf if none is finite.
inline double max_finite(const Eigen::VectorXd& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (std::isfinite(v[j]) && v[j] > best) best = v[j];
  return std::isfinite(best) ? best : std::numeric_limits<double>::infinity();
}

inline double gap_of(double sqrt_d2, double max_err) {
  if (max_err == 0.0) return sqrt_d2;  // interpolation regime: absolute value
  if (std::isinf(max_err)) return std::numeric_limits<double>::infinity();
  return std::abs(sqrt_d2 - max_err) / max_err;
}

}  // namespace detail

struct LawsonUpdateResult {
  Eigen::VectorXd w;
  bool interpolation_converged = false;  // residuals vanished on the support; w unchanged
};

/// Multiplicative weight update w_j <- w_j r_j^beta, renormalized. Zero
/// weights stay zero. Pole-adjacent sentinels (+inf residuals) are replaced by
/// the largest finite residual so a single pole cannot swallow all the mass.
inline LawsonUpdateResult lawson_update(const Eigen::VectorXd& w, const Eigen::VectorXd& residual,
                                        double beta) {
  if (w.size() != residual.size()) throw std::invalid_argument("lawson update: length mismatch");
  if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("lawson update: beta must lie in (0, 1]");
  const double substitute = detail::max_finite(residual);
  LawsonUpdateResult out;
  out.w.resize(w.size());
  double total = 0.0;
  for (Eigen::Index j = 0; j < w.size(); ++j) {
    double r = residual[j];
    if (std::isinf(r)) r = std::isfinite(substitute) ? substitute : 1.0;
    out.w[j] = w[j] * std::pow(r, beta);
    total += out.w[j];
  }
  if (total == 0.0) {
    out.w = w;
    out.interpolation_converged = true;
    return out;
  }
  out.w /= total;
  return out;
}

struct FilterResult {
  SimplexWeights weights;
  std::vector<Eigen::Index> removed;
  bool skipped_floor = false;  // removal would have left fewer than floor_count nodes
};

/// Drops active nodes with w_j < eps_w and renormalizes the survivors, unless
/// that would leave fewer than floor_count nodes. eps_w = 0 is the identity.
inline FilterResult filter_nodes(const SimplexWeights& weights, double eps_w,
                                 Eigen::Index floor_count) {
  FilterResult out;
  std::vector<Eigen::Index> survivors;
  for (Eigen::Index j : weights.active) {
    if (weights.w[j] < eps_w) out.removed.push_back(j);
    else survivors.push_back(j);
  }
  if (out.removed.empty()) {
    out.weights = weights;
    return out;
  }
  if (static_cast<Eigen::Index>(survivors.size()) < floor_count) {
    out.weights = weights;
    out.removed.clear();
    out.skipped_floor = true;
    return out;
  }
  double total = 0.0;
  for (Eigen::Index j : survivors) total += weights.w[j];
  out.weights.w = Eigen::VectorXd::Zero(weights.w.size());
  for (Eigen::Index j : survivors) out.weights.w[j] = weights.w[j] / total;
  out.weights.active = std::move(survivors);
  return out;
}

struct SolveResult {
  Approximant xi;
  SolveTrace trace;
  Certificate cert;          // certificate of the returned (best) iterate
  SimplexWeights best_w;     // weights at the best iterate
  bool interpolation_converged = false;
};

/// Lawson-type iteration on the dual problem. Every iterate is evaluated over
/// all original nodes; d2 and the weight update see only the active ones. The
/// returned approximant is the iterate with the smallest relative duality gap
/// (earliest iteration on ties), not necessarily the last.
inline SolveResult d_lawson(const SampleSet& samples, Eigen::Index n1, Eigen::Index n2,
                            const SolverConfig& cfg = {},
                            std::optional<Eigen::VectorXd> seed_weights = std::nullopt) {
  cfg.validate();
  const Eigen::Index m = samples.size();
  if (m < n1 + n2 + 2)
    throw std::invalid_argument("d_lawson: need m >= n1 + n2 + 2 nodes, got " + std::to_string(m));
  if (seed_weights && seed_weights->size() != m)
    throw std::invalid_argument("d_lawson: seed weights have length " +
                                std::to_string(seed_weights->size()) + ", expected " +
                                std::to_string(m));
  const Eigen::Index floor_count = n1 + n2 + 2;

  SimplexWeights w = seed_weights ? SimplexWeights::from_vector(*seed_weights)
                                  : SimplexWeights::uniform(m);
  SolveTrace trace;
  double best_gap = std::numeric_limits<double>::infinity();
  SimplexWeights best_w;
  DualEvaluation best_ev;
  bool interpolation = false;

  for (int k = 0;; ++k) {
    w = filter_nodes(w, cfg.eps_w, floor_count).weights;

    DualEvaluation ev;
    try {
      ev = eval_d2(samples, w, n1, n2);
    } catch (const std::exception& e) {
      throw SolveAbort(std::string("d_lawson: evaluation failed at iteration ") +
                           std::to_string(k) + ": " + e.what(),
                       trace);
    }

    const double sqrt_d2 = std::sqrt(std::max(ev.d2, 0.0));
    const double max_err = ev.residual.maxCoeff();
    const double gap = detail::gap_of(sqrt_d2, max_err);
    trace.rows.push_back({k, sqrt_d2, max_err, gap, static_cast<Eigen::Index>(w.active.size())});
    if (gap < best_gap || trace.best_k < 0) {
      best_gap = gap;
      best_w = w;
      best_ev = ev;
      trace.best_k = k;
    }
    if (max_err == 0.0) interpolation = true;
    if (gap < cfg.eps_r || k >= cfg.k_max) break;

    auto update = lawson_update(w.w, ev.residual, cfg.beta);
    if (update.interpolation_converged) {
      interpolation = true;
      break;  // nothing left to redistribute
    }
    w.w = std::move(update.w);
  }

  SolveResult out;
  out.xi = detail::make_approximant(n1, n2, best_ev, samples.x);
  out.trace = std::move(trace);
  out.cert = certify_ruttan(samples, best_w, best_ev, cfg.eps_r, cfg.eps_w);
  out.best_w = std::move(best_w);
  out.interpolation_converged = interpolation || out.cert.interpolation_regime;
  return out;
}

struct IterationResult {
  Approximant xi;
  SolveTrace trace;  // sqrt_d2 and gap columns stay NaN; best_k tracks max_err
};

namespace detail {

// Shared body of the two reweighted least-squares iterations. Each round
// minimizes ||[-Q_p, F Q_q] [a; b]|| over unit joint coefficient norm; the
// seed builder distinguishes the plain (sqrt w) and stabilized (w) variants.
template <typename SeedFn, typename WeightUpdateFn>
IterationResult reweighted_ls(const SampleSet& samples, Eigen::Index n1, Eigen::Index n2,
                              const SolverConfig& cfg, SeedFn&& seed_of, WeightUpdateFn&& next_w) {
  cfg.validate();
  const Eigen::Index m = samples.size();
  if (m < n1 + n2 + 2)
    throw std::invalid_argument("iteration: need m >= n1 + n2 + 2 nodes, got " + std::to_string(m));

  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  Eigen::VectorXcd xi_prev;
  SolveTrace trace;
  double best_err = std::numeric_limits<double>::infinity();
  Approximant best;

  for (int k = 0; k < cfg.k_max; ++k) {
    Eigen::VectorXd seed = seed_of(w);
    KrylovBasis bp, bq;
    try {
      bp = weighted_arnoldi(samples.x, seed, n1);
      bq = weighted_arnoldi(samples.x, seed, n2);
    } catch (const std::exception& e) {
      throw SolveAbort(std::string("iteration: basis failed at step ") + std::to_string(k) + ": " +
                           e.what(),
                       trace);
    }
    const Eigen::Index r1 = bp.rank, r2 = bq.rank;

    Eigen::MatrixXcd C(m, r1 + r2);
    C.leftCols(r1) = -bp.Q;
    C.rightCols(r2) = samples.f.asDiagonal() * bq.Q;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(C, Eigen::ComputeThinV);
    Eigen::VectorXcd v = svd.matrixV().col(r1 + r2 - 1);

    Approximant a;
    a.n1 = n1;
    a.n2 = n2;
    a.hat_a = v.head(r1);
    a.hat_b = v.tail(r2);
    a.recurrence_p = detach_q(bp);
    a.recurrence_q = detach_q(bq);
    a.source_nodes_digest = nodes_digest(samples.x);

    // Values at the nodes; the joint scale of (a, b) cancels in the ratio.
    Eigen::VectorXcd p_vals = (bp.Q * a.hat_a).cwiseQuotient(seed.cast<std::complex<double>>());
    Eigen::VectorXcd q_vals = (bq.Q * a.hat_b).cwiseQuotient(seed.cast<std::complex<double>>());
    Eigen::VectorXcd xi = p_vals.cwiseQuotient(q_vals);
    double max_err = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      double r = std::abs(q_vals[j]) <= kPoleFloor ? std::numeric_limits<double>::infinity()
                                                   : std::abs(samples.f[j] - xi[j]);
      max_err = std::max(max_err, r);
    }
    trace.rows.push_back({k, std::numeric_limits<double>::quiet_NaN(), max_err,
                          std::numeric_limits<double>::quiet_NaN(), m});
    if (max_err < best_err || trace.best_k < 0) {
      best_err = max_err;
      best = a;
      trace.best_k = k;
    }

    if (xi_prev.size() > 0) {
      double step = (w.cwiseSqrt().cast<std::complex<double>>().cwiseProduct(xi - xi_prev)).norm();
      if (step <= 1e-11) break;
    }
    xi_prev = xi;
    w = next_w(w, q_vals);
  }

  IterationResult out;
  out.xi = std::move(best);
  out.trace = std::move(trace);
  return out;
}

// Replaces entries for pole-adjacent denominators by the largest finite entry.
inline Eigen::VectorXd substitute_poles(Eigen::VectorXd raw, const Eigen::VectorXcd& q_vals) {
  double worst = 0.0;
  bool any_finite = false;
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    if (std::abs(q_vals[j]) > kPoleFloor && std::isfinite(raw[j])) {
      worst = std::max(worst, raw[j]);
      any_finite = true;
    }
  }
  for (Eigen::Index j = 0; j < raw.size(); ++j) {
    if (std::abs(q_vals[j]) <= kPoleFloor || !std::isfinite(raw[j]))
      raw[j] = any_finite ? worst : 1.0;
  }
  return raw;
}

}  // namespace detail

/// Classical reweighting: w_j proportional to 1 / |q_j|^2 with the previous
/// denominator, seeded with q = 1 (uniform weights). No certificate; the trace
/// records the maximum error per round and the best round is returned.
inline IterationResult sk_iteration(const SampleSet& samples, Eigen::Index n1, Eigen::Index n2,
                                    const SolverConfig& cfg = {}) {
  return detail::reweighted_ls(
      samples, n1, n2, cfg, [](const Eigen::VectorXd& w) { return Eigen::VectorXd(w.cwiseSqrt()); },
      [](const Eigen::VectorXd& w, const Eigen::VectorXcd& q_vals) {
        Eigen::VectorXd raw(w.size());
        for (Eigen::Index j = 0; j < w.size(); ++j) {
          double qa = std::abs(q_vals[j]);
          raw[j] = qa > kPoleFloor ? 1.0 / (qa * qa) : std::numeric_limits<double>::infinity();
        }
        raw = detail::substitute_poles(std::move(raw), q_vals);
        return Eigen::VectorXd(raw / raw.sum());
      });
}

/// Stabilized variant: the weight matrix multiplies the design matrices
/// directly (the basis seed is w itself, not its square root) and the update
/// divides by |q_j| once per round, keeping the 1-norm fixed.
inline IterationResult ssk_iteration(const SampleSet& samples, Eigen::Index n1, Eigen::Index n2,
                                     const SolverConfig& cfg = {}) {
  return detail::reweighted_ls(
      samples, n1, n2, cfg, [](const Eigen::VectorXd& w) { return w; },
      [](const Eigen::VectorXd& w, const Eigen::VectorXcd& q_vals) {
        Eigen::VectorXd factor(w.size());
        for (Eigen::Index j = 0; j < w.size(); ++j) {
          double qa = std::abs(q_vals[j]);
          factor[j] = qa > kPoleFloor ? 1.0 / qa : std::numeric_limits<double>::infinity();
        }
        factor = detail::substitute_poles(std::move(factor), q_vals);
        Eigen::VectorXd raw = w.cwiseProduct(factor);
        return Eigen::VectorXd(raw / raw.sum());
      });
}

}  // namespace minirat

#endif  // MINIRAT_SOLVERS_HPP
