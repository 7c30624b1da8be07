#ifndef MINIRAT_ORTHOBASIS_HPP
#define MINIRAT_ORTHOBASIS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace minirat {

/// Orthonormal Krylov basis of span{s, X s, ..., X^degree s} with X = diag(x),
/// together with the Hessenberg recurrence that rebuilds the underlying
/// polynomials at arbitrary points.
///
/// Column j+1 satisfies  x .* Q(:,j) = sum_{i<=j+1} H(i,j) Q(:,i), so
/// Q(:,j) = s .* pi_j(x) / seed_norm for polynomials pi_j of increasing degree
/// with pi_0 = 1. H alone determines pi_1, ..., pi_{rank-1}.
struct KrylovBasis {
  Eigen::MatrixXcd Q;     // m x rank, orthonormal columns (may be detached, 0 x 0)
  Eigen::MatrixXcd H;     // rank x (rank-1); column j holds rows 0..j+1
  double seed_norm = 0.0; // Euclidean norm of the seed vector
  Eigen::Index rank = 0;
};

/// Builds the basis by modified Gram-Schmidt with one full reorthogonalization
/// pass per column. A candidate column whose remaining norm is at most
/// 1e-14 * ||x .* Q(:,j)|| + 1e-300 signals an invariant subspace; the basis is
/// truncated there and rank < degree + 1 is returned.
inline KrylovBasis weighted_arnoldi(const Eigen::VectorXcd& x, const Eigen::VectorXd& seed,
                                    Eigen::Index degree) {
  const Eigen::Index m = x.size();
  if (m == 0) throw std::invalid_argument("arnoldi: empty node vector");
  if (seed.size() != m) throw std::invalid_argument("arnoldi: seed length mismatch");
  if (degree < 0) throw std::invalid_argument("arnoldi: negative degree");
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!std::isfinite(x[j].real()) || !std::isfinite(x[j].imag()) || !std::isfinite(seed[j]))
      throw std::invalid_argument("arnoldi: non-finite input at index " + std::to_string(j));
  }
  const double sn = seed.norm();
  if (sn == 0.0) throw std::invalid_argument("arnoldi: zero seed vector");

  KrylovBasis basis;
  basis.seed_norm = sn;
  basis.Q.resize(m, degree + 1);
  basis.H = Eigen::MatrixXcd::Zero(degree + 1, std::max<Eigen::Index>(degree, 0));
  basis.Q.col(0) = (seed / sn).cast<std::complex<double>>();
  basis.rank = 1;

  for (Eigen::Index j = 0; j < degree; ++j) {
    Eigen::VectorXcd v = x.cwiseProduct(basis.Q.col(j));
    const double scale = v.norm();
    for (Eigen::Index i = 0; i <= j; ++i) {
      const std::complex<double> h = basis.Q.col(i).dot(v);
      v -= h * basis.Q.col(i);
      basis.H(i, j) = h;
    }
    // Second sweep restores orthogonality lost to cancellation.
    for (Eigen::Index i = 0; i <= j; ++i) {
      const std::complex<double> c = basis.Q.col(i).dot(v);
      v -= c * basis.Q.col(i);
      basis.H(i, j) += c;
    }
    const double hnext = v.norm();
    if (hnext <= 1e-14 * scale + 1e-300) break;
    basis.H(j + 1, j) = hnext;
    basis.Q.col(j + 1) = v / hnext;
    basis.rank = j + 2;
  }

  basis.Q.conservativeResize(m, basis.rank);
  basis.H.conservativeResize(basis.rank, basis.rank - 1);
  return basis;
}

/// Replays the Hessenberg recurrence at new points y. Returns L with
/// L(:,0) = 1 and L(:,j) = pi_j(y) * seed_norm, so that evaluating the basis
/// column span at y amounts to L * coeffs / seed_norm. At the original nodes,
/// diag(seed) * L = seed_norm * Q.
inline Eigen::MatrixXcd reevaluate(const KrylovBasis& basis, const Eigen::VectorXcd& y,
                                   Eigen::Index width = -1) {
  if (width < 0) width = basis.rank;
  if (width > basis.rank)
    throw std::invalid_argument("reevaluate: requested width " + std::to_string(width) +
                                " exceeds basis rank " + std::to_string(basis.rank));
  Eigen::MatrixXcd L(y.size(), width);
  if (width == 0 || y.size() == 0) return L;
  L.col(0).setOnes();
  for (Eigen::Index j = 0; j + 1 < width; ++j) {
    Eigen::VectorXcd v = y.cwiseProduct(L.col(j));
    for (Eigen::Index i = 0; i <= j; ++i) v -= basis.H(i, j) * L.col(i);
    L.col(j + 1) = v / basis.H(j + 1, j);
  }
  return L;
}

}  // namespace minirat

#endif  // MINIRAT_ORTHOBASIS_HPP
