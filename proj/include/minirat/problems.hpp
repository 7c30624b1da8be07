#ifndef MINIRAT_PROBLEMS_HPP
#define MINIRAT_PROBLEMS_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace minirat {

using Complex = std::complex<double>;

/// Discrete approximation data: distinct sample nodes x and finite values f.
struct SampleSet {
  Eigen::VectorXcd x;
  Eigen::VectorXcd f;

  SampleSet() = default;
  SampleSet(Eigen::VectorXcd nodes, Eigen::VectorXcd values)
      : x(std::move(nodes)), f(std::move(values)) {
    if (x.size() == 0) throw std::invalid_argument("sample set: empty node vector");
    if (x.size() != f.size())
      throw std::invalid_argument("sample set: node/value length mismatch");
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (!std::isfinite(x[j].real()) || !std::isfinite(x[j].imag()))
        throw std::invalid_argument("sample set: non-finite node at index " + std::to_string(j));
      if (!std::isfinite(f[j].real()) || !std::isfinite(f[j].imag()))
        throw std::invalid_argument("sample set: non-finite value at index " + std::to_string(j));
    }
    if (auto dup = find_duplicate(x); dup.first >= 0)
      throw std::invalid_argument("sample set: duplicate nodes at indices " +
                                  std::to_string(dup.first) + " and " + std::to_string(dup.second));
  }

  Eigen::Index size() const { return x.size(); }

  /// Returns indices (i, j), i < j, of an exactly coinciding node pair, or (-1, -1).
  static std::pair<Eigen::Index, Eigen::Index> find_duplicate(const Eigen::VectorXcd& v) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(v.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<Eigen::Index>(k);
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      if (v[a].real() != v[b].real()) return v[a].real() < v[b].real();
      return v[a].imag() < v[b].imag();
    });
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (v[idx[k - 1]] == v[idx[k]])
        return {std::min(idx[k - 1], idx[k]), std::max(idx[k - 1], idx[k])};
    return {-1, -1};
  }
};

/// One of the built-in test functions, or a user callback.
struct FunctionId {
  enum class Tag { Abs, SqrtX, InvLog, SinhRatio, TanZ, LogShift, InvSqrtShift, SqrtQuartic, Custom };

  Tag tag = Tag::Custom;
  std::string name = "custom";
  std::function<Complex(Complex)> fn;

  /// Built-in by CLI name "f1".."f8".
  static FunctionId named(const std::string& id) {
    FunctionId out;
    out.name = id;
    if (id == "f1") out.tag = Tag::Abs;
    else if (id == "f2") out.tag = Tag::SqrtX;
    else if (id == "f3") out.tag = Tag::InvLog;
    else if (id == "f4") out.tag = Tag::SinhRatio;
    else if (id == "f5") out.tag = Tag::TanZ;
    else if (id == "f6") out.tag = Tag::LogShift;
    else if (id == "f7") out.tag = Tag::InvSqrtShift;
    else if (id == "f8") out.tag = Tag::SqrtQuartic;
    else throw std::invalid_argument("unknown function name: " + id);
    return out;
  }

  static FunctionId custom(std::function<Complex(Complex)> callback, std::string label = "custom") {
    FunctionId out;
    out.tag = Tag::Custom;
    out.name = std::move(label);
    out.fn = std::move(callback);
    return out;
  }

  /// Real-line functions require real nodes.
  bool real_line() const {
    return tag == Tag::Abs || tag == Tag::SqrtX || tag == Tag::InvLog || tag == Tag::SinhRatio;
  }

  Complex operator()(Complex z) const {
    switch (tag) {
      case Tag::Abs:
        return std::abs(z.real());
      case Tag::SqrtX:
        return std::sqrt(z.real());
      case Tag::InvLog: {
        double x = z.real();
        if (x == 0.0) return 0.0;  // removable value at the origin
        return -1.0 / std::log(std::abs(x));
      }
      case Tag::SinhRatio: {
        // t/sinh(t) with t = 100*pi*(x^2 - 0.36); series near t = 0 keeps the value exact at x = +-0.6.
        double x = z.real();
        double t = 100.0 * std::numbers::pi * (x * x - 0.36);
        if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
        return t / std::sinh(t);
      }
      case Tag::TanZ:
        return std::tan(z);
      case Tag::LogShift:
        return std::log(1.0 + z / 2.0);
      case Tag::InvSqrtShift:
        return 1.0 / std::sqrt(1.0 + 2.0 * z);
      case Tag::SqrtQuartic:
        return std::sqrt(1.0 + z * z * z * z);
      case Tag::Custom:
        return fn(z);
    }
    throw std::logic_error("unreachable function tag");
  }
};

/// Node layout on an interval or an arc, or an explicit list.
struct NodeScheme {
  enum class Kind { Equispaced, UnitCircle, HalfCircle, TanhArc, Explicit };

  Kind kind = Kind::Equispaced;
  double a = -1.0;
  double b = 1.0;
  Eigen::Index m = 0;  // size parameter, not always the node count
  Eigen::VectorXcd nodes;

  static NodeScheme equispaced(double a, double b, Eigen::Index m) {
    if (m < 2) throw std::invalid_argument("equispaced scheme needs m >= 2");
    if (!(a < b)) throw std::invalid_argument("equispaced scheme needs a < b");
    NodeScheme s;
    s.kind = Kind::Equispaced;
    s.a = a;
    s.b = b;
    s.m = m;
    return s;
  }

  static NodeScheme unit_circle(Eigen::Index m) {
    if (m < 1) throw std::invalid_argument("unit circle scheme needs m >= 1");
    NodeScheme s;
    s.kind = Kind::UnitCircle;
    s.m = m;
    return s;
  }

  static NodeScheme half_circle(Eigen::Index m) {
    if (m < 1) throw std::invalid_argument("half circle scheme needs m >= 1");
    NodeScheme s;
    s.kind = Kind::HalfCircle;
    s.m = m;
    return s;
  }

  static NodeScheme tanh_arc(Eigen::Index m) {
    if (m < 1) throw std::invalid_argument("tanh arc scheme needs m >= 1");
    NodeScheme s;
    s.kind = Kind::TanhArc;
    s.m = m;
    return s;
  }

  static NodeScheme explicit_nodes(Eigen::VectorXcd x) {
    NodeScheme s;
    s.kind = Kind::Explicit;
    s.nodes = std::move(x);
    s.m = s.nodes.size();
    return s;
  }
};

/// Materializes the scheme. Circle/arc schemes with parameter m produce m (unit circle)
/// or m+1 (half circle, tanh arc) nodes; the generated set is checked for exact duplicates.
inline Eigen::VectorXcd generate_nodes(const NodeScheme& scheme) {
  constexpr double pi = std::numbers::pi;
  Eigen::VectorXcd x;
  switch (scheme.kind) {
    case NodeScheme::Kind::Equispaced: {
      x.resize(scheme.m);
      for (Eigen::Index j = 0; j < scheme.m; ++j)
        x[j] = scheme.a + (scheme.b - scheme.a) * static_cast<double>(j) /
                              static_cast<double>(scheme.m - 1);
      break;
    }
    case NodeScheme::Kind::UnitCircle: {
      x.resize(scheme.m);
      for (Eigen::Index j = 0; j < scheme.m; ++j)
        x[j] = std::polar(1.0, -pi + 2.0 * pi * static_cast<double>(j) / static_cast<double>(scheme.m));
      break;
    }
    case NodeScheme::Kind::HalfCircle: {
      x.resize(scheme.m + 1);
      for (Eigen::Index j = 0; j <= scheme.m; ++j)
        x[j] = std::polar(1.0, -pi / 2.0 + pi * static_cast<double>(j) / static_cast<double>(scheme.m));
      break;
    }
    case NodeScheme::Kind::TanhArc: {
      x.resize(scheme.m + 1);
      for (Eigen::Index j = 0; j <= scheme.m; ++j) {
        double t = std::tanh(-12.0 + 24.0 * static_cast<double>(j) / static_cast<double>(scheme.m));
        x[j] = std::polar(1.0, pi / 4.0 * t);
      }
      break;
    }
    case NodeScheme::Kind::Explicit: {
      if (scheme.nodes.size() == 0) throw std::invalid_argument("explicit scheme: empty node list");
      x = scheme.nodes;
      break;
    }
  }
  if (auto dup = SampleSet::find_duplicate(x); dup.first >= 0)
    throw std::invalid_argument("node scheme: duplicate nodes at indices " +
                                std::to_string(dup.first) + " and " + std::to_string(dup.second));
  return x;
}

/// Samples f over the nodes. Real-line functions reject nodes off the real axis;
/// a non-finite value reports the offending node index.
inline SampleSet sample(const FunctionId& fid, const Eigen::VectorXcd& nodes) {
  Eigen::VectorXcd f(nodes.size());
  for (Eigen::Index j = 0; j < nodes.size(); ++j) {
    if (fid.real_line() && nodes[j].imag() != 0.0)
      throw std::invalid_argument("function " + fid.name + " is real-line but node " +
                                  std::to_string(j) + " has nonzero imaginary part");
    f[j] = fid(nodes[j]);
    if (!std::isfinite(f[j].real()) || !std::isfinite(f[j].imag()))
      throw std::invalid_argument("function " + fid.name + " is non-finite at node index " +
                                  std::to_string(j));
  }
  return SampleSet(nodes, std::move(f));
}

inline SampleSet sample(const FunctionId& fid, const NodeScheme& scheme) {
  return sample(fid, generate_nodes(scheme));
}

}  // namespace minirat

#endif  // MINIRAT_PROBLEMS_HPP
