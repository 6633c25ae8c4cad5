#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "fopa/constants.hpp"
#include "fopa/errors.hpp"

namespace fopa {

struct QuadratureControl {
  double rel_tolerance = 1e-9;
  int max_evaluations = 20000;
};

template <class V = Eigen::VectorXcd>
struct QuadratureResult {
  V value;
  Eigen::VectorXd error;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Piece {
  double a, b;
  V value;
  Eigen::VectorXd error;
};

inline Eigen::VectorXd magnitudes(const Eigen::VectorXcd& v) { return v.cwiseAbs(); }

}  // namespace detail

/// Adaptive G7-K15 integration of a vector-valued integrand over [a, b].
///
/// Each interval carries a context object. `f(x, ctx)` evaluates the
/// integrand at x inside the interval owning `ctx`; `split(ctx, a, m, b)`
/// returns the (left, right) contexts when [a, b] is bisected at m. The
/// noise integrals use this to chain transfer matrices from interval ends.
///
/// Component k is converged when its error estimate is below
/// rel_tolerance * scale(value)[k]; the interval with the worst contribution
/// to the worst component is bisected next.
///
/// The value type V defaults to Eigen::VectorXcd; other types need +, -,
/// multiplication by double and a `magnitudes(V) -> Eigen::VectorXd` overload.
///
/// `pieces` > 1 starts from a uniform partition, which saves the wasted
/// top-level passes on strongly oscillating integrands.
template <class V = Eigen::VectorXcd, class Ctx, class F, class Split, class Scale>
QuadratureResult<V> integrate_adaptive(F&& f, Split&& split, Scale&& scale, double a, double b,
                                    Ctx root, const QuadratureControl& ctl, int pieces = 1) {
  if (!(ctl.rel_tolerance > 0.0) || ctl.max_evaluations < 15 || pieces < 1)
    throw ValidationError("invalid quadrature control");
  if (15.0 * pieces > ctl.max_evaluations)
    throw QuadratureFailure("initial partition exceeds the evaluation budget");

  using detail::magnitudes;
  struct Node {
    detail::Piece<V> piece;
    Ctx ctx;
  };
  int evaluations = 0;

  auto rule = [&](double lo, double hi, const Ctx& ctx) {
    const double centre = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const V fc = f(centre, ctx);
    V kronrod = detail::kronrod_weights[7] * fc;
    V gauss = detail::gauss_weights[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * detail::kronrod_nodes[j];
      const V sum = f(centre - dx, ctx) + f(centre + dx, ctx);
      kronrod = kronrod + detail::kronrod_weights[j] * sum;
      if (j % 2 == 1) gauss = gauss + detail::gauss_weights[j / 2] * sum;
    }
    evaluations += 15;
    detail::Piece<V> p{lo, hi, half * kronrod, Eigen::VectorXd()};
    p.error = half * magnitudes(V(kronrod - gauss));
    return p;
  };

  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(pieces) + 64);
  {
    Ctx ctx = std::move(root);
    double hi = b;
    const double h = (b - a) / pieces;
    for (int i = pieces - 1; i >= 1; --i) {
      const double m = a + i * h;
      auto [left_ctx, right_ctx] = split(ctx, a, m, hi);
      nodes.push_back(Node{rule(m, hi, right_ctx), std::move(right_ctx)});
      ctx = std::move(left_ctx);
      hi = m;
    }
    nodes.push_back(Node{rule(a, hi, ctx), std::move(ctx)});
  }

  while (true) {
    V total = nodes.front().piece.value;
    Eigen::VectorXd error = nodes.front().piece.error;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      total = total + nodes[i].piece.value;
      error += nodes[i].piece.error;
    }
    const Eigen::VectorXd ref = scale(total);
    int worst = -1;
    double worst_ratio = 1.0;
    for (Eigen::Index k = 0; k < error.size(); ++k) {
      const double allowed = ctl.rel_tolerance * ref[k];
      const double ratio = allowed > 0.0 ? error[k] / allowed : (error[k] > 0.0 ? HUGE_VAL : 0.0);
      if (ratio > worst_ratio) {
        worst_ratio = ratio;
        worst = static_cast<int>(k);
      }
    }
    if (worst < 0) return {total, error, evaluations};
    if (evaluations + 30 > ctl.max_evaluations)
      throw QuadratureFailure("tolerance not met within the evaluation budget");

    std::size_t pick = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
      if (nodes[i].piece.error[worst] > nodes[pick].piece.error[worst]) pick = i;

    Node parent = std::move(nodes[pick]);
    const double lo = parent.piece.a, hi = parent.piece.b, mid = 0.5 * (lo + hi);
    auto [left_ctx, right_ctx] = split(parent.ctx, lo, mid, hi);
    detail::Piece left = rule(lo, mid, left_ctx);
    detail::Piece right = rule(mid, hi, right_ctx);
    nodes[pick] = Node{std::move(left), std::move(left_ctx)};
    nodes.push_back(Node{std::move(right), std::move(right_ctx)});
  }
}

}  // namespace fopa
