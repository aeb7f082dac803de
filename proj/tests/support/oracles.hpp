#pragma once

// Reference computations used only by tests. Nothing here calls into the
// library's solver or operator code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "eigloc/graph.hpp"

namespace eigloc::oracle {

using Dense = std::vector<std::vector<double>>;

/// Symmetric D^{-1/2} W D^{-1/2} assembled directly from the edge list.
inline Dense symmetric_walk_matrix(const WeightedGraph& g) {
  const std::size_t n = g.n();
  std::vector<double> deg(n, 0.0);
  for (const Edge& e : g.edges()) {
    deg[e.i] += e.w;
    deg[e.j] += e.w;
  }
  Dense s(n, std::vector<double>(n, 0.0));
  for (const Edge& e : g.edges()) {
    const double v = e.w / std::sqrt(deg[e.i] * deg[e.j]);
    s[e.i][e.j] = v;
    s[e.j][e.i] = v;
  }
  return s;
}

/// Cyclic Jacobi rotations; returns eigenvalues sorted descending.
inline std::vector<double> jacobi_eigenvalues(Dense a, double tol = 1e-14) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < tol * tol) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a[i][i];
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return vals;
}

inline std::vector<double> walk_spectrum(const WeightedGraph& g) {
  return jacobi_eigenvalues(symmetric_walk_matrix(g));
}

/// Conductance of every prefix of `order`, recomputed from scratch each time.
inline std::vector<double> prefix_conductances(const WeightedGraph& g,
                                               const std::vector<NodeId>& order) {
  const std::size_t n = g.n();
  std::vector<double> out;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<bool> in(n, false);
    for (std::size_t t = 0; t < k; ++t) in[order[t]] = true;
    double cut = 0.0, vin = 0.0, vout = 0.0;
    for (const Edge& e : g.edges()) {
      if (in[e.i] != in[e.j]) cut += e.w;
      (in[e.i] ? vin : vout) += e.w;
      (in[e.j] ? vin : vout) += e.w;
    }
    out.push_back(cut / std::min(vin, vout));
  }
  return out;
}

/// Node order for a sweep: v descending, ties by index.
inline std::vector<NodeId> sweep_order(const std::vector<double>& v) {
  std::vector<NodeId> order(v.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return v[a] > v[b]; });
  return order;
}

}  // namespace eigloc::oracle
