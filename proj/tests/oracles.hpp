#pragma once

// Reference computations used by the tests. Deliberately naive: linear scans,
// numerical integration, exhaustive checks. None of this calls into the
// library's own algorithms beyond plain data types.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fogsim/coordinator/messages.hpp"
#include "fogsim/fognode/dataflow.hpp"
#include "fogsim/topology/node.hpp"

namespace oracle {

inline double dist(double ax, double ay, double bx, double by) {
  const double dx = ax - bx;
  const double dy = ay - by;
  return std::sqrt(dx * dx + dy * dy);
}

// Responder with the smallest score; ties to the smaller (layer, ordinal).
inline std::optional<fogsim::topology::NodeId> argmin(const std::vector<fogsim::coordinator::JobResult>& rs) {
  std::optional<fogsim::topology::NodeId> best;
  double best_score = 0.0;
  for (const auto& r : rs) {
    bool take = !best;
    if (!take && r.score < best_score) take = true;
    if (!take && r.score == best_score) {
      if (r.responder.layer != best->layer) {
        take = r.responder.layer < best->layer;
      } else {
        take = r.responder.ordinal < best->ordinal;
      }
    }
    if (take) {
      best = r.responder;
      best_score = r.score;
    }
  }
  return best;
}

// Midpoint-rule centroid of the angular sector [a0, a1) of a disk.
inline std::pair<double, double> sector_centroid_numeric(double radius, double a0, double a1, int nr = 400,
                                                         int na = 400) {
  double m = 0.0, mx = 0.0, my = 0.0;
  const double dr = radius / nr;
  const double da = (a1 - a0) / na;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < na; ++j) {
      const double a = a0 + (j + 0.5) * da;
      const double w = r * dr * da;
      m += w;
      mx += w * r * std::cos(a);
      my += w * r * std::sin(a);
    }
  }
  return {mx / m, my / m};
}

// True iff every edge of g goes from an earlier to a later position of order
// and order is a permutation of g's operators.
inline bool respects_edges(const fogsim::fognode::DataflowGraph& g, const std::vector<std::string>& order) {
  if (order.size() != g.operators.size()) return false;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!pos.emplace(order[i], i).second) return false;
  }
  for (const auto& op : g.operators) {
    if (!pos.count(op.id)) return false;
  }
  for (const auto& [from, to] : g.edges) {
    if (pos.at(from) >= pos.at(to)) return false;
  }
  return true;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace oracle
