#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "fogsim/coordinator/coordinator.hpp"
#include "fogsim/coordinator/deployment.hpp"
#include "fogsim/error.hpp"
#include "fogsim/fognode/dataflow.hpp"
#include "fogsim/sim/latency.hpp"
#include "fogsim/topology/placement.hpp"
#include "oracles.hpp"

using namespace fogsim::coordinator;
using fogsim::Error;
using fogsim::ErrorCode;
using fogsim::sim::SimTime;
using fogsim::topology::Layer;
using fogsim::topology::NodeId;
using fogsim::topology::NodeStatus;
using fogsim::topology::Point2D;
using fogsim::topology::Registry;

namespace {

NodeId F(std::uint32_t i) { return {Layer::kFog, i}; }

ServiceRequest request_at(Point2D origin, double range, RequestId id = 1) {
  ServiceRequest r;
  r.request_id = id;
  r.requester = {Layer::kTerminal, 0};
  r.origin = origin;
  r.query_range_m = range;
  return r;
}

void report(Registry& reg, std::uint32_t i, Point2D at, std::uint32_t queue, double capacity = 4.0) {
  reg.report_status(NodeStatus{F(i), at, {capacity, queue, 10.0}, SimTime{0}});
}

JobResult result(std::uint32_t i, double score, RequestId id = 1) { return {id, F(i), score, {}}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no fogsim::Error thrown";
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST(FilterCandidates, SingleNearbyNode) {
  Registry reg;
  report(reg, 0, {100, 0}, 0);
  EXPECT_EQ(filter_candidates(reg, request_at({0, 0}, 500)), std::vector<NodeId>{F(0)});
}

TEST(FilterCandidates, AllOutOfRange) {
  Registry reg;
  report(reg, 0, {900, 0}, 0);
  report(reg, 1, {0, 800}, 0);
  EXPECT_EQ(code_of([&] { filter_candidates(reg, request_at({0, 0}, 500)); }), ErrorCode::kNoEligibleNodes);
}

TEST(FilterCandidates, FullNodesExcluded) {
  Registry reg;
  report(reg, 0, {10, 0}, 4);
  report(reg, 1, {20, 0}, 3);
  EXPECT_EQ(filter_candidates(reg, request_at({0, 0}, 500)), std::vector<NodeId>{F(1)});
}

TEST(FilterCandidates, MatchesBruteForceOracle) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-1000, 1000);
  std::uniform_int_distribution<std::uint32_t> q(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Registry reg;
    std::vector<std::tuple<std::uint32_t, Point2D, std::uint32_t>> piles;
    for (std::uint32_t i = 0; i < 10; ++i) {
      const Point2D at{u(gen) * 0.7, u(gen) * 0.7};
      const auto ql = q(gen);
      report(reg, i, at, ql);
      piles.emplace_back(i, at, ql);
    }
    const auto req = request_at({u(gen) * 0.5, u(gen) * 0.5}, 200 + std::abs(u(gen)));
    std::vector<std::pair<double, std::uint32_t>> expect;
    for (const auto& [i, at, ql] : piles) {
      const double d = oracle::dist(req.origin.x, req.origin.y, at.x, at.y);
      if (d <= req.query_range_m && ql < 4) expect.emplace_back(d, i);
    }
    std::sort(expect.begin(), expect.end());
    if (expect.empty()) {
      EXPECT_THROW(filter_candidates(reg, req), Error);
      continue;
    }
    std::vector<NodeId> ids;
    for (const auto& e : expect) ids.push_back(F(e.second));
    const auto got = filter_candidates(reg, req);
    EXPECT_EQ(got, ids);
    for (const auto& id : got) {
      const auto* s = reg.find(id);
      EXPECT_LE(oracle::dist(req.origin.x, req.origin.y, s->location.x, s->location.y), req.query_range_m);
    }
  }
}

TEST(FilterCandidates, WiderRangeNeverShrinks) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-900, 900);
  Registry reg;
  for (std::uint32_t i = 0; i < 15; ++i) report(reg, i, {u(gen) * 0.7, u(gen) * 0.7}, i % 6);
  for (double r = 100; r <= 2000; r += 100) {
    std::set<NodeId> a, b;
    try {
      for (auto id : filter_candidates(reg, request_at({0, 0}, r))) a.insert(id);
    } catch (const Error&) {
    }
    try {
      for (auto id : filter_candidates(reg, request_at({0, 0}, r + 100))) b.insert(id);
    } catch (const Error&) {
    }
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(Dispatch, OnePerCandidateWithFormulaArrivals) {
  const fogsim::sim::LatencyModel m{1.0, 0.005, 0.0};
  const Point2D fnc{0, 0};
  const std::vector<Point2D> at{{300, 0}, {0, 400}, {-500, 0}, {0, -50}};
  const std::vector<NodeId> cands{F(0), F(1), F(2), F(3)};
  const auto jobs = dispatch(request_at({0, 0}, 1000), cands, SimTime{100}, "charging",
                             [&](NodeId n) { return link_latency(m, fnc, at[n.ordinal], 0.0); });
  ASSERT_EQ(jobs.size(), 4u);
  std::set<NodeId> assignees;
  for (const auto& j : jobs) {
    assignees.insert(j.assignee);
    const auto& p = at[j.assignee.ordinal];
    EXPECT_DOUBLE_EQ(j.arrives_at.ms, 100.0 + 1.0 + 0.005 * std::hypot(p.x, p.y));
    EXPECT_EQ(j.dispatched_at, SimTime{100});
    EXPECT_EQ(j.substream, "charging");
  }
  EXPECT_EQ(assignees.size(), 4u);

  const std::vector<NodeId> one{F(2)};
  EXPECT_EQ(dispatch(request_at({0, 0}, 1000), one, SimTime{0}, "charging", [](NodeId) { return SimTime{1}; })
                .size(),
            1u);
  EXPECT_EQ(code_of([&] {
              dispatch(request_at({0, 0}, 1000), {}, SimTime{0}, "charging", [](NodeId) { return SimTime{1}; });
            }),
            ErrorCode::kNoEligibleNodes);
}

TEST(Aggregate, SingleAndTies) {
  const std::vector<JobResult> one{result(4, 9.0)};
  EXPECT_EQ(aggregate(1, one, SimTime{3}).chosen, F(4));
  const std::vector<JobResult> tie{result(0, 3.0), result(2, 2.0), result(1, 2.0)};
  const auto d = aggregate(1, tie, SimTime{5});
  EXPECT_EQ(d.chosen, F(1));
  EXPECT_EQ(d.decided_at, SimTime{5});
}

TEST(Aggregate, Errors) {
  EXPECT_EQ(code_of([] { aggregate(1, {}, SimTime{0}); }), ErrorCode::kEmptyResultSet);
  const std::vector<JobResult> foreign{result(0, 1.0, 2)};
  EXPECT_EQ(code_of([&] { aggregate(1, foreign, SimTime{0}); }), ErrorCode::kInvalidArgument);
}

TEST(Aggregate, MatchesLinearScanOracle) {
  std::mt19937_64 gen(123);
  std::uniform_int_distribution<int> score(0, 20);  // coarse, so ties are common
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<JobResult> rs;
    std::vector<std::uint32_t> ids{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::shuffle(ids.begin(), ids.end(), gen);
    for (int i = 0; i < 10; ++i) rs.push_back(result(ids[i], score(gen)));
    EXPECT_EQ(aggregate(1, rs, SimTime{0}).chosen, *oracle::argmin(rs));
  }
}

TEST(CoordinatorMachine, ClosesWhenAllAnswer) {
  Coordinator c({Layer::kFnc, 0}, {0, 0}, SimTime{500});
  report(c.registry(), 0, {10, 0}, 0);
  report(c.registry(), 1, {20, 0}, 0);
  const auto cands = c.begin(request_at({0, 0}, 100), SimTime{0});
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_FALSE(c.on_result(result(0, 10.0), SimTime{30}).has_value());
  const auto closed = c.on_result(result(1, 5.0), SimTime{40});
  ASSERT_TRUE(closed.has_value());
  EXPECT_FALSE(closed->timed_out);
  EXPECT_EQ(closed->decision->chosen, F(1));
  EXPECT_EQ(closed->decision->decided_at, SimTime{40});
  EXPECT_EQ(closed->fanout, 2u);
  EXPECT_EQ(closed->results, 2u);
  EXPECT_FALSE(c.expire(1, SimTime{500}).has_value());
  EXPECT_EQ(c.open_requests(), 0u);
}

TEST(CoordinatorMachine, TimeoutDecidesOnPartialResults) {
  Coordinator c({Layer::kFnc, 0}, {0, 0}, SimTime{500});
  report(c.registry(), 0, {10, 0}, 0);
  report(c.registry(), 1, {20, 0}, 0);
  c.begin(request_at({0, 0}, 100), SimTime{0});
  c.on_result(result(1, 5.0), SimTime{40});
  const auto closed = c.expire(1, SimTime{500});
  ASSERT_TRUE(closed.has_value());
  EXPECT_TRUE(closed->timed_out);
  EXPECT_EQ(closed->decision->chosen, F(1));
  EXPECT_EQ(closed->decision->decided_at, SimTime{500});
  EXPECT_FALSE(c.on_result(result(0, 1.0), SimTime{600}).has_value());
  EXPECT_EQ(c.late_results(), 1u);
}

TEST(CoordinatorMachine, SilenceGivesEmptyDecision) {
  Coordinator c({Layer::kFnc, 0}, {0, 0}, SimTime{500});
  report(c.registry(), 0, {10, 0}, 0);
  c.begin(request_at({0, 0}, 100), SimTime{0});
  const auto closed = c.expire(1, SimTime{500});
  ASSERT_TRUE(closed.has_value());
  EXPECT_FALSE(closed->decision.has_value());
  EXPECT_EQ(closed->results, 0u);
}

TEST(CoordinatorMachine, NoEligibleLeavesNothingOpen) {
  Coordinator c({Layer::kFnc, 0}, {0, 0}, SimTime{500});
  report(c.registry(), 0, {10, 0}, 4);
  EXPECT_THROW(c.begin(request_at({0, 0}, 100), SimTime{0}), Error);
  EXPECT_EQ(c.open_requests(), 0u);
}

TEST(Deployment, EveryFogNodeGetsAnInstance) {
  const auto nodes = fogsim::topology::place_nodes({20, 10, 2}, {}, 4);
  const ApplicationImage image{"charging", fogsim::fognode::make_chain({"score"}), Layer::kFog};
  const auto placed = deploy_application(image, nodes);
  EXPECT_EQ(placed.size(), 10u);
  for (const auto& [id, inst] : placed) {
    EXPECT_EQ(id.layer, Layer::kFog);
    EXPECT_EQ(inst.instance_id, "charging@" + fogsim::topology::to_string(id));
    for (const auto& [op, where] : inst.flow.placement) EXPECT_EQ(where, id);
  }
  EXPECT_EQ(deploy_application(image, nodes), placed);
}

TEST(Deployment, NoMatchingNodes) {
  const auto nodes = fogsim::topology::place_nodes({20, 0, 2}, {}, 4);
  const ApplicationImage image{"charging", fogsim::fognode::make_chain({"score"}), Layer::kFog};
  EXPECT_TRUE(deploy_application(image, nodes).empty());
}

TEST(Deployment, CyclicTemplateRejected) {
  auto g = fogsim::fognode::make_chain({"a", "b"});
  g.edges.emplace_back("b", "a");
  const ApplicationImage image{"bad", g, Layer::kFog};
  EXPECT_THROW(deploy_application(image, fogsim::topology::place_nodes({0, 2, 0}, {}, 1)), Error);
}
