#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/fognode/flow.hpp"
#include "fogsim/topology/node.hpp"

namespace fogsim::fognode {

struct MigrationPolicy {
  double t_upper_ms = 8.0;
  std::vector<topology::NodeId> candidates;  // V, best first
  std::size_t max_attempts = 0;              // 0 means |V|

  // t_upper > 0, no duplicate candidates, source not among them.
  void validate(topology::NodeId source) const;
};

enum class MigrationStatus : std::uint8_t { kNotNeeded, kMigrated, kFailed };
enum class MigrationReply : std::uint8_t { kAccept, kReject };

std::string_view to_string(MigrationStatus status);

inline constexpr std::string_view kCannotMigrate = "can not migrate";

// Exponentially weighted moving average of observed latency samples.
class LatencyEstimator {
 public:
  explicit LatencyEstimator(double alpha = 0.5) : alpha_(alpha) {}

  double observe(double sample_ms);
  std::optional<double> value() const { return value_; }
  void reset() { value_.reset(); }

 private:
  double alpha_;
  std::optional<double> value_;
};

// Source-side migration procedure as an asynchronous state machine. The caller
// owns messaging: after each transition it performs the returned action and
// feeds the peer's reply back in.
//
//   begin(T):  T < t_upper            -> kDone (NotNeeded)
//              otherwise pop best Vb  -> kSendStart(Vb)
//   on_reply:  ACCEPT                 -> kSendState(Vb)
//              REJECT, V empty        -> kDone (Failed, "can not migrate")
//              REJECT, V non-empty    -> pop next, kSendStart(Vb)
//   confirm(): state handed over      -> kDone (Migrated)
class MigrationSession {
 public:
  enum class Step : std::uint8_t { kSendStart, kSendState, kDone };
  struct Action {
    Step step = Step::kDone;
    std::optional<topology::NodeId> target;
  };

  MigrationSession(std::string flow_id, topology::NodeId source, MigrationPolicy policy);

  Action begin(double observed_latency_ms);
  Action on_reply(MigrationReply reply);
  // The target refused the object state after accepting (CapacityExceeded);
  // handled like a reject of that candidate.
  Action on_late_reject() { return on_reply(MigrationReply::kReject); }
  // Object state sent and local resources released.
  void confirm();

  const std::string& flow_id() const { return flow_id_; }
  topology::NodeId source() const { return source_; }
  const MigrationPolicy& policy() const { return policy_; }
  std::optional<MigrationStatus> status() const { return status_; }
  std::optional<topology::NodeId> current_target() const { return current_; }
  std::size_t attempts() const { return attempts_; }
  const std::deque<topology::NodeId>& remaining() const { return remaining_; }
  const std::optional<std::string>& warning() const { return warning_; }
  double trigger_latency_ms() const { return trigger_latency_; }

 private:
  Action next_candidate();
  Action fail();

  std::string flow_id_;
  topology::NodeId source_;
  MigrationPolicy policy_;
  std::deque<topology::NodeId> remaining_;
  std::optional<topology::NodeId> current_;
  std::optional<MigrationStatus> status_;
  std::optional<std::string> warning_;
  std::size_t attempts_ = 0;
  std::size_t max_attempts_ = 0;
  double trigger_latency_ = 0.0;
  bool awaiting_reply_ = false;
};

struct MigrationOutcome {
  MigrationStatus status = MigrationStatus::kNotNeeded;
  std::optional<topology::NodeId> target;
  std::size_t attempts = 0;
  std::vector<topology::NodeId> remaining;   // V after the procedure
  std::optional<std::string> warning;
  std::vector<BufferedEvent> forwarded;      // buffered events handed to the target
};

// Synchronous form of the procedure for a flow resident on `host`. `ask` sends
// Start Migration to a candidate and returns its response; `send_state`
// delivers the Object State message. On success the flow is released locally.
MigrationOutcome migration_source(
    FlowHost& host, const std::string& flow_id, double observed_latency_ms,
    const MigrationPolicy& policy,
    const std::function<MigrationReply(topology::NodeId)>& ask,
    const std::function<void(topology::NodeId, const FlowState&)>& send_state);

}  // namespace fogsim::fognode
