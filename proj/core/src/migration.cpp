#include "fogsim/fognode/migration.hpp"

#include <algorithm>
#include <set>

#include "fogsim/error.hpp"

namespace fogsim::fognode {

std::string_view to_string(MigrationStatus status) {
  switch (status) {
    case MigrationStatus::kNotNeeded: return "not_needed";
    case MigrationStatus::kMigrated: return "migrated";
    case MigrationStatus::kFailed: return "failed";
  }
  return "unknown";
}

void MigrationPolicy::validate(topology::NodeId source) const {
  if (!(t_upper_ms > 0.0)) throw Error(ErrorCode::kInvalidValue, "t_upper must be > 0");
  std::set<topology::NodeId> seen;
  for (const auto& c : candidates) {
    if (c == source) throw Error(ErrorCode::kInvalidValue, "candidate group contains the source");
    if (!seen.insert(c).second) {
      throw Error(ErrorCode::kInvalidValue, "duplicate candidate " + topology::to_string(c));
    }
  }
}

double LatencyEstimator::observe(double sample_ms) {
  value_ = value_ ? alpha_ * sample_ms + (1.0 - alpha_) * *value_ : sample_ms;
  return *value_;
}

MigrationSession::MigrationSession(std::string flow_id, topology::NodeId source,
                                   MigrationPolicy policy)
    : flow_id_(std::move(flow_id)), source_(source), policy_(std::move(policy)) {
  policy_.validate(source_);
  remaining_.assign(policy_.candidates.begin(), policy_.candidates.end());
  max_attempts_ = policy_.max_attempts == 0 ? remaining_.size() : policy_.max_attempts;
}

MigrationSession::Action MigrationSession::begin(double observed_latency_ms) {
  if (status_ || attempts_ != 0) throw Error(ErrorCode::kInvalidArgument, "session already started");
  trigger_latency_ = observed_latency_ms;
  if (observed_latency_ms < policy_.t_upper_ms) {
    status_ = MigrationStatus::kNotNeeded;
    return {};
  }
  if (remaining_.empty()) return fail();
  return next_candidate();
}

MigrationSession::Action MigrationSession::next_candidate() {
  current_ = remaining_.front();
  remaining_.pop_front();
  ++attempts_;
  awaiting_reply_ = true;
  return {Step::kSendStart, current_};
}

MigrationSession::Action MigrationSession::fail() {
  status_ = MigrationStatus::kFailed;
  warning_ = std::string(kCannotMigrate) + ": flow " + flow_id_ + " on " + topology::to_string(source_);
  current_.reset();
  return {};
}

MigrationSession::Action MigrationSession::on_reply(MigrationReply reply) {
  if (status_ || !current_) throw Error(ErrorCode::kInvalidArgument, "no migration attempt in progress");
  if (reply == MigrationReply::kAccept && awaiting_reply_) {
    awaiting_reply_ = false;
    return {Step::kSendState, current_};
  }
  awaiting_reply_ = false;
  if (remaining_.empty() || attempts_ >= max_attempts_) return fail();
  return next_candidate();
}

void MigrationSession::confirm() {
  if (status_ || !current_ || awaiting_reply_) {
    throw Error(ErrorCode::kInvalidArgument, "confirm without an accepted candidate");
  }
  status_ = MigrationStatus::kMigrated;
}

MigrationOutcome migration_source(
    FlowHost& host, const std::string& flow_id, double observed_latency_ms,
    const MigrationPolicy& policy,
    const std::function<MigrationReply(topology::NodeId)>& ask,
    const std::function<void(topology::NodeId, const FlowState&)>& send_state) {
  if (!host.resident(flow_id)) {
    throw Error(ErrorCode::kFlowNotResident, flow_id + " on " + topology::to_string(host.node()));
  }
  MigrationSession session(flow_id, host.node(), policy);
  MigrationOutcome out;
  auto action = session.begin(observed_latency_ms);
  while (action.step == MigrationSession::Step::kSendStart) {
    const auto reply = ask(*action.target);
    action = session.on_reply(reply);
    if (action.step == MigrationSession::Step::kSendState) {
      FlowState state = host.on_migration_start(flow_id);
      send_state(*action.target, state);
      out.forwarded = host.release(flow_id);
      session.confirm();
      out.target = action.target;
      break;
    }
  }
  out.status = *session.status();
  out.attempts = session.attempts();
  out.remaining.assign(session.remaining().begin(), session.remaining().end());
  out.warning = session.warning();
  return out;
}

}  // namespace fogsim::fognode
