#pragma once

// Whole-network simulation: every node runs OLSR, the keying overlay, a
// two-class outbound queue and New Reno flows over the unit-disk radio.

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "qmanet/metrics.hpp"
#include "qmanet/olsr.hpp"
#include "qmanet/scenario.hpp"
#include "qmanet/sim_kernel.hpp"

namespace qmanet {

/// An internal consistency check failed during a run (CLI exit code 2).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Processes every event up to `t` (capped at the configured duration).
  void run_until(SimTime t);
  void run() { run_until(config().duration); }

  /// Closes the books at the current time and returns the trace. The
  /// simulation cannot be advanced afterwards.
  metrics::Trace finish();

  SimTime now() const;
  const ScenarioConfig& config() const;
  std::size_t node_count() const;
  const olsr::NodeState& node_state(NodeId node) const;
  const std::vector<NodePosition>& positions() const;
  bool is_attacker(NodeId node) const;

  /// Called after every processed event.
  using Observer = std::function<void(const Simulation&)>;
  void set_observer(Observer observer);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Runs the scenario to its duration and finalizes the report.
metrics::MetricsReport run_scenario(const ScenarioConfig& config);

}  // namespace qmanet
