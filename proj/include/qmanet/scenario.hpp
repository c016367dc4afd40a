#pragma once

// Scenario files: line-oriented `[section]` headers and `key = value` pairs.
// `#` starts a comment. [flow] and [attack] may repeat; every other section
// appears at most once. Unknown keys, duplicate keys and out-of-range values
// are errors. See scenarios/example.scn for an annotated file.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmanet/aes.hpp"
#include "qmanet/attacks.hpp"
#include "qmanet/link_queue.hpp"
#include "qmanet/newreno.hpp"
#include "qmanet/olsr.hpp"
#include "qmanet/sim_kernel.hpp"

namespace qmanet {

enum class TrafficKind : std::uint8_t { bulk, streaming };

struct FlowSpec {
  NodeId src;
  NodeId dst;
  SimTime start = SimTime::seconds(15);
  TrafficKind kind = TrafficKind::bulk;
  std::uint64_t bytes_total = 120'000;  // bulk; for streaming 0 means unbounded
  double rate = 16'000.0;               // bytes/s, streaming only
  SimTime stop = SimTime::max();        // streaming generation stops here

  bool operator==(const FlowSpec&) const = default;
};

enum class PlacementMode : std::uint8_t { random, explicit_positions };

struct ScenarioConfig {
  std::uint32_t nodes = 0;
  std::uint64_t seed = 1;
  SimTime duration = SimTime::seconds(60);

  LinkModel radio;
  MobilityParams mobility;
  SimTime mobility_tick = SimTime::millis(100);

  // explicit: every node needs a position; random: listed nodes are pinned,
  // the rest are drawn uniformly over the arena.
  PlacementMode placement = PlacementMode::random;
  std::map<NodeId, std::pair<double, double>> positions;

  olsr::OlsrConfig olsr;

  aes::Key128 key = {0x00, 0x01, 0x02, 0x03, 0x04, 0x05, 0x06, 0x07,
                     0x08, 0x09, 0x0a, 0x0b, 0x0c, 0x0d, 0x0e, 0x0f};
  bool encryption = true;
  bool alternate_relay = true;
  bool control_auth = true;  // verify control tags and blacklist failures
  SimTime reassembly_hold = SimTime::seconds(2);

  link::QueueConfig queue;
  transport::NewRenoConfig transport;

  std::uint32_t admission_capacity = 4;  // concurrent flows per source
  double reservation = 0.1;              // per-flow share of link_rate

  std::vector<FlowSpec> flows;
  std::vector<attacks::AttackBehavior> attacks;

  bool operator==(const ScenarioConfig&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& msg)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::string& path);

/// Canonical text for a config; parse_scenario(serialize_scenario(c)) == c.
std::string serialize_scenario(const ScenarioConfig& config);

/// Semantic checks shared by the parser and programmatic construction.
void validate(const ScenarioConfig& config);

}  // namespace qmanet
