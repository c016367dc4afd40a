#pragma once

// Attacker behaviors. An attacker node runs the normal stack but holds no
// network key, and overrides how it handles packets it forwards or overhears.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qmanet/sim_kernel.hpp"
#include "qmanet/types.hpp"
#include "qmanet/wire.hpp"

namespace qmanet::attacks {

enum class AttackKind : std::uint8_t {
  blackhole,
  greyhole,
  modifier,
  replayer,
  fabricator,
  eavesdropper,
  dos_flooder,
};

std::string to_string(AttackKind kind);
std::optional<AttackKind> parse_kind(std::string_view name);

struct AttackBehavior {
  NodeId node;
  AttackKind kind = AttackKind::blackhole;
  double drop_probability = 1.0;               // greyhole
  SimTime replay_delay = SimTime::millis(500);  // replayer
  double rate = 1.0;                            // fabricator / dos_flooder, packets per second
  NodeId target;                                // fabricator: impersonated id, dos_flooder: victim
  SimTime active_from{};
  SimTime active_to = SimTime::max();

  bool active_at(SimTime t) const { return t >= active_from && t <= active_to; }
  /// Eavesdroppers are silent; they send no HELLOs or anything else.
  bool transmits() const { return kind != AttackKind::eavesdropper; }
  bool operator==(const AttackBehavior&) const = default;
};

enum class AttackRole : std::uint8_t { forwarder, receiver };

struct AttackAction {
  enum class Kind : std::uint8_t { pass, drop, modified, replay, observed };
  Kind kind = Kind::pass;
  std::size_t modified_offset = 0;
  SimTime replay_after{};
  std::size_t recovered_bytes = 0;  // eavesdropper only
};

/// True for DATA and ACK, the packets that carry sealed payloads.
bool is_data_plane(const wire::Packet& p);

/// Decides what the attacker does with `packet` (which may be modified in
/// place):
///  - blackhole: drop everything it would forward
///  - greyhole: drop with probability p, one draw per forwarded packet
///  - modifier: flip one payload byte of a data-plane packet, then forward
///  - replayer: forward, and re-send a copy of data-plane packets later
///  - eavesdropper: record what it overhears; recovers the payload only when
///    it was sent in the clear
/// Fabricators and flooders generate their own traffic and pass here.
AttackAction apply_behavior(const AttackBehavior& b, wire::Packet& packet, AttackRole role, Rng& rng);

/// Payload bytes readable by an outsider without the key.
std::size_t recoverable_bytes(const wire::Packet& p);

}  // namespace qmanet::attacks
