#include "qmanet/attacks.hpp"

#include <array>
#include <utility>

namespace qmanet::attacks {

namespace {

constexpr std::array<std::pair<AttackKind, std::string_view>, 7> kNames = {{
    {AttackKind::blackhole, "blackhole"},
    {AttackKind::greyhole, "greyhole"},
    {AttackKind::modifier, "modifier"},
    {AttackKind::replayer, "replayer"},
    {AttackKind::fabricator, "fabricator"},
    {AttackKind::eavesdropper, "eavesdropper"},
    {AttackKind::dos_flooder, "dos_flooder"},
}};

}  // namespace

std::string to_string(AttackKind kind) {
  for (const auto& [k, name] : kNames)
    if (k == kind) return std::string(name);
  return "?";
}

std::optional<AttackKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

bool is_data_plane(const wire::Packet& p) {
  return p.kind == wire::PacketKind::data || p.kind == wire::PacketKind::ack;
}

std::size_t recoverable_bytes(const wire::Packet& p) {
  if (!is_data_plane(p) || p.encrypted()) return 0;
  return p.payload.size();
}

AttackAction apply_behavior(const AttackBehavior& b, wire::Packet& packet, AttackRole role, Rng& rng) {
  AttackAction action;
  if (b.kind == AttackKind::eavesdropper) {
    action.kind = AttackAction::Kind::observed;
    action.recovered_bytes = recoverable_bytes(packet);
    return action;
  }
  if (role != AttackRole::forwarder) return action;

  switch (b.kind) {
    case AttackKind::blackhole:
      action.kind = AttackAction::Kind::drop;
      break;
    case AttackKind::greyhole:
      if (rng.bernoulli(b.drop_probability)) action.kind = AttackAction::Kind::drop;
      break;
    case AttackKind::modifier:
      if (is_data_plane(packet) && !packet.payload.empty()) {
        action.kind = AttackAction::Kind::modified;
        action.modified_offset = static_cast<std::size_t>(rng.below(packet.payload.size()));
        packet.payload[action.modified_offset] ^= 0xff;
      }
      break;
    case AttackKind::replayer:
      if (is_data_plane(packet)) {
        action.kind = AttackAction::Kind::replay;
        action.replay_after = b.replay_delay;
      }
      break;
    case AttackKind::fabricator:
    case AttackKind::dos_flooder:
    case AttackKind::eavesdropper:
      break;
  }
  return action;
}

}  // namespace qmanet::attacks
