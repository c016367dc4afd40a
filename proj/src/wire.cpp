#include "qmanet/wire.hpp"

#include <limits>

namespace qmanet::wire {

void Writer::ids(std::span<const NodeId> list) {
  if (list.size() > std::numeric_limits<std::uint16_t>::max()) throw WireError("set too large to encode");
  u16(static_cast<std::uint16_t>(list.size()));
  for (auto n : list) id(n);
}

std::vector<NodeId> Reader::ids() {
  const std::size_t n = u16();
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(id());
  return out;
}

std::string to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::hello: return "HELLO";
    case PacketKind::tc: return "TC";
    case PacketKind::data: return "DATA";
    case PacketKind::ack: return "ACK";
  }
  return "?";
}

Bytes authenticated_header(const Packet& p) {
  Writer w;
  w.u8(static_cast<std::uint8_t>(p.kind));
  w.u8(p.flags & flags::encrypted);
  w.id(p.origin);
  w.id(p.destination);
  w.u32(p.seq);
  w.u32(p.flow);
  w.u32(p.number);
  return w.take();
}

// kind u8 | flags u8 | ttl u8 | transmitter | receiver | origin | destination |
// seq u32 | flow u32 | number u32 | route (u16 count + ids) |
// payload (u16 length + bytes) | tag 8 bytes
Bytes encode(const Packet& p) {
  if (p.payload.size() > std::numeric_limits<std::uint16_t>::max()) throw WireError("payload too large");
  Writer w;
  w.u8(static_cast<std::uint8_t>(p.kind));
  w.u8(p.flags);
  w.u8(p.ttl);
  w.id(p.transmitter);
  w.id(p.receiver);
  w.id(p.origin);
  w.id(p.destination);
  w.u32(p.seq);
  w.u32(p.flow);
  w.u32(p.number);
  w.ids(p.source_route);
  w.u16(static_cast<std::uint16_t>(p.payload.size()));
  w.bytes(p.payload);
  w.bytes(p.tag);
  return w.take();
}

Packet decode(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  Packet p;
  const auto kind = r.u8();
  if (kind < 1 || kind > 4) throw WireError("unknown packet kind " + std::to_string(kind));
  p.kind = static_cast<PacketKind>(kind);
  p.flags = r.u8();
  p.ttl = r.u8();
  p.transmitter = r.id();
  p.receiver = r.id();
  p.origin = r.id();
  p.destination = r.id();
  p.seq = r.u32();
  p.flow = r.u32();
  p.number = r.u32();
  p.source_route = r.ids();
  p.payload = r.bytes(r.u16());
  const Bytes tag = r.bytes(p.tag.size());
  std::copy(tag.begin(), tag.end(), p.tag.begin());
  if (!r.done()) throw WireError("trailing bytes after packet");
  return p;
}

std::size_t encoded_size(const Packet& p) {
  constexpr std::size_t fixed = 3 + 4 * 4 + 3 * 4 + 2 + 2 + 8;
  return fixed + 4 * p.source_route.size() + p.payload.size();
}

Bytes encode_hello_body(const HelloMessage& m) {
  Writer w;
  w.u16(static_cast<std::uint16_t>(m.neighbors.size()));
  for (const auto& n : m.neighbors) {
    w.id(n.id);
    w.u8(static_cast<std::uint8_t>(n.status));
  }
  w.ids(m.mpr_selection);
  return w.take();
}

HelloMessage decode_hello_body(std::span<const std::uint8_t> body, NodeId origin) {
  Reader r(body);
  HelloMessage m;
  m.origin = origin;
  const std::size_t n = r.u16();
  for (std::size_t i = 0; i < n; ++i) {
    HelloNeighbor nb;
    nb.id = r.id();
    const auto status = r.u8();
    if (status != 1 && status != 2) throw WireError("bad link status");
    nb.status = static_cast<LinkStatus>(status);
    m.neighbors.push_back(nb);
  }
  m.mpr_selection = r.ids();
  if (!r.done()) throw WireError("trailing bytes after HELLO body");
  return m;
}

Bytes encode_tc_body(const TcMessage& m) {
  Writer w;
  w.u32(m.ansn);
  w.ids(m.advertised);
  return w.take();
}

TcMessage decode_tc_body(std::span<const std::uint8_t> body, NodeId origin, std::uint8_t ttl) {
  Reader r(body);
  TcMessage m;
  m.origin = origin;
  m.ttl = ttl;
  m.ansn = r.u32();
  m.advertised = r.ids();
  if (!r.done()) throw WireError("trailing bytes after TC body");
  return m;
}

}  // namespace qmanet::wire
