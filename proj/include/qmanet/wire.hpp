#pragma once

// Byte layouts for packets and OLSR control bodies. All integers are
// fixed-width big-endian; sets are prefixed with a 16-bit element count.
// See docs/wire-format.md.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmanet/aes.hpp"
#include "qmanet/types.hpp"

namespace qmanet::wire {

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v >> 8));
    u8(static_cast<std::uint8_t>(v));
  }
  void u32(std::uint32_t v) {
    u16(static_cast<std::uint16_t>(v >> 16));
    u16(static_cast<std::uint16_t>(v));
  }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  void id(NodeId n) { u32(n.value); }
  void ids(std::span<const NodeId> list);

  Bytes take() { return std::move(out_); }
  const Bytes& view() const { return out_; }

 private:
  Bytes out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint16_t u16() {
    const auto hi = u8();
    return static_cast<std::uint16_t>(hi << 8 | u8());
  }
  std::uint32_t u32() {
    const std::uint32_t hi = u16();
    return hi << 16 | u16();
  }
  NodeId id() { return NodeId{u32()}; }
  std::vector<NodeId> ids();
  Bytes bytes(std::size_t n) {
    need(n);
    Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_), in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw WireError("truncated input");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

enum class PacketKind : std::uint8_t { hello = 1, tc = 2, data = 3, ack = 4 };

std::string to_string(PacketKind kind);

namespace flags {
inline constexpr std::uint8_t encrypted = 0x01;
inline constexpr std::uint8_t alternate_copy = 0x02;
}  // namespace flags

/// The single unit carried by the radio.
///
/// Header fields covered by the authentication tag: kind, encrypted flag,
/// origin, destination, seq, flow, number. Fields rewritten in transit
/// (ttl, transmitter, receiver) and the source route are not covered.
struct Packet {
  PacketKind kind = PacketKind::hello;
  std::uint8_t flags = 0;
  std::uint8_t ttl = 1;
  NodeId transmitter;
  NodeId receiver = NodeId::broadcast();
  NodeId origin;
  NodeId destination = NodeId::broadcast();
  std::uint32_t seq = 0;     // per-origin packet sequence
  std::uint32_t flow = 0;    // data/ack only
  std::uint32_t number = 0;  // data: segment index, ack: next expected segment
  std::vector<NodeId> source_route;
  Bytes payload;
  aes::Tag tag{};

  bool encrypted() const { return (flags & flags::encrypted) != 0; }
  bool operator==(const Packet&) const = default;
};

/// Bytes fed to the MAC ahead of the payload.
Bytes authenticated_header(const Packet& p);

Bytes encode(const Packet& p);
Packet decode(std::span<const std::uint8_t> bytes);
std::size_t encoded_size(const Packet& p);

// ---------------------------------------------------------------------------
// OLSR control bodies
// ---------------------------------------------------------------------------

enum class LinkStatus : std::uint8_t { heard = 1, symmetric = 2 };

struct HelloNeighbor {
  NodeId id;
  LinkStatus status = LinkStatus::heard;
  bool operator==(const HelloNeighbor&) const = default;
};

struct HelloMessage {
  NodeId origin;
  std::vector<HelloNeighbor> neighbors;
  std::vector<NodeId> mpr_selection;
  aes::Tag auth_tag{};
  bool operator==(const HelloMessage&) const = default;
};

struct TcMessage {
  NodeId origin;
  std::vector<NodeId> advertised;
  std::uint32_t ansn = 0;
  std::uint8_t ttl = 255;
  aes::Tag auth_tag{};
  bool operator==(const TcMessage&) const = default;
};

/// Body layout: u16 count, count x (u32 id, u8 status), u16 count, count x u32 id.
Bytes encode_hello_body(const HelloMessage& m);
/// Origin and tag are taken from the enclosing packet.
HelloMessage decode_hello_body(std::span<const std::uint8_t> body, NodeId origin);

/// Body layout: u32 ansn, u16 count, count x u32 id.
Bytes encode_tc_body(const TcMessage& m);
TcMessage decode_tc_body(std::span<const std::uint8_t> body, NodeId origin, std::uint8_t ttl);

}  // namespace qmanet::wire
