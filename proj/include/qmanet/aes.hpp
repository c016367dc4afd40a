#pragma once

// AES-128 block cipher plus the packet keying built on it: counter-mode
// confidentiality and a truncated CMAC authentication tag.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "qmanet/types.hpp"

namespace qmanet::aes {

/// 16-byte state. Byte i sits at row i % 4, column i / 4 (column-major).
using Block = std::array<std::uint8_t, 16>;
using Key128 = std::array<std::uint8_t, 16>;
using Tag = std::array<std::uint8_t, 8>;

inline constexpr int kRounds = 10;  // 128-bit key
inline constexpr int kRoundKeys = kRounds + 1;

/// Counts rounds as they execute (main rounds + final round).
struct RoundCounter {
  int main_rounds = 0;
  int final_rounds = 0;
  int total() const { return main_rounds + final_rounds; }
};

class KeySchedule {
 public:
  const Block& round_key(int round) const { return keys_.at(static_cast<std::size_t>(round)); }
  std::size_t size() const { return keys_.size(); }

 private:
  friend KeySchedule expand_key(std::span<const std::uint8_t> master);
  std::array<Block, kRoundKeys> keys_{};
};

/// Standard AES-128 key expansion. Throws std::invalid_argument unless the
/// key is exactly 16 bytes.
KeySchedule expand_key(std::span<const std::uint8_t> master);

/// AddRoundKey, nine Round()s of ByteSub/ShiftRow/MixColumn/AddRoundKey,
/// then FinalRound() without MixColumn.
Block encrypt_block(const Block& in, const KeySchedule& ks, RoundCounter* counter = nullptr);

/// Inverse cipher. The final round is undone first; each of the nine inverse
/// rounds then runs AddRoundKey, InvMixColumn, InvShiftRow, InvByteSub, and a
/// last AddRoundKey with round key 0 finishes.
Block decrypt_block(const Block& in, const KeySchedule& ks, RoundCounter* counter = nullptr);

/// AES-CMAC (OMAC1) over an arbitrary message.
Block cmac(const KeySchedule& ks, std::span<const std::uint8_t> message);

Key128 parse_key_hex(std::string_view hex);
std::string to_hex(std::span<const std::uint8_t> bytes);

// ---------------------------------------------------------------------------
// Packet sealing
// ---------------------------------------------------------------------------

/// origin (4 bytes, big-endian) || packet sequence (4 bytes) || 8 zero bytes.
/// The low 8 bytes carry the counter during keystream generation.
struct Nonce {
  NodeId origin;
  std::uint32_t seq = 0;

  Block counter_block(std::uint64_t counter) const;
  auto operator<=>(const Nonce&) const = default;
};

/// Encryption and MAC schedules derived from one 128-bit network key:
/// enc = E_K(0^15 || 01), mac = E_K(0^15 || 02).
class PacketKey {
 public:
  explicit PacketKey(const Key128& master);

  const KeySchedule& enc() const { return enc_; }
  const KeySchedule& mac() const { return mac_; }

 private:
  KeySchedule enc_;
  KeySchedule mac_;
};

struct Sealed {
  Bytes ciphertext;
  Tag tag{};
};

struct AuthenticationFailure {};

/// Counter-mode encryption (skipped when `encrypt` is false) followed by
/// tag = first 8 bytes of CMAC(header || ciphertext).
Sealed seal(std::span<const std::uint8_t> payload, const PacketKey& key, const Nonce& nonce,
            std::span<const std::uint8_t> header, bool encrypt = true);

/// Verifies the tag before releasing anything. Returns std::nullopt on
/// authentication failure.
std::optional<Bytes> open(std::span<const std::uint8_t> ciphertext, const Tag& tag, const PacketKey& key,
                          const Nonce& nonce, std::span<const std::uint8_t> header, bool encrypted = true);

Tag authenticate(const PacketKey& key, std::span<const std::uint8_t> header, std::span<const std::uint8_t> body);

class NonceReuse : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Per-node sealing front end that refuses to seal twice under one nonce.
class Sealer {
 public:
  explicit Sealer(const PacketKey& key) : key_(&key) {}

  Sealed seal(std::span<const std::uint8_t> payload, const Nonce& nonce, std::span<const std::uint8_t> header,
              bool encrypt = true);

 private:
  const PacketKey* key_;
  std::set<Nonce> used_;
};

}  // namespace qmanet::aes
