#include "qmanet/aes.hpp"

#include <algorithm>
#include <string>

namespace qmanet::aes {

namespace {

constexpr std::array<std::uint8_t, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76, 0xca, 0x82, 0xc9,
    0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0, 0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f,
    0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15, 0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07,
    0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75, 0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3,
    0x29, 0xe3, 0x2f, 0x84, 0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58,
    0xcf, 0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8, 0x51, 0xa3,
    0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2, 0xcd, 0x0c, 0x13, 0xec, 0x5f,
    0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73, 0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88,
    0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb, 0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac,
    0x62, 0x91, 0x95, 0xe4, 0x79, 0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a,
    0xae, 0x08, 0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a, 0x70,
    0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e, 0xe1, 0xf8, 0x98, 0x11,
    0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf, 0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42,
    0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16};

constexpr std::array<std::uint8_t, 256> make_inverse_sbox() {
  std::array<std::uint8_t, 256> inv{};
  for (std::size_t i = 0; i < 256; ++i) inv[kSbox[i]] = static_cast<std::uint8_t>(i);
  return inv;
}

constexpr std::array<std::uint8_t, 256> kInvSbox = make_inverse_sbox();

constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10, 0x20, 0x40, 0x80, 0x1b, 0x36};

constexpr std::uint8_t xtime(std::uint8_t b) {
  return static_cast<std::uint8_t>((b << 1) ^ ((b & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gmul(std::uint8_t a, std::uint8_t b) {
  std::uint8_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a = xtime(a);
    b >>= 1;
  }
  return p;
}

// state[r + 4c]
void byte_sub(Block& s) {
  for (auto& b : s) b = kSbox[b];
}

void inv_byte_sub(Block& s) {
  for (auto& b : s) b = kInvSbox[b];
}

void shift_row(Block& s) {
  Block t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s[r + 4 * c] = t[r + 4 * ((c + r) % 4)];
}

void inv_shift_row(Block& s) {
  Block t = s;
  for (int r = 1; r < 4; ++r)
    for (int c = 0; c < 4; ++c) s[r + 4 * ((c + r) % 4)] = t[r + 4 * c];
}

void mix_column(Block& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = static_cast<std::uint8_t>(xtime(a0) ^ xtime(a1) ^ a1 ^ a2 ^ a3);
    col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ xtime(a2) ^ a2 ^ a3);
    col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ xtime(a3) ^ a3);
    col[3] = static_cast<std::uint8_t>(xtime(a0) ^ a0 ^ a1 ^ a2 ^ xtime(a3));
  }
}

void inv_mix_column(Block& s) {
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* col = &s[4 * c];
    const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
    col[0] = gmul(a0, 0x0e) ^ gmul(a1, 0x0b) ^ gmul(a2, 0x0d) ^ gmul(a3, 0x09);
    col[1] = gmul(a0, 0x09) ^ gmul(a1, 0x0e) ^ gmul(a2, 0x0b) ^ gmul(a3, 0x0d);
    col[2] = gmul(a0, 0x0d) ^ gmul(a1, 0x09) ^ gmul(a2, 0x0e) ^ gmul(a3, 0x0b);
    col[3] = gmul(a0, 0x0b) ^ gmul(a1, 0x0d) ^ gmul(a2, 0x09) ^ gmul(a3, 0x0e);
  }
}

void add_round_key(Block& s, const Block& k) {
  for (std::size_t i = 0; i < 16; ++i) s[i] ^= k[i];
}

void round(Block& s, const Block& k) {
  byte_sub(s);
  shift_row(s);
  mix_column(s);
  add_round_key(s, k);
}

void final_round(Block& s, const Block& k) {
  byte_sub(s);
  shift_row(s);
  add_round_key(s, k);
}

void inv_round(Block& s, const Block& k) {
  add_round_key(s, k);
  inv_mix_column(s);
  inv_shift_row(s);
  inv_byte_sub(s);
}

// Undoes FinalRound: its AddRoundKey first, then the shift and substitution.
void inv_final_round(Block& s, const Block& k) {
  add_round_key(s, k);
  inv_shift_row(s);
  inv_byte_sub(s);
}

Block left_shift_one(const Block& in) {
  Block out{};
  for (std::size_t i = 0; i < 16; ++i) {
    out[i] = static_cast<std::uint8_t>(in[i] << 1);
    if (i + 1 < 16) out[i] |= static_cast<std::uint8_t>(in[i + 1] >> 7);
  }
  return out;
}

Block cmac_subkey(const Block& l) {
  Block k = left_shift_one(l);
  if (l[0] & 0x80) k[15] ^= 0x87;
  return k;
}

Block derive_block(const KeySchedule& ks, std::uint8_t label) {
  Block in{};
  in[15] = label;
  return encrypt_block(in, ks);
}

}  // namespace

KeySchedule expand_key(std::span<const std::uint8_t> master) {
  if (master.size() != 16) throw std::invalid_argument("AES-128 key must be 16 bytes, got " + std::to_string(master.size()));

  std::array<std::array<std::uint8_t, 4>, 4 * kRoundKeys> w{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) w[i][j] = master[4 * i + j];

  for (std::size_t i = 4; i < w.size(); ++i) {
    auto t = w[i - 1];
    if (i % 4 == 0) {
      std::rotate(t.begin(), t.begin() + 1, t.end());
      for (auto& b : t) b = kSbox[b];
      t[0] ^= kRcon[i / 4 - 1];
    }
    for (std::size_t j = 0; j < 4; ++j) w[i][j] = w[i - 4][j] ^ t[j];
  }

  KeySchedule ks;
  for (std::size_t r = 0; r < static_cast<std::size_t>(kRoundKeys); ++r)
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t j = 0; j < 4; ++j) ks.keys_[r][4 * c + j] = w[4 * r + c][j];
  return ks;
}

Block encrypt_block(const Block& in, const KeySchedule& ks, RoundCounter* counter) {
  Block s = in;
  add_round_key(s, ks.round_key(0));
  for (int r = 1; r < kRounds; ++r) {
    round(s, ks.round_key(r));
    if (counter) ++counter->main_rounds;
  }
  final_round(s, ks.round_key(kRounds));
  if (counter) ++counter->final_rounds;
  return s;
}

Block decrypt_block(const Block& in, const KeySchedule& ks, RoundCounter* counter) {
  Block s = in;
  inv_final_round(s, ks.round_key(kRounds));
  if (counter) ++counter->final_rounds;
  for (int r = kRounds - 1; r >= 1; --r) {
    inv_round(s, ks.round_key(r));
    if (counter) ++counter->main_rounds;
  }
  add_round_key(s, ks.round_key(0));
  return s;
}

Block cmac(const KeySchedule& ks, std::span<const std::uint8_t> message) {
  const Block k1 = cmac_subkey(encrypt_block(Block{}, ks));
  const Block k2 = cmac_subkey(k1);

  const std::size_t n = message.empty() ? 1 : (message.size() + 15) / 16;
  const bool complete = !message.empty() && message.size() % 16 == 0;

  Block x{};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j < 16; ++j) x[j] ^= message[16 * i + j];
    x = encrypt_block(x, ks);
  }

  Block last{};
  const std::size_t tail = message.size() - 16 * (n - 1);
  for (std::size_t j = 0; j < tail; ++j) last[j] = message[16 * (n - 1) + j];
  if (complete) {
    for (std::size_t j = 0; j < 16; ++j) last[j] ^= k1[j];
  } else {
    last[tail] = 0x80;
    for (std::size_t j = 0; j < 16; ++j) last[j] ^= k2[j];
  }
  for (std::size_t j = 0; j < 16; ++j) x[j] ^= last[j];
  return encrypt_block(x, ks);
}

Key128 parse_key_hex(std::string_view hex) {
  if (hex.size() != 32) throw std::invalid_argument("key must be 32 hex digits");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("key contains a non-hex character");
  };
  Key128 key{};
  for (std::size_t i = 0; i < 16; ++i)
    key[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  return key;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

Block Nonce::counter_block(std::uint64_t counter) const {
  Block b{};
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(origin.value >> (24 - 8 * i));
  for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(4 + i)] = static_cast<std::uint8_t>(seq >> (24 - 8 * i));
  for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(8 + i)] = static_cast<std::uint8_t>(counter >> (56 - 8 * i));
  return b;
}

PacketKey::PacketKey(const Key128& master) {
  const KeySchedule root = expand_key(master);
  const Block enc = derive_block(root, 0x01);
  const Block mac = derive_block(root, 0x02);
  enc_ = expand_key(enc);
  mac_ = expand_key(mac);
}

namespace {

Bytes ctr_xor(std::span<const std::uint8_t> in, const KeySchedule& ks, const Nonce& nonce) {
  Bytes out(in.begin(), in.end());
  for (std::size_t off = 0, ctr = 0; off < out.size(); off += 16, ++ctr) {
    const Block stream = encrypt_block(nonce.counter_block(ctr), ks);
    const std::size_t len = std::min<std::size_t>(16, out.size() - off);
    for (std::size_t j = 0; j < len; ++j) out[off + j] ^= stream[j];
  }
  return out;
}

}  // namespace

Tag authenticate(const PacketKey& key, std::span<const std::uint8_t> header, std::span<const std::uint8_t> body) {
  Bytes msg;
  msg.reserve(header.size() + body.size());
  msg.insert(msg.end(), header.begin(), header.end());
  msg.insert(msg.end(), body.begin(), body.end());
  const Block full = cmac(key.mac(), msg);
  Tag tag{};
  std::copy_n(full.begin(), tag.size(), tag.begin());
  return tag;
}

Sealed seal(std::span<const std::uint8_t> payload, const PacketKey& key, const Nonce& nonce,
            std::span<const std::uint8_t> header, bool encrypt) {
  Sealed out;
  out.ciphertext = encrypt ? ctr_xor(payload, key.enc(), nonce) : Bytes(payload.begin(), payload.end());
  out.tag = authenticate(key, header, out.ciphertext);
  return out;
}

std::optional<Bytes> open(std::span<const std::uint8_t> ciphertext, const Tag& tag, const PacketKey& key,
                          const Nonce& nonce, std::span<const std::uint8_t> header, bool encrypted) {
  const Tag expected = authenticate(key, header, ciphertext);
  std::uint8_t diff = 0;
  for (std::size_t i = 0; i < tag.size(); ++i) diff |= static_cast<std::uint8_t>(expected[i] ^ tag[i]);
  if (diff != 0) return std::nullopt;
  if (!encrypted) return Bytes(ciphertext.begin(), ciphertext.end());
  return ctr_xor(ciphertext, key.enc(), nonce);
}

Sealed Sealer::seal(std::span<const std::uint8_t> payload, const Nonce& nonce, std::span<const std::uint8_t> header,
                    bool encrypt) {
  if (!used_.insert(nonce).second)
    throw NonceReuse("nonce reused for origin " + std::to_string(nonce.origin.value) + " seq " +
                     std::to_string(nonce.seq));
  return aes::seal(payload, *key_, nonce, header, encrypt);
}

}  // namespace qmanet::aes
