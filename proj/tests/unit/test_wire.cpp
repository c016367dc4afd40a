#include <gtest/gtest.h>

#include "qmanet/wire.hpp"

using namespace qmanet;
using namespace qmanet::wire;

namespace {

Packet sample() {
  Packet p;
  p.kind = PacketKind::data;
  p.flags = flags::encrypted | flags::alternate_copy;
  p.ttl = 17;
  p.transmitter = NodeId{4};
  p.receiver = NodeId{5};
  p.origin = NodeId{1};
  p.destination = NodeId{9};
  p.seq = 0x01020304;
  p.flow = 2;
  p.number = 77;
  p.source_route = {NodeId{1}, NodeId{4}, NodeId{9}};
  p.payload = {9, 8, 7, 6, 5};
  p.tag = {1, 2, 3, 4, 5, 6, 7, 8};
  return p;
}

}  // namespace

TEST(Wire, PacketRoundTrip) {
  const auto p = sample();
  const auto bytes = encode(p);
  EXPECT_EQ(bytes.size(), encoded_size(p));
  EXPECT_EQ(decode(bytes), p);
}

TEST(Wire, BigEndianIntegers) {
  Writer w;
  w.u32(0x0a0b0c0d);
  w.u16(0x0102);
  EXPECT_EQ(w.view(), (Bytes{0x0a, 0x0b, 0x0c, 0x0d, 0x01, 0x02}));
  Reader r(w.view());
  EXPECT_EQ(r.u32(), 0x0a0b0c0du);
  EXPECT_EQ(r.u16(), 0x0102u);
  EXPECT_TRUE(r.done());
}

TEST(Wire, TruncatedInputThrows) {
  auto bytes = encode(sample());
  bytes.pop_back();
  EXPECT_THROW(decode(bytes), WireError);
  EXPECT_THROW(decode(Bytes{}), WireError);
}

TEST(Wire, AuthenticatedHeaderIgnoresTransitFields) {
  auto a = sample();
  auto b = a;
  b.ttl = 3;
  b.transmitter = NodeId{40};
  b.receiver = NodeId{41};
  b.source_route.clear();
  EXPECT_EQ(authenticated_header(a), authenticated_header(b));
  b.number = 78;
  EXPECT_NE(authenticated_header(a), authenticated_header(b));
}

TEST(Wire, HelloBodyRoundTrip) {
  HelloMessage m;
  m.origin = NodeId{3};
  m.neighbors = {{NodeId{1}, LinkStatus::symmetric}, {NodeId{8}, LinkStatus::heard}};
  m.mpr_selection = {NodeId{1}};
  EXPECT_EQ(decode_hello_body(encode_hello_body(m), NodeId{3}), m);
}

TEST(Wire, TcBodyRoundTrip) {
  TcMessage m;
  m.origin = NodeId{3};
  m.ansn = 12;
  m.ttl = 200;
  m.advertised = {NodeId{2}, NodeId{6}};
  EXPECT_EQ(decode_tc_body(encode_tc_body(m), NodeId{3}, 200), m);
}

TEST(Wire, HelloBodyRejectsBadStatus) {
  HelloMessage m;
  m.neighbors = {{NodeId{1}, LinkStatus::symmetric}};
  auto body = encode_hello_body(m);
  body[6] = 9;  // status byte of the first neighbor
  EXPECT_THROW(decode_hello_body(body, NodeId{0}), WireError);
}
