#include "qmanet/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>

#include "qmanet/attacks.hpp"
#include "qmanet/link_queue.hpp"
#include "qmanet/newreno.hpp"
#include "qmanet/secure_relay.hpp"
#include "qmanet/wire.hpp"

namespace qmanet {

namespace {

using metrics::DropCause;
using wire::Packet;
using wire::PacketKind;

constexpr std::uint32_t kNoFlow = 0xffffffffU;
constexpr std::size_t kFloodPayload = 512;

struct ControlTimer {};
struct MobilityTick {};
struct Arrival {
  Packet packet;
};
struct TxComplete {};
struct FlowStart {
  std::uint32_t flow;
};
struct AppGenerate {
  std::uint32_t flow;
};
struct RtoTimer {
  std::uint32_t flow;
  std::uint64_t generation;
};
struct ReassemblyCheck {};
struct AttackEmit {};
struct Replay {
  Packet packet;
};

using Payload = std::variant<ControlTimer, MobilityTick, Arrival, TxComplete, FlowStart, AppGenerate, RtoTimer,
                             ReassemblyCheck, AttackEmit, Replay>;

struct Node {
  NodeId id;
  olsr::NodeState olsr;
  link::OutboundQueue queue;
  link::BandwidthEstimator estimator;
  relay::ReassemblyTable reassembly;
  const aes::PacketKey* key = nullptr;
  std::optional<aes::Sealer> sealer;
  Rng protocol_rng{0};
  Rng mobility_rng{0};
  Rng attack_rng{0};
  const attacks::AttackBehavior* attack = nullptr;

  bool joined = false;
  bool busy = false;
  std::optional<Packet> on_air;
  std::uint32_t next_seq = 0;
  std::uint64_t receive_firewall = 0;
  std::uint64_t transmitted = 0;
  std::uint64_t recovered_bytes = 0;

  bool silent() const { return attack && !attack->transmits(); }
  bool attacking(SimTime t) const { return attack && attack->active_at(t); }
};

struct FlowRuntime {
  std::uint32_t id = 0;
  FlowSpec spec;
  bool started = false;
  bool admitted = false;
  bool finished = false;
  std::string rejection;

  transport::CwndState cc;
  std::uint32_t available = 0;  // segments the application has handed over
  std::uint32_t total = 0;      // bulk: all segments; streaming: 0 until generation ends
  bool generation_done = false;
  std::uint64_t rto_generation = 0;
  bool rto_armed = false;

  std::uint32_t rcv_next = 0;
  std::set<std::uint32_t> out_of_order;
};

struct UnitState {
  std::uint32_t flow = 0;
  std::uint32_t live = 0;
  bool resolved = false;
  bool quarantined = false;      // an unverified copy waits at the destination
  bool expired_blocked = false;  // a reassembly hold ran out without a verified copy
  DropCause last_cause = DropCause::no_route;
};

std::uint8_t pattern_byte(std::uint32_t flow, std::uint32_t segment, std::size_t i) {
  const std::uint64_t base = splitmix64((static_cast<std::uint64_t>(flow) << 32) | segment);
  return static_cast<std::uint8_t>((base >> ((i % 8) * 8)) ^ (i / 8));
}

Bytes segment_payload(std::uint32_t flow, std::uint32_t segment, std::size_t size) {
  Bytes b(size);
  for (std::size_t i = 0; i < size; ++i) b[i] = pattern_byte(flow, segment, i);
  return b;
}

aes::Key128 attacker_key(const aes::Key128& network, NodeId id) {
  aes::Key128 k = network;
  for (auto& b : k) b ^= 0xa5;
  k[15] ^= static_cast<std::uint8_t>(id.value);
  return k;
}

class Fnv {
 public:
  void add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (v >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

struct Simulation::Impl {
  ScenarioConfig cfg;
  aes::PacketKey network_key;
  std::vector<aes::PacketKey> attacker_keys;
  EventQueue<Payload> events;
  std::vector<Node> nodes;
  std::vector<NodePosition> positions;
  std::vector<FlowRuntime> flows;
  std::map<std::pair<NodeId, std::uint32_t>, UnitState> units;
  metrics::Trace trace;
  Fnv digest;
  Observer observer;
  bool finished = false;

  explicit Impl(const ScenarioConfig& c) : cfg(c), network_key(c.key) {
    validate(cfg);
    const auto n = cfg.nodes;
    nodes.resize(n);
    positions.resize(n);
    attacker_keys.reserve(cfg.attacks.size());

    for (std::uint32_t i = 0; i < n; ++i) {
      Node& node = nodes[i];
      node.id = NodeId{i};
      node.olsr = olsr::NodeState(node.id, cfg.olsr);
      node.queue = link::OutboundQueue(cfg.queue);
      node.estimator = link::BandwidthEstimator(cfg.queue.estimate_window, cfg.queue.link_rate);
      node.reassembly = relay::ReassemblyTable(cfg.reassembly_hold);
      node.protocol_rng = Rng::for_node(cfg.seed, node.id, RngStream::protocol);
      node.mobility_rng = Rng::for_node(cfg.seed, node.id, RngStream::mobility);
      node.attack_rng = Rng::for_node(cfg.seed, node.id, RngStream::attack);
      node.key = &network_key;
      node.joined = true;
    }
    for (const auto& a : cfg.attacks) {
      attacker_keys.emplace_back(attacker_key(cfg.key, a.node));
      nodes[a.node.value].attack = &a;
      nodes[a.node.value].key = &attacker_keys.back();
      nodes[a.node.value].joined = false;  // joins when the attack starts
    }
    for (auto& node : nodes) {
      node.sealer.emplace(*node.key);
      const olsr::NodeState* state = &node.olsr;
      node.queue.set_firewall([state](const Packet& p) { return state->is_blacklisted(p.origin); });
    }

    place_nodes();

    for (auto& node : nodes) {
      if (node.silent()) continue;
      const SimTime join = node.attack ? node.attack->active_from : SimTime{};
      olsr::start_timers(node.olsr, join, node.protocol_rng);
      events.schedule(olsr::next_emission(node.olsr), node.id, ControlTimer{});
      if (node.attack && (node.attack->kind == attacks::AttackKind::fabricator ||
                          node.attack->kind == attacks::AttackKind::dos_flooder))
        events.schedule(node.attack->active_from, node.id, AttackEmit{});
    }
    if (cfg.mobility.max_speed > 0.0) events.schedule(cfg.mobility_tick, NodeId{0}, MobilityTick{});

    for (std::uint32_t f = 0; f < cfg.flows.size(); ++f) {
      FlowRuntime rt;
      rt.id = f;
      rt.spec = cfg.flows[f];
      rt.cc = transport::initial_state(cfg.transport);
      flows.push_back(std::move(rt));
      events.schedule(cfg.flows[f].start, cfg.flows[f].src, FlowStart{f});
    }
  }

  void place_nodes() {
    for (auto& node : nodes) {
      NodePosition& p = positions[node.id.value];
      if (auto pinned = cfg.positions.find(node.id); pinned != cfg.positions.end()) {
        p.x = pinned->second.first;
        p.y = pinned->second.second;
      } else {
        Rng place = Rng::for_node(cfg.seed, node.id, RngStream::placement);
        p.x = place.uniform(0.0, cfg.radio.arena.width);
        p.y = place.uniform(0.0, cfg.radio.arena.height);
      }
      p.waypoint_x = p.x;
      p.waypoint_y = p.y;
      if (cfg.mobility.max_speed > 0.0) {
        p.waypoint_x = node.mobility_rng.uniform(0.0, cfg.radio.arena.width);
        p.waypoint_y = node.mobility_rng.uniform(0.0, cfg.radio.arena.height);
        p.speed = node.mobility_rng.uniform(cfg.mobility.min_speed, cfg.mobility.max_speed);
      }
    }
  }

  SimTime now() const { return events.now(); }
  Node& node(NodeId id) { return nodes.at(id.value); }

  // -------------------------------------------------------------------------
  // Unit bookkeeping
  // -------------------------------------------------------------------------

  UnitState* unit_of(const Packet& p) {
    if (p.kind != PacketKind::data) return nullptr;
    auto it = units.find({p.origin, p.seq});
    if (it == units.end() || it->second.resolved) return nullptr;
    return &it->second;
  }

  void resolve(const std::pair<NodeId, std::uint32_t>& key, UnitState& u, metrics::UnitEvent event,
               DropCause cause = DropCause::no_route) {
    u.resolved = true;
    metrics::UnitRecord r;
    r.event = event;
    r.time = now();
    r.flow = u.flow;
    r.unit = key.second;
    r.cause = cause;
    trace.units.push_back(r);
  }

  void add_copy(const Packet& p) {
    if (auto* u = unit_of(p)) ++u->live;
  }

  void copy_dropped(const Packet& p, DropCause cause) {
    UnitState* u = unit_of(p);
    if (!u) return;
    if (u->live == 0) throw InvariantViolation("copy dropped for a unit with no live copies");
    --u->live;
    u->last_cause = cause;
    if (u->live > 0 || u->quarantined) return;
    resolve({p.origin, p.seq}, *u, metrics::UnitEvent::dropped,
            u->expired_blocked ? DropCause::integrity : cause);
  }

  void copy_arrived(const Packet& p, relay::IngestOutcome outcome) {
    UnitState* u = unit_of(p);
    if (!u) return;
    if (u->live == 0) throw InvariantViolation("arrival for a unit with no live copies");
    --u->live;
    switch (outcome) {
      case relay::IngestOutcome::deliver: resolve({p.origin, p.seq}, *u, metrics::UnitEvent::delivered); break;
      case relay::IngestOutcome::quarantine: u->quarantined = true; break;
      case relay::IngestOutcome::discard_duplicate:
        throw InvariantViolation("duplicate arrival for an unresolved unit");
    }
  }

  void hold_expired(NodeId origin, std::uint32_t seq) {
    auto it = units.find({origin, seq});
    if (it == units.end() || it->second.resolved) return;
    UnitState& u = it->second;
    u.quarantined = false;
    u.expired_blocked = true;
    if (u.live == 0) resolve(it->first, u, metrics::UnitEvent::dropped, DropCause::integrity);
  }

  // -------------------------------------------------------------------------
  // Radio and queues
  // -------------------------------------------------------------------------

  void enqueue(Node& n, Packet p) {
    const Packet* probe = &p;
    Packet copy_for_drop;
    const bool tracked = unit_of(p) != nullptr;
    if (tracked) copy_for_drop = p, probe = &copy_for_drop;
    switch (n.queue.enqueue(std::move(p))) {
      case link::EnqueueResult::accepted: start_tx(n); break;
      case link::EnqueueResult::dropped_overflow: copy_dropped(*probe, DropCause::overflow); break;
      case link::EnqueueResult::dropped_firewall: copy_dropped(*probe, DropCause::firewall); break;
    }
  }

  void start_tx(Node& n) {
    if (n.busy) return;
    auto p = n.queue.dequeue();
    if (!p) return;
    n.busy = true;
    const SimTime tx = n.queue.transmission_time(wire::encoded_size(*p));
    n.on_air = std::move(*p);
    events.schedule(now() + tx, n.id, TxComplete{});
  }

  void transmit(Node& sender, const Packet& p) {
    const auto size = wire::encoded_size(p);
    sender.estimator.record(now(), size);
    ++sender.transmitted;
    (link::classify(p) == link::TrafficClass::control ? trace.control_bytes : trace.data_bytes) += size;

    digest.add(now().ticks);
    digest.add(sender.id.value);
    digest.add(p.receiver.value);
    digest.add(static_cast<std::uint64_t>(p.kind) << 8 | p.ttl);
    digest.add(p.origin.value);
    digest.add(p.seq);
    digest.add(p.payload.size());

    const NodePosition& from = positions[sender.id.value];
    bool reached = false;
    for (auto& other : nodes) {
      if (other.id == sender.id || !in_range(from, positions[other.id.value], cfg.radio)) continue;
      if (other.silent()) {
        // Passive listeners are served here rather than through the event
        // queue so that their presence leaves the event order untouched.
        Packet copy = p;
        other.recovered_bytes += attacks::apply_behavior(*other.attack, copy, attacks::AttackRole::receiver,
                                                         other.attack_rng)
                                     .recovered_bytes;
        continue;
      }
      if (!other.joined) continue;
      if (!p.receiver.is_broadcast() && p.receiver != other.id) continue;
      events.schedule(now() + cfg.radio.per_hop_delay, other.id, Arrival{p});
      reached = true;
    }
    if (!reached && !p.receiver.is_broadcast()) copy_dropped(p, DropCause::no_route);
  }

  Packet control_packet(Node& n, PacketKind kind, Bytes body, NodeId receiver, std::uint8_t ttl) {
    Packet p;
    p.kind = kind;
    p.ttl = ttl;
    p.transmitter = n.id;
    p.receiver = receiver;
    p.origin = n.id;
    p.seq = n.next_seq++;
    p.payload = std::move(body);
    p.tag = aes::authenticate(*n.key, wire::authenticated_header(p), p.payload);
    return p;
  }

  bool control_verified(const Node& n, const Packet& p) const {
    if (!cfg.control_auth || n.attack) return true;
    return aes::authenticate(*n.key, wire::authenticated_header(p), p.payload) == p.tag;
  }

  // -------------------------------------------------------------------------
  // Control plane
  // -------------------------------------------------------------------------

  void on_control_timer(Node& n) {
    if (!n.joined) n.joined = true;
    olsr::expire(n.olsr, now());
    for (auto& msg : olsr::periodic_emission(n.olsr, now())) {
      if (auto* hello = std::get_if<wire::HelloMessage>(&msg)) {
        enqueue(n, control_packet(n, PacketKind::hello, wire::encode_hello_body(*hello), NodeId::broadcast(), 1));
      } else {
        const auto& tc = std::get<wire::TcMessage>(msg);
        enqueue(n, control_packet(n, PacketKind::tc, wire::encode_tc_body(tc), NodeId::broadcast(), tc.ttl));
      }
    }
    events.schedule(olsr::next_emission(n.olsr), n.id, ControlTimer{});
  }

  void honeypot(Node& n, NodeId suspect) {
    auto hp = relay::honeypot_blacklist(n.olsr, suspect, now());
    if (!hp) return;
    trace.blacklist.push_back({now(), n.id, suspect, "honeypot_confirmed"});
    enqueue(n, control_packet(n, PacketKind::hello, wire::encode_hello_body(hp->decoy), suspect, 1));
  }

  void on_hello(Node& n, const Packet& p) {
    if (!p.receiver.is_broadcast() && p.receiver != n.id) return;
    if (!control_verified(n, p)) {
      honeypot(n, p.transmitter);
      return;
    }
    try {
      olsr::process_hello(n.olsr, wire::decode_hello_body(p.payload, p.origin), now());
    } catch (const wire::WireError&) {
      ++n.olsr.counters.malformed_hello;
    }
  }

  void on_tc(Node& n, const Packet& p) {
    if (!n.olsr.is_symmetric(p.transmitter)) return;
    if (!control_verified(n, p)) {
      honeypot(n, p.transmitter);
      return;
    }
    if (olsr::first_reception(n.olsr, p.origin, p.seq, now())) {
      try {
        olsr::process_tc(n.olsr, wire::decode_tc_body(p.payload, p.origin, p.ttl), now());
      } catch (const wire::WireError&) {
        return;
      }
    }
    Packet fwd = p;
    if (!olsr::should_forward(n.olsr, fwd, p.transmitter, now())) return;
    if (n.attacking(now())) {
      const auto action = attacks::apply_behavior(*n.attack, fwd, attacks::AttackRole::forwarder, n.attack_rng);
      if (action.kind == attacks::AttackAction::Kind::drop) return;
    }
    fwd.transmitter = n.id;
    enqueue(n, std::move(fwd));
  }

  // -------------------------------------------------------------------------
  // Data plane
  // -------------------------------------------------------------------------

  void dispatch(Node& src, Packet p) {
    auto plan = relay::plan_relay(src.olsr, p.destination);
    if (!plan) {
      add_copy(p);
      copy_dropped(p, DropCause::no_route);
      return;
    }
    p.transmitter = src.id;
    std::optional<Packet> alternate;
    if (cfg.alternate_relay && plan->alternate_relay) {
      alternate = p;
      alternate->flags |= wire::flags::alternate_copy;
      alternate->source_route.push_back(src.id);
      alternate->source_route.insert(alternate->source_route.end(), plan->alternate_path.begin(),
                                     plan->alternate_path.end());
      alternate->receiver = plan->alternate_path.front();
    }
    p.receiver = plan->primary_next_hop;
    add_copy(p);
    if (alternate) add_copy(*alternate);
    enqueue(src, std::move(p));
    if (alternate) enqueue(src, std::move(*alternate));
  }

  Packet sealed_packet(Node& n, PacketKind kind, NodeId dst, std::uint32_t flow, std::uint32_t number,
                       const Bytes& plaintext) {
    Packet p;
    p.kind = kind;
    p.flags = cfg.encryption ? wire::flags::encrypted : 0;
    p.ttl = cfg.olsr.ttl;
    p.transmitter = n.id;
    p.origin = n.id;
    p.destination = dst;
    p.seq = n.next_seq++;
    p.flow = flow;
    p.number = number;
    auto sealed = n.sealer->seal(plaintext, relay::nonce_for(p), wire::authenticated_header(p), cfg.encryption);
    p.payload = std::move(sealed.ciphertext);
    p.tag = sealed.tag;
    return p;
  }

  void forward(Node& n, Packet p, bool apply_attack) {
    if (apply_attack && n.attacking(now())) {
      const auto action = attacks::apply_behavior(*n.attack, p, attacks::AttackRole::forwarder, n.attack_rng);
      if (action.kind == attacks::AttackAction::Kind::drop) {
        copy_dropped(p, DropCause::blackhole);
        return;
      }
      if (action.kind == attacks::AttackAction::Kind::replay) {
        add_copy(p);
        events.schedule(now() + action.replay_after, n.id, Replay{p});
      }
    }
    if (p.ttl <= 1) {
      copy_dropped(p, DropCause::ttl);
      return;
    }
    --p.ttl;

    std::optional<NodeId> next;
    if (!p.source_route.empty()) {
      auto it = std::find(p.source_route.begin(), p.source_route.end(), n.id);
      if (it != p.source_route.end() && it + 1 != p.source_route.end()) next = *(it + 1);
    } else if (auto r = n.olsr.routes.find(p.destination); r != n.olsr.routes.end()) {
      next = r->second.next_hop;
    }
    if (!next) {
      copy_dropped(p, DropCause::no_route);
      return;
    }
    p.transmitter = n.id;
    p.receiver = *next;
    enqueue(n, std::move(p));
  }

  void on_data(Node& n, const Packet& p) {
    if (p.receiver != n.id) return;
    if (p.destination != n.id) {
      forward(n, p, true);
      return;
    }
    const auto result = relay::ingest_at_destination(n.reassembly, p, *n.key, now());
    copy_arrived(p, result.outcome);
    if (result.outcome == relay::IngestOutcome::quarantine) {
      events.schedule(now() + n.reassembly.hold(), n.id, ReassemblyCheck{});
      return;
    }
    if (result.outcome != relay::IngestOutcome::deliver || p.flow >= flows.size()) return;
    FlowRuntime& f = flows[p.flow];
    if (p.kind == PacketKind::data && n.id == f.spec.dst && p.origin == f.spec.src)
      receiver_on_segment(f, p.number, result.payload);
    else if (p.kind == PacketKind::ack && n.id == f.spec.src && p.origin == f.spec.dst)
      sender_on_ack(f, p.number);
  }

  void on_arrival(Node& n, Packet p) {
    if (!n.joined) return;
    if (n.olsr.is_blacklisted(p.transmitter)) {
      ++n.receive_firewall;
      copy_dropped(p, DropCause::firewall);
      return;
    }
    switch (p.kind) {
      case PacketKind::hello: on_hello(n, p); break;
      case PacketKind::tc: on_tc(n, p); break;
      case PacketKind::data:
      case PacketKind::ack: on_data(n, p); break;
    }
  }

  // -------------------------------------------------------------------------
  // Flows
  // -------------------------------------------------------------------------

  std::uint32_t segment_size(const FlowRuntime& f, std::uint32_t k) const {
    const std::uint64_t smss = cfg.transport.smss;
    if (f.spec.bytes_total == 0) return static_cast<std::uint32_t>(smss);
    const std::uint64_t offset = static_cast<std::uint64_t>(k) * smss;
    return static_cast<std::uint32_t>(std::min(smss, f.spec.bytes_total - offset));
  }

  std::uint32_t segments_for_bytes(std::uint64_t bytes) const {
    return static_cast<std::uint32_t>((bytes + cfg.transport.smss - 1) / cfg.transport.smss);
  }

  void sample(FlowRuntime& f, const std::string& event) {
    trace.cwnd[f.id].push_back({now(), f.cc.cwnd, f.cc.ssthresh, transport::to_string(f.cc.phase), event});
  }

  void send_segment(FlowRuntime& f, std::uint32_t k) {
    Node& src = node(f.spec.src);
    const auto size = segment_size(f, k);
    Packet p = sealed_packet(src, PacketKind::data, f.spec.dst, f.id, k, segment_payload(f.id, k, size));
    units[{p.origin, p.seq}] = UnitState{f.id, 0, false, false, false, DropCause::no_route};
    metrics::UnitRecord r;
    r.event = metrics::UnitEvent::sent;
    r.time = now();
    r.flow = f.id;
    r.unit = p.seq;
    r.bytes = size;
    trace.units.push_back(r);
    dispatch(src, std::move(p));
  }

  void send_ack(FlowRuntime& f) {
    Node& dst = node(f.spec.dst);
    Bytes body(4);
    for (int i = 0; i < 4; ++i) body[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(f.rcv_next >> (24 - 8 * i));
    dispatch(dst, sealed_packet(dst, PacketKind::ack, f.spec.src, f.id, f.rcv_next, body));
  }

  void arm_rto(FlowRuntime& f) {
    ++f.rto_generation;
    f.rto_armed = f.cc.snd_una < f.cc.snd_max;
    if (f.rto_armed) events.schedule(now() + f.cc.rto, f.spec.src, RtoTimer{f.id, f.rto_generation});
  }

  void check_window(const FlowRuntime& f) const {
    if (f.cc.cwnd < 1.0) throw InvariantViolation("cwnd fell below one segment");
    if (f.cc.ssthresh < 2.0) throw InvariantViolation("ssthresh fell below two segments");
    if (f.cc.snd_una > f.cc.snd_nxt) throw InvariantViolation("snd_una passed snd_nxt");
  }

  void try_send(FlowRuntime& f) {
    while (transport::can_send(f.cc) > 0 && f.cc.snd_nxt < f.available) {
      send_segment(f, f.cc.snd_nxt);
      transport::on_send(f.cc);
    }
    if (!f.rto_armed && f.cc.snd_una < f.cc.snd_max) arm_rto(f);
  }

  void maybe_finish(FlowRuntime& f) {
    if (f.generation_done && f.cc.snd_una >= f.available) {
      f.finished = true;
      ++f.rto_generation;
      f.rto_armed = false;
    }
  }

  void sender_on_ack(FlowRuntime& f, std::uint32_t ack) {
    if (f.finished) return;
    const auto r = transport::on_ack(f.cc, ack, cfg.transport);
    if (r.kind == transport::AckKind::old) return;
    if (r.kind == transport::AckKind::partial && !cfg.transport.reno_mode) {
      const double expected = std::max(1.0, r.cwnd_before - static_cast<double>(r.newly_acked) + 1.0);
      if (f.cc.cwnd != expected) throw InvariantViolation("partial ACK deflation mismatch");
    }
    check_window(f);
    sample(f, transport::to_string(r.kind));
    if (r.retransmit) send_segment(f, *r.retransmit);
    if (r.newly_acked > 0) arm_rto(f);
    maybe_finish(f);
    if (!f.finished) try_send(f);
  }

  void receiver_on_segment(FlowRuntime& f, std::uint32_t k, const Bytes& payload) {
    if (payload != segment_payload(f.id, k, segment_size(f, k))) ++trace.payload_mismatches[f.id];
    if (k == f.rcv_next) {
      ++f.rcv_next;
      while (!f.out_of_order.empty() && *f.out_of_order.begin() == f.rcv_next) {
        f.out_of_order.erase(f.out_of_order.begin());
        ++f.rcv_next;
      }
    } else if (k > f.rcv_next) {
      f.out_of_order.insert(k);
    }
    send_ack(f);
  }

  std::uint32_t active_flows_at(NodeId src) const {
    return static_cast<std::uint32_t>(std::count_if(flows.begin(), flows.end(), [&](const FlowRuntime& f) {
      return f.spec.src == src && f.admitted && !f.finished;
    }));
  }

  void on_flow_start(FlowRuntime& f) {
    Node& src = node(f.spec.src);
    metrics::AdmissionPolicy policy;
    policy.capacity = cfg.admission_capacity;
    policy.link_rate_bps = static_cast<double>(cfg.queue.link_rate);
    policy.reservation_bps = cfg.reservation * policy.link_rate_bps;
    const auto decision =
        metrics::admit_flow(policy, active_flows_at(f.spec.src), src.olsr.routes.contains(f.spec.dst),
                            src.estimator.estimate(now()).estimate);
    f.started = true;
    f.admitted = decision.admitted;
    f.rejection = decision.reason;
    if (!f.admitted) return;

    sample(f, "start");
    if (f.spec.kind == TrafficKind::bulk) {
      f.available = segments_for_bytes(f.spec.bytes_total);
      f.generation_done = true;
      maybe_finish(f);
      if (!f.finished) try_send(f);
    } else {
      events.schedule(now(), f.spec.src, AppGenerate{f.id});
    }
  }

  void on_app_generate(FlowRuntime& f) {
    if (f.generation_done) return;
    const bool bounded = f.spec.bytes_total > 0;
    if (now() >= f.spec.stop || (bounded && f.available >= segments_for_bytes(f.spec.bytes_total))) {
      f.generation_done = true;
      maybe_finish(f);
      return;
    }
    ++f.available;
    const double interval = static_cast<double>(segment_size(f, f.available - 1)) / f.spec.rate;
    events.schedule(now() + SimTime::from_seconds(interval), f.spec.src, AppGenerate{f.id});
    try_send(f);
  }

  void on_rto(FlowRuntime& f, std::uint64_t generation) {
    if (f.finished || generation != f.rto_generation || f.cc.snd_una >= f.cc.snd_max) return;
    f.rto_armed = false;
    transport::on_timeout(f.cc, cfg.transport);
    check_window(f);
    sample(f, "timeout");
    try_send(f);
    if (!f.rto_armed) arm_rto(f);
  }

  // -------------------------------------------------------------------------
  // Attackers
  // -------------------------------------------------------------------------

  void on_attack_emit(Node& n) {
    const auto& a = *n.attack;
    if (!a.active_at(now())) return;
    if (a.kind == attacks::AttackKind::fabricator) {
      wire::HelloMessage forged;
      forged.origin = a.target;
      for (auto id : n.olsr.symmetric_neighbors())
        if (id != a.target) forged.neighbors.push_back({id, wire::LinkStatus::symmetric});
      Packet p = control_packet(n, PacketKind::hello, wire::encode_hello_body(forged), NodeId::broadcast(), 1);
      p.origin = a.target;
      p.tag = aes::authenticate(*n.key, wire::authenticated_header(p), p.payload);
      enqueue(n, std::move(p));
    } else {
      // Junk that the victim has to forward: aimed past the victim when a
      // known route goes through it, at the victim otherwise.
      NodeId dst = a.target;
      for (const auto& [d, route] : n.olsr.routes)
        if (d != a.target && std::find(route.path.begin(), route.path.end(), a.target) != route.path.end() &&
            route.path.front() == a.target)
          dst = d;
      Packet p;
      p.kind = PacketKind::data;
      p.ttl = cfg.olsr.ttl;
      p.transmitter = n.id;
      p.receiver = a.target;
      p.origin = n.id;
      p.destination = dst;
      p.seq = n.next_seq++;
      p.flow = kNoFlow;
      p.payload.assign(kFloodPayload, 0);
      p.tag = aes::authenticate(*n.key, wire::authenticated_header(p), p.payload);
      enqueue(n, std::move(p));
    }
    events.schedule(now() + SimTime::from_seconds(1.0 / a.rate), n.id, AttackEmit{});
  }

  // -------------------------------------------------------------------------
  // Dispatch
  // -------------------------------------------------------------------------

  void handle(Event<Payload>& ev) {
    Node& n = node(ev.target);
    std::visit(
        [&](auto& payload) {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, ControlTimer>) {
            on_control_timer(n);
          } else if constexpr (std::is_same_v<T, MobilityTick>) {
            for (auto& m : nodes)
              positions[m.id.value] =
                  advance_mobility(positions[m.id.value], cfg.mobility_tick, cfg.mobility, cfg.radio.arena,
                                   m.mobility_rng);
            events.schedule(now() + cfg.mobility_tick, ev.target, MobilityTick{});
          } else if constexpr (std::is_same_v<T, Arrival>) {
            on_arrival(n, std::move(payload.packet));
          } else if constexpr (std::is_same_v<T, TxComplete>) {
            n.busy = false;
            Packet p = std::move(*n.on_air);
            n.on_air.reset();
            transmit(n, p);
            start_tx(n);
          } else if constexpr (std::is_same_v<T, FlowStart>) {
            on_flow_start(flows[payload.flow]);
          } else if constexpr (std::is_same_v<T, AppGenerate>) {
            on_app_generate(flows[payload.flow]);
          } else if constexpr (std::is_same_v<T, RtoTimer>) {
            on_rto(flows[payload.flow], payload.generation);
          } else if constexpr (std::is_same_v<T, ReassemblyCheck>) {
            for (const auto& [origin, seq] : n.reassembly.expire(now())) hold_expired(origin, seq);
          } else if constexpr (std::is_same_v<T, AttackEmit>) {
            on_attack_emit(n);
          } else if constexpr (std::is_same_v<T, Replay>) {
            forward(n, std::move(payload.packet), false);
          }
        },
        ev.payload);
  }

  metrics::Trace close() {
    for (auto& [key, u] : units)
      if (!u.resolved) {
        metrics::UnitRecord r;
        r.event = metrics::UnitEvent::in_flight;
        r.time = now();
        r.flow = u.flow;
        r.unit = key.second;
        trace.units.push_back(r);
        u.resolved = true;
      }
    trace.duration = cfg.duration;
    for (const auto& f : flows) {
      metrics::FlowDescriptor d;
      d.id = f.id;
      d.src = f.spec.src;
      d.dst = f.spec.dst;
      d.kind = f.spec.kind == TrafficKind::bulk ? "bulk" : "streaming";
      d.start = f.spec.start;
      d.admitted = f.admitted;
      d.rejection = f.started ? f.rejection : "not started";
      trace.flows.push_back(d);
    }
    for (const auto& n : nodes) {
      metrics::NodeCounters c;
      c.node = n.id;
      c.overflow_control = n.queue.drops().overflow_control;
      c.overflow_data = n.queue.drops().overflow_data;
      c.firewall = n.queue.drops().firewall + n.receive_firewall;
      c.transmitted_packets = n.transmitted;
      c.recovered_bytes = n.recovered_bytes;
      trace.nodes.push_back(c);
    }
    trace.digest = digest.value();
    return std::move(trace);
  }
};

Simulation::Simulation(const ScenarioConfig& config) : impl_(std::make_unique<Impl>(config)) {}
Simulation::~Simulation() = default;

void Simulation::run_until(SimTime t) {
  if (impl_->finished) throw std::logic_error("simulation already finished");
  const SimTime end = std::min(t, impl_->cfg.duration);
  impl_->events.run_until(end, [this](Event<Payload>& ev) {
    impl_->handle(ev);
    if (impl_->observer) impl_->observer(*this);
  });
}

metrics::Trace Simulation::finish() {
  if (impl_->finished) throw std::logic_error("simulation already finished");
  impl_->finished = true;
  return impl_->close();
}

SimTime Simulation::now() const { return impl_->now(); }
const ScenarioConfig& Simulation::config() const { return impl_->cfg; }
std::size_t Simulation::node_count() const { return impl_->nodes.size(); }
const olsr::NodeState& Simulation::node_state(NodeId node) const { return impl_->nodes.at(node.value).olsr; }
const std::vector<NodePosition>& Simulation::positions() const { return impl_->positions; }
bool Simulation::is_attacker(NodeId node) const { return impl_->nodes.at(node.value).attack != nullptr; }
void Simulation::set_observer(Observer observer) { impl_->observer = std::move(observer); }

metrics::MetricsReport run_scenario(const ScenarioConfig& config) {
  Simulation sim(config);
  sim.run();
  return metrics::finalize_report(sim.finish());
}

}  // namespace qmanet
