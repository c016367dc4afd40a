#include "qmanet/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace qmanet {

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::vector<Entry> entries;
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections{{"", 0, {}}};
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) throw ConfigError(line_no, "empty section name");
      sections.push_back({std::string(name), line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    if (value.empty()) throw ConfigError(line_no, "missing value for '" + std::string(key) + "'");

    auto& sec = sections.back();
    for (const auto& e : sec.entries)
      if (e.key == key)
        throw ConfigError(line_no, "duplicate key '" + std::string(key) + "' (first set on line " +
                                       std::to_string(e.line) + ")");
    sec.entries.push_back({std::string(key), std::string(value), line_no});
  }
  return sections;
}

double parse_double(const Entry& e) {
  double v = 0.0;
  const auto* end = e.value.data() + e.value.size();
  auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  return v;
}

std::uint64_t parse_uint(const Entry& e) {
  std::uint64_t v = 0;
  const auto* end = e.value.data() + e.value.size();
  auto [ptr, ec] = std::from_chars(e.value.data(), end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(e.line, "'" + e.key + "' expects a non-negative integer, got '" + e.value + "'");
  return v;
}

std::uint32_t parse_u32(const Entry& e) {
  const auto v = parse_uint(e);
  if (v > 0xffffffffULL) throw ConfigError(e.line, "'" + e.key + "' is too large");
  return static_cast<std::uint32_t>(v);
}

SimTime parse_seconds(const Entry& e) {
  const double s = parse_double(e);
  if (!(s >= 0.0)) throw ConfigError(e.line, "'" + e.key + "' must be a non-negative duration");
  return SimTime::from_seconds(s);
}

SimTime parse_millis(const Entry& e) {
  const double ms = parse_double(e);
  if (!(ms >= 0.0)) throw ConfigError(e.line, "'" + e.key + "' must be a non-negative duration");
  return SimTime::from_seconds(ms / 1000.0);
}

bool parse_bool(const Entry& e) {
  static const std::set<std::string> yes{"on", "true", "yes", "1"};
  static const std::set<std::string> no{"off", "false", "no", "0"};
  if (yes.contains(e.value)) return true;
  if (no.contains(e.value)) return false;
  throw ConfigError(e.line, "'" + e.key + "' expects on/off, got '" + e.value + "'");
}

std::pair<double, double> parse_point(const Entry& e) {
  const auto comma = e.value.find(',');
  if (comma == std::string::npos) throw ConfigError(e.line, "'" + e.key + "' expects 'x, y'");
  Entry x{e.key, std::string(trim(std::string_view(e.value).substr(0, comma))), e.line};
  Entry y{e.key, std::string(trim(std::string_view(e.value).substr(comma + 1))), e.line};
  return {parse_double(x), parse_double(y)};
}

using Handler = std::function<void(const Entry&)>;

void apply(const Section& sec, const std::map<std::string, Handler>& handlers,
           const std::function<bool(const Entry&)>& fallback = {}) {
  for (const auto& e : sec.entries) {
    auto it = handlers.find(e.key);
    if (it != handlers.end()) {
      it->second(e);
      continue;
    }
    if (fallback && fallback(e)) continue;
    const std::string where = sec.name.empty() ? "top level" : "[" + sec.name + "]";
    throw ConfigError(e.line, "unknown key '" + e.key + "' in " + where);
  }
}

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fmt_seconds(SimTime t) { return fmt_double(t.to_seconds()); }
std::string fmt_bool(bool b) { return b ? "on" : "off"; }

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(0, field + ": " + what);
}

}  // namespace

void validate(const ScenarioConfig& c) {
  check(c.nodes >= 1, "nodes", "at least one node is required");
  check(c.duration > SimTime{}, "duration", "must be positive");
  check(c.radio.radio_range > 0.0, "radio.range", "must be positive");
  check(c.radio.per_hop_delay > SimTime{}, "radio.per_hop_delay_ms", "must be positive");
  check(c.radio.arena.width > 0.0 && c.radio.arena.height > 0.0, "arena", "width and height must be positive");
  check(c.mobility.min_speed >= 0.0, "mobility.min_speed", "must be non-negative");
  check(c.mobility.max_speed >= c.mobility.min_speed, "mobility.max_speed", "must be >= min_speed");
  check(c.mobility_tick > SimTime{}, "mobility.tick_ms", "must be positive");
  check(c.olsr.hello_interval > SimTime{}, "olsr.hello_interval", "must be positive");
  check(c.olsr.tc_interval > SimTime{}, "olsr.tc_interval", "must be positive");
  check(c.olsr.ttl >= 1, "olsr.ttl", "must be at least 1");
  check(c.olsr.hello_jitter >= 0.0 && c.olsr.hello_jitter < 1.0, "olsr.hello_jitter", "must be in [0, 1)");
  check(c.queue.capacity >= 1, "queue.capacity", "must be positive");
  check(c.queue.link_rate >= 1, "queue.link_rate", "must be positive");
  check(c.queue.estimate_window > SimTime{}, "queue.estimate_window", "must be positive");
  check(c.transport.smss >= 1 && c.transport.smss <= 60000, "transport.smss", "must be in [1, 60000]");
  check(c.transport.initial_cwnd >= 1.0, "transport.initial_cwnd", "must be >= 1");
  check(c.transport.initial_ssthresh >= 2.0, "transport.initial_ssthresh", "must be >= 2");
  check(c.transport.initial_rto > SimTime{}, "transport.initial_rto", "must be positive");
  check(c.transport.max_rto >= c.transport.initial_rto, "transport.max_rto", "must be >= initial_rto");
  check(c.reservation >= 0.0 && c.reservation <= 1.0, "admission.reservation", "must be in [0, 1]");
  check(c.reassembly_hold > SimTime{}, "security.reassembly_hold", "must be positive");

  if (c.placement == PlacementMode::explicit_positions) {
    for (std::uint32_t i = 0; i < c.nodes; ++i)
      check(c.positions.contains(NodeId{i}), "placement.node." + std::to_string(i), "missing position");
  }
  for (const auto& [id, p] : c.positions) {
    const std::string field = "placement.node." + std::to_string(id.value);
    check(id.value < c.nodes, field, "node id out of range");
    check(c.radio.arena.contains(p.first, p.second), field, "position outside the arena");
  }

  for (const auto& f : c.flows) {
    check(f.src.value < c.nodes, "flow.src", "src out of range");
    check(f.dst.value < c.nodes, "flow.dst", "dst out of range");
    check(f.src != f.dst, "flow.dst", "must differ from src");
    if (f.kind == TrafficKind::bulk) check(f.bytes_total > 0, "flow.bytes", "bulk flows need bytes > 0");
    if (f.kind == TrafficKind::streaming) check(f.rate > 0.0, "flow.rate", "streaming flows need rate > 0");
    check(f.stop >= f.start, "flow.stop", "must not precede start");
  }
  for (const auto& a : c.attacks) {
    check(a.node.value < c.nodes, "attack.node", "node out of range");
    check(a.drop_probability >= 0.0 && a.drop_probability <= 1.0, "attack.drop_probability", "must be in [0, 1]");
    check(a.rate > 0.0, "attack.rate", "must be positive");
    check(a.target.value < c.nodes, "attack.target", "target out of range");
    check(a.active_to >= a.active_from, "attack.to", "must not precede from");
  }
  std::set<NodeId> attackers;
  for (const auto& a : c.attacks) check(attackers.insert(a.node).second, "attack.node", "one behavior per node");
}

ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig c;
  bool have_nodes = false;
  std::set<std::string> seen_sections;

  for (const auto& sec : tokenize(text)) {
    const bool repeatable = sec.name == "flow" || sec.name == "attack";
    if (!sec.name.empty() && !repeatable && !seen_sections.insert(sec.name).second)
      throw ConfigError(sec.line, "duplicate section [" + sec.name + "]");

    if (sec.name.empty()) {
      apply(sec, {
                     {"nodes", [&](const Entry& e) { c.nodes = parse_u32(e); have_nodes = true; }},
                     {"seed", [&](const Entry& e) { c.seed = parse_uint(e); }},
                     {"duration", [&](const Entry& e) { c.duration = parse_seconds(e); }},
                 });
    } else if (sec.name == "arena") {
      apply(sec, {
                     {"width", [&](const Entry& e) { c.radio.arena.width = parse_double(e); }},
                     {"height", [&](const Entry& e) { c.radio.arena.height = parse_double(e); }},
                 });
    } else if (sec.name == "radio") {
      apply(sec, {
                     {"range", [&](const Entry& e) { c.radio.radio_range = parse_double(e); }},
                     {"per_hop_delay_ms", [&](const Entry& e) { c.radio.per_hop_delay = parse_millis(e); }},
                 });
    } else if (sec.name == "mobility") {
      apply(sec, {
                     {"min_speed", [&](const Entry& e) { c.mobility.min_speed = parse_double(e); }},
                     {"max_speed", [&](const Entry& e) { c.mobility.max_speed = parse_double(e); }},
                     {"pause", [&](const Entry& e) { c.mobility.pause = parse_seconds(e); }},
                     {"tick_ms", [&](const Entry& e) { c.mobility_tick = parse_millis(e); }},
                 });
    } else if (sec.name == "placement") {
      apply(
          sec,
          {{"mode",
            [&](const Entry& e) {
              if (e.value == "random") c.placement = PlacementMode::random;
              else if (e.value == "explicit") c.placement = PlacementMode::explicit_positions;
              else throw ConfigError(e.line, "placement mode must be 'random' or 'explicit'");
            }}},
          [&](const Entry& e) {
            if (e.key.rfind("node.", 0) != 0) return false;
            Entry id{e.key, e.key.substr(5), e.line};
            c.positions[NodeId{parse_u32(id)}] = parse_point(e);
            return true;
          });
    } else if (sec.name == "olsr") {
      apply(sec, {
                     {"hello_interval", [&](const Entry& e) { c.olsr.hello_interval = parse_seconds(e); }},
                     {"tc_interval", [&](const Entry& e) { c.olsr.tc_interval = parse_seconds(e); }},
                     {"neighb_hold", [&](const Entry& e) { c.olsr.neighb_hold = parse_seconds(e); }},
                     {"top_hold", [&](const Entry& e) { c.olsr.top_hold = parse_seconds(e); }},
                     {"dup_hold", [&](const Entry& e) { c.olsr.dup_hold = parse_seconds(e); }},
                     {"ttl",
                      [&](const Entry& e) {
                        const auto v = parse_uint(e);
                        if (v > 255) throw ConfigError(e.line, "'ttl' must be at most 255");
                        c.olsr.ttl = static_cast<std::uint8_t>(v);
                      }},
                     {"hello_jitter", [&](const Entry& e) { c.olsr.hello_jitter = parse_double(e); }},
                 });
    } else if (sec.name == "security") {
      apply(sec, {
                     {"key",
                      [&](const Entry& e) {
                        try {
                          c.key = aes::parse_key_hex(e.value);
                        } catch (const std::invalid_argument& ex) {
                          throw ConfigError(e.line, ex.what());
                        }
                      }},
                     {"encryption", [&](const Entry& e) { c.encryption = parse_bool(e); }},
                     {"alternate_relay", [&](const Entry& e) { c.alternate_relay = parse_bool(e); }},
                     {"control_auth", [&](const Entry& e) { c.control_auth = parse_bool(e); }},
                     {"reassembly_hold", [&](const Entry& e) { c.reassembly_hold = parse_seconds(e); }},
                 });
    } else if (sec.name == "queue") {
      apply(sec, {
                     {"capacity", [&](const Entry& e) { c.queue.capacity = parse_uint(e); }},
                     {"link_rate", [&](const Entry& e) { c.queue.link_rate = parse_uint(e); }},
                     {"estimate_window", [&](const Entry& e) { c.queue.estimate_window = parse_seconds(e); }},
                 });
    } else if (sec.name == "transport") {
      apply(sec, {
                     {"smss", [&](const Entry& e) { c.transport.smss = parse_u32(e); }},
                     {"initial_cwnd", [&](const Entry& e) { c.transport.initial_cwnd = parse_double(e); }},
                     {"initial_ssthresh", [&](const Entry& e) { c.transport.initial_ssthresh = parse_double(e); }},
                     {"initial_rto", [&](const Entry& e) { c.transport.initial_rto = parse_seconds(e); }},
                     {"max_rto", [&](const Entry& e) { c.transport.max_rto = parse_seconds(e); }},
                     {"variant",
                      [&](const Entry& e) {
                        if (e.value == "newreno") c.transport.reno_mode = false;
                        else if (e.value == "reno") c.transport.reno_mode = true;
                        else throw ConfigError(e.line, "transport variant must be 'newreno' or 'reno'");
                      }},
                 });
    } else if (sec.name == "admission") {
      apply(sec, {
                     {"capacity", [&](const Entry& e) { c.admission_capacity = parse_u32(e); }},
                     {"reservation", [&](const Entry& e) { c.reservation = parse_double(e); }},
                 });
    } else if (sec.name == "flow") {
      FlowSpec f;
      bool have_src = false, have_dst = false;
      apply(sec, {
                     {"src", [&](const Entry& e) { f.src = NodeId{parse_u32(e)}; have_src = true; }},
                     {"dst", [&](const Entry& e) { f.dst = NodeId{parse_u32(e)}; have_dst = true; }},
                     {"start", [&](const Entry& e) { f.start = parse_seconds(e); }},
                     {"kind",
                      [&](const Entry& e) {
                        if (e.value == "bulk") f.kind = TrafficKind::bulk;
                        else if (e.value == "streaming") f.kind = TrafficKind::streaming;
                        else throw ConfigError(e.line, "flow kind must be 'bulk' or 'streaming'");
                      }},
                     {"bytes", [&](const Entry& e) { f.bytes_total = parse_uint(e); }},
                     {"rate", [&](const Entry& e) { f.rate = parse_double(e); }},
                     {"stop", [&](const Entry& e) { f.stop = parse_seconds(e); }},
                 });
      if (!have_src) throw ConfigError(sec.line, "[flow] needs 'src'");
      if (!have_dst) throw ConfigError(sec.line, "[flow] needs 'dst'");
      c.flows.push_back(f);
    } else if (sec.name == "attack") {
      attacks::AttackBehavior a;
      bool have_node = false, have_kind = false;
      apply(sec, {
                     {"node", [&](const Entry& e) { a.node = NodeId{parse_u32(e)}; have_node = true; }},
                     {"kind",
                      [&](const Entry& e) {
                        auto k = attacks::parse_kind(e.value);
                        if (!k) throw ConfigError(e.line, "unknown attack kind '" + e.value + "'");
                        a.kind = *k;
                        have_kind = true;
                      }},
                     {"drop_probability", [&](const Entry& e) { a.drop_probability = parse_double(e); }},
                     {"replay_delay", [&](const Entry& e) { a.replay_delay = parse_seconds(e); }},
                     {"rate", [&](const Entry& e) { a.rate = parse_double(e); }},
                     {"target", [&](const Entry& e) { a.target = NodeId{parse_u32(e)}; }},
                     {"from", [&](const Entry& e) { a.active_from = parse_seconds(e); }},
                     {"to", [&](const Entry& e) { a.active_to = parse_seconds(e); }},
                 });
      if (!have_node) throw ConfigError(sec.line, "[attack] needs 'node'");
      if (!have_kind) throw ConfigError(sec.line, "[attack] needs 'kind'");
      c.attacks.push_back(a);
    } else {
      throw ConfigError(sec.line, "unknown section [" + sec.name + "]");
    }
  }

  if (!have_nodes) throw ConfigError(0, "nodes: required");
  validate(c);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "nodes = " << c.nodes << "\n";
  o << "seed = " << c.seed << "\n";
  o << "duration = " << fmt_seconds(c.duration) << "\n";

  o << "\n[arena]\n";
  o << "width = " << fmt_double(c.radio.arena.width) << "\n";
  o << "height = " << fmt_double(c.radio.arena.height) << "\n";

  o << "\n[radio]\n";
  o << "range = " << fmt_double(c.radio.radio_range) << "\n";
  o << "per_hop_delay_ms = " << fmt_double(c.radio.per_hop_delay.to_millis()) << "\n";

  o << "\n[mobility]\n";
  o << "min_speed = " << fmt_double(c.mobility.min_speed) << "\n";
  o << "max_speed = " << fmt_double(c.mobility.max_speed) << "\n";
  o << "pause = " << fmt_seconds(c.mobility.pause) << "\n";
  o << "tick_ms = " << fmt_double(c.mobility_tick.to_millis()) << "\n";

  o << "\n[placement]\n";
  o << "mode = " << (c.placement == PlacementMode::random ? "random" : "explicit") << "\n";
  for (const auto& [id, p] : c.positions)
    o << "node." << id.value << " = " << fmt_double(p.first) << ", " << fmt_double(p.second) << "\n";

  o << "\n[olsr]\n";
  o << "hello_interval = " << fmt_seconds(c.olsr.hello_interval) << "\n";
  o << "tc_interval = " << fmt_seconds(c.olsr.tc_interval) << "\n";
  o << "neighb_hold = " << fmt_seconds(c.olsr.neighb_hold) << "\n";
  o << "top_hold = " << fmt_seconds(c.olsr.top_hold) << "\n";
  o << "dup_hold = " << fmt_seconds(c.olsr.dup_hold) << "\n";
  o << "ttl = " << static_cast<unsigned>(c.olsr.ttl) << "\n";
  o << "hello_jitter = " << fmt_double(c.olsr.hello_jitter) << "\n";

  o << "\n[security]\n";
  o << "key = " << aes::to_hex(c.key) << "\n";
  o << "encryption = " << fmt_bool(c.encryption) << "\n";
  o << "alternate_relay = " << fmt_bool(c.alternate_relay) << "\n";
  o << "control_auth = " << fmt_bool(c.control_auth) << "\n";
  o << "reassembly_hold = " << fmt_seconds(c.reassembly_hold) << "\n";

  o << "\n[queue]\n";
  o << "capacity = " << c.queue.capacity << "\n";
  o << "link_rate = " << c.queue.link_rate << "\n";
  o << "estimate_window = " << fmt_seconds(c.queue.estimate_window) << "\n";

  o << "\n[transport]\n";
  o << "smss = " << c.transport.smss << "\n";
  o << "initial_cwnd = " << fmt_double(c.transport.initial_cwnd) << "\n";
  o << "initial_ssthresh = " << fmt_double(c.transport.initial_ssthresh) << "\n";
  o << "initial_rto = " << fmt_seconds(c.transport.initial_rto) << "\n";
  o << "max_rto = " << fmt_seconds(c.transport.max_rto) << "\n";
  o << "variant = " << (c.transport.reno_mode ? "reno" : "newreno") << "\n";

  o << "\n[admission]\n";
  o << "capacity = " << c.admission_capacity << "\n";
  o << "reservation = " << fmt_double(c.reservation) << "\n";

  for (const auto& f : c.flows) {
    o << "\n[flow]\n";
    o << "src = " << f.src.value << "\n";
    o << "dst = " << f.dst.value << "\n";
    o << "start = " << fmt_seconds(f.start) << "\n";
    o << "kind = " << (f.kind == TrafficKind::bulk ? "bulk" : "streaming") << "\n";
    o << "bytes = " << f.bytes_total << "\n";
    o << "rate = " << fmt_double(f.rate) << "\n";
    if (f.stop != SimTime::max()) o << "stop = " << fmt_seconds(f.stop) << "\n";
  }
  for (const auto& a : c.attacks) {
    o << "\n[attack]\n";
    o << "node = " << a.node.value << "\n";
    o << "kind = " << attacks::to_string(a.kind) << "\n";
    o << "drop_probability = " << fmt_double(a.drop_probability) << "\n";
    o << "replay_delay = " << fmt_seconds(a.replay_delay) << "\n";
    o << "rate = " << fmt_double(a.rate) << "\n";
    o << "target = " << a.target.value << "\n";
    o << "from = " << fmt_seconds(a.active_from) << "\n";
    if (a.active_to != SimTime::max()) o << "to = " << fmt_seconds(a.active_to) << "\n";
  }
  return o.str();
}

}  // namespace qmanet
