#include "qmanet/metrics.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include "json.hpp"

namespace qmanet::metrics {

namespace {

constexpr std::array<DropCause, kDropCauses> kAllCauses = {DropCause::overflow,  DropCause::firewall,
                                                           DropCause::blackhole, DropCause::integrity,
                                                           DropCause::ttl,       DropCause::no_route};

struct UnitFate {
  std::optional<SimTime> sent_at;
  std::uint32_t bytes = 0;
  int fates = 0;
};

// Delay samples of one flow in delivery order.
struct DelaySeries {
  std::vector<double> delays;

  double sum() const { return std::accumulate(delays.begin(), delays.end(), 0.0); }
  double abs_diff_sum() const {
    double s = 0.0;
    for (std::size_t i = 1; i < delays.size(); ++i) s += std::fabs(delays[i] - delays[i - 1]);
    return s;
  }
  std::size_t pairs() const { return delays.empty() ? 0 : delays.size() - 1; }
};

std::string fixed(double v, int precision) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return std::string(buf, ptr);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, 16);
  std::string s(buf, ptr);
  return std::string(16 - s.size(), '0') + s;
}

nlohmann::ordered_json flow_json(const FlowMetrics& f, bool with_identity) {
  nlohmann::ordered_json j;
  if (with_identity) {
    j["flow_id"] = f.id;
    j["src"] = f.src.value;
    j["dst"] = f.dst.value;
    j["kind"] = f.kind;
    j["admitted"] = f.admitted;
    if (!f.admitted) j["rejection"] = f.rejection;
  }
  j["sent"] = f.sent;
  j["delivered"] = f.delivered;
  j["in_flight"] = f.in_flight;
  j["pdr"] = f.pdr;
  j["mean_delay_ms"] = f.mean_delay * 1e3;
  j["jitter_ms"] = f.jitter * 1e3;
  j["throughput_bps"] = f.throughput;
  j["delivered_bytes"] = f.delivered_bytes;
  j["payload_mismatches"] = f.payload_mismatches;
  nlohmann::ordered_json drops;
  for (auto c : kAllCauses) drops[to_string(c)] = f.drop_count(c);
  j["drops"] = drops;
  return j;
}

}  // namespace

std::string to_string(DropCause cause) {
  switch (cause) {
    case DropCause::overflow: return "overflow";
    case DropCause::firewall: return "firewall";
    case DropCause::blackhole: return "blackhole";
    case DropCause::integrity: return "integrity";
    case DropCause::ttl: return "ttl";
    case DropCause::no_route: return "no_route";
  }
  return "?";
}

std::uint64_t FlowMetrics::total_drops() const { return std::accumulate(drops.begin(), drops.end(), std::uint64_t{0}); }

MetricsReport finalize_report(const Trace& trace) {
  MetricsReport report;
  report.duration = trace.duration;
  report.control_bytes = trace.control_bytes;
  report.data_bytes = trace.data_bytes;
  const auto all_bytes = trace.control_bytes + trace.data_bytes;
  report.control_overhead = all_bytes ? static_cast<double>(trace.control_bytes) / static_cast<double>(all_bytes) : 0.0;
  report.cwnd = trace.cwnd;
  report.blacklist = trace.blacklist;
  report.nodes = trace.nodes;
  report.digest = trace.digest;

  std::map<std::uint32_t, std::size_t> index;
  for (const auto& d : trace.flows) {
    if (!index.emplace(d.id, report.flows.size()).second)
      throw AccountingError("duplicate flow id " + std::to_string(d.id));
    FlowMetrics f;
    f.id = d.id;
    f.src = d.src;
    f.dst = d.dst;
    f.kind = d.kind;
    f.admitted = d.admitted;
    f.rejection = d.rejection;
    if (auto it = trace.payload_mismatches.find(d.id); it != trace.payload_mismatches.end())
      f.payload_mismatches = it->second;
    report.flows.push_back(std::move(f));
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, UnitFate> units;
  std::vector<DelaySeries> delays(report.flows.size());

  for (const auto& r : trace.units) {
    auto fi = index.find(r.flow);
    if (fi == index.end()) throw AccountingError("record for unknown flow " + std::to_string(r.flow));
    FlowMetrics& f = report.flows[fi->second];
    UnitFate& u = units[{r.flow, r.unit}];
    const std::string where = "flow " + std::to_string(r.flow) + " unit " + std::to_string(r.unit);

    if (r.event == UnitEvent::sent) {
      if (u.sent_at) throw AccountingError(where + " sent twice");
      u.sent_at = r.time;
      u.bytes = r.bytes;
      ++f.sent;
      continue;
    }
    if (!u.sent_at) throw AccountingError(where + " has a fate but was never sent");
    if (++u.fates > 1) throw AccountingError(where + " has more than one fate");

    switch (r.event) {
      case UnitEvent::delivered: {
        ++f.delivered;
        f.delivered_bytes += u.bytes;
        delays[fi->second].delays.push_back((r.time - *u.sent_at).to_seconds());
        break;
      }
      case UnitEvent::dropped: ++f.drops[static_cast<std::size_t>(r.cause)]; break;
      case UnitEvent::in_flight: ++f.in_flight; break;
      case UnitEvent::sent: break;
    }
  }
  for (const auto& [key, u] : units)
    if (u.fates == 0)
      throw AccountingError("flow " + std::to_string(key.first) + " unit " + std::to_string(key.second) +
                            " has no fate");

  const double seconds = trace.duration.to_seconds();
  FlowMetrics& agg = report.aggregate;
  agg.kind = "all";
  agg.admitted = true;
  double delay_sum = 0.0, diff_sum = 0.0;
  std::size_t pair_count = 0;

  for (std::size_t i = 0; i < report.flows.size(); ++i) {
    FlowMetrics& f = report.flows[i];
    if (f.sent != f.delivered + f.total_drops() + f.in_flight)
      throw AccountingError("flow " + std::to_string(f.id) + " does not balance");
    const auto& d = delays[i];
    f.pdr = f.sent ? static_cast<double>(f.delivered) / static_cast<double>(f.sent) : 0.0;
    f.mean_delay = d.delays.empty() ? 0.0 : d.sum() / static_cast<double>(d.delays.size());
    f.jitter = d.pairs() ? d.abs_diff_sum() / static_cast<double>(d.pairs()) : 0.0;
    f.throughput = seconds > 0.0 ? static_cast<double>(f.delivered_bytes) * 8.0 / seconds : 0.0;

    agg.sent += f.sent;
    agg.delivered += f.delivered;
    agg.in_flight += f.in_flight;
    agg.delivered_bytes += f.delivered_bytes;
    agg.payload_mismatches += f.payload_mismatches;
    for (std::size_t c = 0; c < kDropCauses; ++c) agg.drops[c] += f.drops[c];
    agg.throughput += f.throughput;
    delay_sum += d.sum();
    diff_sum += d.abs_diff_sum();
    pair_count += d.pairs();
  }
  agg.pdr = agg.sent ? static_cast<double>(agg.delivered) / static_cast<double>(agg.sent) : 0.0;
  agg.mean_delay = agg.delivered ? delay_sum / static_cast<double>(agg.delivered) : 0.0;
  agg.jitter = pair_count ? diff_sum / static_cast<double>(pair_count) : 0.0;
  return report;
}

std::string to_csv(const MetricsReport& report) {
  std::string out =
      "flow_id,src,dst,sent,delivered,pdr,mean_delay_ms,jitter_ms,throughput_bps,drops_overflow,drops_firewall,"
      "drops_blackhole,drops_integrity,drops_ttl\n";
  auto row = [&](const std::string& id, const std::string& src, const std::string& dst, const FlowMetrics& f) {
    out += id + ',' + src + ',' + dst + ',' + std::to_string(f.sent) + ',' + std::to_string(f.delivered) + ',' +
           fixed(f.pdr, 6) + ',' + fixed(f.mean_delay * 1e3, 3) + ',' + fixed(f.jitter * 1e3, 3) + ',' +
           fixed(f.throughput, 1) + ',' + std::to_string(f.drop_count(DropCause::overflow)) + ',' +
           std::to_string(f.drop_count(DropCause::firewall)) + ',' +
           std::to_string(f.drop_count(DropCause::blackhole)) + ',' +
           std::to_string(f.drop_count(DropCause::integrity)) + ',' + std::to_string(f.drop_count(DropCause::ttl)) +
           '\n';
  };
  for (const auto& f : report.flows)
    row(std::to_string(f.id), std::to_string(f.src.value), std::to_string(f.dst.value), f);
  row("all", "-", "-", report.aggregate);
  return out;
}

std::string to_json(const MetricsReport& report) {
  nlohmann::ordered_json j;
  j["duration_s"] = report.duration.to_seconds();
  j["trace_digest"] = hex64(report.digest);

  auto flows = nlohmann::ordered_json::array();
  for (const auto& f : report.flows) {
    auto fj = flow_json(f, true);
    auto trace = nlohmann::ordered_json::array();
    if (auto it = report.cwnd.find(f.id); it != report.cwnd.end()) {
      for (const auto& s : it->second) {
        nlohmann::ordered_json row;
        row["time_s"] = s.time.to_seconds();
        row["cwnd"] = s.cwnd;
        row["ssthresh"] = s.ssthresh;
        row["phase"] = s.phase;
        row["event"] = s.event;
        trace.push_back(std::move(row));
      }
    }
    fj["cwnd_trace"] = std::move(trace);
    flows.push_back(std::move(fj));
  }
  j["flows"] = std::move(flows);
  j["aggregate"] = flow_json(report.aggregate, false);

  j["control_bytes"] = report.control_bytes;
  j["data_bytes"] = report.data_bytes;
  j["control_overhead"] = report.control_overhead;

  auto bl = nlohmann::ordered_json::array();
  for (const auto& e : report.blacklist) {
    nlohmann::ordered_json row;
    row["time_s"] = e.time.to_seconds();
    row["node"] = e.node.value;
    row["suspect"] = e.suspect.value;
    row["reason"] = e.reason;
    bl.push_back(std::move(row));
  }
  j["blacklist_events"] = std::move(bl);

  auto nodes = nlohmann::ordered_json::array();
  for (const auto& n : report.nodes) {
    nlohmann::ordered_json row;
    row["node"] = n.node.value;
    row["drops_overflow_control"] = n.overflow_control;
    row["drops_overflow_data"] = n.overflow_data;
    row["drops_firewall"] = n.firewall;
    row["transmitted_packets"] = n.transmitted_packets;
    row["recovered_bytes"] = n.recovered_bytes;
    nodes.push_back(std::move(row));
  }
  j["nodes"] = std::move(nodes);
  return j.dump(2) + "\n";
}

AdmissionDecision admit_flow(const AdmissionPolicy& policy, std::uint32_t active_flows_at_src, bool route_exists,
                             double estimated_use_bps) {
  if (active_flows_at_src >= policy.capacity) return {false, "source at flow capacity"};
  if (!route_exists) return {false, "no route to destination"};
  if (policy.link_rate_bps - estimated_use_bps < policy.reservation_bps) return {false, "insufficient bandwidth"};
  return {true, {}};
}

}  // namespace qmanet::metrics
