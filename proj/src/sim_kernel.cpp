#include "qmanet/sim_kernel.hpp"

#include <cmath>

namespace qmanet {

namespace {

NodePosition clamp_to(NodePosition p, const Arena& arena) {
  p.x = std::clamp(p.x, 0.0, arena.width);
  p.y = std::clamp(p.y, 0.0, arena.height);
  return p;
}

}  // namespace

NodePosition advance_mobility(const NodePosition& pos, SimTime dt, const MobilityParams& params,
                              const Arena& arena, Rng& rng) {
  if (pos.speed <= 0.0) return clamp_to(pos, arena);

  NodePosition next = pos;
  if (next.pause_left > SimTime{}) {
    if (dt < next.pause_left) {
      next.pause_left = next.pause_left - dt;
      return next;
    }
    next.pause_left = SimTime{};
    next.waypoint_x = rng.uniform(0.0, arena.width);
    next.waypoint_y = rng.uniform(0.0, arena.height);
    next.speed = rng.uniform(params.min_speed, params.max_speed);
    return clamp_to(next, arena);
  }

  const double dx = next.waypoint_x - next.x;
  const double dy = next.waypoint_y - next.y;
  const double remaining = std::hypot(dx, dy);
  const double step = next.speed * dt.to_seconds();

  if (step < remaining) {
    next.x += dx / remaining * step;
    next.y += dy / remaining * step;
    return clamp_to(next, arena);
  }

  // Arrived; leftover travel time within this tick is dropped.
  next.x = next.waypoint_x;
  next.y = next.waypoint_y;
  if (params.pause > SimTime{}) {
    next.pause_left = params.pause;
    return clamp_to(next, arena);
  }
  next.waypoint_x = rng.uniform(0.0, arena.width);
  next.waypoint_y = rng.uniform(0.0, arena.height);
  next.speed = rng.uniform(params.min_speed, params.max_speed);
  return clamp_to(next, arena);
}

std::vector<std::vector<NodeId>> neighbors_at(const std::vector<NodePosition>& positions, const LinkModel& model) {
  std::vector<std::vector<NodeId>> adj(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (in_range(positions[i], positions[j], model)) {
        adj[i].push_back(NodeId{static_cast<std::uint32_t>(j)});
        adj[j].push_back(NodeId{static_cast<std::uint32_t>(i)});
      }
    }
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace qmanet
