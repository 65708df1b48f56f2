#include "sfcgame/energy.hpp"

namespace sfcgame {

void PowerParams::validate() const {
  if (!(p_idle > 0.0 && p_idle < p_max))
    throw ConfigError("power params: require 0 < p_idle < p_max");
  if (t_idle_max < 1) throw ConfigError("power params: t_idle_max must be >= 1");
  if (t_off_min < 1) throw ConfigError("power params: t_off_min must be >= 1");
}

std::string to_string(ServerMode mode) {
  switch (mode) {
    case ServerMode::On: return "on";
    case ServerMode::Idle: return "idle";
    case ServerMode::UnavailableOff: return "unavailable_off";
    case ServerMode::AvailableOff: return "available_off";
  }
  return "?";
}

ServerMode server_mode_from_string(const std::string& s) {
  if (s == "on") return ServerMode::On;
  if (s == "idle") return ServerMode::Idle;
  if (s == "unavailable_off") return ServerMode::UnavailableOff;
  if (s == "available_off") return ServerMode::AvailableOff;
  throw ConfigError("unknown server mode '" + s + "'");
}

std::string to_string(IdleCharge c) { return c == IdleCharge::Once ? "once" : "per_vnf"; }

IdleCharge idle_charge_from_string(const std::string& s) {
  if (s == "once") return IdleCharge::Once;
  if (s == "per_vnf") return IdleCharge::PerVnf;
  throw ConfigError("idle_charge must be 'once' or 'per_vnf', got '" + s + "'");
}

ServerState step_server_state(const ServerState& state, const PowerParams& params,
                              bool occupied_this_slot, int current_slot) {
  ServerState next = state;
  next.in_setup = false;

  // Off timer first: an UnavailableOff server whose gap reached t_off_min is
  // available again in this slot.
  if (next.mode == ServerMode::UnavailableOff &&
      current_slot - next.off_since.value_or(current_slot) >= params.t_off_min) {
    next.mode = ServerMode::AvailableOff;
  }

  if (occupied_this_slot) {
    switch (next.mode) {
      case ServerMode::UnavailableOff:
        throw IllegalTransitionError(
            "server in unavailable-off state cannot serve at slot " +
            std::to_string(current_slot));
      case ServerMode::AvailableOff:
        next.in_setup = true;
        [[fallthrough]];
      case ServerMode::On:
      case ServerMode::Idle:
        next.mode = ServerMode::On;
        next.idle_since.reset();
        next.off_since.reset();
        break;
    }
    return next;
  }

  switch (next.mode) {
    case ServerMode::On:
      next.mode = ServerMode::Idle;
      next.idle_since = current_slot;
      break;
    case ServerMode::Idle:
      if (!next.idle_since) next.idle_since = current_slot;
      if (current_slot - *next.idle_since > params.t_idle_max) {
        next.mode = ServerMode::UnavailableOff;
        next.idle_since.reset();
        next.off_since = current_slot;
      }
      break;
    case ServerMode::UnavailableOff:
    case ServerMode::AvailableOff:
      break;
  }
  return next;
}

double server_active_power(double allocated_cpu, double capacity_cpu,
                           const PowerParams& params) {
  return params.p_idle + allocated_cpu / capacity_cpu * (params.p_max - params.p_idle);
}

double server_slot_power(const ServerState& state, const PowerParams& params,
                         double allocated_cpu, double capacity_cpu) {
  switch (state.mode) {
    case ServerMode::On:
      return state.in_setup ? params.p_max
                            : server_active_power(allocated_cpu, capacity_cpu, params);
    case ServerMode::Idle:
      return params.p_idle;
    case ServerMode::UnavailableOff:
    case ServerMode::AvailableOff:
      return 0.0;
  }
  return 0.0;
}

double vnf_power_attribution(const ServerContext& server, double vnf_cpu,
                             const PowerParams& params, bool fixed_charge_paid,
                             IdleCharge policy) {
  const double marginal =
      vnf_cpu / server.capacity_cpu * (params.p_max - params.p_idle);
  const bool charge_fixed = policy == IdleCharge::PerVnf || !fixed_charge_paid;
  switch (server.mode) {
    case PlacementMode::Off:
      // Case 1 / Case 2: a server leaving off draws setup power this slot.
      if (server.occupied_next_slot) return 0.0;
      return charge_fixed ? params.p_max : 0.0;
    case PlacementMode::Idle:
      // Case 3 / Case 4.
      if (server.occupied_next_slot) return marginal;
      return (charge_fixed ? params.p_idle : 0.0) + marginal;
    case PlacementMode::On:
      return marginal;
    case PlacementMode::Unavailable:
      break;
  }
  throw IllegalTransitionError("power attribution requested for an unavailable server");
}

PlacementMode placement_mode_for(const ServerState& previous, const PowerParams& params,
                                 int slot) {
  switch (previous.mode) {
    case ServerMode::On:
    case ServerMode::Idle:
      return PlacementMode::Idle;
    case ServerMode::AvailableOff:
      return PlacementMode::Off;
    case ServerMode::UnavailableOff:
      return slot - previous.off_since.value_or(slot) >= params.t_off_min
                 ? PlacementMode::Off
                 : PlacementMode::Unavailable;
  }
  return PlacementMode::Unavailable;
}

}  // namespace sfcgame
