#pragma once

#include <optional>
#include <string>

#include "sfcgame/common.hpp"

namespace sfcgame {

struct PowerParams {
  double p_idle = 49.9;   // W
  double p_max = 415.0;   // W, also the setup power
  int t_idle_max = 3;     // slots
  int t_off_min = 1;      // slots

  void validate() const;
};

enum class ServerMode { On, Idle, UnavailableOff, AvailableOff };

std::string to_string(ServerMode mode);
ServerMode server_mode_from_string(const std::string& s);

/// Power state of one edge server during a slot.
struct ServerState {
  ServerMode mode = ServerMode::Idle;
  std::optional<int> idle_since;
  std::optional<int> off_since;
  // True during the single setup slot after leaving AvailableOff.
  bool in_setup = false;

  static ServerState idle_from(int slot) {
    return ServerState{ServerMode::Idle, slot, std::nullopt, false};
  }

  bool operator==(const ServerState&) const = default;
};

/// Advances a server by one slot.
///
/// An occupied server is On; if it was AvailableOff it spends this slot in
/// setup. An unoccupied On/Idle server is Idle until its idle gap exceeds
/// t_idle_max, then UnavailableOff. UnavailableOff becomes AvailableOff once
/// the off gap reaches t_off_min. Throws IllegalTransitionError if an
/// UnavailableOff server is marked occupied.
ServerState step_server_state(const ServerState& state, const PowerParams& params,
                              bool occupied_this_slot, int current_slot);

/// Power drawn during a slot in the given state with the given load.
double server_slot_power(const ServerState& state, const PowerParams& params,
                         double allocated_cpu, double capacity_cpu);

/// Active power: idle floor plus a cpu-proportional share.
double server_active_power(double allocated_cpu, double capacity_cpu,
                           const PowerParams& params);

/// Server status as seen by a placement decision in the current slot.
enum class PlacementMode {
  On,           // already serving committed work this slot
  Idle,         // powered, no work
  Off,          // available off: can serve after a setup at p_max
  Unavailable,  // unavailable off: cannot host anything this slot
};

enum class IdleCharge { Once, PerVnf };

std::string to_string(IdleCharge c);
IdleCharge idle_charge_from_string(const std::string& s);

struct ServerContext {
  PlacementMode mode = PlacementMode::Idle;
  bool occupied_next_slot = false;
  double capacity_cpu = 0.0;
};

/// Power attributed to one VNF placed on a server this slot.
///
/// `fixed_charge_paid` tells whether the server-level fixed charge (idle
/// floor of an idle server, setup power of an off server) has already been
/// attributed to an earlier VNF of the same strategy. With IdleCharge::PerVnf
/// the flag is ignored and every VNF pays the literal per-case amount.
double vnf_power_attribution(const ServerContext& server, double vnf_cpu,
                             const PowerParams& params, bool fixed_charge_paid,
                             IdleCharge policy = IdleCharge::Once);

/// What a placement at `slot` sees for a server whose state during the
/// previous slot was `previous` and which hosts no continuing work. A
/// powered server stays available (hosting keeps it on); an off server is
/// available once its off gap reaches t_off_min.
PlacementMode placement_mode_for(const ServerState& previous,
                                 const PowerParams& params, int slot);

}  // namespace sfcgame
