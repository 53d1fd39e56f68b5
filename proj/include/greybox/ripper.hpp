#pragma once

// GUI ripping: depth-first exploration of a simulated application, and EFG
// construction from the recorded structure.

#include <optional>
#include <string>
#include <vector>

#include "greybox/app_model.hpp"
#include "greybox/graph.hpp"
#include "greybox/simulator.hpp"

namespace greybox {

struct RippedWidget {
  std::string name;
  std::optional<EventId> event;
  bool enabled = true; ///< state when the window was first seen
  std::optional<MethodId> handler;
};

struct RippedWindow {
  std::string name;
  bool modal = false;
  bool main = false;
  std::vector<RippedWidget> widgets;
};

/// What firing one event in its discovery context did.
struct RippedEvent {
  EventId id;
  std::string window;
  std::string widget;
  std::optional<MethodId> handler;
  /// Events fired after launch to reach this event, excluding itself.
  std::vector<EventId> context;
  std::vector<std::string> opens;
  std::vector<std::string> closes;
  bool exits = false;
  std::optional<CrashRecord> crash;
  /// Events available right after this one, in declaration order.
  std::vector<EventId> availableAfter;
};

struct GuiStructure {
  std::string application;
  /// Windows in discovery order.
  std::vector<RippedWindow> windows;
  /// Events available at launch.
  std::vector<EventId> initials;
  /// Fired events, by window discovery order, then widget order.
  std::vector<RippedEvent> events;
  std::vector<std::string> diagnostics;
};

/// Explores the GUI from a fresh launch. In every context the enabled,
/// not yet explored widgets of the topmost window are fired once each, every
/// firing replaying the context in a fresh launch with empty settings; then
/// each resulting state is explored recursively. Events seen available but
/// never on top are fired afterwards in the first context that showed them.
/// Crashes are recorded and exploration continues.
GuiStructure rip(const AppModel &m);

/// Events are the fired events; initials are the events available at
/// launch; each event gets an edge to every event available right after it.
Efg buildEfgFromStructure(const GuiStructure &gs);

} // namespace greybox
