#pragma once

// Interpreter for AppModel: window stack, field store, persistent settings,
// crash detection and coverage counters.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "greybox/app_model.hpp"

namespace greybox {

/// Persisted user settings. Survives restarts within one test case.
class SettingsStore {
public:
  void clear() { values_.clear(); }
  void write(const std::string &key, std::optional<std::string> value);
  /// nullopt for missing keys and for keys that hold null.
  std::optional<std::string> read(const std::string &key) const;
  bool contains(const std::string &key) const { return values_.contains(key); }
  const std::map<std::string, std::optional<std::string>> &values() const { return values_; }

private:
  std::map<std::string, std::optional<std::string>> values_;
};

/// Execution counters over one model's statements, branch outcomes and
/// method entries.
struct Coverage {
  std::vector<std::uint64_t> statements;
  std::vector<std::uint64_t> branches; ///< 2 per branch point
  std::vector<std::uint64_t> methods;

  Coverage() = default;
  explicit Coverage(const AppModel &m);

  void merge(const Coverage &other);

  std::size_t statementsCovered() const;
  std::size_t branchesCovered() const;
  /// Handler methods (bound to an event) entered at least once.
  std::size_t handlersCovered(const AppModel &m) const;
  static std::size_t handlerCount(const AppModel &m);

  double statementFraction() const;
  double branchFraction() const;
  double handlerFraction(const AppModel &m) const;

  friend bool operator==(const Coverage &, const Coverage &) = default;
};

enum class CrashKind { NullDeref, ArrayOob };
enum class CrashPhase { Launch, Event, Restart };

std::string toString(CrashKind k);
std::string toString(CrashPhase p);

struct CrashRecord {
  CrashKind kind = CrashKind::NullDeref;
  CrashPhase phase = CrashPhase::Event;
  std::optional<EventId> event;       ///< nullopt for launch and restart
  std::optional<std::size_t> position; ///< event position in the test case
  std::size_t statement = 0;
  MethodId method;
  std::string detail;

  friend bool operator==(const CrashRecord &, const CrashRecord &) = default;
};

enum class FireOutcome { Ok, Crash, Unavailable };

struct FireResult {
  FireOutcome outcome = FireOutcome::Ok;
  std::optional<CrashRecord> crash;
};

/// One run of the application, from launch until exit or crash.
class GuiState {
public:
  /// Launches the application: main window open, fields at their initial
  /// values, then the launch hook runs. A crash in the hook is recorded with
  /// `phase` and leaves the application stopped.
  GuiState(const AppModel &m, SettingsStore &settings, Coverage *coverage = nullptr,
           CrashPhase phase = CrashPhase::Launch);

  const AppModel &model() const noexcept { return *model_; }
  bool running() const noexcept { return running_; }
  const std::optional<CrashRecord> &crash() const noexcept { return crash_; }
  /// Open windows from bottom to top.
  const std::vector<std::size_t> &openWindows() const noexcept { return open_; }
  bool isOpen(std::string_view window) const;
  bool widgetEnabled(std::string_view widget) const;
  const Value &field(std::string_view id) const;
  std::size_t firedCount() const noexcept { return fired_; }

  /// Throws Error for events no widget fires.
  bool isAvailable(std::string_view event) const;
  /// Available events, in window and widget declaration order.
  std::vector<EventId> availableEvents() const;

  /// `unavailable` when the application is stopped, the widget's window is
  /// closed or covered by a modal window, or the widget is disabled. Throws
  /// Error for unknown events.
  FireResult fire(std::string_view event);

private:
  bool availableAt(AppModel::WidgetRef w) const;
  bool holds(const Condition &c) const;
  // Returns false when execution crashed.
  bool run(const Method &m);
  bool run(const Block &b, const Method &m);
  void crashWith(CrashKind kind, const Statement &s, const Method &m, std::string detail);
  void open(std::size_t window);
  void close(std::size_t window);

  const AppModel *model_;
  SettingsStore *settings_;
  Coverage *coverage_;
  CrashPhase phase_;
  std::optional<EventId> current_;
  bool running_ = true;
  std::optional<CrashRecord> crash_;
  std::vector<std::size_t> open_;
  std::vector<std::vector<bool>> enabled_;
  std::vector<Value> fields_;
  std::size_t fired_ = 0;
};

} // namespace greybox
