#pragma once

// Event-flow graphs (EFG) and event-dependency graphs (EDG) over a shared,
// ordered event set, plus the sequence types built on top of them.
//
// Both graph types keep the data they were constructed from verbatim so that
// validate*() can report every problem. Index-based adjacency only covers
// declared endpoints. Either graph is immutable once built.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace greybox {

using EventId = std::string;

/// Ordered event declarations. The position of an id is its declIndex, which
/// is the tie-breaker used by every deterministic choice in the library.
class EventTable {
public:
  EventTable() = default;
  explicit EventTable(std::vector<EventId> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const std::vector<EventId> &ids() const noexcept { return ids_; }
  const EventId &id(std::size_t index) const { return ids_.at(index); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws Error naming `id` when it is not declared.
  std::size_t indexOf(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }

  /// Ids declared more than once (first occurrence wins in lookups).
  std::vector<EventId> duplicates() const;

private:
  std::vector<EventId> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct FlowEdge {
  EventId from;
  EventId to;
  friend bool operator==(const FlowEdge &, const FlowEdge &) = default;
};

struct DependencyEdge {
  EventId from;
  EventId to;
  unsigned weight = 0;
  friend bool operator==(const DependencyEdge &, const DependencyEdge &) = default;
};

/// EFG = <E, I, delta>.
class Efg {
public:
  Efg() = default;
  Efg(std::vector<EventId> events, std::vector<EventId> initials,
      std::vector<FlowEdge> edges);

  const EventTable &events() const noexcept { return events_; }
  const std::vector<EventId> &initials() const noexcept { return initials_; }
  /// Edges as given at construction.
  const std::vector<FlowEdge> &edges() const noexcept { return edges_; }

  std::size_t size() const noexcept { return events_.size(); }
  bool isInitial(std::size_t event) const { return isInitial_.at(event); }
  /// Declared initial events, sorted by declIndex.
  const std::vector<std::size_t> &initialIndices() const noexcept { return initialIndices_; }
  /// Successors sorted by declIndex, without duplicates.
  const std::vector<std::size_t> &successors(std::size_t event) const {
    return successors_.at(event);
  }
  bool hasEdge(std::size_t from, std::size_t to) const;
  std::size_t edgeCount() const noexcept { return edgeCount_; }

private:
  EventTable events_;
  std::vector<EventId> initials_;
  std::vector<FlowEdge> edges_;
  std::vector<bool> isInitial_;
  std::vector<std::size_t> initialIndices_;
  std::vector<std::vector<std::size_t>> successors_;
  std::size_t edgeCount_ = 0;
};

/// EDG = <E, psi> with positive integer weights.
class Edg {
public:
  struct Successor {
    std::size_t to;
    unsigned weight;
  };

  Edg() = default;
  Edg(std::vector<EventId> events, std::vector<DependencyEdge> edges);

  const EventTable &events() const noexcept { return events_; }
  const std::vector<DependencyEdge> &edges() const noexcept { return edges_; }

  std::size_t size() const noexcept { return events_.size(); }
  /// Successors sorted by declIndex of the target.
  const std::vector<Successor> &successors(std::size_t event) const {
    return successors_.at(event);
  }
  std::optional<unsigned> weight(std::size_t from, std::size_t to) const;
  std::size_t edgeCount() const noexcept { return edgeCount_; }

private:
  EventTable events_;
  std::vector<DependencyEdge> edges_;
  std::vector<std::vector<Successor>> successors_;
  std::size_t edgeCount_ = 0;
};

/// A path in the EDG.
struct AbstractSequence {
  std::vector<EventId> events;
  friend auto operator<=>(const AbstractSequence &, const AbstractSequence &) = default;
};

/// A path in the EFG starting at an initial event. `targets` holds the
/// positions of dependency-carrying events; all other positions are
/// reaching steps.
struct ExecutableSequence {
  std::vector<EventId> events;
  std::vector<std::size_t> targets;
  friend auto operator<=>(const ExecutableSequence &, const ExecutableSequence &) = default;
};

/// Empty iff every EFG invariant holds.
std::vector<std::string> validateEfg(const Efg &g);
/// Empty iff every EDG invariant holds.
std::vector<std::string> validateEdg(const Edg &g);

/// Throws Error listing all violations.
void requireValid(const Efg &g);
void requireValid(const Edg &g);

/// True iff `s` starts at an initial event and follows EFG edges.
/// Throws Error for events that are not declared in `g`.
bool isExecutable(std::span<const EventId> s, const Efg &g);

enum class PathMode {
  /// shortestPath(a, a) is the empty path.
  Normal,
  /// At least one hop; shortestPath(a, a) is a minimum cycle through a.
  Strict,
};

/// Minimum-hop path from `from` to `to`, excluding `from` and including `to`.
/// Among equally short paths the one whose event sequence is smallest by
/// declIndex wins. Returns nullopt when `to` is unreachable.
std::optional<std::vector<std::size_t>> shortestPath(const Efg &g, std::size_t from,
                                                     std::size_t to,
                                                     PathMode mode = PathMode::Normal);
std::optional<std::vector<EventId>> shortestPath(const Efg &g, std::string_view from,
                                                 std::string_view to,
                                                 PathMode mode = PathMode::Normal);

/// Deterministic Graphviz output. Nodes by declIndex, edges by
/// (from, to) declIndex; initial EFG events drawn with a double border.
std::string exportDot(const Efg &g);
std::string exportDot(const Edg &g);

} // namespace greybox
