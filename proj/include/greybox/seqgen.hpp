#pragma once

// Event sequence generation: the black-box EFG sampler with reaching steps and
// the grey-box pipeline (abstract EDG paths converted into EFG-executable
// sequences).

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "greybox/graph.hpp"

namespace greybox {

enum class GenMode { Blackbox, Greybox };

struct GenConfig {
  GenMode mode = GenMode::Blackbox;
  std::size_t len = 1;
  /// Maximum abstract sequences per start event; nullopt means unbounded.
  std::optional<std::size_t> top;

  /// Presets A..F: A/B/C are black-box with len 1/2/3; D is grey-box len 2
  /// unbounded; E and F are grey-box len 3 with top 50 and 100.
  static GenConfig preset(char id);
  /// Throws Error when len or top is zero.
  void validate() const;
  std::string describe() const;
};

struct BlackboxResult {
  std::vector<ExecutableSequence> sequences;
  /// Events no initial event can reach; no sequence starts with them.
  std::vector<EventId> ungeneratable;
};

/// One sequence per EFG walk of exactly `len` events, prefixed with the
/// shortest reaching path when the walk does not start at an initial event.
/// Output is ordered lexicographically by the declIndex of the walk.
BlackboxResult genBlackbox(const Efg &g, std::size_t len);

/// Abstract sequences for every event in declIndex order.
std::vector<AbstractSequence> genAbstract(const Edg &d, std::size_t len,
                                          std::optional<std::size_t> top);

/// Abstract sequences starting at `start`. Successors are tried in order of
/// decreasing weight, then increasing declIndex; backtracking yields the next
/// best continuation. A path ends at `len` events or at an event without
/// successors.
std::vector<AbstractSequence> genAbstractFrom(const Edg &d, std::size_t start, std::size_t len,
                                              std::optional<std::size_t> top);

struct ConversionDiagnostic {
  enum class Kind {
    /// Consecutive abstract events are not connected in the EFG; the
    /// sequence was split at `position`.
    Split,
    /// An abstract event cannot be reached from any initial event; the
    /// remainder starting there was dropped.
    Unreachable,
  };
  Kind kind;
  AbstractSequence source;
  std::size_t position = 0; ///< index into source.events
  std::string message;
};

struct Conversion {
  AbstractSequence source;
  /// Consecutive parts are meant to run back to back; usually one part.
  std::vector<ExecutableSequence> parts;
};

struct ConversionResult {
  std::vector<Conversion> converted;
  std::vector<ConversionDiagnostic> diagnostics;
};

/// Realises each abstract sequence on the EFG: shortest reaching path from
/// the nearest initial event, then shortest connections between consecutive
/// abstract events (a minimum cycle for repeated events). Throws Error for
/// events not declared in `g`.
ConversionResult toExecutable(const Efg &g, std::span<const AbstractSequence> abstract);

enum class Origin { Blackbox, Greybox };

/// One line of a sequence file.
struct SequenceRecord {
  std::string id;
  ExecutableSequence sequence;
  Origin origin = Origin::Blackbox;
  std::vector<EventId> abstract; ///< grey-box only
  std::optional<std::string> splitOf;
};

struct GenerationResult {
  std::vector<SequenceRecord> records;
  std::size_t abstractCount = 0;
  std::vector<std::string> diagnostics;
};

/// Full generator: genBlackbox, or genAbstract + toExecutable. Identical
/// executable sequences (and identical split chains) are emitted once.
/// `edg` is required for grey-box mode.
GenerationResult generateSequences(const Efg &efg, const Edg *edg, const GenConfig &config);

} // namespace greybox
