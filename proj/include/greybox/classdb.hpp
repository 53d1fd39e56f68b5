#pragma once

// Declarative program model (classes, fields, methods and their
// reads/writes/calls relations) and the class database queried during EDG
// construction.
//
// Field and method ids are qualified as "Class.member"; instance and class
// fields share one namespace. The analysis is flow-insensitive and follows
// every call transitively, so the sets it reports over-approximate what a
// single execution of a handler touches.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "greybox/graph.hpp"

namespace greybox {

using FieldId = std::string;
using MethodId = std::string;

struct ProgramMethod {
  std::string name; ///< unqualified, unique within its class
  std::set<FieldId> reads;
  std::set<FieldId> writes;
  std::set<MethodId> calls;
};

struct ProgramClass {
  std::string name;                ///< fully qualified
  std::vector<std::string> fields; ///< unqualified
  std::vector<ProgramMethod> methods;
};

struct ProgramModel {
  std::vector<ProgramClass> classes;
  std::map<EventId, MethodId> bindings;
};

/// "pkg.Class" + "member" -> "pkg.Class.member".
std::string qualify(std::string_view cls, std::string_view member);

/// Read-only index over a validated ProgramModel.
class ClassDb {
public:
  /// Throws Error naming the first dangling or duplicated reference.
  explicit ClassDb(const ProgramModel &p);

  std::size_t classCount() const noexcept { return classCount_; }
  std::size_t methodCount() const noexcept { return methods_.size(); }
  std::size_t fieldCount() const noexcept { return fields_.size(); }

  bool hasMethod(std::string_view id) const;
  bool hasField(std::string_view id) const;
  bool isBound(std::string_view event) const;
  /// Throws Error for unbound events.
  const MethodId &handlerOf(std::string_view event) const;

  /// Direct relations of one method.
  const std::set<FieldId> &reads(std::string_view method) const;
  const std::set<FieldId> &writes(std::string_view method) const;
  const std::set<MethodId> &calls(std::string_view method) const;

  /// Methods reachable from `method` through calls, including itself.
  std::set<MethodId> callClosure(std::string_view method) const;

private:
  struct MethodEntry {
    MethodId id;
    std::set<FieldId> reads;
    std::set<FieldId> writes;
    std::set<MethodId> calls;
    std::vector<std::size_t> callees;
  };

  const MethodEntry &method(std::string_view id) const;

  std::size_t classCount_ = 0;
  std::vector<MethodEntry> methods_;
  std::unordered_map<std::string, std::size_t> methodIndex_;
  std::set<FieldId, std::less<>> fields_;
  std::map<EventId, MethodId, std::less<>> bindings_;
};

ClassDb buildClassDb(const ProgramModel &p);

/// Fields written by the handler of `e` or any method it transitively calls.
/// Throws Error when `e` has no handler binding.
std::set<FieldId> getFieldsWritten(std::string_view e, const ClassDb &db);
/// Fields read by the handler of `e` or any method it transitively calls.
std::set<FieldId> getFieldsRead(std::string_view e, const ClassDb &db);

struct EdgBuild {
  Edg edg;
  std::vector<std::string> warnings;
};

/// Edge (e, |R(e') ∩ W(e)|, e') for every ordered pair with a non-empty
/// intersection, self-pairs included. Events of `efg` without a handler
/// binding contribute no edges and produce a warning.
EdgBuild buildEdg(const ProgramModel &p, const Efg &efg);
EdgBuild buildEdg(const ClassDb &db, const Efg &efg);

} // namespace greybox
