#pragma once

// Declarative model of a GUI application under test: windows and widgets,
// a global field store, and handler methods written in a small statement IR
// that the simulator interprets.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "greybox/classdb.hpp"
#include "greybox/graph.hpp"

namespace greybox {

/// null | bool | int | string
using Value = std::variant<std::monostate, bool, std::int64_t, std::string>;

std::string toString(const Value &v);

enum class FieldType { Bool, Int, String };

struct FieldDecl {
  FieldId id;
  FieldType type = FieldType::String;
  Value initial;
};

struct Condition {
  enum class Kind { IsNull, IsTrue, Equals };
  Kind kind = Kind::IsTrue;
  FieldId field;
  Value literal; ///< Equals only
};

struct Statement;
using Block = std::vector<Statement>;

namespace stmt {
struct SetField { FieldId field; Value value; };
struct SetNull { FieldId field; };
struct ReadField { FieldId field; };
struct CopyField { FieldId from; FieldId to; };
struct If { Condition cond; Block then; Block otherwise; };
struct OpenWindow { std::string window; };
struct CloseWindow { std::string window; };
struct ExitApp {};
struct Call { MethodId method; };
struct WriteSetting { std::string key; FieldId field; };
struct ReadSetting { std::string key; FieldId field; };
struct SetWidgetEnabled { std::string widget; bool enabled = true; };
/// Crashes with a null dereference when the field is null.
struct Deref { FieldId field; };
/// Crashes with an out-of-bounds access when the condition holds.
struct ThrowArrayOob { Condition cond; };
struct Log { FieldId field; };
} // namespace stmt

struct Statement {
  using Node = std::variant<stmt::SetField, stmt::SetNull, stmt::ReadField, stmt::CopyField,
                            stmt::If, stmt::OpenWindow, stmt::CloseWindow, stmt::ExitApp,
                            stmt::Call, stmt::WriteSetting, stmt::ReadSetting,
                            stmt::SetWidgetEnabled, stmt::Deref, stmt::ThrowArrayOob, stmt::Log>;
  Node node;
  /// Global statement number, assigned when the model is built.
  std::size_t id = 0;
  /// Branch point number for If and ThrowArrayOob; outcomes are 2*n (true)
  /// and 2*n+1 (false).
  std::optional<std::size_t> branch;
};

struct Widget {
  std::string name; ///< unique across the application
  std::optional<EventId> event; ///< nullopt for inert widgets
  bool enabled = true;
};

struct Window {
  std::string name;
  bool modal = false;
  bool main = false;
  std::vector<Widget> widgets;
};

struct Method {
  MethodId id; ///< "Class.method"
  Block body;
};

/// Raw model contents as read from a file.
struct AppSpec {
  std::string name;
  std::vector<FieldDecl> fields;
  std::vector<Window> windows;
  std::vector<Method> methods;
  std::map<EventId, MethodId> handlers;
  std::vector<std::string> settings;
  std::optional<MethodId> onLaunch;
};

/// Validated, indexed application model.
class AppModel {
public:
  struct WidgetRef {
    std::size_t window;
    std::size_t widget;
  };

  /// Throws Error describing every violation found.
  explicit AppModel(AppSpec spec);

  const std::string &name() const noexcept { return spec_.name; }
  const std::vector<FieldDecl> &fields() const noexcept { return spec_.fields; }
  const std::vector<Window> &windows() const noexcept { return spec_.windows; }
  const std::vector<Method> &methods() const noexcept { return spec_.methods; }
  const std::map<EventId, MethodId> &handlers() const noexcept { return spec_.handlers; }
  const std::vector<std::string> &settings() const noexcept { return spec_.settings; }
  const std::optional<MethodId> &onLaunch() const noexcept { return spec_.onLaunch; }

  std::size_t mainWindow() const noexcept { return mainWindow_; }
  std::size_t statementCount() const noexcept { return statementCount_; }
  std::size_t branchPointCount() const noexcept { return branchCount_; }

  std::optional<std::size_t> fieldIndex(std::string_view id) const;
  std::optional<std::size_t> windowIndex(std::string_view name) const;
  std::optional<std::size_t> methodIndex(std::string_view id) const;
  std::optional<WidgetRef> widget(std::string_view name) const;
  std::optional<WidgetRef> widgetOfEvent(std::string_view event) const;
  /// Handler method of `event`, nullopt for events without one.
  const Method *handlerOf(std::string_view event) const;

  /// Every widget event, windows and widgets in declaration order.
  std::vector<EventId> events() const;

private:
  void index();
  void validate();
  void number();

  AppSpec spec_;
  std::size_t mainWindow_ = 0;
  std::size_t statementCount_ = 0;
  std::size_t branchCount_ = 0;
  std::unordered_map<std::string, std::size_t> fieldIndex_, windowIndex_, methodIndex_;
  std::unordered_map<std::string, WidgetRef> widgetIndex_, eventIndex_;
};

/// Program IR read literally off the handler statements: every field read
/// or written and every call made anywhere in a method body, regardless of
/// branch feasibility.
ProgramModel extractProgramModel(const AppModel &m);

} // namespace greybox
