#include "greybox/app_model.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "greybox/error.hpp"

namespace greybox {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

std::string toString(const Value &v) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string("null"); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                        [](std::int64_t i) { return std::to_string(i); },
                        [](const std::string &s) { return s; },
                    },
                    v);
}

namespace {

bool fits(FieldType t, const Value &v) {
  switch (t) {
  case FieldType::Bool: return std::holds_alternative<bool>(v);
  case FieldType::Int: return std::holds_alternative<std::int64_t>(v);
  case FieldType::String:
    return std::holds_alternative<std::string>(v) || std::holds_alternative<std::monostate>(v);
  }
  return false;
}

std::pair<std::string, std::string> splitQualified(const std::string &id) {
  auto dot = id.rfind('.');
  return {id.substr(0, dot), id.substr(dot + 1)};
}

} // namespace

AppModel::AppModel(AppSpec spec) : spec_(std::move(spec)) {
  index();
  validate();
  number();
}

void AppModel::index() {
  for (std::size_t i = 0; i < spec_.fields.size(); ++i)
    fieldIndex_.emplace(spec_.fields[i].id, i);
  for (std::size_t i = 0; i < spec_.methods.size(); ++i)
    methodIndex_.emplace(spec_.methods[i].id, i);
  for (std::size_t w = 0; w < spec_.windows.size(); ++w) {
    windowIndex_.emplace(spec_.windows[w].name, w);
    const auto &widgets = spec_.windows[w].widgets;
    for (std::size_t k = 0; k < widgets.size(); ++k) {
      widgetIndex_.emplace(widgets[k].name, WidgetRef{w, k});
      if (widgets[k].event)
        eventIndex_.emplace(*widgets[k].event, WidgetRef{w, k});
    }
  }
}

void AppModel::validate() {
  std::vector<std::string> problems;
  auto problem = [&](std::string s) { problems.push_back(std::move(s)); };

  std::size_t mains = 0;
  std::set<std::string> windowNames, widgetNames, eventNames, fieldNames, methodNames;
  for (std::size_t w = 0; w < spec_.windows.size(); ++w) {
    const auto &win = spec_.windows[w];
    if (!windowNames.insert(win.name).second)
      problem("duplicate window '" + win.name + "'");
    if (win.main) {
      ++mains;
      mainWindow_ = w;
    }
    for (const auto &wd : win.widgets) {
      if (!widgetNames.insert(wd.name).second)
        problem("duplicate widget '" + wd.name + "'");
      if (!wd.event)
        continue;
      if (!eventNames.insert(*wd.event).second)
        problem("event '" + *wd.event + "' is attached to more than one widget");
      if (!spec_.handlers.contains(*wd.event))
        problem("event '" + *wd.event + "' of widget '" + wd.name +
                "' has no handler (omit the event to make the widget inert)");
    }
  }
  if (mains != 1)
    problem("expected exactly one main window, found " + std::to_string(mains));

  for (const auto &f : spec_.fields) {
    if (!fieldNames.insert(f.id).second)
      problem("duplicate field '" + f.id + "'");
    if (f.id.find('.') == std::string::npos)
      problem("field '" + f.id + "' must be qualified as Class.field");
    if (!fits(f.type, f.initial))
      problem("field '" + f.id + "' has an initial value of the wrong type");
  }
  for (const auto &m : spec_.methods) {
    if (!methodNames.insert(m.id).second)
      problem("duplicate method '" + m.id + "'");
    if (m.id.find('.') == std::string::npos)
      problem("method '" + m.id + "' must be qualified as Class.method");
  }
  for (const auto &[event, method] : spec_.handlers) {
    if (!methodIndex_.contains(method))
      problem("handler of '" + event + "' names undeclared method '" + method + "'");
    if (!eventIndex_.contains(event))
      problem("handler declared for '" + event + "', which no widget fires");
  }
  if (spec_.onLaunch && !methodIndex_.contains(*spec_.onLaunch))
    problem("launch hook names undeclared method '" + *spec_.onLaunch + "'");
  std::set<std::string> settingKeys(spec_.settings.begin(), spec_.settings.end());

  auto fieldType = [&](const FieldId &f, const std::string &where) -> std::optional<FieldType> {
    auto it = fieldIndex_.find(f);
    if (it == fieldIndex_.end()) {
      problem(where + ": undeclared field '" + f + "'");
      return std::nullopt;
    }
    return spec_.fields[it->second].type;
  };
  auto checkCond = [&](const Condition &c, const std::string &where) {
    auto t = fieldType(c.field, where);
    if (!t)
      return;
    if (c.kind == Condition::Kind::IsTrue && *t != FieldType::Bool)
      problem(where + ": isTrue on non-boolean field '" + c.field + "'");
    if (c.kind == Condition::Kind::Equals &&
        (std::holds_alternative<std::monostate>(c.literal) || !fits(*t, c.literal)))
      problem(where + ": equals literal does not match the type of '" + c.field + "'");
  };

  std::function<void(const Block &, const std::string &)> checkBlock;
  checkBlock = [&](const Block &block, const std::string &where) {
    for (const auto &s : block) {
      std::visit(
          overloaded{
              [&](const stmt::SetField &x) {
                if (auto t = fieldType(x.field, where); t && !fits(*t, x.value))
                  problem(where + ": value assigned to '" + x.field + "' has the wrong type");
              },
              [&](const stmt::SetNull &x) {
                if (auto t = fieldType(x.field, where); t && *t != FieldType::String)
                  problem(where + ": only string fields can be null ('" + x.field + "')");
              },
              [&](const stmt::ReadField &x) { fieldType(x.field, where); },
              [&](const stmt::CopyField &x) {
                auto a = fieldType(x.from, where);
                auto b = fieldType(x.to, where);
                if (a && b && *a != *b)
                  problem(where + ": copy between fields of different types");
              },
              [&](const stmt::If &x) {
                checkCond(x.cond, where);
                checkBlock(x.then, where);
                checkBlock(x.otherwise, where);
              },
              [&](const stmt::OpenWindow &x) {
                if (!windowIndex_.contains(x.window))
                  problem(where + ": undeclared window '" + x.window + "'");
              },
              [&](const stmt::CloseWindow &x) {
                if (!windowIndex_.contains(x.window))
                  problem(where + ": undeclared window '" + x.window + "'");
              },
              [&](const stmt::ExitApp &) {},
              [&](const stmt::Call &x) {
                if (!methodIndex_.contains(x.method))
                  problem(where + ": call to undeclared method '" + x.method + "'");
              },
              [&](const stmt::WriteSetting &x) {
                if (!settingKeys.contains(x.key))
                  problem(where + ": undeclared setting '" + x.key + "'");
                fieldType(x.field, where);
              },
              [&](const stmt::ReadSetting &x) {
                if (!settingKeys.contains(x.key))
                  problem(where + ": undeclared setting '" + x.key + "'");
                if (auto t = fieldType(x.field, where); t && *t != FieldType::String)
                  problem(where + ": settings can only be read into string fields");
              },
              [&](const stmt::SetWidgetEnabled &x) {
                if (!widgetIndex_.contains(x.widget))
                  problem(where + ": undeclared widget '" + x.widget + "'");
              },
              [&](const stmt::Deref &x) { fieldType(x.field, where); },
              [&](const stmt::ThrowArrayOob &x) { checkCond(x.cond, where); },
              [&](const stmt::Log &x) { fieldType(x.field, where); },
          },
          s.node);
    }
  };
  for (const auto &m : spec_.methods)
    checkBlock(m.body, "method '" + m.id + "'");

  // Handler bodies must terminate, so the call graph has to be acyclic.
  if (problems.empty()) {
    std::vector<std::vector<std::size_t>> callees(spec_.methods.size());
    std::function<void(const Block &, std::vector<std::size_t> &)> collect;
    collect = [&](const Block &block, std::vector<std::size_t> &out) {
      for (const auto &s : block) {
        if (auto c = std::get_if<stmt::Call>(&s.node))
          out.push_back(methodIndex_.at(c->method));
        else if (auto i = std::get_if<stmt::If>(&s.node)) {
          collect(i->then, out);
          collect(i->otherwise, out);
        }
      }
    };
    for (std::size_t i = 0; i < spec_.methods.size(); ++i)
      collect(spec_.methods[i].body, callees[i]);
    std::vector<int> state(spec_.methods.size(), 0);
    std::function<bool(std::size_t)> cyclic = [&](std::size_t m) {
      state[m] = 1;
      for (auto c : callees[m]) {
        if (state[c] == 1 || (state[c] == 0 && cyclic(c)))
          return true;
      }
      state[m] = 2;
      return false;
    };
    for (std::size_t i = 0; i < spec_.methods.size(); ++i)
      if (state[i] == 0 && cyclic(i)) {
        problem("recursive calls involving '" + spec_.methods[i].id + "'");
        break;
      }
  }

  if (!problems.empty()) {
    std::string msg = "invalid application model '" + spec_.name + "':";
    for (const auto &p : problems)
      msg += "\n  " + p;
    throw Error(msg);
  }
}

void AppModel::number() {
  std::function<void(Block &)> walk = [&](Block &block) {
    for (auto &s : block) {
      s.id = statementCount_++;
      if (auto i = std::get_if<stmt::If>(&s.node)) {
        s.branch = branchCount_++;
        walk(i->then);
        walk(i->otherwise);
      } else if (std::holds_alternative<stmt::ThrowArrayOob>(s.node)) {
        s.branch = branchCount_++;
      }
    }
  };
  for (auto &m : spec_.methods)
    walk(m.body);
}

namespace {

template <class Map>
auto lookup(const Map &map, std::string_view key) -> std::optional<typename Map::mapped_type> {
  auto it = map.find(std::string(key));
  if (it == map.end())
    return std::nullopt;
  return it->second;
}

} // namespace

std::optional<std::size_t> AppModel::fieldIndex(std::string_view id) const {
  return lookup(fieldIndex_, id);
}
std::optional<std::size_t> AppModel::windowIndex(std::string_view name) const {
  return lookup(windowIndex_, name);
}
std::optional<std::size_t> AppModel::methodIndex(std::string_view id) const {
  return lookup(methodIndex_, id);
}
std::optional<AppModel::WidgetRef> AppModel::widget(std::string_view name) const {
  return lookup(widgetIndex_, name);
}
std::optional<AppModel::WidgetRef> AppModel::widgetOfEvent(std::string_view event) const {
  return lookup(eventIndex_, event);
}

const Method *AppModel::handlerOf(std::string_view event) const {
  auto it = spec_.handlers.find(std::string(event));
  if (it == spec_.handlers.end())
    return nullptr;
  return &spec_.methods[methodIndex_.at(it->second)];
}

std::vector<EventId> AppModel::events() const {
  std::vector<EventId> out;
  for (const auto &w : spec_.windows)
    for (const auto &wd : w.widgets)
      if (wd.event)
        out.push_back(*wd.event);
  return out;
}

ProgramModel extractProgramModel(const AppModel &m) {
  ProgramModel p;
  std::map<std::string, std::size_t> classIndex;
  auto classOf = [&](const std::string &name) -> ProgramClass & {
    auto [it, inserted] = classIndex.emplace(name, p.classes.size());
    if (inserted)
      p.classes.push_back({name, {}, {}});
    return p.classes[it->second];
  };
  for (const auto &f : m.fields()) {
    auto [cls, member] = splitQualified(f.id);
    classOf(cls).fields.push_back(member);
  }
  for (const auto &method : m.methods()) {
    auto [cls, member] = splitQualified(method.id);
    ProgramMethod pm{member, {}, {}, {}};
    auto read = [&](const FieldId &f) { pm.reads.insert(f); };
    auto write = [&](const FieldId &f) { pm.writes.insert(f); };
    std::function<void(const Block &)> walk = [&](const Block &block) {
      for (const auto &s : block) {
        std::visit(overloaded{
                       [&](const stmt::SetField &x) { write(x.field); },
                       [&](const stmt::SetNull &x) { write(x.field); },
                       [&](const stmt::ReadField &x) { read(x.field); },
                       [&](const stmt::CopyField &x) {
                         read(x.from);
                         write(x.to);
                       },
                       [&](const stmt::If &x) {
                         read(x.cond.field);
                         walk(x.then);
                         walk(x.otherwise);
                       },
                       [&](const stmt::OpenWindow &) {},
                       [&](const stmt::CloseWindow &) {},
                       [&](const stmt::ExitApp &) {},
                       [&](const stmt::Call &x) { pm.calls.insert(x.method); },
                       [&](const stmt::WriteSetting &x) { read(x.field); },
                       [&](const stmt::ReadSetting &x) { write(x.field); },
                       [&](const stmt::SetWidgetEnabled &) {},
                       [&](const stmt::Deref &x) { read(x.field); },
                       [&](const stmt::ThrowArrayOob &x) { read(x.cond.field); },
                       [&](const stmt::Log &x) { read(x.field); },
                   },
                   s.node);
      }
    };
    walk(method.body);
    classOf(cls).methods.push_back(std::move(pm));
  }
  p.bindings = m.handlers();
  return p;
}

} // namespace greybox
