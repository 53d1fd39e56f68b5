#include "greybox/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "greybox/error.hpp"

namespace greybox {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void SettingsStore::write(const std::string &key, std::optional<std::string> value) {
  values_[key] = std::move(value);
}

std::optional<std::string> SettingsStore::read(const std::string &key) const {
  auto it = values_.find(key);
  if (it == values_.end())
    return std::nullopt;
  return it->second;
}

Coverage::Coverage(const AppModel &m)
    : statements(m.statementCount(), 0), branches(2 * m.branchPointCount(), 0),
      methods(m.methods().size(), 0) {}

void Coverage::merge(const Coverage &other) {
  auto add = [](std::vector<std::uint64_t> &a, const std::vector<std::uint64_t> &b) {
    if (a.empty())
      a.assign(b.size(), 0);
    if (a.size() != b.size())
      throw Error("merging coverage of different models");
    for (std::size_t i = 0; i < a.size(); ++i)
      a[i] += b[i];
  };
  add(statements, other.statements);
  add(branches, other.branches);
  add(methods, other.methods);
}

namespace {

std::size_t nonZero(const std::vector<std::uint64_t> &v) {
  return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](auto n) { return n > 0; }));
}

double fraction(std::size_t num, std::size_t den) {
  if (den == 0)
    return 0.0;
  return std::round(static_cast<double>(num) / static_cast<double>(den) * 1e4) / 1e4;
}

} // namespace

std::size_t Coverage::statementsCovered() const { return nonZero(statements); }
std::size_t Coverage::branchesCovered() const { return nonZero(branches); }

std::size_t Coverage::handlersCovered(const AppModel &m) const {
  std::vector<bool> seen(m.methods().size(), false);
  std::size_t n = 0;
  for (const auto &[event, method] : m.handlers()) {
    auto i = *m.methodIndex(method);
    if (!seen[i] && i < methods.size() && methods[i] > 0)
      ++n;
    seen[i] = true;
  }
  return n;
}

std::size_t Coverage::handlerCount(const AppModel &m) {
  std::vector<bool> seen(m.methods().size(), false);
  std::size_t n = 0;
  for (const auto &[event, method] : m.handlers()) {
    auto i = *m.methodIndex(method);
    if (!seen[i])
      ++n;
    seen[i] = true;
  }
  return n;
}

double Coverage::statementFraction() const {
  return fraction(statementsCovered(), statements.size());
}
double Coverage::branchFraction() const { return fraction(branchesCovered(), branches.size()); }
double Coverage::handlerFraction(const AppModel &m) const {
  return fraction(handlersCovered(m), handlerCount(m));
}

std::string toString(CrashKind k) {
  return k == CrashKind::NullDeref ? "null-deref" : "array-oob";
}

std::string toString(CrashPhase p) {
  switch (p) {
  case CrashPhase::Launch: return "launch";
  case CrashPhase::Event: return "event";
  case CrashPhase::Restart: return "restart";
  }
  return "event";
}

GuiState::GuiState(const AppModel &m, SettingsStore &settings, Coverage *coverage,
                   CrashPhase phase)
    : model_(&m), settings_(&settings), coverage_(coverage), phase_(phase) {
  for (const auto &w : m.windows()) {
    std::vector<bool> e;
    for (const auto &wd : w.widgets)
      e.push_back(wd.enabled);
    enabled_.push_back(std::move(e));
  }
  for (const auto &f : m.fields())
    fields_.push_back(f.initial);
  open_.push_back(m.mainWindow());
  if (m.onLaunch())
    run(m.methods()[*m.methodIndex(*m.onLaunch())]);
  phase_ = CrashPhase::Event;
}

bool GuiState::isOpen(std::string_view window) const {
  auto w = model_->windowIndex(window);
  if (!w)
    throw Error("unknown window '" + std::string(window) + "'");
  return std::find(open_.begin(), open_.end(), *w) != open_.end();
}

bool GuiState::widgetEnabled(std::string_view widget) const {
  auto ref = model_->widget(widget);
  if (!ref)
    throw Error("unknown widget '" + std::string(widget) + "'");
  return enabled_[ref->window][ref->widget];
}

const Value &GuiState::field(std::string_view id) const {
  auto f = model_->fieldIndex(id);
  if (!f)
    throw Error("unknown field '" + std::string(id) + "'");
  return fields_[*f];
}

bool GuiState::availableAt(AppModel::WidgetRef w) const {
  if (!running_ || !enabled_[w.window][w.widget])
    return false;
  auto it = std::find(open_.begin(), open_.end(), w.window);
  if (it == open_.end())
    return false;
  return std::none_of(std::next(it), open_.end(),
                      [&](std::size_t above) { return model_->windows()[above].modal; });
}

bool GuiState::isAvailable(std::string_view event) const {
  auto ref = model_->widgetOfEvent(event);
  if (!ref)
    throw Error("unknown event '" + std::string(event) + "'");
  return availableAt(*ref);
}

std::vector<EventId> GuiState::availableEvents() const {
  std::vector<EventId> out;
  const auto &windows = model_->windows();
  for (std::size_t w = 0; w < windows.size(); ++w)
    for (std::size_t k = 0; k < windows[w].widgets.size(); ++k)
      if (windows[w].widgets[k].event && availableAt({w, k}))
        out.push_back(*windows[w].widgets[k].event);
  return out;
}

FireResult GuiState::fire(std::string_view event) {
  auto ref = model_->widgetOfEvent(event);
  if (!ref)
    throw Error("unknown event '" + std::string(event) + "'");
  if (!availableAt(*ref))
    return {FireOutcome::Unavailable, std::nullopt};
  ++fired_;
  current_ = EventId(event);
  const Method *handler = model_->handlerOf(event);
  bool ok = !handler || run(*handler);
  current_.reset();
  if (!ok)
    return {FireOutcome::Crash, crash_};
  return {FireOutcome::Ok, std::nullopt};
}

bool GuiState::holds(const Condition &c) const {
  const Value &v = fields_[*model_->fieldIndex(c.field)];
  switch (c.kind) {
  case Condition::Kind::IsNull: return std::holds_alternative<std::monostate>(v);
  case Condition::Kind::IsTrue: return std::holds_alternative<bool>(v) && std::get<bool>(v);
  case Condition::Kind::Equals: return v == c.literal;
  }
  return false;
}

void GuiState::crashWith(CrashKind kind, const Statement &s, const Method &m,
                         std::string detail) {
  crash_ = CrashRecord{kind, phase_, current_, std::nullopt, s.id, m.id, std::move(detail)};
  running_ = false;
}

void GuiState::open(std::size_t window) {
  auto it = std::find(open_.begin(), open_.end(), window);
  if (it != open_.end())
    open_.erase(it);
  open_.push_back(window);
}

void GuiState::close(std::size_t window) {
  auto it = std::find(open_.begin(), open_.end(), window);
  if (it == open_.end())
    return;
  open_.erase(it);
  if (window == model_->mainWindow())
    running_ = false;
}

bool GuiState::run(const Method &m) {
  if (coverage_)
    ++coverage_->methods[*model_->methodIndex(m.id)];
  return run(m.body, m);
}

bool GuiState::run(const Block &block, const Method &m) {
  for (const auto &s : block) {
    if (coverage_)
      ++coverage_->statements[s.id];
    auto fieldRef = [&](const FieldId &f) -> Value & { return fields_[*model_->fieldIndex(f)]; };
    auto branch = [&](bool taken) {
      if (coverage_)
        ++coverage_->branches[2 * *s.branch + (taken ? 0 : 1)];
    };
    bool ok = std::visit(
        overloaded{
            [&](const stmt::SetField &x) {
              fieldRef(x.field) = x.value;
              return true;
            },
            [&](const stmt::SetNull &x) {
              fieldRef(x.field) = std::monostate{};
              return true;
            },
            [&](const stmt::ReadField &) { return true; },
            [&](const stmt::CopyField &x) {
              fieldRef(x.to) = fieldRef(x.from);
              return true;
            },
            [&](const stmt::If &x) {
              bool taken = holds(x.cond);
              branch(taken);
              return run(taken ? x.then : x.otherwise, m);
            },
            [&](const stmt::OpenWindow &x) {
              open(*model_->windowIndex(x.window));
              return true;
            },
            [&](const stmt::CloseWindow &x) {
              close(*model_->windowIndex(x.window));
              return true;
            },
            [&](const stmt::ExitApp &) {
              running_ = false;
              return true;
            },
            [&](const stmt::Call &x) {
              return run(model_->methods()[*model_->methodIndex(x.method)]);
            },
            [&](const stmt::WriteSetting &x) {
              const Value &v = fieldRef(x.field);
              if (std::holds_alternative<std::monostate>(v))
                settings_->write(x.key, std::nullopt);
              else
                settings_->write(x.key, toString(v));
              return true;
            },
            [&](const stmt::ReadSetting &x) {
              auto v = settings_->read(x.key);
              fieldRef(x.field) = v ? Value(*v) : Value(std::monostate{});
              return true;
            },
            [&](const stmt::SetWidgetEnabled &x) {
              auto ref = *model_->widget(x.widget);
              enabled_[ref.window][ref.widget] = x.enabled;
              return true;
            },
            [&](const stmt::Deref &x) {
              if (!std::holds_alternative<std::monostate>(fieldRef(x.field)))
                return true;
              crashWith(CrashKind::NullDeref, s, m, "null dereference of '" + x.field + "'");
              return false;
            },
            [&](const stmt::ThrowArrayOob &x) {
              bool taken = holds(x.cond);
              branch(taken);
              if (!taken)
                return true;
              crashWith(CrashKind::ArrayOob, s, m,
                        "array index out of bounds (guard on '" + x.cond.field + "')");
              return false;
            },
            [&](const stmt::Log &) { return true; },
        },
        s.node);
    if (!ok)
      return false;
    if (!running_)
      return true;
  }
  return true;
}

} // namespace greybox
