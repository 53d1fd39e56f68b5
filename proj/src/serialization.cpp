#include "greybox/serialization.hpp"

#include <fstream>
#include <sstream>

#include "greybox/error.hpp"

namespace greybox {

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what) {
  throw Error(where.empty() ? what : where + ": " + what);
}

std::string sub(const std::string &where, const std::string &key) {
  return where.empty() ? key : where + "." + key;
}

std::string sub(const std::string &where, std::size_t i) {
  return where + "[" + std::to_string(i) + "]";
}

const Json &object(const Json &j, const std::string &where) {
  if (!j.is_object())
    bad(where, "expected an object");
  return j;
}

const Json &member(const Json &j, const std::string &key, const std::string &where) {
  auto it = object(j, where).find(key);
  if (it == j.end())
    bad(where, "missing \"" + key + "\"");
  return *it;
}

const Json *optionalMember(const Json &j, const std::string &key, const std::string &where) {
  auto it = object(j, where).find(key);
  if (it == j.end() || it->is_null())
    return nullptr;
  return &*it;
}

const Json &array(const Json &j, const std::string &where) {
  if (!j.is_array())
    bad(where, "expected an array");
  return j;
}

std::string str(const Json &j, const std::string &where) {
  if (!j.is_string())
    bad(where, "expected a string");
  return j.get<std::string>();
}

bool boolean(const Json &j, const std::string &where) {
  if (!j.is_boolean())
    bad(where, "expected true or false");
  return j.get<bool>();
}

std::size_t count(const Json &j, const std::string &where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    bad(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

double number(const Json &j, const std::string &where) {
  if (!j.is_number())
    bad(where, "expected a number");
  return j.get<double>();
}

std::string strAt(const Json &j, const std::string &key, const std::string &where) {
  return str(member(j, key, where), sub(where, key));
}

std::vector<std::string> strings(const Json &j, const std::string &where) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i)
    out.push_back(str(j[i], sub(where, i)));
  return out;
}

std::vector<std::string> stringsAt(const Json &j, const std::string &key,
                                   const std::string &where) {
  return strings(member(j, key, where), sub(where, key));
}

void checkHeader(const Json &j, const char *kind) {
  object(j, "");
  if (auto v = optionalMember(j, "schemaVersion", ""); v && *v != kSchemaVersion)
    bad("schemaVersion", "unsupported version " + v->dump());
  if (auto k = optionalMember(j, "kind", ""); k && str(*k, "kind") != kind)
    bad("kind", "expected \"" + std::string(kind) + "\", found " + k->dump());
}

Json header(const char *kind) {
  Json j = Json::object();
  j["schemaVersion"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

Json eventList(const EventTable &t) {
  Json out = Json::array();
  for (const auto &id : t.ids())
    out.push_back({{"id", id}});
  return out;
}

std::vector<EventId> eventsFrom(const Json &j) {
  std::vector<EventId> out;
  const Json &events = array(member(j, "events", ""), "events");
  for (std::size_t i = 0; i < events.size(); ++i) {
    auto where = sub("events", i);
    out.push_back(events[i].is_string() ? events[i].get<std::string>()
                                        : strAt(events[i], "id", where));
  }
  return out;
}

Value valueFrom(const Json &j, const std::string &where) {
  if (j.is_null())
    return std::monostate{};
  if (j.is_boolean())
    return j.get<bool>();
  if (j.is_number_integer())
    return j.get<std::int64_t>();
  if (j.is_string())
    return j.get<std::string>();
  bad(where, "expected null, a boolean, an integer or a string");
}

Json crashJson(const CrashRecord &c) {
  Json j{{"kind", toString(c.kind)}, {"phase", toString(c.phase)}};
  if (c.event)
    j["event"] = *c.event;
  if (c.position)
    j["position"] = *c.position;
  j["statement"] = c.statement;
  j["method"] = c.method;
  j["detail"] = c.detail;
  return j;
}

CrashRecord crashFrom(const Json &j, const std::string &where) {
  CrashRecord c;
  auto kind = strAt(j, "kind", where);
  if (kind == "null-deref")
    c.kind = CrashKind::NullDeref;
  else if (kind == "array-oob")
    c.kind = CrashKind::ArrayOob;
  else
    bad(sub(where, "kind"), "unknown crash kind \"" + kind + "\"");
  auto phase = strAt(j, "phase", where);
  if (phase == "launch")
    c.phase = CrashPhase::Launch;
  else if (phase == "event")
    c.phase = CrashPhase::Event;
  else if (phase == "restart")
    c.phase = CrashPhase::Restart;
  else
    bad(sub(where, "phase"), "unknown crash phase \"" + phase + "\"");
  if (auto e = optionalMember(j, "event", where))
    c.event = str(*e, sub(where, "event"));
  if (auto p = optionalMember(j, "position", where))
    c.position = count(*p, sub(where, "position"));
  c.statement = count(member(j, "statement", where), sub(where, "statement"));
  c.method = strAt(j, "method", where);
  if (auto d = optionalMember(j, "detail", where))
    c.detail = str(*d, sub(where, "detail"));
  return c;
}

// App model statements.

Condition conditionFrom(const Json &j, const std::string &where) {
  object(j, where);
  if (j.size() != 1)
    bad(where, "expected exactly one of isNull, isTrue, equals");
  Condition c;
  if (auto f = optionalMember(j, "isNull", where)) {
    c.kind = Condition::Kind::IsNull;
    c.field = str(*f, sub(where, "isNull"));
  } else if (auto f = optionalMember(j, "isTrue", where)) {
    c.kind = Condition::Kind::IsTrue;
    c.field = str(*f, sub(where, "isTrue"));
  } else if (auto e = optionalMember(j, "equals", where)) {
    auto w = sub(where, "equals");
    c.kind = Condition::Kind::Equals;
    c.field = strAt(*e, "field", w);
    c.literal = valueFrom(member(*e, "value", w), sub(w, "value"));
  } else {
    bad(where, "expected one of isNull, isTrue, equals");
  }
  return c;
}

Block blockFrom(const Json &j, const std::string &where);

Statement statementFrom(const Json &j, const std::string &where) {
  auto op = strAt(j, "op", where);
  auto field = [&] { return strAt(j, "field", where); };
  Statement s;
  if (op == "set")
    s.node = stmt::SetField{field(), valueFrom(member(j, "value", where), sub(where, "value"))};
  else if (op == "setNull")
    s.node = stmt::SetNull{field()};
  else if (op == "read")
    s.node = stmt::ReadField{field()};
  else if (op == "copy")
    s.node = stmt::CopyField{strAt(j, "from", where), strAt(j, "to", where)};
  else if (op == "if") {
    stmt::If x;
    x.cond = conditionFrom(member(j, "cond", where), sub(where, "cond"));
    x.then = blockFrom(member(j, "then", where), sub(where, "then"));
    if (auto e = optionalMember(j, "else", where))
      x.otherwise = blockFrom(*e, sub(where, "else"));
    s.node = std::move(x);
  } else if (op == "open")
    s.node = stmt::OpenWindow{strAt(j, "window", where)};
  else if (op == "close")
    s.node = stmt::CloseWindow{strAt(j, "window", where)};
  else if (op == "exit")
    s.node = stmt::ExitApp{};
  else if (op == "call")
    s.node = stmt::Call{strAt(j, "method", where)};
  else if (op == "writeSetting")
    s.node = stmt::WriteSetting{strAt(j, "key", where), field()};
  else if (op == "readSetting")
    s.node = stmt::ReadSetting{strAt(j, "key", where), field()};
  else if (op == "setEnabled")
    s.node = stmt::SetWidgetEnabled{strAt(j, "widget", where),
                                    boolean(member(j, "enabled", where), sub(where, "enabled"))};
  else if (op == "deref")
    s.node = stmt::Deref{field()};
  else if (op == "throwOob")
    s.node = stmt::ThrowArrayOob{conditionFrom(member(j, "cond", where), sub(where, "cond"))};
  else if (op == "log")
    s.node = stmt::Log{field()};
  else
    bad(sub(where, "op"), "unknown statement \"" + op + "\"");
  return s;
}

Block blockFrom(const Json &j, const std::string &where) {
  Block out;
  for (std::size_t i = 0; i < array(j, where).size(); ++i)
    out.push_back(statementFrom(j[i], sub(where, i)));
  return out;
}

template <class F> auto withFile(const std::filesystem::path &path, F &&f) {
  try {
    return f(readJsonFile(path));
  } catch (const FileError &) {
    throw;
  } catch (const Error &e) {
    throw FileError(path.string(), e.what());
  } catch (const nlohmann::json::exception &e) {
    throw FileError(path.string(), e.what());
  }
}

} // namespace

Json toJson(const Efg &g) {
  Json j = header("efg");
  j["events"] = eventList(g.events());
  j["initials"] = g.initials();
  Json edges = Json::array();
  for (const auto &e : g.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}});
  j["edges"] = std::move(edges);
  return j;
}

Json toJson(const Edg &g) {
  Json j = header("edg");
  j["events"] = eventList(g.events());
  Json edges = Json::array();
  for (const auto &e : g.edges())
    edges.push_back({{"from", e.from}, {"to", e.to}, {"weight", e.weight}});
  j["edges"] = std::move(edges);
  return j;
}

Json toJson(const ProgramModel &p) {
  Json j = header("program");
  Json classes = Json::array();
  for (const auto &c : p.classes) {
    Json methods = Json::array();
    for (const auto &m : c.methods)
      methods.push_back(
          {{"name", m.name}, {"reads", m.reads}, {"writes", m.writes}, {"calls", m.calls}});
    classes.push_back({{"name", c.name}, {"fields", c.fields}, {"methods", std::move(methods)}});
  }
  j["classes"] = std::move(classes);
  Json bindings = Json::object();
  for (const auto &[e, m] : p.bindings)
    bindings[e] = m;
  j["bindings"] = std::move(bindings);
  return j;
}

Json toJson(const GuiStructure &gs) {
  Json j = header("gui-structure");
  j["application"] = gs.application;
  Json windows = Json::array();
  for (const auto &w : gs.windows) {
    Json widgets = Json::array();
    for (const auto &wd : w.widgets) {
      Json x{{"name", wd.name}};
      if (wd.event)
        x["event"] = *wd.event;
      x["enabled"] = wd.enabled;
      if (wd.handler)
        x["handler"] = *wd.handler;
      widgets.push_back(std::move(x));
    }
    windows.push_back({{"name", w.name},
                       {"modal", w.modal},
                       {"main", w.main},
                       {"widgets", std::move(widgets)}});
  }
  j["windows"] = std::move(windows);
  j["initials"] = gs.initials;
  Json events = Json::array();
  for (const auto &e : gs.events) {
    Json x{{"id", e.id}, {"window", e.window}, {"widget", e.widget}};
    if (e.handler)
      x["handler"] = *e.handler;
    x["context"] = e.context;
    x["opens"] = e.opens;
    x["closes"] = e.closes;
    x["exits"] = e.exits;
    if (e.crash)
      x["crash"] = crashJson(*e.crash);
    x["availableAfter"] = e.availableAfter;
    events.push_back(std::move(x));
  }
  j["events"] = std::move(events);
  j["diagnostics"] = gs.diagnostics;
  return j;
}

Json toJson(const SequenceRecord &r) {
  Json j{{"schemaVersion", kSchemaVersion},
         {"id", r.id},
         {"events", r.sequence.events},
         {"targets", r.sequence.targets},
         {"origin", r.origin == Origin::Blackbox ? "blackbox" : "greybox"}};
  if (r.origin == Origin::Greybox)
    j["abstract"] = r.abstract;
  if (r.splitOf)
    j["splitOf"] = *r.splitOf;
  return j;
}

Json toJson(const TestReport &r, bool timing) {
  Json j = header("report");
  j["application"] = r.application;
  Json s{{"total", r.total()},
         {"passed", r.passed},
         {"failed", r.failed},
         {"broken", r.broken},
         {"statements", r.statements},
         {"statementsCovered", r.statementsCovered},
         {"statementCoverage", r.statementCoverage},
         {"branches", r.branches},
         {"branchesCovered", r.branchesCovered},
         {"branchCoverage", r.branchCoverage},
         {"handlers", r.handlers},
         {"handlersCovered", r.handlersCovered},
         {"handlerCoverage", r.handlerCoverage}};
  if (timing)
    s["execSeconds"] = r.seconds;
  j["summary"] = std::move(s);
  Json results = Json::array();
  for (const auto &t : r.results) {
    Json x{{"id", t.id}, {"events", t.events}, {"verdict", toString(t.verdict.kind)}};
    if (t.verdict.brokenAt)
      x["brokenAt"] = *t.verdict.brokenAt;
    if (t.verdict.crash)
      x["crash"] = crashJson(*t.verdict.crash);
    x["eventsFired"] = t.eventsFired;
    if (timing)
      x["seconds"] = t.seconds;
    results.push_back(std::move(x));
  }
  j["results"] = std::move(results);
  return j;
}

Efg efgFromJson(const Json &j) {
  checkHeader(j, "efg");
  auto events = eventsFrom(j);
  auto initials = stringsAt(j, "initials", "");
  std::vector<FlowEdge> edges;
  const Json &je = array(member(j, "edges", ""), "edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    auto where = sub("edges", i);
    edges.push_back({strAt(je[i], "from", where), strAt(je[i], "to", where)});
  }
  return Efg(std::move(events), std::move(initials), std::move(edges));
}

Edg edgFromJson(const Json &j) {
  checkHeader(j, "edg");
  auto events = eventsFrom(j);
  std::vector<DependencyEdge> edges;
  const Json &je = array(member(j, "edges", ""), "edges");
  for (std::size_t i = 0; i < je.size(); ++i) {
    auto where = sub("edges", i);
    auto w = count(member(je[i], "weight", where), sub(where, "weight"));
    edges.push_back(
        {strAt(je[i], "from", where), strAt(je[i], "to", where), static_cast<unsigned>(w)});
  }
  return Edg(std::move(events), std::move(edges));
}

ProgramModel programFromJson(const Json &j) {
  checkHeader(j, "program");
  ProgramModel p;
  const Json &classes = array(member(j, "classes", ""), "classes");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    auto where = sub("classes", i);
    ProgramClass c;
    c.name = strAt(classes[i], "name", where);
    if (auto f = optionalMember(classes[i], "fields", where))
      c.fields = strings(*f, sub(where, "fields"));
    if (auto ms = optionalMember(classes[i], "methods", where)) {
      auto mw = sub(where, "methods");
      for (std::size_t k = 0; k < array(*ms, mw).size(); ++k) {
        auto w = sub(mw, k);
        const Json &m = (*ms)[k];
        ProgramMethod pm;
        pm.name = strAt(m, "name", w);
        auto set = [&](const char *key) {
          std::set<std::string> out;
          if (auto v = optionalMember(m, key, w))
            for (auto &s : strings(*v, sub(w, key)))
              out.insert(std::move(s));
          return out;
        };
        pm.reads = set("reads");
        pm.writes = set("writes");
        pm.calls = set("calls");
        c.methods.push_back(std::move(pm));
      }
    }
    p.classes.push_back(std::move(c));
  }
  if (auto b = optionalMember(j, "bindings", ""))
    for (const auto &[event, method] : object(*b, "bindings").items())
      p.bindings.emplace(event, str(method, sub("bindings", event)));
  return p;
}

AppSpec appSpecFromJson(const Json &j) {
  checkHeader(j, "app");
  AppSpec a;
  a.name = strAt(j, "name", "");
  if (auto fs = optionalMember(j, "fields", "")) {
    for (std::size_t i = 0; i < array(*fs, "fields").size(); ++i) {
      auto where = sub("fields", i);
      const Json &f = (*fs)[i];
      FieldDecl d;
      d.id = strAt(f, "id", where);
      auto type = strAt(f, "type", where);
      if (type == "bool")
        d.type = FieldType::Bool;
      else if (type == "int")
        d.type = FieldType::Int;
      else if (type == "string")
        d.type = FieldType::String;
      else
        bad(sub(where, "type"), "expected bool, int or string");
      if (auto v = optionalMember(f, "init", where))
        d.initial = valueFrom(*v, sub(where, "init"));
      else if (d.type == FieldType::Bool)
        d.initial = false;
      else if (d.type == FieldType::Int)
        d.initial = std::int64_t{0};
      a.fields.push_back(std::move(d));
    }
  }
  const Json &ws = array(member(j, "windows", ""), "windows");
  for (std::size_t i = 0; i < ws.size(); ++i) {
    auto where = sub("windows", i);
    Window w;
    w.name = strAt(ws[i], "name", where);
    if (auto v = optionalMember(ws[i], "main", where))
      w.main = boolean(*v, sub(where, "main"));
    if (auto v = optionalMember(ws[i], "modal", where))
      w.modal = boolean(*v, sub(where, "modal"));
    if (auto wds = optionalMember(ws[i], "widgets", where)) {
      auto ww = sub(where, "widgets");
      for (std::size_t k = 0; k < array(*wds, ww).size(); ++k) {
        auto wk = sub(ww, k);
        const Json &wd = (*wds)[k];
        Widget x;
        x.name = strAt(wd, "name", wk);
        if (auto e = optionalMember(wd, "event", wk))
          x.event = str(*e, sub(wk, "event"));
        if (auto e = optionalMember(wd, "enabled", wk))
          x.enabled = boolean(*e, sub(wk, "enabled"));
        w.widgets.push_back(std::move(x));
      }
    }
    a.windows.push_back(std::move(w));
  }
  if (auto ms = optionalMember(j, "methods", "")) {
    for (std::size_t i = 0; i < array(*ms, "methods").size(); ++i) {
      auto where = sub("methods", i);
      const Json &m = (*ms)[i];
      a.methods.push_back(
          {strAt(m, "id", where), blockFrom(member(m, "body", where), sub(where, "body"))});
    }
  }
  if (auto h = optionalMember(j, "handlers", ""))
    for (const auto &[event, method] : object(*h, "handlers").items())
      a.handlers.emplace(event, str(method, sub("handlers", event)));
  if (auto s = optionalMember(j, "settings", ""))
    a.settings = strings(*s, "settings");
  if (auto l = optionalMember(j, "onLaunch", ""))
    a.onLaunch = str(*l, "onLaunch");
  return a;
}

SequenceRecord sequenceFromJson(const Json &j) {
  checkHeader(j, "sequence");
  SequenceRecord r;
  r.id = strAt(j, "id", "");
  r.sequence.events = stringsAt(j, "events", "");
  if (auto t = optionalMember(j, "targets", ""))
    for (std::size_t i = 0; i < array(*t, "targets").size(); ++i)
      r.sequence.targets.push_back(count((*t)[i], sub("targets", i)));
  auto origin = optionalMember(j, "origin", "");
  if (!origin || str(*origin, "origin") == "blackbox")
    r.origin = Origin::Blackbox;
  else if (str(*origin, "origin") == "greybox")
    r.origin = Origin::Greybox;
  else
    bad("origin", "expected \"blackbox\" or \"greybox\"");
  if (auto a = optionalMember(j, "abstract", ""))
    r.abstract = strings(*a, "abstract");
  if (auto s = optionalMember(j, "splitOf", ""))
    r.splitOf = str(*s, "splitOf");
  for (auto t : r.sequence.targets)
    if (t >= r.sequence.events.size())
      bad("targets", "position " + std::to_string(t) + " is past the end of the sequence");
  return r;
}

TestReport reportFromJson(const Json &j) {
  checkHeader(j, "report");
  TestReport r;
  r.application = strAt(j, "application", "");
  const Json &s = member(j, "summary", "");
  auto n = [&](const char *key) { return count(member(s, key, "summary"), sub("summary", key)); };
  auto x = [&](const char *key) { return number(member(s, key, "summary"), sub("summary", key)); };
  r.passed = n("passed");
  r.failed = n("failed");
  r.broken = n("broken");
  r.statements = n("statements");
  r.statementsCovered = n("statementsCovered");
  r.statementCoverage = x("statementCoverage");
  r.branches = n("branches");
  r.branchesCovered = n("branchesCovered");
  r.branchCoverage = x("branchCoverage");
  r.handlers = n("handlers");
  r.handlersCovered = n("handlersCovered");
  r.handlerCoverage = x("handlerCoverage");
  if (auto t = optionalMember(s, "execSeconds", "summary"))
    r.seconds = number(*t, "summary.execSeconds");
  const Json &results = array(member(j, "results", ""), "results");
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto where = sub("results", i);
    const Json &t = results[i];
    TestResult tr;
    tr.id = strAt(t, "id", where);
    tr.events = stringsAt(t, "events", where);
    auto v = strAt(t, "verdict", where);
    if (v == "passed")
      tr.verdict.kind = VerdictKind::Passed;
    else if (v == "failed")
      tr.verdict.kind = VerdictKind::Failed;
    else if (v == "broken")
      tr.verdict.kind = VerdictKind::Broken;
    else
      bad(sub(where, "verdict"), "unknown verdict \"" + v + "\"");
    if (auto b = optionalMember(t, "brokenAt", where))
      tr.verdict.brokenAt = count(*b, sub(where, "brokenAt"));
    if (auto c = optionalMember(t, "crash", where))
      tr.verdict.crash = crashFrom(*c, sub(where, "crash"));
    if (auto f = optionalMember(t, "eventsFired", where))
      tr.eventsFired = count(*f, sub(where, "eventsFired"));
    if (auto sec = optionalMember(t, "seconds", where))
      tr.seconds = number(*sec, sub(where, "seconds"));
    r.results.push_back(std::move(tr));
  }
  if (r.passed + r.failed + r.broken != r.results.size())
    bad("summary", "verdict counts do not add up to the number of results");
  return r;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

std::string readTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw FileError(path.string(), "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void writeTextFile(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw FileError(path.string(), "cannot open file for writing");
  out << text;
  if (!out.flush())
    throw FileError(path.string(), "write failed");
}

namespace {

std::string lineColumn(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

Json readJsonFile(const std::filesystem::path &path) {
  auto text = readTextFile(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw FileError(path.string(), lineColumn(text, e.byte) + ": invalid JSON");
  }
}

Efg loadEfg(const std::filesystem::path &path) {
  return withFile(path, [](const Json &j) { return efgFromJson(j); });
}

Edg loadEdg(const std::filesystem::path &path) {
  return withFile(path, [](const Json &j) { return edgFromJson(j); });
}

ProgramModel loadProgram(const std::filesystem::path &path) {
  return withFile(path, [](const Json &j) { return programFromJson(j); });
}

AppModel loadAppModel(const std::filesystem::path &path) {
  return withFile(path, [](const Json &j) { return AppModel(appSpecFromJson(j)); });
}

TestReport loadReport(const std::filesystem::path &path) {
  return withFile(path, [](const Json &j) { return reportFromJson(j); });
}

std::string sequencesToJsonl(const std::vector<SequenceRecord> &records) {
  std::string out;
  for (const auto &r : records) {
    out += toJson(r).dump();
    out += '\n';
  }
  return out;
}

std::vector<SequenceRecord> sequencesFromJsonl(const std::string &text) {
  std::vector<SequenceRecord> out;
  std::istringstream in(text);
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    auto where = "line " + std::to_string(n);
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      bad(where, "column " + std::to_string(e.byte) + ": invalid JSON");
    }
    try {
      out.push_back(sequenceFromJson(j));
    } catch (const Error &e) {
      bad(where, e.what());
    }
  }
  return out;
}

std::vector<SequenceRecord> loadSequences(const std::filesystem::path &path) {
  auto text = readTextFile(path);
  try {
    return sequencesFromJsonl(text);
  } catch (const Error &e) {
    throw FileError(path.string(), e.what());
  }
}

} // namespace greybox
