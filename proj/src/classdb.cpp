#include "greybox/classdb.hpp"

#include <algorithm>

#include "greybox/error.hpp"

namespace greybox {

std::string qualify(std::string_view cls, std::string_view member) {
  std::string out(cls);
  out += '.';
  out += member;
  return out;
}

ClassDb::ClassDb(const ProgramModel &p) {
  std::set<std::string, std::less<>> classNames;
  for (const auto &cls : p.classes) {
    if (cls.name.empty())
      throw Error("class with empty name");
    if (!classNames.insert(cls.name).second)
      throw Error("duplicate class '" + cls.name + "'");
    std::set<std::string_view> local;
    for (const auto &f : cls.fields) {
      if (!local.insert(f).second)
        throw Error("duplicate field '" + qualify(cls.name, f) + "'");
      fields_.insert(qualify(cls.name, f));
    }
    std::set<std::string_view> methodNames;
    for (const auto &m : cls.methods) {
      if (!methodNames.insert(m.name).second)
        throw Error("duplicate method '" + qualify(cls.name, m.name) + "'");
      MethodId id = qualify(cls.name, m.name);
      methodIndex_.emplace(id, methods_.size());
      methods_.push_back({id, m.reads, m.writes, m.calls, {}});
    }
  }
  classCount_ = p.classes.size();

  for (auto &m : methods_) {
    for (const auto &f : m.reads)
      if (!fields_.contains(f))
        throw Error("method '" + m.id + "' reads undeclared field '" + f + "'");
    for (const auto &f : m.writes)
      if (!fields_.contains(f))
        throw Error("method '" + m.id + "' writes undeclared field '" + f + "'");
    for (const auto &c : m.calls) {
      auto it = methodIndex_.find(c);
      if (it == methodIndex_.end())
        throw Error("method '" + m.id + "' calls undeclared method '" + c + "'");
      m.callees.push_back(it->second);
    }
  }
  for (const auto &[event, method] : p.bindings) {
    if (!methodIndex_.contains(method))
      throw Error("event '" + event + "' is bound to undeclared method '" + method + "'");
    bindings_.emplace(event, method);
  }
}

bool ClassDb::hasMethod(std::string_view id) const {
  return methodIndex_.contains(std::string(id));
}

bool ClassDb::hasField(std::string_view id) const { return fields_.contains(id); }

bool ClassDb::isBound(std::string_view event) const { return bindings_.contains(event); }

const MethodId &ClassDb::handlerOf(std::string_view event) const {
  auto it = bindings_.find(event);
  if (it == bindings_.end())
    throw Error("event '" + std::string(event) + "' has no handler binding");
  return it->second;
}

const ClassDb::MethodEntry &ClassDb::method(std::string_view id) const {
  auto it = methodIndex_.find(std::string(id));
  if (it == methodIndex_.end())
    throw Error("unknown method '" + std::string(id) + "'");
  return methods_[it->second];
}

const std::set<FieldId> &ClassDb::reads(std::string_view m) const { return method(m).reads; }
const std::set<FieldId> &ClassDb::writes(std::string_view m) const { return method(m).writes; }
const std::set<MethodId> &ClassDb::calls(std::string_view m) const { return method(m).calls; }

std::set<MethodId> ClassDb::callClosure(std::string_view root) const {
  std::vector<bool> visited(methods_.size(), false);
  std::vector<std::size_t> stack{methodIndex_.at(method(root).id)};
  std::set<MethodId> out;
  while (!stack.empty()) {
    auto m = stack.back();
    stack.pop_back();
    if (visited[m])
      continue;
    visited[m] = true;
    out.insert(methods_[m].id);
    for (auto c : methods_[m].callees)
      if (!visited[c])
        stack.push_back(c);
  }
  return out;
}

ClassDb buildClassDb(const ProgramModel &p) { return ClassDb(p); }

std::set<FieldId> getFieldsWritten(std::string_view e, const ClassDb &db) {
  std::set<FieldId> out;
  for (const auto &m : db.callClosure(db.handlerOf(e)))
    out.insert(db.writes(m).begin(), db.writes(m).end());
  return out;
}

std::set<FieldId> getFieldsRead(std::string_view e, const ClassDb &db) {
  std::set<FieldId> out;
  for (const auto &m : db.callClosure(db.handlerOf(e)))
    out.insert(db.reads(m).begin(), db.reads(m).end());
  return out;
}

EdgBuild buildEdg(const ClassDb &db, const Efg &efg) {
  const auto &events = efg.events().ids();
  std::vector<std::set<FieldId>> written(events.size()), read(events.size());
  EdgBuild out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (!db.isBound(events[i])) {
      out.warnings.push_back("event '" + events[i] + "' has no handler binding");
      continue;
    }
    written[i] = getFieldsWritten(events[i], db);
    read[i] = getFieldsRead(events[i], db);
  }

  std::vector<DependencyEdge> edges;
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = 0; j < events.size(); ++j) {
      std::size_t common = 0;
      for (const auto &f : written[i])
        common += read[j].contains(f) ? 1 : 0;
      if (common > 0)
        edges.push_back({events[i], events[j], static_cast<unsigned>(common)});
    }
  }
  out.edg = Edg(events, std::move(edges));
  return out;
}

EdgBuild buildEdg(const ProgramModel &p, const Efg &efg) {
  return buildEdg(ClassDb(p), efg);
}

} // namespace greybox
