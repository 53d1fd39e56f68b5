// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: acceptance [corpus-dir]

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "greybox/classdb.hpp"
#include "greybox/graph.hpp"
#include "greybox/pipeline.hpp"
#include "greybox/replayer.hpp"
#include "greybox/ripper.hpp"
#include "greybox/seqgen.hpp"
#include "greybox/serialization.hpp"

#include "../support/oracles.hpp"

namespace fs = std::filesystem;
using namespace greybox;

namespace {

fs::path corpus = GREYBOX_CORPUS_DIR;

const std::vector<std::string> kModels{"example-app", "fig3-calibrated", "listing1-literal",
                                       "jabref-scenario", "rachota-scenario"};

using Seq = std::vector<EventId>;
using SeqSet = std::set<Seq>;

struct Loaded {
  AppModel app;
  Efg efg;
  ProgramModel program;
  Edg edg;
};

Loaded load(const std::string &name) {
  AppModel app = loadAppModel(corpus / name / "app.json");
  Efg efg = buildEfgFromStructure(rip(app));
  ProgramModel program = loadProgram(corpus / name / "program.json");
  Edg edg = buildEdg(program, efg).edg;
  return {std::move(app), std::move(efg), std::move(program), std::move(edg)};
}

GenerationResult generate(const Loaded &l, char preset) {
  return generateSequences(l.efg, &l.edg, GenConfig::preset(preset));
}

SeqSet eventSets(const GenerationResult &g) {
  SeqSet out;
  for (const auto &r : g.records)
    out.insert(r.sequence.events);
  return out;
}

std::string show(const Seq &s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + s[i];
  return out + ">";
}

std::string show(const SeqSet &s) {
  std::string out = "{";
  bool first = true;
  for (const auto &x : s) {
    out += (first ? "" : " ") + show(x);
    first = false;
  }
  return out + "}";
}

TestReport replay(const Loaded &l, const GenerationResult &g, unsigned parallelism = 1) {
  return runSuite(l.app, testCasesFromRecords(g.records), parallelism);
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

Outcome ac1() {
  auto l = load("example-app");
  auto g = generate(l, 'B');
  SeqSet expected{{"e1", "e1"}, {"e1", "e2"}, {"e1", "e3"}, {"e2", "e1"},
                  {"e2", "e2"}, {"e2", "e3"}, {"e3", "e4"}, {"e3", "e4", "e1"},
                  {"e3", "e4", "e2"}, {"e3", "e4", "e3"}};
  if (g.records.size() != 10 || eventSets(g) != expected)
    return fail("got " + show(eventSets(g)));
  for (const auto &r : g.records) {
    bool reached = r.sequence.events.size() == 3;
    std::vector<std::size_t> targets = reached ? std::vector<std::size_t>{1, 2}
                                               : std::vector<std::size_t>{0, 1};
    if (r.sequence.targets != targets)
      return fail("wrong targets for " + show(r.sequence.events));
  }
  return {};
}

Outcome ac2() {
  auto l = load("example-app");
  auto g = generate(l, 'A');
  SeqSet expected{{"e1"}, {"e2"}, {"e3"}, {"e3", "e4"}};
  if (g.records.size() != 4 || eventSets(g) != expected)
    return fail("got " + show(eventSets(g)));
  return {};
}

Outcome ac3() {
  auto l = load("fig3-calibrated");
  std::set<std::tuple<EventId, unsigned, EventId>> got, expected{
                                                           {"e1", 1, "e3"},
                                                           {"e2", 1, "e2"},
                                                           {"e4", 1, "e2"},
                                                       };
  for (const auto &e : l.edg.edges())
    got.insert({e.from, e.weight, e.to});
  if (got != expected || l.edg.edges().size() != 3)
    return fail("got " + std::to_string(got.size()) + " edges");
  if (dump(toJson(l.edg)) != dump(toJson(loadEdg(corpus / "fig3-calibrated/golden/edg.json"))))
    return fail("output differs from the bundled golden EDG");
  return {};
}

Outcome ac4() {
  auto l = load("example-app");
  auto d = generate(l, 'D');
  auto b = generate(l, 'B');
  SeqSet expected{{"e1", "e3"}, {"e2", "e2"}, {"e3"}, {"e3", "e4", "e2"}};
  if (eventSets(d) != expected || d.records.size() != 4)
    return fail("got " + show(eventSets(d)));
  if (!(d.records.size() < b.records.size()))
    return fail("config D is not smaller than config B");
  return {};
}

Outcome ac5() {
  auto l = load("example-app");
  auto report = replay(l, generate(l, 'D'));
  std::vector<const TestResult *> failed;
  for (const auto &r : report.results)
    if (r.verdict.kind == VerdictKind::Failed)
      failed.push_back(&r);
  if (failed.size() != 1)
    return fail(std::to_string(failed.size()) + " failed verdicts");
  const auto &f = *failed[0];
  const auto &c = *f.verdict.crash;
  if (f.events != Seq{"e3", "e4", "e2"})
    return fail("failure at " + show(f.events));
  if (c.kind != CrashKind::NullDeref || c.position != std::optional<std::size_t>(2) ||
      c.event != std::optional<EventId>("e2"))
    return fail("unexpected crash record");
  return {};
}

Outcome ac6() {
  auto l = load("jabref-scenario");
  std::vector<AbstractSequence> abs{{{"Close database", "OK"}}};
  auto conv = toExecutable(l.efg, abs);
  Seq expected{"Manage content selectors", "Close database", "Manage content selectors", "OK"};
  if (conv.converted.size() != 1 || conv.converted[0].parts.size() != 1 ||
      conv.converted[0].parts[0].events != expected)
    return fail("conversion mismatch");
  auto run = runTestCase(l.app, {"bug", {conv.converted[0].parts[0]}});
  if (run.verdict.kind != VerdictKind::Failed || run.verdict.crash->kind != CrashKind::ArrayOob)
    return fail("converted sequence did not fail with array-oob");
  auto bb = replay(l, generate(l, 'B'));
  if (bb.failed != 0)
    return fail("black-box config B found " + std::to_string(bb.failed) + " failures");
  return {};
}

Outcome ac7() {
  auto l = load("rachota-scenario");
  const std::string SS = "System settings", AT = "Add task";
  std::set<std::tuple<EventId, EventId, unsigned>> expected{
      {SS, AT, 7},       {AT, SS, 5},   {AT, "OK2", 19}, {"OK2", AT, 4},
      {"OK2", "OK1", 6}, {"OK1", "OK2", 6}, {"OK1", SS, 6}, {SS, "OK1", 25},
      {SS, "OK2", 6},    {"OK2", SS, 6}, {AT, "OK1", 4},  {"OK1", AT, 4}};
  std::set<std::tuple<EventId, EventId, unsigned>> got;
  for (const auto &e : l.edg.edges())
    got.insert({e.from, e.to, e.weight});
  if (got != expected)
    return fail("EDG weights differ (" + std::to_string(got.size()) + " edges)");

  auto top = genAbstractFrom(l.edg, l.edg.events().indexOf("OK2"), 2, 2);
  SeqSet topSet;
  for (const auto &a : top)
    topSet.insert(a.events);
  if (topSet != SeqSet{{"OK2", SS}, {"OK2", "OK1"}})
    return fail("top-2 from OK2: " + show(topSet));

  std::vector<AbstractSequence> abs{{{"OK2", "OK1"}}};
  auto conv = toExecutable(l.efg, abs);
  Seq expectedSeq{SS, AT, "OK2", SS, "OK1"};
  if (conv.converted.size() != 1 || conv.converted[0].parts.size() != 1 ||
      conv.converted[0].parts[0].events != expectedSeq)
    return fail("conversion mismatch");
  auto run = runTestCase(l.app, {"bug", {conv.converted[0].parts[0]}});
  if (run.verdict.kind != VerdictKind::Failed || run.verdict.crash->phase != CrashPhase::Restart)
    return fail("converted sequence did not fail at restart");
  return {};
}

Outcome ac8() {
  std::mt19937 rng(20240611);
  std::size_t edgChecks = 0, pathChecks = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Efg efg = oracle::randomEfg(rng, 8);
    auto program = oracle::randomProgram(rng, efg.events().ids());
    auto built = buildEdg(program, efg).edg;
    auto expected = oracle::dependencyWeights(program, efg.events().ids());
    oracle::WeightMap got;
    for (const auto &e : built.edges())
      got[{e.from, e.to}] = e.weight;
    if (got != expected)
      return fail("EDG mismatch in trial " + std::to_string(trial));
    ++edgChecks;

    for (const Edg &d : {built, oracle::randomEdg(rng, efg.events().ids())}) {
      for (std::size_t len = 1; len <= 4; ++len) {
        SeqSet mine;
        for (const auto &a : genAbstract(d, len, std::nullopt))
          if (!mine.insert(a.events).second)
            return fail("duplicate abstract sequence in trial " + std::to_string(trial));
        if (mine != oracle::maximalPaths(d.events().ids(), d.edges(), len))
          return fail("abstract paths differ in trial " + std::to_string(trial) + ", len " +
                      std::to_string(len));
        ++pathChecks;
      }
    }
  }
  return {true, std::to_string(edgChecks) + " EDGs, " + std::to_string(pathChecks) +
                    " path enumerations"};
}

Outcome ac9() {
  std::mt19937 rng(7);
  std::size_t checked = 0;
  auto check = [&](const Efg &g, const ExecutableSequence &s) {
    ++checked;
    return isExecutable(s.events, g) && oracle::executable(s.events, g.initials(), g.edges());
  };
  for (int trial = 0; trial < 300; ++trial) {
    Efg g = oracle::randomEfg(rng, 8);
    for (std::size_t len = 1; len <= 3; ++len) {
      for (const auto &s : genBlackbox(g, len).sequences)
        if (!check(g, s))
          return fail("black-box sequence not executable in trial " + std::to_string(trial));
    }
    Edg d = oracle::randomEdg(rng, g.events().ids());
    for (std::optional<std::size_t> top : {std::optional<std::size_t>{}, std::optional<std::size_t>{3}}) {
      auto r = generateSequences(g, &d, {GenMode::Greybox, 3, top});
      for (const auto &rec : r.records)
        if (!check(g, rec.sequence))
          return fail("grey-box sequence not executable in trial " + std::to_string(trial));
    }
  }
  if (checked < 1000)
    return fail("only " + std::to_string(checked) + " sequences generated");
  return {true, std::to_string(checked) + " sequences"};
}

fs::path scratch() {
  auto p = fs::temp_directory_path() / ("greybox-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

Outcome ac10() {
  auto root = scratch();
  for (const auto &name : kModels) {
    for (char preset : {'B', 'D', 'E'}) {
      std::vector<fs::path> dirs;
      for (int run = 0; run < 2; ++run) {
        RunManifest m;
        m.app = corpus / name / "app.json";
        m.program = corpus / name / "program.json";
        m.outDir = root / (name + "-" + preset + "-" + std::to_string(run));
        m.config = GenConfig::preset(preset);
        m.parallelism = run == 0 ? 1 : 8;
        runPipeline(m);
        dirs.push_back(m.outDir);
      }
      for (const char *file : {"structure.json", "efg.json", "edg.json", "sequences.jsonl",
                               "report.json", "report.txt"}) {
        bool e0 = fs::exists(dirs[0] / file), e1 = fs::exists(dirs[1] / file);
        if (e0 != e1 || (e0 && readTextFile(dirs[0] / file) != readTextFile(dirs[1] / file)))
          return fail(name + " config " + preset + ": " + file + " differs between runs");
      }
    }
    auto l = load(name);
    auto g = generate(l, 'D');
    if (dump(toJson(replay(l, g, 1), false)) != dump(toJson(replay(l, g, 8), false)))
      return fail(name + ": report differs between parallelism 1 and 8");
  }
  fs::remove_all(root);
  return {};
}

Outcome ac11() {
  std::ostringstream detail;
  for (const auto &name : kModels) {
    auto l = load(name);
    auto coverage = [&](char preset) {
      Coverage c(l.app);
      for (const auto &tc : testCasesFromRecords(generate(l, preset).records))
        c.merge(runTestCase(l.app, tc).coverage);
      return c;
    };
    auto a = coverage('A'), d = coverage('D');
    for (const auto &[event, method] : l.app.handlers()) {
      auto i = *l.app.methodIndex(method);
      if (a.methods[i] > 0 && d.methods[i] == 0)
        return fail(name + ": handler " + method + " covered by A but not by D");
    }
    if (d.handlersCovered(l.app) < a.handlersCovered(l.app))
      return fail(name + ": handler coverage of D below A");

    auto r1 = replay(l, generate(l, 'D'));
    auto r2 = replay(l, generate(l, 'D'));
    for (double x : {r1.statementCoverage, r1.branchCoverage, r1.handlerCoverage})
      if (std::abs(x * 1e4 - std::round(x * 1e4)) > 1e-6)
        return fail(name + ": coverage not rounded to 4 decimals");
    if (r1.statementCoverage != r2.statementCoverage || r1.branchCoverage != r2.branchCoverage)
      return fail(name + ": coverage differs between runs");
    if (detail.tellp() > 0)
      detail << ", ";
    detail << name << " branch " << r1.branchCoverage;
  }
  return {true, detail.str()};
}

} // namespace

int main(int argc, char **argv) {
  if (argc > 1)
    corpus = argv[1];
  struct Criterion {
    const char *id;
    const char *title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"AC1", "example-app config B emits the ten length-2 sequences", ac1},
      {"AC2", "example-app config A emits four sequences", ac2},
      {"AC3", "fig3-calibrated EDG has exactly three weight-1 edges", ac3},
      {"AC4", "example-app config D emits four sequences, fewer than config B", ac4},
      {"AC5", "config D replay on example-app fails once with null-deref at e2", ac5},
      {"AC6", "jabref-scenario: grey-box finds the array-oob, config B does not", ac6},
      {"AC7", "rachota-scenario: weights, top-2, conversion and restart crash", ac7},
      {"AC8", "buildEdg and genAbstract agree with brute-force oracles", ac8},
      {"AC9", "every generated sequence is executable", ac9},
      {"AC10", "pipeline outputs are byte-identical across runs and parallelism", ac10},
      {"AC11", "config D handler coverage dominates config A; coverage stable", ac11},
  };
  int failures = 0;
  for (const auto &c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.id << " " << c.title;
    if (!o.detail.empty())
      std::cout << " (" << o.detail << ")";
    std::cout << "\n";
    failures += o.ok ? 0 : 1;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures ? 1 : 0;
}
