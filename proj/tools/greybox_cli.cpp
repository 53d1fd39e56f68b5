// greybox: command-line driver for ripping, EDG construction, sequence
// generation and replay.
//
// Exit codes: 0 success, 1 failures found, 2 usage or I/O error.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "greybox/classdb.hpp"
#include "greybox/error.hpp"
#include "greybox/pipeline.hpp"
#include "greybox/replayer.hpp"
#include "greybox/ripper.hpp"
#include "greybox/seqgen.hpp"
#include "greybox/serialization.hpp"

namespace fs = std::filesystem;
using namespace greybox;

namespace {

constexpr int kOk = 0;
constexpr int kFailures = 1;
constexpr int kUsage = 2;

void warn(const std::string &msg) { std::cerr << "warning: " << msg << "\n"; }

struct RipArgs {
  std::string model, efg, structure, dot;
};

int cmdRip(const RipArgs &a) {
  AppModel app = loadAppModel(a.model);
  auto gs = rip(app);
  for (const auto &d : gs.diagnostics)
    warn(d);
  Efg efg = buildEfgFromStructure(gs);
  writeTextFile(a.efg, dump(toJson(efg)));
  if (!a.structure.empty())
    writeTextFile(a.structure, dump(toJson(gs)));
  if (!a.dot.empty())
    writeTextFile(a.dot, exportDot(efg));
  std::cout << "ripped " << gs.windows.size() << " windows, " << efg.size() << " events, "
            << efg.edgeCount() << " edges\n";
  return kOk;
}

struct EdgArgs {
  std::string program, efg, out, dot;
};

int cmdEdg(const EdgArgs &a) {
  auto program = loadProgram(a.program);
  Efg efg = loadEfg(a.efg);
  requireValid(efg);
  auto built = buildEdg(program, efg);
  for (const auto &w : built.warnings)
    warn(w);
  writeTextFile(a.out, dump(toJson(built.edg)));
  if (!a.dot.empty())
    writeTextFile(a.dot, exportDot(built.edg));
  std::cout << "EDG: " << built.edg.size() << " events, " << built.edg.edgeCount()
            << " edges\n";
  return kOk;
}

struct GenArgs {
  std::string efg, edg, out, config, mode, top;
  std::optional<std::size_t> len;
};

std::optional<std::size_t> parseTop(const std::string &s) {
  if (s == "inf" || s == "none")
    return std::nullopt;
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception &) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw Error("--top expects a positive integer or 'inf', got '" + s + "'");
  return static_cast<std::size_t>(v);
}

int cmdGen(const GenArgs &a) {
  GenConfig cfg;
  if (!a.config.empty()) {
    if (a.config.size() != 1)
      throw Error("--config expects one of A..F");
    cfg = GenConfig::preset(a.config[0]);
  } else if (a.mode.empty()) {
    throw Error("either --config or --mode is required");
  }
  if (!a.mode.empty()) {
    if (a.mode == "blackbox")
      cfg.mode = GenMode::Blackbox;
    else if (a.mode == "greybox")
      cfg.mode = GenMode::Greybox;
    else
      throw Error("--mode expects blackbox or greybox");
  }
  if (a.len)
    cfg.len = *a.len;
  if (!a.top.empty())
    cfg.top = parseTop(a.top);
  cfg.validate();

  Efg efg = loadEfg(a.efg);
  std::optional<Edg> edg;
  if (cfg.mode == GenMode::Greybox) {
    if (a.edg.empty())
      throw Error("grey-box generation requires --edg");
    edg = loadEdg(a.edg);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto result = generateSequences(efg, edg ? &*edg : nullptr, cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto &d : result.diagnostics)
    warn(d);
  writeTextFile(a.out, sequencesToJsonl(result.records));
  std::cout << cfg.describe() << ": " << result.records.size() << " sequences";
  if (cfg.mode == GenMode::Greybox)
    std::cout << " from " << result.abstractCount << " abstract";
  std::printf(" in %.3f s\n", secs);
  std::cout.flush();
  return kOk;
}

struct ReplayArgs {
  std::string model, sequences, out, table;
  unsigned parallel = 1;
  bool allowBroken = false;
  bool timing = false;
};

int cmdReplay(const ReplayArgs &a) {
  AppModel app = loadAppModel(a.model);
  auto records = loadSequences(a.sequences);
  auto report = runSuite(app, testCasesFromRecords(records), a.parallel);
  if (!a.out.empty())
    writeTextFile(a.out, dump(toJson(report, a.timing)));
  auto exec = a.timing ? std::optional<double>(report.seconds) : std::nullopt;
  if (!a.table.empty())
    writeTextFile(a.table, formatTable(report, std::nullopt, exec));
  for (const auto &r : report.results) {
    if (r.verdict.kind == VerdictKind::Failed) {
      const auto &c = *r.verdict.crash;
      std::cout << "FAILED " << r.id << ": " << toString(c.kind) << " in " << c.method;
      if (c.phase == CrashPhase::Restart)
        std::cout << " at restart";
      else if (c.position)
        std::cout << " at position " << *c.position;
      std::cout << " (" << c.detail << ")\n";
    } else if (r.verdict.kind == VerdictKind::Broken) {
      std::cout << "BROKEN " << r.id << " at position " << *r.verdict.brokenAt << "\n";
    }
  }
  std::cout << report.total() << " test cases: " << report.passed << " passed, " << report.failed
            << " failed, " << report.broken << " broken";
  std::printf(" in %.3f s\n", report.seconds);
  std::cout.flush();
  bool bad = report.failed > 0 || (report.broken > 0 && !a.allowBroken);
  return bad ? kFailures : kOk;
}

int cmdReport(const std::string &path, bool json) {
  auto report = loadReport(path);
  if (json)
    std::cout << dump(toJson(report, false));
  else
    std::cout << formatTable(report, std::nullopt,
                             report.seconds > 0 ? std::optional<double>(report.seconds)
                                                : std::nullopt);
  return report.failed > 0 ? kFailures : kOk;
}

int cmdExportDot(const std::string &graph, const std::string &out) {
  Json j = readJsonFile(graph);
  std::string kind = j.is_object() ? j.value("kind", std::string()) : std::string();
  std::string dot;
  if (kind == "efg")
    dot = exportDot(loadEfg(graph));
  else if (kind == "edg")
    dot = exportDot(loadEdg(graph));
  else
    throw FileError(graph, "expected a graph file with \"kind\" efg or edg");
  if (out.empty())
    std::cout << dot;
  else
    writeTextFile(out, dot);
  return kOk;
}

int cmdPipeline(const std::string &manifest) {
  auto m = loadManifest(manifest);
  auto r = runPipeline(m);
  for (const auto &w : r.warnings)
    warn(w);
  for (const auto &d : r.generation.diagnostics)
    warn(d);
  std::cout << "EFG: " << r.events << " events, " << r.flowEdges << " edges\n";
  if (m.config.mode == GenMode::Greybox)
    std::cout << "EDG: " << r.dependencyEdges << " edges\n";
  std::cout << m.config.describe() << ": " << r.generation.records.size() << " sequences";
  std::printf(" in %.3f s\n", r.genSeconds);
  std::cout << formatTable(r.report, r.genSeconds, r.report.seconds);
  std::cout.flush();
  return r.report.failed > 0 ? kFailures : kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Grey-box GUI test generation and replay"};
  app.require_subcommand(1);

  RipArgs ripArgs;
  auto *rip = app.add_subcommand("rip", "Rip an application model and build its EFG");
  rip->add_option("--model,-m", ripArgs.model, "Application model (JSON)")->required();
  rip->add_option("--efg,-o", ripArgs.efg, "EFG output file")->required();
  rip->add_option("--structure", ripArgs.structure, "GUI structure output file");
  rip->add_option("--dot", ripArgs.dot, "Also write the EFG as Graphviz DOT");

  EdgArgs edgArgs;
  auto *edg = app.add_subcommand("edg", "Build the event-dependency graph");
  edg->add_option("--program,-p", edgArgs.program, "Program IR (JSON)")->required();
  edg->add_option("--efg", edgArgs.efg, "EFG file")->required();
  edg->add_option("--out,-o", edgArgs.out, "EDG output file")->required();
  edg->add_option("--dot", edgArgs.dot, "Also write the EDG as Graphviz DOT");

  GenArgs genArgs;
  auto *gen = app.add_subcommand("gen", "Generate event sequences");
  gen->add_option("--efg", genArgs.efg, "EFG file")->required();
  gen->add_option("--edg", genArgs.edg, "EDG file (grey-box only)");
  gen->add_option("--config,-c", genArgs.config, "Preset A..F");
  gen->add_option("--mode", genArgs.mode, "blackbox or greybox");
  gen->add_option("--len", genArgs.len, "Sequence length");
  gen->add_option("--top", genArgs.top, "Abstract sequences per start event, or 'inf'");
  gen->add_option("--out,-o", genArgs.out, "Sequence output file (JSON Lines)")->required();

  ReplayArgs replayArgs;
  auto *replay = app.add_subcommand("replay", "Replay sequences against an application model");
  replay->add_option("--model,-m", replayArgs.model, "Application model (JSON)")->required();
  replay->add_option("--sequences,-s", replayArgs.sequences, "Sequence file")->required();
  replay->add_option("--out,-o", replayArgs.out, "Report output file (JSON)");
  replay->add_option("--table", replayArgs.table, "Also write a plain-text summary table");
  replay->add_option("--parallel,-j", replayArgs.parallel, "Worker threads")
      ->check(CLI::PositiveNumber);
  replay->add_flag("--allow-broken", replayArgs.allowBroken,
                   "Do not count broken sequences as failures");
  replay->add_flag("--timing", replayArgs.timing, "Include wall times in the report files");

  std::string reportPath;
  bool reportJson = false;
  auto *report = app.add_subcommand("report", "Print a summary table for a report file");
  report->add_option("report", reportPath, "Report file (JSON)")->required();
  report->add_flag("--json", reportJson, "Print normalised JSON instead of the table");

  std::string dotGraph, dotOut;
  auto *dot = app.add_subcommand("export-dot", "Convert an EFG or EDG file to Graphviz DOT");
  dot->add_option("graph", dotGraph, "EFG or EDG file")->required();
  dot->add_option("--out,-o", dotOut, "Output file (default: stdout)");

  std::string manifest;
  auto *pipeline = app.add_subcommand("pipeline", "Run rip, edg, gen and replay from a manifest");
  pipeline->add_option("manifest", manifest, "Run manifest (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*rip)
      return cmdRip(ripArgs);
    if (*edg)
      return cmdEdg(edgArgs);
    if (*gen)
      return cmdGen(genArgs);
    if (*replay)
      return cmdReplay(replayArgs);
    if (*report)
      return cmdReport(reportPath, reportJson);
    if (*dot)
      return cmdExportDot(dotGraph, dotOut);
    if (*pipeline)
      return cmdPipeline(manifest);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
