#include "greybox/pipeline.hpp"

#include <chrono>

#include "greybox/classdb.hpp"
#include "greybox/error.hpp"
#include "greybox/ripper.hpp"
#include "greybox/serialization.hpp"

namespace greybox {

namespace {

GenConfig configFrom(const Json &j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s.size() != 1)
      throw Error("config: expected a preset letter A..F");
    return GenConfig::preset(s[0]);
  }
  if (!j.is_object())
    throw Error("config: expected a preset letter or an object");
  GenConfig c;
  auto mode = j.value("mode", std::string("blackbox"));
  if (mode == "blackbox")
    c.mode = GenMode::Blackbox;
  else if (mode == "greybox")
    c.mode = GenMode::Greybox;
  else
    throw Error("config.mode: expected \"blackbox\" or \"greybox\"");
  c.len = j.value("len", std::size_t{1});
  if (j.contains("top") && !j["top"].is_null())
    c.top = j["top"].get<std::size_t>();
  c.validate();
  return c;
}

} // namespace

RunManifest loadManifest(const std::filesystem::path &path) {
  Json j = readJsonFile(path);
  auto base = path.parent_path();
  auto resolve = [&](const std::string &p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  try {
    if (!j.is_object())
      throw Error("expected an object");
    RunManifest m;
    if (!j.contains("app") || !j["app"].is_string())
      throw Error("missing \"app\"");
    m.app = resolve(j["app"].get<std::string>());
    if (j.contains("program") && j["program"].is_string())
      m.program = resolve(j["program"].get<std::string>());
    m.outDir = resolve(j.value("out", std::string("out")));
    m.config = configFrom(j.contains("config") ? j["config"] : Json("A"));
    m.seed = j.value("seed", std::uint64_t{0});
    m.parallelism = j.value("parallelism", 1u);
    if (m.parallelism == 0)
      throw Error("parallelism must be at least 1");
    if (!std::filesystem::exists(m.app))
      throw Error("app model " + m.app.string() + " does not exist");
    if (m.program && !std::filesystem::exists(*m.program))
      throw Error("program IR " + m.program->string() + " does not exist");
    return m;
  } catch (const FileError &) {
    throw;
  } catch (const Error &e) {
    throw FileError(path.string(), e.what());
  } catch (const nlohmann::json::exception &e) {
    throw FileError(path.string(), e.what());
  }
}

PipelineResult runPipeline(const RunManifest &m) {
  PipelineResult out;
  AppModel app = loadAppModel(m.app);
  std::filesystem::create_directories(m.outDir);

  auto structure = rip(app);
  writeTextFile(m.outDir / "structure.json", dump(toJson(structure)));
  Efg efg = buildEfgFromStructure(structure);
  writeTextFile(m.outDir / "efg.json", dump(toJson(efg)));
  out.events = efg.size();
  out.flowEdges = efg.edgeCount();
  for (const auto &d : structure.diagnostics)
    out.warnings.push_back(d);

  std::optional<Edg> edg;
  if (m.config.mode == GenMode::Greybox) {
    ProgramModel program = m.program ? loadProgram(*m.program) : extractProgramModel(app);
    auto built = buildEdg(program, efg);
    out.warnings.insert(out.warnings.end(), built.warnings.begin(), built.warnings.end());
    edg = std::move(built.edg);
    writeTextFile(m.outDir / "edg.json", dump(toJson(*edg)));
    out.dependencyEdges = edg->edgeCount();
  }

  auto t0 = std::chrono::steady_clock::now();
  out.generation = generateSequences(efg, edg ? &*edg : nullptr, m.config);
  out.genSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  writeTextFile(m.outDir / "sequences.jsonl", sequencesToJsonl(out.generation.records));

  out.report = runSuite(app, testCasesFromRecords(out.generation.records), m.parallelism);
  writeTextFile(m.outDir / "report.json", dump(toJson(out.report, false)));
  writeTextFile(m.outDir / "report.txt", formatTable(out.report, std::nullopt, std::nullopt));
  return out;
}

} // namespace greybox
