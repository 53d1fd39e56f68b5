#pragma once

// End-to-end run: rip, EFG, EDG, generation and replay, with every
// intermediate artifact written to one output directory.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "greybox/replayer.hpp"
#include "greybox/seqgen.hpp"

namespace greybox {

struct RunManifest {
  std::filesystem::path app;
  /// Program IR; extracted from the app model's handlers when absent.
  std::optional<std::filesystem::path> program;
  std::filesystem::path outDir;
  GenConfig config;
  /// Reserved; every stage is deterministic.
  std::uint64_t seed = 0;
  unsigned parallelism = 1;
};

/// Relative paths are resolved against the manifest's directory. `config`
/// is a preset letter or an object with mode, len and top.
RunManifest loadManifest(const std::filesystem::path &path);

struct PipelineResult {
  std::size_t events = 0;
  std::size_t flowEdges = 0;
  std::size_t dependencyEdges = 0;
  GenerationResult generation;
  TestReport report;
  std::vector<std::string> warnings;
  double genSeconds = 0;
};

/// Writes structure.json, efg.json, edg.json (grey-box only),
/// sequences.jsonl, report.json and report.txt. The files do not contain
/// timings, so identical inputs give identical files.
PipelineResult runPipeline(const RunManifest &m);

} // namespace greybox
