#pragma once

// JSON encodings of every artifact. Readers throw Error with the offending
// location; the file-level helpers wrap that in FileError.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "greybox/app_model.hpp"
#include "greybox/classdb.hpp"
#include "greybox/graph.hpp"
#include "greybox/replayer.hpp"
#include "greybox/ripper.hpp"
#include "greybox/seqgen.hpp"

namespace greybox {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json toJson(const Efg &g);
Json toJson(const Edg &g);
Json toJson(const ProgramModel &p);
Json toJson(const GuiStructure &gs);
Json toJson(const SequenceRecord &r);
/// Wall times are included only when `timing` is set.
Json toJson(const TestReport &r, bool timing);

Efg efgFromJson(const Json &j);
Edg edgFromJson(const Json &j);
ProgramModel programFromJson(const Json &j);
AppSpec appSpecFromJson(const Json &j);
SequenceRecord sequenceFromJson(const Json &j);
TestReport reportFromJson(const Json &j);

/// Pretty-printed with a trailing newline.
std::string dump(const Json &j);

std::string readTextFile(const std::filesystem::path &path);
void writeTextFile(const std::filesystem::path &path, const std::string &text);
/// Syntax errors are reported with line and column.
Json readJsonFile(const std::filesystem::path &path);

Efg loadEfg(const std::filesystem::path &path);
Edg loadEdg(const std::filesystem::path &path);
ProgramModel loadProgram(const std::filesystem::path &path);
AppModel loadAppModel(const std::filesystem::path &path);
TestReport loadReport(const std::filesystem::path &path);

/// One JSON object per line.
std::string sequencesToJsonl(const std::vector<SequenceRecord> &records);
std::vector<SequenceRecord> sequencesFromJsonl(const std::string &text);
std::vector<SequenceRecord> loadSequences(const std::filesystem::path &path);

} // namespace greybox
