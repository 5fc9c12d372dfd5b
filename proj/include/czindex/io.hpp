#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "czindex/forms.hpp"
#include "czindex/ham.hpp"
#include "czindex/maslov.hpp"
#include "czindex/meta.hpp"
#include "czindex/sympl.hpp"

namespace czindex {

using Json = nlohmann::json;

/// All documents carry {"schemaVersion": 1, "n": ...}. Structural validation
/// happens before any numeric validation; SchemaError carries the JSON
/// pointer of the offending field.

Json matrixToJson(int n, const Matrix& m);
SymplecticMatrix parseMatrixDoc(const Json& doc);

Json pathToJson(const SymplecticPath& path);
SymplecticPath parsePathDoc(const Json& doc);

Json lagrangianToJson(const LagrangianFrame& frame);
LagrangianFrame parseLagrangianDoc(const Json& doc);

/// Frame document parsed structurally only ({n, 2n x n columns}); the caller
/// chooses the space (needed for doubled-space frames, whose isotropy is
/// checked against the difference form, not the standard one).
struct RawFrame {
  int n = 0;
  Matrix columns;
};
RawFrame parseLagrangianDocRaw(const Json& doc);

/// Sampled Lagrangian paths ({"samples":[{"t","frame"}]}); the companion of
/// the matrix-path document for curves that are not graphs.
Json lagrangianPathToJson(const LagrangianPath& path);
LagrangianPath parseLagrangianPathDoc(const Json& doc);

/// True when the document's samples carry "frame" entries rather than
/// "matrix" entries.
bool isLagrangianPathDoc(const Json& doc);

Json elementToJson(const MetaplecticElement& e);
MetaplecticElement parseElementDoc(const Json& doc);

Json systemToJson(const LinearHamiltonianSystem& system, const Json& hessianSpec);
LinearHamiltonianSystem parseSystemDoc(const Json& doc);

Json loadJsonFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& content);

/// Uniform run result: command echo, seed, convention, tolerances, results
/// (indices as exact rational strings), per-check pass/fail lines and the
/// calibration constant with its provenance vector. Serialized with sorted
/// keys so identical runs are byte-identical.
struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  SignConvention convention = SignConvention::Paper;
  ToleranceContext tolerance;
  Json results = Json::object();
  std::vector<CheckLine> checks;
  bool includeCalibration = true;

  bool allChecksPass() const;
  Json toJson(const ToleranceContext& tol = {}) const;
  std::string toText(const ToleranceContext& tol = {}) const;
};

Json calibrationToJson(const CalibrationReport& report);

}  // namespace czindex
