#include "czindex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace czindex {

namespace {

void requireVersion(const Json& doc, const std::string& base) {
  if (!doc.is_object()) throw SchemaError(base.empty() ? "/" : base, "document must be an object");
  if (!doc.contains("schemaVersion"))
    throw SchemaError(base + "/schemaVersion", "missing schemaVersion");
  if (!doc["schemaVersion"].is_number_integer() || doc["schemaVersion"].get<int>() != 1)
    throw SchemaError(base + "/schemaVersion", "unsupported schemaVersion (expected 1)");
}

int requireN(const Json& doc, const std::string& base) {
  if (!doc.contains("n")) throw SchemaError(base + "/n", "missing n");
  if (!doc["n"].is_number_integer() || doc["n"].get<int>() < 1)
    throw SchemaError(base + "/n", "n must be a positive integer");
  return doc["n"].get<int>();
}

double requireNumber(const Json& v, const std::string& ptr) {
  if (!v.is_number()) throw SchemaError(ptr, "expected a number");
  return v.get<double>();
}

Matrix parseMatrixField(const Json& v, int rows, int cols, const std::string& ptr) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows)
    throw SchemaError(ptr, "expected " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = v[i];
    std::string rowPtr = ptr + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw SchemaError(rowPtr, "expected " + std::to_string(cols) + " columns");
    for (int j = 0; j < cols; ++j)
      m(i, j) = requireNumber(row[j], rowPtr + "/" + std::to_string(j));
  }
  return m;
}

Json matrixField(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json matrixToJson(int n, const Matrix& m) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = n;
  doc["matrix"] = matrixField(m);
  return doc;
}

SymplecticMatrix parseMatrixDoc(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  if (!doc.contains("matrix")) throw SchemaError("/matrix", "missing matrix");
  Matrix m = parseMatrixField(doc["matrix"], 2 * n, 2 * n, "/matrix");
  try {
    return SymplecticMatrix(SymplecticSpace::standard(n), m);
  } catch (const Error& e) {
    throw SchemaError("/matrix", e.what());
  }
}

Json pathToJson(const SymplecticPath& path) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = path.space().halfDim();
  Json samples = Json::array();
  for (const auto& s : path.samples()) {
    Json entry;
    entry["t"] = s.t;
    entry["matrix"] = matrixField(s.matrix);
    samples.push_back(std::move(entry));
  }
  doc["samples"] = std::move(samples);
  return doc;
}

SymplecticPath parsePathDoc(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  if (!doc.contains("samples") || !doc["samples"].is_array() || doc["samples"].size() < 2)
    throw SchemaError("/samples", "expected an array of at least 2 samples");
  std::vector<SymplecticPath::Sample> samples;
  for (std::size_t i = 0; i < doc["samples"].size(); ++i) {
    std::string ptr = "/samples/" + std::to_string(i);
    const Json& s = doc["samples"][i];
    if (!s.is_object() || !s.contains("t") || !s.contains("matrix"))
      throw SchemaError(ptr, "sample needs t and matrix");
    samples.push_back({requireNumber(s["t"], ptr + "/t"),
                       parseMatrixField(s["matrix"], 2 * n, 2 * n, ptr + "/matrix")});
  }
  try {
    return SymplecticPath(SymplecticSpace::standard(n), std::move(samples));
  } catch (const Error& e) {
    throw SchemaError("/samples", e.what());
  }
}

Json lagrangianToJson(const LagrangianFrame& frame) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = frame.space().halfDim();
  doc["frame"] = matrixField(frame.columns());
  return doc;
}

LagrangianFrame parseLagrangianDoc(const Json& doc) {
  RawFrame raw = parseLagrangianDocRaw(doc);
  try {
    return LagrangianFrame(SymplecticSpace::standard(raw.n), raw.columns);
  } catch (const Error& e) {
    throw SchemaError("/frame", e.what());
  }
}

RawFrame parseLagrangianDocRaw(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  if (!doc.contains("frame")) throw SchemaError("/frame", "missing frame");
  return RawFrame{n, parseMatrixField(doc["frame"], 2 * n, n, "/frame")};
}

bool isLagrangianPathDoc(const Json& doc) {
  return doc.is_object() && doc.contains("samples") && doc["samples"].is_array() &&
         !doc["samples"].empty() && doc["samples"][0].is_object() &&
         doc["samples"][0].contains("frame");
}

Json lagrangianPathToJson(const LagrangianPath& path) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = path.space().halfDim();
  Json samples = Json::array();
  for (const auto& s : path.samples()) {
    Json entry;
    entry["t"] = s.t;
    entry["frame"] = matrixField(s.frame.columns());
    samples.push_back(std::move(entry));
  }
  doc["samples"] = std::move(samples);
  return doc;
}

LagrangianPath parseLagrangianPathDoc(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  if (!doc.contains("samples") || !doc["samples"].is_array() || doc["samples"].size() < 2)
    throw SchemaError("/samples", "expected an array of at least 2 samples");
  auto space = SymplecticSpace::standard(n);
  std::vector<LagrangianPath::Sample> samples;
  for (std::size_t i = 0; i < doc["samples"].size(); ++i) {
    std::string ptr = "/samples/" + std::to_string(i);
    const Json& s = doc["samples"][i];
    if (!s.is_object() || !s.contains("t") || !s.contains("frame"))
      throw SchemaError(ptr, "sample needs t and frame");
    Matrix cols = parseMatrixField(s["frame"], 2 * n, n, ptr + "/frame");
    try {
      samples.push_back({requireNumber(s["t"], ptr + "/t"), LagrangianFrame(space, cols)});
    } catch (const Error& e) {
      throw SchemaError(ptr + "/frame", e.what());
    }
  }
  try {
    return LagrangianPath(space, std::move(samples));
  } catch (const Error& e) {
    throw SchemaError("/samples", e.what());
  }
}

Json elementToJson(const MetaplecticElement& e) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = e.W().n();
  doc["P"] = matrixField(e.W().P().entries());
  doc["K"] = matrixField(e.W().K());
  doc["Q"] = matrixField(e.W().Q().entries());
  doc["m"] = e.m();
  return doc;
}

MetaplecticElement parseElementDoc(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  for (const char* key : {"P", "K", "Q"})
    if (!doc.contains(key)) throw SchemaError(std::string("/") + key, "missing block");
  if (!doc.contains("m") || !doc["m"].is_number_integer())
    throw SchemaError("/m", "m must be an integer");
  Matrix P = parseMatrixField(doc["P"], n, n, "/P");
  Matrix K = parseMatrixField(doc["K"], n, n, "/K");
  Matrix Q = parseMatrixField(doc["Q"], n, n, "/Q");
  try {
    return MetaplecticElement(GeneratingFunction(SymmetricForm(P), K, SymmetricForm(Q)),
                              doc["m"].get<int>());
  } catch (const Error& e) {
    throw SchemaError("/m", e.what());
  }
}

Json systemToJson(const LinearHamiltonianSystem& system, const Json& hessianSpec) {
  Json doc;
  doc["schemaVersion"] = 1;
  doc["n"] = system.n();
  doc["T"] = system.period();
  doc["hessian"] = hessianSpec;
  return doc;
}

LinearHamiltonianSystem parseSystemDoc(const Json& doc) {
  requireVersion(doc, "");
  int n = requireN(doc, "");
  if (!doc.contains("T") || !doc["T"].is_number() || doc["T"].get<double>() <= 0)
    throw SchemaError("/T", "T must be a positive number");
  double T = doc["T"].get<double>();
  if (!doc.contains("hessian") || !doc["hessian"].is_object())
    throw SchemaError("/hessian", "missing hessian object");
  const Json& h = doc["hessian"];
  if (!h.contains("kind") || !h["kind"].is_string())
    throw SchemaError("/hessian/kind", "missing kind");
  std::string kind = h["kind"].get<std::string>();
  if (kind == "constant") {
    if (!h.contains("matrix")) throw SchemaError("/hessian/matrix", "missing matrix");
    Matrix S = parseMatrixField(h["matrix"], 2 * n, 2 * n, "/hessian/matrix");
    try {
      return LinearHamiltonianSystem::constant(S, T);
    } catch (const Error& e) {
      throw SchemaError("/hessian/matrix", e.what());
    }
  }
  if (kind == "fourier") {
    if (!h.contains("constant")) throw SchemaError("/hessian/constant", "missing constant");
    Matrix S0 = parseMatrixField(h["constant"], 2 * n, 2 * n, "/hessian/constant");
    std::vector<Matrix> cosTerms, sinTerms;
    auto parseTerms = [&](const char* key, std::vector<Matrix>& out) {
      if (!h.contains(key)) return;
      const Json& arr = h[key];
      std::string base = std::string("/hessian/") + key;
      if (!arr.is_array()) throw SchemaError(base, "expected an array of matrices");
      for (std::size_t k = 0; k < arr.size(); ++k)
        out.push_back(parseMatrixField(arr[k], 2 * n, 2 * n, base + "/" + std::to_string(k)));
    };
    parseTerms("cos", cosTerms);
    parseTerms("sin", sinTerms);
    try {
      return LinearHamiltonianSystem(
          n, T,
          [S0, cosTerms, sinTerms, T](double t) {
            Matrix S = S0;
            for (std::size_t k = 0; k < cosTerms.size(); ++k)
              S += std::cos(2.0 * M_PI * (k + 1) * t / T) * cosTerms[k];
            for (std::size_t k = 0; k < sinTerms.size(); ++k)
              S += std::sin(2.0 * M_PI * (k + 1) * t / T) * sinTerms[k];
            return S;
          },
          "fourier");
    } catch (const Error& e) {
      throw SchemaError("/hessian", e.what());
    }
  }
  throw SchemaError("/hessian/kind", "unknown kind '" + kind + "'");
}

Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("/", "cannot open file '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const Json::parse_error& e) {
    throw SchemaError("/", std::string("invalid JSON: ") + e.what());
  }
  return doc;
}

void writeTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
}

Json calibrationToJson(const CalibrationReport& report) {
  Json j;
  j["vector"] = report.describeVector();
  j["convention"] = conventionName(report.convention);
  j["definitional"] = report.definitional.str();
  j["rawClosedForm"] = report.rawClosedForm.str();
  j["rawTauRoute"] = report.rawTauRoute.str();
  j["rawGraphBracket"] = report.rawGraphBracket.str();
  j["rawCayleySum"] = report.rawCayleySum.str();
  j["epsilonClosedForm"] = report.epsilonClosedForm;
  j["epsilonTauRoute"] = report.epsilonTauRoute;
  j["epsilonGraphBracket"] = report.epsilonGraphBracket;
  j["epsilonCayleySum"] = report.epsilonCayleySum;
  return j;
}

bool RunReport::allChecksPass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json RunReport::toJson(const ToleranceContext& tolArg) const {
  Json j;
  j["command"] = command;
  j["seed"] = seed;
  j["convention"] = conventionName(convention);
  j["tolerance"] = {{"rankRelative", tolerance.rankRelative},
                    {"rankAbsoluteFloor", tolerance.rankAbsoluteFloor}};
  j["results"] = results;
  Json checksJson = Json::array();
  for (const auto& c : checks) {
    Json line;
    line["name"] = c.name;
    line["pass"] = c.pass;
    line["detail"] = c.detail;
    checksJson.push_back(std::move(line));
  }
  j["checks"] = std::move(checksJson);
  if (includeCalibration) {
    CalibrationReport cal = calibrate(convention, tolArg);
    j["calibration"] = calibrationToJson(cal);
  }
  return j;
}

std::string RunReport::toText(const ToleranceContext& tolArg) const {
  std::ostringstream out;
  out << "command: " << command << "\n";
  out << "convention: " << conventionName(convention) << "  seed: " << seed << "\n";
  for (auto it = results.begin(); it != results.end(); ++it)
    out << it.key() << ": " << it.value().dump() << "\n";
  for (const auto& c : checks)
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
        << (c.detail.empty() ? "" : ("  " + c.detail)) << "\n";
  if (includeCalibration) {
    CalibrationReport cal = calibrate(convention, tolArg);
    out << "calibration: epsilon_q=" << cal.epsilonClosedForm << " on "
        << cal.describeVector() << " (definitional " << cal.definitional.str() << ")\n";
  }
  return out.str();
}

}  // namespace czindex
