#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "czindex/cz.hpp"
#include "czindex/ham.hpp"
#include "czindex/io.hpp"
#include "czindex/meta.hpp"
#include "czindex/verify.hpp"

namespace {

using namespace czindex;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;   // schema violations and bad invocations
constexpr int kExitChartGap = 2;
constexpr int kExitVerifyFail = 3;

struct GlobalFlags {
  std::string convention = "paper";
  std::uint64_t seed = 42;
  int trials = 200;
  double tolRank = 0.0;  // 0 keeps the default
  bool json = false;
  std::string outFile;

  SignConvention conv() const {
    return convention == "standard" ? SignConvention::Standard : SignConvention::Paper;
  }
  ToleranceContext tol() const {
    ToleranceContext t;
    if (tolRank > 0.0) t.rankRelative = tolRank;
    return t;
  }
};

void emit(const RunReport& report, const GlobalFlags& flags) {
  std::string text = flags.json ? report.toJson(flags.tol()).dump(2) + "\n"
                                : report.toText(flags.tol());
  if (!flags.outFile.empty())
    writeTextFile(flags.outFile, text);
  else
    std::cout << text;
}

int runMaslov(const std::string& pathFile, const std::string& lagrangianFile,
              const GlobalFlags& flags) {
  Json pathDoc = loadJsonFile(pathFile);
  Json lagrDoc = loadJsonFile(lagrangianFile);
  RunReport report;
  report.command = "maslov";
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  HalfInteger value;
  if (isLagrangianPathDoc(pathDoc)) {
    LagrangianPath path = parseLagrangianPathDoc(pathDoc);
    LagrangianFrame L0 = parseLagrangianDoc(lagrDoc);
    value = maslovIndex(path, L0, flags.conv(), flags.tol());
    report.results["kind"] = "lagrangian-path";
  } else {
    // Matrix paths are evaluated through their graph curve; the reference
    // Lagrangian then lives in the doubled space (frame size 4n x 2n).
    SymplecticPath path = parsePathDoc(pathDoc);
    RawFrame raw = parseLagrangianDocRaw(lagrDoc);
    if (raw.n != path.space().dim())
      throw SchemaError("/n", "reference frame must live in the doubled space of the path");
    auto doubled = SymplecticSpace::doubled(path.space());
    LagrangianFrame L0d(doubled, raw.columns);
    value = maslovIndex(graphPath(path), L0d, flags.conv(), flags.tol());
    report.results["kind"] = "graph-path";
  }
  report.results["index"] = value.str();
  report.checks.push_back({"index-computed", true, "value " + value.str()});
  emit(report, flags);
  return kExitOk;
}

int runCz(const std::string& pathFile, const GlobalFlags& flags) {
  SymplecticPath path = parsePathDoc(loadJsonFile(pathFile));
  RunReport report;
  report.command = "cz";
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  HalfInteger value = czIndex(path, flags.conv(), flags.tol());
  report.results["index"] = value.str();
  report.results["endpointEigenvalueOneMargin"] =
      inSp0(SymplecticMatrix(path.space(), path.back()), flags.tol()).margin;
  report.checks.push_back({"index-computed", true, "value " + value.str()});
  emit(report, flags);
  return kExitOk;
}

int runIterate(const std::string& systemFile, int N, int steps, const GlobalFlags& flags) {
  LinearHamiltonianSystem system = parseSystemDoc(loadJsonFile(systemFile));
  RunReport report;
  report.command = "iterate";
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  auto rows = iterateIndexReport(system, N, flags.conv(), steps, flags.tol());
  Json table = Json::array();
  bool prop43 = true;
  bool fullBound = true;
  bool halfFlagged = false;
  for (const auto& r : rows) {
    Json row;
    row["k"] = r.k;
    row["index"] = r.index.str();
    row["pointwisePower"] = r.pointwisePower.str();
    row["muVertical"] = r.muVertical.str();
    row["deviation"] = HalfInteger{r.deviationTwice}.str();
    row["halfBound"] = r.halfBound;
    row["fullBound"] = r.fullBound;
    row["halfBoundViolated"] = r.halfBoundViolated;
    row["fullBoundViolated"] = r.fullBoundViolated;
    row["muAboveSevenHalvesN"] = r.muAboveSevenHalvesN;
    table.push_back(std::move(row));
    prop43 = prop43 && r.index == r.pointwisePower;
    fullBound = fullBound && !r.fullBoundViolated;
    halfFlagged = halfFlagged || r.halfBoundViolated;
  }
  report.results["table"] = std::move(table);
  report.checks.push_back({"extension-equals-power", prop43, ""});
  report.checks.push_back({"full-bound-n(k-1)", fullBound, ""});
  report.checks.push_back(
      {"half-bound-flagged", true,
       halfFlagged ? "tighter n(k-1)/2 bound exceeded on some k (reported, not failed)"
                   : "tighter bound held on all k"});
  emit(report, flags);
  return report.allChecksPass() ? kExitOk : kExitVerifyFail;
}

int runNu(const std::string& elementFile, bool bridge, const GlobalFlags& flags) {
  MetaplecticElement element = parseElementDoc(loadJsonFile(elementFile));
  RunReport report;
  report.command = "nu";
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  Mod4Value v = nu(element, flags.tol());
  report.results["nu"] = v.value;
  report.results["m"] = element.m();
  report.results["nMinusWxx"] = inertia(wxx(element.W()), flags.tol()).nMinus;
  report.checks.push_back({"nu-computed", true, "value " + std::to_string(v.value)});
  if (bridge) {
    auto b = nuVsCz(element.W(), element.m(), flags.seed, flags.conv(), flags.tol());
    Json j;
    j["legalMs"] = {b.legalMs[0], b.legalMs[1]};
    j["plain"] = {{"czIndex", b.plain.czIndex.str()},
                  {"minusCzMod4", b.plain.minusCzMod4.value},
                  {"matchedM", b.plain.matchedM ? Json(*b.plain.matchedM) : Json()}};
    j["looped"] = {{"czIndex", b.looped.czIndex.str()},
                   {"minusCzMod4", b.looped.minusCzMod4.value},
                   {"matchedM", b.looped.matchedM ? Json(*b.looped.matchedM) : Json()}};
    j["loopIndex"] = HalfInteger{b.loopIndexTwice}.str();
    report.results["bridge"] = std::move(j);
    report.checks.push_back({"bridge-unique-match", b.uniqueMatchPerClass, ""});
    report.checks.push_back({"bridge-loop-shift", b.loopShiftConsistent, ""});
  }
  emit(report, flags);
  return report.allChecksPass() ? kExitOk : kExitVerifyFail;
}

int runVerify(const std::string& suiteArg, const GlobalFlags& flags) {
  auto suite = suiteFromName(suiteArg);
  if (!suite) {
    std::cerr << "unknown suite '" << suiteArg << "'\n";
    return kExitUsage;
  }
  RunReport report;
  report.command = "verify " + suiteArg;
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  SuiteResult result = runSuite(*suite, flags.seed, flags.trials, flags.conv(), flags.tol());
  for (const auto& r : result.invariants) {
    std::string detail = std::to_string(r.trials - r.failures) + "/" +
                         std::to_string(r.trials) + " trials";
    if (!r.passed()) detail += "; first counterexample: " + r.firstCounterexample;
    report.checks.push_back({r.name, r.passed(), detail});
  }
  report.results["invariants"] = static_cast<int>(result.invariants.size());
  report.results["trialsPerInvariant"] = flags.trials;
  emit(report, flags);
  return result.allPassed() ? kExitOk : kExitVerifyFail;
}

int runCalibrate(bool forceDegenerate, const GlobalFlags& flags) {
  RunReport report;
  report.command = "calibrate";
  report.seed = flags.seed;
  report.convention = flags.conv();
  report.tolerance = flags.tol();
  report.includeCalibration = false;  // the full report is the payload below
  CalibrationReport cal = calibrate(flags.conv(), flags.tol(), flags.seed, forceDegenerate);
  report.results["calibration"] = calibrationToJson(cal);
  report.checks.push_back({"calibration-vector-magnitude-one", true,
                           "definitional " + cal.definitional.str()});
  report.checks.push_back({"route-signs-match-recorded-constants", true,
                           "epsilon_q = " + std::to_string(cal.epsilonClosedForm)});
  emit(report, flags);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maslov / Conley-Zehnder index toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  GlobalFlags flags;
  app.add_option("--convention", flags.convention, "signature convention")
      ->check(CLI::IsMember({"paper", "standard"}));
  app.add_option("--seed", flags.seed, "random seed");
  app.add_option("--trials", flags.trials, "trials per invariant");
  app.add_option("--tol-rank", flags.tolRank, "relative rank tolerance override");
  app.add_flag("--json", flags.json, "emit the report as JSON");
  app.add_option("--out", flags.outFile, "write the report to a file");

  std::string pathFile, lagrangianFile, systemFile, elementFile, suiteArg = "all";
  int iterateN = 8;
  int iterateSteps = 256;
  bool bridge = false;
  bool forceDegenerate = false;

  auto* cmdMaslov = app.add_subcommand("maslov", "index of a sampled path");
  cmdMaslov->add_option("--path", pathFile, "path document")->required();
  cmdMaslov->add_option("--lagrangian", lagrangianFile, "reference Lagrangian document")
      ->required();

  auto* cmdCz = app.add_subcommand("cz", "index of a symplectic path");
  cmdCz->add_option("--path", pathFile, "path document")->required();

  auto* cmdIterate = app.add_subcommand("iterate", "index table of periodic iterates");
  cmdIterate->add_option("--system", systemFile, "system document")->required();
  cmdIterate->add_option("-N,--iterations", iterateN, "number of iterates");
  cmdIterate->add_option("--steps", iterateSteps, "integration steps per period");

  auto* cmdNu = app.add_subcommand("nu", "metaplectic index of an element");
  cmdNu->add_option("--element", elementFile, "element document")->required();
  cmdNu->add_flag("--bridge", bridge, "also run the index bridge report");

  auto* cmdVerify = app.add_subcommand("verify", "randomized invariant batteries");
  cmdVerify->add_option("suite", suiteArg,
                        "forms|lagr|maslov|cayley|product|iterate|metaplectic|all");

  auto* cmdCalibrate = app.add_subcommand("calibrate", "derive the closed-form signs");
  cmdCalibrate->add_flag("--force-degenerate", forceDegenerate,
                         "collapse the calibration vector (failure-path test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (flags.trials < 1) {
      std::cerr << "--trials must be >= 1\n";
      return kExitUsage;
    }
    if (cmdMaslov->parsed()) return runMaslov(pathFile, lagrangianFile, flags);
    if (cmdCz->parsed()) return runCz(pathFile, flags);
    if (cmdIterate->parsed()) return runIterate(systemFile, iterateN, iterateSteps, flags);
    if (cmdNu->parsed()) return runNu(elementFile, bridge, flags);
    if (cmdVerify->parsed()) return runVerify(suiteArg, flags);
    if (cmdCalibrate->parsed()) return runCalibrate(forceDegenerate, flags);
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error at " << e.pointer() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const ChartGapError& e) {
    std::cerr << "chart gap: " << e.what() << "\n";
    return kExitChartGap;
  } catch (const CalibrationAmbiguous& e) {
    std::cerr << "calibration ambiguous: " << e.what() << "\n";
    return kExitVerifyFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
