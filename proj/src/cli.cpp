#include "kcover/cli.hpp"

#include <chrono>
#include <ctime>
#include <iostream>
#include <limits>
#include <optional>

#include <CLI11.hpp>

#include "kcover/analysis.hpp"
#include "kcover/circuit.hpp"
#include "kcover/error.hpp"
#include "kcover/json_io.hpp"
#include "kcover/ks_family.hpp"
#include "kcover/matrix.hpp"
#include "kcover/synthesis.hpp"

namespace kcover::cli {

namespace {

struct Globals {
  double tol = 1e-9;
  double lambdaDepth = 64.0;
  double lambdaStep = 1e-3;
  std::size_t explicitCap = kDefaultSideCap;
  unsigned workers = 1;

  RootSearch root() const { return RootSearch{lambdaDepth, lambdaStep, 1e-12}; }
};

/// Signals exit status 1 after the command has already written its report.
struct DomainFailure {
  std::string message;
};

Json big_json(const BigInt& v) {
  if (v >= 0 && v <= BigInt(std::numeric_limits<std::int64_t>::max())) return Json(v.convert_to<std::int64_t>());
  return Json(v.str());
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Run metadata lives next to the artifact so the artifact itself stays
// byte-identical across invocations.
void write_sidecar(const std::string& artifact, const std::vector<std::string>& args, double seconds) {
  if (artifact.empty()) return;
  Json meta;
  meta["schema"] = kSchemaVersion;
  meta["artifact"] = artifact;
  meta["args"] = args;
  meta["finishedAt"] = iso_now();
  meta["elapsedSeconds"] = seconds;
  write_text_file(artifact + ".meta.json", dump(meta));
}

std::vector<std::int64_t> parse_vector(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text.find(',') == std::string::npos && text.find_first_not_of("01") == std::string::npos) {
    for (char c : text) out.push_back(c == '1' ? 1 : 0);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad input vector entry '" + item + "'");
    }
  }
  return out;
}

Json histogram_json(const BucketHistogram& h) {
  Json j = Json::object();
  for (const auto& [k, p] : h.weights) j[std::to_string(k)] = p;
  return j;
}

Json params_json(const SynthesisParams& p) {
  Json j;
  j["tau"] = format_rational(p.tau);
  j["lambda"] = p.lambda;
  j["nu"] = p.nu;
  j["gamma"] = format_rational(p.gamma);
  j["gammaWindow"] = {p.gammaLow, p.gammaHigh};
  j["pi"] = p.pi;
  j["d"] = p.d;
  j["c0"] = p.c0;
  j["c1"] = p.c1;
  return j;
}

Json theorem_json(const TheoremReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["holds"] = r.holds;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["lambda"] = r.lambda ? Json(*r.lambda) : Json(nullptr);
  j["mu"] = r.mu;
  j["sigmaF"] = r.sigmaF;
  j["sigmaG"] = r.sigmaG;
  j["failures"] = r.failures;
  return j;
}

ShapeSet ks_shapes(int t, const std::string& family) {
  if (family == "gradient") return ks::gradient_shapes(t);
  if (family == "column") return ks::column_shapes(t);
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "' (expected gradient or column)");
}

Covering ks_cover(int t, const std::string& family) {
  if (family == "gradient") return ks::gradient_covering(t);
  if (family == "column") return ks::column_covering(t);
  throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "' (expected gradient or column)");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument: return 2;
    default: return 1;
  }
}

void write_error(std::ostream& err, const std::string& message, const char* kind) {
  Json j;
  j["error"] = message;
  j["kind"] = kind;
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coverings of Kronecker powers of symmetric boolean matrices"};
  app.name("kcover");
  app.set_version_flag("--version", std::string(kSchemaVersion));
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.tol, "Slack allowed in the reported tail check")->capture_default_str();
  app.add_option("--lambda-depth", g.lambdaDepth, "Root scan window [-depth, 0)")->capture_default_str();
  app.add_option("--lambda-step", g.lambdaStep, "Root scan grid step")->capture_default_str();
  app.add_option("--explicit-cap", g.explicitCap, "Largest explicit matrix side")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads (scan-ks)")->capture_default_str();

  int t = 0;
  std::string family = "gradient", outPath;

  auto* genKs = app.add_subcommand("gen-ks", "Write the Kneser-Sierpinski matrix D_{2^t}");
  genKs->add_option("--t", t, "Ground set size")->required();
  genKs->add_option("--out", outPath, "Output file (default stdout)");

  auto* coverKs = app.add_subcommand("cover-ks", "Write the gradient or column covering of D_{2^t}");
  coverKs->add_option("--t", t)->required();
  coverKs->add_option("--family", family)->check(CLI::IsMember({"gradient", "column"}));
  coverKs->add_option("--out", outPath);

  std::string coverPath, matrixPath;
  auto* verifyCmd = app.add_subcommand("verify", "Check a covering against a matrix cell by cell");
  verifyCmd->add_option("--cover", coverPath)->required();
  verifyCmd->add_option("--matrix", matrixPath)->required();

  std::string tauText = "4", piTaus = "4,2,3/2,5/4,9/8,17/16,33/32";
  int ksT = 0;
  auto* analyze = app.add_subcommand("analyze", "Characteristic-function report for a covering");
  auto* analyzeCover = analyze->add_option("--cover", coverPath);
  auto* analyzeKs = analyze->add_option("--ks-t", ksT, "Use the closed-form family covering of D_{2^t}");
  analyzeCover->excludes(analyzeKs);
  analyze->add_option("--family", family)->check(CLI::IsMember({"gradient", "column"}));
  analyze->add_option("--tau", tauText, "Discretization step for betas/alphas")->capture_default_str();
  analyze->add_option("--pi-taus", piTaus, "Comma-separated tau values for the pi table")->capture_default_str();

  std::string fPath, gPath;
  auto* checkTheorem = app.add_subcommand("check-theorem", "Test the F/G applicability condition");
  auto* ctF = checkTheorem->add_option("--F", fPath);
  auto* ctG = checkTheorem->add_option("--G", gPath);
  auto* ctKs = checkTheorem->add_option("--ks-t", ksT);
  ctF->needs(ctG);
  ctG->needs(ctF);
  ctKs->excludes(ctF);
  ctKs->excludes(ctG);

  int baseT = 0, n = 0;
  std::string modeText = "accounting", orderText = "compose-first", gammaText, reportPath, coverOut;
  std::optional<double> nu;
  std::string tauOpt;
  auto* synth = app.add_subcommand("synthesize", "Run the F/G synthesis on D_{2^base-t}");
  synth->add_option("--base-t", baseT)->required();
  synth->add_option("--n", n)->required();
  synth->add_option("--mode", modeText)->check(CLI::IsMember({"explicit", "accounting"}));
  synth->add_option("--order", orderText)->check(CLI::IsMember({"compose-first", "relocate-first"}));
  synth->add_option("--tau", tauOpt, "Force tau (p/q)");
  synth->add_option("--gamma", gammaText, "Force gamma (p/q)");
  synth->add_option("--nu", nu, "Force nu");
  synth->add_option("--report", reportPath, "Report JSON path (default stdout)");
  synth->add_option("--cover-out", coverOut, "Write the explicit covering here");

  int tMax = 0;
  auto* scanCmd = app.add_subcommand("scan-ks", "Tabulate the family constants for t = 2..t-max");
  scanCmd->add_option("--t-max", tMax)->required();
  scanCmd->add_option("--out", outPath);

  std::string semiringText;
  auto* lowerCmd = app.add_subcommand("lower", "Lower a covering to a depth-2 circuit");
  lowerCmd->add_option("--cover", coverPath)->required();
  lowerCmd->add_option("--semiring", semiringText)->check(CLI::IsMember({"sum", "or", "xor"}));
  lowerCmd->add_option("--out", outPath);

  std::string circuitPath, inputText;
  auto* evalCmd = app.add_subcommand("eval-circuit", "Evaluate a circuit on one input vector");
  evalCmd->add_option("--circuit", circuitPath)->required();
  evalCmd->add_option("--input", inputText, "Comma-separated values or a 0/1 string")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, e.what(), "usage");
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  try {
    if (genKs->parsed()) {
      emit(outPath, dump(to_json(kneser_sierpinski(t, g.explicitCap))), out);
      return 0;
    }
    if (coverKs->parsed()) {
      emit(outPath, dump(to_json(ks_cover(t, family))), out);
      return 0;
    }
    if (verifyCmd->parsed()) {
      const Covering cover = covering_from_json(read_json_file(coverPath));
      const BoolMatrix matrix = matrix_from_json(read_json_file(matrixPath));
      const VerifyReport rep = verify(cover, matrix, g.explicitCap);
      Json j;
      j["schema"] = kSchemaVersion;
      j["ok"] = rep.ok;
      if (rep.firstViolation) {
        const auto& v = *rep.firstViolation;
        j["firstViolation"] = {{"row", v.row}, {"col", v.col}, {"expected", v.expected}, {"multiplicity", v.multiplicity}};
      } else {
        j["firstViolation"] = nullptr;
      }
      out << dump(j);
      if (!rep.ok) throw DomainFailure{"covering does not verify"};
      return 0;
    }
    if (analyze->parsed()) {
      if (coverPath.empty() && ksT == 0) throw Error(ErrorKind::InvalidArgument, "analyze needs --cover or --ks-t");
      const ShapeSet shapes = coverPath.empty() ? ks_shapes(ksT, family)
                                                : shapes_of(covering_from_json(read_json_file(coverPath)));
      const Metrics m = shapes.metrics();
      const CharacteristicFunction chi(shapes);
      const CompactnessReport compact = is_compact(chi, g.root());
      const BigRational tau = parse_rational(tauText);
      Json j;
      j["schema"] = kSchemaVersion;
      j["sigma"] = m.sigma;
      j["w"] = big_json(m.w);
      j["compact"] = compact.compact;
      j["derivativeAtZero"] = compact.derivativeAtZero;
      j["lambda"] = nullptr;
      if (compact.compact) {
        try {
          j["lambda"] = lambda_f(chi, g.root());
        } catch (const Error& e) {
          j["lambdaError"] = to_string(e.kind());
        }
      }
      const bool oneSided = shapes.is_one_sided();
      j["oneSided"] = oneSided;
      j["mu"] = oneSided ? Json(mu_of(shapes)) : Json(nullptr);
      Json piTable = Json::array();
      if (oneSided) {
        std::stringstream ss(piTaus);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const BigRational x = parse_rational(item);
          piTable.push_back({{"tau", format_rational(x)}, {"pi", compensation_profile(shapes, x).pi}});
        }
      }
      j["piTable"] = std::move(piTable);
      j["tau"] = format_rational(tau);
      Json betas = Json::array();
      for (const auto& [i, beta] : laurent_weights(shapes, tau).betas) betas.push_back({{"i", i}, {"beta", beta}});
      j["betas"] = std::move(betas);
      Json alphas = Json::array();
      if (oneSided) {
        for (const auto& [k, alpha] : compensation_profile(shapes, tau).alphas) alphas.push_back({{"k", k}, {"alpha", alpha}});
      }
      j["alphas"] = std::move(alphas);
      out << dump(j);
      return 0;
    }
    if (checkTheorem->parsed()) {
      TheoremReport rep;
      if (ksT > 0) {
        rep = theorem_condition(ks::gradient_shapes(ksT), ks::column_shapes(ksT), g.root());
      } else if (!fPath.empty()) {
        rep = theorem_condition(covering_from_json(read_json_file(fPath)), covering_from_json(read_json_file(gPath)),
                                g.root());
      } else {
        throw Error(ErrorKind::InvalidArgument, "check-theorem needs --ks-t or both --F and --G");
      }
      out << dump(theorem_json(rep));
      if (!rep.holds) {
        std::string reason;
        for (const auto& f : rep.failures) reason += (reason.empty() ? "" : "; ") + f;
        throw DomainFailure{reason};
      }
      return 0;
    }
    if (synth->parsed()) {
      const Covering f = ks::gradient_covering(baseT);
      const Covering gc = ks::column_covering(baseT);
      ParamSearch search;
      search.root = g.root();
      if (!tauOpt.empty()) search.tau = parse_rational(tauOpt);
      if (!gammaText.empty()) search.gamma = parse_rational(gammaText);
      search.nu = nu;
      const SynthesisParams params = select_params(f, gc, search);
      SynthesisOptions opts;
      opts.mode = modeText == "explicit" ? SynthesisMode::Explicit : SynthesisMode::Accounting;
      opts.order = orderText == "compose-first" ? StepOrder::ComposeThenRelocate : StepOrder::RelocateThenCompose;
      opts.sideCap = g.explicitCap;
      const BoolMatrix a = kneser_sierpinski(baseT, g.explicitCap);
      const SynthesisResult res = synthesize(a, f, gc, n, params, opts);

      Json j;
      j["schema"] = kSchemaVersion;
      j["baseT"] = baseT;
      j["n"] = n;
      j["mode"] = to_string(res.mode);
      j["order"] = to_string(res.order);
      j["params"] = params_json(res.params);
      Json steps = Json::array();
      for (const auto& rec : res.steps) {
        Json s;
        s["t"] = rec.step;
        s["threshold"] = format_rational(rec.threshold);
        s["histF"] = histogram_json(rec.histF);
        s["histG"] = histogram_json(rec.histG);
        Json moved = Json::object();
        for (const auto& [m, c] : rec.relocated) moved[std::to_string(m)] = big_json(c);
        s["relocated"] = std::move(moved);
        s["coverage"] = big_json(rec.coverage);
        s["countF"] = big_json(rec.ledgerF.shapes.count());
        s["countG"] = big_json(rec.ledgerG.shapes.count());
        steps.push_back(std::move(s));
      }
      j["steps"] = std::move(steps);
      j["final"] = {{"w", big_json(res.final.w)},
                    {"logW", res.final.logW},
                    {"sigma", finite_or_null(res.final.sigma)},
                    {"logSigma", res.final.sigmaLog},
                    {"count", big_json(res.final.count)},
                    {"ratioToSigmaN", res.ratioToSigmaN}};
      const RelocationAudit audit = relocation_audit(res);
      j["relocationAudit"] = {{"ok", audit.ok}, {"window", audit.window}, {"problems", audit.problems}};
      const TailCheck tail = majorant_tail(pure_F_run(f, n, params.tau), params.nu, res.params.d, g.tol);
      j["majorantTail"] = {{"ok", tail.ok}, {"worstStep", tail.worstStep}, {"worstFrom", tail.worstFrom},
                           {"worstExcess", tail.worstExcess}};
      if (res.verification) j["verification"] = {{"ok", res.verification->ok}};
      emit(reportPath, dump(j), out);
      write_sidecar(reportPath, args, elapsed());
      if (res.covering && !coverOut.empty()) write_text_file(coverOut, dump(to_json(*res.covering)));
      if (res.verification && !res.verification->ok) throw DomainFailure{"synthesized covering does not verify"};
      return 0;
    }
    if (scanCmd->parsed()) {
      emit(outPath, ks::scan_csv(ks::scan(tMax, g.root(), g.workers)), out);
      write_sidecar(outPath, args, elapsed());
      return 0;
    }
    if (lowerCmd->parsed()) {
      const Covering cover = covering_from_json(read_json_file(coverPath));
      const Depth2Circuit c = semiringText.empty() ? lower(cover, g.explicitCap)
                                                   : lower(cover, parse_semiring(semiringText), g.explicitCap);
      emit(outPath, dump(to_json(c)), out);
      return 0;
    }
    if (evalCmd->parsed()) {
      const Depth2Circuit c = circuit_from_json(read_json_file(circuitPath));
      const auto x = parse_vector(inputText);
      Json j;
      j["schema"] = kSchemaVersion;
      j["outputs"] = evaluate(c, x);
      out << dump(j);
      return 0;
    }
  } catch (const DomainFailure& f) {
    write_error(err, f.message, "domain");
    return 1;
  } catch (const Error& e) {
    write_error(err, e.what(), to_string(e.kind()));
    return exit_code_for(e.kind());
  }
  return 2;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace kcover::cli
