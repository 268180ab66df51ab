#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kcover/analysis.hpp"
#include "kcover/covering.hpp"
#include "kcover/matrix.hpp"
#include "kcover/shape_set.hpp"

namespace kcover {

enum class SynthesisMode { Explicit, Accounting };

/// Within a step: compose both sets, then relocate (the default), or
/// relocate first and compose afterwards.
enum class StepOrder { ComposeThenRelocate, RelocateThenCompose };

enum class SetTag { F, G };

std::string to_string(SynthesisMode mode);
std::string to_string(StepOrder order);
std::string to_string(SetTag tag);

/// Narrowness bucket of an a x b rectangle for an r x r base matrix:
/// 0 when rho <= r, otherwise the k >= 1 with r tau^(k-1) < rho <= r tau^k.
/// Decided exactly on the big-integer sides.
std::int64_t bucket_index(const BigInt& height, const BigInt& width, std::size_t base, const BigRational& tau);

/// Shape multiset of one of the two working sets after a given step.
struct ShapeLedger {
  ShapeSet shapes;
  int step = 0;
  SetTag tag = SetTag::F;
};

/// Share p_k of the spectral weight sitting in each bucket I_k.
struct BucketHistogram {
  std::map<std::int64_t, double> weights;
  double logTotalSigma = 0.0;

  /// sum_{k >= K} p_k
  double tail(std::int64_t from) const;
};

BucketHistogram histogram(const ShapeSet& shapes, std::size_t base, const BigRational& tau);

struct StepRecord {
  int step = 0;
  BigRational threshold;  ///< gamma * (n - t)
  ShapeLedger ledgerF;
  ShapeLedger ledgerG;
  BucketHistogram histF;
  BucketHistogram histG;
  /// Bucket -> number of rectangles moved from F to G at this step.
  std::map<std::int64_t, BigInt> relocated;
  /// Sum of mult*a*b over both sets.
  BigInt coverage;
};

struct SynthesisOptions {
  SynthesisMode mode = SynthesisMode::Accounting;
  StepOrder order = StepOrder::ComposeThenRelocate;
  std::size_t sideCap = kDefaultSideCap;
  std::size_t maxExplicitBase = 8;
};

struct SynthesisResult {
  int n = 0;
  std::size_t base = 0;
  SynthesisParams params;
  SynthesisMode mode = SynthesisMode::Accounting;
  StepOrder order = StepOrder::ComposeThenRelocate;
  /// Explicit mode only.
  std::optional<Covering> covering;
  std::optional<VerifyReport> verification;
  std::vector<StepRecord> steps;
  Metrics final;
  double logSigmaF = 0.0;
  /// w(result) / sigma(F)^n
  double ratioToSigmaN = 0.0;
};

/// F (x) R when a(R) <= b(R), F^T (x) R otherwise; F's levels are appended.
std::vector<Rectangle> compose_step_F(const Rectangle& rect, const Covering& f);
/// G^T (x) R when a(R) >= b(R) so tall rectangles are widened, G (x) R
/// otherwise. G must be one-sided (a' >= b').
std::vector<Rectangle> compose_step_G(const Rectangle& rect, const Covering& g);

/// Shape-level counterparts of the two composition rules.
ShapeSet compose_shapes_F(const ShapeSet& set, const ShapeSet& f);
ShapeSet compose_shapes_G(const ShapeSet& set, const ShapeSet& g);

/// Runs n steps of the F/G combination starting from F = {1x1}, G = {}.
/// Explicit mode materializes rectangles and verifies the result against
/// A^(x)n; accounting mode only tracks shape ledgers.
SynthesisResult synthesize(const BoolMatrix& a, const Covering& f, const Covering& g, int n,
                           const SynthesisParams& params, const SynthesisOptions& options = {});

/// Accounting run from shape multisets alone, for bases too large to
/// materialize.
SynthesisResult synthesize_accounting(const ShapeSet& f, const ShapeSet& g, std::size_t base, int n,
                                      const SynthesisParams& params,
                                      StepOrder order = StepOrder::ComposeThenRelocate);

/// Histograms p_k(t), t = 1..n, of the F-only composition (no relocation).
std::vector<BucketHistogram> pure_F_run(const ShapeSet& f, std::size_t base, int n, const BigRational& tau);
std::vector<BucketHistogram> pure_F_run(const Covering& f, int n, const BigRational& tau);

struct TailCheck {
  bool ok = true;
  int worstStep = 0;
  std::int64_t worstFrom = 0;
  double worstExcess = -1.0;  ///< max over (t, K) of tail - bound
};

/// Checks sum_{k>=K} p_k(t) <= sum_{k=K}^{d t} nu^k for every K >= 1;
/// histograms[t-1] holds step t.
TailCheck majorant_tail(const std::vector<BucketHistogram>& histograms, double nu, std::int64_t d,
                        double tolerance = 1e-12);

struct RelocationAudit {
  bool ok = true;
  int window = 0;  ///< ceil(d / gamma) + 2
  std::map<std::int64_t, std::vector<int>> stepsByBucket;
  std::vector<std::string> problems;
  /// No F rectangle at or above the threshold outlives its step; only
  /// checked for ComposeThenRelocate.
  std::optional<bool> noSurvivors;
};

/// Every bucket must be relocated on one consecutive run of at most
/// `window` steps, plus at most one later step.
RelocationAudit relocation_audit(const SynthesisResult& result);

}  // namespace kcover
