#include "kcover/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "kcover/error.hpp"

namespace kcover {

std::string to_string(SynthesisMode mode) { return mode == SynthesisMode::Explicit ? "explicit" : "accounting"; }

std::string to_string(StepOrder order) {
  return order == StepOrder::ComposeThenRelocate ? "compose-then-relocate" : "relocate-then-compose";
}

std::string to_string(SetTag tag) { return tag == SetTag::F ? "F" : "G"; }

std::int64_t bucket_index(const BigInt& height, const BigInt& width, std::size_t base, const BigRational& tau) {
  const BigInt& hi = height >= width ? height : width;
  const BigInt& lo = height >= width ? width : height;
  const BigInt scaled = lo * base;
  if (hi <= scaled) return 0;
  return ceil_log(BigRational(hi, scaled), tau);
}

double BucketHistogram::tail(std::int64_t from) const {
  double sum = 0.0;
  for (auto it = weights.lower_bound(from); it != weights.end(); ++it) sum += it->second;
  return sum;
}

BucketHistogram histogram(const ShapeSet& shapes, std::size_t base, const BigRational& tau) {
  BucketHistogram h;
  std::map<std::int64_t, LogSum> buckets;
  LogSum total;
  for (const auto& [key, mult] : shapes.entries()) {
    const double logWeight = log_big(mult) + log_sigma_of(key.first, key.second);
    buckets[bucket_index(key.first, key.second, base, tau)].add_log(logWeight);
    total.add_log(logWeight);
  }
  h.logTotalSigma = total.log();
  for (const auto& [k, weight] : buckets) h.weights[k] = std::exp(weight.log() - h.logTotalSigma);
  return h;
}

std::vector<Rectangle> compose_step_F(const Rectangle& rect, const Covering& f) {
  const bool useTranspose = rect.height() > rect.width();
  std::vector<Rectangle> out;
  out.reserve(f.rectangles.size());
  for (const auto& piece : f.rectangles) out.push_back(rect.kron(useTranspose ? piece.transposed() : piece));
  return out;
}

std::vector<Rectangle> compose_step_G(const Rectangle& rect, const Covering& g) {
  const bool useTranspose = rect.height() >= rect.width();
  std::vector<Rectangle> out;
  out.reserve(g.rectangles.size());
  for (const auto& piece : g.rectangles) out.push_back(rect.kron(useTranspose ? piece.transposed() : piece));
  return out;
}

ShapeSet compose_shapes_F(const ShapeSet& set, const ShapeSet& f) {
  ShapeSet out;
  for (const auto& [key, mult] : set.entries()) {
    const bool useTranspose = key.first > key.second;
    for (const auto& [piece, pieceMult] : f.entries()) {
      const auto& pa = useTranspose ? piece.second : piece.first;
      const auto& pb = useTranspose ? piece.first : piece.second;
      out.add(key.first * pa, key.second * pb, mult * pieceMult);
    }
  }
  return out;
}

ShapeSet compose_shapes_G(const ShapeSet& set, const ShapeSet& g) {
  ShapeSet out;
  for (const auto& [key, mult] : set.entries()) {
    const bool useTranspose = key.first >= key.second;
    for (const auto& [piece, pieceMult] : g.entries()) {
      const auto& pa = useTranspose ? piece.second : piece.first;
      const auto& pb = useTranspose ? piece.first : piece.second;
      out.add(key.first * pa, key.second * pb, mult * pieceMult);
    }
  }
  return out;
}

namespace {

void check_params(const SynthesisParams& params, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "synthesize: n must be nonnegative");
  if (params.tau <= 1) throw Error(ErrorKind::InvalidArgument, "synthesize: tau must exceed 1");
  if (params.gamma <= 0) throw Error(ErrorKind::InvalidArgument, "synthesize: gamma must be positive");
}

StepRecord make_record(int t, const BigRational& threshold, ShapeSet fShapes, ShapeSet gShapes,
                       std::map<std::int64_t, BigInt> relocated, std::size_t base, const BigRational& tau) {
  StepRecord rec;
  rec.step = t;
  rec.threshold = threshold;
  rec.coverage = fShapes.coverage() + gShapes.coverage();
  if (!fShapes.empty()) rec.histF = histogram(fShapes, base, tau);
  if (!gShapes.empty()) rec.histG = histogram(gShapes, base, tau);
  rec.ledgerF = ShapeLedger{std::move(fShapes), t, SetTag::F};
  rec.ledgerG = ShapeLedger{std::move(gShapes), t, SetTag::G};
  rec.relocated = std::move(relocated);
  return rec;
}

void finish(SynthesisResult& result, const ShapeSet& f, const ShapeSet& finalG) {
  result.final = finalG.metrics();
  result.logSigmaF = f.log_sigma();
  result.ratioToSigmaN = std::exp(result.final.logW - static_cast<double>(result.n) * result.logSigmaF);
}

}  // namespace

SynthesisResult synthesize_accounting(const ShapeSet& f, const ShapeSet& g, std::size_t base, int n,
                                      const SynthesisParams& params, StepOrder order) {
  check_params(params, n);
  if (!g.is_one_sided()) throw Error(ErrorKind::NotOneSided, "synthesize: G is not one-sided");
  SynthesisResult result;
  result.n = n;
  result.base = base;
  result.params = params;
  result.params.d = laurent_weights(f, params.tau).d;
  result.mode = SynthesisMode::Accounting;
  result.order = order;

  ShapeSet fSet;
  fSet.add(1, 1);
  ShapeSet gSet;
  for (int t = 1; t <= n; ++t) {
    const BigRational threshold = params.gamma * (n - t);
    std::map<std::int64_t, BigInt> relocated;
    auto relocate = [&] {
      ShapeSet keep;
      for (const auto& [key, mult] : fSet.entries()) {
        const auto m = bucket_index(key.first, key.second, base, params.tau);
        if (BigRational(m) >= threshold) {
          gSet.add(key.first, key.second, mult);
          relocated[m] += mult;
        } else {
          keep.add(key.first, key.second, mult);
        }
      }
      fSet = std::move(keep);
    };
    if (order == StepOrder::RelocateThenCompose) relocate();
    fSet = compose_shapes_F(fSet, f);
    gSet = compose_shapes_G(gSet, g);
    if (order == StepOrder::ComposeThenRelocate) relocate();
    result.steps.push_back(make_record(t, threshold, fSet, gSet, std::move(relocated), base, params.tau));
  }
  // Only reachable for n = 0: the 1x1 rectangle is the final covering.
  gSet.merge(fSet);
  finish(result, f, gSet);
  return result;
}

SynthesisResult synthesize(const BoolMatrix& a, const Covering& f, const Covering& g, int n,
                           const SynthesisParams& params, const SynthesisOptions& options) {
  check_params(params, n);
  if (!is_symmetric(a)) throw Error(ErrorKind::PreconditionFailed, "synthesize: base matrix is not symmetric");
  if (f.baseSizes != g.baseSizes || f.side() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "synthesize: F and G must both cover the base matrix");
  }
  if (f.mode != g.mode) throw Error(ErrorKind::ModeMismatch, "synthesize: F and G must share a mode");
  if (!is_one_sided(g)) throw Error(ErrorKind::NotOneSided, "synthesize: G is not one-sided");
  if (!verify(f, a, options.sideCap).ok) throw Error(ErrorKind::PreconditionFailed, "synthesize: F does not cover A");
  if (!verify(g, a, options.sideCap).ok) throw Error(ErrorKind::PreconditionFailed, "synthesize: G does not cover A");

  const std::size_t base = a.rows();
  const ShapeSet fShapes = shapes_of(f);
  if (options.mode == SynthesisMode::Accounting) {
    return synthesize_accounting(fShapes, shapes_of(g), base, n, params, options.order);
  }

  if (base > options.maxExplicitBase) {
    throw Error(ErrorKind::SizeLimit, "explicit synthesis needs a base of at most " +
                                          std::to_string(options.maxExplicitBase) + ", got " + std::to_string(base));
  }
  if (pow_big(BigInt(base), static_cast<unsigned>(n)) > options.sideCap) {
    throw Error(ErrorKind::SizeLimit, "explicit synthesis: " + std::to_string(base) + "^" + std::to_string(n) +
                                          " exceeds the side cap " + std::to_string(options.sideCap));
  }

  SynthesisResult result;
  result.n = n;
  result.base = base;
  result.params = params;
  result.params.d = laurent_weights(fShapes, params.tau).d;
  result.mode = SynthesisMode::Explicit;
  result.order = options.order;

  std::vector<Rectangle> fSet{Rectangle()};
  std::vector<Rectangle> gSet;
  auto shapes = [](const std::vector<Rectangle>& rects) {
    ShapeSet s;
    for (const auto& r : rects) s.add(r.height(), r.width());
    return s;
  };
  for (int t = 1; t <= n; ++t) {
    const BigRational threshold = params.gamma * (n - t);
    std::map<std::int64_t, BigInt> relocated;
    auto relocate = [&] {
      std::vector<Rectangle> keep;
      for (auto& rect : fSet) {
        const auto m = bucket_index(rect.height(), rect.width(), base, params.tau);
        if (BigRational(m) >= threshold) {
          relocated[m] += 1;
          gSet.push_back(std::move(rect));
        } else {
          keep.push_back(std::move(rect));
        }
      }
      fSet = std::move(keep);
    };
    if (options.order == StepOrder::RelocateThenCompose) relocate();
    std::vector<Rectangle> nextF, nextG;
    for (const auto& rect : fSet) {
      auto pieces = compose_step_F(rect, f);
      std::move(pieces.begin(), pieces.end(), std::back_inserter(nextF));
    }
    for (const auto& rect : gSet) {
      auto pieces = compose_step_G(rect, g);
      std::move(pieces.begin(), pieces.end(), std::back_inserter(nextG));
    }
    fSet = std::move(nextF);
    gSet = std::move(nextG);
    if (options.order == StepOrder::ComposeThenRelocate) relocate();
    result.steps.push_back(make_record(t, threshold, shapes(fSet), shapes(gSet), std::move(relocated), base, params.tau));
  }
  std::move(fSet.begin(), fSet.end(), std::back_inserter(gSet));

  Covering cover;
  cover.mode = f.mode;
  for (int t = 0; t < n; ++t) cover.baseSizes.insert(cover.baseSizes.end(), f.baseSizes.begin(), f.baseSizes.end());
  cover.rectangles = std::move(gSet);

  BoolMatrix power = BoolMatrix::from_rows({{1}});
  for (int t = 0; t < n; ++t) power = kron(power, a, options.sideCap);
  result.verification = verify(cover, power, options.sideCap);
  finish(result, fShapes, shapes_of(cover));
  result.covering = std::move(cover);
  return result;
}

std::vector<BucketHistogram> pure_F_run(const ShapeSet& f, std::size_t base, int n, const BigRational& tau) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "pure_F_run: n must be nonnegative");
  std::vector<BucketHistogram> out;
  ShapeSet set;
  set.add(1, 1);
  for (int t = 1; t <= n; ++t) {
    set = compose_shapes_F(set, f);
    out.push_back(histogram(set, base, tau));
  }
  return out;
}

std::vector<BucketHistogram> pure_F_run(const Covering& f, int n, const BigRational& tau) {
  const BigInt side = f.side();
  if (side > BigInt(std::numeric_limits<std::size_t>::max())) throw Error(ErrorKind::SizeLimit, "base too large");
  return pure_F_run(shapes_of(f), side.convert_to<std::size_t>(), n, tau);
}

TailCheck majorant_tail(const std::vector<BucketHistogram>& histograms, double nu, std::int64_t d, double tolerance) {
  TailCheck check;
  for (std::size_t idx = 0; idx < histograms.size(); ++idx) {
    const auto& h = histograms[idx];
    const int t = static_cast<int>(idx) + 1;
    const std::int64_t top = h.weights.empty() ? 0 : h.weights.rbegin()->first;
    const std::int64_t last = d * t;
    for (std::int64_t from = 1; from <= std::max<std::int64_t>(top, 1); ++from) {
      double bound = 0.0;
      for (std::int64_t k = from; k <= last; ++k) bound += std::pow(nu, static_cast<double>(k));
      const double excess = h.tail(from) - bound;
      if (excess > check.worstExcess) {
        check.worstExcess = excess;
        check.worstStep = t;
        check.worstFrom = from;
      }
      if (excess > tolerance) check.ok = false;
    }
  }
  return check;
}

RelocationAudit relocation_audit(const SynthesisResult& result) {
  RelocationAudit audit;
  const BigRational ratio = BigRational(result.params.d) / result.params.gamma;
  BigInt window = boost::multiprecision::numerator(ratio) / boost::multiprecision::denominator(ratio);
  if (BigRational(window) < ratio) window += 1;
  audit.window = window.convert_to<int>() + 2;

  for (const auto& rec : result.steps)
    for (const auto& [m, count] : rec.relocated)
      if (count > 0) audit.stepsByBucket[m].push_back(rec.step);

  for (const auto& [m, steps] : audit.stepsByBucket) {
    std::size_t run = 1;
    while (run < steps.size() && steps[run] == steps[run - 1] + 1) ++run;
    const std::size_t extra = steps.size() - run;
    if (static_cast<int>(run) > audit.window || extra > 1) {
      audit.ok = false;
      audit.problems.push_back("bucket " + std::to_string(m) + " relocated on a run of " + std::to_string(run) +
                               " steps plus " + std::to_string(extra) + " later steps; window is " +
                               std::to_string(audit.window));
    }
  }

  if (result.order == StepOrder::ComposeThenRelocate) {
    bool clean = true;
    for (const auto& rec : result.steps)
      for (const auto& [key, mult] : rec.ledgerF.shapes.entries())
        if (BigRational(bucket_index(key.first, key.second, result.base, result.params.tau)) >= rec.threshold) {
          clean = false;
          audit.problems.push_back("F rectangle above the threshold survived step " + std::to_string(rec.step));
        }
    audit.noSurvivors = clean;
    if (!clean) audit.ok = false;
  }
  return audit;
}

}  // namespace kcover
