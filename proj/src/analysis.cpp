#include "kcover/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kcover/error.hpp"

namespace kcover {

namespace {

// Sample points closer to 0 than this are dominated by cancellation noise.
constexpr int kNearZeroHalvings = 30;

double noise_floor(const CharacteristicFunction& chi) {
  return 64.0 * std::numeric_limits<double>::epsilon() * chi.sigma();
}

double bisect_root(const CharacteristicFunction& chi, double positive, double negative, double tolerance) {
  double lo = positive, hi = negative;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (chi(mid) < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_tau(const BigRational& tau) {
  if (tau <= 1) throw Error(ErrorKind::InvalidArgument, "tau must be a rational greater than 1");
}

void require_same_base(const Covering& f, const Covering& g) {
  if (f.baseSizes != g.baseSizes) {
    throw Error(ErrorKind::DimensionMismatch, "coverings F and G must cover the same base matrix");
  }
  if (f.mode != g.mode) throw Error(ErrorKind::ModeMismatch, "coverings F and G must share a mode");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

CharacteristicFunction::CharacteristicFunction(const ShapeSet& shapes) {
  std::map<BigRational, LogSum> merged;
  for (const auto& [key, mult] : shapes.entries()) {
    merged[BigRational(key.first, key.second)].add_log(log_big(mult) + log_sigma_of(key.first, key.second));
  }
  terms_.reserve(merged.size());
  for (const auto& [ratio, weight] : merged) {
    const double coeff = weight.value();
    terms_.push_back(ChiTerm{ratio, log_big(ratio), coeff});
    sigma_ += coeff;
  }
}

double CharacteristicFunction::operator()(double x) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.logRatio == 0.0 ? term.coeff : term.coeff * std::exp(x * term.logRatio);
  return sum - sigma_;
}

double CharacteristicFunction::derivative_at_zero() const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.coeff * term.logRatio;
  return sum;
}

CharacteristicFunction char_fn(const Covering& cover) {
  if (cover.rectangles.empty()) throw Error(ErrorKind::InvalidArgument, "char_fn: empty covering");
  return CharacteristicFunction(shapes_of(cover));
}

CharacteristicFunction char_fn(const ShapeSet& shapes) {
  if (shapes.empty()) throw Error(ErrorKind::InvalidArgument, "char_fn: empty covering");
  return CharacteristicFunction(shapes);
}

CompactnessReport is_compact(const CharacteristicFunction& chi, const RootSearch& search) {
  CompactnessReport report;
  report.derivativeAtZero = chi.derivative_at_zero();
  report.derivativeTest = report.derivativeAtZero > 0.0;
  const double noise = noise_floor(chi);
  // Points approaching 0 first, then the regular grid out to -depth.
  for (int k = kNearZeroHalvings; k >= 1; --k) {
    const double x = -search.step * std::ldexp(1.0, -k);
    if (chi(x) < -noise) {
      report.compact = true;
      report.witness = x;
      return report;
    }
  }
  const auto steps = static_cast<long>(std::ceil(search.depth / search.step));
  for (long j = 1; j <= steps; ++j) {
    const double x = -static_cast<double>(j) * search.step;
    if (chi(x) < -noise) {
      report.compact = true;
      report.witness = x;
      return report;
    }
  }
  return report;
}

double lambda_f(const CharacteristicFunction& chi, const RootSearch& search) {
  if (search.step <= 0.0 || search.depth <= 0.0) {
    throw Error(ErrorKind::InvalidArgument, "lambda_f: depth and step must be positive");
  }
  const double left = -search.depth;
  if (!(chi(left) > 0.0)) {
    throw Error(ErrorKind::RootBelowWindow, "root below search window: chi(" + fmt(left) + ") is not positive");
  }
  const auto steps = static_cast<long>(std::ceil(search.depth / search.step));
  double prev = left;
  for (long j = steps - 1; j >= 1; --j) {
    const double x = -static_cast<double>(j) * search.step;
    if (x <= left) continue;
    if (chi(x) < 0.0) return bisect_root(chi, prev, x, search.tolerance);
    prev = x;
  }
  const double noise = noise_floor(chi);
  for (int k = 1; k <= kNearZeroHalvings; ++k) {
    const double x = -search.step * std::ldexp(1.0, -k);
    if (chi(x) < -noise) return bisect_root(chi, prev, x, search.tolerance);
    prev = x;
  }
  throw Error(ErrorKind::NotCompact, "chi takes no negative value on the search window");
}

double CompensationProfile::polynomial(double x) const {
  double sum = 0.0;
  for (const auto& [k, alpha] : alphas) sum += alpha * std::pow(x, static_cast<double>(k));
  return sum;
}

double mu_of(const ShapeSet& g) {
  BigInt widths = 0;
  for (const auto& [key, mult] : g.entries()) widths += mult * key.second;
  return std::exp(log_big(widths) - g.log_sigma());
}

CompensationProfile compensation_profile(const ShapeSet& g, const BigRational& tau) {
  require_tau(tau);
  if (g.empty()) throw Error(ErrorKind::InvalidArgument, "compensation_profile: empty covering");
  if (!g.is_one_sided()) throw Error(ErrorKind::NotOneSided, "compensation_profile: covering is not one-sided");
  CompensationProfile profile;
  profile.tau = tau;
  const double logSigma = g.log_sigma();
  std::map<std::int64_t, LogSum> buckets;
  for (const auto& [key, mult] : g.entries()) {
    const auto k = floor_log(BigRational(key.first, key.second), tau);
    buckets[k].add_log(log_big(mult) + log_sigma_of(key.first, key.second));
  }
  for (const auto& [k, weight] : buckets) {
    profile.alphas[k] = std::exp(weight.log() - logSigma);
    profile.degree = std::max(profile.degree, k);
  }
  profile.mu = mu_of(g);
  profile.pi = profile.polynomial(1.0 / std::sqrt(to_double(tau)));
  return profile;
}

CompensationProfile compensation_profile(const Covering& g, const BigRational& tau) {
  if (!is_one_sided(g)) throw Error(ErrorKind::NotOneSided, "compensation_profile: covering is not one-sided");
  return compensation_profile(shapes_of(g), tau);
}

double pi_direct(const ShapeSet& g, const BigRational& tau) {
  require_tau(tau);
  const double logTau = log_big(tau);
  const double logSigma = g.log_sigma();
  double sum = 0.0;
  for (const auto& [key, mult] : g.entries()) {
    const auto& [hi, lo] = key.first >= key.second ? key : ShapeSet::Key{key.second, key.first};
    const auto k = floor_log(BigRational(hi, lo), tau);
    sum += std::exp(log_big(mult) + log_sigma_of(key.first, key.second) - logSigma -
                    0.5 * static_cast<double>(k) * logTau);
  }
  return sum;
}

double LaurentWeights::operator()(double x) const {
  double sum = 0.0;
  for (const auto& [i, beta] : betas) sum += beta * std::pow(x, static_cast<double>(i));
  return sum;
}

LaurentWeights laurent_weights(const ShapeSet& f, const BigRational& tau) {
  require_tau(tau);
  if (f.empty()) throw Error(ErrorKind::InvalidArgument, "laurent_weights: empty covering");
  LaurentWeights out;
  out.tau = tau;
  const double logSigma = f.log_sigma();
  std::map<std::int64_t, LogSum> buckets;
  for (const auto& [key, mult] : f.entries()) {
    const auto i = floor_log(BigRational(key.first, key.second), tau);
    buckets[i].add_log(log_big(mult) + log_sigma_of(key.first, key.second));
  }
  for (const auto& [i, weight] : buckets) {
    out.betas[i] = std::exp(weight.log() - logSigma);
    out.d = std::max<std::int64_t>(out.d, i < 0 ? -i : i);
  }
  return out;
}

LaurentWeights laurent_weights(const Covering& f, const BigRational& tau) {
  return laurent_weights(shapes_of(f), tau);
}

TheoremReport theorem_condition(const ShapeSet& f, const ShapeSet& g, const RootSearch& search) {
  TheoremReport report;
  if (f.empty() || g.empty()) throw Error(ErrorKind::InvalidArgument, "theorem_condition: empty covering");
  const double logSigmaF = f.log_sigma();
  const double logSigmaG = g.log_sigma();
  report.sigmaF = std::exp(logSigmaF);
  report.sigmaG = std::exp(logSigmaG);
  report.lhs = std::exp(logSigmaG - logSigmaF);
  if (logSigmaG < logSigmaF) report.failures.push_back("sigma(G) < sigma(F)");

  const CharacteristicFunction chiF(f);
  if (!is_compact(chiF, search).compact) {
    report.failures.push_back("F is not compact");
  } else {
    try {
      report.lambda = lambda_f(chiF, search);
    } catch (const Error& e) {
      report.failures.push_back(std::string("lambda_F: ") + e.what());
    }
  }
  const bool oneSided = g.is_one_sided();
  if (!oneSided) report.failures.push_back("G is not one-sided");
  if (!is_compact(CharacteristicFunction(g), search).compact) report.failures.push_back("G is not compact");
  if (oneSided) report.mu = mu_of(g);

  if (report.lambda && oneSided) {
    report.rhs = std::exp(2.0 * *report.lambda * std::log(report.mu));
    if (!(report.lhs < report.rhs)) {
      report.failures.push_back("condition fails: sigma(G)/sigma(F) = " + fmt(report.lhs) +
                                " is not below mu_G^(2 lambda_F) = " + fmt(report.rhs));
    }
  }
  report.holds = report.failures.empty();
  return report;
}

TheoremReport theorem_condition(const Covering& f, const Covering& g, const RootSearch& search) {
  require_same_base(f, g);
  return theorem_condition(shapes_of(f), shapes_of(g), search);
}

std::vector<BigRational> default_tau_candidates() {
  std::vector<BigRational> out{BigRational(4), BigRational(3), BigRational(2), BigRational(3, 2)};
  for (int k = 2; k <= 10; ++k) {
    const BigInt q = BigInt(1) << k;
    out.emplace_back(q + 1, q);
  }
  return out;
}

std::optional<double> largest_unit_root(const LaurentWeights& weights) {
  // P_F is convex on (0, inf) with P_F(1) = 1, so at most one other root
  // lies in (0, 1), and P_F - 1 changes sign there.
  double lo = 1e-9, hi = 1.0 - 1e-9;
  const double atLo = weights(lo) - 1.0;
  const double atHi = weights(hi) - 1.0;
  if (!(atHi < 0.0) || !(atLo >= 0.0)) return std::nullopt;
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (weights(mid) - 1.0 < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SynthesisParams select_params(const ShapeSet& f, const ShapeSet& g, const ParamSearch& search) {
  const TheoremReport theorem = theorem_condition(f, g, search.root);
  if (!theorem.holds) {
    std::string reasons;
    for (const auto& r : theorem.failures) reasons += (reasons.empty() ? "" : "; ") + r;
    throw Error(ErrorKind::NoFeasiblePair, "no feasible pair: " + reasons);
  }
  if (search.gamma && *search.gamma <= 0) throw Error(ErrorKind::InvalidArgument, "gamma must be positive");
  if (search.lambdaStep <= 0.0) throw Error(ErrorKind::InvalidArgument, "lambda grid step must be positive");

  std::vector<BigRational> taus;
  if (search.tau) {
    taus.push_back(*search.tau);
  } else {
    taus = search.tauCandidates;
    std::sort(taus.begin(), taus.end(), std::greater<>());
    taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  }

  const CharacteristicFunction chiF(f);
  const double lambdaF = *theorem.lambda;
  const double logRatio = std::log(theorem.lhs);
  std::string lastRejection = "no candidate produced a feasible lambda";

  for (const auto& tau : taus) {
    require_tau(tau);
    const LaurentWeights betas = laurent_weights(f, tau);
    const CompensationProfile profile = compensation_profile(g, tau);
    const double logTau = log_big(tau);
    const double logPi = std::log(profile.pi);

    // Canonical grid order: from just above lambda_F toward 0; the first
    // feasible lambda gives the widest gamma window.
    std::optional<double> lambda;
    for (long j = 1;; ++j) {
      const double candidate = lambdaF + static_cast<double>(j) * search.lambdaStep;
      if (candidate >= 0.0) break;
      if (!(chiF(candidate) < 0.0)) continue;
      if (betas(std::exp(candidate * logTau)) > 1.0 + 1e-12) continue;
      if (!(logRatio < 2.0 * candidate * logPi)) continue;
      lambda = candidate;
      break;
    }
    if (!lambda) {
      lastRejection = "no feasible lambda at tau = " + format_rational(tau);
      continue;
    }

    SynthesisParams params;
    params.tau = tau;
    params.lambda = *lambda;
    params.pi = profile.pi;
    params.d = betas.d;
    params.gammaLow = -(1.0 / *lambda) * (logRatio / logTau);
    params.gammaHigh = -2.0 * (logPi / logTau);
    if (!(params.gammaLow < params.gammaHigh)) {
      lastRejection = "empty gamma window at tau = " + format_rational(tau);
      continue;
    }
    if (search.gamma) {
      const double gamma = to_double(*search.gamma);
      if (!(gamma > params.gammaLow && gamma <= params.gammaHigh)) {
        lastRejection = "gamma = " + format_rational(*search.gamma) + " lies outside the window (" +
                        fmt(params.gammaLow) + ", " + fmt(params.gammaHigh) + "] at tau = " + format_rational(tau);
        continue;
      }
      params.gamma = *search.gamma;
    } else {
      params.gamma = rational_in_window(0.5 * (params.gammaLow + params.gammaHigh), params.gammaLow,
                                        params.gammaHigh, search.maxGammaDenominator);
    }

    if (search.nu) {
      if (!(*search.nu > 0.0 && *search.nu < 1.0)) throw Error(ErrorKind::InvalidArgument, "nu must lie in (0, 1)");
      if (betas(*search.nu) > 1.0 + 1e-9) {
        throw Error(ErrorKind::InvalidArgument, "nu = " + fmt(*search.nu) + " gives P_F(nu) > 1");
      }
      params.nu = *search.nu;
    } else {
      params.nu = largest_unit_root(betas).value_or(std::exp(*lambda * logTau));
    }

    const double gamma = to_double(params.gamma);
    params.c0 = theorem.lhs * std::pow(params.nu, gamma);
    params.c1 = params.c0 * profile.pi * std::exp(0.5 * gamma * logTau);
    if (!(params.c0 < 1.0) || params.c1 > params.c0 * (1.0 + 1e-12)) {
      throw Error(ErrorKind::ConstantNotContracting,
                  "C0 = " + fmt(params.c0) + ", C1 = " + fmt(params.c1) + " violate C1 <= C0 < 1");
    }
    return params;
  }
  if (search.gamma) throw Error(ErrorKind::EmptyGammaWindow, lastRejection);
  throw Error(ErrorKind::NoFeasiblePair, "no feasible pair: " + lastRejection);
}

SynthesisParams select_params(const Covering& f, const Covering& g, const ParamSearch& search) {
  require_same_base(f, g);
  if (!is_one_sided(g)) throw Error(ErrorKind::NotOneSided, "select_params: G is not one-sided");
  return select_params(shapes_of(f), shapes_of(g), search);
}

}  // namespace kcover
