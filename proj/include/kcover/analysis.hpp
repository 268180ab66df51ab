#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kcover/bigint.hpp"
#include "kcover/covering.hpp"
#include "kcover/shape_set.hpp"

namespace kcover {

/// Knobs for the sign-change scan behind lambda_f and is_compact.
struct RootSearch {
  double depth = 64.0;       ///< scan window is [-depth, 0)
  double step = 1e-3;        ///< grid step before bisection
  double tolerance = 1e-12;  ///< final bracket width
};

/// One merged term coeff * ratio^x of the characteristic function.
struct ChiTerm {
  BigRational ratio;  ///< a/b, exact
  double logRatio = 0.0;
  double coeff = 0.0;  ///< summed sqrt(ab) over rectangles with this ratio
};

/// chi(x) = sum_i sigma(R_i) (a_i/b_i)^x - sigma(F), with equal ratios merged.
class CharacteristicFunction {
 public:
  explicit CharacteristicFunction(const ShapeSet& shapes);

  double operator()(double x) const;
  /// chi'(0) = sum sigma(R) ln(a/b); positive is sufficient for compactness.
  double derivative_at_zero() const;

  double sigma() const noexcept { return sigma_; }
  double constant() const noexcept { return -sigma_; }
  const std::vector<ChiTerm>& terms() const noexcept { return terms_; }

 private:
  std::vector<ChiTerm> terms_;
  double sigma_ = 0.0;
};

CharacteristicFunction char_fn(const Covering& cover);
CharacteristicFunction char_fn(const ShapeSet& shapes);

struct CompactnessReport {
  bool compact = false;
  double derivativeAtZero = 0.0;
  bool derivativeTest = false;  ///< chi'(0) > 0
  std::optional<double> witness;  ///< a sampled x < 0 with chi(x) < 0
};

CompactnessReport is_compact(const CharacteristicFunction& chi, const RootSearch& search = {});

/// Minimal real root of chi with chi negative just to its right, found by a
/// left-to-right sign-change scan over [-depth, 0) followed by bisection.
/// Throws NotCompact, or RootBelowWindow when chi(-depth) is not positive.
double lambda_f(const CharacteristicFunction& chi, const RootSearch& search = {});

/// Bucket weights of a one-sided covering G at discretization step tau:
/// alpha_k is the share of sigma(G) carried by rectangles with
/// floor(log_tau rho) = k.
struct CompensationProfile {
  BigRational tau;
  double mu = 0.0;
  std::map<std::int64_t, double> alphas;
  std::int64_t degree = 0;
  double pi = 0.0;  ///< P_G(1/sqrt(tau))

  /// P_G(x) = sum_k alpha_k x^k.
  double polynomial(double x) const;
};

CompensationProfile compensation_profile(const ShapeSet& g, const BigRational& tau);
CompensationProfile compensation_profile(const Covering& g, const BigRational& tau);

/// mu_G = sum b / sigma(G).
double mu_of(const ShapeSet& g);

/// pi_G(tau) evaluated rectangle by rectangle from its defining sum, without
/// going through the alpha profile.
double pi_direct(const ShapeSet& g, const BigRational& tau);

/// Coefficients of P_F(x) = sum_i beta_i x^i with i = floor(log_tau(a/b)).
struct LaurentWeights {
  BigRational tau;
  std::map<std::int64_t, double> betas;
  std::int64_t d = 0;  ///< max |i| with beta_i > 0

  double operator()(double x) const;
};

LaurentWeights laurent_weights(const ShapeSet& f, const BigRational& tau);
LaurentWeights laurent_weights(const Covering& f, const BigRational& tau);

struct TheoremReport {
  bool holds = false;
  double lhs = 0.0;  ///< sigma(G)/sigma(F)
  double rhs = 0.0;  ///< mu_G^(2 lambda_F)
  std::optional<double> lambda;
  double mu = 0.0;
  double sigmaF = 0.0;
  double sigmaG = 0.0;
  std::vector<std::string> failures;
};

TheoremReport theorem_condition(const ShapeSet& f, const ShapeSet& g, const RootSearch& search = {});
TheoremReport theorem_condition(const Covering& f, const Covering& g, const RootSearch& search = {});

struct SynthesisParams {
  BigRational tau;
  double lambda = 0.0;
  double nu = 0.0;
  BigRational gamma;
  double c0 = 0.0;
  double c1 = 0.0;
  double gammaLow = 0.0;   ///< open lower end of the gamma window
  double gammaHigh = 0.0;  ///< closed upper end
  double pi = 0.0;         ///< pi_G(tau)
  std::int64_t d = 0;      ///< degree of P_F at tau
};

std::vector<BigRational> default_tau_candidates();

struct ParamSearch {
  std::vector<BigRational> tauCandidates = default_tau_candidates();
  double lambdaStep = 1e-3;
  std::optional<BigRational> tau;
  std::optional<BigRational> gamma;
  std::optional<double> nu;
  RootSearch root;
  std::int64_t maxGammaDenominator = 1000000;
};

/// Largest root of P_F(x) = 1 strictly inside (0, 1), if any.
std::optional<double> largest_unit_root(const LaurentWeights& weights);

/// Searches (lambda, tau) for a feasible pair, then fixes nu and gamma and
/// checks that the contraction constants satisfy C1 <= C0 < 1.
SynthesisParams select_params(const ShapeSet& f, const ShapeSet& g, const ParamSearch& search = {});
SynthesisParams select_params(const Covering& f, const Covering& g, const ParamSearch& search = {});

}  // namespace kcover
