#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kcover/analysis.hpp"
#include "kcover/bigint.hpp"
#include "kcover/covering.hpp"
#include "kcover/shape_set.hpp"

namespace kcover::ks {

/// Largest t whose explicit 2^t x 2^t coverings are generated.
inline constexpr int kMaxExplicitT = 13;

BigInt binomial(int n, int k);

/// s(m, k) = C(m,k) + C(m,k+1) + ... + C(m,m); zero when k > m.
BigInt binomial_tail(int m, int k);

/// Width-1 covering of D_{2^t} built by extraction: for label size
/// k = 0, 1, ..., floor(t/2), first every size-k column gives up its still
/// uncovered ones, then every size-k row does. Single level of base 2^t.
Covering gradient_covering(int t);

/// One rectangle per column v: rows disjoint from v, times {v}.
Covering column_covering(int t);

/// Shape multisets of the same two coverings from the closed-form counts,
/// valid far beyond the explicit range.
ShapeSet gradient_shapes(int t);
ShapeSet column_shapes(int t);

/// sigma(F_t) from the closed-form binomial-sum expression, in log domain.
double log_sigma_gradient(int t);
double sigma_gradient(int t);

struct FamilyReport {
  int t = 0;
  double sigmaF = 0.0;
  double sigmaG = 0.0;
  double exponent = 0.0;  ///< log_{2^t} sigma(F_t)
  std::optional<double> lambdaF;
  double muG = 0.0;
  bool applicable = false;
  std::optional<std::string> failureReason;
};

FamilyReport report(int t, const RootSearch& search = {});

/// Reports for t = 2..tMax, computed on `workers` threads; the result order
/// does not depend on the worker count.
std::vector<FamilyReport> scan(int tMax, const RootSearch& search = {}, unsigned workers = 1);

/// CSV with header t,sigmaF,sigmaG,exponent,lambdaF,muG,applicable,reason.
std::string scan_csv(const std::vector<FamilyReport>& reports);

/// log_{2^15} sigma(F_15); throws unless it is below 1.251.
double corollary_exponent();

}  // namespace kcover::ks
