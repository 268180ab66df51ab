#include "kcover/ks_family.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <thread>

#include "kcover/error.hpp"

namespace kcover::ks {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require_explicit_t(int t, const char* what) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, std::string(what) + ": t must be positive");
  if (t > kMaxExplicitT) {
    throw Error(ErrorKind::SizeLimit, std::string(what) + ": explicit generation is capped at t = " +
                                          std::to_string(kMaxExplicitT));
  }
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

BigInt binomial(int n, int k) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

BigInt binomial_tail(int m, int k) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "binomial_tail: negative m");
  BigInt sum = 0;
  for (int j = std::max(k, 0); j <= m; ++j) sum += binomial(m, j);
  return sum;
}

Covering gradient_covering(int t) {
  require_explicit_t(t, "gradient_covering");
  const std::uint32_t side = 1u << t;
  std::vector<std::uint8_t> covered(std::size_t{side} * side, 0);
  auto is_open = [&](std::uint32_t u, std::uint32_t v) {
    return (u & v) == 0 && !covered[std::size_t{u} * side + v];
  };

  Covering cover;
  cover.mode = Mode::Sum;
  cover.baseSizes = {side};
  for (int k = 0; k <= t / 2; ++k) {
    for (std::uint32_t v = 0; v < side; ++v) {
      if (std::popcount(v) != k) continue;
      std::vector<std::uint32_t> rows;
      for (std::uint32_t u = 0; u < side; ++u)
        if (is_open(u, v)) rows.push_back(u);
      if (rows.empty()) continue;
      for (auto u : rows) covered[std::size_t{u} * side + v] = 1;
      cover.rectangles.push_back(Rectangle::single(std::move(rows), {v}));
    }
    for (std::uint32_t u = 0; u < side; ++u) {
      if (std::popcount(u) != k) continue;
      std::vector<std::uint32_t> cols;
      for (std::uint32_t v = 0; v < side; ++v)
        if (is_open(u, v)) cols.push_back(v);
      if (cols.empty()) continue;
      for (auto v : cols) covered[std::size_t{u} * side + v] = 1;
      cover.rectangles.push_back(Rectangle::single({u}, std::move(cols)));
    }
  }
  return cover;
}

Covering column_covering(int t) {
  require_explicit_t(t, "column_covering");
  const std::uint32_t side = 1u << t;
  Covering cover;
  cover.mode = Mode::Sum;
  cover.baseSizes = {side};
  for (std::uint32_t v = 0; v < side; ++v) {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t u = 0; u < side; ++u)
      if ((u & v) == 0) rows.push_back(u);
    cover.rectangles.push_back(Rectangle::single(std::move(rows), {v}));
  }
  return cover;
}

ShapeSet gradient_shapes(int t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "gradient_shapes: t must be positive");
  ShapeSet shapes;
  for (int k = 0; k <= t / 2; ++k) {
    const BigInt labels = binomial(t, k);
    const BigInt height = binomial_tail(t - k, k);
    const BigInt length = binomial_tail(t - k, k + 1);
    if (height > 0) shapes.add(height, 1, labels);
    if (length > 0) shapes.add(1, length, labels);
  }
  return shapes;
}

ShapeSet column_shapes(int t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "column_shapes: t must be positive");
  ShapeSet shapes;
  for (int j = 0; j <= t; ++j) shapes.add(BigInt(1) << (t - j), 1, binomial(t, j));
  return shapes;
}

double log_sigma_gradient(int t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "sigma_gradient: t must be positive");
  LogSum sum;
  for (int k = 0; k <= t / 2; ++k) {
    const double logLabels = log_big(binomial(t, k));
    const BigInt height = binomial_tail(t - k, k);
    const BigInt length = binomial_tail(t - k, k + 1);
    if (height > 0) sum.add_log(logLabels + 0.5 * log_big(height));
    if (length > 0) sum.add_log(logLabels + 0.5 * log_big(length));
  }
  return sum.log();
}

double sigma_gradient(int t) { return std::exp(log_sigma_gradient(t)); }

FamilyReport report(int t, const RootSearch& search) {
  FamilyReport r;
  r.t = t;
  const ShapeSet f = gradient_shapes(t);
  const ShapeSet g = column_shapes(t);
  const double logSigmaF = log_sigma_gradient(t);
  r.sigmaF = std::exp(logSigmaF);
  r.sigmaG = g.sigma();
  r.exponent = logSigmaF / (static_cast<double>(t) * kLn2);
  const TheoremReport theorem = theorem_condition(f, g, search);
  r.lambdaF = theorem.lambda;
  r.muG = theorem.mu;
  r.applicable = theorem.holds;
  if (!theorem.holds) {
    std::string reason;
    for (const auto& failure : theorem.failures) reason += (reason.empty() ? "" : "; ") + failure;
    r.failureReason = reason;
  }
  return r;
}

std::vector<FamilyReport> scan(int tMax, const RootSearch& search, unsigned workers) {
  if (tMax < 2) throw Error(ErrorKind::InvalidArgument, "scan: tMax must be at least 2");
  std::vector<FamilyReport> out(static_cast<std::size_t>(tMax - 1));
  std::atomic<int> next{2};
  auto work = [&] {
    for (int t = next++; t <= tMax; t = next++) out[static_cast<std::size_t>(t - 2)] = report(t, search);
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

std::string scan_csv(const std::vector<FamilyReport>& reports) {
  std::string csv = "t,sigmaF,sigmaG,exponent,lambdaF,muG,applicable,reason\n";
  for (const auto& r : reports) {
    std::string reason;
    if (r.failureReason) {
      reason = "\"";
      for (char c : *r.failureReason) reason += c == '"' ? std::string("\"\"") : std::string(1, c);
      reason += "\"";
    }
    csv += std::to_string(r.t) + "," + format_double(r.sigmaF) + "," + format_double(r.sigmaG) + "," +
           format_double(r.exponent) + "," + (r.lambdaF ? format_double(*r.lambdaF) : std::string()) + "," +
           format_double(r.muG) + "," + (r.applicable ? "true" : "false") + "," + reason + "\n";
  }
  return csv;
}

double corollary_exponent() {
  const double exponent = log_sigma_gradient(15) / (15.0 * kLn2);
  if (!(exponent < 1.251)) {
    throw Error(ErrorKind::PreconditionFailed, "log_{2^15} sigma(F_15) is not below 1.251");
  }
  return exponent;
}

}  // namespace kcover::ks
