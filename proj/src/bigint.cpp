#include "kcover/bigint.hpp"

#include <cmath>
#include <limits>

#include "kcover/error.hpp"

namespace kcover {

namespace {

constexpr double kLn2 = 0.69314718055994530942;

// base^k as an exact rational, k of either sign.
BigRational pow_rational(const BigRational& base, std::int64_t k) {
  const BigInt& p = boost::multiprecision::numerator(base);
  const BigInt& q = boost::multiprecision::denominator(base);
  const auto e = static_cast<unsigned>(k < 0 ? -k : k);
  if (k >= 0) return BigRational(pow_big(p, e), pow_big(q, e));
  return BigRational(pow_big(q, e), pow_big(p, e));
}

}  // namespace

double log_big(const BigInt& x) {
  if (x <= 0) throw Error(ErrorKind::InvalidArgument, "log_big: argument must be positive");
  const auto top = boost::multiprecision::msb(x);
  if (top < 64) return std::log(static_cast<double>(x.convert_to<std::uint64_t>()));
  const auto shift = top - 63;
  const auto lead = static_cast<BigInt>(x >> shift).convert_to<std::uint64_t>();
  return std::log(static_cast<double>(lead)) + static_cast<double>(shift) * kLn2;
}

double log_big(const BigRational& x) {
  return log_big(boost::multiprecision::numerator(x)) -
         log_big(boost::multiprecision::denominator(x));
}

double to_double(const BigInt& x) {
  if (x == 0) return 0.0;
  const BigInt mag = abs(x);
  if (boost::multiprecision::msb(mag) >= 1024) {
    return x < 0 ? -std::numeric_limits<double>::infinity()
                 : std::numeric_limits<double>::infinity();
  }
  return x.convert_to<double>();
}

double to_double(const BigRational& x) {
  const BigInt& num = boost::multiprecision::numerator(x);
  const BigInt& den = boost::multiprecision::denominator(x);
  if (num == 0) return 0.0;
  const BigInt mag = abs(num);
  if (boost::multiprecision::msb(mag) < 1000 && boost::multiprecision::msb(den) < 1000) {
    return num.convert_to<double>() / den.convert_to<double>();
  }
  const double v = std::exp(log_big(mag) - log_big(den));
  return num < 0 ? -v : v;
}

BigInt pow_big(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

BigRational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw Error(ErrorKind::Parse, "empty integer in rational '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
      if (s[j] < '0' || s[j] > '9') throw Error(ErrorKind::Parse, "bad rational '" + std::string(text) + "'");
    }
    return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_int(text));
  const BigInt num = parse_int(text.substr(0, slash));
  const BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  return BigRational(num, den);
}

std::string format_rational(const BigRational& x) {
  const BigInt& den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

std::int64_t floor_log(const BigRational& x, const BigRational& base) {
  if (x <= 0) throw Error(ErrorKind::InvalidArgument, "floor_log: x must be positive");
  if (base <= 1) throw Error(ErrorKind::InvalidArgument, "floor_log: base must exceed 1");
  // The float estimate is only a starting point; the loops below settle the
  // answer exactly.
  auto k = static_cast<std::int64_t>(std::floor(log_big(x) / log_big(base)));
  while (pow_rational(base, k) > x) --k;
  while (pow_rational(base, k + 1) <= x) ++k;
  return k;
}

std::int64_t ceil_log(const BigRational& x, const BigRational& base) {
  const auto k = floor_log(x, base);
  return pow_rational(base, k) == x ? k : k + 1;
}

BigRational rational_in_window(double target, double lo, double hi, std::int64_t maxDen) {
  // Convergents h/k of the continued fraction of target.
  BigInt hPrev = 1, h = static_cast<std::int64_t>(std::floor(target));
  BigInt kPrev = 0, k = 1;
  double frac = target - std::floor(target);
  for (int iter = 0; iter < 64; ++iter) {
    if (k > maxDen) break;
    const BigRational candidate(h, k);
    const double v = to_double(candidate);
    if (v > lo && v <= hi) return candidate;
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    BigInt hNext = a * h + hPrev;
    BigInt kNext = a * k + kPrev;
    hPrev = h;
    kPrev = k;
    h = hNext;
    k = kNext;
  }
  throw Error(ErrorKind::EmptyGammaWindow, "no rational with bounded denominator inside the window");
}

void LogSum::rescale(double newScale) {
  const double factor = std::exp(scale_ - newScale);
  sum_ *= factor;
  carry_ *= factor;
  scale_ = newScale;
}

void LogSum::add_log(double logTerm) {
  if (std::isinf(logTerm) && logTerm < 0) return;
  if (empty_) {
    scale_ = logTerm;
    empty_ = false;
  } else if (logTerm > scale_ + 200.0) {
    rescale(logTerm);
  }
  const double term = std::exp(logTerm - scale_);
  // Neumaier compensated summation.
  const double t = sum_ + term;
  if (std::abs(sum_) >= std::abs(term)) {
    carry_ += (sum_ - t) + term;
  } else {
    carry_ += (term - t) + sum_;
  }
  sum_ = t;
}

void LogSum::add(double term) {
  if (term <= 0.0) return;
  add_log(std::log(term));
}

double LogSum::log() const {
  if (empty_) return -std::numeric_limits<double>::infinity();
  return scale_ + std::log(sum_ + carry_);
}

double LogSum::value() const { return std::exp(log()); }

}  // namespace kcover
