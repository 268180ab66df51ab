#include "kcover/circuit.hpp"

#include "kcover/error.hpp"

namespace kcover {

std::string to_string(Semiring s) {
  switch (s) {
    case Semiring::IntegerSum: return "sum";
    case Semiring::BooleanOr: return "or";
    case Semiring::Mod2Xor: return "xor";
  }
  return "sum";
}

Semiring parse_semiring(std::string_view text) {
  if (text == "sum") return Semiring::IntegerSum;
  if (text == "or") return Semiring::BooleanOr;
  if (text == "xor") return Semiring::Mod2Xor;
  throw Error(ErrorKind::Parse, "unknown semiring '" + std::string(text) + "'");
}

Semiring semiring_for(Mode mode) {
  switch (mode) {
    case Mode::Sum: return Semiring::IntegerSum;
    case Mode::Or: return Semiring::BooleanOr;
    case Mode::Xor: return Semiring::Mod2Xor;
  }
  return Semiring::IntegerSum;
}

std::size_t Depth2Circuit::wire_count() const noexcept {
  std::size_t wires = 0;
  for (const auto& gate : middleGates) wires += gate.size();
  for (const auto& taps : outputTaps) wires += taps.size();
  return wires;
}

Depth2Circuit lower(const Covering& cover, std::size_t sideCap) {
  return lower(cover, semiring_for(cover.mode), sideCap);
}

Depth2Circuit lower(const Covering& cover, Semiring semiring, std::size_t sideCap) {
  validate(cover);
  const BigInt side = cover.side();
  if (side > sideCap) throw Error(ErrorKind::SizeLimit, "lower: matrix side " + side.str() + " exceeds the cap");
  Depth2Circuit c;
  c.semiring = semiring;
  c.numInputs = c.numOutputs = side.convert_to<std::size_t>();
  c.outputTaps.resize(c.numOutputs);
  for (const auto& rect : cover.rectangles) {
    auto cells = expand(rect, cover.baseSizes, sideCap);
    const std::size_t gate = c.middleGates.size();
    c.middleGates.push_back(std::move(cells.cols));
    for (auto row : cells.rows) c.outputTaps[row].push_back(gate);
  }
  return c;
}

namespace {

std::int64_t combine(Semiring s, std::int64_t acc, std::int64_t v) {
  switch (s) {
    case Semiring::IntegerSum: return acc + v;
    case Semiring::BooleanOr: return (acc | v) != 0 ? 1 : 0;
    case Semiring::Mod2Xor: return (acc ^ v) & 1;
  }
  return acc;
}

}  // namespace

std::vector<std::int64_t> evaluate(const Depth2Circuit& circuit, std::span<const std::int64_t> x) {
  if (x.size() != circuit.numInputs) {
    throw Error(ErrorKind::DimensionMismatch, "evaluate: expected " + std::to_string(circuit.numInputs) +
                                                  " inputs, got " + std::to_string(x.size()));
  }
  if (circuit.semiring != Semiring::IntegerSum) {
    for (auto v : x)
      if (v != 0 && v != 1) throw Error(ErrorKind::InvalidArgument, "evaluate: boolean circuits take 0/1 inputs");
  }
  std::vector<std::int64_t> gates(circuit.middleGates.size(), 0);
  for (std::size_t g = 0; g < gates.size(); ++g)
    for (auto in : circuit.middleGates[g]) gates[g] = combine(circuit.semiring, gates[g], x[in]);
  std::vector<std::int64_t> y(circuit.numOutputs, 0);
  for (std::size_t u = 0; u < y.size(); ++u)
    for (auto g : circuit.outputTaps[u]) y[u] = combine(circuit.semiring, y[u], gates[g]);
  return y;
}

}  // namespace kcover
