#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kcover/covering.hpp"

namespace kcover {

enum class Semiring { IntegerSum, BooleanOr, Mod2Xor };

std::string to_string(Semiring s);
Semiring parse_semiring(std::string_view text);
Semiring semiring_for(Mode mode);

/// Depth-2 linear circuit: middle gate i combines the inputs listed in
/// middleGates[i]; output u combines the gates listed in outputTaps[u].
/// Computes y = A x when lowered from a covering of A.
struct Depth2Circuit {
  Semiring semiring = Semiring::IntegerSum;
  std::size_t numInputs = 0;
  std::size_t numOutputs = 0;
  std::vector<std::vector<std::size_t>> middleGates;
  std::vector<std::vector<std::size_t>> outputTaps;

  std::size_t gate_count() const noexcept { return middleGates.size(); }
  /// Total fan-in over both layers; equals w(F) for a lowered covering.
  std::size_t wire_count() const noexcept;
};

/// One middle gate per rectangle, fed by the rectangle's columns and tapped
/// by its rows. Single-input gates are kept so wires match w(F).
Depth2Circuit lower(const Covering& cover, std::size_t sideCap = kDefaultSideCap);
Depth2Circuit lower(const Covering& cover, Semiring semiring, std::size_t sideCap = kDefaultSideCap);

/// Evaluates the circuit over its semiring. For BooleanOr and Mod2Xor the
/// inputs must be 0/1.
std::vector<std::int64_t> evaluate(const Depth2Circuit& circuit, std::span<const std::int64_t> x);

}  // namespace kcover
