#pragma once

#include <array>
#include <optional>

#include "mmr/measures.hpp"
#include "mmr/states.hpp"

namespace mmr {

enum class Outcome { Up, Down };

const char* to_string(Outcome o);

/// <outcome_j| psi>: the unnormalized remainder on n-1 spins, written as
/// factor * state with `state` normalized. `state` is empty when the
/// projection vanishes identically.
struct SpinProjection {
  Complex factor = 0.0;
  std::optional<MssPureState> state;
};

SpinProjection project_spin(const MssPureState& psi, int spin, Outcome outcome);

struct OutcomeBranch {
  Outcome outcome = Outcome::Up;
  double probability = 0.0;
  /// Conditional state on the remaining n-1 spins; empty for a zero-probability
  /// branch. A component that vanishes in this branch gets amplitude 0 and
  /// borrows the other component's state.
  std::optional<MicroMacroState> post_state;
  int measured_index = 0;
  /// |<S0'|S1'>| of the conditional components (0 when one of them vanishes).
  double component_overlap = 0.0;

  bool empty() const { return !post_state.has_value(); }
};

/// Projective z measurement of spin `spin` (1-based). Requires n >= 2.
std::array<OutcomeBranch, 2> measure_spin(const MicroMacroState& s, int spin);

/// Entanglement entropy of the branch's conditional state; 0 for empty branches.
double branch_entropy(const OutcomeBranch& branch);

/// Qubit (x) remaining-spins density matrix after tracing out spin `spin`.
/// Symmetric-sector inputs stay in the (n)-dimensional Dicke sector of the
/// remaining spins; other forms use the orthonormalized span of the projected
/// components.
BipartiteDensity lose_spin(const MicroMacroState& s, int spin);

/// (1/n) sum_j sum_outcome P * E_V(branch).
double average_entropy_after_measurement(const MicroMacroState& s);

}  // namespace mmr
