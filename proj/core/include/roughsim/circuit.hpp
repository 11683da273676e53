#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "roughsim/lattice.hpp"
#include "roughsim/rng.hpp"
#include "roughsim/tableau.hpp"

namespace rough {

enum class GateKind : std::uint8_t { cnot, meas_zx, hadamard };

struct GateEvent {
  std::uint32_t time;
  GateKind kind;
  std::uint32_t control;  // site index (the only site for hadamard)
  std::uint32_t target;   // unused for hadamard

  bool operator==(const GateEvent&) const = default;
};

// One fully sampled disorder realization: a pure function of
// (spec, p, T, seed). Identity one-qubit gates are not materialized.
struct CircuitRealization {
  LatticeSpec spec;
  double p;
  std::size_t T;
  std::uint64_t seed;
  std::vector<GateEvent> events;  // time-ordered; per step, two-qubit first
};

// Disorder draw order (a documented reproducibility contract): t ascending;
// within a step, control sites in site_index order with target axes in order
// e_1..e_d for the two-qubit gates; then all sites in index order for the
// one-qubit gates.
CircuitRealization sample_realization(const LatticeSpec& spec, double p,
                                      std::size_t T, std::uint64_t seed);

// Applies events up to and including upto_time. MEAS_ZX measures
// Z(control) X(target), with the outcome forced to +1 unless
// forced_outcomes is false (then outcome_rng supplies outcomes). The
// observer, when set, fires after every full period (even t).
void apply_realization(
    const CircuitRealization& c, StabilizerTableau& tableau,
    std::size_t upto_time,
    const std::function<void(std::size_t, const StabilizerTableau&)>& observer = {},
    bool forced_outcomes = true, Rng* outcome_rng = nullptr);

// Growth rate (sites per period, Chebyshev distance with periodic wrap) of
// the support of an initially single-site Pauli evolved in the Heisenberg
// picture under the given events.
double butterfly_velocity(const CircuitRealization& c, std::size_t start_site);

// Sanity probe: p = 0 circuit from the given spec, perturbation at the
// central site.
double butterfly_probe(const LatticeSpec& spec, std::uint64_t seed);

// One event per line: "t KIND site [site2]". Used by golden tests and the
// external validation oracle.
std::string dump_events(const CircuitRealization& c);

}  // namespace rough
