#include "roughsim/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rough {

namespace {

struct SiteTables {
  std::vector<bool> odd;
  std::vector<std::vector<std::uint32_t>> targets;  // in axis order

  explicit SiteTables(const LatticeSpec& spec) {
    const std::size_t n = spec.num_qubits();
    odd.resize(n);
    targets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Site s = spec.site_from_index(i);
      odd[i] = LatticeSpec::parity_odd(s);
      for (const Site& t : spec.target_sites(s))
        targets[i].push_back(std::uint32_t(spec.site_index(t)));
    }
  }
};

}  // namespace

CircuitRealization sample_realization(const LatticeSpec& spec, double p,
                                      std::size_t T, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_realization: p outside [0,1]");
  if (T < 1) throw std::invalid_argument("sample_realization: T must be >= 1");

  SiteTables tables(spec);
  CircuitRealization c{spec, p, T, seed, {}};
  Rng rng(seed);
  const std::size_t n = spec.num_qubits();
  for (std::size_t t = 1; t <= T; ++t) {
    const bool want_odd = (t % 2 != 0);
    for (std::size_t r = 0; r < n; ++r) {
      if (tables.odd[r] != want_odd) continue;
      for (std::uint32_t tgt : tables.targets[r]) {
        const GateKind kind = rng.bernoulli(p) ? GateKind::meas_zx : GateKind::cnot;
        c.events.push_back({std::uint32_t(t), kind, std::uint32_t(r), tgt});
      }
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (rng.bernoulli(p))
        c.events.push_back({std::uint32_t(t), GateKind::hadamard, std::uint32_t(r), 0});
    }
  }
  return c;
}

void apply_realization(
    const CircuitRealization& c, StabilizerTableau& tableau,
    std::size_t upto_time,
    const std::function<void(std::size_t, const StabilizerTableau&)>& observer,
    bool forced_outcomes, Rng* outcome_rng) {
  const std::size_t n = c.spec.num_qubits();
  if (tableau.num_qubits() != n)
    throw std::invalid_argument("apply_realization: tableau size mismatch");
  if (upto_time > c.T)
    throw std::invalid_argument("apply_realization: upto_time exceeds T");

  std::size_t ev = 0;
  for (std::size_t t = 1; t <= upto_time; ++t) {
    for (; ev < c.events.size() && c.events[ev].time == t; ++ev) {
      const GateEvent& e = c.events[ev];
      switch (e.kind) {
        case GateKind::cnot:
          tableau.apply_cnot(e.control, e.target);
          break;
        case GateKind::meas_zx: {
          PauliOperator op(n);
          op.set_z(e.control, true);
          op.set_x(e.target, true);
          if (forced_outcomes)
            tableau.measure_pauli(op, +1);
          else
            tableau.measure_pauli(op, std::nullopt, outcome_rng);
          break;
        }
        case GateKind::hadamard:
          tableau.apply_hadamard(e.control);
          break;
      }
    }
    if (observer && t % 2 == 0) observer(t, tableau);
  }
}

double butterfly_velocity(const CircuitRealization& c, std::size_t start_site) {
  const LatticeSpec& spec = c.spec;
  const std::size_t n = spec.num_qubits();
  if (start_site >= n)
    throw std::out_of_range("butterfly_velocity: site out of range");

  // Heisenberg evolution of the masks only; signs are irrelevant to support.
  PauliOperator op = PauliOperator::single_x(n, start_site);
  const Site origin = spec.site_from_index(start_site);

  auto radius = [&]() {
    std::size_t best = 0;
    for (std::size_t q = 0; q < n; ++q) {
      if (!op.x_bit(q) && !op.z_bit(q)) continue;
      const Site s = spec.site_from_index(q);
      for (std::size_t i = 0; i < spec.dim(); ++i) {
        std::size_t d = s.coords[i] > origin.coords[i]
                            ? s.coords[i] - origin.coords[i]
                            : origin.coords[i] - s.coords[i];
        if (spec.boundary(i) == Boundary::periodic)
          d = std::min(d, spec.extents()[i] - d);
        best = std::max(best, d);
      }
    }
    return best;
  };

  std::size_t ev = 0;
  std::size_t final_radius = 0;
  std::size_t periods = 0;
  for (std::size_t t = 1; t <= c.T; ++t) {
    for (; ev < c.events.size() && c.events[ev].time == t; ++ev) {
      const GateEvent& e = c.events[ev];
      if (e.kind == GateKind::hadamard) {
        const bool x = op.x_bit(e.control), z = op.z_bit(e.control);
        op.set_x(e.control, z);
        op.set_z(e.control, x);
      } else {
        // CNOT conjugation; a measurement event would break Heisenberg
        // propagation, so the probe is only meaningful at p = 0.
        if (op.x_bit(e.control)) op.set_x(e.target, !op.x_bit(e.target));
        if (op.z_bit(e.target)) op.set_z(e.control, !op.z_bit(e.control));
      }
    }
    if (t % 2 == 0) {
      ++periods;
      final_radius = radius();
    }
  }
  return periods ? double(final_radius) / double(periods) : 0.0;
}

double butterfly_probe(const LatticeSpec& spec, std::uint64_t seed) {
  // Keep the light cone inside the lattice so wrap-around does not cap the
  // measured radius.
  std::size_t limit = spec.extents()[0];
  for (std::size_t i = 0; i < spec.dim(); ++i)
    limit = std::min(limit, spec.extents()[i]);
  std::size_t T = std::max<std::size_t>(2, (limit / 2) & ~std::size_t(1));
  CircuitRealization c = sample_realization(spec, 0.0, T, seed);
  Site center;
  for (auto e : spec.extents()) center.coords.push_back(e / 2);
  return butterfly_velocity(c, spec.site_index(center));
}

std::string dump_events(const CircuitRealization& c) {
  std::string out;
  char buf[64];
  for (const GateEvent& e : c.events) {
    const char* kind = e.kind == GateKind::cnot      ? "CNOT"
                       : e.kind == GateKind::meas_zx ? "MEAS_ZX"
                                                     : "H";
    if (e.kind == GateKind::hadamard)
      std::snprintf(buf, sizeof buf, "%u %s %u\n", e.time, kind, e.control);
    else
      std::snprintf(buf, sizeof buf, "%u %s %u %u\n", e.time, kind, e.control,
                    e.target);
    out += buf;
  }
  return out;
}

}  // namespace rough
