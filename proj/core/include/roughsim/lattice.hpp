#pragma once

#include <cstddef>
#include <vector>

namespace rough {

enum class Boundary { open, periodic };

struct Site {
  std::vector<std::size_t> coords;
};

// d-dimensional Cartesian grid hosting the circuit. Axis 0 is the cut axis
// and is the slowest-varying index, so cut-at-x subsystems are index
// prefixes. Periodic extents must be even: target-site edges must connect
// opposite parities for the commuting-layer structure to hold.
class LatticeSpec {
 public:
  LatticeSpec(std::vector<std::size_t> extents, std::vector<Boundary> boundary);

  // The experiment default: extents [4L, L, ..., L], open along axis 0,
  // periodic elsewhere.
  static LatticeSpec experiment(std::size_t d, std::size_t L);

  std::size_t dim() const { return extents_.size(); }
  const std::vector<std::size_t>& extents() const { return extents_; }
  Boundary boundary(std::size_t axis) const { return boundary_[axis]; }
  std::size_t num_qubits() const { return num_qubits_; }

  std::size_t site_index(const Site& s) const;
  Site site_from_index(std::size_t index) const;

  static bool parity_odd(const Site& s);

  // Forward targets S_T(r) = {r + e_i}: omitted when they leave an open
  // boundary, wrapped modulo the extent when periodic.
  std::vector<Site> target_sites(const Site& s) const;

  // One group per x-slab, in x order; consumed by entropy_profile.
  std::vector<std::vector<std::size_t>> cut_prefix_groups() const;

 private:
  std::vector<std::size_t> extents_;
  std::vector<Boundary> boundary_;
  std::size_t num_qubits_;
};

}  // namespace rough
