#include "roughsim/lattice.hpp"

#include <numeric>
#include <stdexcept>

namespace rough {

LatticeSpec::LatticeSpec(std::vector<std::size_t> extents,
                         std::vector<Boundary> boundary)
    : extents_(std::move(extents)), boundary_(std::move(boundary)) {
  if (extents_.empty())
    throw std::invalid_argument("LatticeSpec: dimension must be >= 1");
  if (boundary_.size() != extents_.size())
    throw std::invalid_argument("LatticeSpec: one boundary per axis required");
  num_qubits_ = 1;
  for (std::size_t i = 0; i < extents_.size(); ++i) {
    if (extents_[i] == 0)
      throw std::invalid_argument("LatticeSpec: extents must be >= 1");
    if (boundary_[i] == Boundary::periodic && extents_[i] % 2 != 0)
      throw std::invalid_argument(
          "LatticeSpec: periodic extents must be even (bipartite gate graph)");
    num_qubits_ *= extents_[i];
  }
}

LatticeSpec LatticeSpec::experiment(std::size_t d, std::size_t L) {
  if (d == 0) throw std::invalid_argument("LatticeSpec::experiment: d must be >= 1");
  if (L == 0 || L % 2 != 0)
    throw std::invalid_argument("LatticeSpec::experiment: L must be even and >= 2");
  std::vector<std::size_t> extents(d, L);
  extents[0] = 4 * L;
  std::vector<Boundary> bc(d, Boundary::periodic);
  bc[0] = Boundary::open;
  return LatticeSpec(std::move(extents), std::move(bc));
}

std::size_t LatticeSpec::site_index(const Site& s) const {
  if (s.coords.size() != extents_.size())
    throw std::invalid_argument("site_index: wrong dimension");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < extents_.size(); ++i) {
    if (s.coords[i] >= extents_[i])
      throw std::out_of_range("site_index: coordinate out of range");
    idx = idx * extents_[i] + s.coords[i];
  }
  return idx;
}

Site LatticeSpec::site_from_index(std::size_t index) const {
  if (index >= num_qubits_)
    throw std::out_of_range("site_from_index: index out of range");
  Site s;
  s.coords.assign(extents_.size(), 0);
  for (std::size_t i = extents_.size(); i-- > 0;) {
    s.coords[i] = index % extents_[i];
    index /= extents_[i];
  }
  return s;
}

bool LatticeSpec::parity_odd(const Site& s) {
  std::size_t sum = std::accumulate(s.coords.begin(), s.coords.end(), std::size_t(0));
  return sum % 2 != 0;
}

std::vector<Site> LatticeSpec::target_sites(const Site& s) const {
  if (s.coords.size() != extents_.size())
    throw std::invalid_argument("target_sites: wrong dimension");
  std::vector<Site> out;
  out.reserve(extents_.size());
  for (std::size_t i = 0; i < extents_.size(); ++i) {
    Site t = s;
    if (t.coords[i] + 1 < extents_[i]) {
      ++t.coords[i];
    } else if (boundary_[i] == Boundary::periodic) {
      t.coords[i] = 0;
    } else {
      continue;  // open boundary: direction omitted
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<std::size_t>> LatticeSpec::cut_prefix_groups() const {
  const std::size_t slab = num_qubits_ / extents_[0];
  std::vector<std::vector<std::size_t>> groups(extents_[0]);
  for (std::size_t x = 0; x < extents_[0]; ++x) {
    groups[x].resize(slab);
    std::iota(groups[x].begin(), groups[x].end(), x * slab);
  }
  return groups;
}

}  // namespace rough
