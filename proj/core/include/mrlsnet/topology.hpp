#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mrls {

using SwitchId = std::uint32_t;

/// A leveled switch graph with attached endpoints. Leaves are level 0 and
/// occupy ids [0, levels[0]); level i starts at the sum of the previous
/// level sizes. Links only connect adjacent levels. Port order (the order
/// of each adjacency list) is part of the value: it is persisted and
/// round-trips through save/load.
class Topology {
public:
  std::vector<std::uint32_t> levels;               // size of each level
  std::uint32_t radix = 0;                         // R
  std::vector<std::vector<SwitchId>> adj;          // per-switch ordered ports
  std::vector<std::uint16_t> endpoints_per_switch; // d_s, leaves only in practice

  std::size_t switch_count() const { return adj.size(); }

  std::uint32_t leaf_count() const { return levels.empty() ? 0 : levels[0]; }

  int level_of(SwitchId s) const {
    std::uint32_t base = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      base += levels[i];
      if (s < base) return static_cast<int>(i);
    }
    return -1;
  }

  /// First switch id of a level.
  std::uint32_t level_base(int level) const {
    std::uint32_t base = 0;
    for (int i = 0; i < level; ++i) base += levels[i];
    return base;
  }

  std::uint64_t endpoint_total() const;   // S
  std::uint64_t link_count() const;       // M, inter-switch links only
  bool is_leaf(SwitchId s) const { return s < leaf_count(); }

  /// Port on `neighbor` that leads back to `s` via `s`'s port `p`.
  std::uint32_t reverse_port(SwitchId s, std::uint32_t p) const;

  bool operator==(const Topology& other) const = default;
};

/// Flat CSR form of the switch graph, for BFS-heavy code paths.
struct Csr {
  std::vector<std::uint32_t> offsets;  // size N+1
  std::vector<SwitchId> neighbors;     // size 2M, port order preserved

  std::uint32_t degree(SwitchId s) const { return offsets[s + 1] - offsets[s]; }
  const SwitchId* begin(SwitchId s) const { return neighbors.data() + offsets[s]; }
  const SwitchId* end(SwitchId s) const { return neighbors.data() + offsets[s + 1]; }
};

Csr make_csr(const Topology& t);

/// Multipass Random Leaf-Spine parameters.
///
/// The canonical form has u*N1 == R*N2 and d endpoints on every leaf.
/// To hit an exact endpoint count that d does not divide (as some of the
/// evaluated configurations require), endpoints_total may be set: leaves
/// then carry d or d-1 endpoints and spines absorb u*N1 stubs with degree
/// R or R-1, keeping the network as close to biregular as possible.
struct MrlsSpec {
  std::uint32_t radix = 0;   // R
  std::uint32_t uplinks = 0; // u, per leaf
  std::uint32_t downlinks = 0; // d = R - u, endpoint ports per leaf
  std::uint32_t leaves = 0;  // N1
  std::uint32_t spines = 0;  // N2
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> endpoints_total; // exact S override

  double thickness() const {
    return static_cast<double>(uplinks) / static_cast<double>(downlinks);
  }
};

/// Canonical spec for (R, u, N1): N2 = u*N1/R, d = R-u. Throws
/// InfeasibleSpec when the division does not come out even.
MrlsSpec mrls_spec(std::uint32_t radix, std::uint32_t uplinks,
                   std::uint32_t leaves, std::uint64_t seed);

/// Spec hitting an exact endpoint count: N1 = ceil(S/d), N2 = ceil(u*N1/R).
MrlsSpec mrls_spec_for_endpoints(std::uint32_t radix, std::uint32_t uplinks,
                                 std::uint64_t endpoints, std::uint64_t seed);

/// Fat-Tree (folded Clos) parameters. `pods` is the width of the top
/// address digit; the default 	R gives the standard fully-populated
/// network with S = 2*(R/2)^(h+1). Halving it yields the 50%-populated
/// variant used at the largest evaluated scale.
struct FtSpec {
  std::uint32_t radix = 0;  // R, even
  std::uint32_t height = 0; // h; the network has h+1 switch levels
  std::uint32_t pods = 0;   // 0 = default (R)
};

/// Orthogonal Fat-Tree parameter; q must be prime.
struct OftSpec {
  std::uint32_t q = 0;
};

Topology build_mrls(const MrlsSpec& spec);
Topology build_fat_tree(const FtSpec& spec);
Topology build_oft(const OftSpec& spec);

/// One invariant violation found by validate().
struct ValidationIssue {
  std::string message;
  SwitchId switch_id = 0;
  std::uint32_t port = 0;
};

/// Checks all Topology invariants. Violations are data, not errors.
std::vector<ValidationIssue> validate(const Topology& t);

void save_topology(const Topology& t, const std::string& path);
void save_topology(const Topology& t, std::ostream& out);
Topology load_topology(const std::string& path);
Topology load_topology(std::istream& in, const std::string& name);

bool is_prime(std::uint32_t n);

}  // namespace mrls
