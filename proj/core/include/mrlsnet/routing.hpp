#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mrlsnet/rng.hpp"
#include "mrlsnet/topology.hpp"

namespace mrls {

/// Distance tables from every endpoint-bearing switch, exposed as the
/// closer/farther bit per (switch, port, leaf). A port is "closer" toward
/// leaf x when the neighbor behind it is nearer to x than the switch
/// itself; in a leveled network the two states are exhaustive.
class CloserBits {
public:
  explicit CloserBits(const Topology& t, unsigned jobs = 0);

  bool closer(SwitchId c, std::uint32_t port, SwitchId leaf) const {
    return dist(leaf, csr_.neighbors[csr_.offsets[c] + port]) < dist(leaf, c);
  }
  /// d(sw, leaf) by hop count.
  std::uint16_t dist(SwitchId leaf, SwitchId sw) const {
    return dist_[static_cast<std::size_t>(leaf_index_[leaf]) * n_ + sw];
  }
  const Csr& csr() const { return csr_; }
  std::uint32_t leaf_count() const { return leaves_; }

private:
  Csr csr_;
  std::size_t n_ = 0;
  std::uint32_t leaves_ = 0;
  std::vector<std::uint32_t> leaf_index_;
  std::vector<std::uint16_t> dist_;
};

enum class PortLabel : std::uint8_t {
  Forward,      // (+1, -1): away from source, toward destination
  Expansion,    // (+1, +1)
  Contraction,  // (-1, -1)
  Backtrack,    // (-1, +1)
};

const char* to_string(PortLabel label);

PortLabel classify_port(const CloserBits& bits, SwitchId c, std::uint32_t port,
                        SwitchId s, SwitchId t);

/// Per-packet routing state: the sign of d(c,s) - d(c,t) reconstructed
/// incrementally (Forward hops add 2, deroutes leave it unchanged), so no
/// distance values need to travel with the packet.
struct PolarizedState {
  std::int32_t diff = 0;  // d(c,s) - d(c,t)
  bool after_middle() const { return diff >= 0; }
  static PolarizedState at_source(const CloserBits& bits, SwitchId s, SwitchId t) {
    return {-static_cast<std::int32_t>(bits.dist(s, t))};
  }
  void advance(PortLabel label) {
    if (label == PortLabel::Forward) diff += 2;
  }
};

struct Candidate {
  std::uint32_t port = 0;
  std::uint8_t penalty = 0;  // 0 minimal, 1 deroute
};

/// Permitted next hops at c for a packet from s to t. Empty at c == t
/// (delivery); throws CornerEncountered when a non-delivered packet has no
/// permitted port.
std::vector<Candidate> polarized_candidates(const CloserBits& bits, SwitchId c,
                                            SwitchId s, SwitchId t,
                                            PolarizedState state);

struct Route {
  std::vector<SwitchId> switches;  // s first, t last
  std::vector<PortLabel> labels;   // one per hop
  std::vector<std::uint8_t> vcs;   // one per hop

  std::size_t hops() const { return labels.size(); }
  std::string to_line() const;
};

/// Occupancy source for adaptive choice; return value is in flits.
using OccupancySelector = std::function<std::uint32_t(SwitchId c, std::uint32_t port)>;

inline std::uint32_t zero_occupancy(SwitchId, std::uint32_t) { return 0; }

/// Hop-by-hop Polarized route. Candidates are ranked by occupancy +
/// penalty * deroute_penalty; ties break uniformly via rng (first
/// candidate when rng is null).
Route polarized_route(const Topology& t, const CloserBits& bits, SwitchId s,
                      SwitchId dst, const OccupancySelector& occupancy,
                      Rng* rng = nullptr, std::uint32_t deroute_penalty = 16);

struct CornerTriple {
  SwitchId source;
  SwitchId target;
  SwitchId corner;
  bool operator==(const CornerTriple&) const = default;
};

struct CornerCheckOptions {
  /// Above this switch count the check samples (source, target) pairs.
  std::size_t exhaustive_threshold = 5000;
  std::size_t sample_pairs = 100000;
  std::uint64_t seed = 1;
};

/// Enumerates (s, t, c) triples where a packet in a reachable
/// phase-consistent state has no permitted port. Empty output certifies
/// corner freedom at the checked coverage.
std::vector<CornerTriple> corner_check(const Topology& t, const CloserBits& bits,
                                       const CornerCheckOptions& opts = {});

/// Up to K distinct minimal paths per ordered leaf pair, order shuffled
/// per seed among the equal-length paths.
class KspTable {
public:
  std::uint32_t k = 0;
  std::uint32_t leaf_count = 0;
  // paths[s * leaf_count + t] lists switch sequences from s to t.
  std::vector<std::vector<std::vector<SwitchId>>> paths;

  const std::vector<std::vector<SwitchId>>& at(SwitchId s, SwitchId t) const {
    return paths[static_cast<std::size_t>(s) * leaf_count + t];
  }
  void save(const std::string& path) const;
};

KspTable ksp_build(const Topology& t, std::uint32_t k, std::uint64_t seed);

/// Exact number of distinct minimal s->t paths (saturating).
std::uint64_t minimal_path_count(const Topology& t, SwitchId s, SwitchId dst);

/// Ascend to a common ancestor level, then descend by destination
/// addressing. Throws NotMultistage when no minimal up*-down* path exists.
Route updown_route(const Topology& t, SwitchId s, SwitchId dst);

/// VC = hop_index / 2; one virtual channel per up-down phase.
std::uint8_t vc_for_hop(std::uint32_t hop_index, std::uint32_t max_hops);

inline std::uint32_t vc_count_for_bound(std::uint32_t max_hops) {
  return (max_hops + 1) / 2;
}

/// 2 D* - 2, the Polarized route length bound; also checks it against 2D.
std::uint32_t max_route_length_bound(const Topology& t, unsigned jobs = 0);

}  // namespace mrls
