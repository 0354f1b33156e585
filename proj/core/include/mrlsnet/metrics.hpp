#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mrlsnet/topology.hpp"

namespace mrls {

/// Shortest hop counts from one source over the switch graph.
struct DistanceTable {
  static constexpr std::uint16_t kUnreachable = 0xffff;
  SwitchId source = 0;
  std::vector<std::uint16_t> dist;
};

DistanceTable bfs_from(const Topology& t, SwitchId s);
void bfs_from(const Csr& csr, SwitchId s, std::vector<std::uint16_t>& dist,
              std::vector<SwitchId>& queue_storage);

struct LeafMetrics {
  std::uint32_t diameter = 0;  // D
  double average = 0.0;        // A
};

struct FullMetrics {
  std::uint32_t diameter = 0;  // D*
  double average = 0.0;        // A*
};

/// D and A over ordered pairs of distinct endpoint-bearing switches.
/// Throws Disconnected naming an unreachable pair.
LeafMetrics leaf_metrics(const Topology& t, unsigned jobs = 0);

/// D* and A* over all switch pairs.
FullMetrics full_metrics(const Topology& t, unsigned jobs = 0);

/// Theta = 2M / (S * A); M counts inter-switch links only.
double capacity_limit(const Topology& t, unsigned jobs = 0);

double link_cost(const Topology& t);    // M / S
double switch_cost(const Topology& t);  // N / S

/// Mean |S_r(c)| over centers c at `level` (0-based); entry r of the result.
/// Sums to N-1 per center.
std::vector<double> distance_distribution(const Topology& t, int level,
                                          unsigned jobs = 0);

struct MetricsReport {
  std::uint64_t endpoints = 0;      // S
  std::uint64_t switches = 0;       // N
  std::uint64_t links = 0;          // M
  std::uint32_t diameter = 0;       // D
  double avg_distance = 0.0;        // A
  std::optional<std::uint32_t> diameter_star;  // D*, when computed
  std::optional<double> avg_distance_star;     // A*
  double theta = 0.0;
  double cost_links = 0.0;
  double cost_switches = 0.0;
  // Per start level: mean shell sizes n^i_r (measured).
  std::vector<std::vector<double>> distance_histograms;

  std::string to_json() const;
  static std::string csv_header();
  std::string to_csv_row() const;
  /// Histogram rows as "level,r,count" lines.
  std::string histogram_csv() const;
};

/// One BFS sweep feeding every exact metric. `full` adds D*/A* (needs a
/// sweep over non-leaf sources too).
MetricsReport compute_metrics_report(const Topology& t, bool full = false,
                                     unsigned jobs = 0);

}  // namespace mrls
