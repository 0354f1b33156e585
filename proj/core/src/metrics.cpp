#include "mrlsnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "mrlsnet/errors.hpp"

namespace mrls {

void bfs_from(const Csr& csr, SwitchId s, std::vector<std::uint16_t>& dist,
              std::vector<SwitchId>& queue_storage) {
  const std::size_t n = csr.offsets.size() - 1;
  dist.assign(n, DistanceTable::kUnreachable);
  queue_storage.resize(n);
  std::size_t head = 0, tail = 0;
  dist[s] = 0;
  queue_storage[tail++] = s;
  while (head < tail) {
    SwitchId c = queue_storage[head++];
    std::uint16_t next = static_cast<std::uint16_t>(dist[c] + 1);
    for (const SwitchId* it = csr.begin(c); it != csr.end(c); ++it) {
      if (dist[*it] == DistanceTable::kUnreachable) {
        dist[*it] = next;
        queue_storage[tail++] = *it;
      }
    }
  }
}

DistanceTable bfs_from(const Topology& t, SwitchId s) {
  Csr csr = make_csr(t);
  DistanceTable table;
  table.source = s;
  std::vector<SwitchId> queue;
  bfs_from(csr, s, table.dist, queue);
  return table;
}

namespace {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Per-worker accumulation of one BFS sweep over a set of sources.
struct SweepAccum {
  std::uint64_t pair_count = 0;      // ordered (source, target) pairs counted
  std::uint64_t dist_sum = 0;
  std::uint32_t dist_max = 0;
  SwitchId far_a = 0, far_b = 0;     // witness for dist_max
  bool disconnected = false;
  SwitchId disc_a = 0, disc_b = 0;
  // shell_counts[r] summed over processed sources.
  std::vector<std::uint64_t> shells;

  void merge(const SweepAccum& o) {
    pair_count += o.pair_count;
    dist_sum += o.dist_sum;
    if (o.dist_max > dist_max) {
      dist_max = o.dist_max;
      far_a = o.far_a;
      far_b = o.far_b;
    }
    if (o.disconnected && !disconnected) {
      disconnected = true;
      disc_a = o.disc_a;
      disc_b = o.disc_b;
    }
    if (o.shells.size() > shells.size()) shells.resize(o.shells.size(), 0);
    for (std::size_t r = 0; r < o.shells.size(); ++r) shells[r] += o.shells[r];
  }
};

// Runs BFS from every source in `sources`, accumulating distances to the
// targets selected by `count_target` (a predicate over switch id).
template <class TargetPred>
SweepAccum sweep(const Csr& csr, const std::vector<SwitchId>& sources,
                 TargetPred count_target, unsigned jobs, bool track_shells) {
  jobs = resolve_jobs(jobs);
  const std::size_t n = csr.offsets.size() - 1;
  std::atomic<std::size_t> cursor{0};
  std::vector<SweepAccum> per_worker(jobs);

  auto work = [&](unsigned w) {
    SweepAccum& acc = per_worker[w];
    std::vector<std::uint16_t> dist;
    std::vector<SwitchId> queue;
    for (;;) {
      std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= sources.size()) break;
      SwitchId s = sources[i];
      bfs_from(csr, s, dist, queue);
      for (SwitchId v = 0; v < n; ++v) {
        if (v == s) continue;
        std::uint16_t d = dist[v];
        if (d == DistanceTable::kUnreachable) {
          if (count_target(v) && !acc.disconnected) {
            acc.disconnected = true;
            acc.disc_a = s;
            acc.disc_b = v;
          }
          continue;
        }
        if (track_shells) {
          if (acc.shells.size() <= d) acc.shells.resize(d + 1, 0);
          acc.shells[d] += 1;
        }
        if (!count_target(v)) continue;
        acc.pair_count += 1;
        acc.dist_sum += d;
        if (d > acc.dist_max) {
          acc.dist_max = d;
          acc.far_a = s;
          acc.far_b = v;
        }
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }
  SweepAccum total;
  for (const auto& acc : per_worker) total.merge(acc);
  return total;
}

std::vector<SwitchId> endpoint_switches(const Topology& t) {
  std::vector<SwitchId> out;
  for (SwitchId s = 0; s < t.switch_count(); ++s) {
    if (t.endpoints_per_switch[s] > 0) out.push_back(s);
  }
  return out;
}

}  // namespace

LeafMetrics leaf_metrics(const Topology& t, unsigned jobs) {
  Csr csr = make_csr(t);
  std::vector<SwitchId> leaves = endpoint_switches(t);
  if (leaves.size() < 2) throw NoEndpoints("need at least two endpoint-bearing switches");
  std::vector<bool> is_target(t.switch_count(), false);
  for (SwitchId s : leaves) is_target[s] = true;
  SweepAccum acc = sweep(csr, leaves, [&](SwitchId v) { return bool(is_target[v]); },
                         jobs, false);
  if (acc.disconnected) {
    throw Disconnected("leaf " + std::to_string(acc.disc_b) +
                       " unreachable from leaf " + std::to_string(acc.disc_a));
  }
  LeafMetrics m;
  m.diameter = acc.dist_max;
  m.average = static_cast<double>(acc.dist_sum) / static_cast<double>(acc.pair_count);
  return m;
}

FullMetrics full_metrics(const Topology& t, unsigned jobs) {
  Csr csr = make_csr(t);
  std::vector<SwitchId> all(t.switch_count());
  for (SwitchId s = 0; s < t.switch_count(); ++s) all[s] = s;
  SweepAccum acc = sweep(csr, all, [](SwitchId) { return true; }, jobs, false);
  if (acc.disconnected) {
    throw Disconnected("switch " + std::to_string(acc.disc_b) +
                       " unreachable from switch " + std::to_string(acc.disc_a));
  }
  FullMetrics m;
  m.diameter = acc.dist_max;
  m.average = static_cast<double>(acc.dist_sum) / static_cast<double>(acc.pair_count);
  return m;
}

double capacity_limit(const Topology& t, unsigned jobs) {
  std::uint64_t s = t.endpoint_total();
  if (s == 0) throw NoEndpoints("capacity limit undefined without endpoints");
  LeafMetrics lm = leaf_metrics(t, jobs);
  return 2.0 * static_cast<double>(t.link_count()) /
         (static_cast<double>(s) * lm.average);
}

double link_cost(const Topology& t) {
  std::uint64_t s = t.endpoint_total();
  if (s == 0) throw NoEndpoints("link cost undefined without endpoints");
  return static_cast<double>(t.link_count()) / static_cast<double>(s);
}

double switch_cost(const Topology& t) {
  std::uint64_t s = t.endpoint_total();
  if (s == 0) throw NoEndpoints("switch cost undefined without endpoints");
  return static_cast<double>(t.switch_count()) / static_cast<double>(s);
}

std::vector<double> distance_distribution(const Topology& t, int level,
                                          unsigned jobs) {
  Csr csr = make_csr(t);
  std::uint32_t base = t.level_base(level);
  std::vector<SwitchId> centers;
  for (std::uint32_t i = 0; i < t.levels[level]; ++i) centers.push_back(base + i);
  SweepAccum acc = sweep(csr, centers, [](SwitchId) { return true; }, jobs, true);
  std::vector<double> mean(acc.shells.size());
  for (std::size_t r = 0; r < mean.size(); ++r) {
    mean[r] = static_cast<double>(acc.shells[r]) / static_cast<double>(centers.size());
  }
  return mean;
}

MetricsReport compute_metrics_report(const Topology& t, bool full, unsigned jobs) {
  MetricsReport r;
  r.endpoints = t.endpoint_total();
  r.switches = t.switch_count();
  r.links = t.link_count();
  if (r.endpoints == 0) throw NoEndpoints("metrics need endpoints");

  Csr csr = make_csr(t);
  std::vector<SwitchId> leaves = endpoint_switches(t);
  std::vector<bool> is_leaf_target(t.switch_count(), false);
  for (SwitchId s : leaves) is_leaf_target[s] = true;

  // One sweep from the leaves yields D, A and the level-0 shell means.
  SweepAccum acc = sweep(csr, leaves,
                         [&](SwitchId v) { return bool(is_leaf_target[v]); }, jobs,
                         true);
  if (acc.disconnected) {
    throw Disconnected("leaf " + std::to_string(acc.disc_b) +
                       " unreachable from leaf " + std::to_string(acc.disc_a));
  }
  r.diameter = acc.dist_max;
  r.avg_distance =
      static_cast<double>(acc.dist_sum) / static_cast<double>(acc.pair_count);
  r.theta = 2.0 * static_cast<double>(r.links) /
            (static_cast<double>(r.endpoints) * r.avg_distance);
  r.cost_links = static_cast<double>(r.links) / static_cast<double>(r.endpoints);
  r.cost_switches = static_cast<double>(r.switches) / static_cast<double>(r.endpoints);

  std::vector<double> shells(acc.shells.size());
  for (std::size_t i = 0; i < shells.size(); ++i) {
    shells[i] = static_cast<double>(acc.shells[i]) / static_cast<double>(leaves.size());
  }
  r.distance_histograms.push_back(std::move(shells));

  if (full) {
    FullMetrics fm = full_metrics(t, jobs);
    r.diameter_star = fm.diameter;
    r.avg_distance_star = fm.average;
    for (std::size_t level = 1; level < t.levels.size(); ++level) {
      r.distance_histograms.push_back(
          distance_distribution(t, static_cast<int>(level), jobs));
    }
  }
  return r;
}

std::string MetricsReport::csv_header() {
  return "endpoints,switches,links,diameter,avg_distance,diameter_star,"
         "avg_distance_star,theta,cost_links,cost_switches";
}

static std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string MetricsReport::to_csv_row() const {
  std::ostringstream os;
  os << endpoints << ',' << switches << ',' << links << ',' << diameter << ','
     << fmt(avg_distance) << ',';
  if (diameter_star) os << *diameter_star;
  os << ',';
  if (avg_distance_star) os << fmt(*avg_distance_star);
  os << ',' << fmt(theta) << ',' << fmt(cost_links) << ',' << fmt(cost_switches);
  return os.str();
}

std::string MetricsReport::histogram_csv() const {
  std::ostringstream os;
  os << "level,r,count\n";
  for (std::size_t level = 0; level < distance_histograms.size(); ++level) {
    const auto& h = distance_histograms[level];
    for (std::size_t r = 0; r < h.size(); ++r) {
      os << level << ',' << r << ',' << fmt(h[r]) << "\n";
    }
  }
  return os.str();
}

std::string MetricsReport::to_json() const {
  std::ostringstream os;
  os << "{\"endpoints\":" << endpoints << ",\"switches\":" << switches
     << ",\"links\":" << links << ",\"diameter\":" << diameter
     << ",\"avg_distance\":" << fmt(avg_distance);
  if (diameter_star) os << ",\"diameter_star\":" << *diameter_star;
  if (avg_distance_star) os << ",\"avg_distance_star\":" << fmt(*avg_distance_star);
  os << ",\"theta\":" << fmt(theta) << ",\"cost_links\":" << fmt(cost_links)
     << ",\"cost_switches\":" << fmt(cost_switches) << ",\"histograms\":[";
  for (std::size_t level = 0; level < distance_histograms.size(); ++level) {
    if (level) os << ',';
    os << '[';
    const auto& h = distance_histograms[level];
    for (std::size_t r = 0; r < h.size(); ++r) {
      if (r) os << ',';
      os << fmt(h[r]);
    }
    os << ']';
  }
  os << "]}";
  return os.str();
}

}  // namespace mrls
