#include "mrlsnet/routing.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/metrics.hpp"

namespace mrls {

CloserBits::CloserBits(const Topology& t, unsigned jobs) {
  csr_ = make_csr(t);
  n_ = t.switch_count();
  leaf_index_.assign(n_, UINT32_MAX);
  std::vector<SwitchId> leaves;
  for (SwitchId s = 0; s < n_; ++s) {
    if (t.is_leaf(s)) {
      leaf_index_[s] = static_cast<std::uint32_t>(leaves.size());
      leaves.push_back(s);
    }
  }
  leaves_ = static_cast<std::uint32_t>(leaves.size());
  dist_.resize(static_cast<std::size_t>(leaves_) * n_);

  unsigned hw = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = hw == 0 ? 1 : hw;
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> disconnected{false};
  auto work = [&]() {
    std::vector<std::uint16_t> dist;
    std::vector<SwitchId> queue;
    for (;;) {
      std::size_t i = cursor.fetch_add(1, std::memory_order_relaxed);
      if (i >= leaves.size()) break;
      bfs_from(csr_, leaves[i], dist, queue);
      for (std::size_t v = 0; v < n_; ++v) {
        if (dist[v] == DistanceTable::kUnreachable) disconnected.store(true);
      }
      std::copy(dist.begin(), dist.end(), dist_.begin() + i * n_);
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }
  if (disconnected.load()) {
    throw Disconnected("closer-bit table over a disconnected topology");
  }
}

const char* to_string(PortLabel label) {
  switch (label) {
    case PortLabel::Forward: return "forward";
    case PortLabel::Expansion: return "expansion";
    case PortLabel::Contraction: return "contraction";
    case PortLabel::Backtrack: return "backtrack";
  }
  return "?";
}

PortLabel classify_port(const CloserBits& bits, SwitchId c, std::uint32_t port,
                        SwitchId s, SwitchId t) {
  bool closer_s = bits.closer(c, port, s);
  bool closer_t = bits.closer(c, port, t);
  if (closer_s) {
    return closer_t ? PortLabel::Contraction : PortLabel::Backtrack;
  }
  return closer_t ? PortLabel::Forward : PortLabel::Expansion;
}

std::vector<Candidate> polarized_candidates(const CloserBits& bits, SwitchId c,
                                            SwitchId s, SwitchId t,
                                            PolarizedState state) {
  std::vector<Candidate> out;
  if (c == t) return out;  // delivery
  const Csr& csr = bits.csr();
  std::uint32_t degree = csr.degree(c);
  for (std::uint32_t p = 0; p < degree; ++p) {
    PortLabel label = classify_port(bits, c, p, s, t);
    switch (label) {
      case PortLabel::Forward:
        out.push_back({p, 0});
        break;
      case PortLabel::Expansion:
        if (!state.after_middle()) out.push_back({p, 1});
        break;
      case PortLabel::Contraction:
        if (state.after_middle()) out.push_back({p, 1});
        break;
      case PortLabel::Backtrack:
        break;
    }
  }
  if (out.empty()) {
    throw CornerEncountered("corner: no permitted port at switch " +
                                std::to_string(c) + " for pair (" +
                                std::to_string(s) + ", " + std::to_string(t) + ")",
                            s, t, c);
  }
  return out;
}

Route polarized_route(const Topology& t, const CloserBits& bits, SwitchId s,
                      SwitchId dst, const OccupancySelector& occupancy, Rng* rng,
                      std::uint32_t deroute_penalty) {
  Route route;
  route.switches.push_back(s);
  if (s == dst) return route;

  std::uint32_t max_hops = 2 * (t.levels.size() + 2) +
                           64;  // generous guard; Theorem bound asserted by tests
  PolarizedState state = PolarizedState::at_source(bits, s, dst);
  SwitchId c = s;
  std::uint32_t hop = 0;
  while (c != dst) {
    if (hop >= max_hops) {
      throw HopBoundExceeded("polarized route exceeded " + std::to_string(max_hops) +
                             " hops");
    }
    std::vector<Candidate> cands = polarized_candidates(bits, c, s, dst, state);
    // Lowest occupancy wins; deroutes carry a penalty; ties break randomly.
    std::uint64_t best_cost = UINT64_MAX;
    std::uint32_t best_port = 0;
    std::uint32_t ties = 0;
    for (const Candidate& cand : cands) {
      std::uint64_t cost = occupancy(c, cand.port) +
                           static_cast<std::uint64_t>(cand.penalty) * deroute_penalty;
      if (cost < best_cost) {
        best_cost = cost;
        best_port = cand.port;
        ties = 1;
      } else if (cost == best_cost && rng != nullptr) {
        ++ties;
        if (rng->below(ties) == 0) best_port = cand.port;
      }
    }
    PortLabel label = classify_port(bits, c, best_port, s, dst);
    state.advance(label);
    c = bits.csr().neighbors[bits.csr().offsets[c] + best_port];
    route.switches.push_back(c);
    route.labels.push_back(label);
    route.vcs.push_back(static_cast<std::uint8_t>(hop / 2));
    ++hop;
  }
  return route;
}

std::string Route::to_line() const {
  std::ostringstream os;
  os << switches.front() << ' ' << switches.back() << ' ' << hops();
  for (SwitchId sw : switches) os << ' ' << sw;
  os << " vcs";
  for (std::uint8_t v : vcs) os << ' ' << static_cast<unsigned>(v);
  return os.str();
}

namespace {

// A corner can only occur before the middle (afterwards every port that is
// closer to t is permitted, and one always exists). Before the middle the
// permitted set is exactly the ports leading away from s, so a corner
// switch is a strict local maximum of d(., s). The packet reaches c in
// that phase iff some shortest s->c path stays inside the region
// d(v, s) < d(v, t).
bool reachable_before_middle(const CloserBits& bits, SwitchId s, SwitchId t,
                             SwitchId corner, std::vector<std::uint8_t>& mark,
                             std::vector<SwitchId>& queue) {
  const Csr& csr = bits.csr();
  std::uint16_t dc = bits.dist(s, corner);
  std::fill(mark.begin(), mark.end(), 0);
  std::size_t head = 0, tail = 0;
  queue.resize(mark.size());
  mark[s] = 1;
  queue[tail++] = s;
  while (head < tail) {
    SwitchId v = queue[head++];
    if (v == corner) return true;
    std::uint16_t dv = bits.dist(s, v);
    if (dv >= dc) continue;
    for (const SwitchId* it = csr.begin(v); it != csr.end(v); ++it) {
      SwitchId n = *it;
      if (mark[n]) continue;
      if (bits.dist(s, n) != dv + 1) continue;          // ascend away from s
      if (bits.dist(s, n) >= bits.dist(t, n)) continue; // stay before the middle
      mark[n] = 1;
      queue[tail++] = n;
    }
  }
  return false;
}

}  // namespace

std::vector<CornerTriple> corner_check(const Topology& t, const CloserBits& bits,
                                       const CornerCheckOptions& opts) {
  std::vector<CornerTriple> corners;
  const Csr& csr = bits.csr();
  const std::size_t n = t.switch_count();
  std::vector<SwitchId> leaves;
  for (SwitchId s = 0; s < n; ++s) {
    if (t.is_leaf(s)) leaves.push_back(s);
  }

  std::vector<std::uint8_t> mark(n);
  std::vector<SwitchId> queue(n);

  if (n <= opts.exhaustive_threshold) {
    for (SwitchId s : leaves) {
      for (SwitchId c = 0; c < n; ++c) {
        if (c == s) continue;
        // Local maximum of d(., s)?
        std::uint16_t dc = bits.dist(s, c);
        bool local_max = csr.degree(c) > 0;
        for (const SwitchId* it = csr.begin(c); it != csr.end(c); ++it) {
          if (bits.dist(s, *it) > dc) {
            local_max = false;
            break;
          }
        }
        if (!local_max) continue;
        for (SwitchId tgt : leaves) {
          if (tgt == s || tgt == c) continue;
          if (bits.dist(tgt, c) <= dc) continue;  // phase-consistent state needs d(c,s) < d(c,t)
          if (reachable_before_middle(bits, s, tgt, c, mark, queue)) {
            corners.push_back({s, tgt, c});
          }
        }
      }
    }
    return corners;
  }

  // Sampled mode: random (s, t) pairs, walking the reachable before-middle
  // region of each and testing for stuck states.
  Rng rng(opts.seed);
  for (std::size_t i = 0; i < opts.sample_pairs; ++i) {
    SwitchId s = leaves[rng.below(static_cast<std::uint32_t>(leaves.size()))];
    SwitchId tgt = leaves[rng.below(static_cast<std::uint32_t>(leaves.size()))];
    if (s == tgt) continue;
    std::fill(mark.begin(), mark.end(), 0);
    std::size_t head = 0, tail = 0;
    mark[s] = 1;
    queue[tail++] = s;
    while (head < tail) {
      SwitchId v = queue[head++];
      std::uint16_t dv = bits.dist(s, v);
      if (dv >= bits.dist(tgt, v)) continue;  // after-middle states cannot corner
      bool has_away = false;
      for (const SwitchId* it = csr.begin(v); it != csr.end(v); ++it) {
        SwitchId nb = *it;
        if (bits.dist(s, nb) != dv + 1) continue;
        has_away = true;
        if (!mark[nb] && bits.dist(s, nb) < bits.dist(tgt, nb)) {
          mark[nb] = 1;
          queue[tail++] = nb;
        }
      }
      if (!has_away && v != tgt) corners.push_back({s, tgt, v});
    }
  }
  return corners;
}

Route updown_route(const Topology& t, SwitchId s, SwitchId dst) {
  Route route;
  route.switches.push_back(s);
  if (s == dst) return route;
  if (!t.is_leaf(s) || !t.is_leaf(dst)) {
    throw NotMultistage("up/down routing needs leaf endpoints");
  }

  // Distances to dst drive both the ascent and the descent.
  DistanceTable table = bfs_from(t, dst);
  if (table.dist[s] == DistanceTable::kUnreachable) {
    throw Disconnected("no path from switch " + std::to_string(s) + " to " +
                       std::to_string(dst));
  }

  SwitchId c = s;
  int prev_level = 0;
  bool descending = false;
  std::uint32_t hop = 0;
  while (c != dst) {
    std::uint32_t pick = UINT32_MAX;
    for (std::uint32_t p = 0; p < t.adj[c].size(); ++p) {
      SwitchId nb = t.adj[c][p];
      if (table.dist[nb] + 1 != table.dist[c]) continue;
      pick = p;
      break;
    }
    if (pick == UINT32_MAX) {
      throw NotMultistage("no minimal next hop at switch " + std::to_string(c));
    }
    SwitchId nb = t.adj[c][pick];
    int level = t.level_of(nb);
    if (level < prev_level) descending = true;
    if (descending && level > prev_level) {
      throw NotMultistage("minimal path is not up*-down* (second ascent at switch " +
                          std::to_string(c) + ")");
    }
    prev_level = level;
    route.labels.push_back(PortLabel::Forward);
    route.vcs.push_back(static_cast<std::uint8_t>(hop / 2));
    route.switches.push_back(nb);
    c = nb;
    ++hop;
  }
  return route;
}

std::uint8_t vc_for_hop(std::uint32_t hop_index, std::uint32_t max_hops) {
  if (hop_index >= max_hops) {
    throw HopBoundExceeded("hop " + std::to_string(hop_index) +
                           " beyond the maximum of " + std::to_string(max_hops));
  }
  return static_cast<std::uint8_t>(hop_index / 2);
}

std::uint32_t max_route_length_bound(const Topology& t, unsigned jobs) {
  FullMetrics fm = full_metrics(t, jobs);
  LeafMetrics lm = leaf_metrics(t, jobs);
  std::uint32_t bound = 2 * fm.diameter - 2;
  if (bound > 2 * lm.diameter) {
    throw Error("leveled-network bound violated: 2D*-2 > 2D");
  }
  return bound;
}

}  // namespace mrls
