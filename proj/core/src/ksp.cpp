#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/metrics.hpp"
#include "mrlsnet/routing.hpp"

namespace mrls {

namespace {

constexpr std::uint64_t kCountCap = std::numeric_limits<std::uint64_t>::max() / 2;

// Minimal next hops of v toward t, given dist-to-t.
void minimal_children(const Csr& csr, const std::vector<std::uint16_t>& dist_t,
                      SwitchId v, std::vector<SwitchId>& out) {
  out.clear();
  for (const SwitchId* it = csr.begin(v); it != csr.end(v); ++it) {
    if (dist_t[*it] + 1 == dist_t[v]) out.push_back(*it);
  }
}

std::uint64_t count_paths(const Csr& csr, const std::vector<std::uint16_t>& dist_t,
                          SwitchId v, SwitchId t, std::vector<std::uint64_t>& memo) {
  if (v == t) return 1;
  if (memo[v] != std::numeric_limits<std::uint64_t>::max()) return memo[v];
  std::uint64_t total = 0;
  for (const SwitchId* it = csr.begin(v); it != csr.end(v); ++it) {
    if (dist_t[*it] + 1 != dist_t[v]) continue;
    std::uint64_t c = count_paths(csr, dist_t, *it, t, memo);
    total = (total > kCountCap - c) ? kCountCap : total + c;
  }
  memo[v] = total;
  return total;
}

// Depth-first extraction of up to `budget` distinct minimal paths, child
// order shuffled per node.
void extract_paths(const Csr& csr, const std::vector<std::uint16_t>& dist_t,
                   SwitchId v, SwitchId t, std::uint32_t budget, Rng& rng,
                   std::vector<SwitchId>& prefix,
                   std::vector<std::vector<SwitchId>>& out) {
  if (out.size() >= budget) return;
  if (v == t) {
    out.push_back(prefix);
    return;
  }
  std::vector<SwitchId> children;
  minimal_children(csr, dist_t, v, children);
  rng.shuffle(children);
  for (SwitchId c : children) {
    if (out.size() >= budget) return;
    prefix.push_back(c);
    extract_paths(csr, dist_t, c, t, budget, rng, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::uint64_t minimal_path_count(const Topology& t, SwitchId s, SwitchId dst) {
  Csr csr = make_csr(t);
  DistanceTable table = bfs_from(t, dst);
  if (table.dist[s] == DistanceTable::kUnreachable) return 0;
  std::vector<std::uint64_t> memo(t.switch_count(),
                                  std::numeric_limits<std::uint64_t>::max());
  return count_paths(csr, table.dist, s, dst, memo);
}

KspTable ksp_build(const Topology& t, std::uint32_t k, std::uint64_t seed) {
  if (k < 1) throw InvalidK("ksp needs K >= 1");
  const std::uint32_t n1 = t.leaf_count();

  // Rough memory guard; the table is meant for desk-scale studies.
  double estimate = static_cast<double>(n1) * n1 * k * 8.0 * 4.0;
  if (estimate > 8e9) {
    throw Error("ksp table would need roughly " + std::to_string(estimate / 1e9) +
                " GB; reduce K or the topology size");
  }

  KspTable table;
  table.k = k;
  table.leaf_count = n1;
  table.paths.resize(static_cast<std::size_t>(n1) * n1);

  Csr csr = make_csr(t);
  std::vector<std::uint16_t> dist_t;
  std::vector<SwitchId> queue;
  std::vector<SwitchId> prefix;
  for (SwitchId dst = 0; dst < n1; ++dst) {
    bfs_from(csr, dst, dist_t, queue);
    for (SwitchId src = 0; src < n1; ++src) {
      if (src == dst) continue;
      if (dist_t[src] == DistanceTable::kUnreachable) {
        throw Disconnected("leaf " + std::to_string(dst) + " unreachable from leaf " +
                           std::to_string(src));
      }
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(src) * n1 + dst));
      auto& slot = table.paths[static_cast<std::size_t>(src) * n1 + dst];
      prefix.assign(1, src);
      extract_paths(csr, dist_t, src, dst, k, rng, prefix, slot);
      rng.shuffle(slot);
    }
  }
  return table;
}

void KspTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "# mrls-net ksp v1\n";
  out << "k " << k << "\n";
  out << "leaves " << leaf_count << "\n";
  for (SwitchId s = 0; s < leaf_count; ++s) {
    for (SwitchId t = 0; t < leaf_count; ++t) {
      const auto& slot = at(s, t);
      if (slot.empty()) continue;
      out << "pair " << s << ' ' << t << " count " << slot.size() << "\n";
      for (const auto& p : slot) {
        out << "path";
        for (SwitchId sw : p) out << ' ' << sw;
        out << "\n";
      }
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mrls
