#include <cstdint>
#include <string>
#include <vector>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/topology.hpp"

namespace mrls {

// Folded Clos with h+1 levels and w = R/2. Switch addresses are mixed-radix
// digit strings. A level-i switch (i < h) reads (a_{h-1},...,a_i ; c_{i-1},
// ...,c_0) where a_{h-1} ranges over [0, pods) and every other digit over
// [0, w). The top level drops the a digits entirely: (c_{h-1},...,c_0).
// Going up replaces the lowest remaining a digit with a fresh c digit, so a
// level-i switch has w parents (one per value of c_i) and, above level 0,
// w children. Top switches have `pods` children.
//
// With pods == R this is the standard fully-populated network,
// S = 2*(R/2)^(h+1); pods == R/2 gives the 50%-populated variant where top
// switches use only half their ports.

namespace {

struct Shape {
  std::uint32_t w;
  std::uint32_t h;
  std::uint32_t pods;
  std::vector<std::uint32_t> level_size;
  std::vector<std::uint32_t> level_base;

  // id of the level-i switch with address split (a, c): a in [0, pods*w^(h-1-i)),
  // c in [0, w^i). The a block is the high part.
  std::uint32_t pow_w(std::uint32_t e) const {
    std::uint32_t r = 1;
    while (e--) r *= w;
    return r;
  }
  SwitchId id(std::uint32_t level, std::uint32_t a, std::uint32_t c) const {
    if (level == h) return level_base[h] + c;
    return level_base[level] + a * pow_w(level) + c;
  }
};

}  // namespace

Topology build_fat_tree(const FtSpec& spec) {
  if (spec.radix < 2 || spec.radix % 2 != 0) {
    throw InfeasibleSpec("fat-tree: radix must be even and >= 2");
  }
  if (spec.height < 1) {
    throw InfeasibleSpec("fat-tree: height must be >= 1");
  }
  Shape sh;
  sh.w = spec.radix / 2;
  sh.h = spec.height;
  sh.pods = spec.pods == 0 ? spec.radix : spec.pods;
  if (sh.pods < 1 || sh.pods > spec.radix) {
    throw InfeasibleSpec("fat-tree: pods must lie in [1, R]");
  }

  // Levels 0..h-1 all have pods*w^(h-1) switches; the top has w^h.
  std::uint64_t below = static_cast<std::uint64_t>(sh.pods);
  for (std::uint32_t i = 1; i < sh.h; ++i) below *= sh.w;
  std::uint64_t top = 1;
  for (std::uint32_t i = 0; i < sh.h; ++i) top *= sh.w;
  if (below > UINT32_MAX || top > UINT32_MAX || below * sh.h + top > UINT32_MAX) {
    throw InfeasibleSpec("fat-tree: too large");
  }

  Topology t;
  t.radix = spec.radix;
  sh.level_base.resize(sh.h + 1);
  for (std::uint32_t i = 0; i < sh.h; ++i) {
    t.levels.push_back(static_cast<std::uint32_t>(below));
    sh.level_base[i] = i == 0 ? 0 : sh.level_base[i - 1] + t.levels[i - 1];
  }
  sh.level_base[sh.h] = sh.h == 0 ? 0 : sh.level_base[sh.h - 1] + t.levels.back();
  t.levels.push_back(static_cast<std::uint32_t>(top));

  t.adj.assign(sh.level_base[sh.h] + top, {});

  // Up links from level i: the parent for digit value c_i.
  for (std::uint32_t level = 0; level < sh.h; ++level) {
    std::uint32_t a_range = static_cast<std::uint32_t>(below) / sh.pow_w(level);
    std::uint32_t c_range = sh.pow_w(level);
    for (std::uint32_t a = 0; a < a_range; ++a) {
      for (std::uint32_t c = 0; c < c_range; ++c) {
        SwitchId self = sh.id(level, a, c);
        for (std::uint32_t digit = 0; digit < sh.w; ++digit) {
          SwitchId parent = level + 1 == sh.h
                                ? sh.id(sh.h, 0, digit * c_range + c)
                                : sh.id(level + 1, a / sh.w, digit * c_range + c);
          t.adj[self].push_back(parent);
          t.adj[parent].push_back(self);
        }
      }
    }
  }

  t.endpoints_per_switch.assign(t.switch_count(), 0);
  for (std::uint32_t leaf = 0; leaf < t.levels[0]; ++leaf) {
    t.endpoints_per_switch[leaf] = static_cast<std::uint16_t>(sh.w);
  }
  return t;
}

}  // namespace mrls
