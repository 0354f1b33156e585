#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mrlsnet/errors.hpp"
#include "mrlsnet/topology.hpp"

namespace mrls {

// Text format:
//
//   # mrls-net topology v1
//   levels 614 307
//   radix 36
//   endpoints <switch_id> <count>
//   edge <switch_id> <port> <switch_id> <port>
//
// Each link appears once, ports are 0-based, both port slots are explicit.
// Unknown directives are rejected.

static const char kHeader[] = "# mrls-net topology v1";

void save_topology(const Topology& t, std::ostream& out) {
  out << kHeader << "\n";
  out << "levels";
  for (auto l : t.levels) out << ' ' << l;
  out << "\n";
  out << "radix " << t.radix << "\n";
  for (SwitchId s = 0; s < t.switch_count(); ++s) {
    if (t.endpoints_per_switch[s] > 0) {
      out << "endpoints " << s << ' ' << t.endpoints_per_switch[s] << "\n";
    }
  }
  for (SwitchId s = 0; s < t.switch_count(); ++s) {
    for (std::uint32_t p = 0; p < t.adj[s].size(); ++p) {
      SwitchId n = t.adj[s][p];
      if (n < s) continue;  // lower endpoint emits the link
      out << "edge " << s << ' ' << p << ' ' << n << ' ' << t.reverse_port(s, p)
          << "\n";
    }
  }
}

void save_topology(const Topology& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_topology(t, out);
  if (!out) throw IoError("write failed: " + path);
}

namespace {

struct LineLexer {
  const std::string& text;
  std::size_t line_no;
  std::size_t pos = 0;

  void skip_spaces() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }
  bool at_end() {
    skip_spaces();
    return pos >= text.size();
  }
  std::string word() {
    skip_spaces();
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != ' ') ++pos;
    return text.substr(start, pos - start);
  }
  std::uint64_t number(const char* what) {
    skip_spaces();
    std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw ParseError(std::string(what) + " out of range", line_no, start + 1);
      }
      ++pos;
    }
    if (pos == start) {
      throw ParseError(std::string("expected ") + what, line_no, start + 1);
    }
    return value;
  }
  void expect_end() {
    if (!at_end()) throw ParseError("trailing characters", line_no, pos + 1);
  }
};

}  // namespace

Topology load_topology(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("empty file: " + name, 1, 1);
  ++line_no;
  if (line != kHeader) {
    throw ParseError("bad header, expected \"" + std::string(kHeader) + "\"", 1, 1);
  }

  Topology t;
  bool have_levels = false;
  bool have_radix = false;
  std::vector<std::vector<SwitchId>> port_slots;  // adj with holes while loading
  std::vector<std::vector<bool>> port_used;
  std::uint64_t total_switches = 0;

  auto check_switch = [&](std::uint64_t id, const LineLexer& lex) {
    if (!have_levels) throw ParseError("directive before levels", lex.line_no, 1);
    if (id >= total_switches) {
      throw ParseError("switch id " + std::to_string(id) + " out of range",
                       lex.line_no, 1);
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    LineLexer lex{line, line_no};
    if (lex.at_end()) continue;  // blank line
    std::string directive = lex.word();
    if (directive == "levels") {
      if (have_levels) throw ParseError("duplicate levels directive", line_no, 1);
      while (!lex.at_end()) {
        t.levels.push_back(static_cast<std::uint32_t>(lex.number("level size")));
      }
      if (t.levels.empty()) throw ParseError("levels needs at least one size", line_no, 1);
      for (auto l : t.levels) total_switches += l;
      port_slots.assign(total_switches, {});
      port_used.assign(total_switches, {});
      t.endpoints_per_switch.assign(total_switches, 0);
      have_levels = true;
    } else if (directive == "radix") {
      if (have_radix) throw ParseError("duplicate radix directive", line_no, 1);
      t.radix = static_cast<std::uint32_t>(lex.number("radix"));
      lex.expect_end();
      have_radix = true;
    } else if (directive == "endpoints") {
      std::uint64_t id = lex.number("switch id");
      std::uint64_t count = lex.number("endpoint count");
      lex.expect_end();
      check_switch(id, lex);
      if (count > 0xffff) throw ParseError("endpoint count out of range", line_no, 1);
      t.endpoints_per_switch[id] = static_cast<std::uint16_t>(count);
    } else if (directive == "edge") {
      std::uint64_t a = lex.number("switch id");
      std::uint64_t ap = lex.number("port");
      std::uint64_t b = lex.number("switch id");
      std::uint64_t bp = lex.number("port");
      lex.expect_end();
      check_switch(a, lex);
      check_switch(b, lex);
      if (!have_radix) throw ParseError("edge before radix", line_no, 1);
      if (ap >= t.radix || bp >= t.radix) {
        throw ParseError("port beyond radix", line_no, 1);
      }
      auto level_of = [&](std::uint64_t id) {
        std::uint64_t base = 0;
        for (std::size_t i = 0; i < t.levels.size(); ++i) {
          base += t.levels[i];
          if (id < base) return static_cast<int>(i);
        }
        return -1;
      };
      int la = level_of(a);
      int lb = level_of(b);
      if (la - lb != 1 && lb - la != 1) {
        throw ParseError("link between non-adjacent levels (switches " +
                             std::to_string(a) + " and " + std::to_string(b) + ")",
                         line_no, 1);
      }
      auto put = [&](std::uint64_t s, std::uint64_t p, std::uint64_t n) {
        auto& slots = port_slots[s];
        auto& used = port_used[s];
        if (slots.size() <= p) {
          slots.resize(p + 1, 0);
          used.resize(p + 1, false);
        }
        if (used[p]) {
          throw ParseError("port " + std::to_string(p) + " of switch " +
                               std::to_string(s) + " assigned twice",
                           line_no, 1);
        }
        slots[p] = static_cast<SwitchId>(n);
        used[p] = true;
      };
      put(a, ap, b);
      put(b, bp, a);
    } else {
      throw ParseError("unknown directive \"" + directive + "\"", line_no, 1);
    }
  }

  if (!have_levels) throw ParseError("missing levels directive", line_no + 1, 1);
  if (!have_radix) throw ParseError("missing radix directive", line_no + 1, 1);

  for (std::uint64_t s = 0; s < total_switches; ++s) {
    for (std::size_t p = 0; p < port_used[s].size(); ++p) {
      if (!port_used[s][p]) {
        throw ParseError("switch " + std::to_string(s) + " has a gap at port " +
                             std::to_string(p),
                         line_no + 1, 1);
      }
    }
  }
  t.adj = std::move(port_slots);
  return t;
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open: " + path);
  return load_topology(in, path);
}

}  // namespace mrls
