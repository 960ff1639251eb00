#include "revrw/io.hpp"

#include <string>
#include <vector>

namespace revrw {

namespace {

struct Glyphs {
  const char* positive;
  const char* negative;
  const char* target;
  const char* wire;
  const char* vertical;
  const char* crossing;
};

constexpr Glyphs kUnicode{"●", "○", "⊕", "─", "│", "┼"};
constexpr Glyphs kAscii{"*", "o", "+", "-", "|", "|"};

}  // namespace

std::string render_ascii(const Circuit& c, const RenderOptions& opts) {
  const Glyphs& gl = opts.ascii ? kAscii : kUnicode;
  const int n = c.width();
  const std::string label_pad(std::to_string(n).size() + 2, ' ');
  // rows 2(l-1) hold wires, odd rows hold connectors
  std::vector<std::string> rows(static_cast<std::size_t>(2 * n - 1));
  for (int l = 1; l <= n; ++l) {
    std::string label = "q" + std::to_string(l);
    label.resize(label_pad.size(), ' ');
    rows[static_cast<std::size_t>(2 * (l - 1))] = label + gl.wire;
    if (l < n) rows[static_cast<std::size_t>(2 * l - 1)] = label_pad + " ";
  }
  for (const Gate& g : c.gates()) {
    const Line lo = g.lines().min();
    const Line hi = g.lines().max();
    for (int l = 1; l <= n; ++l) {
      std::string& row = rows[static_cast<std::size_t>(2 * (l - 1))];
      if (g.target() == l) {
        row += gl.target;
      } else if (g.positives().contains(l)) {
        row += gl.positive;
      } else if (g.negatives().contains(l)) {
        row += gl.negative;
      } else if (l > lo && l < hi) {
        row += gl.crossing;
      } else {
        row += gl.wire;
      }
      row += gl.wire;
      if (l < n) {
        std::string& link = rows[static_cast<std::size_t>(2 * l - 1)];
        link += (l >= lo && l < hi) ? gl.vertical : " ";
        link += " ";
      }
    }
  }
  std::string out;
  for (std::string& row : rows) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row + "\n";
  }
  return out;
}

std::string format_permutation(const Permutation& p) {
  std::string out;
  for (std::uint64_t x = 0; x < p.size(); ++x) {
    out += decode(p.width(), x).str() + " " + decode(p.width(), p(x)).str() + "\n";
  }
  return out;
}

}  // namespace revrw
