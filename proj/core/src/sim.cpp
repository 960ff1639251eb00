#include "revrw/sim.hpp"

#include <cstdint>
#include <vector>

#include "revrw/errors.hpp"

namespace revrw {

namespace {

struct GateMasks {
  std::uint64_t care;
  std::uint64_t want;
  std::uint64_t flip;
};

std::vector<std::uint64_t> run(const Circuit& c, const SimOptions& opts) {
  if (c.width() > opts.max_width || c.width() > 32) throw WidthCapExceeded(c.width(), opts.max_width);
  const int n = c.width();
  std::vector<GateMasks> masks;
  masks.reserve(c.size());
  for (const Gate& g : c.gates()) {
    const std::uint64_t pos = encoded_mask(g.positives(), n);
    const std::uint64_t neg = encoded_mask(g.negatives(), n);
    masks.push_back({pos | neg, pos, std::uint64_t{1} << (n - g.target())});
  }
  std::vector<std::uint64_t> images(std::size_t{1} << n);
  for (std::uint64_t x = 0; x < images.size(); ++x) {
    std::uint64_t s = x;
    for (const GateMasks& m : masks) {
      if ((s & m.care) == m.want) s ^= m.flip;
    }
    images[x] = s;
  }
  return images;
}

}  // namespace

Permutation simulate(const Circuit& c, const SimOptions& opts) { return Permutation(c.width(), run(c, opts)); }

bool equivalent_by_sim(const Circuit& a, const Circuit& b, const SimOptions& opts) {
  return !first_difference(a, b, opts).has_value();
}

std::optional<BitString> first_difference(const Circuit& a, const Circuit& b, const SimOptions& opts) {
  if (a.width() != b.width()) throw WidthMismatch("circuits have widths " + std::to_string(a.width()) + " and " +
                                                  std::to_string(b.width()));
  const auto ia = run(a, opts);
  const auto ib = run(b, opts);
  for (std::uint64_t x = 0; x < ia.size(); ++x) {
    if (ia[x] != ib[x]) return BitString(a.width(), x);
  }
  return std::nullopt;
}

Permutation permutation_of_exchange(const BitString& a, const BitString& b) {
  if (a.width() != b.width()) throw WidthMismatch("exchanged strings have different widths");
  if (a == b) throw PreconditionError("exchange of a string with itself");
  Permutation id = Permutation::identity(a.width());
  std::vector<std::uint64_t> images(id.images().begin(), id.images().end());
  images[a.encoded()] = b.encoded();
  images[b.encoded()] = a.encoded();
  return Permutation(a.width(), std::move(images));
}

}  // namespace revrw
