#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracle.hpp"
#include "revrw/canon.hpp"
#include "revrw/errors.hpp"
#include "revrw/sim.hpp"

using namespace revrw;

namespace {

Permutation from_row(const HamiltonianPath& path, const std::vector<std::uint64_t>& row) {
  std::vector<std::uint64_t> images(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) images[path.nodes[i]] = row[i];
  return Permutation(path.width, images);
}

}  // namespace

TEST_CASE("gray path matches the reflected construction") {
  for (int n = 1; n <= 8; ++n) {
    const HamiltonianPath h = gray_path(n);
    CHECK(h.nodes == oracle::gray_by_reflection(n));
    for (std::size_t i = 0; i < h.size(); ++i) CHECK(h.index_of[h.nodes[i]] == i);
  }
  CHECK(gray_path(2).nodes == std::vector<std::uint64_t>{0, 1, 3, 2});
  CHECK(gray_path(3).nodes == std::vector<std::uint64_t>{0, 1, 3, 2, 6, 7, 5, 4});
  CHECK_THROWS_AS(gray_path(0), OutOfRange);
  CHECK_THROWS_AS(gray_path(25), OutOfRange);
}

TEST_CASE("custom paths are validated") {
  CHECK_NOTHROW(HamiltonianPath::from_nodes(2, {0, 2, 3, 1}, "other"));
  CHECK_THROWS_AS(HamiltonianPath::from_nodes(2, {0, 3, 1, 2}, "bad"), PreconditionError);
  CHECK_THROWS_AS(HamiltonianPath::from_nodes(2, {0, 1, 1, 2}, "bad"), PreconditionError);
  CHECK_THROWS_AS(HamiltonianPath::from_nodes(2, {0, 1, 3}, "bad"), PreconditionError);
}

TEST_CASE("width-2 gate set") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == Gate({}, {1}, 2));
  CHECK(d[1] == Gate({2}, {}, 1));
  CHECK(d[2] == Gate({1}, {}, 2));
  CHECK(d.index_of(Gate({1}, {}, 2)) == std::size_t{2});
  CHECK_FALSE(d.index_of(Gate({}, {2}, 1)));
  CHECK_FALSE(d.index_of(Gate::x(1)));
}

TEST_CASE("every gate of the set exchanges its path neighbours") {
  for (int n = 1; n <= 6; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i].is_full_width(n));
      const auto images = oracle::evaluate(Circuit(n, {d[i]}));
      for (std::size_t x = 0; x < images.size(); ++x) {
        std::uint64_t expect = x;
        if (x == d.path.nodes[i]) expect = d.path.nodes[i + 1];
        if (x == d.path.nodes[i + 1]) expect = d.path.nodes[i];
        CHECK(images[x] == expect);
      }
    }
  }
}

TEST_CASE("block_permutation_row") {
  const std::vector<std::uint64_t> row{10, 11, 12, 13, 14};
  CHECK(block_permutation_row(1, 2, row) == std::vector<std::uint64_t>{10, 13, 11, 12, 14});
  CHECK(block_permutation_row(0, 4, row) == std::vector<std::uint64_t>{14, 10, 11, 12, 13});
  CHECK(block_permutation_row(3, 0, row) == row);
  CHECK_THROWS_AS(block_permutation_row(2, 3, row), OutOfRange);
}

TEST_CASE("block row update matches simulation of the block") {
  const HamiltonianPath h = gray_path(3);
  const DeltaGateSet d = delta_gates(h);
  oracle::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto images = oracle::random_images(rng, 3);
    const Permutation f(3, images);
    const std::size_t start = rng() % 7;
    const std::size_t length = 1 + rng() % (7 - start);
    std::vector<Gate> gs;
    for (std::size_t k = 0; k < length; ++k) gs.push_back(d[start + k]);
    const Permutation g = simulate(Circuit(3, gs)).then(f);
    CHECK(path_row(g, h) == block_permutation_row(start, length, path_row(f, h)));
  }
}

TEST_CASE("constructive canonical form examples") {
  const HamiltonianPath h = gray_path(2);
  const DeltaGateSet d = delta_gates(h);
  CHECK(constructive_canonicalize(Permutation::identity(2), h).blocks.empty());
  const auto single = constructive_canonicalize(simulate(Circuit(2, {d[1]})), h);
  CHECK(single.blocks == std::vector<Block>{{1, 1}});
  // NOT on line 2 reverses pairs (a0 a1)(a2 a3) in path order.
  const auto x2 = constructive_canonicalize(simulate(Circuit(2, {Gate::x(2)})), h);
  CHECK(x2.blocks == std::vector<Block>{{2, 1}, {0, 1}});
  CHECK(x2.to_circuit(d) == Circuit(2, {d[2], d[0]}));
  // reversal of the whole path: one block of each start
  const auto rev = constructive_canonicalize(from_row(h, {2, 3, 1, 0}), h);
  CHECK(rev.blocks == std::vector<Block>{{2, 1}, {1, 2}, {0, 3}});
  CHECK(simulate(rev.to_circuit(d)) == from_row(h, {2, 3, 1, 0}));
}

TEST_CASE("constructive form realizes random permutations") {
  oracle::Rng rng(31);
  for (int n = 1; n <= 6; ++n) {
    const HamiltonianPath h = gray_path(n);
    const DeltaGateSet d = delta_gates(h);
    for (int trial = 0; trial < 40; ++trial) {
      const Permutation p(n, oracle::random_images(rng, n));
      const CanonicalForm f = constructive_canonicalize(p, h);
      const Circuit c = f.to_circuit(d);
      CHECK(oracle::evaluate(c) == std::vector<std::uint64_t>(p.images().begin(), p.images().end()));
      CHECK(validate_canonical(c, d).form == f);
    }
  }
}

TEST_CASE("validate_canonical") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  CHECK(validate_canonical(Circuit(2), d).accepted());
  const auto braid = validate_canonical(Circuit(2, {d[1], d[0], d[1]}), d);
  REQUIRE(braid.accepted());
  CHECK(braid.form->blocks == std::vector<Block>{{1, 1}, {0, 2}});
  const auto revisit = validate_canonical(Circuit(2, {d[1], d[2], d[1]}), d);
  CHECK(revisit.rejection == CanonRejection::StartOrder);

  const auto run = validate_canonical(Circuit(2, {d[1], d[2], d[0], d[1]}), d);
  REQUIRE(run.accepted());
  CHECK(run.form->blocks == std::vector<Block>{{1, 2}, {0, 2}});

  const auto twice = validate_canonical(Circuit(2, {d[0], d[0]}), d);
  CHECK(twice.rejection == CanonRejection::OccurrenceBound);
  const auto outside = validate_canonical(Circuit(2, {Gate::x(1)}), d);
  CHECK(outside.rejection == CanonRejection::GateOutsideDelta);
  const auto order = validate_canonical(Circuit(2, {d[0], d[2]}), d);
  CHECK(order.rejection == CanonRejection::StartOrder);
  CHECK_THROWS_AS(validate_canonical(Circuit(3), d), WidthMismatch);
}

TEST_CASE("occurrence bound is checked before start order") {
  const DeltaGateSet d = delta_gates(gray_path(3));
  // M1 three times: too many, and also out of order
  const auto v = validate_canonical(Circuit(3, {d[1], d[1], d[1]}), d);
  CHECK(v.rejection == CanonRejection::OccurrenceBound);
}

TEST_CASE("block count bound") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  // within the occurrence bounds but split into five runs
  const auto v = validate_canonical(Circuit(2, {d[2], d[2], d[2], d[1], d[1]}), d);
  CHECK(v.rejection == CanonRejection::BlockCountBound);
}

TEST_CASE("enumeration gives one form per function") {
  for (int n = 1; n <= 3; ++n) {
    const HamiltonianPath h = gray_path(n);
    const DeltaGateSet d = delta_gates(h);
    const auto forms = enumerate_canonical_forms(n, h);
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= h.size(); ++k) fact *= k;
    CHECK(forms.size() == fact);
    if (n > 2) continue;
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& f : forms) {
      const auto images = oracle::evaluate(f.to_circuit(d));
      CHECK(seen.insert(images).second);
      CHECK(constructive_canonicalize(Permutation(n, images), h) == f);
    }
  }
  CHECK(enumerate_canonical_forms(1, gray_path(1)).size() == 2);
  CHECK(enumerate_canonical_forms(2, gray_path(2)).size() == 24);
  CHECK_THROWS_AS(enumerate_canonical_forms(4, gray_path(4)), OutOfRange);
}

TEST_CASE("canonical form text round trip") {
  CanonicalForm f;
  f.width = 3;
  f.blocks = {{5, 2}, {2, 1}, {0, 4}};
  const std::string s = format_canonical(f);
  CHECK(s == "canon n=3 path=gray blocks=[(5,1), (2,0), (0,3)]");
  CHECK(parse_canonical(s) == f);
  CanonicalForm id;
  id.width = 2;
  CHECK(format_canonical(id) == "canon n=2 path=gray blocks=[]");
  CHECK(parse_canonical(format_canonical(id)) == id);
  CHECK_THROWS_AS(parse_canonical("canon blocks"), ParseError);
}
