#include <doctest.h>

#include "oracle.hpp"
#include "revrw/errors.hpp"
#include "revrw/normalize.hpp"

using namespace revrw;

namespace {

CoordinateSequence seq(int n, std::vector<Line> e) { return {n, std::move(e)}; }

std::vector<Gate> delta_seq(const DeltaGateSet& d, std::initializer_list<std::size_t> idx) {
  std::vector<Gate> gs;
  for (std::size_t i : idx) gs.push_back(d[i]);
  return gs;
}

Circuit fig_circuit() {
  return Circuit(4, {Gate::cnot(3, 2), Gate::cnot(1, 3), Gate({1, 3}, {2}, 4), Gate::cnot(3, 2),
                     Gate({}, {1, 2}, 3), Gate({3, 4}, {}, 2), Gate::cnot(3, 1), Gate::x(4),
                     Gate({1, 2}, {}, 4)});
}

void check_trace(const RewriteTrace& t, const Circuit& from, const Circuit& to) {
  CHECK(t.initial == from);
  CHECK(replay(t) == to);
}

}  // namespace

TEST_CASE("generate flips the listed coordinates") {
  CHECK(generate(seq(3, {1, 3}), BitString::parse("000")).str() == "101");
  CHECK(generate(seq(3, {}), BitString::parse("010")).str() == "010");
  CHECK(generate(seq(2, {2, 2}), BitString::parse("01")).str() == "01");
  CHECK_THROWS_AS(generate(seq(2, {3}), BitString::parse("00")), OutOfRange);
  CHECK_THROWS_AS(generate(seq(2, {1}), BitString::parse("000")), WidthMismatch);
}

TEST_CASE("coordinate edits") {
  CHECK(apply_edit(seq(3, {1, 2, 3}), {CoordinateEdit::Kind::Swap, 1}) == seq(3, {1, 3, 2}));
  CHECK(apply_edit(seq(3, {1, 2, 2, 3}), {CoordinateEdit::Kind::Delete, 1}) == seq(3, {1, 3}));
  CHECK_THROWS_AS(apply_edit(seq(3, {1, 2}), {CoordinateEdit::Kind::Delete, 0}), PreconditionError);
  CHECK_THROWS_AS(apply_edit(seq(3, {1, 2}), {CoordinateEdit::Kind::Swap, 1}), OutOfRange);
}

TEST_CASE("reduce_coordinates examples") {
  CHECK(reduce_coordinates(seq(3, {1, 2, 1, 2, 3})).result == seq(3, {3}));
  CHECK(reduce_coordinates(seq(3, {})).result == seq(3, {}));
  const auto r = reduce_coordinates(seq(2, {2, 2}));
  CHECK(r.result.entries.empty());
  REQUIRE(r.edits.size() == 1);
  CHECK(r.edits[0] == CoordinateEdit{CoordinateEdit::Kind::Delete, 0});
  // the closest pair goes first: (3,3) is adjacent
  const auto c = reduce_coordinates(seq(3, {1, 2, 3, 3, 1}));
  REQUIRE_FALSE(c.edits.empty());
  CHECK(c.edits[0] == CoordinateEdit{CoordinateEdit::Kind::Delete, 2});
  CHECK(c.result == seq(3, {2}));
}

TEST_CASE("reduce_coordinates preserves the generated string and leaves distinct entries") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    CoordinateSequence s{n, {}};
    const std::size_t len = rng() % 14;
    for (std::size_t k = 0; k < len; ++k) s.entries.push_back(1 + static_cast<Line>(rng() % n));
    const BitString b0 = decode(n, rng() % (std::uint64_t{1} << n));
    const auto r = reduce_coordinates(s);
    CHECK(generate(r.result, b0) == generate(s, b0));
    std::vector<Line> sorted = r.result.entries;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CoordinateSequence replayed = s;
    for (const auto& e : r.edits) {
      replayed = apply_edit(replayed, e);
      CHECK(generate(replayed, b0) == generate(s, b0));
    }
    CHECK(replayed == r.result);
    CHECK(r.result.entries.size() % 2 == s.entries.size() % 2);
  }
}

TEST_CASE("structural commutation and braid compatibility") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  CHECK(commutes_structurally(d[0], d[2]));
  CHECK_FALSE(commutes_structurally(d[0], d[1]));
  CHECK_FALSE(commutes_structurally(d[0], d[0]));
  CHECK(braid_compatible(d[0], d[1]));
  CHECK(braid_compatible(d[1], d[2]));
  CHECK_FALSE(braid_compatible(d[0], d[2]));
  CHECK_FALSE(braid_compatible(d[1], d[1]));
}

TEST_CASE("aba_to_bab on a mixed-polarity pair") {
  const Gate a({1, 3}, {2}, 4);
  const Gate b({1}, {2, 4}, 3);
  const Circuit c(4, {Gate::x(1), a, b, a, Gate::x(2)});
  const RewriteTrace t = aba_to_bab(c, 1);
  check_trace(t, c, Circuit(4, {Gate::x(1), b, a, b, Gate::x(2)}));
  for (const auto& s : t.steps) CHECK_FALSE(s.is_macro());
  // twice returns to the start
  const Circuit once = replay(t);
  CHECK(replay(aba_to_bab(once, 1)) == c);
  CHECK_THROWS_AS(aba_to_bab(Circuit(4, {a, a, a}), 0), PreconditionError);
}

TEST_CASE("aba_to_bab on every adjacent pair of the gate set") {
  for (int n = 1; n <= 5; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      const Circuit c(n, {d[i], d[i + 1], d[i]});
      check_trace(aba_to_bab(c, 0), c, Circuit(n, {d[i + 1], d[i], d[i + 1]}));
    }
  }
}

TEST_CASE("palindrome_reverse") {
  const DeltaGateSet d = delta_gates(gray_path(3));
  const Circuit one(3, {d[4]});
  check_trace(palindrome_reverse(one, 0, 1), one, one);
  const Circuit two(3, delta_seq(d, {2, 3, 2}));
  check_trace(palindrome_reverse(two, 0, 2), two, Circuit(3, delta_seq(d, {3, 2, 3})));
  const Circuit three(3, delta_seq(d, {0, 1, 2, 3, 2, 1, 0}));
  const Circuit padded = concat(Circuit(3, {Gate::x(1)}), three);
  check_trace(palindrome_reverse(padded, 1, 4), padded,
              concat(Circuit(3, {Gate::x(1)}), Circuit(3, delta_seq(d, {3, 2, 1, 0, 1, 2, 3}))));
  const Circuit m3(3, delta_seq(d, {1, 2, 3, 2, 1}));
  check_trace(palindrome_reverse(m3, 0, 3), m3, Circuit(3, delta_seq(d, {3, 2, 1, 2, 3})));
  CHECK_THROWS_AS(palindrome_reverse(Circuit(3, delta_seq(d, {1, 2, 3})), 0, 2), PreconditionError);
}

TEST_CASE("palindrome_reverse round trip on random walks") {
  oracle::Rng rng(12);
  for (int n = 2; n <= 5; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t m = 1 + rng() % std::min<std::size_t>(5, d.size());
      const std::size_t s = rng() % (d.size() - m + 1);
      std::vector<std::size_t> idx;
      for (std::size_t k = 0; k < m; ++k) idx.push_back(s + k);
      for (std::size_t k = m - 1; k-- > 0;) idx.push_back(s + k);
      std::vector<Gate> gs, rev;
      for (std::size_t k : idx) gs.push_back(d[k]);
      for (std::size_t k : idx) rev.push_back(d[2 * s + m - 1 - k]);
      const Circuit c(n, gs);
      const Circuit target(n, rev);
      const RewriteTrace t = palindrome_reverse(c, 0, m);
      check_trace(t, c, target);
      check_trace(palindrome_reverse(target, 0, m), target, c);
    }
  }
}

TEST_CASE("reduce_double_occurrence examples") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  const auto apart = reduce_double_occurrence(Circuit(2, delta_seq(d, {0, 2, 0})), 0, d);
  CHECK(apart.circuit == Circuit(2, {d[2]}));
  check_trace(apart.trace, Circuit(2, delta_seq(d, {0, 2, 0})), apart.circuit);

  const auto braid = reduce_double_occurrence(Circuit(2, delta_seq(d, {0, 1, 0})), 0, d);
  CHECK(braid.circuit == Circuit(2, delta_seq(d, {1, 0, 1})));

  const auto cancel = reduce_double_occurrence(Circuit(2, delta_seq(d, {0, 1, 1, 0})), 0, d);
  CHECK(cancel.circuit.empty());

  CHECK_THROWS_AS(reduce_double_occurrence(Circuit(2, delta_seq(d, {0, 1})), 0, d), PreconditionError);
  // gates on both sides of i: a reduced word with M1 twice
  CHECK_THROWS_AS(reduce_double_occurrence(Circuit(2, delta_seq(d, {1, 0, 2, 1})), 1, d), PreconditionError);
}

TEST_CASE("reduce_double_occurrence measures decrease") {
  oracle::Rng rng(77);
  for (int n = 2; n <= 4; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t i = rng() % d.size();
      const bool above = i == 0 || (i + 1 < d.size() && rng() % 2);
      std::vector<Gate> gs{d[i]};
      const std::size_t between = rng() % 6;
      for (std::size_t k = 0; k < between; ++k) {
        const std::size_t j = above ? i + 1 + rng() % (d.size() - i - 1) : rng() % i;
        gs.push_back(d[j]);
      }
      gs.push_back(d[i]);
      const Circuit c(n, gs);
      const auto r = reduce_double_occurrence(c, i, d);
      check_trace(r.trace, c, r.circuit);
      std::size_t occurrences = 0;
      for (const Gate& g : r.circuit.gates()) occurrences += g == d[i];
      CHECK(occurrences <= 1);
      for (const Gate& g : r.circuit.gates()) CHECK(d.index_of(g).has_value());
      REQUIRE_FALSE(r.measures.empty());
      for (std::size_t k = 1; k < r.measures.size(); ++k) CHECK(r.measures[k] < r.measures[k - 1]);
    }
  }
}

TEST_CASE("form_block") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  const Circuit run(2, delta_seq(d, {0, 1, 2}));
  auto [same, t0] = form_block(run, 0, d);
  CHECK(same == run);
  auto [moved, t1] = form_block(Circuit(2, delta_seq(d, {0, 2})), 0, d);
  CHECK(moved == Circuit(2, delta_seq(d, {2, 0})));
  check_trace(t1, Circuit(2, delta_seq(d, {0, 2})), moved);
  auto [split, t2] = form_block(Circuit(2, delta_seq(d, {0, 2, 1})), 0, d);
  CHECK(split == Circuit(2, delta_seq(d, {2, 0, 1})));
  check_trace(t2, Circuit(2, delta_seq(d, {0, 2, 1})), split);
}

TEST_CASE("form_block output shape on random inputs") {
  oracle::Rng rng(41);
  for (int n = 2; n <= 4; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t i = rng() % (d.size() - 1);
      std::vector<Gate> gs{d[i]};
      // larger indices, each at most once per index so the suffix stays bounded
      std::vector<std::size_t> pool;
      for (std::size_t j = i + 1; j < d.size(); ++j) pool.push_back(j);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(std::min<std::size_t>(pool.size(), rng() % 6));
      for (std::size_t j : pool) gs.push_back(d[j]);
      const Circuit c(n, gs);
      auto [out, t] = form_block(c, i, d);
      check_trace(t, c, out);
      // D' then M_i..M_{i+k}
      std::size_t start = out.size();
      while (start > 0 && out[start - 1] != d[i]) --start;
      REQUIRE(start > 0);
      --start;
      for (std::size_t k = start; k < out.size(); ++k) CHECK(out[k] == d[i + (k - start)]);
      for (std::size_t k = 0; k < start; ++k) CHECK(out[k] != d[i]);
    }
  }
}

TEST_CASE("canonicalize_delta") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  auto [empty_form, te] = canonicalize_delta(Circuit(2), d);
  CHECK(empty_form.blocks.empty());
  auto [twice, tt] = canonicalize_delta(Circuit(2, delta_seq(d, {0, 0})), d);
  CHECK(twice.blocks.empty());
  CHECK(replay(tt).empty());
  auto [braid, tb] = canonicalize_delta(Circuit(2, delta_seq(d, {0, 1, 0})), d);
  CHECK(braid == constructive_canonicalize(simulate(Circuit(2, delta_seq(d, {0, 1, 0}))), d.path));
  CHECK(replay(tb) == braid.to_circuit(d));
}

TEST_CASE("widen_gates") {
  auto [x, tx] = widen_gates(Circuit(2, {Gate::x(2)}));
  CHECK(x == Circuit(2, {Gate({}, {1}, 2), Gate({1}, {}, 2)}));
  check_trace(tx, Circuit(2, {Gate::x(2)}), x);
  auto [c, tc] = widen_gates(Circuit(3, {Gate::cnot(1, 2)}));
  CHECK(c == Circuit(3, {Gate({1}, {3}, 2), Gate({1, 3}, {}, 2)}));
  auto [full, tf] = widen_gates(Circuit(2, {Gate({1}, {}, 2)}));
  CHECK(full == Circuit(2, {Gate({1}, {}, 2)}));
  CHECK(tf.steps.empty());
  auto [x3, t3] = widen_gates(Circuit(3, {Gate::x(1)}));
  CHECK(x3.size() == 4);
  for (const Gate& g : x3.gates()) CHECK(g.is_full_width(3));
  CHECK(equivalent_by_sim(x3, Circuit(3, {Gate::x(1)})));
}

TEST_CASE("decompose_to_delta and its inverse") {
  const DeltaGateSet d = delta_gates(gray_path(2));
  // exchanges a_0 = 00 and a_3 = 10
  const Gate far({}, {2}, 1);
  auto [c, t] = decompose_to_delta(far, d);
  CHECK(c == Circuit(2, delta_seq(d, {0, 1, 2, 1, 0})));
  CHECK(replay(t) == c);
  auto [g, tg] = reduce_palindrome_to_gate(c, d);
  CHECK(g == far);
  check_trace(tg, c, Circuit(2, {far}));
  for (const auto& s : tg.steps) CHECK_FALSE(s.is_macro());

  auto [in_set, ti] = decompose_to_delta(d[1], d);
  CHECK(in_set == Circuit(2, {d[1]}));
  CHECK(ti.steps.empty());
}

TEST_CASE("every full-width gate decomposes and collapses back") {
  for (int n = 2; n <= 4; ++n) {
    const DeltaGateSet d = delta_gates(gray_path(n));
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
      for (Line t = 1; t <= n; ++t) {
        const std::uint64_t b = a ^ (std::uint64_t{1} << (n - t));
        if (a > b) continue;
        LineSet pos, neg;
        for (Line l = 1; l <= n; ++l) {
          if (l == t) continue;
          if ((a >> (n - l)) & 1U) pos = pos.with(l); else neg = neg.with(l);
        }
        const Gate gate(pos, neg, t);
        auto [c, tc] = decompose_to_delta(gate, d);
        CHECK(equivalent_by_sim(c, Circuit(n, {gate})));
        auto [back, tb] = reduce_palindrome_to_gate(c, d);
        CHECK(back == gate);
        CHECK(replay(tb) == Circuit(n, {gate}));
      }
    }
  }
}

TEST_CASE("canonicalize the worked 4-line example") {
  const Circuit c = fig_circuit();
  const HamiltonianPath h = gray_path(4);
  auto [f, t] = canonicalize(c, h);
  CHECK(f == constructive_canonicalize(simulate(c), h));
  check_trace(t, c, f.to_circuit(delta_gates(h)));
}

TEST_CASE("canonicalize checks widths") {
  CHECK_THROWS_AS(canonicalize(Circuit(9), gray_path(9)), WidthCapExceeded);
  CHECK_THROWS_AS(canonicalize(Circuit(3), gray_path(2)), WidthMismatch);
  CanonOptions opts;
  opts.max_width = 2;
  CHECK_THROWS_AS(canonicalize(Circuit(3), gray_path(3), opts), WidthCapExceeded);
}

TEST_CASE("canonicalize agrees with the constructive form") {
  oracle::Rng rng(2024);
  for (int n = 1; n <= 4; ++n) {
    const HamiltonianPath h = gray_path(n);
    const DeltaGateSet d = delta_gates(h);
    for (int trial = 0; trial < (n < 4 ? 40 : 10); ++trial) {
      const Circuit c = oracle::random_circuit(rng, n, 10);
      auto [f, t] = canonicalize(c, h);
      CHECK(f == constructive_canonicalize(Permutation(n, oracle::evaluate(c)), h));
      check_trace(t, c, f.to_circuit(d));
    }
  }
}

TEST_CASE("canonicalize works on another Hamiltonian path") {
  const HamiltonianPath h = HamiltonianPath::from_nodes(2, {0, 2, 3, 1}, "alt");
  const DeltaGateSet d = delta_gates(h);
  oracle::Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Circuit c = oracle::random_circuit(rng, 2, 8);
    auto [f, t] = canonicalize(c, h);
    CHECK(f.path_name == "alt");
    CHECK(f == constructive_canonicalize(simulate(c), h));
    CHECK(replay(t) == f.to_circuit(d));
  }
}

TEST_CASE("equivalent") {
  const HamiltonianPath h = gray_path(2);
  const auto diff = equivalent(Circuit(2, {Gate::x(1)}), Circuit(2, {Gate::x(2)}), h);
  CHECK_FALSE(diff.equivalent);
  REQUIRE(diff.witness);
  CHECK(diff.witness->str() == "00");
  CHECK_FALSE(diff.certificate);

  const Circuit a(2, {Gate::cnot(1, 2), Gate::cnot(2, 1), Gate::cnot(1, 2)});
  const Circuit b(2, {Gate::cnot(2, 1), Gate::cnot(1, 2), Gate::cnot(2, 1)});
  const auto same = equivalent(a, b, h);
  CHECK(same.equivalent);
  REQUIRE(same.certificate);
  check_trace(*same.certificate, a, b);
  CHECK_THROWS_AS(equivalent(Circuit(2), Circuit(3), h), WidthMismatch);
}

TEST_CASE("mutated circuits are certified equivalent") {
  oracle::Rng rng(55);
  const HamiltonianPath h = gray_path(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit a = oracle::random_circuit(rng, 3, 8);
    const Circuit b = oracle::mutate(rng, a, 5);
    const auto r = equivalent(a, b, h);
    CHECK(r.equivalent);
    REQUIRE(r.certificate);
    check_trace(*r.certificate, a, b);
  }
}
