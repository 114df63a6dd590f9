#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "redcalc/error.hpp"
#include "redcalc/probkit.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace redcalc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::EmptyInput;
}

JointDistribution one_var(std::vector<std::uint64_t> counts) {
  std::vector<std::string> alphabet;
  for (std::size_t i = 0; i < counts.size(); ++i) alphabet.push_back(std::to_string(i));
  return from_counts({{counts.size()}, counts}, {"X"}, {alphabet});
}

// Sums out axes one at a time in the given order, independently of
// marginalize_mask.
std::vector<double> sum_axes_in_order(const JointDistribution& d, std::vector<std::size_t> drop_order) {
  std::vector<std::size_t> shape = d.shape();
  std::vector<double> table(d.probs().begin(), d.probs().end());
  std::vector<std::size_t> alive(shape.size());
  std::iota(alive.begin(), alive.end(), 0);
  for (std::size_t axis : drop_order) {
    const auto pos = static_cast<std::size_t>(std::find(alive.begin(), alive.end(), axis) - alive.begin());
    std::size_t outer = 1, inner = 1;
    for (std::size_t i = 0; i < pos; ++i) outer *= shape[i];
    for (std::size_t i = pos + 1; i < shape.size(); ++i) inner *= shape[i];
    std::vector<double> next(outer * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t e = 0; e < shape[pos]; ++e)
        for (std::size_t i = 0; i < inner; ++i) next[o * inner + i] += table[(o * shape[pos] + e) * inner + i];
    table = std::move(next);
    shape.erase(shape.begin() + static_cast<std::ptrdiff_t>(pos));
    alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return table;
}

}  // namespace

TEST_SUITE("from_counts") {
  TEST_CASE("symmetric counts normalize to a uniform table") {
    const auto d = one_var({2, 2});
    CHECK(d.probs()[0] == doctest::Approx(0.5));
    CHECK(d.probs()[1] == doctest::Approx(0.5));
  }

  TEST_CASE("counts 1,1,2 normalize to quarters and a half") {
    const auto d = one_var({1, 1, 2});
    CHECK(d.probs()[0] == 0.25);
    CHECK(d.probs()[1] == 0.25);
    CHECK(d.probs()[2] == 0.5);
  }

  TEST_CASE("all-zero counts are rejected") {
    CHECK(code_of([] { one_var({0, 0}); }) == ErrorCode::AllZeroCounts);
  }

  TEST_CASE("shape must match the alphabets") {
    CHECK(code_of([] { from_counts({{3}, {1, 1, 1}}, {"X"}, {{"a", "b"}}); }) == ErrorCode::ShapeMismatch);
    CHECK(code_of([] { from_counts({{2}, {1, 1, 1}}, {"X"}, {{"a", "b"}}); }) == ErrorCode::ShapeMismatch);
    CHECK(code_of([] { from_counts({{2, 2}, {1, 1, 1, 1}}, {"X"}, {{"a", "b"}}); }) ==
          ErrorCode::ShapeMismatch);
  }

  TEST_CASE("pseudo-counts smooth every cell") {
    const auto d = from_counts({{2}, {0, 2}}, {"X"}, {{"a", "b"}}, 1.0);
    CHECK(d.probs()[0] == doctest::Approx(0.25));
    CHECK(d.probs()[1] == doctest::Approx(0.75));
    // smoothing rescues an empty table
    const auto u = from_counts({{2}, {0, 0}}, {"X"}, {{"a", "b"}}, 0.5);
    CHECK(u.probs()[0] == doctest::Approx(0.5));
  }

  TEST_CASE("distribution constructor enforces its invariants") {
    CHECK(code_of([] { fixture::binary(1, {0.6, 0.6}); }) == ErrorCode::InvalidProbabilities);
    CHECK(code_of([] { fixture::binary(1, {-0.1, 1.1}); }) == ErrorCode::InvalidProbabilities);
    CHECK(code_of([] { fixture::binary(1, {1.0}); }) == ErrorCode::ShapeMismatch);
    CHECK(code_of([] {
            JointDistribution({"X", "X"}, fixture::binary_alphabets(2), {0.25, 0.25, 0.25, 0.25});
          }) == ErrorCode::ShapeMismatch);
  }
}

TEST_SUITE("marginalize") {
  TEST_CASE("keeping every variable is the identity") {
    const auto d = fixture::xor_triple();
    const std::vector<std::string> all{"X1", "X2", "X3"};
    const auto m = marginalize(d, all);
    CHECK(m.variables() == d.variables());
    CHECK(std::equal(m.probs().begin(), m.probs().end(), d.probs().begin()));
  }

  TEST_CASE("xor triple marginal on a pair is uniform") {
    const std::vector<std::string> keep{"X1", "X2"};
    const auto m = marginalize(fixture::xor_triple(), keep);
    REQUIRE(m.cell_count() == 4);
    for (double p : m.probs()) CHECK(p == 0.25);
  }

  TEST_CASE("independent pair marginal is a uniform bit") {
    const std::vector<std::string> keep{"X1"};
    const auto m = marginalize(fixture::independent_pair(), keep);
    REQUIRE(m.cell_count() == 2);
    CHECK(m.probs()[0] == 0.5);
    CHECK(m.probs()[1] == 0.5);
  }

  TEST_CASE("kept variables stay in distribution order") {
    const std::vector<std::string> keep{"X3", "X1"};
    const auto m = marginalize(fixture::xor_triple(), keep);
    CHECK(m.variables() == std::vector<std::string>{"X1", "X3"});
  }

  TEST_CASE("errors") {
    const auto d = fixture::xor_triple();
    const std::vector<std::string> none;
    const std::vector<std::string> bad{"X9"};
    CHECK(code_of([&] { marginalize(d, none); }) == ErrorCode::EmptySubset);
    CHECK(code_of([&] { marginalize(d, bad); }) == ErrorCode::UnknownVariable);
    CHECK(code_of([&] { marginalize_mask(d, 0b1000); }) == ErrorCode::UnknownVariable);
  }

  TEST_CASE("property: summation order does not change the marginal entropy") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      const auto d = oracle::random_distribution(rng, 4);
      // keep {0, 2}; drop 1 and 3 in both orders
      const auto m = marginalize_mask(d, 0b0101);
      const auto a = sum_axes_in_order(d, {1, 3});
      const auto b = sum_axes_in_order(d, {3, 1});
      REQUIRE(a.size() == m.cell_count());
      CHECK(entropy(m).bits == doctest::Approx(entropy_bits(a)).epsilon(1e-12));
      CHECK(entropy_bits(a) == doctest::Approx(entropy_bits(b)).epsilon(1e-12));
      const double total = std::accumulate(m.probs().begin(), m.probs().end(), 0.0);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_SUITE("entropy") {
  TEST_CASE("uniform over four cells is two bits") {
    CHECK(entropy(fixture::independent_pair()).bits == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("quarters and a half give 1.5 bits") {
    CHECK(std::abs(entropy(one_var({1, 1, 2})).bits - 1.5) < 1e-9);
  }

  TEST_CASE("point mass is zero bits") {
    CHECK(entropy(fixture::binary(1, {1.0, 0.0})).bits == 0.0);
  }

  TEST_CASE("nats conversion") {
    CHECK(EntropyValue{1.0}.nats() == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("property: bounded by log2 of the cell count and matches brute force") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const auto n = static_cast<std::size_t>(1 + trial % 3);
      const auto d = oracle::random_distribution(rng, n);
      const double h = entropy(d).bits;
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      CHECK(h >= 0.0);
      CHECK(h <= max_entropy(static_cast<std::int64_t>(d.cell_count())).bits + 1e-12);
      CHECK(std::abs(h - oracle::brute_entropy(d, all)) < 1e-9);
    }
  }

  TEST_CASE("property: relabeling categories and reordering variables leave entropy fixed") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = oracle::random_distribution(rng, 2);
      const auto shape = d.shape();
      // swap the two axes and reverse the categories of the first
      std::vector<double> swapped(d.cell_count());
      for (std::size_t i = 0; i < shape[0]; ++i)
        for (std::size_t j = 0; j < shape[1]; ++j)
          swapped[j * shape[0] + (shape[0] - 1 - i)] = d.probs()[i * shape[1] + j];
      const JointDistribution p({d.variables()[1], d.variables()[0]}, {d.alphabets()[1], d.alphabets()[0]},
                                swapped);
      CHECK(std::abs(entropy(p).bits - entropy(d).bits) < 1e-12);
    }
  }

  TEST_CASE("property: subadditivity") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = oracle::random_distribution(rng, 3);
      double sum = 0.0;
      for (std::uint64_t m : {1U, 2U, 4U}) sum += entropy(marginalize_mask(d, m)).bits;
      CHECK(entropy(d).bits <= sum + 1e-12);
    }
  }
}

TEST_SUITE("max entropy and redundancy") {
  TEST_CASE("max_entropy") {
    CHECK(max_entropy(1).bits == 0.0);
    CHECK(max_entropy(4).bits == 2.0);
    CHECK(std::abs(max_entropy(3).bits - 1.584963) < 1e-6);
    CHECK(code_of([] { max_entropy(0); }) == ErrorCode::NonPositiveStates);
    CHECK(code_of([] { max_entropy(-3); }) == ErrorCode::NonPositiveStates);
  }

  TEST_CASE("expanded_max_entropy evaluates log2(M*N) literally") {
    const std::vector<double> two{1, 1};
    const std::vector<double> four{1, 1, 1, 1};
    const std::vector<double> one{1};
    CHECK(expanded_max_entropy(2, two).bits == 2.0);
    CHECK(expanded_max_entropy(4, four).bits == 4.0);
    CHECK(expanded_max_entropy(1, one).bits == 0.0);
    const std::vector<double> real_valued{1.5, 2.5};
    CHECK(expanded_max_entropy(2, real_valued).bits == doctest::Approx(3.0));
  }

  TEST_CASE("expanded_max_entropy errors") {
    const std::vector<double> two{1, 1};
    const std::vector<double> low{1, 0.5};
    CHECK(code_of([&] { expanded_max_entropy(3, two); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { expanded_max_entropy(2, low); }) == ErrorCode::MeaningCountBelowOne);
  }

  TEST_CASE("property: expanded maximum never below log2(N)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> m(1.0, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
      const std::int64_t n = 1 + trial % 12;
      std::vector<double> meanings(static_cast<std::size_t>(n));
      for (auto& x : meanings) x = m(rng);
      CHECK(expanded_max_entropy(n, meanings).bits >= max_entropy(n).bits);
    }
  }

  TEST_CASE("redundancy examples") {
    CHECK(redundancy({2.0}, {2.0}) == 0.0);
    CHECK(redundancy({1.0}, {2.0}) == 0.5);
    CHECK(redundancy({0.0}, {3.0}) == 1.0);
  }

  TEST_CASE("redundancy errors") {
    CHECK(code_of([] { redundancy({0.0}, {0.0}); }) == ErrorCode::ZeroMaxEntropy);
    CHECK(code_of([] { redundancy({2.1}, {2.0}); }) == ErrorCode::SystemExceedsMax);
    // within tolerance is accepted and clamps to 0
    CHECK(redundancy({2.0 + 1e-10}, {2.0}) == 0.0);
  }

  TEST_CASE("property: redundancy stays in [0,1] and is 0 only at the maximum") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = oracle::random_distribution(rng, 2);
      const auto hmax = max_entropy(static_cast<std::int64_t>(d.cell_count()));
      const double r = redundancy(entropy(d), hmax);
      CHECK(r >= 0.0);
      CHECK(r <= 1.0);
      CHECK((r == 0.0) == (std::abs(entropy(d).bits - hmax.bits) < 1e-15));
    }
  }
}
