#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <vector>

#include "lrr/error.hpp"
#include "lrr/featsel.hpp"
#include "lrr/parallel.hpp"
#include "lrr/shannon.hpp"
#include "support.hpp"

using namespace lrr;

namespace {

using Codes = std::vector<int>;

/// y = [x_0 > 0]; every other column is independent noise.
DataMatrix planted(Index n, Index d, std::uint64_t seed) {
  Rng rng(seed, 1);
  Matrix x = test::gaussian_matrix(n, d, rng);
  std::vector<int> y(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x(i, 0) > 0 ? 1 : 0;
  return DataMatrix(x, y);
}

SelectionConfig config(Criterion c, Index m) {
  SelectionConfig cfg;
  cfg.criterion = c;
  cfg.m = m;
  return cfg;
}

constexpr std::array<Criterion, 6> kBaselines{Criterion::mifs, Criterion::fou,  Criterion::mrmr,
                                              Criterion::jmi,  Criterion::cmim, Criterion::disr};

}  // namespace

TEST_CASE("discretize_equal_width") {
  Matrix m(3, 3);
  m << 0, 5, 0, 0.5, 5, 1, 1, 5, 2;
  const DataMatrix b2 = discretize_equal_width(DataMatrix(m), 2);
  CHECK(discrete_column(b2, 0) == Codes{0, 1, 1});
  CHECK(discrete_column(b2, 1) == Codes{0, 0, 0});
  const DataMatrix b3 = discretize_equal_width(DataMatrix(m), 3);
  CHECK(discrete_column(b3, 2) == Codes{0, 1, 2});
  Matrix ints(5, 1);
  ints << 0, 4, 2, 3, 1;
  CHECK(discrete_column(discretize_equal_width(DataMatrix(ints), 5), 0) == Codes{0, 4, 2, 3, 1});
  CHECK_THROWS_AS(discretize_equal_width(DataMatrix(m), 1), InvalidArgument);
}

TEST_CASE("plug-in Shannon estimators") {
  const Codes u{0, 1, 0, 1, 1, 0};
  CHECK(plugin_mi(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(plugin_mi(Codes{0, 0, 1, 1}, Codes{0, 1, 0, 1})) < 1e-14);
  CHECK(plugin_entropy({Codes{0, 1, 2, 3}}) == doctest::Approx(2.0));
  CHECK(plugin_entropy({Codes{7, 7, 7}}) == 0.0);
  CHECK(plugin_entropy({Codes{0, 0, 1, 1}, Codes{0, 1, 0, 1}}) == doctest::Approx(2.0));
  // XOR: y = a ^ b. I(a; y) = 0 but I(a; y | b) = 1.
  const Codes a{0, 0, 1, 1}, b{0, 1, 0, 1}, y{0, 1, 1, 0};
  CHECK(std::abs(plugin_mi(a, y)) < 1e-14);
  CHECK(plugin_cmi(a, y, b) == doctest::Approx(1.0));
  CHECK(std::abs(plugin_cmi(a, y, a)) < 1e-14);
  // Symbols are arbitrary integers.
  CHECK(plugin_mi(Codes{-3, 9, -3, 9}, Codes{5, 2, 5, 2}) == doctest::Approx(1.0));
}

TEST_CASE("baseline scores") {
  Rng rng(5);
  Codes x(60), s(60), y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    y[i] = static_cast<int>(rng.below(3));
    x[i] = rng.uniform() < 0.7 ? y[i] : static_cast<int>(rng.below(3));
    s[i] = static_cast<int>(rng.below(4));
  }
  const double ixy = plugin_mi(x, y);
  for (Criterion c : kBaselines) CHECK(baseline_score(c, x, {}, y) == ixy);

  const std::vector<Codes> dup{x};
  CHECK(baseline_score(Criterion::mrmr, x, dup, y) ==
        doctest::Approx(ixy - plugin_entropy({std::span<const int>(x)})).epsilon(1e-12));
  const std::vector<Codes> two{s, x};
  CHECK(baseline_score(Criterion::mifs, x, two, y, 0.5) ==
        doctest::Approx(ixy - 0.5 * (plugin_mi(x, s) + plugin_mi(x, x))));
  CHECK(baseline_score(Criterion::mrmr, x, two, y) == doctest::Approx(ixy - 0.5 * (plugin_mi(x, s) + plugin_mi(x, x))));
  CHECK(baseline_score(Criterion::fou, x, two, y) ==
        doctest::Approx(ixy - (plugin_mi(x, s) - plugin_cmi(x, s, y)) - (plugin_mi(x, x) - plugin_cmi(x, x, y))));
  const double jxs = plugin_entropy({std::span<const int>(x), std::span<const int>(s)}) + plugin_entropy({y}) -
                     plugin_entropy({std::span<const int>(x), std::span<const int>(s), std::span<const int>(y)});
  const std::vector<Codes> one{s};
  CHECK(baseline_score(Criterion::jmi, x, one, y) == doctest::Approx(jxs));
  CHECK(baseline_score(Criterion::disr, x, one, y) ==
        doctest::Approx(jxs / plugin_entropy({std::span<const int>(x), std::span<const int>(s), std::span<const int>(y)})));
  CHECK(baseline_score(Criterion::cmim, x, two, y) == doctest::Approx(std::min(plugin_cmi(x, y, s), plugin_cmi(x, y, x))));

  // Candidate independent of y given each selected feature: CMIM = 0.
  const Codes yc{0, 0, 1, 1, 0, 0, 1, 1}, sel{0, 0, 1, 1, 0, 0, 1, 1}, cand{0, 1, 0, 1, 1, 0, 1, 0};
  const std::vector<Codes> sc{sel};
  CHECK(std::abs(baseline_score(Criterion::cmim, cand, sc, yc)) < 1e-14);
  CHECK_THROWS_AS(baseline_score(Criterion::lrmi, x, one, y), InvalidArgument);
  CHECK(parse_criterion("disr") == Criterion::disr);
  CHECK_THROWS_AS(parse_criterion("relief"), InvalidArgument);
}

TEST_CASE("Renyi scorer") {
  const Index n = 80;
  Rng rng(8);
  Matrix x = test::gaussian_matrix(n, 4, rng);
  std::vector<int> y(n);
  for (Index i = 0; i < n; ++i) {
    y[static_cast<std::size_t>(i)] = static_cast<int>(rng.below(3));
    x(i, 2) = 4.0 * y[static_cast<std::size_t>(i)];  // copy of the label, widely spaced
    x(i, 3) = 1.5;                                   // constant
  }
  const DataMatrix data(x, y);
  SelectionConfig cfg = config(Criterion::lrmi, 2);
  cfg.k = 20;
  cfg.backend = Backend::exact_lowrank;
  RenyiMiScorer scorer(data, y, cfg);
  CHECK(scorer.current() == 0.0);
  // Empty selection: a constant candidate carries no information.
  CHECK(std::abs(scorer.score(3)) < 1e-9);
  CHECK(scorer.score(2) > scorer.score(0));
  CHECK(scorer.score(2) > scorer.score(1));
  scorer.select(0);
  const double before = scorer.current();
  CHECK(scorer.score(3) == doctest::Approx(before).epsilon(1e-12));
  CHECK((scorer.feature_kernel(3).matrix() - uninformative_kernel(n).matrix()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("Renyi scorer: exact and Lanczos backends agree") {
  const Index n = 256;
  Rng rng(33);
  Matrix x = test::gaussian_matrix(n, 3, rng);
  std::vector<int> y(n);
  for (Index i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x(i, 0) + 0.5 * x(i, 1) > 0 ? 1 : 0;
  const DataMatrix data(x, y);
  SelectionConfig ex = config(Criterion::lrmi, 1);
  ex.k = 32;
  ex.backend = Backend::exact_lowrank;
  SelectionConfig lz = ex;
  lz.backend = Backend::lanczos;
  lz.s = 82;
  RenyiMiScorer a(data, y, ex), b(data, y, lz);
  for (Index j = 0; j < 3; ++j) CHECK(std::abs(a.score(j) - b.score(j)) < 1e-3);
  a.select(0);
  b.select(0);
  for (Index j = 1; j < 3; ++j) CHECK(std::abs(a.score(j) - b.score(j)) < 1e-3);
}

TEST_CASE("planted feature is found first") {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SelectionTrace t = greedy_select(planted(200, 10, seed), config(Criterion::lrmi, 1));
    hits += t.features.front() == 0;
  }
  CHECK(hits >= 19);
  for (Criterion c : {Criterion::mrmi, Criterion::mrmr, Criterion::jmi}) {
    SelectionConfig cfg = config(c, 1);
    CHECK(greedy_select(planted(120, 6, 4), cfg).features.front() == 0);
  }
}

TEST_CASE("greedy selection mechanics") {
  const DataMatrix x = planted(60, 5, 2);
  for (Criterion c : {Criterion::lrmi, Criterion::mrmr, Criterion::cmim}) {
    SelectionConfig cfg = config(c, 5);
    cfg.k = 20;
    const SelectionTrace t = greedy_select(x, cfg);
    CHECK(t.features.size() == 5);
    CHECK(t.scores.size() == 5);
    CHECK(t.seconds.size() == 5);
    CHECK(std::set<Index>(t.features.begin(), t.features.end()).size() == 5);
    const SelectionTrace again = greedy_select(x, cfg);
    CHECK(again.features == t.features);
    CHECK(again.scores == t.scores);
  }
  // Thread count does not change the trace.
  SelectionConfig cfg = config(Criterion::lrmi, 3);
  cfg.k = 20;
  set_num_threads(1);
  const SelectionTrace one = greedy_select(x, cfg);
  set_num_threads(3);
  const SelectionTrace three = greedy_select(x, cfg);
  set_num_threads(1);
  CHECK(one.features == three.features);
  CHECK(one.scores == three.scores);

  CHECK_THROWS_AS(greedy_select(x, config(Criterion::lrmi, 6)), InvalidArgument);
  CHECK_THROWS_AS(greedy_select(DataMatrix(x.values()), config(Criterion::lrmi, 1)), InvalidArgument);
}

TEST_CASE("ties go to the lowest index") {
  Rng rng(3);
  Matrix x = test::gaussian_matrix(40, 4, rng);
  x.col(2) = x.col(0);
  x.col(3) = x.col(0);
  std::vector<int> y(40);
  for (Index i = 0; i < 40; ++i) y[static_cast<std::size_t>(i)] = x(i, 0) > 0;
  const DataMatrix data(x, y);
  for (Criterion c : {Criterion::lrmi, Criterion::mrmi, Criterion::mifs}) {
    SelectionConfig cfg = config(c, 1);
    cfg.k = 10;
    CHECK(greedy_select(data, cfg).features.front() == 0);
  }
}

TEST_CASE("mrmr avoids a duplicated feature") {
  const Index n = 300;
  Rng rng(6);
  Matrix x(n, 4);
  std::vector<int> y(n);
  for (Index i = 0; i < n; ++i) {
    const int label = static_cast<int>(rng.below(4));
    y[static_cast<std::size_t>(i)] = label;
    x(i, 0) = (label & 1) + 0.2 * rng.normal();
    x(i, 1) = x(i, 0);
    x(i, 2) = ((label >> 1) & 1) * (rng.uniform() < 0.8 ? 1.0 : 0.0) + 0.2 * rng.normal();
    x(i, 3) = rng.normal();
  }
  const SelectionTrace t = greedy_select(DataMatrix(x, y), config(Criterion::mrmr, 2));
  CHECK((t.features[0] == 0 || t.features[0] == 1));
  CHECK(t.features[1] == 2);
}

TEST_CASE("step-one Shannon scores coincide across criteria") {
  const DataMatrix x = planted(100, 6, 9);
  std::vector<double> first;
  for (Criterion c : kBaselines) {
    const SelectionTrace t = greedy_select(x, config(c, 1));
    first.push_back(t.scores.front());
    CHECK(t.features.front() == 0);
  }
  for (double v : first) CHECK(std::abs(v - first.front()) < 1e-12);
}
