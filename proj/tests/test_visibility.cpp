#include <random>

#include "doctest.h"
#include "fatbots/visibility.hpp"
#include "oracles.hpp"

using namespace fatbots;

TEST_CASE("visible_pair examples") {
  std::vector<Point2> two{{0, 0}, {5, 0}};
  CHECK(visible_pair(0, 1, two));
  std::vector<Point2> row{{0, 0}, {2, 0}, {4, 0}};
  CHECK_FALSE(visible_pair(0, 2, row));
  CHECK(visible_pair(0, 1, row));
  std::vector<Point2> side{{0, 0}, {4, 0}, {2, 3}};
  CHECK(visible_pair(0, 1, side));
  std::vector<Point2> overlap{{0, 0}, {1, 0}, {5, 5}};
  CHECK_THROWS_AS(visible_pair(0, 2, overlap), ModelIntegrityError);
}

TEST_CASE("local_view examples") {
  std::vector<Point2> sq{{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  for (int i = 0; i < 4; ++i) {
    auto v = local_view(i, sq, 4);
    CHECK(v.centers.size() == 4);
    CHECK(v.self() == sq[i]);
    CHECK(v.hull_members.size() == 4);
  }
  std::vector<Point2> row{{0, 0}, {2, 0}, {4, 0}};
  auto v = local_view(0, row, 3);
  REQUIRE(v.centers.size() == 2);
  CHECK(v.ids[1] == 1);
  std::vector<Point2> one{{3, 3}};
  CHECK(local_view(0, one, 1).centers.size() == 1);
}

TEST_CASE("visibility is symmetric and matches sampling away from the margin") {
  std::mt19937_64 gen(21);
  int compared = 0, mismatched = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + trial % 4;
    std::vector<Point2> c;
    std::uniform_real_distribution<double> u(0, 3.0 * n);
    while (static_cast<int>(c.size()) < n) {
      Point2 p{u(gen), u(gen)};
      bool ok = true;
      for (Point2 q : c) ok = ok && dist(p, q) >= 2.0;
      if (ok) c.push_back(p);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto d = visible_pair_detail(i, j, c);
        CHECK(d.visible == visible_pair(j, i, c));
        if (std::abs(d.margin) <= 10 * kDefaultTau) continue;
        ++compared;
        if (d.visible != oracle::sample_visibility(c, i, j, 60).visible) ++mismatched;
      }
  }
  CHECK(compared > 100);
  // coarse sampling may miss a thin window; the full-resolution sweep runs in
  // the acceptance binary
  CHECK(mismatched <= compared / 100);
}

TEST_CASE("everyone sees everyone on a convex hull without collinear triples") {
  // regular polygons with generous spacing
  for (int n = 3; n <= 8; ++n) {
    std::vector<Point2> c;
    for (int k = 0; k < n; ++k) {
      double a = 2 * std::numbers::pi * k / n;
      c.push_back({10 * std::cos(a), 10 * std::sin(a)});
    }
    CHECK(all_pairs_visible(c));
    for (int i = 0; i < n; ++i) CHECK(static_cast<int>(local_view(i, c, n).centers.size()) == n);
  }
}
