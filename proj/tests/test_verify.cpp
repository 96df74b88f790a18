#include <doctest.h>

#include "homchains/verify.hpp"

using namespace homchains;

namespace {

finite_poset point() { return finite_poset(1, std::vector<cover_pair>{}); }

}  // namespace

TEST_CASE("fold consequence on a diamond") {
  // 0 < 1, 2 < 3: two middle elements
  std::vector<cover_pair> c{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  finite_poset d(4, c);
  for (element_id x : {1U, 2U}) {
    auto r = verify_fold_consequence(chain(2), d, x);
    CHECK(r.agree);
    CHECK(r.cells_before == std::vector<std::size_t>{2, 1});
    CHECK(r.cells_after == std::vector<std::size_t>{1});
  }
  CHECK_THROWS_AS(verify_fold_consequence(chain(2), d, 0), input_error);
  CHECK_THROWS_AS(verify_fold_consequence(chain(2), d, 9), input_error);
}

TEST_CASE("fold sequences reduce grids to chains") {
  for (int r = 1; r <= 3; ++r)
    for (int s = r; s <= 3; ++s) {
      auto grid = product({chain(static_cast<std::size_t>(r)), chain(static_cast<std::size_t>(s))});
      auto steps = fold_to_chain(chain(static_cast<std::size_t>(r + s)), grid);
      CHECK(steps.size() == static_cast<std::size_t>((r + 1) * (s + 1) - (r + s + 1)));
      for (const auto& st : steps) {
        CHECK(st.agree);
        CHECK(st.before.betti[0] == 1);
      }
      CHECK(steps.back().cells_after == std::vector<std::size_t>{1});
    }
  CHECK(is_chain(chain(3)));
  CHECK_FALSE(is_chain(disjoint_union({point(), point()})));
  // two points fold to one, a 6-crown has no fold at all
  CHECK(fold_to_chain(chain(1), disjoint_union({point(), point()})).size() == 1);
  std::vector<cover_pair> crown{{0, 3}, {0, 4}, {1, 4}, {1, 5}, {2, 5}, {2, 3}};
  finite_poset p(6, crown);
  CHECK(find_folds(p).empty());
  CHECK_THROWS_AS(fold_to_chain(chain(1), p), input_error);
}

TEST_CASE("verification suites") {
  auto rep = run_verification(chain_spec({1, 1, 2}), {"all"});
  CHECK(rep.passed());
  CHECK(rep.suites.size() == suite_names().size());
  for (const auto& s : rep.suites) CHECK_MESSAGE(s.passed, s.name << ": " << s.detail);
  auto euler = run_verification(chain_spec({1, 1, 1, 1}), {"euler"});
  REQUIRE(euler.suites.size() == 1);
  CHECK(euler.suites[0].passed);
  CHECK(euler.suites[0].detail == "chi = -6");
  auto twice = run_verification(chain_spec({1, 1}), {"torsion", "torsion", "acyclic"});
  CHECK(twice.suites.size() == 2);
  CHECK_THROWS_AS(run_verification(chain_spec({1}), {"nope"}), input_error);
  verify_options tiny;
  tiny.cap = 5;
  CHECK_THROWS_AS(run_verification(chain_spec({1, 1, 1, 1}), {"cubical"}, tiny), cap_error);
}
