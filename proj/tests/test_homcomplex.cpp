#include <doctest.h>

#include <set>

#include "homchains/chain.hpp"
#include "homchains/homcomplex.hpp"
#include "oracles.hpp"

using namespace homchains;

namespace {

finite_poset point() { return finite_poset(1, std::vector<cover_pair>{}); }

distributive_lattice boolean(int n) { return ideal_lattice(disjoint_union(std::vector<finite_poset>(static_cast<std::size_t>(n), point()))); }

std::set<multi_hom> cells_of(const cell_complex& c) {
  std::set<multi_hom> out;
  for (cell_id x = 0; x < c.size(); ++x) out.insert(c.multihom(x));
  return out;
}

std::string hom_text(const cell_complex& c, cell_id x) { return format_multihom(c.multihom(x), c.target_labels()); }

}  // namespace

TEST_CASE("Hom(C_3, B_3) is the hexagon") {
  auto b3 = boolean(3);
  auto q = chain(3);
  auto c = hom_complex_generic(q, b3, strict_order_maps(q, b3));
  CHECK(c.f_vector() == std::vector<std::size_t>{6, 6});
  CHECK(cells_of(c) == oracle::strict_chain_cells(b3, 3));
  std::set<std::pair<std::string, std::string>> edges;
  for (cell_id x = c.first_of_dim(1); x < c.size(); ++x) {
    auto f = c.facets(x);
    REQUIRE(f.size() == 2);
    edges.emplace(std::min(hom_text(c, f[0]), hom_text(c, f[1])), std::max(hom_text(c, f[0]), hom_text(c, f[1])));
  }
  const std::vector<std::string> cycle{"(∅,1,12,123)", "(∅,1,13,123)", "(∅,3,13,123)",
                                       "(∅,3,23,123)", "(∅,2,23,123)", "(∅,2,12,123)"};
  for (std::size_t i = 0; i < 6; ++i) {
    auto a = cycle[i], b = cycle[(i + 1) % 6];
    CHECK(edges.contains({std::min(a, b), std::max(a, b)}));
  }
  auto edge = c.find_key("(∅,{1,2},12,123)");
  REQUIRE(edge);
  CHECK(c.dim(*edge) == 1);
}

TEST_CASE("generic complexes agree with the top-down filter") {
  auto d = ideal_lattice(disjoint_union({point(), chain(1)}));
  for (std::size_t m = 1; m <= 3; ++m) {
    auto q = chain(m);
    auto c = hom_complex_generic(q, d, strict_order_maps(q, d));
    CHECK(cells_of(c) == oracle::strict_chain_cells(d, m));
  }
  // weak order maps as a non-strict predicate
  auto q = chain(2);
  auto p = product({chain(1), chain(1)});
  hom_predicate weak{[&](std::span<const element_id> f) {
                       for (std::size_t i = 0; i + 1 < f.size(); ++i)
                         if (!p.leq(f[i], f[i + 1])) return false;
                       return true;
                     },
                     false};
  auto c = hom_complex_generic(q, p, weak);
  auto expected = oracle::pairwise_hom_cells(3, p.size(), [&](std::size_t, std::size_t, element_id x, element_id y) {
    return p.leq(x, y);
  });
  CHECK(cells_of(c) == expected);
}

TEST_CASE("all maps give the full product of simplices") {
  auto a = chain(1);
  auto b = chain(1);
  auto c = hom_complex_generic(a, b, all_maps());
  CHECK(c.f_vector() == std::vector<std::size_t>{4, 4, 1});
  auto top = c.find_key("({0,1},{0,1})");
  REQUIRE(top);
  CHECK(c.dim(*top) == 2);
  auto single = hom_complex_generic(chain(1), chain(1), strict_order_maps(chain(1), chain(1)));
  CHECK(single.f_vector() == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(hom_complex_generic(chain(4), boolean(3), all_maps(), 1000), cap_error);
}

TEST_CASE("maximal chain complex of B_4") {
  auto b4 = boolean(4);
  auto c = maximal_chain_complex(b4);
  CHECK(c.f_vector() == std::vector<std::size_t>{24, 36, 6});
  CHECK(cells_of(c) == oracle::strict_chain_cells(b4, 4));
  auto plain = maximal_chain_complex(static_cast<const graded_poset&>(b4));
  CHECK(plain.f_vector() == c.f_vector());
  CHECK_FALSE(plain.has_words());
}

TEST_CASE("the (21)(43)(65) cell of Hom(B_6)") {
  auto c = maximal_chain_complex(boolean(6));
  auto x = c.find(cell_word::parse("(21)(43)(65)"));
  REQUIRE(x);
  CHECK(c.dim(*x) == 3);
  CHECK(hom_text(c, *x) == "(∅,{1,2},12,{123,124},1234,{12345,12346},123456)");
  for (cell_id y = 0; y < c.size(); ++y) CHECK(has_cubical_pattern(c.multihom(y)));
}

TEST_CASE("cell words as ideal chains") {
  chain_product cp(chain_spec({2, 2, 2}));
  auto labels = cp.lattice().labels();
  // r < s, a < b, x < y are the base elements 1 < 2, 3 < 4, 5 < 6
  CHECK(format_multihom(cp.to_multihom(cell_word::parse("123213")), labels) == "(∅,1,13,135,1345,12345,123456)");
  chain_product b5(chain_spec({1, 1, 1, 1, 1}));
  CHECK(format_multihom(b5.to_multihom(cell_word::parse("3(51)42")), b5.lattice().labels()) ==
        "(∅,3,{13,35},135,1345,12345)");
  auto v = cp.to_multihom(cell_word::parse("112233"));
  for (const auto& s : v.sets) CHECK(s.size() == 1);
  CHECK_THROWS_AS(cp.to_multihom(cell_word::parse("1122")), input_error);
  CHECK_THROWS_AS(cp.to_multihom(cell_word::parse("(21)(21)3")), input_error);
}

TEST_CASE("faces release each pair both ways") {
  auto f = faces(cell_word::parse("(64)5(32)(71)"));
  REQUIRE(f.size() == 6);
  CHECK(f[3].cell.to_string() == "(64)532(71)");
  CHECK(f[3].order == release_order::beta);
  CHECK(f[3].pair_index == 2);
  CHECK(f[2].cell.to_string() == "(64)523(71)");
  CHECK(faces(cell_word::parse("1234")).empty());
  auto g = faces(cell_word::parse("(21)"));
  REQUIRE(g.size() == 2);
  CHECK(g[0].cell.to_string() == "12");
  CHECK(g[1].cell.to_string() == "21");
}

TEST_CASE("word enumeration matches the lattice construction") {
  for (auto spec : {chain_spec({1, 1, 1, 1}), chain_spec({1, 2, 2}), chain_spec({2, 3}), chain_spec({1, 1, 3}),
                    chain_spec({1, 1, 1, 2})}) {
    auto words = chain_product_complex(spec);
    chain_product cp(spec);
    auto generic = maximal_chain_complex(cp.lattice());
    CHECK(words.f_vector() == generic.f_vector());
    for (cell_id x = 0; x < generic.size(); ++x) {
      auto w = cp.from_multihom(generic.multihom(x));
      REQUIRE(words.find(w));
      CHECK(words.dim(*words.find(w)) == generic.dim(x));
    }
  }
}

TEST_CASE("cell word round trip for every spec of length 8") {
  // partitions of 8 written nondecreasing
  std::vector<std::vector<int>> specs;
  auto rec = [&](auto&& self, std::vector<int>& cur, int left, int min) -> void {
    if (left == 0) {
      specs.push_back(cur);
      return;
    }
    for (int p = min; p <= left; ++p) {
      cur.push_back(p);
      self(self, cur, left - p, p);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  rec(rec, cur, 8, 1);
  CHECK(specs.size() == 22);
  for (const auto& parts : specs) {
    chain_spec spec(parts);
    chain_product cp(spec);
    auto c = chain_product_complex(spec);
    std::size_t bad = 0;
    for (cell_id x = 0; x < c.size(); ++x) {
      auto h = cp.to_multihom(c.word(x));
      if (!has_cubical_pattern(h) || cp.from_multihom(h) != c.word(x)) ++bad;
    }
    CHECK_MESSAGE(bad == 0, spec.to_string());
  }
}

TEST_CASE("closure under faces") {
  auto c = chain_product_complex(chain_spec({1, 2, 3}));
  for (cell_id x = 0; x < c.size(); ++x) {
    auto f = c.facets(x);
    CHECK(f.size() == static_cast<std::size_t>(2 * c.dim(x)));
    for (cell_id y : f) CHECK(c.dim(y) == c.dim(x) - 1);
    // every face produced by releasing is present, in facet order
    auto fs = faces(c.word(x));
    REQUIRE(fs.size() == f.size());
    for (std::size_t k = 0; k < fs.size(); ++k) CHECK(c.word(f[k]) == fs[k].cell);
  }
  CHECK(chain_product_complex(chain_spec({5})).f_vector() == std::vector<std::size_t>{1});
}
