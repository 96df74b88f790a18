#include <doctest.h>

#include <random>

#include "homchains/chain.hpp"
#include "homchains/morse.hpp"
#include "oracles.hpp"

using namespace homchains;

namespace {

finite_poset point() { return finite_poset(1, std::vector<cover_pair>{}); }

distributive_lattice boolean(int n) {
  return ideal_lattice(disjoint_union(std::vector<finite_poset>(static_cast<std::size_t>(n), point())));
}

std::vector<std::vector<std::int64_t>> random_matrix(std::mt19937& rng, std::size_t m, std::size_t n, int lo, int hi,
                                                     double density) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::bernoulli_distribution keep(density);
  std::vector<std::vector<std::int64_t>> a(m, std::vector<std::int64_t>(n, 0));
  for (auto& row : a)
    for (auto& v : row)
      if (keep(rng)) v = val(rng);
  return a;
}

// Every other pair of the matching; a subset of an acyclic matching is acyclic.
morse_matching thinned(const cell_complex& c, const morse_matching& m) {
  std::vector<std::pair<cell_id, cell_id>> pairs;
  bool take = true;
  for (cell_id x = 0; x < c.size(); ++x)
    if (m.matched(x) && c.dim(m.partner[x]) == c.dim(x) + 1) {
      if (take) pairs.emplace_back(x, m.partner[x]);
      take = !take;
    }
  return make_matching(c, pairs);
}

}  // namespace

TEST_CASE("incidence of the worked example") {
  chain_product cp(chain_spec({1, 1, 1, 1, 1, 1, 1}));
  auto eta = cell_word::parse("(64)5(32)(71)");
  auto h = cp.to_multihom(eta);
  auto beta = cp.to_multihom(eta.released(4, release_order::beta));
  auto alpha = cp.to_multihom(eta.released(4, release_order::alpha));
  CHECK(incidence(beta, h) == -1);
  CHECK(incidence(alpha, h) == 1);
  CHECK(pair_incidence(eta, 2, release_order::beta) == -1);
  CHECK(pair_incidence(eta, 2, release_order::alpha) == 1);
  // vertices are never facets of each other
  CHECK(incidence(cp.to_multihom(cell_word::parse("1234567")), cp.to_multihom(cell_word::parse("2134567"))) == 0);
  CHECK(incidence(h, h) == 0);
  CHECK_THROWS_AS(pair_incidence(eta, 4, release_order::alpha), input_error);
  CHECK_THROWS_AS(pair_incidence(eta, 0, release_order::alpha), input_error);
}

TEST_CASE("the pair formula agrees with the general formula on every cell") {
  for (auto spec : {chain_spec({1, 1, 1, 1, 1}), chain_spec({1, 2, 3}), chain_spec({2, 2, 2})}) {
    chain_product cp(spec);
    auto c = chain_product_complex(spec);
    for (cell_id x = 0; x < c.size(); ++x) {
      const auto& w = c.word(x);
      auto h = cp.to_multihom(w);
      for (const auto& f : faces(w))
        CHECK(pair_incidence(w, f.pair_index, f.order) == incidence(cp.to_multihom(f.cell), h));
    }
  }
}

TEST_CASE("boundary matrices") {
  auto hex = boundary_matrices(chain_product_complex(chain_spec({1, 1, 1})));
  REQUIRE(hex.boundary.size() == 2);
  CHECK(hex.boundary[1].rows == 6);
  CHECK(hex.boundary[1].cols == 6);
  for (const auto& col : hex.boundary[1].columns) {
    std::int64_t sum = 0;
    for (auto [i, v] : col) sum += v;
    CHECK(sum == 0);
  }
  auto b4 = boundary_matrices(chain_product_complex(chain_spec({1, 1, 1, 1})));
  CHECK(b4.boundary[1].rows == 24);
  CHECK(b4.boundary[1].cols == 36);
  CHECK(b4.boundary[2].rows == 36);
  CHECK(b4.boundary[2].cols == 6);
  for (const auto& m : b4.boundary)
    for (const auto& col : m.columns)
      for (auto [i, v] : col) CHECK((v == 1 || v == -1));
  auto point_complex = boundary_matrices(chain_product_complex(chain_spec({3})));
  CHECK(point_complex.cells == std::vector<std::size_t>{1});
}

TEST_CASE("boundary of a non-complex is rejected") {
  integer_chain_complex bad;
  bad.cells = {1, 1, 1};
  bad.boundary.resize(3);
  bad.boundary[1] = sparse_matrix::from_dense({{1}});
  bad.boundary[2] = sparse_matrix::from_dense({{1}});
  CHECK_THROWS_AS(check_boundary_squares_to_zero(bad), invariant_error);
}

TEST_CASE("coordinate list export") {
  std::ostringstream out;
  write_coordinate_list(out, sparse_matrix::from_dense({{0, 1}, {-1, 0}}));
  CHECK(out.str() == "2 2 2\n1 0 -1\n0 1 1\n");
  CHECK_THROWS_AS(sparse_matrix::from_dense({{1, 2}, {3}}), input_error);
}

TEST_CASE("smith normal form small cases") {
  auto id = smith_normal_form(std::vector<std::vector<std::int64_t>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(id.rank == 3);
  CHECK(id.factors == std::vector<big_int>{1, 1, 1});
  auto two = smith_normal_form(std::vector<std::vector<std::int64_t>>{{2, 0}, {0, 0}});
  CHECK(two.rank == 1);
  CHECK(two.factors == std::vector<big_int>{2});
  auto mixed = smith_normal_form(std::vector<std::vector<std::int64_t>>{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(mixed.factors == std::vector<big_int>{2, 6, 12});
  auto empty = smith_normal_form(sparse_matrix{});
  CHECK(empty.rank == 0);
}

TEST_CASE("smith normal form against determinantal divisors") {
  std::mt19937 rng(20261014);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4;
    auto a = random_matrix(rng, m, n, -6, 6, 0.6);
    auto snf = smith_normal_form(a);
    auto expected = oracle::invariant_factors_by_minors(a);
    CHECK(snf.factors == expected);
    CHECK(snf.rank == expected.size());
  }
}

TEST_CASE("smith normal form with entries that overflow 64 bits") {
  const std::int64_t big = 3'000'000'007;
  std::vector<std::vector<std::int64_t>> a{{big, big - 1, 7}, {big - 5, big, 3}, {11, big, big}};
  auto snf = smith_normal_form(a);
  CHECK(snf.factors == oracle::invariant_factors_by_minors(a));
}

TEST_CASE("smith rank against rational and modular rank on larger sparse matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t m = 20 + rng() % 30, n = 20 + rng() % 30;
    auto a = random_matrix(rng, m, n, -1, 1, 0.1);
    auto snf = smith_normal_form(a);
    CHECK(snf.rank == oracle::rational_rank(oracle::to_big(a)));
    CHECK(oracle::rank_mod(a, 1'000'003) == snf.rank);
  }
}

TEST_CASE("homology of small complexes") {
  auto hex = homology(chain_product_complex(chain_spec({1, 1, 1})));
  CHECK(hex.betti == std::vector<std::size_t>{1, 1});
  CHECK(hex.torsion_free());
  CHECK(hex.euler == 0);
  auto b4 = homology(chain_product_complex(chain_spec({1, 1, 1, 1})));
  CHECK(b4.betti == std::vector<std::size_t>{1, 7, 0});
  CHECK(b4.euler == -6);
  for (int r = 1; r <= 3; ++r)
    for (int s = r; s <= 3; ++s) {
      auto h = homology(chain_product_complex(chain_spec({r, s})));
      CHECK(h.betti[0] == 1);
      for (std::size_t d = 1; d < h.betti.size(); ++d) CHECK(h.betti[d] == 0);
    }
  // a Moore space: one cell in each dimension, d2 = 2
  integer_chain_complex moore;
  moore.cells = {1, 1, 1};
  moore.boundary.resize(3);
  moore.boundary[1] = sparse_matrix::from_dense({{0}});
  moore.boundary[2] = sparse_matrix::from_dense({{2}});
  auto h = homology(moore);
  CHECK(h.betti == std::vector<std::size_t>{1, 0, 0});
  REQUIRE(h.torsion[1].size() == 1);
  CHECK(h.torsion[1][0] == 2);
  CHECK_FALSE(h.torsion_free());
}

TEST_CASE("homology agrees with ranks from an independent elimination") {
  for (auto spec : {chain_spec({1, 1, 1, 1, 1}), chain_spec({1, 2, 2})}) {
    auto c = chain_product_complex(spec);
    auto cc = boundary_matrices(c);
    auto h = homology(cc);
    std::vector<std::size_t> rank(cc.cells.size() + 1, 0);
    for (std::size_t d = 1; d < cc.cells.size(); ++d) rank[d] = oracle::rational_rank(oracle::to_big(cc.boundary[d].to_dense()));
    for (std::size_t d = 0; d < cc.cells.size(); ++d) CHECK(h.betti[d] == cc.cells[d] - rank[d] - rank[d + 1]);
  }
}

TEST_CASE("Morse incidences of Hom(B_4) vanish") {
  chain_spec spec({1, 1, 1, 1});
  auto c = chain_product_complex(spec);
  auto m = match_product_of_chains(c, spec);
  incidence_table signs(c);
  auto crit = critical_cells(c, m);
  REQUIRE(crit.size() == 3);
  CHECK(crit[0].size() == 1);
  CHECK(crit[1].size() == 7);
  std::size_t connected = 0;
  for (cell_id sigma : crit[1])
    for (cell_id tau : crit[0]) {
      auto r = morse_incidence(c, m, signs, sigma, tau);
      CHECK(r.value == 0);
      CHECK(r.census.ok());
      CHECK(r.census.paths % 2 == 0);
      connected += r.census.paths > 0;
    }
  CHECK(connected > 0);
  CHECK_THROWS_AS(morse_incidence(c, m, signs, crit[1][0], crit[1][1]), input_error);
  cell_id matched = 0;
  while (!m.matched(matched)) ++matched;
  CHECK_THROWS_AS(morse_incidence(c, m, signs, crit[1][0], matched), input_error);
}

TEST_CASE("a critical pair without alternating paths") {
  chain_spec spec({1, 1, 2});
  auto c = chain_product_complex(spec);
  auto m = match_product_of_chains(c, spec);
  incidence_table signs(c);
  auto crit = critical_cells(c, m);
  std::size_t empty = 0;
  for (cell_id sigma : crit[1]) {
    auto r = morse_incidence(c, m, signs, sigma, crit[0][0]);
    CHECK(r.value == 0);
    if (r.census.paths == 0) {
      ++empty;
      CHECK(r.census.ok());
    }
  }
  auto b6 = chain_product_complex(chain_spec({1, 1, 1, 1, 1, 1}));
  auto m6 = match_product_of_chains(b6, chain_spec({1, 1, 1, 1, 1, 1}));
  incidence_table s6(b6);
  auto crit6 = critical_cells(b6, m6);
  for (cell_id sigma : crit6[2])
    for (cell_id tau : crit6[1]) {
      auto r = morse_incidence(b6, m6, s6, sigma, tau);
      CHECK(r.value == 0);
      if (r.census.paths == 0) ++empty;
    }
  CHECK(empty > 0);
}

TEST_CASE("the involution on the worked alternating path") {
  chain_spec spec({1, 1, 1, 1, 1, 1, 1, 1, 1});
  std::vector<cell_word> c;
  for (auto s : {"7(63)9(81)5(42)", "7(63)9(81)542", "7(63)9(81)(54)2", "7(63)918(54)2", "7(63)(91)8(54)2",
                 "7(63)198(54)2", "7(63)1(98)(54)2", "7(63)189(54)2"})
    c.push_back(cell_word::parse(s));
  auto partner = [&](const cell_word& w) { return trace_fibers(spec, w).partner; };
  // the path really alternates with respect to the matching
  for (std::size_t i = 1; i + 1 < c.size(); i += 2) CHECK(partner(c[i]) == c[i + 1]);
  CHECK_FALSE(partner(c.front()));
  CHECK_FALSE(partner(c.back()));
  std::vector<std::string> expected{"7(63)9(81)5(42)", "7(63)9(81)542", "7(63)9(81)(54)2", "7(63)981(54)2",
                                    "7(63)(98)1(54)2", "7(63)891(54)2", "7(63)8(91)(54)2", "7(63)819(54)2",
                                    "7(63)(81)9(54)2", "7(63)189(54)2"};
  auto image = involution_partner(c, partner);
  std::vector<std::string> text;
  for (const auto& w : image) text.push_back(w.to_string());
  CHECK(text == expected);
  CHECK((image.size() - 2) / 2 == 4);
  CHECK(involution_partner(image, partner) == c);
}

TEST_CASE("Morse complex entries equal path sums, and homology is preserved") {
  bool any_nonzero = false;
  for (auto spec : {chain_spec({1, 1, 1, 1}), chain_spec({1, 1, 2}), chain_spec({1, 1, 1, 1, 1}), chain_spec({2, 3})}) {
    auto c = chain_product_complex(spec);
    auto full = match_product_of_chains(c, spec);
    auto m = thinned(c, full);
    auto cert = validate_acyclic(m, c);
    auto morse = morse_complex(c, m, cert);
    auto crit = critical_cells(c, m);
    incidence_table signs(c);
    for (std::size_t d = 1; d < crit.size(); ++d) {
      auto dense = morse.boundary[d].to_dense();
      for (std::size_t j = 0; j < crit[d].size(); ++j)
        for (std::size_t i = 0; i < crit[d - 1].size(); ++i) {
          std::int64_t sum = 0;
          for (const auto& [p, w] : alternating_paths(c, m, signs, crit[d][j], crit[d - 1][i])) sum += w;
          CHECK(dense[i][j] == sum);
          any_nonzero = any_nonzero || sum != 0;
        }
    }
    CHECK(homology(morse) == homology(c));
  }
  CHECK(any_nonzero);
}

TEST_CASE("Morse complex needs a matching certificate for the same complex") {
  auto c = chain_product_complex(chain_spec({1, 1, 1}));
  auto m = make_matching(c);
  acyclicity_certificate wrong;
  CHECK_THROWS_AS(morse_complex(c, m, wrong), input_error);
  auto morse = morse_complex(c, m, validate_acyclic(m, c));
  CHECK(morse.cells == std::vector<std::size_t>{6, 6});
}
