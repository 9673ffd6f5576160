// test_wick.cpp — pairings, quotients, classification, expectations.

#include <doctest.h>

#include <nlohmann/json.hpp>
#include <random>

#include <pgc/eval.hpp>
#include <pgc/wick.hpp>

#include "oracles.hpp"

using namespace pgc;

namespace {

// Two parallel same-label edges u -> v: the graph of Tr(W W^T).
ProductGraph tr_wwt(int n, double sigma) {
  return build_graph({{"u", n, CellInput::ones()}, {"v", n, CellInput::ones()}},
                     {{"e1", "u", "v", CellInput::random(1, sigma)},
                      {"e2", "u", "v", CellInput::random(1, sigma)}});
}

// Alternating 4-cycle of one label: the graph of Tr((W W^T)^2).
ProductGraph tr_wwt2(int n, double sigma) {
  return build_graph({{"a", n, CellInput::ones()},
                      {"b", n, CellInput::ones()},
                      {"c", n, CellInput::ones()},
                      {"d", n, CellInput::ones()}},
                     {{"e1", "a", "b", CellInput::random(1, sigma)},
                      {"e2", "c", "b", CellInput::random(1, sigma)},
                      {"e3", "c", "d", CellInput::random(1, sigma)},
                      {"e4", "a", "d", CellInput::random(1, sigma)}});
}

Eigen::VectorXd rand_vec(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

Eigen::MatrixXd rand_mat(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

// Random product graph with controlled random-edge content.
ProductGraph random_graph(std::mt19937& rng, PairingMode mode, bool even_labels) {
  std::uniform_int_distribution<int> nv_d(2, 6), dim_d(1, 3), lab_d(1, 3);
  int nv = nv_d(rng);
  std::vector<int> dims;
  std::vector<VertexSpec> vs;
  for (int i = 0; i < nv; ++i) {
    int d = dim_d(rng);
    dims.push_back(d);
    vs.push_back({"v" + std::to_string(i), d,
                  i % 2 ? CellInput::ones() : CellInput::dense(rand_vec(rng, d))});
  }
  std::uniform_int_distribution<int> pick(0, nv - 1);
  std::vector<EdgeSpec> es;
  int eid = 0;
  std::uniform_int_distribution<int> nd_d(0, 2);
  int nd = nd_d(rng);
  for (int i = 0; i < nd; ++i) {
    int h = pick(rng), t = pick(rng);
    es.push_back({"d" + std::to_string(eid++), "v" + std::to_string(h),
                  "v" + std::to_string(t), CellInput::dense(rand_mat(rng, dims[h], dims[t]))});
  }
  // Random edges: per label a count, even when requested; shapes per label
  // must agree, so fix one (head-dim, tail-dim) signature per label.
  std::uniform_int_distribution<int> cnt_d(1, 3);
  int labels = lab_d(rng);
  std::uniform_real_distribution<double> sig_d(0.5, 1.5);
  for (int l = 1; l <= labels; ++l) {
    int cnt = cnt_d(rng);
    if (even_labels) cnt *= 2;
    double sigma = sig_d(rng);
    int h0 = pick(rng), t0 = pick(rng);
    for (int k = 0; k < cnt; ++k) {
      int h = h0, t = t0;
      for (int tries = 0; tries < 20; ++tries) {
        h = pick(rng);
        t = pick(rng);
        if (dims[h] == dims[h0] && dims[t] == dims[t0]) break;
        h = h0;
        t = t0;
      }
      int lab = l;
      if (mode == PairingMode::Complex) lab = (k % 2 == 0) ? l : -l;
      es.push_back({"r" + std::to_string(eid++), "v" + std::to_string(h),
                    "v" + std::to_string(t), CellInput::random(lab, sigma)});
    }
  }
  return build_graph(vs, es);
}

long long double_factorial(int n) {
  long long acc = 1;
  for (int i = n; i >= 1; i -= 2) acc *= i;
  return acc;
}

}  // namespace

TEST_SUITE("wick") {
  TEST_CASE("pairing counts follow the double factorial") {
    CHECK(admissible_pairings(tr_wwt(2, 1.0)).size() == 1);

    auto g4 = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                          {{"e1", "u", "v", CellInput::random(1)},
                           {"e2", "u", "v", CellInput::random(1)},
                           {"e3", "u", "v", CellInput::random(1)},
                           {"e4", "u", "v", CellInput::random(1)}});
    CHECK(admissible_pairings(g4).size() == 3);

    auto g6 = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                          {{"e1", "u", "v", CellInput::random(1)},
                           {"e2", "u", "v", CellInput::random(1)},
                           {"e3", "u", "v", CellInput::random(1)},
                           {"e4", "u", "v", CellInput::random(1)},
                           {"e5", "u", "v", CellInput::random(1)},
                           {"e6", "u", "v", CellInput::random(1)}});
    CHECK(admissible_pairings(g6).size() == double_factorial(5));
  }

  TEST_CASE("labels never pair across classes") {
    auto g = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                         {{"a1", "u", "v", CellInput::random(1)},
                          {"a2", "u", "v", CellInput::random(1)},
                          {"b1", "u", "v", CellInput::random(2)},
                          {"b2", "u", "v", CellInput::random(2)}});
    auto ps = admissible_pairings(g);
    REQUIRE(ps.size() == 1);
    for (const auto& pr : ps[0].pairs) {
      int l1 = std::abs(g.edge(pr.first).input.label);
      int l2 = std::abs(g.edge(pr.second).input.label);
      CHECK(l1 == l2);
    }
  }

  TEST_CASE("odd label classes yield no pairings and zero expectation") {
    auto g = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                         {{"e1", "u", "v", CellInput::random(1)},
                          {"e2", "u", "v", CellInput::random(1)},
                          {"e3", "u", "v", CellInput::random(1)}});
    CHECK(admissible_pairings(g).empty());
    CHECK(wick_expectation(g) == 0.0);
    CHECK(isserlis_oracle(g) == doctest::Approx(0.0));
  }

  TEST_CASE("complex pairings match plus with minus labels") {
    auto g = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                         {{"p1", "u", "v", CellInput::random(1)},
                          {"p2", "u", "v", CellInput::random(1)},
                          {"m1", "u", "v", CellInput::random(-1)},
                          {"m2", "u", "v", CellInput::random(-1)}});
    auto ps = admissible_pairings(g, PairingMode::Complex);
    CHECK(ps.size() == 2);  // n! bijections between the two charge classes
    for (const auto& p : ps)
      for (const auto& pr : p.pairs)
        CHECK(g.edge(pr.first).input.label == -g.edge(pr.second).input.label);
    // Same four edges in real mode alias |label| and admit 3 pairings.
    CHECK(admissible_pairings(g, PairingMode::Real).size() == 3);
  }

  TEST_CASE("quotient of the parallel-pair graph") {
    auto g = tr_wwt(3, 0.5);
    auto ps = admissible_pairings(g);
    REQUIRE(ps.size() == 1);
    auto q = quotient(g, ps[0]);
    CHECK(q.graph.vertices().size() == 2);
    CHECK(q.graph.edges().size() == 1);
    CHECK(q.graph.edges()[0].input.kind == InputKind::AllOnesMatrix);
    CHECK(q.graph.edges()[0].input.weight == doctest::Approx(0.25));
    CHECK(graph_value(q.graph) == doctest::Approx(0.25 * 9.0));
    CHECK(q.edge_classes.size() == 2);
  }

  TEST_CASE("merged basis roots contribute a Kronecker delta") {
    for (int i = 1; i <= 2; ++i)
      for (int k = 1; k <= 2; ++k) {
        auto g = build_graph({{"r1", 2, CellInput::basis(i)},
                              {"r2", 2, CellInput::basis(k)},
                              {"m1", 3, CellInput::ones()},
                              {"m2", 3, CellInput::ones()}},
                             {{"f1", "r1", "m1", CellInput::random(1, 0.7)},
                              {"f2", "r2", "m2", CellInput::random(1, 0.7)}});
        double expect = (i == k) ? 0.49 * 3.0 : 0.0;
        CHECK(wick_expectation(g) == doctest::Approx(expect));
      }
  }

  TEST_CASE("merged leaves carry the Hadamard product of their inputs") {
    std::mt19937 rng(31);
    Eigen::VectorXd xi = rand_vec(rng, 3), xj = rand_vec(rng, 3);
    auto g = build_graph({{"r1", 2, CellInput::ones()},
                          {"r2", 2, CellInput::ones()},
                          {"l1", 3, CellInput::dense(xi)},
                          {"l2", 3, CellInput::dense(xj)}},
                         {{"f1", "r1", "l1", CellInput::random(1, 0.5)},
                          {"f2", "r2", "l2", CellInput::random(1, 0.5)}});
    // sigma^2 <1, x_i o x_j over leaf class> * N over the merged root class.
    double expect = 0.25 * xi.cwiseProduct(xj).sum() * 2.0;
    CHECK(wick_expectation(g) == doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("classification of the parallel pair and its double") {
    auto g = tr_wwt(2, 1.0);
    auto ps = admissible_pairings(g);
    REQUIRE(ps.size() == 1);
    auto cls = classify(g, ps[0]);
    CHECK(cls.fully_atomic);
    CHECK(cls.kind == PairingClassKind::FullyAtomic);
    CHECK_FALSE(cls.atom_free);

    FluctuationStats fs = fluctuation_stats(g);
    CHECK(fs.count_A == 1);
    CHECK(fs.count_B_pair == 0);  // cross pairings keep a parallel pair (a cycle)
  }

  TEST_CASE("single-edge components pair across and form a bi-atomic tree") {
    auto g = build_graph({{"x", 3, CellInput::ones()}, {"y", 3, CellInput::ones()}},
                         {{"e", "x", "y", CellInput::random(1)}});
    CHECK(admissible_pairings(g).empty());
    FluctuationStats fs = fluctuation_stats(g);
    CHECK(fs.count_A == 0);
    CHECK(fs.count_B_pair == 1);
  }

  TEST_CASE("loop graphs quotient to a loop, never a tree") {
    auto g = build_graph({{"u", 3, CellInput::ones()}, {"v", 3, CellInput::ones()}},
                         {{"e1", "u", "v", CellInput::random(1)},
                          {"e2", "v", "u", CellInput::random(1)}});
    // Tr(W^2): the single pairing merges u with v into one vertex with a loop.
    auto ps = admissible_pairings(g);
    REQUIRE(ps.size() == 1);
    auto q = quotient(g, ps[0]);
    CHECK(q.graph.vertices().size() == 1);
    CHECK(q.graph.edges().size() == 1);
    auto cls = classify(g, ps[0]);
    CHECK_FALSE(cls.fully_atomic);
    CHECK(cls.atom_free);
    CHECK(wick_expectation(g) == doctest::Approx(3.0));  // sigma^2 N
    FluctuationStats fs = fluctuation_stats(g);
    CHECK(fs.count_A == 0);
  }

  TEST_CASE("graph stats") {
    auto g = build_graph({{"u", 3, CellInput::ones()},
                          {"v", 3, CellInput::ones()},
                          {"w", 2, CellInput::ones()}},
                         {{"e1", "u", "v", CellInput::random(1, 0.5)},
                          {"e2", "u", "v", CellInput::random(1, 0.5)},
                          {"d1", "u", "v", CellInput::identity()}});
    GraphStats st = graph_stats(g);
    CHECK(st.c == 2);  // w is isolated
    CHECK(st.n_random == 2);
    CHECK(st.e_check == 2);  // one merged random edge + one deterministic
    CHECK(st.sigma_G == doctest::Approx(0.25));
    CHECK(st.label_multiset.at(1) == 2);
  }

  TEST_CASE("expectation of the parallel pair is sigma^2 N^2") {
    for (int n : {2, 3, 4}) {
      auto g = tr_wwt(n, 0.8);
      double expect = 0.64 * n * n;
      CHECK(wick_expectation(g) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(isserlis_oracle(g) == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  TEST_CASE("expectation of the alternating 4-cycle is sigma^4 (2N^3 + N^2)") {
    for (int n : {2, 3}) {
      auto g = tr_wwt2(n, 1.0);
      double expect = 2.0 * n * n * n + n * n;
      CHECK(wick_expectation(g) == doctest::Approx(expect).epsilon(1e-12));
      CHECK(isserlis_oracle(g) == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(isserlis_oracle(tr_wwt2(2, 1.0)) == doctest::Approx(20.0));
    CHECK(isserlis_oracle(tr_wwt(2, 1.0)) == doctest::Approx(4.0));
  }

  TEST_CASE("deterministic graphs pass through the oracle") {
    std::mt19937 rng(32);
    auto g = build_graph({{"u", 3, CellInput::dense(rand_vec(rng, 3))},
                          {"v", 2, CellInput::dense(rand_vec(rng, 2))}},
                         {{"e", "u", "v", CellInput::dense(rand_mat(rng, 3, 2))}});
    CHECK(isserlis_oracle(g) == doctest::Approx(graph_value(g)).epsilon(1e-12));
    CHECK(wick_expectation(g) == doctest::Approx(graph_value(g)).epsilon(1e-12));
  }

  TEST_CASE("wick expectation matches the entrywise oracle on random graphs") {
    std::mt19937 rng(33);
    int nontrivial = 0;
    for (int rep = 0; rep < 25; ++rep) {
      auto g = random_graph(rng, PairingMode::Real, rep % 5 != 4);
      double w = wick_expectation(g);
      double o = isserlis_oracle(g);
      double scale = std::max({1.0, std::abs(w), std::abs(o)});
      CHECK(std::abs(w - o) / scale < 1e-9);
      if (w != 0.0) ++nontrivial;
      for (const auto& phi : admissible_pairings(g)) {
        auto q = quotient(g, phi);
        CHECK(static_cast<int>(q.graph.edges().size()) == graph_stats(g).e_check);
      }
    }
    CHECK(nontrivial > 5);
  }

  TEST_CASE("complex mode matches the oracle too") {
    std::mt19937 rng(34);
    int nontrivial = 0;
    for (int rep = 0; rep < 15; ++rep) {
      auto g = random_graph(rng, PairingMode::Complex, rep % 5 != 4);
      Cplx w = wick_expectation_c(g, PairingMode::Complex);
      Cplx o = isserlis_oracle_c(g, PairingMode::Complex);
      double scale = std::max({1.0, std::abs(w), std::abs(o)});
      CHECK(std::abs(w - o) / scale < 1e-9);
      if (std::abs(w) > 0) ++nontrivial;
    }
    CHECK(nontrivial > 3);
  }

  TEST_CASE("centered expectation without atoms equals the plain expectation") {
    auto g = build_graph({{"u", 3, CellInput::ones()}, {"v", 3, CellInput::ones()}},
                         {{"e1", "u", "v", CellInput::random(1)},
                          {"e2", "v", "u", CellInput::random(1)}});
    CHECK(centered_product_expectation({g}) ==
          doctest::Approx(wick_expectation(g)).epsilon(1e-12));
  }

  TEST_CASE("centered second moment of the parallel pair is 2 sigma^4 N^2") {
    double sigma = 0.9;
    for (int n : {2, 3}) {
      auto g1 = tr_wwt(n, sigma);
      auto g2 = build_graph(
          {{"p", n, CellInput::ones()}, {"q", n, CellInput::ones()}},
          {{"f1", "p", "q", CellInput::random(1, sigma)},
           {"f2", "p", "q", CellInput::random(1, sigma)}});
      double s4 = sigma * sigma * sigma * sigma;
      CHECK(centered_product_expectation({g1, g2}) ==
            doctest::Approx(2.0 * s4 * n * n).epsilon(1e-12));
    }
  }

  TEST_CASE("centered first moment vanishes when every pairing is atomic") {
    auto g = tr_wwt(3, 1.0);
    CHECK(centered_product_expectation({g}) == doctest::Approx(0.0));
  }

  TEST_CASE("leading order of the parallel pair") {
    auto g = tr_wwt(4, 1.0);
    LeadingOrder lo = leading_order(g);
    CHECK(lo.exponent_max == 2);  // e_check + c = 1 + 1
    CHECK(lo.count_A == 1);
    CHECK(lo.exponents == std::vector<int>{2});
    CHECK(lo.two_exponent_max == 4);
    CHECK(lo.two_exponent_atomfree_bound == 3);
    CHECK(lo.count_B == 0);
  }

  TEST_CASE("pairing exponents reproduce the oracle polynomial in N") {
    // Alternating hexagon Tr((W W^T)^3): quotient values are N^{exponent},
    // so summing N^{e_phi} over pairings must reproduce the exact
    // expectation at every N. Planar pairings are the atomic ones.
    auto hexagon = [](int n) {
      std::vector<VertexSpec> vs;
      std::vector<EdgeSpec> es;
      for (int i = 0; i < 6; ++i)
        vs.push_back({"v" + std::to_string(i), n, CellInput::ones()});
      for (int i = 0; i < 6; ++i) {
        int h = (i % 2 == 0) ? i : (i + 1) % 6;
        int t = (i % 2 == 0) ? i + 1 : i;
        es.push_back({"e" + std::to_string(i), "v" + std::to_string(h),
                      "v" + std::to_string(t), CellInput::random(1)});
      }
      return build_graph(vs, es);
    };
    LeadingOrder lo = leading_order(hexagon(2));
    CHECK(lo.exponents.size() == 15);
    for (int n : {2, 3, 4}) {
      double sum = 0;
      for (int e : lo.exponents) sum += std::pow(static_cast<double>(n), e);
      CHECK(isserlis_oracle(hexagon(n)) == doctest::Approx(sum).epsilon(1e-12));
      CHECK(wick_expectation(hexagon(n)) == doctest::Approx(sum).epsilon(1e-12));
    }
    CHECK(lo.exponent_max == 4);  // e_check + c = 3 + 1
    CHECK(lo.count_A == 5);       // Catalan(3) planar pairings

    // Complex word cycle Tr(W1 W2 W3 W3* W2* W1*): adjoint edges run
    // reversed; the unique admissible pairing quotients to a path.
    auto word = [](int n) {
      std::vector<VertexSpec> vs;
      std::vector<EdgeSpec> es;
      for (int i = 0; i < 6; ++i)
        vs.push_back({"v" + std::to_string(i), n, CellInput::ones()});
      for (int i = 0; i < 3; ++i)
        es.push_back({"e" + std::to_string(i), "v" + std::to_string(i),
                      "v" + std::to_string(i + 1), CellInput::random(i + 1)});
      for (int i = 3; i < 6; ++i)
        es.push_back({"e" + std::to_string(i), "v" + std::to_string((i + 1) % 6),
                      "v" + std::to_string(i), CellInput::random(-(6 - i))});
      return build_graph(vs, es);
    };
    LeadingOrder lw = leading_order(word(2), PairingMode::Complex);
    REQUIRE(lw.exponents.size() == 1);
    CHECK(lw.exponents[0] == 4);
    CHECK(lw.count_A == 1);
    for (int n : {2, 3}) {
      CHECK(isserlis_oracle_c(word(n), PairingMode::Complex).real() ==
            doctest::Approx(std::pow(double(n), 4)).epsilon(1e-12));
    }
  }

  TEST_CASE("identity edges tie index classes together") {
    auto g = build_graph({{"u", 3, CellInput::ones()},
                          {"v", 3, CellInput::ones()},
                          {"u2", 3, CellInput::ones()},
                          {"v2", 3, CellInput::ones()}},
                         {{"e", "u", "v", CellInput::random(1)},
                          {"e2", "u2", "v2", CellInput::random(1)},
                          {"i", "v", "v2", CellInput::identity()}});
    LeadingOrder lo = leading_order(g);
    REQUIRE(lo.exponents.size() == 1);
    CHECK(lo.exponents[0] == 2);  // classes {u,u2} and {v,v2} tied by the delta
    CHECK(wick_expectation(g) == doctest::Approx(9.0));
  }

  TEST_CASE("assumption violations are reported") {
    std::mt19937 rng(35);
    auto g1 = build_graph({{"u", 2, CellInput::dense(rand_vec(rng, 2))},
                           {"v", 2, CellInput::ones()}},
                          {{"e1", "u", "v", CellInput::random(1)},
                           {"e2", "u", "v", CellInput::random(1)}});
    CHECK_THROWS_AS(leading_order(g1), Error);
    auto g2 = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                          {{"e1", "u", "v", CellInput::random(1)},
                           {"e2", "u", "v", CellInput::random(1)},
                           {"d", "u", "v", CellInput::dense(rand_mat(rng, 2, 2))}});
    CHECK_THROWS_AS(leading_order(g2), Error);
  }

  TEST_CASE("atom-free exponent bound with bi-atomic equality") {
    // Doubled single-edge path: one pairing, bi-atomic, exponent = e + c/2.
    auto g = build_graph({{"x", 2, CellInput::ones()},
                          {"y", 2, CellInput::ones()},
                          {"x2", 2, CellInput::ones()},
                          {"y2", 2, CellInput::ones()}},
                         {{"e", "x", "y", CellInput::random(1)},
                          {"e2", "x2", "y2", CellInput::random(1)}});
    LeadingOrder lo = leading_order(g);
    auto ps = admissible_pairings(g);
    REQUIRE(ps.size() == 1);
    auto cls = classify(g, ps[0]);
    CHECK(cls.bi_atomic);
    CHECK(cls.atom_free);
    CHECK(2 * lo.exponents[0] == lo.two_exponent_atomfree_bound);  // 2e + c = 4
    CHECK(lo.count_B == 1);
    CHECK(lo.exponent_sub == 2);
  }

  TEST_CASE("atomic tree pairings pair equidistant edges only") {
    std::mt19937 rng(36);
    for (int rep = 0; rep < 12; ++rep) {
      // Random rooted tree of depth <= 3, one label everywhere.
      std::vector<VertexSpec> vs{{"n0", 2, CellInput::ones()}};
      std::vector<EdgeSpec> es;
      std::vector<int> depth{0};
      std::uniform_int_distribution<int> kids(0, 2);
      std::vector<int> frontier{0};
      int next = 1;
      for (int d = 1; d <= 3; ++d) {
        std::vector<int> next_frontier;
        for (int p : frontier) {
          int k = d == 1 ? 1 + kids(rng) % 2 : kids(rng);
          for (int c = 0; c < k; ++c) {
            std::string id = "n" + std::to_string(next);
            vs.push_back({id, 2, CellInput::ones()});
            depth.push_back(d);
            es.push_back({"e" + std::to_string(next), "n" + std::to_string(p), id,
                          CellInput::random(1)});
            next_frontier.push_back(next);
            ++next;
          }
        }
        frontier = next_frontier;
      }
      if (es.empty()) continue;
      auto g = build_graph(vs, es);
      for (const auto& phi : admissible_pairings(g)) {
        if (!classify(g, phi).fully_atomic) continue;
        for (const auto& pr : phi.pairs) {
          int d1 = depth[std::stoi(g.edge(pr.first).tail.substr(1))];
          int d2 = depth[std::stoi(g.edge(pr.second).tail.substr(1))];
          CHECK(d1 == d2);
        }
      }
    }
    // A star pairs its two depth-1 edges into a tree: fully atomic.
    auto star = build_graph({{"r", 2, CellInput::ones()},
                             {"a", 2, CellInput::ones()},
                             {"b", 2, CellInput::ones()}},
                            {{"ea", "r", "a", CellInput::random(1)},
                             {"eb", "r", "b", CellInput::random(1)}});
    auto ps = admissible_pairings(star);
    REQUIRE(ps.size() == 1);
    CHECK(classify(star, ps[0]).fully_atomic);
    // A two-edge path pairs non-equidistant edges: quotient is a loop.
    auto path = build_graph({{"r", 2, CellInput::ones()},
                             {"a", 2, CellInput::ones()},
                             {"b", 2, CellInput::ones()}},
                            {{"e1", "r", "a", CellInput::random(1)},
                             {"e2", "a", "b", CellInput::random(1)}});
    auto pp = admissible_pairings(path);
    REQUIRE(pp.size() == 1);
    CHECK_FALSE(classify(path, pp[0]).fully_atomic);
  }

  TEST_CASE("pairing report serializes cleanly") {
    auto g = tr_wwt(3, 0.5);
    auto j = nlohmann::json::parse(pairing_report_json(g));
    CHECK(j["components"] == 1);
    CHECK(j["n_random"] == 2);
    REQUIRE(j["pairings"].size() == 1);
    CHECK(j["pairings"][0]["class"] == "A");
    CHECK(j["pairings"][0]["value_re"] == doctest::Approx(0.25 * 9.0));
  }
}
