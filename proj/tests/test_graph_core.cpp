// test_graph_core.cpp — construction, evaluation, and the operator calculus.

#include <doctest.h>

#include <random>

#include <pgc/eval.hpp>
#include <pgc/graph.hpp>
#include <pgc/ops.hpp>

#include "oracles.hpp"

using namespace pgc;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

Eigen::MatrixXd rand_mat(std::mt19937& rng, int r, int c) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

Eigen::VectorXd rand_vec(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

// Single-edge operator graph: free out vertex "r" --(m)--> free in vertex "a".
OperatorGraph matrix_op(const Eigen::MatrixXd& m, const std::string& suffix = "") {
  auto g = build_graph(
      {{"r" + suffix, static_cast<int>(m.rows()), CellInput::free_out()},
       {"a" + suffix, static_cast<int>(m.cols()), CellInput::free_in()}},
      {{"e" + suffix, "r" + suffix, "a" + suffix, CellInput::dense(m)}});
  return make_operator_graph(g, {"a" + suffix}, {"r" + suffix});
}

// Vector-valued operator graph: dense vertex --(m)--> free out vertex.
OperatorGraph vector_op(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                        const std::string& suffix = "") {
  auto g = build_graph(
      {{"r" + suffix, static_cast<int>(m.rows()), CellInput::free_out()},
       {"a" + suffix, static_cast<int>(m.cols()), CellInput::dense(x)}},
      {{"e" + suffix, "r" + suffix, "a" + suffix, CellInput::dense(m)}});
  return make_operator_graph(g, {}, {"r" + suffix});
}

}  // namespace

TEST_SUITE("graph_core") {
  TEST_CASE("build accepts a matrix-word path") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(2, 2);
    auto g = build_graph({{"a", 2, CellInput::dense(vec({1, 2}))},
                          {"b", 2, CellInput::ones()},
                          {"c", 2, CellInput::ones()},
                          {"d", 2, CellInput::dense(vec({3, 4}))}},
                         {{"w3", "a", "b", CellInput::dense(w)},
                          {"w2", "b", "c", CellInput::dense(w)},
                          {"w1", "c", "d", CellInput::dense(w)}});
    CHECK(g.vertices().size() == 4);
    CHECK(g.edges().size() == 3);
    CHECK(g.component_count() == 1);
  }

  TEST_CASE("single all-ones vertex sums its dimension") {
    auto g = build_graph({{"v", 3, CellInput::ones()}}, {});
    CHECK(graph_value(g) == doctest::Approx(3.0));
    CHECK(graph_value(g, EvalStrategy::Naive) == doctest::Approx(3.0));
  }

  TEST_CASE("edge shape must match endpoint dimensions") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
    CHECK_THROWS_WITH_AS(
        build_graph({{"u", 3, CellInput::ones()}, {"v", 3, CellInput::ones()}},
                    {{"e", "u", "v", CellInput::dense(m)}}),
        doctest::Contains("e"), Error);
    try {
      build_graph({{"u", 3, CellInput::ones()}, {"v", 3, CellInput::ones()}},
                  {{"e", "u", "v", CellInput::dense(m)}});
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::ShapeMismatch);
    }
  }

  TEST_CASE("scalar path multiplies through") {
    auto one = [](double v) {
      Eigen::MatrixXd m(1, 1);
      m(0, 0) = v;
      return m;
    };
    auto g = build_graph({{"a", 1, CellInput::dense(vec({2}))},
                          {"b", 1, CellInput::ones()},
                          {"c", 1, CellInput::ones()},
                          {"d", 1, CellInput::dense(vec({1}))}},
                         {{"w3", "a", "b", CellInput::dense(one(3))},
                          {"w2", "b", "c", CellInput::dense(one(5))},
                          {"w1", "c", "d", CellInput::dense(one(7))}});
    CHECK(graph_value(g) == doctest::Approx(210.0));
  }

  TEST_CASE("disjoint union factorizes") {
    std::mt19937 rng(11);
    Eigen::MatrixXd m1 = rand_mat(rng, 2, 2), m2 = rand_mat(rng, 3, 3);
    auto g1 = build_graph({{"u", 2, CellInput::dense(rand_vec(rng, 2))},
                           {"v", 2, CellInput::dense(rand_vec(rng, 2))}},
                          {{"e", "u", "v", CellInput::dense(m1)}});
    auto g2 = build_graph({{"p", 3, CellInput::dense(rand_vec(rng, 3))},
                           {"q", 3, CellInput::dense(rand_vec(rng, 3))}},
                          {{"f", "p", "q", CellInput::dense(m2)}});
    std::vector<VertexSpec> vs;
    std::vector<EdgeSpec> es;
    for (const auto& v : g1.vertices()) vs.push_back({v.id, v.dim, v.input});
    for (const auto& v : g2.vertices()) vs.push_back({v.id, v.dim, v.input});
    for (const auto& e : g1.edges()) es.push_back({e.id, e.head, e.tail, e.input});
    for (const auto& e : g2.edges()) es.push_back({e.id, e.head, e.tail, e.input});
    auto g = build_graph(vs, es);
    CHECK(g.component_count() == 2);
    CHECK(graph_value(g) ==
          doctest::Approx(graph_value(g1) * graph_value(g2)).epsilon(1e-12));
  }

  TEST_CASE("star of matrices matches dense algebra") {
    std::mt19937 rng(12);
    Eigen::MatrixXd w2 = rand_mat(rng, 2, 2), w1 = rand_mat(rng, 2, 2);
    Eigen::VectorXd xa = rand_vec(rng, 2), xb = rand_vec(rng, 2);
    Eigen::VectorXd xc = rand_vec(rng, 2), xd = rand_vec(rng, 2);
    auto g = build_graph({{"a", 2, CellInput::dense(xa)},
                          {"m", 2, CellInput::dense(xb)},
                          {"c", 2, CellInput::dense(xc)},
                          {"d", 2, CellInput::dense(xd)}},
                         {{"w2", "a", "m", CellInput::dense(w2)},
                          {"w1c", "m", "c", CellInput::dense(w1)},
                          {"w1d", "m", "d", CellInput::dense(w1)}});
    Eigen::VectorXd inner =
        xb.cwiseProduct((w1 * xc).eval()).cwiseProduct((w1 * xd).eval());
    double expect = xa.dot(w2 * inner);
    CHECK(graph_value(g) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(graph_value(g, EvalStrategy::Naive) ==
          doctest::Approx(expect).epsilon(1e-12));
  }

  TEST_CASE("loops read the diagonal") {
    std::mt19937 rng(13);
    Eigen::MatrixXd m = rand_mat(rng, 3, 3);
    auto g = build_graph({{"v", 3, CellInput::ones()}},
                         {{"e", "v", "v", CellInput::dense(m)}});
    CHECK(graph_value(g) == doctest::Approx(m.trace()).epsilon(1e-12));
  }

  TEST_CASE("wedge of identity maps is all-ones") {
    Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(2, 2);
    auto w = wedge(vector_op(eye, vec({1, 1}), "1"), vector_op(eye, vec({1, 1}), "2"));
    Eigen::VectorXd v = operator_vector(w);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(1.0));
  }

  TEST_CASE("wedge is the Hadamard product") {
    std::mt19937 rng(14);
    Eigen::MatrixXd m1 = rand_mat(rng, 3, 3), m2 = rand_mat(rng, 3, 3);
    Eigen::VectorXd x1 = rand_vec(rng, 3), x2 = rand_vec(rng, 3);
    auto g1 = vector_op(m1, x1, "1");
    auto g2 = vector_op(m2, x2, "2");
    Eigen::VectorXd expect =
        operator_vector(g1).cwiseProduct(operator_vector(g2).eval());
    Eigen::VectorXd got = operator_vector(wedge(g1, g2));
    CHECK((got - expect).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("wedge associates") {
    std::mt19937 rng(15);
    auto mk = [&](const std::string& s) {
      return vector_op(rand_mat(rng, 2, 2), rand_vec(rng, 2), s);
    };
    auto a = mk("1"), b = mk("2"), c = mk("3");
    Eigen::VectorXd lhs = operator_vector(wedge(wedge(a, b), c));
    Eigen::VectorXd rhs = operator_vector(wedge(a, wedge(b, c)));
    CHECK((lhs - rhs).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("vertex composition is matrix product") {
    std::mt19937 rng(16);
    Eigen::MatrixXd w1 = rand_mat(rng, 2, 2), w2 = rand_mat(rng, 2, 2);
    auto g1 = matrix_op(w1, "1");
    auto g2 = matrix_op(w2, "2");
    auto c = compose(g2, g1, "a2", "r1");
    Eigen::MatrixXd got = operator_matrix(c);
    CHECK((got - w2 * w1).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("composition with an identity edge is a no-op") {
    std::mt19937 rng(17);
    Eigen::MatrixXd w = rand_mat(rng, 3, 3);
    auto g2 = matrix_op(w, "2");
    auto ident = build_graph({{"ri", 3, CellInput::free_out()},
                              {"ai", 3, CellInput::free_in()}},
                             {{"ei", "ri", "ai", CellInput::identity()}});
    auto g1 = make_operator_graph(ident, {"ai"}, {"ri"});
    auto c = compose(g2, g1, "a2", "ri");
    Eigen::MatrixXd got = operator_matrix(c);
    CHECK((got - w).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("edge composition sums over the shared matrix cell") {
    // Layer-coupling form: the operators H -> H ax and y -> (z -> <ay, .> z)
    // compose to <ax, ay> * Identity.
    std::mt19937 rng(18);
    Eigen::VectorXd ax = rand_vec(rng, 3), ay = rand_vec(rng, 3);
    auto gx = build_graph({{"rx", 2, CellInput::free_out()},
                           {"vx", 3, CellInput::dense(ax)}},
                          {{"hx", "rx", "vx", CellInput::free_in()}});
    auto taux = make_operator_graph(gx, {"hx"}, {"rx"});
    auto gy = build_graph({{"ry", 2, CellInput::free_in()},
                           {"vy", 3, CellInput::dense(ay)}},
                          {{"hy", "ry", "vy", CellInput::free_out()}});
    auto etay = make_operator_graph(gy, {"ry"}, {"hy"});
    auto c = compose(taux, etay, "hx", "hy");
    Eigen::MatrixXd got = operator_matrix(c);
    Eigen::MatrixXd expect = ax.dot(ay) * Eigen::MatrixXd::Identity(2, 2);
    CHECK((got - expect).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("transpose reverses a chain") {
    std::mt19937 rng(19);
    Eigen::MatrixXd a = rand_mat(rng, 2, 3), b = rand_mat(rng, 3, 2);
    auto g = build_graph({{"r", 2, CellInput::free_out()},
                          {"m", 3, CellInput::ones()},
                          {"s", 2, CellInput::free_in()}},
                         {{"ea", "r", "m", CellInput::dense(a)},
                          {"eb", "m", "s", CellInput::dense(b)}});
    auto op = make_operator_graph(g, {"s"}, {"r"});
    Eigen::MatrixXd m = operator_matrix(op);
    CHECK((m - a * b).norm() == doctest::Approx(0.0).epsilon(1e-10));
    Eigen::MatrixXd mt = operator_matrix(transpose(op));
    CHECK((mt - (a * b).transpose()).norm() == doctest::Approx(0.0).epsilon(1e-10));
    Eigen::MatrixXd mtt = operator_matrix(transpose(transpose(op)));
    CHECK((mtt - m).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("transpose fixes symmetric operators") {
    std::mt19937 rng(20);
    Eigen::MatrixXd a = rand_mat(rng, 3, 3);
    Eigen::MatrixXd sym = (a + a.transpose()).eval();
    auto op = matrix_op(sym);
    Eigen::MatrixXd mt = operator_matrix(transpose(op));
    CHECK((mt - sym).norm() == doctest::Approx(0.0).epsilon(1e-10));
  }

  TEST_CASE("trace graph takes traces") {
    std::mt19937 rng(21);
    Eigen::MatrixXd m = rand_mat(rng, 4, 4);
    CHECK(graph_value(trace_graph(matrix_op(m))) ==
          doctest::Approx(m.trace()).epsilon(1e-10));

    auto ident = build_graph({{"r", 5, CellInput::free_out()},
                              {"a", 5, CellInput::free_in()}},
                             {{"e", "r", "a", CellInput::identity()}});
    CHECK(graph_value(trace_graph(make_operator_graph(ident, {"a"}, {"r"}))) ==
          doctest::Approx(5.0));

    Eigen::MatrixXd w1 = rand_mat(rng, 3, 3), w2 = rand_mat(rng, 3, 3);
    auto chain = build_graph({{"r", 3, CellInput::free_out()},
                              {"m", 3, CellInput::ones()},
                              {"s", 3, CellInput::free_in()}},
                             {{"e2", "r", "m", CellInput::dense(w2)},
                              {"e1", "m", "s", CellInput::dense(w1)}});
    CHECK(graph_value(trace_graph(make_operator_graph(chain, {"s"}, {"r"}))) ==
          doctest::Approx((w2 * w1).trace()).epsilon(1e-10));
  }

  TEST_CASE("differential of the bilinear map (x, W) -> Wx") {
    std::mt19937 rng(22);
    Eigen::MatrixXd w0 = rand_mat(rng, 2, 3);
    Eigen::VectorXd x0 = rand_vec(rng, 3);
    auto g = build_graph({{"r", 2, CellInput::free_out()},
                          {"x", 3, CellInput::free_in()}},
                         {{"w", "r", "x", CellInput::free_in()}});
    auto op = make_operator_graph(g, {"x", "w"}, {"r"});
    auto parts = differential(op, {CellInput::dense(x0), CellInput::dense(w0)});
    REQUIRE(parts.size() == 2);

    // d/dx at fixed W0 is W0 itself.
    Eigen::MatrixXd dx = operator_matrix(parts[0]);
    CHECK((dx - w0).norm() == doctest::Approx(0.0).epsilon(1e-10));

    // d/dW at fixed x0 maps H to H x0; flattened row-major by (head, tail).
    Eigen::MatrixXd dw = operator_matrix(parts[1]);
    REQUIRE(dw.rows() == 2);
    REQUIRE(dw.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 2; ++a)
          CHECK(dw(a, i * 3 + j) ==
                doctest::Approx(i == a ? x0[j] : 0.0).epsilon(1e-10));
  }

  TEST_CASE("differentials sum to the finite-difference derivative") {
    std::mt19937 rng(23);
    Eigen::MatrixXd w0 = rand_mat(rng, 3, 3);
    Eigen::VectorXd x0 = rand_vec(rng, 3);
    Eigen::MatrixXd hw = rand_mat(rng, 3, 3);
    Eigen::VectorXd hx = rand_vec(rng, 3);
    auto g = build_graph({{"r", 3, CellInput::free_out()},
                          {"x", 3, CellInput::free_in()}},
                         {{"w", "r", "x", CellInput::free_in()}});
    auto op = make_operator_graph(g, {"x", "w"}, {"r"});
    auto parts = differential(op, {CellInput::dense(x0), CellInput::dense(w0)});

    auto apply = [&](const OperatorGraph& d, const CellInput& h) {
      Eigen::VectorXcd out(3);
      for (int a = 0; a < 3; ++a) {
        auto fixes = std::vector<std::pair<std::string, CellInput>>{
            {d.in_cells[0], h}, {d.out_cells[0], CellInput::basis(a + 1)}};
        out[a] = eval_with_fixed_cells(d, fixes);
      }
      return out.real().eval();
    };
    Eigen::VectorXd lin = apply(parts[0], CellInput::dense(hx)) +
                          apply(parts[1], CellInput::dense(hw));

    auto f = [&](double eps) {
      return ((w0 + eps * hw) * (x0 + eps * hx)).eval();
    };
    double e1 = (f(1e-4) - f(0.0) - 1e-4 * lin).norm();
    double e2 = (f(2e-4) - f(0.0) - 2e-4 * lin).norm();
    CHECK(e1 < 1e-6);
    CHECK(e2 / (e1 + 1e-300) == doctest::Approx(4.0).epsilon(0.05));
  }

  TEST_CASE("naive and greedy agree on random graphs") {
    std::mt19937 rng(24);
    std::uniform_int_distribution<int> dim_d(1, 4), nv_d(1, 8);
    for (int rep = 0; rep < 30; ++rep) {
      int nv = nv_d(rng);
      std::vector<VertexSpec> vs;
      std::vector<int> dims;
      for (int i = 0; i < nv; ++i) {
        int d = dim_d(rng);
        dims.push_back(d);
        vs.push_back({"v" + std::to_string(i), d,
                      rep % 3 == 0 ? CellInput::ones()
                                   : CellInput::dense(rand_vec(rng, d))});
      }
      std::uniform_int_distribution<int> ne_d(0, 2 * nv > 8 ? 8 : 2 * nv);
      std::uniform_int_distribution<int> pick(0, nv - 1);
      int ne = ne_d(rng);
      std::vector<EdgeSpec> es;
      for (int i = 0; i < ne; ++i) {
        int h = pick(rng), t = pick(rng);
        CellInput in = (h != t && rep % 4 == 1 && dims[h] == dims[t])
                           ? CellInput::identity()
                           : CellInput::dense(rand_mat(rng, dims[h], dims[t]));
        es.push_back({"e" + std::to_string(i), "v" + std::to_string(h),
                      "v" + std::to_string(t), in});
      }
      auto g = build_graph(vs, es);
      double a = graph_value(g, EvalStrategy::Naive);
      double b = graph_value(g, EvalStrategy::GreedyContraction);
      double scale = std::max({1.0, std::abs(a), std::abs(b)});
      CHECK(std::abs(a - b) / scale < 1e-12);
    }
  }

  TEST_CASE("free and random cells are rejected by evaluation") {
    auto g1 = build_graph({{"v", 2, CellInput::free_out()}}, {});
    CHECK_THROWS_AS(graph_value(g1), Error);
    auto g2 = build_graph({{"u", 2, CellInput::ones()}, {"v", 2, CellInput::ones()}},
                          {{"e", "u", "v", CellInput::random(1)}});
    CHECK_THROWS_AS(graph_value(g2), Error);
  }

  TEST_CASE("duplicate and dangling ids are rejected") {
    CHECK_THROWS_AS(build_graph({{"v", 2, CellInput::ones()},
                                 {"v", 2, CellInput::ones()}},
                                {}),
                    Error);
    CHECK_THROWS_AS(build_graph({{"v", 2, CellInput::ones()}},
                                {{"e", "v", "w", CellInput::identity()}}),
                    Error);
    CHECK_THROWS_AS(build_graph({{"v", 0, CellInput::ones()}}, {}), Error);
  }

  TEST_CASE("identity input requires square endpoints") {
    CHECK_THROWS_AS(build_graph({{"u", 2, CellInput::ones()},
                                 {"v", 3, CellInput::ones()}},
                                {{"e", "u", "v", CellInput::identity()}}),
                    Error);
  }

  TEST_CASE("basis index bounds are enforced") {
    CHECK_THROWS_AS(build_graph({{"v", 2, CellInput::basis(3)}}, {}), Error);
    CHECK_THROWS_AS(CellInput::basis(0), Error);
    auto g = build_graph({{"v", 2, CellInput::basis(2)}}, {});
    CHECK(graph_value(g) == doctest::Approx(1.0));
  }
}
