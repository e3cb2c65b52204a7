#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <liegcr/linalg.hpp>
#include <liegcr/random.hpp>

using namespace liegcr;

namespace {

FieldPtr Q() { return FieldDescriptor::rationals(); }
FieldPtr GF(long p) { return FieldDescriptor::prime_field(p); }

Matrix M(const FieldPtr& f, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<FieldElement>> r;
    for (auto& row : rows) {
        std::vector<FieldElement> er;
        for (long v : row) er.push_back(FieldElement::from_integer(f, v));
        r.push_back(std::move(er));
    }
    return Matrix::from_rows(f, r);
}

Matrix random_matrix(Rng& rng, const FieldPtr& f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = rng.element(f, 4);
    return m;
}

// independent second Gaussian elimination (column-sweep, no normalization)
// used only as a rank oracle
int rank_oracle(Matrix m) {
    int rank = 0;
    int n = m.rows(), c = m.cols();
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int col = 0; col < c; ++col) {
        int row = -1;
        for (int i = 0; i < n; ++i)
            if (!used[static_cast<std::size_t>(i)] && !m.at(i, col).is_zero()) { row = i; break; }
        if (row < 0) continue;
        used[static_cast<std::size_t>(row)] = true;
        ++rank;
        for (int i = 0; i < n; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            FieldElement fac = m.at(i, col) / m.at(row, col);
            for (int j = 0; j < c; ++j) m.at(i, j) = m.at(i, j) - fac * m.at(row, j);
        }
    }
    return rank;
}

}  // namespace

TEST_CASE("rref spec examples") {
    Matrix id = Matrix::identity(Q(), 3);
    auto rr = rref(id);
    CHECK(rr.mat == id);
    CHECK(rr.rank == 3);

    Matrix n = M(GF(2), {{0, 1}, {0, 0}});
    auto rr2 = rref(n);
    CHECK(rr2.mat == n);
    CHECK(rr2.rank == 1);

    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Matrix m = random_matrix(rng, GF(3), 4, 4);
        auto r = rref(m);
        CHECK(r.rank == rank_oracle(m));
        // idempotent
        auto r2 = rref(r.mat);
        CHECK(r2.mat == r.mat);
        // row space preserved
        CHECK(Subspace::span(GF(3), 4, [&] {
                  std::vector<std::vector<FieldElement>> rows;
                  for (int a = 0; a < 4; ++a) {
                      std::vector<FieldElement> row;
                      for (int b = 0; b < 4; ++b) row.push_back(m.at(a, b));
                      rows.push_back(row);
                  }
                  return rows;
              }()) == Subspace::span(GF(3), 4, [&] {
                  std::vector<std::vector<FieldElement>> rows;
                  for (int a = 0; a < 4; ++a) {
                      std::vector<FieldElement> row;
                      for (int b = 0; b < 4; ++b) row.push_back(r.mat.at(a, b));
                      rows.push_back(row);
                  }
                  return rows;
              }()));
    }
}

TEST_CASE("solve_linear spec examples") {
    auto e1 = std::vector<FieldElement>{FieldElement::one(Q()), FieldElement::zero(Q())};
    auto sol = solve_linear(Matrix::identity(Q(), 2), e1);
    REQUIRE(sol);
    CHECK(sol->particular == e1);
    CHECK(sol->kernel.empty());

    Matrix zero(Q(), 2, 2);
    auto sol2 = solve_linear(zero, {FieldElement::zero(Q()), FieldElement::zero(Q())});
    REQUIRE(sol2);
    CHECK(sol2->kernel.size() == 2);

    auto none = solve_linear(zero, {FieldElement::one(Q()), FieldElement::zero(Q())});
    CHECK_FALSE(none);

    Rng rng(17);
    for (int i = 0; i < 100; ++i) {
        Matrix A = random_matrix(rng, Q(), 3, 4);
        // consistent by construction: b = A x0
        std::vector<FieldElement> x0;
        for (int j = 0; j < 4; ++j) x0.push_back(rng.element(Q(), 4));
        std::vector<FieldElement> b(3, FieldElement::zero(Q()));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c)
                b[static_cast<std::size_t>(r)] =
                    b[static_cast<std::size_t>(r)] + A.at(r, c) * x0[static_cast<std::size_t>(c)];
        auto s = solve_linear(A, b);
        REQUIRE(s);
        // exact residual
        for (int r = 0; r < 3; ++r) {
            FieldElement acc = FieldElement::zero(Q());
            for (int c = 0; c < 4; ++c)
                acc = acc + A.at(r, c) * s->particular[static_cast<std::size_t>(c)];
            CHECK(acc == b[static_cast<std::size_t>(r)]);
        }
    }
}

TEST_CASE("subspace lattice") {
    auto f = Q();
    auto e = [&](int i) {
        std::vector<FieldElement> v(2, FieldElement::zero(f));
        v[static_cast<std::size_t>(i)] = FieldElement::one(f);
        return v;
    };
    Subspace u = Subspace::span(f, 2, {e(0)});
    Subspace w = Subspace::span(f, 2, {e(1)});
    CHECK(subspace_intersect(u, w).dim() == 0);
    CHECK(subspace_sum(u, w).dim() == 2);
    CHECK(u.contains(u));
    CHECK_FALSE(u.contains(w));

    SUBCASE("complements of a line in GF(2)^2") {
        auto g = GF(2);
        std::vector<FieldElement> ge1{FieldElement::one(g), FieldElement::zero(g)};
        Subspace line = Subspace::span(g, 2, {ge1});
        auto comps = complement_enumerate(line);
        REQUIRE(comps.size() == 2);
        // brute oracle: every 1-dim subspace not equal to the line
        int brute = 0;
        for (const auto& s : enumerate_subspaces(g, 2, 1))
            if (s != line) ++brute;
        CHECK(brute == 2);
        for (const auto& c : comps) CHECK(subspace_intersect(line, c).dim() == 0);
    }

    SUBCASE("Grassmann identity on 500 random pairs in GF(3)^4") {
        auto g = GF(3);
        Rng rng(99);
        for (int i = 0; i < 500; ++i) {
            std::vector<std::vector<FieldElement>> ru, rw;
            for (long j = 0, nu = rng.uniform(0, 3); j < nu; ++j) {
                std::vector<FieldElement> v;
                for (int t = 0; t < 4; ++t) v.push_back(rng.element(g));
                ru.push_back(v);
            }
            for (long j = 0, nw = rng.uniform(0, 3); j < nw; ++j) {
                std::vector<FieldElement> v;
                for (int t = 0; t < 4; ++t) v.push_back(rng.element(g));
                rw.push_back(v);
            }
            Subspace U = Subspace::span(g, 4, ru), W = Subspace::span(g, 4, rw);
            CHECK(subspace_sum(U, W).dim() + subspace_intersect(U, W).dim() ==
                  U.dim() + W.dim());
        }
    }

    SUBCASE("complement_enumerate refuses infinite fields") {
        CHECK_THROWS_AS(complement_enumerate(u), FieldError);
    }
}

TEST_CASE("subspace enumeration counts") {
    auto g2 = GF(2);
    CHECK(enumerate_subspaces(g2, 2, 1).size() == 3);
    CHECK(enumerate_subspaces(g2, 3, 1).size() == 7);
    CHECK(enumerate_subspaces(g2, 3, 2).size() == 7);
    CHECK(enumerate_subspaces(GF(3), 2, 1).size() == 4);
    // no duplicates
    auto all = enumerate_subspaces(g2, 3, 2);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(all[i] != all[j]);
}

TEST_CASE("flags") {
    auto f = Q();
    auto e = [&](std::vector<int> which) {
        std::vector<std::vector<FieldElement>> vs;
        for (int i : which) {
            std::vector<FieldElement> v(3, FieldElement::zero(f));
            v[static_cast<std::size_t>(i)] = FieldElement::one(f);
            vs.push_back(v);
        }
        return vs;
    };
    Subspace v1 = Subspace::span(f, 3, e({0}));
    Subspace v2 = Subspace::span(f, 3, e({0, 1}));
    Flag fl(f, 3, {v1, v2});
    CHECK(fl.is_complete());
    CHECK(fl.dims() == std::vector<int>{1, 2});

    // non-nested chain rejected
    Subspace bad = Subspace::span(f, 3, e({1, 2}));
    CHECK_THROWS_AS(Flag(f, 3, {v1, bad}), FieldError);
    // shuffled chain rejected
    CHECK_THROWS_AS(Flag(f, 3, {v2, v1}), FieldError);

    Matrix frame = flag_adapted_basis(fl);
    auto inv = matrix_inverse(frame);
    REQUIRE(inv);
    // first column spans V1
    std::vector<FieldElement> col0;
    for (int i = 0; i < 3; ++i) col0.push_back(frame.at(i, 0));
    CHECK(v1.contains_vector(col0));
}

TEST_CASE("inverse and determinant") {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        Matrix m(Q(), 3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m.at(a, b) = rng.element(Q(), 3);
        FieldElement d = determinant(m);
        auto inv = matrix_inverse(m);
        if (d.is_zero()) {
            CHECK_FALSE(inv);
        } else {
            REQUIRE(inv);
            CHECK(m * *inv == Matrix::identity(Q(), 3));
        }
    }
}
