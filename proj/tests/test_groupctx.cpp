#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <liegcr/groupctx.hpp>
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

Matrix E(const FieldPtr& f, int n, int i, int j) {
    Matrix m(f, n, n);
    m.at(i, j) = FieldElement::one(f);
    return m;
}

Subspace span_of(const FieldPtr& f, int n, std::vector<std::vector<long>> vecs) {
    std::vector<std::vector<FieldElement>> rows;
    for (auto& v : vecs) {
        std::vector<FieldElement> r;
        for (long x : v) r.push_back(FieldElement::from_integer(f, x));
        rows.push_back(std::move(r));
    }
    return Subspace::span(f, n, rows);
}

}  // namespace

TEST_CASE("context basics and capability profile") {
    GroupContext gl(GroupKind::GL, 3, Q());
    CHECK(gl.lie_dim() == 9);
    GroupContext sl(GroupKind::SL, 3, Q());
    CHECK(sl.lie_dim() == 8);
    GroupContext pgl(GroupKind::PGL, 2, GF(2));
    CHECK(pgl.lie_dim() == 3);

    CHECK(gl.capabilities().radical_algorithm == RadicalAlgorithm::Dickson);
    CHECK(gl.capabilities().char0_criteria_enabled);
    CHECK(pgl.capabilities().radical_algorithm == RadicalAlgorithm::FiniteField);
    CHECK_FALSE(pgl.capabilities().char0_criteria_enabled);
    auto kt = FieldDescriptor::rational_functions(GF(2), "t");
    GroupContext imperfect(GroupKind::GL, 2, kt);
    CHECK(imperfect.capabilities().radical_algorithm == RadicalAlgorithm::None);
    CHECK_FALSE(imperfect.capabilities().perfect);

    // membership
    CHECK(sl.in_lie_algebra(M(Q(), {{1, 0, 0}, {0, -1, 0}, {0, 0, 0}})));
    CHECK_FALSE(sl.in_lie_algebra(M(Q(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}})));
    CHECK(pgl.in_lie_algebra(M(GF(2), {{1, 0}, {0, 0}})));

    // canonicalization identifies scalar shifts
    Matrix a = M(GF(2), {{1, 1}, {0, 1}});
    Matrix b = M(GF(2), {{0, 1}, {0, 0}});
    CHECK(pgl.canonicalize(a) == pgl.canonicalize(b));
}

TEST_CASE("limits and c_lambda: spec examples") {
    GroupContext gl2(GroupKind::GL, 2, Q());
    Cocharacter lam(gl2, Matrix::identity(Q(), 2), {1, -1});
    Matrix e12 = E(Q(), 2, 0, 1), e21 = E(Q(), 2, 1, 0);
    CHECK(lam.limit_exists(e12));
    CHECK(lam.limit(e12).is_zero());
    CHECK_FALSE(lam.limit_exists(e21));

    GroupContext gl3(GroupKind::GL, 3, Q());
    Cocharacter lam3(gl3, Matrix::identity(Q(), 3), {1, 1, 0});
    Matrix x = M(Q(), {{1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
    CHECK(lam3.limit_exists(x));
    CHECK(lam3.limit(x) == x);

    // weight decomposition reconstructs x
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        Matrix m(Q(), 3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) m.at(a, b) = rng.element(Q(), 4);
        auto p = lam3.decompose(m);
        CHECK(p.negative + p.zero + p.positive == m);
        // c_lambda idempotent on p_lambda and fixes l_lambda
        Matrix up = p.zero + p.positive;
        CHECK(lam3.limit(lam3.limit(up)) == lam3.limit(up));
    }
}

TEST_CASE("central cocharacter acts trivially") {
    GroupContext gl2(GroupKind::GL, 2, GF(3));
    Cocharacter c = Cocharacter::central(gl2);
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        Matrix m(GF(3), 2, 2);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m.at(a, b) = rng.element(GF(3));
        CHECK(c.limit_exists(m));
        CHECK(c.limit(m) == m);
    }
}

TEST_CASE("lie_parabolic and lie_levi: spec examples") {
    GroupContext gl3(GroupKind::GL, 3, Q());
    // complete standard flag -> upper triangular, dim 6
    Flag fl(Q(), 3, {span_of(Q(), 3, {{1, 0, 0}}), span_of(Q(), 3, {{1, 0, 0}, {0, 1, 0}})});
    Subspace p = lie_parabolic(gl3, fl);
    CHECK(p.dim() == 6);
    CHECK(p.contains_vector(E(Q(), 3, 0, 2).flatten()));
    CHECK_FALSE(p.contains_vector(E(Q(), 3, 2, 0).flatten()));

    // splitting <e1> + <e2,e3> -> block diag, dim 5
    Subspace l = lie_levi(gl3, {span_of(Q(), 3, {{1, 0, 0}}),
                                span_of(Q(), 3, {{0, 1, 0}, {0, 0, 1}})});
    CHECK(l.dim() == 5);
    CHECK(l.contains_vector(E(Q(), 3, 1, 2).flatten()));
    CHECK_FALSE(l.contains_vector(E(Q(), 3, 0, 1).flatten()));

    // 3 Borel subalgebras of gl_2 over GF(2), one per line
    GroupContext gl2(GroupKind::GL, 2, GF(2));
    auto lines = enumerate_subspaces(GF(2), 2, 1);
    CHECK(lines.size() == 3);
    std::vector<Subspace> borels;
    for (const auto& line : lines) {
        Flag b(GF(2), 2, {line});
        Subspace lp = lie_parabolic(gl2, b);
        CHECK(lp.dim() == 3);
        for (const auto& prev : borels) CHECK(!(lp == prev));
        borels.push_back(lp);
    }
}

TEST_CASE("flag-adapted cocharacter matches parabolic/Levi/radical split") {
    for (auto f : {Q(), GF(2), GF(3)}) {
        GroupContext gl3(GroupKind::GL, 3, f);
        std::vector<Flag> flags;
        flags.emplace_back(f, 3, std::vector<Subspace>{span_of(f, 3, {{1, 0, 0}})});
        flags.emplace_back(f, 3, std::vector<Subspace>{
                                     span_of(f, 3, {{0, 1, 1}}),
                                     span_of(f, 3, {{0, 1, 1}, {1, 0, 0}})});
        for (const auto& fl : flags) {
            Cocharacter lam = flag_cocharacter(gl3, fl);
            CHECK(lam.lie_p() == lie_parabolic(gl3, fl));
            // weight-0 part is the Levi of the frame splitting
            std::vector<Subspace> split;
            int prev = 0;
            std::vector<int> dims = fl.dims();
            dims.push_back(3);
            Matrix frame = lam.frame();
            for (int d : dims) {
                std::vector<std::vector<FieldElement>> cols;
                for (int j = prev; j < d; ++j) {
                    std::vector<FieldElement> col;
                    for (int i = 0; i < 3; ++i) col.push_back(frame.at(i, j));
                    cols.push_back(col);
                }
                split.push_back(Subspace::span(f, 3, cols));
                prev = d;
            }
            CHECK(lam.lie_l() == lie_levi(gl3, split));
            // p = l ⊕ ru
            CHECK(subspace_sum(lam.lie_l(), lam.lie_ru()) == lam.lie_p());
            CHECK(subspace_intersect(lam.lie_l(), lam.lie_ru()).dim() == 0);
        }
    }
}

TEST_CASE("kernel of c_lambda on p_lambda is the positive part") {
    GroupContext gl3(GroupKind::GL, 3, GF(2));
    Flag fl(GF(2), 3, {span_of(GF(2), 3, {{1, 0, 0}}),
                       span_of(GF(2), 3, {{1, 0, 0}, {0, 1, 0}})});
    Cocharacter lam = flag_cocharacter(gl3, fl);
    Subspace p = lam.lie_p();
    Subspace ru = lam.lie_ru();
    for (const auto& v : p.basis()) {
        Matrix x = unflatten(GF(2), 3, 3, v);
        Matrix lim = lam.limit(x);
        bool in_ru = ru.contains_vector(v);
        CHECK(lim.is_zero() == in_ru);
    }
}

TEST_CASE("opposite_flags: spec examples") {
    GroupContext gl3(GroupKind::GL, 3, Q());
    Flag std_fl(Q(), 3, {span_of(Q(), 3, {{1, 0, 0}}), span_of(Q(), 3, {{1, 0, 0}, {0, 1, 0}})});
    Flag anti(Q(), 3, {span_of(Q(), 3, {{0, 0, 1}}), span_of(Q(), 3, {{0, 0, 1}, {0, 1, 0}})});
    CHECK(opposite_flags(gl3, std_fl, anti));
    CHECK(opposite_flags(gl3, anti, std_fl));  // symmetric
    CHECK_FALSE(opposite_flags(gl3, std_fl, std_fl));

    // over GF(2)^2 the 3 Borel flags are opposite exactly when lines differ
    GroupContext gl2(GroupKind::GL, 2, GF(2));
    auto lines = enumerate_subspaces(GF(2), 2, 1);
    for (const auto& a : lines)
        for (const auto& b : lines) {
            Flag fa(GF(2), 2, {a}), fb(GF(2), 2, {b});
            CHECK(opposite_flags(gl2, fa, fb) == (a != b));
        }
}

TEST_CASE("SL cocharacter constraints") {
    GroupContext sl2(GroupKind::SL, 2, Q());
    CHECK_THROWS_AS(Cocharacter(sl2, Matrix::identity(Q(), 2), {1, 0}), FieldError);
    Cocharacter ok(sl2, Matrix::identity(Q(), 2), {1, -1});
    CHECK(ok.lie_p().dim() == 2);  // Borel of sl_2
    CHECK(ok.lie_l().dim() == 1);
    // flag cocharacter recentres weights for SL
    Flag fl(Q(), 2, {span_of(Q(), 2, {{1, 0}})});
    Cocharacter lam = flag_cocharacter(sl2, fl);
    long sum = 0;
    for (long w : lam.weights()) sum += w;
    CHECK(sum == 0);
    CHECK(lam.weights()[0] > lam.weights()[1]);
}

TEST_CASE("PGL parabolic through canonical representatives") {
    GroupContext pgl2(GroupKind::PGL, 2, GF(2));
    Flag fl(GF(2), 2, {span_of(GF(2), 2, {{1, 0}})});
    Subspace p = lie_parabolic(pgl2, fl);
    CHECK(p.dim() == 2);  // Borel of pgl_2 (3-dim algebra, coset image of dim-3 blocks)
    // canonical rep of the class of E12 lies in it
    CHECK(p.contains_vector(pgl2.canonicalize(E(GF(2), 2, 0, 1)).flatten()));
    // class of E21 does not
    CHECK_FALSE(p.contains_vector(pgl2.canonicalize(E(GF(2), 2, 1, 0)).flatten()));
}
