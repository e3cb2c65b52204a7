#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <liegcr/modrep.hpp>
#include <liegcr/random.hpp>

using namespace liegcr;

namespace {

FieldPtr Q() { return FieldDescriptor::rationals(); }
FieldPtr GF(long p) { return FieldDescriptor::prime_field(p); }

Matrix E(const FieldPtr& f, int n, int i, int j) {
    Matrix m(f, n, n);
    m.at(i, j) = FieldElement::one(f);
    return m;
}

Matrix M(const FieldPtr& f, std::vector<std::vector<long>> rows) {
    std::vector<std::vector<FieldElement>> r;
    for (auto& row : rows) {
        std::vector<FieldElement> er;
        for (long v : row) er.push_back(FieldElement::from_integer(f, v));
        r.push_back(std::move(er));
    }
    return Matrix::from_rows(f, r);
}

Matrix random_matrix(Rng& rng, const FieldPtr& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = rng.element(f, 4);
    return m;
}

bool spans_nilpotent(const FieldPtr& f, int n, const std::vector<Matrix>& gens) {
    Subspace s = matrix_span(f, n, n, gens);
    for (int it = 0; it <= n + 1; ++it) {
        if (s.dim() == 0) return true;
        std::vector<Matrix> prods;
        for (const auto& a : gens)
            for (const auto& b : span_basis_matrices(s, n, n)) prods.push_back(a * b);
        s = matrix_span(f, n, n, prods);
    }
    return false;
}

// independent radical oracle over small finite fields: x lies in the radical
// iff the two-sided ideal it generates is nilpotent
Subspace brute_radical(const FieldPtr& f, int n, const std::vector<Matrix>& hull) {
    int d = static_cast<int>(hull.size());
    auto elems = enumerate_field(f);
    std::vector<std::vector<FieldElement>> members;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        Matrix x(f, n, n);
        for (int j = 0; j < d; ++j)
            x = x + hull[static_cast<std::size_t>(j)].scale(elems[idx[static_cast<std::size_t>(j)]]);
        std::vector<Matrix> ideal;
        for (const auto& a : hull)
            for (const auto& b : hull) ideal.push_back(a * x * b);
        std::vector<Matrix> ibasis = span_basis_matrices(matrix_span(f, n, n, ideal), n, n);
        if (spans_nilpotent(f, n, ibasis)) members.push_back(x.flatten());
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == elems.size()) {
            idx[k] = 0;
            ++k;
        }
        if (k == idx.size()) break;
    }
    return Subspace::span(f, n * n, members);
}

// independent semisimplicity oracle: every invariant subspace has an
// invariant complement (finite fields, small n)
bool brute_semisimple(const FieldPtr& f, int n, const std::vector<Matrix>& acting) {
    for (int d = 1; d < n; ++d)
        for (const auto& u : enumerate_subspaces(f, n, d)) {
            if (!subspace_invariant(acting, u)) continue;
            bool has = false;
            for (const auto& w : complement_enumerate(u))
                if (subspace_invariant(acting, w)) {
                    has = true;
                    break;
                }
            if (!has) return false;
        }
    return true;
}

// sl_2 acting on cubic forms in two variables, basis x^3, x^2 y, x y^2, y^3
std::vector<Matrix> cubic_forms_sl2(const FieldPtr& f) {
    Matrix e(f, 4, 4), ff(f, 4, 4), h(f, 4, 4);
    // e: x^a y^b -> b x^{a+1} y^{b-1}
    e.at(0, 1) = FieldElement::from_integer(f, 1);
    e.at(1, 2) = FieldElement::from_integer(f, 2);
    e.at(2, 3) = FieldElement::from_integer(f, 3);
    // f: x^a y^b -> a x^{a-1} y^{b+1}
    ff.at(1, 0) = FieldElement::from_integer(f, 3);
    ff.at(2, 1) = FieldElement::from_integer(f, 2);
    ff.at(3, 2) = FieldElement::from_integer(f, 1);
    // h: x^a y^b -> (a-b) x^a y^b
    h.at(0, 0) = FieldElement::from_integer(f, 3);
    h.at(1, 1) = FieldElement::from_integer(f, 1);
    h.at(2, 2) = FieldElement::from_integer(f, -1);
    h.at(3, 3) = FieldElement::from_integer(f, -3);
    return {e, ff, h};
}

}  // namespace

TEST_CASE("jacobson_radical spec examples") {
    // full matrix algebra is simple
    std::vector<Matrix> m2;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m2.push_back(E(Q(), 2, i, j));
    CHECK(jacobson_radical(Q(), 2, m2).empty());

    // upper-triangular 2x2 over GF(2): radical is the strictly upper part
    auto f2 = GF(2);
    std::vector<Matrix> upper = {E(f2, 2, 0, 0), E(f2, 2, 0, 1), E(f2, 2, 1, 1)};
    auto j = jacobson_radical(f2, 2, upper);
    REQUIRE(j.size() == 1);
    CHECK(j[0] == E(f2, 2, 0, 1));

    // refused over GF(2)(u)
    auto ku = FieldDescriptor::rational_functions(GF(2), "u");
    Matrix t(ku, 2, 2);
    t.at(0, 1) = FieldElement::variable(ku);
    t.at(1, 0) = FieldElement::one(ku);
    auto hull = associative_hull(ku, 2, {t}, true);
    CHECK_THROWS_AS(jacobson_radical(ku, 2, hull), CapabilityError);
}

TEST_CASE("radical of conjugated triangular algebras over Q") {
    // A = I + strictly-upper 3x3: radical is the strictly upper span, and the
    // whole picture is conjugation-equivariant
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix g(Q(), 3, 3);
        do {
            g = random_matrix(rng, Q(), 3);
        } while (!matrix_inverse(g));
        Matrix gi = *matrix_inverse(g);
        std::vector<Matrix> hull = {g * Matrix::identity(Q(), 3) * gi, g * E(Q(), 3, 0, 1) * gi,
                                    g * E(Q(), 3, 0, 2) * gi, g * E(Q(), 3, 1, 2) * gi};
        auto j = jacobson_radical(Q(), 3, hull);
        Subspace expect = matrix_span(Q(), 3, 3,
                                      {g * E(Q(), 3, 0, 1) * gi, g * E(Q(), 3, 0, 2) * gi,
                                       g * E(Q(), 3, 1, 2) * gi});
        CHECK(matrix_span(Q(), 3, 3, j) == expect);
    }
}

TEST_CASE("finite-field radical agrees with the brute-force ideal oracle") {
    struct Conf {
        long p;
        int n;
    };
    for (Conf conf : {Conf{2, 2}, Conf{2, 3}, Conf{3, 2}}) {
        auto f = GF(conf.p);
        Rng rng(11 + conf.p + conf.n);
        int checked = 0;
        for (int trial = 0; trial < 60 && checked < 25; ++trial) {
            std::vector<Matrix> gens;
            int ng = 1 + static_cast<int>(rng.uniform(0, 1));
            for (int i = 0; i < ng; ++i) gens.push_back(random_matrix(rng, f, conf.n));
            auto hull = associative_hull(f, conf.n, gens, true);
            double total = 1;
            for (std::size_t i = 0; i < hull.size(); ++i) total *= static_cast<double>(conf.p);
            if (total > 4096) continue;
            auto j = jacobson_radical(f, conf.n, hull);
            CHECK(matrix_span(f, conf.n, conf.n, j) == brute_radical(f, conf.n, hull));
            ++checked;
        }
        CHECK(checked >= 10);
    }
}

TEST_CASE("radical_series spec examples") {
    // diagonal subalgebra of gl_2(Q): semisimple, trivial series
    GroupContext gl2(GroupKind::GL, 2, Q());
    auto diag = module_structure(bracket_closure(gl2, {M(Q(), {{1, 0}, {0, 2}})}));
    REQUIRE(diag.series);
    CHECK(diag.series->steps().empty());
    CHECK(is_semisimple_module(diag).value == Tri::True);

    // h = <E12> in gl_2(Q): series 0 c <e1> c V
    auto nil = module_structure(bracket_closure(gl2, {E(Q(), 2, 0, 1)}));
    REQUIRE(nil.series);
    REQUIRE(nil.series->steps().size() == 1);
    Subspace e1 = Subspace::span(Q(), 2, {{FieldElement::one(Q()), FieldElement::zero(Q())}});
    CHECK(nil.series->steps()[0] == e1);

    // cubic forms over GF(3): the Frobenius-twist submodule <x^3, y^3> is the
    // radical layer, dimension 2
    auto f3 = GF(3);
    GroupContext gl4(GroupKind::GL, 4, f3);
    auto ms = module_structure(bracket_closure(gl4, cubic_forms_sl2(f3)));
    REQUIRE(ms.series);
    REQUIRE(ms.series->steps().size() == 1);
    const Subspace& step = ms.series->steps()[0];
    CHECK(step.dim() == 2);
    std::vector<FieldElement> x3(4, FieldElement::zero(f3)), y3(4, FieldElement::zero(f3));
    x3[0] = FieldElement::one(f3);
    y3[3] = FieldElement::one(f3);
    CHECK(step == Subspace::span(f3, 4, {x3, y3}));
    CHECK(is_semisimple_module(ms).value == Tri::False);
    // the action on the layer is trivial
    for (const auto& a : ms.acting)
        for (const auto& v : step.basis()) {
            std::vector<FieldElement> w(4, FieldElement::zero(f3));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    w[static_cast<std::size_t>(i)] =
                        w[static_cast<std::size_t>(i)] + a.at(i, j) * v[static_cast<std::size_t>(j)];
            for (const auto& c : w) CHECK(c.is_zero());
        }
}

TEST_CASE("irreducibility and semisimplicity over function fields") {
    auto ku = FieldDescriptor::rational_functions(GF(2), "u");
    GroupContext gl2(GroupKind::GL, 2, ku);
    Matrix t(ku, 2, 2);
    t.at(0, 1) = FieldElement::variable(ku);
    t.at(1, 0) = FieldElement::one(ku);
    auto ms = module_structure(bracket_closure(gl2, {t}));
    CHECK_FALSE(ms.radical);
    CHECK(is_irreducible_module(ms).value == Tri::True);
    CHECK_FALSE(is_absolutely_irreducible_module(ms));
    CHECK(ms.hull_span.dim() == 2);
    CHECK(is_semisimple_module(ms).value == Tri::True);

    // adjoin the square root w of u: the same matrix becomes reducible,
    // not semisimple, and indecomposable
    Polynomial mod(ku, {FieldElement::variable(ku), FieldElement::zero(ku), FieldElement::one(ku)});
    auto kw = FieldDescriptor::simple_extension(ku, mod, "w");
    GroupContext gl2w(GroupKind::GL, 2, kw);
    Matrix tw(kw, 2, 2);
    tw.at(0, 1) = FieldElement::embed(kw, FieldElement::variable(ku));
    tw.at(1, 0) = FieldElement::one(kw);
    auto msw = module_structure(bracket_closure(gl2w, {tw}));
    auto irr = is_irreducible_module(msw);
    CHECK(irr.value == Tri::False);
    REQUIRE(irr.invariant_subspace);
    CHECK(subspace_invariant(msw.acting, *irr.invariant_subspace));
    CHECK(is_semisimple_module(msw).value == Tri::False);
    CHECK(is_indecomposable_module(msw).value == Tri::True);
}

TEST_CASE("absolute irreducibility via the hull dimension") {
    // PGL_2 over GF(2): the lift of <e,f> spans all of M_2
    auto f2 = GF(2);
    GroupContext pgl2(GroupKind::PGL, 2, f2);
    auto ms = module_structure(bracket_closure(pgl2, {E(f2, 2, 0, 1), E(f2, 2, 1, 0)}));
    CHECK(ms.hull_span.dim() == 4);
    CHECK(is_absolutely_irreducible_module(ms));
    CHECK(is_irreducible_module(ms).value == Tri::True);

    // <E12> in gl_2(Q) is reducible with <e1> invariant
    GroupContext gl2(GroupKind::GL, 2, Q());
    auto nil = module_structure(bracket_closure(gl2, {E(Q(), 2, 0, 1)}));
    auto irr = is_irreducible_module(nil);
    CHECK(irr.value == Tri::False);
    REQUIRE(irr.invariant_subspace);
    Subspace e1 = Subspace::span(Q(), 2, {{FieldElement::one(Q()), FieldElement::zero(Q())}});
    CHECK(*irr.invariant_subspace == e1);
    CHECK_FALSE(is_absolutely_irreducible_module(nil));
}

TEST_CASE("random finite modules: radical invariants and the semisimplicity oracle") {
    struct Conf {
        long p;
        int n;
    };
    for (Conf conf : {Conf{3, 2}, Conf{2, 3}}) {
        auto f = GF(conf.p);
        GroupContext ctx(GroupKind::GL, conf.n, f);
        Rng rng(23 + conf.p);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<Matrix> gens = {random_matrix(rng, f, conf.n)};
            if (rng.uniform(0, 1)) gens.push_back(random_matrix(rng, f, conf.n));
            auto h = bracket_closure(ctx, gens);
            auto ms = module_structure(h);
            REQUIRE(ms.radical);
            // external re-checks of the radical invariants
            CHECK(spans_nilpotent(f, conf.n, *ms.radical));
            Subspace rspan = matrix_span(f, conf.n, conf.n, *ms.radical);
            for (const auto& a : ms.hull)
                for (const auto& x : *ms.radical) {
                    CHECK(rspan.contains_vector((a * x).flatten()));
                    CHECK(rspan.contains_vector((x * a).flatten()));
                }
            auto ss = is_semisimple_module(ms);
            CHECK(ss.value == (ms.radical->empty() ? Tri::True : Tri::False));
            CHECK(ss.value == (brute_semisimple(f, conf.n, ms.acting) ? Tri::True : Tri::False));
            // semisimple iff the radical series is trivial
            REQUIRE(ms.series);
            CHECK((ss.value == Tri::True) == ms.series->steps().empty());
            // absolute irreducibility implies irreducibility implies semisimplicity
            auto irr = is_irreducible_module(ms);
            if (is_absolutely_irreducible_module(ms)) CHECK(irr.value == Tri::True);
            if (irr.value == Tri::True) CHECK(ss.value == Tri::True);
            if (irr.value == Tri::False) {
                REQUIRE(irr.invariant_subspace);
                CHECK(irr.invariant_subspace->dim() > 0);
                CHECK(irr.invariant_subspace->dim() < conf.n);
                CHECK(subspace_invariant(ms.acting, *irr.invariant_subspace));
            }
        }
    }
}

TEST_CASE("hom_space and module_iso_witness spec examples") {
    GroupContext gl2(GroupKind::GL, 2, Q());
    // identity intertwiner
    auto w0 = module_iso_witness(gl2, {E(Q(), 2, 0, 1)}, {E(Q(), 2, 0, 1)});
    REQUIRE(w0.value == Tri::True);
    REQUIRE(w0.witness);
    CHECK(*w0.witness * E(Q(), 2, 0, 1) == E(Q(), 2, 0, 1) * *w0.witness);
    CHECK(matrix_inverse(*w0.witness));

    // swapped diagonals are conjugate by a permutation
    auto w1 = module_iso_witness(gl2, {M(Q(), {{1, 0}, {0, 2}})}, {M(Q(), {{2, 0}, {0, 1}})});
    REQUIRE(w1.value == Tri::True);
    REQUIRE(w1.witness);
    CHECK(*w1.witness * M(Q(), {{1, 0}, {0, 2}}) == M(Q(), {{2, 0}, {0, 1}}) * *w1.witness);
    CHECK(matrix_inverse(*w1.witness));

    // non-conjugate: E12 against the zero tuple, decided by the grid sweep
    auto w2 = module_iso_witness(gl2, {E(Q(), 2, 0, 1)}, {Matrix(Q(), 2, 2)});
    CHECK(w2.value == Tri::False);

    // empty tuples
    auto w3 = module_iso_witness(gl2, {}, {});
    CHECK(w3.value == Tri::True);

    // finite exhaustive path
    GroupContext gl2f(GroupKind::GL, 2, GF(2));
    auto f2 = GF(2);
    auto w4 = module_iso_witness(gl2f, {E(f2, 2, 0, 1)}, {E(f2, 2, 1, 0)});
    REQUIRE(w4.value == Tri::True);
    REQUIRE(w4.witness);
    CHECK(*w4.witness * E(f2, 2, 0, 1) == E(f2, 2, 1, 0) * *w4.witness);
}

TEST_CASE("module_iso_witness on two semisimplifications of the same line") {
    // h = <diag(1,1,0)+E12> in gl_3(Q); two complete invariant flags give the
    // same limit image, so the tuple images are conjugate
    GroupContext gl3(GroupKind::GL, 3, Q());
    Matrix x = M(Q(), {{1, 1, 0}, {0, 1, 0}, {0, 0, 0}});
    auto vec = [&](std::vector<long> v) {
        std::vector<FieldElement> r;
        for (long c : v) r.push_back(FieldElement::from_integer(Q(), c));
        return r;
    };
    Flag f1(Q(), 3, {Subspace::span(Q(), 3, {vec({1, 0, 0})}),
                     Subspace::span(Q(), 3, {vec({1, 0, 0}), vec({0, 1, 0})})});
    Flag f2(Q(), 3, {Subspace::span(Q(), 3, {vec({0, 0, 1})}),
                     Subspace::span(Q(), 3, {vec({1, 0, 0}), vec({0, 0, 1})})});
    Cocharacter l1 = flag_cocharacter(gl3, f1);
    Cocharacter l2 = flag_cocharacter(gl3, f2);
    Matrix y1 = l1.limit(x);
    Matrix y2 = l2.limit(x);
    CHECK(y1 == M(Q(), {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
    CHECK(y1 == y2);
    auto w = module_iso_witness(gl3, {y1}, {y2});
    REQUIRE(w.value == Tri::True);
    REQUIRE(w.witness);
    CHECK(*w.witness * y1 == y2 * *w.witness);
}

TEST_CASE("module_iso_witness in SL contexts") {
    GroupContext sl2(GroupKind::SL, 2, Q());
    // determinant-1 witness exists
    auto w0 = module_iso_witness(sl2, {E(Q(), 2, 0, 1)}, {E(Q(), 2, 0, 1)});
    REQUIRE(w0.value == Tri::True);
    REQUIRE(w0.witness);
    CHECK_FALSE(w0.gl_only);
    CHECK(determinant(*w0.witness).is_one());

    // E12 vs 2*E12: conjugate in GL_2(Q) but not in SL_2(Q)
    Matrix two_e12 = E(Q(), 2, 0, 1).scale(FieldElement::from_integer(Q(), 2));
    auto w1 = module_iso_witness(sl2, {E(Q(), 2, 0, 1)}, {two_e12});
    REQUIRE(w1.value == Tri::True);
    REQUIRE(w1.witness);
    CHECK(w1.gl_only);
    CHECK(*w1.witness * E(Q(), 2, 0, 1) == two_e12 * *w1.witness);
}

TEST_CASE("module_iso_witness projective fallback for PGL") {
    // E11 and 2*E11 are the canonical representatives of cosets conjugate by
    // the swap, with no strict intertwiner between the representatives
    auto f3 = GF(3);
    GroupContext pgl2(GroupKind::PGL, 2, f3);
    Matrix x = E(f3, 2, 0, 0);
    Matrix y = x.scale(FieldElement::from_integer(f3, 2));
    auto w = module_iso_witness(pgl2, {x}, {y});
    REQUIRE(w.value == Tri::True);
    REQUIRE(w.witness);
    Matrix g = *w.witness;
    Matrix gi = *matrix_inverse(g);
    CHECK(pgl2.canonicalize(g * x * gi) == pgl2.canonicalize(y));

    // genuinely non-conjugate classes stay non-conjugate
    auto w2 = module_iso_witness(pgl2, {E(f3, 2, 0, 1)}, {Matrix(f3, 2, 2)});
    CHECK(w2.value == Tri::False);
}

TEST_CASE("is_indecomposable_module") {
    // sl_2 natural module over Q: endomorphisms are scalars
    GroupContext gl2(GroupKind::GL, 2, Q());
    auto sl2 = module_structure(
        bracket_closure(gl2, {E(Q(), 2, 0, 1), E(Q(), 2, 1, 0)}));
    CHECK(is_indecomposable_module(sl2).value == Tri::True);

    // split diagonal: decomposable, with an explicit idempotent
    auto diag = module_structure(bracket_closure(gl2, {M(Q(), {{1, 0}, {0, 2}})}));
    auto r = is_indecomposable_module(diag);
    CHECK(r.value == Tri::False);
    REQUIRE(r.idempotent);
    const Matrix& e = *r.idempotent;
    CHECK(e * e == e);
    CHECK_FALSE(e.is_zero());
    CHECK(e != Matrix::identity(Q(), 2));
    for (const auto& a : diag.acting) CHECK(a * e == e * a);

    // finite exhaustive path: <E12> over GF(2) is uniserial
    auto f2 = GF(2);
    GroupContext gl2f(GroupKind::GL, 2, f2);
    auto nil = module_structure(bracket_closure(gl2f, {E(f2, 2, 0, 1)}));
    CHECK(is_indecomposable_module(nil).value == Tri::True);

    // finite decomposable
    auto f5 = GF(5);
    GroupContext gl2f5(GroupKind::GL, 2, f5);
    auto d5 = module_structure(bracket_closure(gl2f5, {M(f5, {{1, 0}, {0, 2}})}));
    auto r5 = is_indecomposable_module(d5);
    CHECK(r5.value == Tri::False);
    REQUIRE(r5.idempotent);
    CHECK(*r5.idempotent * *r5.idempotent == *r5.idempotent);
}

TEST_CASE("minpoly_primary classification") {
    auto X = poly_x(Q());
    auto lin = Polynomial(Q(), {FieldElement::from_integer(Q(), -1), FieldElement::one(Q())});
    // (X-1)^2: primary
    CHECK(minpoly_primary(poly_mul(lin, lin)) == Tri::True);
    // X(X-1): split
    CHECK(minpoly_primary(poly_mul(X, lin)) == Tri::False);
    // X^2+1 over Q: irreducible
    CHECK(minpoly_primary(Polynomial(Q(), {FieldElement::one(Q()), FieldElement::zero(Q()),
                                           FieldElement::one(Q())})) == Tri::True);
    // X^2+X+1 over GF(2): irreducible
    auto f2 = GF(2);
    CHECK(minpoly_primary(Polynomial(f2, {FieldElement::one(f2), FieldElement::one(f2),
                                          FieldElement::one(f2)})) == Tri::True);
    // X^2+X over GF(2): split
    CHECK(minpoly_primary(Polynomial(f2, {FieldElement::zero(f2), FieldElement::one(f2),
                                          FieldElement::one(f2)})) == Tri::False);
}
