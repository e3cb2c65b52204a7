#ifndef LIEGCR_LIEALG_HPP
#define LIEGCR_LIEALG_HPP

// Lie subalgebras of gl_n / sl_n / pgl_n: bracket closure, associative hulls,
// derived/lower-central series, Engel triangularization, centralizers and
// normalizers, the char-0 solvable radical, c_lambda on subalgebras, and the
// PGL -> GL lift.

#include <optional>
#include <vector>

#include "field.hpp"
#include "groupctx.hpp"
#include "linalg.hpp"

namespace liegcr {

// Lie(G) as a subspace of the n^2 coordinate space (canonical PGL reps form
// the hyperplane with vanishing (n,n) entry)
inline Subspace context_subspace(const GroupContext& ctx) {
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    if (ctx.kind() == GroupKind::GL) return Subspace::full(f, n * n);
    Matrix cond(f, 1, n * n);
    if (ctx.kind() == GroupKind::SL) {
        for (int i = 0; i < n; ++i) cond.at(0, i * n + i) = FieldElement::one(f);
    } else {
        cond.at(0, n * n - 1) = FieldElement::one(f);
    }
    auto sol = solve_linear(cond, {FieldElement::zero(f)});
    return Subspace::span(f, n * n, sol->kernel);
}

class LieSubalgebra {
public:
    LieSubalgebra() = default;

    // span must already be bracket-closed (checked)
    LieSubalgebra(const GroupContext& ctx, Subspace span, std::vector<Matrix> generators)
        : ctx_(ctx), span_(std::move(span)), generators_(std::move(generators)) {
        basis_ = span_basis_matrices(span_, ctx.n(), ctx.n());
        for (const auto& b : basis_)
            if (!ctx_.in_lie_algebra(b)) throw FieldError("basis element outside Lie(G)");
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = i + 1; j < basis_.size(); ++j)
                if (!contains(bracket(basis_[i], basis_[j])))
                    throw FieldError("subalgebra span is not bracket-closed");
    }

    const GroupContext& context() const { return ctx_; }
    const std::vector<Matrix>& basis() const { return basis_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    const Subspace& span() const { return span_; }
    int dim() const { return span_.dim(); }

    bool contains(const Matrix& x) const {
        return span_.contains_vector(ctx_.canonicalize(x).flatten());
    }
    bool contains_algebra(const LieSubalgebra& o) const { return span_.contains(o.span_); }
    bool same_span(const LieSubalgebra& o) const { return span_ == o.span_; }

    bool is_abelian() const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = i + 1; j < basis_.size(); ++j) {
                Matrix br = ctx_.canonicalize(bracket(basis_[i], basis_[j]));
                if (!br.is_zero()) return false;
            }
        return true;
    }

    // [x, h] ⊆ h for every basis element x of `ideal`, and ideal ⊆ h
    bool has_ideal(const LieSubalgebra& ideal) const {
        if (!contains_algebra(ideal)) return false;
        for (const auto& x : ideal.basis())
            for (const auto& b : basis_)
                if (!ideal.contains(bracket(x, b))) return false;
        return true;
    }

private:
    GroupContext ctx_;
    Subspace span_;
    std::vector<Matrix> basis_;
    std::vector<Matrix> generators_;
};

inline LieSubalgebra bracket_closure(const GroupContext& ctx, std::vector<Matrix> gens) {
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    for (auto& g : gens) {
        g = ctx.canonicalize(g);
        if (!ctx.in_lie_algebra(g)) throw FieldError("generator outside Lie(G)");
    }
    std::vector<Matrix> cur = gens;
    Subspace span = matrix_span(f, n, n, cur);
    while (true) {
        std::vector<Matrix> basis = span_basis_matrices(span, n, n);
        std::vector<Matrix> next = basis;
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = i + 1; j < basis.size(); ++j)
                next.push_back(ctx.canonicalize(bracket(basis[i], basis[j])));
        Subspace bigger = matrix_span(f, n, n, next);
        if (bigger.dim() == span.dim()) break;
        span = bigger;
    }
    return LieSubalgebra(ctx, span, std::move(gens));
}

inline LieSubalgebra subalgebra_from_span(const GroupContext& ctx, const Subspace& span) {
    return LieSubalgebra(ctx, span, span_basis_matrices(span, ctx.n(), ctx.n()));
}

// smallest associative matrix algebra containing the given matrices
// (optionally together with I); GL-side computation
inline std::vector<Matrix> associative_hull(const FieldPtr& f, int n,
                                            const std::vector<Matrix>& mats,
                                            bool include_identity) {
    std::vector<Matrix> start = mats;
    if (include_identity) start.push_back(Matrix::identity(f, n));
    Subspace span = matrix_span(f, n, n, start);
    while (true) {
        std::vector<Matrix> basis = span_basis_matrices(span, n, n);
        std::vector<Matrix> next = basis;
        for (const auto& a : basis)
            for (const auto& b : basis) next.push_back(a * b);
        Subspace bigger = matrix_span(f, n, n, next);
        if (bigger.dim() == span.dim()) return basis;
        span = bigger;
    }
}

struct StructuralSeries {
    std::vector<LieSubalgebra> derived;        // h ⊇ [h,h] ⊇ ..., until stable
    std::vector<LieSubalgebra> lower_central;  // h ⊇ [h,h] ⊇ [h,[h,h]] ⊇ ...
    LieSubalgebra center;
    bool solvable = false;
    bool nilpotent = false;
};

inline LieSubalgebra derived_subalgebra(const LieSubalgebra& h, const LieSubalgebra& of) {
    // span of [h, of]
    const GroupContext& ctx = h.context();
    std::vector<Matrix> brs;
    for (const auto& a : h.basis())
        for (const auto& b : of.basis()) brs.push_back(ctx.canonicalize(bracket(a, b)));
    Subspace span = matrix_span(ctx.field(), ctx.n(), ctx.n(), brs);
    return subalgebra_from_span(ctx, span);
}

inline StructuralSeries structural_series(const LieSubalgebra& h) {
    StructuralSeries out;
    out.derived.push_back(h);
    while (true) {
        const LieSubalgebra& last = out.derived.back();
        LieSubalgebra next = derived_subalgebra(last, last);
        if (next.dim() == last.dim()) break;
        out.derived.push_back(next);
        if (next.dim() == 0) break;
    }
    out.lower_central.push_back(h);
    while (true) {
        const LieSubalgebra& last = out.lower_central.back();
        LieSubalgebra next = derived_subalgebra(h, last);
        if (next.dim() == last.dim()) break;
        out.lower_central.push_back(next);
        if (next.dim() == 0) break;
    }
    out.solvable = out.derived.back().dim() == 0;
    out.nilpotent = out.lower_central.back().dim() == 0;

    // center: x ∈ h with [x, b] = 0 (in Lie(G)) for every basis b
    const GroupContext& ctx = h.context();
    const FieldPtr& f = ctx.field();
    int n = ctx.n(), d = h.dim();
    if (d == 0) {
        out.center = h;
        return out;
    }
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& b : h.basis()) {
        // condition on coordinates c of x = sum c_i basis_i:
        // canonicalize([x, b]) = 0 entrywise
        for (int e = 0; e < n * n; ++e) {
            std::vector<FieldElement> row;
            for (const auto& bi : h.basis()) {
                Matrix br = ctx.canonicalize(bracket(bi, b));
                row.push_back(br.flatten()[static_cast<std::size_t>(e)]);
            }
            rows.push_back(std::move(row));
        }
    }
    Matrix sys(f, static_cast<int>(rows.size()), d);
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < d; ++j) sys.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto sol = solve_linear(sys, std::vector<FieldElement>(rows.size(), FieldElement::zero(f)));
    std::vector<Matrix> cgens;
    for (const auto& c : sol->kernel) {
        Matrix x(f, n, n);
        for (int i = 0; i < d; ++i) {
            if (c[static_cast<std::size_t>(i)].is_zero()) continue;
            x = x + h.basis()[static_cast<std::size_t>(i)].scale(c[static_cast<std::size_t>(i)]);
        }
        cgens.push_back(x);
    }
    out.center = subalgebra_from_span(ctx, matrix_span(f, n, n, cgens));
    return out;
}

inline bool is_nilpotent_matrix(const Matrix& x) {
    Matrix p = x;
    for (int i = 1; i < x.rows(); ++i) p = p * x;
    return p.is_zero();
}

// iterated common kernels: W_1 = {v : b v = 0 ∀b}, W_{i+1} = {v : b v ⊆ W_i};
// when the chain reaches k^n, refine deterministically to a complete flag
// with h·V_i ⊆ V_{i-1}
inline std::optional<Flag> engel_triangularize(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    if (ctx.kind() == GroupKind::PGL)
        throw FieldError("engel_triangularize expects a GL/SL context");
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    for (const auto& b : h.basis())
        if (!is_nilpotent_matrix(b)) return std::nullopt;
    std::vector<Subspace> chain;  // W_1 ⊂ W_2 ⊂ ...
    Subspace cur(f, n);
    while (cur.dim() < n) {
        // next: {v : b v ∈ cur for all basis b}
        std::vector<std::vector<FieldElement>> rows;
        // annihilator of cur
        std::vector<std::vector<FieldElement>> ann;
        if (cur.dim() == 0) {
            for (int i = 0; i < n; ++i) {
                std::vector<FieldElement> y(static_cast<std::size_t>(n), FieldElement::zero(f));
                y[static_cast<std::size_t>(i)] = FieldElement::one(f);
                ann.push_back(std::move(y));
            }
        } else {
            Matrix bm(f, cur.dim(), n);
            for (int i = 0; i < cur.dim(); ++i)
                for (int j = 0; j < n; ++j)
                    bm.at(i, j) = cur.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            auto sol = solve_linear(bm, std::vector<FieldElement>(static_cast<std::size_t>(cur.dim()),
                                                                 FieldElement::zero(f)));
            ann = sol->kernel;
        }
        for (const auto& b : h.basis())
            for (const auto& y : ann) {
                std::vector<FieldElement> row(static_cast<std::size_t>(n), FieldElement::zero(f));
                for (int j = 0; j < n; ++j) {
                    FieldElement acc = FieldElement::zero(f);
                    for (int i = 0; i < n; ++i)
                        acc = acc + y[static_cast<std::size_t>(i)] * b.at(i, j);
                    row[static_cast<std::size_t>(j)] = acc;
                }
                rows.push_back(std::move(row));
            }
        Subspace next;
        if (rows.empty()) {
            next = Subspace::full(f, n);
        } else {
            Matrix sys(f, static_cast<int>(rows.size()), n);
            for (int i = 0; i < sys.rows(); ++i)
                for (int j = 0; j < n; ++j)
                    sys.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            auto sol = solve_linear(sys, std::vector<FieldElement>(rows.size(), FieldElement::zero(f)));
            next = Subspace::span(f, n, sol->kernel);
        }
        if (next.dim() <= cur.dim()) return std::nullopt;  // no common kernel vector
        if (next.dim() < n) chain.push_back(next);
        cur = next;
    }
    // refine into a complete flag: walk the chain, inserting one basis vector
    // at a time (first new RREF basis vector each step)
    std::vector<Subspace> complete;
    std::vector<std::vector<FieldElement>> sofar;
    chain.push_back(Subspace::full(f, n));
    for (const auto& step : chain) {
        for (const auto& cand : step.basis()) {
            Subspace cursp = Subspace::span(f, n, sofar);
            if (cursp.dim() == step.dim()) break;
            if (cursp.contains_vector(cand)) continue;
            sofar.push_back(cand);
            Subspace grown = Subspace::span(f, n, sofar);
            if (grown.dim() < n) complete.push_back(grown);
        }
    }
    return Flag(f, n, complete);
}

namespace detail {

// solution subspace of stacked entrywise conditions cond(x) = 0, where x runs
// over the n^2 coordinate space and each condition maps x to a matrix
template <typename Fn>
inline Subspace entrywise_kernel(const FieldPtr& f, int n, const std::vector<Matrix>& probes,
                                 Fn&& cond) {
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& p : probes) {
        // build the condition matrix column by column on unit matrices
        std::vector<std::vector<FieldElement>> cols;
        for (int u = 0; u < n * n; ++u) {
            Matrix e(f, n, n);
            e.at(u / n, u % n) = FieldElement::one(f);
            cols.push_back(cond(e, p));
        }
        std::size_t out_dim = cols[0].size();
        for (std::size_t r = 0; r < out_dim; ++r) {
            std::vector<FieldElement> row;
            row.reserve(static_cast<std::size_t>(n * n));
            for (int u = 0; u < n * n; ++u) row.push_back(cols[static_cast<std::size_t>(u)][r]);
            rows.push_back(std::move(row));
        }
    }
    if (rows.empty()) return Subspace::full(f, n * n);
    Matrix sys(f, static_cast<int>(rows.size()), n * n);
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < n * n; ++j)
            sys.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto sol = solve_linear(sys, std::vector<FieldElement>(rows.size(), FieldElement::zero(f)));
    return Subspace::span(f, n * n, sol->kernel);
}

}  // namespace detail

// c_g(h) = {x ∈ Lie(G) : [x, y] = 0 for all y ∈ h}
inline LieSubalgebra centralizer_in_g(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    Subspace sol = detail::entrywise_kernel(
        f, n, h.basis(), [&](const Matrix& x, const Matrix& b) {
            return ctx.canonicalize(bracket(x, b)).flatten();
        });
    sol = subspace_intersect(sol, context_subspace(ctx));
    return subalgebra_from_span(ctx, sol);
}

// n_g(h) = {x ∈ Lie(G) : [x, h] ⊆ h}
inline LieSubalgebra normalizer_in_g(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    // annihilator of span(h) in the n^2 coordinates
    std::vector<std::vector<FieldElement>> ann;
    if (h.dim() == 0) {
        ann.clear();
    } else {
        Matrix bm(f, h.dim(), n * n);
        for (int i = 0; i < h.dim(); ++i)
            for (int j = 0; j < n * n; ++j)
                bm.at(i, j) = h.span().basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        auto s = solve_linear(bm, std::vector<FieldElement>(static_cast<std::size_t>(h.dim()),
                                                           FieldElement::zero(f)));
        ann = s->kernel;
    }
    Subspace sol = h.dim() == 0
                       ? Subspace::full(f, n * n)
                       : detail::entrywise_kernel(
                             f, n, h.basis(), [&](const Matrix& x, const Matrix& b) {
                                 auto v = ctx.canonicalize(bracket(x, b)).flatten();
                                 std::vector<FieldElement> out;
                                 for (const auto& y : ann) {
                                     FieldElement acc = FieldElement::zero(f);
                                     for (int t = 0; t < n * n; ++t)
                                         acc = acc + y[static_cast<std::size_t>(t)] *
                                                         v[static_cast<std::size_t>(t)];
                                     out.push_back(acc);
                                 }
                                 return out;
                             });
    sol = subspace_intersect(sol, context_subspace(ctx));
    return subalgebra_from_span(ctx, sol);
}

// matrices of ad_h(basis_i) in h's own basis coordinates
inline std::vector<Matrix> adjoint_matrices(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    const FieldPtr& f = ctx.field();
    int n = ctx.n(), d = h.dim();
    std::vector<Matrix> ads;
    if (d == 0) return ads;
    // coordinates of a matrix in the basis of h: solve against basis span
    Matrix basis_mat(f, n * n, d);
    for (int j = 0; j < d; ++j) {
        auto flat = h.basis()[static_cast<std::size_t>(j)].flatten();
        for (int i = 0; i < n * n; ++i) basis_mat.at(i, j) = flat[static_cast<std::size_t>(i)];
    }
    auto coords = [&](const Matrix& x) {
        auto sol = solve_linear(basis_mat, x.flatten());
        if (!sol) throw FieldError("element not in subalgebra");
        return sol->particular;
    };
    for (int i = 0; i < d; ++i) {
        Matrix ad(f, d, d);
        for (int j = 0; j < d; ++j) {
            Matrix br = ctx.canonicalize(bracket(h.basis()[static_cast<std::size_t>(i)],
                                                 h.basis()[static_cast<std::size_t>(j)]));
            auto c = coords(br);
            for (int t = 0; t < d; ++t) ad.at(t, j) = c[static_cast<std::size_t>(t)];
        }
        ads.push_back(std::move(ad));
    }
    return ads;
}

// rad(h) over characteristic 0, by the trace-form characterization:
// {x ∈ h : trace(ad x · ad y) = 0 for all y ∈ [h,h]}
inline LieSubalgebra solvable_radical_char0(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    const FieldPtr& f = ctx.field();
    if (f->characteristic() != 0)
        throw CapabilityError("solvable radical computation requires characteristic 0");
    int n = ctx.n(), d = h.dim();
    if (d == 0) return h;
    std::vector<Matrix> ads = adjoint_matrices(h);
    LieSubalgebra der = derived_subalgebra(h, h);
    // ad of an arbitrary derived-algebra element: express via coordinates
    Matrix basis_mat(f, n * n, d);
    for (int j = 0; j < d; ++j) {
        auto flat = h.basis()[static_cast<std::size_t>(j)].flatten();
        for (int i = 0; i < n * n; ++i) basis_mat.at(i, j) = flat[static_cast<std::size_t>(i)];
    }
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& y : der.basis()) {
        auto cy = solve_linear(basis_mat, y.flatten());
        Matrix ady(f, d, d);
        for (int i = 0; i < d; ++i)
            if (!cy->particular[static_cast<std::size_t>(i)].is_zero())
                ady = ady + ads[static_cast<std::size_t>(i)].scale(cy->particular[static_cast<std::size_t>(i)]);
        std::vector<FieldElement> row;
        for (int i = 0; i < d; ++i) row.push_back((ads[static_cast<std::size_t>(i)] * ady).trace());
        rows.push_back(std::move(row));
    }
    Subspace radc;
    if (rows.empty()) {
        radc = Subspace::full(f, d);
    } else {
        Matrix sys(f, static_cast<int>(rows.size()), d);
        for (int i = 0; i < sys.rows(); ++i)
            for (int j = 0; j < d; ++j)
                sys.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        auto sol = solve_linear(sys, std::vector<FieldElement>(rows.size(), FieldElement::zero(f)));
        radc = Subspace::span(f, d, sol->kernel);
    }
    std::vector<Matrix> gens;
    for (const auto& c : radc.basis()) {
        Matrix x(f, n, n);
        for (int i = 0; i < d; ++i)
            if (!c[static_cast<std::size_t>(i)].is_zero())
                x = x + h.basis()[static_cast<std::size_t>(i)].scale(c[static_cast<std::size_t>(i)]);
        gens.push_back(x);
    }
    LieSubalgebra rad = subalgebra_from_span(ctx, matrix_span(f, n, n, gens));
    if (!structural_series(rad).solvable)
        throw FieldError("internal: radical candidate not solvable");
    if (!h.has_ideal(rad)) throw FieldError("internal: radical candidate not an ideal");
    return rad;
}

// image of h under c_lambda; requires h ⊆ Lie(P_lambda)
inline LieSubalgebra c_lambda(const Cocharacter& lam, const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    std::vector<Matrix> images;
    for (const auto& b : h.basis()) {
        if (!lam.limit_exists(b))
            throw FieldError("subalgebra is not contained in Lie(P_lambda)");
        images.push_back(lam.limit(b));
    }
    Subspace span = matrix_span(ctx.field(), ctx.n(), ctx.n(), images);
    LieSubalgebra out(ctx, span, images);  // constructor asserts bracket closure
    return out;
}

// full preimage of a pgl_n subalgebra in gl_n: representatives together
// with the scalars
inline LieSubalgebra pgl_lift(const LieSubalgebra& hbar) {
    const GroupContext& pctx = hbar.context();
    if (pctx.kind() != GroupKind::PGL) throw FieldError("pgl_lift expects a PGL context");
    GroupContext glctx(GroupKind::GL, pctx.n(), pctx.field());
    std::vector<Matrix> gens = hbar.basis();
    gens.push_back(Matrix::identity(pctx.field(), pctx.n()));
    return bracket_closure(glctx, gens);
}

}  // namespace liegcr

#endif  // LIEGCR_LIEALG_HPP
