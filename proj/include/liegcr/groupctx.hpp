#ifndef LIEGCR_GROUPCTX_HPP
#define LIEGCR_GROUPCTX_HPP

// Ambient reductive groups GL_n / SL_n / PGL_n over an exact field:
// membership in Lie(G), cocharacters as weighted frames, Lie algebras of
// parabolic and Levi subgroups attached to flags and splittings, limits and
// the projection c_lambda, and flag opposition.

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "field.hpp"
#include "linalg.hpp"

namespace liegcr {

enum class GroupKind { GL, SL, PGL };

enum class RadicalAlgorithm { Dickson, FiniteField, None };

struct CapabilityProfile {
    bool char0_criteria_enabled = false;
    RadicalAlgorithm radical_algorithm = RadicalAlgorithm::None;
    bool perfect = false;
};

class GroupContext {
public:
    GroupContext() = default;
    GroupContext(GroupKind kind, int n, FieldPtr field)
        : kind_(kind), n_(n), field_(std::move(field)) {
        if (n_ < 2) throw FieldError("group rank n must be >= 2");
    }

    GroupKind kind() const { return kind_; }
    int n() const { return n_; }
    const FieldPtr& field() const { return field_; }

    int lie_dim() const { return kind_ == GroupKind::GL ? n_ * n_ : n_ * n_ - 1; }

    CapabilityProfile capabilities() const {
        CapabilityProfile cp;
        cp.perfect = field_->is_perfect();
        if (field_->kind() == FieldKind::Rationals) {
            cp.char0_criteria_enabled = true;
            cp.radical_algorithm = RadicalAlgorithm::Dickson;
        } else if (field_->is_finite()) {
            cp.radical_algorithm = RadicalAlgorithm::FiniteField;
        }
        return cp;
    }

    // canonical coset representative in pgl_n: subtract the (n,n) entry
    // times the identity, which is characteristic-independent
    Matrix canonicalize(const Matrix& x) const {
        if (kind_ != GroupKind::PGL) return x;
        Matrix out = x;
        FieldElement c = x.at(n_ - 1, n_ - 1);
        if (!c.is_zero())
            for (int i = 0; i < n_; ++i) out.at(i, i) = out.at(i, i) - c;
        return out;
    }

    bool in_lie_algebra(const Matrix& x) const {
        if (x.rows() != n_ || x.cols() != n_) return false;
        switch (kind_) {
            case GroupKind::GL: return true;
            case GroupKind::SL: return x.trace().is_zero();
            case GroupKind::PGL: return x.at(n_ - 1, n_ - 1).is_zero();
        }
        return false;
    }

    bool same_as(const GroupContext& o) const {
        return kind_ == o.kind_ && n_ == o.n_ && field_->same_as(*o.field_);
    }

    std::string name() const {
        std::string base = kind_ == GroupKind::GL ? "GL" : kind_ == GroupKind::SL ? "SL" : "PGL";
        return base + "_" + std::to_string(n_) + "(" + field_->name() + ")";
    }

private:
    GroupKind kind_ = GroupKind::GL;
    int n_ = 2;
    FieldPtr field_;
};

// lambda(a) = frame · diag(a^{w_1},...,a^{w_n}) · frame^{-1}, weights
// non-increasing in frame order; ties define the Levi blocks
class Cocharacter {
public:
    Cocharacter() = default;
    Cocharacter(const GroupContext& ctx, Matrix frame, std::vector<long> weights)
        : ctx_(ctx), frame_(std::move(frame)), weights_(std::move(weights)) {
        if (frame_.rows() != ctx.n() || frame_.cols() != ctx.n())
            throw FieldError("cocharacter frame has wrong shape");
        if (static_cast<int>(weights_.size()) != ctx.n())
            throw FieldError("cocharacter needs one weight per row");
        for (std::size_t i = 1; i < weights_.size(); ++i)
            if (weights_[i] > weights_[i - 1])
                throw FieldError("cocharacter weights must be non-increasing");
        if (ctx.kind() == GroupKind::SL &&
            std::accumulate(weights_.begin(), weights_.end(), 0L) != 0)
            throw FieldError("SL cocharacter weights must sum to zero");
        auto inv = matrix_inverse(frame_);
        if (!inv) throw FieldError("cocharacter frame must be invertible");
        frame_inv_ = std::move(*inv);
    }

    static Cocharacter central(const GroupContext& ctx) {
        long w = ctx.kind() == GroupKind::SL ? 0 : 0;
        return Cocharacter(ctx, Matrix::identity(ctx.field(), ctx.n()),
                           std::vector<long>(static_cast<std::size_t>(ctx.n()), w));
    }

    const GroupContext& context() const { return ctx_; }
    const Matrix& frame() const { return frame_; }
    const Matrix& frame_inverse() const { return frame_inv_; }
    const std::vector<long>& weights() const { return weights_; }

    bool is_central() const {
        for (std::size_t i = 1; i < weights_.size(); ++i)
            if (weights_[i] != weights_[0]) return false;
        return true;
    }

    // weight-component decomposition of x under conjugation by lambda(a):
    // entry (i,j) in the frame basis scales by a^(w_i - w_j)
    struct WeightParts {
        Matrix negative, zero, positive;  // sums of components by weight sign
    };
    WeightParts decompose(const Matrix& x) const {
        const FieldPtr& f = ctx_.field();
        int n = ctx_.n();
        Matrix y = frame_inv_ * x * frame_;
        Matrix neg(f, n, n), zer(f, n, n), pos(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long w = weights_[static_cast<std::size_t>(i)] - weights_[static_cast<std::size_t>(j)];
                (w < 0 ? neg : w == 0 ? zer : pos).at(i, j) = y.at(i, j);
            }
        return WeightParts{frame_ * neg * frame_inv_, frame_ * zer * frame_inv_,
                           frame_ * pos * frame_inv_};
    }

    // x ∈ Lie(P_lambda) iff the limit of lambda(a)·x·lambda(a)^{-1} exists
    // as a → 0; PGL classes are tested through any representative (scalars
    // have weight zero, so this is well defined on cosets)
    bool limit_exists(const Matrix& x) const { return decompose(x).negative.is_zero(); }

    // limit = c_lambda(x) = weight-zero part; error when it does not exist
    Matrix limit(const Matrix& x) const {
        WeightParts p = decompose(x);
        if (!p.negative.is_zero()) throw FieldError("limit does not exist: negative weight component");
        return ctx_.canonicalize(p.zero);
    }

    // Lie(P_lambda), Lie(L_lambda), Lie(R_u(P_lambda)) as subspaces of the
    // n^2 coordinate space of canonical representatives
    Subspace lie_p() const { return weight_subspace(0, true); }
    Subspace lie_l() const { return weight_subspace(0, false); }
    Subspace lie_ru() const { return weight_subspace(1, true); }

private:
    Subspace weight_subspace(int min_sign, bool allow_above) const {
        // min_sign 0 + allow_above: weights >= 0 (parabolic)
        // min_sign 0 + !allow_above: weight exactly 0 (Levi)
        // min_sign 1: weights > 0 (unipotent radical)
        const FieldPtr& f = ctx_.field();
        int n = ctx_.n();
        std::vector<Matrix> gens;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long w = weights_[static_cast<std::size_t>(i)] - weights_[static_cast<std::size_t>(j)];
                bool ok = allow_above ? (w >= min_sign) : (w == 0);
                if (!ok) continue;
                Matrix e(f, n, n);
                e.at(i, j) = FieldElement::one(f);
                Matrix g = frame_ * e * frame_inv_;
                if (ctx_.kind() == GroupKind::SL && !g.trace().is_zero()) {
                    // diagonal units need the traceless combination; handled
                    // below by intersecting with the trace-zero hyperplane
                }
                gens.push_back(g);
            }
        Subspace s = matrix_span(f, n, n, gens);
        if (ctx_.kind() == GroupKind::SL) {
            // intersect with trace-zero hyperplane
            std::vector<std::vector<FieldElement>> rows;
            Matrix tracerow(f, 1, n * n);
            for (int i = 0; i < n; ++i) tracerow.at(0, i * n + i) = FieldElement::one(f);
            // kernel of the trace functional
            auto sol = solve_linear(tracerow, {FieldElement::zero(f)});
            Subspace h = Subspace::span(f, n * n, sol->kernel);
            s = subspace_intersect(s, h);
        } else if (ctx_.kind() == GroupKind::PGL) {
            std::vector<Matrix> canon;
            for (const auto& m : span_basis_matrices(s, n, n))
                canon.push_back(ctx_.canonicalize(m));
            s = matrix_span(f, n, n, canon);
        }
        return s;
    }

    GroupContext ctx_;
    Matrix frame_, frame_inv_;
    std::vector<long> weights_;
};

// cocharacter adapted to a flag: constant weight on each layer of the
// flag-adapted basis, strictly decreasing from the first step outward
// (weights r, r-1, ..., 0); SL weights are recentred to sum zero
inline Cocharacter flag_cocharacter(const GroupContext& ctx, const Flag& fl) {
    int n = ctx.n();
    Matrix frame = flag_adapted_basis(fl);
    std::vector<long> weights;
    std::vector<int> dims = fl.dims();
    dims.push_back(n);
    long w = static_cast<long>(dims.size()) - 1;
    int prev = 0;
    for (int d : dims) {
        for (int i = prev; i < d; ++i) weights.push_back(w);
        --w;
        prev = d;
    }
    if (ctx.kind() == GroupKind::SL) {
        long total = std::accumulate(weights.begin(), weights.end(), 0L);
        for (auto& x : weights) x = x * n - total;
    }
    return Cocharacter(ctx, std::move(frame), std::move(weights));
}

namespace detail {

// linear conditions "A maps every subspace in `parts` into itself",
// solved in the n^2 coordinates of A
inline Subspace stabilizer_algebra(const FieldPtr& f, int n, const std::vector<Subspace>& parts) {
    std::vector<std::vector<FieldElement>> cond_rows;
    for (const auto& v : parts) {
        if (v.dim() == 0 || v.dim() == n) continue;
        // annihilator of V: y with y·v = 0 for all v in V
        Matrix b(f, v.dim(), n);
        for (int i = 0; i < v.dim(); ++i)
            for (int j = 0; j < n; ++j)
                b.at(i, j) = v.basis()[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        auto sol = solve_linear(b, std::vector<FieldElement>(static_cast<std::size_t>(v.dim()),
                                                            FieldElement::zero(f)));
        for (const auto& y : sol->kernel)
            for (const auto& vb : v.basis()) {
                // condition sum_{i,j} y_i A_{ij} v_j = 0
                std::vector<FieldElement> row(static_cast<std::size_t>(n * n),
                                              FieldElement::zero(f));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        row[static_cast<std::size_t>(i * n + j)] =
                            y[static_cast<std::size_t>(i)] * vb[static_cast<std::size_t>(j)];
                cond_rows.push_back(std::move(row));
            }
    }
    if (cond_rows.empty()) return Subspace::full(f, n * n);
    Matrix sys(f, static_cast<int>(cond_rows.size()), n * n);
    for (int i = 0; i < sys.rows(); ++i)
        for (int j = 0; j < n * n; ++j)
            sys.at(i, j) = cond_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto sol = solve_linear(sys, std::vector<FieldElement>(cond_rows.size(),
                                                          FieldElement::zero(f)));
    return Subspace::span(f, n * n, sol->kernel);
}

inline Subspace restrict_to_context(const GroupContext& ctx, Subspace s) {
    const FieldPtr& f = ctx.field();
    int n = ctx.n();
    if (ctx.kind() == GroupKind::SL) {
        Matrix tracerow(f, 1, n * n);
        for (int i = 0; i < n; ++i) tracerow.at(0, i * n + i) = FieldElement::one(f);
        auto sol = solve_linear(tracerow, {FieldElement::zero(f)});
        s = subspace_intersect(s, Subspace::span(f, n * n, sol->kernel));
    } else if (ctx.kind() == GroupKind::PGL) {
        std::vector<Matrix> canon;
        for (const auto& m : span_basis_matrices(s, n, n)) canon.push_back(ctx.canonicalize(m));
        s = matrix_span(f, n, n, canon);
    }
    return s;
}

}  // namespace detail

// Lie(P_F): all of Lie(G) preserving every flag step (PGL: canonical coset
// image of the GL block algebra, which contains the scalars)
inline Subspace lie_parabolic(const GroupContext& ctx, const Flag& fl) {
    if (fl.ambient_dim() != ctx.n()) throw FieldError("flag does not match group rank");
    Subspace s = detail::stabilizer_algebra(ctx.field(), ctx.n(), fl.steps());
    return detail::restrict_to_context(ctx, s);
}

// Lie(L): all of Lie(G) preserving every summand of the splitting
inline Subspace lie_levi(const GroupContext& ctx, const std::vector<Subspace>& splitting) {
    int n = ctx.n();
    int total = 0;
    Subspace acc(ctx.field(), n);
    for (const auto& part : splitting) {
        if (part.ambient_dim() != n) throw FieldError("splitting part has wrong ambient");
        total += part.dim();
        acc = subspace_sum(acc, part);
    }
    if (total != n || acc.dim() != n)
        throw FieldError("splitting is not a direct sum decomposition of k^n");
    Subspace s = detail::stabilizer_algebra(ctx.field(), n, splitting);
    return detail::restrict_to_context(ctx, s);
}

// two flags are opposite iff their parabolics share a common Levi: detected
// by complementary dimension sequences plus the Levi-dimension intersection
// count
inline bool opposite_flags(const GroupContext& ctx, const Flag& a, const Flag& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw FieldError("opposite_flags: ambient mismatch");
    int n = ctx.n();
    std::vector<int> da = a.dims(), db = b.dims();
    std::vector<int> want;
    for (int d : da) want.push_back(n - d);
    std::sort(want.begin(), want.end());
    if (want != db) return false;
    // common block sizes from a's dimension sequence
    long levi_dim = 0;
    int prev = 0;
    std::vector<int> chain = da;
    chain.push_back(n);
    for (int d : chain) {
        long bsize = d - prev;
        levi_dim += bsize * bsize;
        prev = d;
    }
    if (ctx.kind() != GroupKind::GL) levi_dim -= 1;
    Subspace inter = subspace_intersect(lie_parabolic(ctx, a), lie_parabolic(ctx, b));
    return inter.dim() == levi_dim;
}

}  // namespace liegcr

#endif  // LIEGCR_GROUPCTX_HPP
