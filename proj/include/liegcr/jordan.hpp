#ifndef LIEGCR_JORDAN_HPP
#define LIEGCR_JORDAN_HPP

// Additive Jordan decomposition over perfect fields, element semisimplicity,
// and the Jordan closure of a subalgebra.

#include <optional>
#include <vector>

#include "field.hpp"
#include "liealg.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace liegcr {

inline Matrix poly_eval_matrix(const Polynomial& p, const Matrix& x) {
    const FieldPtr& f = x.field();
    Matrix r(f, x.rows(), x.cols());
    for (int i = p.degree(); i >= 0; --i) {
        r = r * x;
        for (int d = 0; d < x.rows(); ++d) r.at(d, d) = r.at(d, d) + p.coeff(i);
    }
    return r;
}

inline Polynomial minimal_polynomial(const Matrix& x) {
    if (!x.is_square()) throw FieldError("minimal polynomial of non-square matrix");
    const FieldPtr& f = x.field();
    int n = x.rows();
    // first linear dependence among I, x, x^2, ...
    std::vector<Matrix> powers;
    Matrix p = Matrix::identity(f, n);
    for (int d = 0; d <= n; ++d) {
        powers.push_back(p);
        if (d > 0) {
            // look for coefficients with c_d = 1 solving sum c_j x^j = 0
            Matrix sys_lo(f, n * n, d);
            std::vector<FieldElement> rhs;
            auto top = powers[static_cast<std::size_t>(d)].flatten();
            for (int i = 0; i < n * n; ++i) {
                for (int j = 0; j < d; ++j) {
                    auto flat = powers[static_cast<std::size_t>(j)].flatten();
                    sys_lo.at(i, j) = flat[static_cast<std::size_t>(i)];
                }
                rhs.push_back(-top[static_cast<std::size_t>(i)]);
            }
            auto sol = solve_linear(sys_lo, rhs);
            if (sol) {
                std::vector<FieldElement> coeffs = sol->particular;
                coeffs.push_back(FieldElement::one(f));
                return Polynomial(f, std::move(coeffs));
            }
        }
        p = p * x;
    }
    throw FieldError("internal: no minimal polynomial found");
}

inline bool is_semisimple_element(const Matrix& x) {
    Polynomial m = minimal_polynomial(x);
    if (m.degree() == 0) return true;  // only for 0-dim edge cases
    return is_separable(m);
}

struct JordanParts {
    Matrix semisimple;
    Matrix nilpotent;
};

inline bool field_supports_jordan(const FieldPtr& f) {
    return f->is_perfect();
}

inline JordanParts jordan_decompose(const Matrix& x) {
    const FieldPtr& f = x.field();
    if (!field_supports_jordan(f))
        throw CapabilityError("Jordan decomposition requires a perfect field");
    int n = x.rows();
    Polynomial minp = minimal_polynomial(x);
    Polynomial sf = squarefree_part_perfect(minp);
    Polynomial sfd = poly_derivative(sf);
    Matrix s = x;
    // Newton iteration s <- s - sf(s)/sf'(s); converges within deg(minp) steps
    for (int iter = 0; iter <= minp.degree() + 1; ++iter) {
        Matrix val = poly_eval_matrix(sf, s);
        if (val.is_zero()) break;
        if (iter == minp.degree() + 1)
            throw FieldError("internal: Newton iteration for Jordan parts did not converge");
        auto dinv = matrix_inverse(poly_eval_matrix(sfd, s));
        if (!dinv) throw FieldError("internal: derivative not invertible in Jordan iteration");
        s = s - *dinv * val;
    }
    JordanParts out{s, x - s};
    // verify all defining invariants before returning
    if (!bracket(out.semisimple, out.nilpotent).is_zero())
        throw FieldError("internal: Jordan parts do not commute");
    if (!is_nilpotent_matrix(out.nilpotent))
        throw FieldError("internal: nilpotent part is not nilpotent");
    if (!is_semisimple_element(out.semisimple))
        throw FieldError("internal: semisimple part has inseparable minimal polynomial");
    // s is a polynomial in x: it lies in the unital algebra generated by x
    auto hull = associative_hull(f, n, {x}, true);
    if (!matrix_span(f, n, n, hull).contains_vector(s.flatten()))
        throw FieldError("internal: semisimple part not a polynomial in x");
    return out;
}

inline LieSubalgebra jordan_closure(const LieSubalgebra& h) {
    const GroupContext& ctx = h.context();
    if (!field_supports_jordan(ctx.field()))
        throw CapabilityError("Jordan closure requires a perfect field");
    LieSubalgebra cur = h;
    while (true) {
        std::vector<Matrix> gens = cur.basis();
        for (const auto& b : cur.basis()) {
            JordanParts jp = jordan_decompose(b);
            gens.push_back(ctx.canonicalize(jp.semisimple));
            gens.push_back(ctx.canonicalize(jp.nilpotent));
        }
        LieSubalgebra next = bracket_closure(ctx, gens);
        if (next.dim() == cur.dim()) return cur;
        cur = next;
    }
}

struct JordanClosedVerdict {
    bool closed = false;
    // set when closed == false: an element of h whose semisimple part
    // escapes h
    std::optional<Matrix> witness;
    // the certificate is sampling-based: basis elements plus `trials`
    // pseudo-random elements
    int samples_checked = 0;
};

inline JordanClosedVerdict is_jordan_closed(const LieSubalgebra& h, int trials,
                                            std::uint64_t seed) {
    const GroupContext& ctx = h.context();
    if (!field_supports_jordan(ctx.field()))
        throw CapabilityError("Jordan-closedness check requires a perfect field");
    JordanClosedVerdict v;
    auto check = [&](const Matrix& x) {
        JordanParts jp = jordan_decompose(x);
        ++v.samples_checked;
        if (!h.contains(jp.semisimple)) {
            v.witness = x;
            return false;
        }
        return true;
    };
    for (const auto& b : h.basis())
        if (!check(b)) return v;
    Rng rng(seed);
    const FieldPtr& f = ctx.field();
    for (int t = 0; t < trials; ++t) {
        Matrix x(f, ctx.n(), ctx.n());
        for (const auto& b : h.basis()) x = x + b.scale(rng.element(f, 4));
        if (!check(x)) return v;
    }
    v.closed = true;
    return v;
}

}  // namespace liegcr

#endif  // LIEGCR_JORDAN_HPP
