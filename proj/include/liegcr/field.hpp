#ifndef LIEGCR_FIELD_HPP
#define LIEGCR_FIELD_HPP

// Exact arithmetic for a small tower of fields: Q, GF(p), rational function
// fields F(t) and simple extensions F[w]/(m).  Elements are kept in canonical
// form at all times, so structural equality is field equality.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace liegcr {

class FieldError : public std::runtime_error {
public:
    explicit FieldError(const std::string& msg) : std::runtime_error(msg) {}
};

// raised when an operation is refused because no certified algorithm exists
// for the given field/group configuration (as opposed to bad input)
class CapabilityError : public FieldError {
public:
    explicit CapabilityError(const std::string& msg) : FieldError(msg) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

enum class FieldKind { Rationals, PrimeField, RationalFunctions, SimpleExtension };

class FieldDescriptor;
using FieldPtr = std::shared_ptr<const FieldDescriptor>;

class FieldElement;

// Dense polynomial, lowest degree first, no trailing zeros.  The zero
// polynomial has an empty coefficient vector and degree() == -1.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(FieldPtr field, std::vector<FieldElement> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }

    const FieldElement& coeff(int i) const;
    const FieldElement& leading() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    std::vector<FieldElement> coeffs_;
    void normalize();
};

class FieldDescriptor : public std::enable_shared_from_this<FieldDescriptor> {
public:
    static FieldPtr rationals();
    static FieldPtr prime_field(long p);
    static FieldPtr rational_functions(FieldPtr base, const std::string& var = "t");
    // modulus given as coefficients (lowest first) over `base`; verified
    // monic, deg >= 2, irreducible where we can certify it.
    static FieldPtr simple_extension(FieldPtr base, const Polynomial& modulus,
                                     const std::string& generator = "w");

    FieldKind kind() const { return kind_; }
    long prime() const { return p_; }
    const FieldPtr& base() const { return base_; }
    const std::string& variable() const { return var_; }
    const Polynomial& modulus() const { return *modulus_; }
    int extension_degree() const;

    long characteristic() const;
    bool is_perfect() const;
    bool is_finite() const;
    // number of elements of a finite field, as long (guarded small)
    long finite_order() const;
    int tower_depth() const;

    bool same_as(const FieldDescriptor& o) const;

    std::string name() const;

private:
    FieldDescriptor() = default;
    FieldKind kind_ = FieldKind::Rationals;
    long p_ = 0;
    FieldPtr base_;
    std::string var_;
    std::shared_ptr<Polynomial> modulus_;
};

// Canonical payloads:
//   Rationals          -> reduced mpq with positive denominator
//   PrimeField(p)      -> residue in [0, p)
//   RationalFunctions  -> num/den polynomials over base, den monic, coprime
//   SimpleExtension    -> residue polynomial coefficients, degree < deg(modulus)
class FieldElement {
public:
    FieldElement() = default;

    static FieldElement zero(const FieldPtr& f);
    static FieldElement one(const FieldPtr& f);
    static FieldElement from_integer(const FieldPtr& f, const mpz_class& n);
    static FieldElement from_integer(const FieldPtr& f, long n) {
        return from_integer(f, mpz_class(n));
    }
    static FieldElement rational(const mpq_class& q);
    static FieldElement gfp(const FieldPtr& f, long residue);
    // the variable t of a rational function field
    static FieldElement variable(const FieldPtr& f);
    // the generator w of a simple extension
    static FieldElement generator(const FieldPtr& f);
    static FieldElement ratfunc(const FieldPtr& f, Polynomial num, Polynomial den);
    // residue coefficients over base, lowest first (reduced mod modulus)
    static FieldElement ext(const FieldPtr& f, std::vector<FieldElement> coeffs);
    // lift an element of base() into the extension/function field
    static FieldElement embed(const FieldPtr& f, const FieldElement& base_elem);

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    const mpq_class& rat_value() const { return rat_; }
    long gfp_value() const { return res_; }
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    // ext residue as polynomial in the generator over base
    const Polynomial& ext_residue() const { return num_; }
    // if the element lies in the image of base() -> field(), return it there
    std::optional<FieldElement> try_to_base() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement pow(long e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // total order used only to make canonical sorts deterministic
    static int compare(const FieldElement& a, const FieldElement& b);

private:
    FieldPtr field_;
    mpq_class rat_;
    long res_ = 0;
    Polynomial num_, den_;  // den_ also reused: unused for ext

    void check_same(const FieldElement& o) const;
    friend class Polynomial;
};

// ---------------------------------------------------------------------------
// polynomial utilities (declared here, defined after FieldElement ops)

Polynomial poly_zero(const FieldPtr& f);
Polynomial poly_one(const FieldPtr& f);
Polynomial poly_constant(const FieldElement& c);
Polynomial poly_x(const FieldPtr& f);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, const FieldElement& c);
// quotient and remainder; divisor must be nonzero
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);
Polynomial poly_mod(const Polynomial& a, const Polynomial& b);
Polynomial poly_monic(const Polynomial& a);
Polynomial poly_gcd(const Polynomial& a, const Polynomial& b);
Polynomial poly_derivative(const Polynomial& a);
FieldElement poly_eval(const Polynomial& a, const FieldElement& x);
bool is_separable(const Polynomial& f);
// squarefree part over a perfect field
Polynomial squarefree_part_perfect(const Polynomial& f);
// p-th root of every coefficient must exist; used by squarefree part
std::optional<FieldElement> pth_root(const FieldElement& c);
std::optional<FieldElement> nth_root_frobenius(const FieldElement& c, long n);
bool is_nth_power_ratfunc(const FieldElement& r, long n);
// roots in the coefficient field, where we can find them exactly:
// Q (rational roots), finite fields (scan), char-2 quadratics X^2+c over
// function fields (square test).  Sound but possibly incomplete elsewhere;
// `complete` reports whether the returned list is provably exhaustive.
struct RootResult {
    std::vector<FieldElement> roots;
    bool complete = true;
};
RootResult poly_roots(const Polynomial& f);

FieldElement parse_element(const std::string& text, const FieldPtr& f);
std::string format_element(const FieldElement& e);
std::string format_polynomial(const Polynomial& p, const std::string& var);

// all elements of a finite field, fixed order
std::vector<FieldElement> enumerate_field(const FieldPtr& f);

// ---------------------------------------------------------------------------
// FieldDescriptor

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline FieldPtr FieldDescriptor::rationals() {
    static FieldPtr q = [] {
        auto d = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
        d->kind_ = FieldKind::Rationals;
        return FieldPtr(d);
    }();
    return q;
}

inline FieldPtr FieldDescriptor::prime_field(long p) {
    if (!is_prime_long(p)) throw FieldError("PrimeField: " + std::to_string(p) + " is not prime");
    auto d = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    d->kind_ = FieldKind::PrimeField;
    d->p_ = p;
    return d;
}

inline int FieldDescriptor::tower_depth() const {
    switch (kind_) {
        case FieldKind::Rationals:
        case FieldKind::PrimeField: return 1;
        default: return 1 + base_->tower_depth();
    }
}

inline FieldPtr FieldDescriptor::rational_functions(FieldPtr base, const std::string& var) {
    if (base->tower_depth() >= 3) throw FieldError("tower depth cap (3) exceeded");
    auto d = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    d->kind_ = FieldKind::RationalFunctions;
    d->base_ = std::move(base);
    d->var_ = var;
    return d;
}

inline int FieldDescriptor::extension_degree() const {
    return modulus_ ? modulus_->degree() : 1;
}

inline long FieldDescriptor::characteristic() const {
    switch (kind_) {
        case FieldKind::Rationals: return 0;
        case FieldKind::PrimeField: return p_;
        default: return base_->characteristic();
    }
}

inline bool FieldDescriptor::is_perfect() const {
    switch (kind_) {
        case FieldKind::Rationals: return true;
        case FieldKind::PrimeField: return true;
        case FieldKind::RationalFunctions: return characteristic() == 0;
        case FieldKind::SimpleExtension: return base_->is_perfect() && characteristic() == 0
                ? true
                : (base_->is_finite());
    }
    return false;
}

inline bool FieldDescriptor::is_finite() const {
    switch (kind_) {
        case FieldKind::Rationals: return false;
        case FieldKind::PrimeField: return true;
        case FieldKind::RationalFunctions: return false;
        case FieldKind::SimpleExtension: return base_->is_finite();
    }
    return false;
}

inline long FieldDescriptor::finite_order() const {
    if (!is_finite()) throw FieldError("finite_order on infinite field");
    if (kind_ == FieldKind::PrimeField) return p_;
    long b = base_->finite_order();
    long r = 1;
    for (int i = 0; i < modulus_->degree(); ++i) r *= b;
    return r;
}

inline bool FieldDescriptor::same_as(const FieldDescriptor& o) const {
    if (this == &o) return true;
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case FieldKind::Rationals: return true;
        case FieldKind::PrimeField: return p_ == o.p_;
        case FieldKind::RationalFunctions:
            return var_ == o.var_ && base_->same_as(*o.base_);
        case FieldKind::SimpleExtension:
            return var_ == o.var_ && base_->same_as(*o.base_) && *modulus_ == *o.modulus_;
    }
    return false;
}

inline std::string FieldDescriptor::name() const {
    switch (kind_) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::PrimeField: return "GF(" + std::to_string(p_) + ")";
        case FieldKind::RationalFunctions: return base_->name() + "(" + var_ + ")";
        case FieldKind::SimpleExtension:
            return base_->name() + "[" + var_ + "]/(" +
                   format_polynomial(*modulus_, var_) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Polynomial basics

inline const FieldElement& Polynomial::coeff(int i) const {
    static const FieldElement dummy{};
    if (i < 0 || i >= static_cast<int>(coeffs_.size()))
        throw FieldError("coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(i)];
}

inline const FieldElement& Polynomial::leading() const {
    if (coeffs_.empty()) throw FieldError("leading coefficient of zero polynomial");
    return coeffs_.back();
}

inline bool Polynomial::operator==(const Polynomial& o) const {
    if (coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (!(coeffs_[i] == o.coeffs_[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// FieldElement

inline void FieldElement::check_same(const FieldElement& o) const {
    if (!field_ || !o.field_ || !field_->same_as(*o.field_))
        throw FieldError("field mismatch");
}

inline FieldElement FieldElement::zero(const FieldPtr& f) {
    FieldElement e;
    e.field_ = f;
    switch (f->kind()) {
        case FieldKind::Rationals: e.rat_ = 0; break;
        case FieldKind::PrimeField: e.res_ = 0; break;
        case FieldKind::RationalFunctions:
            e.num_ = poly_zero(f->base());
            e.den_ = poly_one(f->base());
            break;
        case FieldKind::SimpleExtension:
            e.num_ = poly_zero(f->base());
            break;
    }
    return e;
}

inline FieldElement FieldElement::one(const FieldPtr& f) {
    FieldElement e = zero(f);
    switch (f->kind()) {
        case FieldKind::Rationals: e.rat_ = 1; break;
        case FieldKind::PrimeField: e.res_ = 1 % f->prime(); break;
        case FieldKind::RationalFunctions: e.num_ = poly_one(f->base()); break;
        case FieldKind::SimpleExtension: e.num_ = poly_one(f->base()); break;
    }
    return e;
}

inline FieldElement FieldElement::from_integer(const FieldPtr& f, const mpz_class& n) {
    switch (f->kind()) {
        case FieldKind::Rationals: {
            FieldElement e;
            e.field_ = f;
            e.rat_ = mpq_class(n);
            return e;
        }
        case FieldKind::PrimeField: {
            FieldElement e;
            e.field_ = f;
            mpz_class m = n % f->prime();
            if (m < 0) m += f->prime();
            e.res_ = m.get_si();
            return e;
        }
        default: {
            return embed(f, from_integer(f->base(), n));
        }
    }
}

inline FieldElement FieldElement::rational(const mpq_class& q) {
    FieldElement e;
    e.field_ = FieldDescriptor::rationals();
    e.rat_ = q;
    e.rat_.canonicalize();
    return e;
}

inline FieldElement FieldElement::gfp(const FieldPtr& f, long residue) {
    if (f->kind() != FieldKind::PrimeField) throw FieldError("gfp: not a prime field");
    FieldElement e;
    e.field_ = f;
    long p = f->prime();
    e.res_ = ((residue % p) + p) % p;
    return e;
}

inline FieldElement FieldElement::embed(const FieldPtr& f, const FieldElement& b) {
    if (!f->base() || !f->base()->same_as(*b.field()))
        throw FieldError("embed: element not in base field");
    FieldElement e;
    e.field_ = f;
    if (f->kind() == FieldKind::RationalFunctions) {
        e.num_ = poly_constant(b);
        e.den_ = poly_one(f->base());
    } else {
        e.num_ = poly_constant(b);
    }
    return e;
}

inline FieldElement FieldElement::variable(const FieldPtr& f) {
    if (f->kind() != FieldKind::RationalFunctions)
        throw FieldError("variable: not a rational function field");
    FieldElement e;
    e.field_ = f;
    e.num_ = poly_x(f->base());
    e.den_ = poly_one(f->base());
    return e;
}

inline FieldElement FieldElement::generator(const FieldPtr& f) {
    if (f->kind() != FieldKind::SimpleExtension)
        throw FieldError("generator: not a simple extension");
    FieldElement e;
    e.field_ = f;
    e.num_ = poly_x(f->base());
    return e;
}

inline bool FieldElement::is_zero() const {
    switch (field_->kind()) {
        case FieldKind::Rationals: return rat_ == 0;
        case FieldKind::PrimeField: return res_ == 0;
        default: return num_.is_zero();
    }
}

inline bool FieldElement::is_one() const { return *this == one(field_); }

inline bool FieldElement::operator==(const FieldElement& o) const {
    check_same(o);
    switch (field_->kind()) {
        case FieldKind::Rationals: return rat_ == o.rat_;
        case FieldKind::PrimeField: return res_ == o.res_;
        case FieldKind::RationalFunctions: return num_ == o.num_ && den_ == o.den_;
        case FieldKind::SimpleExtension: return num_ == o.num_;
    }
    return false;
}

inline FieldElement FieldElement::ratfunc(const FieldPtr& f, Polynomial num, Polynomial den) {
    if (f->kind() != FieldKind::RationalFunctions)
        throw FieldError("ratfunc: wrong field kind");
    if (den.is_zero()) throw FieldError("division by zero");
    if (num.is_zero()) return zero(f);
    Polynomial g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    // monic denominator
    FieldElement lc = den.leading();
    if (!lc.is_one()) {
        FieldElement inv = lc.inverse();
        num = poly_scale(num, inv);
        den = poly_scale(den, inv);
    }
    FieldElement e;
    e.field_ = f;
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
}

inline FieldElement FieldElement::ext(const FieldPtr& f, std::vector<FieldElement> coeffs) {
    if (f->kind() != FieldKind::SimpleExtension)
        throw FieldError("ext: wrong field kind");
    Polynomial p(f->base(), std::move(coeffs));
    p = poly_mod(p, f->modulus());
    FieldElement e;
    e.field_ = f;
    e.num_ = std::move(p);
    return e;
}

inline std::optional<FieldElement> FieldElement::try_to_base() const {
    switch (field_->kind()) {
        case FieldKind::RationalFunctions:
            if (den_.degree() == 0 && num_.degree() <= 0) {
                if (num_.is_zero()) return FieldElement::zero(field_->base());
                return num_.coeff(0) / den_.coeff(0);
            }
            return std::nullopt;
        case FieldKind::SimpleExtension:
            if (num_.is_zero()) return FieldElement::zero(field_->base());
            if (num_.degree() == 0) return num_.coeff(0);
            return std::nullopt;
        default: return std::nullopt;
    }
}

inline FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    switch (field_->kind()) {
        case FieldKind::Rationals: {
            FieldElement e;
            e.field_ = field_;
            e.rat_ = rat_ + o.rat_;
            e.rat_.canonicalize();
            return e;
        }
        case FieldKind::PrimeField:
            return gfp(field_, res_ + o.res_);
        case FieldKind::RationalFunctions:
            return ratfunc(field_,
                           poly_add(poly_mul(num_, o.den_), poly_mul(o.num_, den_)),
                           poly_mul(den_, o.den_));
        case FieldKind::SimpleExtension: {
            FieldElement e;
            e.field_ = field_;
            e.num_ = poly_add(num_, o.num_);
            return e;
        }
    }
    throw FieldError("unreachable");
}

inline FieldElement FieldElement::operator-() const {
    switch (field_->kind()) {
        case FieldKind::Rationals: {
            FieldElement e;
            e.field_ = field_;
            e.rat_ = -rat_;
            return e;
        }
        case FieldKind::PrimeField:
            return gfp(field_, -res_);
        case FieldKind::RationalFunctions: {
            FieldElement e;
            e.field_ = field_;
            e.num_ = poly_neg(num_);
            e.den_ = den_;
            return e;
        }
        case FieldKind::SimpleExtension: {
            FieldElement e;
            e.field_ = field_;
            e.num_ = poly_neg(num_);
            return e;
        }
    }
    throw FieldError("unreachable");
}

inline FieldElement FieldElement::operator-(const FieldElement& o) const {
    return *this + (-o);
}

inline FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    switch (field_->kind()) {
        case FieldKind::Rationals: {
            FieldElement e;
            e.field_ = field_;
            e.rat_ = rat_ * o.rat_;
            e.rat_.canonicalize();
            return e;
        }
        case FieldKind::PrimeField:
            return gfp(field_, (res_ * o.res_) % field_->prime());
        case FieldKind::RationalFunctions:
            return ratfunc(field_, poly_mul(num_, o.num_), poly_mul(den_, o.den_));
        case FieldKind::SimpleExtension: {
            FieldElement e;
            e.field_ = field_;
            e.num_ = poly_mod(poly_mul(num_, o.num_), field_->modulus());
            return e;
        }
    }
    throw FieldError("unreachable");
}

inline FieldElement FieldElement::inverse() const {
    if (is_zero()) throw FieldError("inverse of zero");
    switch (field_->kind()) {
        case FieldKind::Rationals: {
            FieldElement e;
            e.field_ = field_;
            e.rat_ = 1 / rat_;
            e.rat_.canonicalize();
            return e;
        }
        case FieldKind::PrimeField: {
            // extended Euclid on longs
            long a = res_, p = field_->prime();
            long t = 0, newt = 1, r = p, newr = a;
            while (newr != 0) {
                long q = r / newr;
                long tmp = t - q * newt; t = newt; newt = tmp;
                tmp = r - q * newr; r = newr; newr = tmp;
            }
            return gfp(field_, t);
        }
        case FieldKind::RationalFunctions:
            return ratfunc(field_, den_, num_);
        case FieldKind::SimpleExtension: {
            // extended Euclid in base[x] mod modulus
            Polynomial r0 = field_->modulus(), r1 = num_;
            Polynomial s0 = poly_zero(field_->base());
            Polynomial s1 = poly_one(field_->base());
            while (!r1.is_zero()) {
                auto [q, r2] = poly_divmod(r0, r1);
                Polynomial s2 = poly_sub(s0, poly_mul(q, s1));
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            if (r0.degree() != 0)
                throw FieldError("modulus not irreducible: zero divisor found");
            FieldElement c = r0.coeff(0).inverse();
            FieldElement e;
            e.field_ = field_;
            e.num_ = poly_mod(poly_scale(s0, c), field_->modulus());
            return e;
        }
    }
    throw FieldError("unreachable");
}

inline FieldElement FieldElement::operator/(const FieldElement& o) const {
    return *this * o.inverse();
}

inline FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement r = one(field_);
    FieldElement b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline int FieldElement::compare(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    switch (a.field_->kind()) {
        case FieldKind::Rationals: return cmp(a.rat_, b.rat_);
        case FieldKind::PrimeField: return a.res_ < b.res_ ? -1 : (a.res_ > b.res_ ? 1 : 0);
        default: {
            auto cmp_poly = [](const Polynomial& x, const Polynomial& y) -> int {
                if (x.degree() != y.degree()) return x.degree() < y.degree() ? -1 : 1;
                for (int i = x.degree(); i >= 0; --i) {
                    int c = FieldElement::compare(x.coeff(i), y.coeff(i));
                    if (c != 0) return c;
                }
                return 0;
            };
            int c = cmp_poly(a.num_, b.num_);
            if (c != 0 || a.field_->kind() == FieldKind::SimpleExtension) return c;
            return cmp_poly(a.den_, b.den_);
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Polynomial constructor & arithmetic

inline Polynomial::Polynomial(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    normalize();
}

inline void Polynomial::normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

inline Polynomial poly_zero(const FieldPtr& f) { return Polynomial(f, {}); }

inline Polynomial poly_one(const FieldPtr& f) {
    return Polynomial(f, {FieldElement::one(f)});
}

inline Polynomial poly_constant(const FieldElement& c) {
    return Polynomial(c.field(), {c});
}

inline Polynomial poly_x(const FieldPtr& f) {
    return Polynomial(f, {FieldElement::zero(f), FieldElement::one(f)});
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    const FieldPtr& f = a.field() ? a.field() : b.field();
    std::vector<FieldElement> c;
    std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement x = i < a.coeffs().size() ? a.coeffs()[i] : FieldElement::zero(f);
        if (i < b.coeffs().size()) x = x + b.coeffs()[i];
        c.push_back(std::move(x));
    }
    return Polynomial(f, std::move(c));
}

inline Polynomial poly_neg(const Polynomial& a) {
    std::vector<FieldElement> c;
    c.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) c.push_back(-x);
    return Polynomial(a.field(), std::move(c));
}

inline Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    return poly_add(a, poly_neg(b));
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    const FieldPtr& f = a.field() ? a.field() : b.field();
    if (a.is_zero() || b.is_zero()) return poly_zero(f);
    std::vector<FieldElement> c(a.coeffs().size() + b.coeffs().size() - 1,
                                FieldElement::zero(f));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        for (std::size_t j = 0; j < b.coeffs().size(); ++j)
            c[i + j] = c[i + j] + a.coeffs()[i] * b.coeffs()[j];
    return Polynomial(f, std::move(c));
}

inline Polynomial poly_scale(const Polynomial& a, const FieldElement& c) {
    std::vector<FieldElement> r;
    r.reserve(a.coeffs().size());
    for (const auto& x : a.coeffs()) r.push_back(x * c);
    return Polynomial(a.field(), std::move(r));
}

inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    const FieldPtr& f = b.field();
    if (a.degree() < b.degree()) return {poly_zero(f), a};
    FieldElement lcinv = b.leading().inverse();
    std::vector<FieldElement> rem = a.coeffs();
    std::vector<FieldElement> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1),
                                  FieldElement::zero(f));
    for (int i = a.degree(); i >= b.degree(); --i) {
        FieldElement c = rem[static_cast<std::size_t>(i)] * lcinv;
        if (c.is_zero()) continue;
        quo[static_cast<std::size_t>(i - b.degree())] = c;
        for (int j = 0; j <= b.degree(); ++j) {
            auto idx = static_cast<std::size_t>(i - b.degree() + j);
            rem[idx] = rem[idx] - c * b.coeffs()[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial(f, std::move(quo)), Polynomial(f, std::move(rem))};
}

inline Polynomial poly_mod(const Polynomial& a, const Polynomial& b) {
    return poly_divmod(a, b).second;
}

inline Polynomial poly_monic(const Polynomial& a) {
    if (a.is_zero()) return a;
    if (a.leading().is_one()) return a;
    return poly_scale(a, a.leading().inverse());
}

inline Polynomial poly_gcd(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) throw FieldError("gcd(0,0)");
    Polynomial x = a, y = b;
    while (!y.is_zero()) {
        Polynomial r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return poly_monic(x);
}

inline Polynomial poly_derivative(const Polynomial& a) {
    const FieldPtr& f = a.field();
    if (a.degree() <= 0) return poly_zero(f);
    std::vector<FieldElement> c;
    c.reserve(static_cast<std::size_t>(a.degree()));
    for (int i = 1; i <= a.degree(); ++i)
        c.push_back(a.coeff(i) * FieldElement::from_integer(f, i));
    return Polynomial(f, std::move(c));
}

inline FieldElement poly_eval(const Polynomial& a, const FieldElement& x) {
    FieldElement r = FieldElement::zero(x.field());
    for (int i = a.degree(); i >= 0; --i) r = r * x + a.coeff(i);
    return r;
}

inline bool is_separable(const Polynomial& f) {
    if (f.degree() <= 0) throw FieldError("is_separable: constant input");
    Polynomial d = poly_derivative(f);
    if (d.is_zero()) return false;
    return poly_gcd(f, d).degree() == 0;
}

// ---------------------------------------------------------------------------
// p-th roots and n-th power tests

namespace detail {

// decompose a polynomial g(x) = sum_i x^i g_i(x^p); returns the g_i as
// polynomials in x (i.e. g_i(x), to be evaluated at x^p)
inline std::vector<Polynomial> p_adic_split(const Polynomial& g, long p) {
    const FieldPtr& f = g.field();
    std::vector<std::vector<FieldElement>> parts(static_cast<std::size_t>(p));
    for (int i = 0; i <= g.degree(); ++i) {
        auto r = static_cast<std::size_t>(i % p);
        auto q = static_cast<std::size_t>(i / p);
        auto& v = parts[r];
        while (v.size() <= q) v.push_back(FieldElement::zero(f));
        v[q] = g.coeff(i);
    }
    std::vector<Polynomial> out;
    out.reserve(parts.size());
    for (auto& v : parts) out.emplace_back(f, std::move(v));
    return out;
}

}  // namespace detail

inline std::optional<FieldElement> pth_root(const FieldElement& c) {
    const FieldPtr& f = c.field();
    long p = f->characteristic();
    if (p == 0) throw FieldError("pth_root: characteristic zero");
    switch (f->kind()) {
        case FieldKind::PrimeField:
            return c;  // Frobenius is the identity on GF(p)
        case FieldKind::SimpleExtension: {
            if (f->is_finite()) {
                // Frobenius x -> x^p is an automorphism of GF(p^k)
                long q = f->finite_order();
                return c.pow(q / p);
            }
            // purely inseparable x^p - u only: roots live in the base image
            const Polynomial& m = f->modulus();
            bool pure = m.degree() == p;
            for (int i = 1; pure && i < p; ++i)
                if (!m.coeff(i).is_zero()) pure = false;
            if (!pure) return std::nullopt;
            // modulus coefficients already live in the base field
            FieldElement u = -m.coeff(0);
            auto cb = c.try_to_base();
            if (!cb) return std::nullopt;
            // write c = sum beta_i u^i with each beta_i a p-th power in base
            if (f->base()->kind() != FieldKind::RationalFunctions) return std::nullopt;
            // only the generic case u = t is supported
            if (!(u == FieldElement::variable(f->base()))) return std::nullopt;
            const FieldPtr& rf = f->base();
            // c = N / D = N*D^(p-1) / D^p ; split numerator by powers of t mod p
            Polynomial N = cb->num(), D = cb->den();
            Polynomial Np = N;
            for (long i = 1; i < p; ++i) Np = poly_mul(Np, D);
            auto parts = detail::p_adic_split(Np, p);
            std::vector<FieldElement> res_coeffs;
            bool ok = true;
            for (long i = 0; i < p && ok; ++i) {
                // beta_i = parts[i](t^p) / D^p; its p-th root is
                // pth_root_poly(parts[i]) evaluated at t, over D
                const Polynomial& gi = parts[static_cast<std::size_t>(i)];
                std::vector<FieldElement> rc;
                rc.reserve(gi.coeffs().size());
                for (const auto& a : gi.coeffs()) {
                    auto r = pth_root(a);
                    if (!r) { ok = false; break; }
                    rc.push_back(*r);
                }
                if (!ok) break;
                FieldElement beta_root =
                    FieldElement::ratfunc(rf, Polynomial(rf->base(), std::move(rc)), D);
                res_coeffs.push_back(beta_root);
            }
            if (!ok) return std::nullopt;
            FieldElement s = FieldElement::ext(f, {});
            FieldElement w = FieldElement::generator(f);
            s = FieldElement::zero(f);
            for (long i = p - 1; i >= 0; --i)
                s = s * w + FieldElement::embed(f, res_coeffs[static_cast<std::size_t>(i)]);
            if (s * s.pow(p - 1) == c || s.pow(p) == c) return s;
            return std::nullopt;
        }
        case FieldKind::RationalFunctions: {
            // N/D = N*D^(p-1)/D^p; the numerator must lie in base[t^p] with
            // p-th power coefficients
            Polynomial N = c.num(), D = c.den();
            if (N.is_zero()) return FieldElement::zero(f);
            Polynomial Np = N;
            for (long i = 1; i < p; ++i) Np = poly_mul(Np, D);
            auto parts = detail::p_adic_split(Np, p);
            for (long i = 1; i < p; ++i)
                if (!parts[static_cast<std::size_t>(i)].is_zero()) return std::nullopt;
            std::vector<FieldElement> rc;
            for (const auto& a : parts[0].coeffs()) {
                auto r = pth_root(a);
                if (!r) return std::nullopt;
                rc.push_back(*r);
            }
            FieldElement s = FieldElement::ratfunc(
                f, Polynomial(f->base(), std::move(rc)), D);
            if (s.pow(p) == c) return s;
            return std::nullopt;
        }
        default:
            throw FieldError("pth_root: unsupported field");
    }
}

inline std::optional<FieldElement> nth_root_frobenius(const FieldElement& c, long n) {
    // n-th root where n is a power of the characteristic
    long p = c.field()->characteristic();
    FieldElement r = c;
    long m = n;
    while (m > 1) {
        if (m % p != 0) return std::nullopt;
        auto s = pth_root(r);
        if (!s) return std::nullopt;
        r = *s;
        m /= p;
    }
    return r;
}

inline bool poly_is_nth_power(const Polynomial& f, long n, Polynomial* root_out);

inline bool is_nth_power_ratfunc(const FieldElement& r, long n) {
    if (n == 0) throw FieldError("is_nth_power_ratfunc: n = 0");
    if (r.field()->kind() != FieldKind::RationalFunctions)
        throw FieldError("is_nth_power_ratfunc: not a rational function field");
    if (r.is_zero()) return true;
    if (n == 1) return true;
    // r = N/D with D monic, gcd(N,D) = 1.  r = s^n iff N = c*A^n, D = B^n with
    // the constant c an n-th power in the base field.
    Polynomial N = r.num(), D = r.den();
    Polynomial An = poly_monic(N);
    FieldElement c = N.leading();
    Polynomial a_root = poly_zero(r.field()->base());
    Polynomial b_root = a_root;
    if (!poly_is_nth_power(An, n, &a_root)) return false;
    if (!poly_is_nth_power(D, n, &b_root)) return false;
    // is c an n-th power in the base?
    const FieldPtr& base = r.field()->base();
    if (base->is_finite()) {
        for (const auto& x : enumerate_field(base))
            if (x.pow(n) == c) return true;
        return false;
    }
    if (base->kind() == FieldKind::Rationals) {
        mpq_class q = c.rat_value();
        mpz_class nr, dr;
        if (!mpz_root(nr.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(n)))
            if (n % 2 == 1 && q.get_num() < 0) {
                // odd roots of negatives
                mpz_class a = -q.get_num();
                if (!mpz_root(nr.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n)))
                    return false;
                nr = -nr;
            } else {
                return false;
            }
        mpz_class t;
        mpz_pow_ui(t.get_mpz_t(), nr.get_mpz_t(), static_cast<unsigned long>(n));
        if (t != q.get_num()) return false;
        if (!mpz_root(dr.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(n)))
            return false;
        mpz_pow_ui(t.get_mpz_t(), dr.get_mpz_t(), static_cast<unsigned long>(n));
        return t == q.get_den();
    }
    throw FieldError("is_nth_power_ratfunc: unsupported base field");
}

// monic f = g^n for some monic g?  Iterated: for n = p^a * m with m coprime
// to char, peel p-th roots via coefficient p-th roots and m-th roots via a
// direct degree-wise Newton-style extraction.
inline bool poly_is_nth_power(const Polynomial& f, long n, Polynomial* root_out) {
    const FieldPtr& base = f.field();
    if (f.degree() == 0) { if (root_out) *root_out = f; return true; }
    if (f.degree() % n != 0) return false;
    long p = base->characteristic();
    if (p > 0 && n % p == 0) {
        // f must be g(x^p) with p-th power coefficients
        auto parts = detail::p_adic_split(f, p);
        for (long i = 1; i < p; ++i)
            if (!parts[static_cast<std::size_t>(i)].is_zero()) return false;
        std::vector<FieldElement> rc;
        for (const auto& a : parts[0].coeffs()) {
            auto r = pth_root(a);
            if (!r) return false;
            rc.push_back(*r);
        }
        Polynomial g(base, std::move(rc));
        Polynomial sub;
        if (!poly_is_nth_power(g, n / p, &sub)) return false;
        if (root_out) *root_out = sub;
        return true;
    }
    if (n == 1) { if (root_out) *root_out = f; return true; }
    // char coprime to n: determine candidate g coefficient by coefficient
    // from the top (g monic of degree d/n); then verify g^n == f.
    int d = f.degree() / static_cast<int>(n);
    std::vector<FieldElement> gc(static_cast<std::size_t>(d + 1), FieldElement::zero(base));
    gc[static_cast<std::size_t>(d)] = FieldElement::one(base);
    Polynomial g(base, gc);
    for (int i = d - 1; i >= 0; --i) {
        // coefficient of x^(d*(n-1)+i) in g^n is n*g_i + (terms in higher g_j)
        Polynomial gn = poly_one(base);
        for (long j = 0; j < n; ++j) gn = poly_mul(gn, g);
        int target_deg = d * (static_cast<int>(n) - 1) + i;
        FieldElement cur = target_deg <= gn.degree() && target_deg >= 0
                               ? (target_deg <= gn.degree() ? gn.coeffs()[static_cast<std::size_t>(target_deg)] : FieldElement::zero(base))
                               : FieldElement::zero(base);
        FieldElement want = target_deg <= f.degree()
                                ? f.coeffs()[static_cast<std::size_t>(target_deg)]
                                : FieldElement::zero(base);
        FieldElement delta = (want - cur) / FieldElement::from_integer(base, n);
        auto cs = g.coeffs();
        cs[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i)] + delta;
        g = Polynomial(base, cs);
    }
    Polynomial gn = poly_one(base);
    for (long j = 0; j < n; ++j) gn = poly_mul(gn, g);
    if (!(gn == f)) return false;
    if (root_out) *root_out = g;
    return true;
}

namespace detail {

// p-th root of a polynomial of the form z(x)^p (equivalently y ∈ k[x^p] with
// p-th-power coefficients, k perfect)
inline Polynomial poly_pth_root(const Polynomial& y, long p) {
    auto parts = p_adic_split(y, p);
    for (long i = 1; i < p; ++i)
        if (!parts[static_cast<std::size_t>(i)].is_zero())
            throw FieldError("polynomial is not a p-th power");
    std::vector<FieldElement> rc;
    for (const auto& a : parts[0].coeffs()) {
        auto r = pth_root(a);
        if (!r) throw FieldError("squarefree part needs a perfect field");
        rc.push_back(*r);
    }
    return Polynomial(y.field(), std::move(rc));
}

}  // namespace detail

inline Polynomial squarefree_part_perfect(const Polynomial& f0) {
    if (f0.is_zero()) throw FieldError("squarefree part of zero");
    Polynomial f = poly_monic(f0);
    if (f.degree() <= 0) return poly_one(f0.field() ? f0.field() : f.field());
    long p = f.field()->characteristic();
    Polynomial d = poly_derivative(f);
    if (d.is_zero()) {
        if (p == 0) throw FieldError("zero derivative in characteristic 0");
        return squarefree_part_perfect(detail::poly_pth_root(f, p));
    }
    Polynomial g = poly_gcd(f, d);
    if (g.degree() == 0) return f;
    // w carries every factor of f whose multiplicity is not divisible by p,
    // once each (in characteristic 0: every factor, once each)
    Polynomial w = poly_divmod(f, g).first;
    if (p == 0) return w;
    // strip the w-factors out of g; what remains is a perfect p-th power
    Polynomial y = g;
    while (true) {
        Polynomial c = poly_gcd(y, w);
        if (c.degree() == 0) break;
        y = poly_divmod(y, c).first;
    }
    if (y.degree() == 0) return w;
    return poly_monic(poly_mul(w, squarefree_part_perfect(detail::poly_pth_root(y, p))));
}

// ---------------------------------------------------------------------------
// roots

inline std::vector<FieldElement> enumerate_field(const FieldPtr& f) {
    if (!f->is_finite()) throw FieldError("enumerate_field on infinite field");
    if (f->kind() == FieldKind::PrimeField) {
        std::vector<FieldElement> out;
        out.reserve(static_cast<std::size_t>(f->prime()));
        for (long i = 0; i < f->prime(); ++i) out.push_back(FieldElement::gfp(f, i));
        return out;
    }
    // extension of a finite field
    auto base_elems = enumerate_field(f->base());
    int d = f->modulus().degree();
    std::vector<FieldElement> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<FieldElement> coeffs;
        coeffs.reserve(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) coeffs.push_back(base_elems[idx[static_cast<std::size_t>(i)]]);
        out.push_back(FieldElement::ext(f, coeffs));
        int k = 0;
        while (k < d && ++idx[static_cast<std::size_t>(k)] == base_elems.size()) {
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == d) break;
    }
    return out;
}

inline RootResult poly_roots(const Polynomial& f) {
    RootResult res;
    const FieldPtr& k = f.field();
    if (f.is_zero()) throw FieldError("roots of zero polynomial");
    if (f.degree() == 0) return res;
    if (k->is_finite()) {
        for (const auto& x : enumerate_field(k))
            if (poly_eval(f, x).is_zero()) res.roots.push_back(x);
        return res;
    }
    if (k->kind() == FieldKind::Rationals) {
        // rational root theorem after clearing denominators
        mpz_class lead_den = 1;
        for (const auto& c : f.coeffs()) lead_den = lcm(lead_den, c.rat_value().get_den());
        std::vector<mpz_class> ic;
        for (const auto& c : f.coeffs()) {
            mpq_class q = c.rat_value() * lead_den;
            ic.push_back(q.get_num());
        }
        while (!ic.empty() && ic.back() == 0) ic.pop_back();
        // strip factors of x
        std::size_t shift = 0;
        while (shift < ic.size() && ic[shift] == 0) ++shift;
        if (shift > 0) res.roots.push_back(FieldElement::rational(0));
        if (shift + 1 >= ic.size()) return res;
        mpz_class a0 = abs(ic[shift]), an = abs(ic.back());
        auto divisors = [](const mpz_class& n) {
            std::vector<mpz_class> d;
            for (mpz_class i = 1; i * i <= n; ++i) {
                if (n % i == 0) {
                    d.push_back(i);
                    if (i * i != n) d.push_back(n / i);
                }
            }
            return d;
        };
        for (const auto& pnum : divisors(a0)) {
            for (const auto& pden : divisors(an)) {
                for (int s = -1; s <= 1; s += 2) {
                    mpq_class cand(s * pnum, pden);
                    cand.canonicalize();
                    FieldElement x = FieldElement::rational(cand);
                    if (poly_eval(f, x).is_zero()) {
                        bool dup = false;
                        for (const auto& r : res.roots) if (r == x) dup = true;
                        if (!dup) res.roots.push_back(x);
                    }
                }
            }
        }
        return res;
    }
    // function fields and their extensions: handle pure p-power equations
    // x^n = c via Frobenius-root extraction; otherwise incomplete
    long p = k->characteristic();
    if (p > 0 && f.degree() >= 1) {
        bool pure = true;
        for (int i = 1; i < f.degree(); ++i)
            if (!f.coeff(i).is_zero()) pure = false;
        long n = f.degree();
        bool p_power = n > 0;
        for (long m = n; m > 1; m /= p)
            if (m % p != 0) p_power = false;
        if (pure && p_power && n > 1) {
            FieldElement c = -(f.coeff(0) / f.leading());
            auto r = nth_root_frobenius(c, n);
            if (r) res.roots.push_back(*r);
            // purely inseparable: at most one root, so this is complete
            return res;
        }
    }
    // linear always works
    if (f.degree() == 1) {
        res.roots.push_back(-(f.coeff(0) / f.coeff(1)));
        return res;
    }
    res.complete = false;
    return res;
}

// ---------------------------------------------------------------------------
// modulus irreducibility certification & extension construction

inline bool poly_irreducible_over_finite(const Polynomial& m) {
    // trial division by all monic polynomials of degree <= deg/2
    const FieldPtr& f = m.field();
    auto elems = enumerate_field(f);
    int half = m.degree() / 2;
    std::vector<std::vector<FieldElement>> stack;
    for (int d = 1; d <= half; ++d) {
        std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            std::vector<FieldElement> coeffs;
            for (int i = 0; i < d; ++i) coeffs.push_back(elems[idx[static_cast<std::size_t>(i)]]);
            coeffs.push_back(FieldElement::one(f));
            Polynomial div(f, coeffs);
            if (poly_mod(m, div).is_zero()) return false;
            int k = 0;
            while (k < d && ++idx[static_cast<std::size_t>(k)] == elems.size()) {
                idx[static_cast<std::size_t>(k)] = 0;
                ++k;
            }
            if (k == d) break;
        }
    }
    return true;
}

inline FieldPtr FieldDescriptor::simple_extension(FieldPtr base, const Polynomial& modulus,
                                                  const std::string& generator) {
    if (base->tower_depth() >= 3) throw FieldError("tower depth cap (3) exceeded");
    if (modulus.degree() < 2) throw FieldError("extension modulus must have degree >= 2");
    if (!modulus.leading().is_one()) throw FieldError("extension modulus must be monic");
    if (!modulus.field()->same_as(*base)) throw FieldError("modulus not over base field");
    bool certified = false;
    if (base->is_finite()) {
        if (base->kind() == FieldKind::PrimeField && base->prime() <= 7 && modulus.degree() <= 6) {
            certified = poly_irreducible_over_finite(modulus);
            if (!certified) throw FieldError("modulus is reducible over base");
        } else if (base->finite_order() <= 64 && modulus.degree() <= 4) {
            certified = poly_irreducible_over_finite(modulus);
            if (!certified) throw FieldError("modulus is reducible over base");
        }
    } else if (modulus.degree() <= 3) {
        // quadratics and cubics are irreducible iff they have no root
        auto rr = poly_roots(modulus);
        if (!rr.roots.empty()) throw FieldError("modulus is reducible over base");
        certified = rr.complete;
    }
    if (!certified) throw FieldError("cannot certify modulus irreducibility");
    auto d = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    d->kind_ = FieldKind::SimpleExtension;
    d->base_ = std::move(base);
    d->var_ = generator;
    d->modulus_ = std::make_shared<Polynomial>(modulus);
    return d;
}

// ---------------------------------------------------------------------------
// parsing / formatting

namespace detail {

struct Parser {
    const std::string& text;
    const FieldPtr& field;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }
    bool accept(char c) {
        if (peek(c)) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    FieldElement parse_expr() {
        skip_ws();
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        FieldElement v = parse_term();
        if (neg) v = -v;
        while (true) {
            if (accept('+')) v = v + parse_term();
            else if (accept('-')) v = v - parse_term();
            else break;
        }
        return v;
    }

    FieldElement parse_term() {
        FieldElement v = parse_factor();
        while (accept('*')) v = v * parse_factor();
        return v;
    }

    FieldElement parse_factor() {
        FieldElement v = parse_atom();
        if (accept('^')) {
            long e = parse_uint();
            v = v.pow(e);
        }
        return v;
    }

    FieldElement parse_atom() {
        FieldElement v = parse_primary();
        while (true) {
            skip_ws();
            if (accept('/')) {
                FieldElement w = parse_primary();
                if (accept('^')) w = w.pow(parse_uint());
                if (w.is_zero()) fail("division by zero in literal");
                v = v / w;
            } else {
                break;
            }
        }
        return v;
    }

    FieldElement parse_primary() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            FieldElement v = parse_expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            mpz_class n(text.substr(start, pos - start));
            return FieldElement::from_integer(field, n);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name = text.substr(start, pos - start);
            // resolve the variable against the tower, innermost first
            FieldPtr f = field;
            std::vector<FieldPtr> chain;
            while (f) {
                chain.push_back(f);
                f = f->base();
            }
            for (std::size_t depth = 0; depth < chain.size(); ++depth) {
                const FieldPtr& g = chain[depth];
                if ((g->kind() == FieldKind::RationalFunctions ||
                     g->kind() == FieldKind::SimpleExtension) &&
                    g->variable() == name) {
                    FieldElement v = g->kind() == FieldKind::RationalFunctions
                                         ? FieldElement::variable(g)
                                         : FieldElement::generator(g);
                    for (std::size_t i = depth; i > 0; --i)
                        v = FieldElement::embed(chain[i - 1], v);
                    return v;
                }
            }
            pos = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    long parse_uint() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected exponent");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return v;
    }
};

inline bool format_needs_parens(const std::string& s) {
    // a sum or difference needs parentheses inside a product/quotient
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && i > 0 && (c == '+' || c == '-')) return true;
    }
    return false;
}

}  // namespace detail

inline FieldElement parse_element(const std::string& text, const FieldPtr& f) {
    detail::Parser p{text, f};
    FieldElement v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return v;
}

inline std::string format_polynomial(const Polynomial& p, const std::string& var) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const FieldElement& c = p.coeff(i);
        if (c.is_zero()) continue;
        std::string cs = format_element(c);
        bool coeff_one = c.is_one();
        std::string term;
        if (i == 0) {
            term = cs;
        } else {
            std::string v = i == 1 ? var : var + "^" + std::to_string(i);
            if (coeff_one) term = v;
            else {
                if (detail::format_needs_parens(cs) || cs.find('/') != std::string::npos)
                    cs = "(" + cs + ")";
                term = cs + "*" + v;
            }
        }
        if (out.empty()) out = term;
        else if (!term.empty() && term[0] == '-') out += term;
        else out += "+" + term;
    }
    return out;
}

inline std::string format_element(const FieldElement& e) {
    const FieldPtr& f = e.field();
    switch (f->kind()) {
        case FieldKind::Rationals: {
            return e.rat_value().get_str();
        }
        case FieldKind::PrimeField:
            return std::to_string(e.gfp_value());
        case FieldKind::RationalFunctions: {
            std::string num = format_polynomial(e.num(), f->variable());
            if (e.den().degree() == 0 && e.den().coeff(0).is_one()) return num;
            std::string den = format_polynomial(e.den(), f->variable());
            if (detail::format_needs_parens(num) || num.find('*') != std::string::npos ||
                num.find('/') != std::string::npos || num.find('^') != std::string::npos)
                num = "(" + num + ")";
            if (detail::format_needs_parens(den) || den.find('*') != std::string::npos ||
                den.find('/') != std::string::npos || den.find('^') != std::string::npos ||
                std::isalpha(static_cast<unsigned char>(den[0])))
                den = "(" + den + ")";
            return num + "/" + den;
        }
        case FieldKind::SimpleExtension:
            return format_polynomial(e.ext_residue(), f->variable());
    }
    return "?";
}

}  // namespace liegcr

#endif  // LIEGCR_FIELD_HPP
