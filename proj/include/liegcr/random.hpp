#ifndef LIEGCR_RANDOM_HPP
#define LIEGCR_RANDOM_HPP

// Seeded, reproducible randomness.  Everything that samples takes an explicit
// Rng so results are stable across runs and platforms (mt19937_64 sequences
// are specified by the standard).

#include <cstdint>
#include <random>

#include "field.hpp"

namespace liegcr {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long uniform(long lo, long hi) {  // inclusive
        return std::uniform_int_distribution<long>(lo, hi)(eng_);
    }

    FieldElement element(const FieldPtr& f, int size = 8) {
        switch (f->kind()) {
            case FieldKind::Rationals: {
                long num = uniform(-size, size);
                long den = uniform(1, size);
                return FieldElement::rational(mpq_class(num, den));
            }
            case FieldKind::PrimeField:
                return FieldElement::gfp(f, uniform(0, f->prime() - 1));
            case FieldKind::RationalFunctions: {
                Polynomial num = polynomial(f->base(), uniform(0, 2), size);
                Polynomial den = poly_zero(f->base());
                while (den.is_zero()) den = polynomial(f->base(), uniform(0, 1), size);
                return FieldElement::ratfunc(f, num, den);
            }
            case FieldKind::SimpleExtension: {
                std::vector<FieldElement> c;
                for (int i = 0; i < f->modulus().degree(); ++i)
                    c.push_back(element(f->base(), size));
                return FieldElement::ext(f, std::move(c));
            }
        }
        throw FieldError("unreachable");
    }

    FieldElement nonzero_element(const FieldPtr& f, int size = 8) {
        for (int i = 0; i < 256; ++i) {
            FieldElement e = element(f, size);
            if (!e.is_zero()) return e;
        }
        throw FieldError("could not sample a nonzero element");
    }

    Polynomial polynomial(const FieldPtr& f, int max_degree, int size = 8) {
        std::vector<FieldElement> c;
        int d = static_cast<int>(uniform(0, max_degree));
        for (int i = 0; i <= d; ++i) c.push_back(element(f, size));
        return Polynomial(f, std::move(c));
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace liegcr

#endif  // LIEGCR_RANDOM_HPP
