#ifndef LIEGCR_JSON_IO_HPP
#define LIEGCR_JSON_IO_HPP

// JSON bindings: field descriptors, matrices, cocharacters, the problem-file
// schema with JSON-pointer diagnostics, and canonical serialization of
// engine results.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "field.hpp"
#include "groupctx.hpp"
#include "linalg.hpp"
#include "modrep.hpp"

namespace liegcr {

using nlohmann::json;

// schema violation with the JSON pointer of the offending value
class InputError : public std::runtime_error {
  public:
    InputError(const std::string& msg, std::string pointer)
        : std::runtime_error(msg), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

namespace jsonio {

inline const json& member(const json& j, const std::string& key, const std::string& ptr) {
    if (!j.is_object()) throw InputError("expected an object", ptr);
    auto it = j.find(key);
    if (it == j.end()) throw InputError("missing member '" + key + "'", ptr + "/" + key);
    return *it;
}

inline std::string string_member(const json& j, const std::string& key, const std::string& ptr) {
    const json& v = member(j, key, ptr);
    if (!v.is_string()) throw InputError("expected a string", ptr + "/" + key);
    return v.get<std::string>();
}

inline long int_member(const json& j, const std::string& key, const std::string& ptr) {
    const json& v = member(j, key, ptr);
    if (!v.is_number_integer()) throw InputError("expected an integer", ptr + "/" + key);
    return v.get<long>();
}

inline FieldPtr field_from_json(const json& j, const std::string& ptr) {
    std::string kind = string_member(j, "kind", ptr);
    try {
        if (kind == "Q") return FieldDescriptor::rationals();
        if (kind == "GFp") {
            long p = int_member(j, "p", ptr);
            try {
                return FieldDescriptor::prime_field(p);
            } catch (const std::exception& e) {
                throw InputError(e.what(), ptr + "/p");
            }
        }
        if (kind == "RatFunc") {
            FieldPtr base = field_from_json(member(j, "base", ptr), ptr + "/base");
            return FieldDescriptor::rational_functions(base, string_member(j, "var", ptr));
        }
        if (kind == "Ext") {
            FieldPtr base = field_from_json(member(j, "base", ptr), ptr + "/base");
            std::string var = j.contains("var") ? string_member(j, "var", ptr) : "w";
            std::string mtext = string_member(j, "modulus", ptr);
            // parse the modulus as a polynomial in the generator over base
            FieldPtr scratch = FieldDescriptor::rational_functions(base, var);
            FieldElement parsed = parse_element(mtext, scratch);
            if (parsed.den().degree() != 0)
                throw InputError("modulus must be polynomial", ptr + "/modulus");
            Polynomial mod = poly_scale(parsed.num(), parsed.den().coeff(0).inverse());
            return FieldDescriptor::simple_extension(base, mod, var);
        }
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(e.what(), ptr);
    }
    throw InputError("unknown field kind '" + kind + "'", ptr + "/kind");
}

inline json field_to_json(const FieldPtr& f) {
    json j;
    switch (f->kind()) {
        case FieldKind::Rationals:
            j["kind"] = "Q";
            break;
        case FieldKind::PrimeField:
            j["kind"] = "GFp";
            j["p"] = f->characteristic();
            break;
        case FieldKind::RationalFunctions:
            j["kind"] = "RatFunc";
            j["base"] = field_to_json(f->base());
            j["var"] = f->variable();
            break;
        case FieldKind::SimpleExtension:
            j["kind"] = "Ext";
            j["base"] = field_to_json(f->base());
            j["var"] = f->variable();
            j["modulus"] = format_polynomial(f->modulus(), f->variable());
            break;
    }
    return j;
}

inline Matrix matrix_from_json(const json& j, const FieldPtr& f, int n, const std::string& ptr) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw InputError("expected an array of " + std::to_string(n) + " rows", ptr);
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        std::string rptr = ptr + "/" + std::to_string(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw InputError("expected an array of " + std::to_string(n) + " entries", rptr);
        for (int c = 0; c < n; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            std::string cptr = rptr + "/" + std::to_string(c);
            if (!cell.is_string()) throw InputError("expected an element string", cptr);
            try {
                m.at(i, c) = parse_element(cell.get<std::string>(), f);
            } catch (const std::exception& e) {
                throw InputError(e.what(), cptr);
            }
        }
    }
    return m;
}

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(format_element(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json matrices_to_json(const std::vector<Matrix>& ms) {
    json out = json::array();
    for (const auto& m : ms) out.push_back(matrix_to_json(m));
    return out;
}

inline json cocharacter_to_json(const Cocharacter& lam) {
    json j;
    j["frame"] = matrix_to_json(lam.frame());
    j["weights"] = lam.weights();
    return j;
}

struct Problem {
    FieldPtr field;
    GroupKind kind = GroupKind::GL;
    int n = 0;
    std::vector<Matrix> generators;
    std::vector<Matrix> tuple;  // defaults to the generators when absent
    bool has_tuple = false;
    long seed = 0;
    long budget = 1 << 16;
    std::vector<std::string> warnings;
};

inline Problem parse_problem(const json& j) {
    Problem p;
    p.field = field_from_json(member(j, "field", ""), "/field");
    const json& grp = member(j, "group", "");
    std::string kind = string_member(grp, "kind", "/group");
    if (kind == "GL")
        p.kind = GroupKind::GL;
    else if (kind == "SL")
        p.kind = GroupKind::SL;
    else if (kind == "PGL")
        p.kind = GroupKind::PGL;
    else
        throw InputError("group kind must be GL, SL or PGL", "/group/kind");
    p.n = static_cast<int>(int_member(grp, "n", "/group"));
    if (p.n < 1 || p.n > 6) throw InputError("group rank out of range", "/group/n");
    const json& gens = member(j, "generators", "");
    if (!gens.is_array()) throw InputError("expected an array of matrices", "/generators");
    for (std::size_t i = 0; i < gens.size(); ++i)
        p.generators.push_back(matrix_from_json(gens[i], p.field, p.n,
                                                "/generators/" + std::to_string(i)));
    if (j.contains("tuple")) {
        const json& tup = j["tuple"];
        if (!tup.is_array()) throw InputError("expected an array of matrices", "/tuple");
        for (std::size_t i = 0; i < tup.size(); ++i)
            p.tuple.push_back(matrix_from_json(tup[i], p.field, p.n,
                                               "/tuple/" + std::to_string(i)));
        p.has_tuple = true;
    } else {
        p.tuple = p.generators;
    }
    if (j.contains("options")) {
        const json& opt = j["options"];
        if (!opt.is_object()) throw InputError("expected an object", "/options");
        if (opt.contains("seed")) p.seed = int_member(opt, "seed", "/options");
        if (opt.contains("budget")) p.budget = int_member(opt, "budget", "/options");
        for (auto it = opt.begin(); it != opt.end(); ++it)
            if (it.key() != "seed" && it.key() != "budget")
                p.warnings.push_back("ignored unused option '/options/" + it.key() + "'");
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "field" && it.key() != "group" && it.key() != "generators" &&
            it.key() != "tuple" && it.key() != "options")
            p.warnings.push_back("ignored unused member '/" + it.key() + "'");
    return p;
}

inline json tri_to_json(Tri t) {
    if (t == Tri::True) return json(true);
    if (t == Tri::False) return json(false);
    return json("unknown");
}

inline json subspace_to_json(const Subspace& s) {
    json rows = json::array();
    for (const auto& v : s.basis()) {
        json row = json::array();
        for (const auto& e : v) row.push_back(format_element(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace jsonio

}  // namespace liegcr

#endif  // LIEGCR_JSON_IO_HPP
