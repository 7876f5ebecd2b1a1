#pragma once

// JSON encodings shared by the library and the CLI.

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "apharm/bohr.hpp"
#include "apharm/characters.hpp"
#include "apharm/error.hpp"
#include "apharm/group.hpp"
#include "apharm/peterweyl.hpp"
#include "apharm/trigpoly.hpp"

namespace apharm {

using Json = nlohmann::json;

namespace detail {

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw invalid_input(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("field '") + key + "': " + e.what());
    }
}

} // namespace detail

inline Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

inline Complex complex_from_json(const Json& j) {
    return {detail::field<double>(j, "re"), detail::field<double>(j, "im")};
}

inline Json basis_to_json(const FrequencyBasis& basis) {
    Json out = Json::array();
    for (const auto& s : basis.symbols()) out.push_back({{"name", s.name}, {"value", s.value}});
    return out;
}

inline BasisPtr basis_from_json(const Json& j) {
    if (!j.is_array()) throw invalid_input("basis must be an array");
    std::vector<BasisSymbol> symbols;
    for (const auto& s : j) symbols.push_back({detail::field<std::string>(s, "name"), detail::field<double>(s, "value")});
    return make_basis(std::move(symbols));
}

inline Json frequency_to_json(const Frequency& f, const FrequencyBasis& basis) {
    Json out = Json::object();
    for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i].name] = format_rational(f[i]);
    return out;
}

// Absent symbols default to 0.
inline Frequency frequency_from_json(const Json& j, const FrequencyBasis& basis) {
    if (!j.is_object()) throw invalid_input("frequency must be an object of \"p/q\" strings");
    std::vector<Rational> coords(basis.size());
    for (const auto& [name, value] : j.items()) {
        const std::size_t idx = basis.index_of(name);
        if (idx == basis.size()) throw invalid_input("frequency refers to unknown symbol '" + name + "'");
        if (!value.is_string()) throw invalid_input("frequency coordinate for '" + name + "' must be a \"p/q\" string");
        coords[idx] = parse_rational(value.get<std::string>());
    }
    return Frequency(std::move(coords));
}

inline Json poly_to_json(const TrigPolynomial& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms()) {
        terms.push_back({{"re", t.coeff.real()}, {"im", t.coeff.imag()}, {"freq", frequency_to_json(t.freq, f.basis())}});
    }
    return Json{{"basis", basis_to_json(f.basis())}, {"terms", terms}};
}

inline TrigPolynomial poly_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("basis")) throw invalid_input("trigonometric polynomial needs a 'basis'");
    const BasisPtr basis = basis_from_json(j.at("basis"));
    std::vector<Term> terms;
    if (j.contains("terms")) {
        if (!j.at("terms").is_array()) throw invalid_input("'terms' must be an array");
        for (const auto& t : j.at("terms")) {
            const Frequency freq = t.contains("freq") ? frequency_from_json(t.at("freq"), *basis)
                                                      : Frequency::zero(basis->size());
            terms.push_back({complex_from_json(t), freq});
        }
    }
    return TrigPolynomial(basis, std::move(terms));
}

inline Json to_json(const AlmostPeriodCertificate& c) {
    return Json{{"tau", c.tau}, {"upper_bound", c.upper_bound}, {"lower_bound", c.lower_bound}, {"epsilon", c.epsilon}};
}

inline Json to_json(const NetWitness& w) {
    return Json{{"epsilon", w.epsilon}, {"centers", w.centers}, {"covering_bound", w.covering_bound}};
}

inline Json group_to_json(const FiniteGroup& g) {
    return Json{{"name", g.name()}, {"order", g.order()}, {"names", g.names()}, {"table", g.table()}};
}

inline GroupPtr group_from_json(const Json& j) {
    auto name = detail::field<std::string>(j, "name");
    auto table = detail::field<std::vector<std::vector<std::size_t>>>(j, "table");
    std::vector<std::string> names;
    if (j.contains("names")) names = detail::field<std::vector<std::string>>(j, "names");
    if (j.contains("order") && detail::field<std::size_t>(j, "order") != table.size())
        throw invalid_input("group 'order' does not match table size");
    return std::make_shared<const FiniteGroup>(std::move(name), std::move(names), std::move(table));
}

inline Json function_to_json(const GroupFunction& f) {
    Json values = Json::array();
    for (const auto& v : f.values) values.push_back(complex_to_json(v));
    return Json{{"group", f.group->name()}, {"values", values}};
}

inline GroupFunction function_from_json(const Json& j, const GroupPtr& group) {
    const auto name = detail::field<std::string>(j, "group");
    if (name != group->name())
        throw invalid_input("function is defined on '" + name + "' but the group is '" + group->name() + "'");
    if (!j.contains("values") || !j.at("values").is_array()) throw invalid_input("function needs a 'values' array");
    std::vector<Complex> values;
    for (const auto& v : j.at("values")) values.push_back(complex_from_json(v));
    return GroupFunction(group, std::move(values));
}

inline Json complex_rows_to_json(const std::vector<std::vector<Complex>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(complex_to_json(v));
        out.push_back(std::move(r));
    }
    return out;
}

inline Json to_json(const CharacterTable& t) {
    return Json{{"group", t.group->name()},
                {"classes", t.classes.classes},
                {"degrees", t.degrees},
                {"characters", complex_rows_to_json(t.characters)},
                {"morphisms", complex_rows_to_json(t.morphisms)}};
}

inline Json to_json(const DualGroup& d) {
    return Json{{"group", d.group->name()}, {"characters", complex_rows_to_json(d.characters)}, {"table", d.table}};
}

inline Json to_json(const Decomposition& d) {
    Json parts = Json::array();
    for (const auto& c : d.components) {
        Json values = Json::array();
        for (const auto& v : c.part.values) values.push_back(complex_to_json(v));
        parts.push_back({{"sigma", c.sigma}, {"values", values}, {"l2_norm", l2_norm(c.part)}});
    }
    return Json{{"components", parts}, {"residual", d.residual}};
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input("malformed JSON in '" + path + "': " + e.what());
    }
}

} // namespace apharm
