#pragma once

// MatrixDocument: the on-disk/JSON form of a matrix.
//
//   {"algebra": "R"|"C"|"H", "n": <int>, "data": [[entry, ...], ...]}
//
// Entries are plain numbers over R, [re, im] pairs over C and [a, b, c, d]
// quadruples over H. Serialization emits shortest round-trip decimals, so
// parse-then-serialize preserves every component bit-exactly.

#include <cstdint>
#include <string>
#include <variant>

#include <json.hpp>

#include "kam/errors.hpp"
#include "kam/matrix.hpp"
#include "kam/quaternion.hpp"
#include "kam/random.hpp"

namespace kam {

using AnyMatrix = std::variant<Matrix<double>, Matrix<Complex>, Matrix<Quaternion>>;

inline Algebra algebra_of_any(const AnyMatrix& m) {
    return std::visit(
        [](const auto& x) {
            return algebra_of_v<typename std::decay_t<decltype(x)>::value_type>;
        },
        m);
}

namespace detail {

inline double number_component(const nlohmann::json& v) {
    if (!v.is_number()) throw ArityError("matrix entry component is not a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ParseError("matrix entry component is not finite");
    return x;
}

template <typename S>
S entry_from_json(const nlohmann::json& v);

template <>
inline double entry_from_json<double>(const nlohmann::json& v) {
    if (v.is_array()) throw ArityError("algebra R expects plain number entries");
    return number_component(v);
}

template <>
inline Complex entry_from_json<Complex>(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 2)
        throw ArityError("algebra C expects [re, im] entries");
    return Complex{number_component(v[0]), number_component(v[1])};
}

template <>
inline Quaternion entry_from_json<Quaternion>(const nlohmann::json& v) {
    if (!v.is_array() || v.size() != 4)
        throw ArityError("algebra H expects [a, b, c, d] entries");
    return Quaternion{number_component(v[0]), number_component(v[1]),
                      number_component(v[2]), number_component(v[3])};
}

inline nlohmann::json entry_to_json(double x) { return x; }
inline nlohmann::json entry_to_json(const Complex& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}
inline nlohmann::json entry_to_json(const Quaternion& q) {
    return nlohmann::json::array({q.a, q.b, q.c, q.d});
}

template <typename S>
Matrix<S> matrix_from_json(const nlohmann::json& doc, std::size_t n) {
    const auto& data = doc.at("data");
    if (!data.is_array() || data.size() != n)
        throw ShapeError("data must contain exactly n rows");
    Matrix<S> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || row.size() != n) throw ShapeError("data rows must have length n");
        for (std::size_t j = 0; j < n; ++j) m(i, j) = entry_from_json<S>(row[j]);
    }
    return m;
}

}  // namespace detail

inline AnyMatrix parse_matrix_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid matrix document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("algebra") || !doc.contains("n") ||
        !doc.contains("data"))
        throw ParseError("matrix document needs 'algebra', 'n' and 'data' fields");
    if (!doc["algebra"].is_string())
        throw ParseError("'algebra' must be one of \"R\", \"C\", \"H\"");
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
        throw ShapeError("'n' must be a positive integer");
    const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
    const std::string alg = doc["algebra"].get<std::string>();
    if (alg == "R") return detail::matrix_from_json<double>(doc, n);
    if (alg == "C") return detail::matrix_from_json<Complex>(doc, n);
    if (alg == "H") return detail::matrix_from_json<Quaternion>(doc, n);
    throw ParseError("unknown algebra '" + alg + "'");
}

template <typename S>
nlohmann::json to_document(const Matrix<S>& m) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(detail::entry_to_json(m(i, j)));
        data.push_back(std::move(row));
    }
    return nlohmann::json{{"algebra", algebra_name(algebra_of_v<S>)},
                          {"n", m.size()},
                          {"data", std::move(data)}};
}

inline std::string serialize_matrix_document(const AnyMatrix& m) {
    return std::visit([](const auto& x) { return to_document(x).dump(); }, m);
}

inline AnyMatrix gen_random_hpd(Algebra algebra, std::size_t n, std::uint64_t seed) {
    switch (algebra) {
        case Algebra::R: return gen_random_hpd<double>(n, seed);
        case Algebra::C: return gen_random_hpd<Complex>(n, seed);
        default: return gen_random_hpd<Quaternion>(n, seed);
    }
}

}  // namespace kam
