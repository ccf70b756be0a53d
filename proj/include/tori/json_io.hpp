#pragma once

#include <json.hpp>

#include "tori/exterior.hpp"
#include "tori/scalar.hpp"

namespace tori {

using json = nlohmann::json;

enum class Mode { Exact, Float };

// Numbers in input files are either plain JSON numbers or {"num":p,"den":q}
// objects.  Exact mode accepts integers and num/den pairs only; float mode
// converts everything to double.
inline Scalar scalar_from_json(const json& j, Mode mode) {
    if (j.is_object() && j.contains("num") && j.contains("den")) {
        Rational r(j.at("num").get<long long>(), j.at("den").get<long long>());
        if (mode == Mode::Float) return Scalar(r.to_double());
        return Scalar(r);
    }
    if (j.is_number_integer())
        return mode == Mode::Exact ? Scalar(j.get<long long>()) : Scalar(j.get<double>());
    if (j.is_number()) {
        if (mode == Mode::Exact)
            throw std::invalid_argument("exact mode rejects float-valued inputs");
        return Scalar(j.get<double>());
    }
    throw std::invalid_argument("expected a number or {num,den}");
}

inline json scalar_to_json(const Scalar& s) {
    if (!s.exact()) return json(s.to_double());
    const Rational& r = s.rat();
    if (r.is_integer()) return json(r.num());
    return json{{"num", r.num()}, {"den", r.den()}};
}

inline Phase phase_from_json(const json& j, Mode mode) { return Phase(scalar_from_json(j, mode)); }
inline json phase_to_json(const Phase& p) { return scalar_to_json(p.value()); }

inline json scalars_to_json(const std::vector<Scalar>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(scalar_to_json(s));
    return a;
}

inline std::vector<Scalar> scalars_from_json(const json& j, Mode mode) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of numbers");
    std::vector<Scalar> v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(scalar_from_json(e, mode));
    return v;
}

namespace exterior {

template <typename S>
json multivector_to_json(const MultiVectorT<S>& m) {
    json coeffs = json::array();
    for (const auto& c : m.coeffs()) {
        if constexpr (std::is_same_v<S, Rational>)
            coeffs.push_back(scalar_to_json(Scalar(c)));
        else
            coeffs.push_back(c);
    }
    return json{{"n", m.n()}, {"grade", m.grade()}, {"coeffs", coeffs}};
}

inline MultiVector multivector_from_json(const json& j) {
    int n = j.at("n").get<int>();
    int grade = j.at("grade").get<int>();
    std::vector<Rational> coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.push_back(scalar_from_json(e, Mode::Exact).rat());
    return MultiVector(n, grade, std::move(coeffs));
}

inline MultiVectorD multivector_from_json_d(const json& j) {
    int n = j.at("n").get<int>();
    int grade = j.at("grade").get<int>();
    std::vector<double> coeffs;
    for (const auto& e : j.at("coeffs")) coeffs.push_back(scalar_from_json(e, Mode::Float).to_double());
    return MultiVectorD(n, grade, std::move(coeffs));
}

template <typename S>
json dualvector_to_json(const DualVectorT<S>& m) {
    json coeffs = json::array();
    for (const auto& c : m.coeffs()) {
        if constexpr (std::is_same_v<S, Rational>)
            coeffs.push_back(scalar_to_json(Scalar(c)));
        else
            coeffs.push_back(c);
    }
    return json{{"n", m.n()}, {"grade", m.grade()}, {"coeffs", coeffs}};
}

} // namespace exterior

} // namespace tori
