#include "tori/unitary.hpp"

namespace tori::linalg {

Unitary Unitary::from_json(const json& j, Mode mode) {
    if (j.contains("monomial")) {
        const json& m = j.at("monomial");
        std::vector<long long> src = m.at("src").get<std::vector<long long>>();
        std::vector<Phase> phases;
        for (const auto& p : m.at("phases")) phases.push_back(phase_from_json(p, mode));
        if (src.size() != phases.size()) throw std::invalid_argument("monomial shape mismatch");
        std::vector<bool> seen(src.size(), false);
        for (long long s : src) {
            if (s < 0 || s >= static_cast<long long>(src.size()) || seen[static_cast<size_t>(s)])
                throw std::invalid_argument("monomial src is not a permutation");
            seen[static_cast<size_t>(s)] = true;
        }
        return Unitary(Monomial(std::move(src), std::move(phases)));
    }
    if (j.contains("dense")) {
        const json& rows = j.at("dense");
        size_t dim = rows.size();
        std::vector<cplx> data;
        data.reserve(dim * dim);
        for (const auto& row : rows) {
            if (row.size() != dim) throw std::invalid_argument("dense matrix must be square");
            for (const auto& e : row)
                data.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
        }
        return Unitary(Dense(dim, std::move(data)));
    }
    throw std::invalid_argument("unitary must be {monomial:...} or {dense:...}");
}

json Unitary::to_json() const {
    if (mono_) {
        json phases = json::array();
        for (const auto& p : mono_->phases()) phases.push_back(phase_to_json(p));
        return json{{"monomial", json{{"src", mono_->src()}, {"phases", phases}}}};
    }
    json rows = json::array();
    for (size_t i = 0; i < dense_->dim(); ++i) {
        json row = json::array();
        for (size_t j2 = 0; j2 < dense_->dim(); ++j2)
            row.push_back(json::array({dense_->at(i, j2).real(), dense_->at(i, j2).imag()}));
        rows.push_back(row);
    }
    return json{{"dense", rows}};
}

} // namespace tori::linalg
