#pragma once

#include <json.hpp>

#include "uplab/basis_window.hpp"
#include "uplab/complex_matrix.hpp"
#include "uplab/quotient.hpp"

namespace uplab {

/// Interchange format: {"dim": n, "re": [[...]], "im": [[...]]} with
/// row-major n x n arrays.
inline nlohmann::json matrix_to_json(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i) {
        nlohmann::json rrow = nlohmann::json::array();
        nlohmann::json irow = nlohmann::json::array();
        for (std::size_t j = 0; j < n; ++j) {
            rrow.push_back(a(i, j).real());
            irow.push_back(a(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return {{"dim", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& a, const BasisWindow& w) {
    w.check(a);
    nlohmann::json j = matrix_to_json(a);
    nlohmann::json idx = nlohmann::json::array();
    for (std::size_t s = 0; s < w.dim(); ++s) idx.push_back(w.label(s));
    j["indices"] = std::move(idx);
    return j;
}

inline nlohmann::json class_to_json(const QuotientClass& c) {
    nlohmann::json j = matrix_to_json(c.rep());
    j["hermitian"] = true;
    return j;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument("matrix_from_json: need fields dim, re, im");
    const auto n = j.at("dim").get<std::size_t>();
    if (n == 0) throw std::invalid_argument("matrix_from_json: dim must be positive");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != n || im.size() != n)
        throw std::invalid_argument("matrix_from_json: row count mismatch");
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (re.at(i).size() != n || im.at(i).size() != n)
            throw std::invalid_argument("matrix_from_json: column count mismatch");
        for (std::size_t jx = 0; jx < n; ++jx)
            a(i, jx) = cplx(re.at(i).at(jx).get<double>(), im.at(i).at(jx).get<double>());
    }
    if (!all_finite(a)) throw std::invalid_argument("matrix_from_json: non-finite entries");
    return a;
}

}  // namespace uplab
