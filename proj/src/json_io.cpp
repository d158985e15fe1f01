/*
 * JSON readers/writers for the core value types.  Readers never trust shape:
 * every access is guarded and failures carry the offending context.  Writers
 * emit exactly the accepted shapes, so write -> read is the identity.
 */
#include "conflux/json_io.hpp"

#include <string>

#include "conflux/errors.hpp"

namespace conflux {

namespace {

[[noreturn]] void fail(const std::string& what) {
    throw ValidationError("config: " + what);
}

double number_at(const Json& j, const std::string& context) {
    if (!j.is_number()) fail(context + " must be a number");
    return j.get<double>();
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail("complex values are [re, im] number pairs, got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) fail("matrices are non-empty arrays of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) fail("matrix rows are non-empty arrays");
    const std::size_t cols = j[0].size();
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) fail("matrix rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k]);
    }
    return m;
}

Json polynomial_to_json(const Polynomial& p) {
    Json out = Json::array();
    for (Complex c : p) out.push_back(complex_to_json(c));
    return out;
}

Polynomial polynomial_from_json(const Json& j) {
    if (!j.is_array()) fail("polynomials are arrays of ascending [re, im] coefficients");
    Polynomial p;
    for (const Json& c : j) p.push_back(complex_from_json(c));
    return p;
}

Json rational_to_json(const RationalMatrix& r) {
    Json rows = Json::array();
    for (const auto& row : r.entries) {
        Json jrow = Json::array();
        for (const RationalEntry& e : row)
            jrow.push_back(Json{{"num", polynomial_to_json(e.num)},
                                {"den", polynomial_to_json(e.den)}});
        rows.push_back(std::move(jrow));
    }
    return Json{{"entries", std::move(rows)}};
}

RationalMatrix rational_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("entries")) fail("rational matrices need an \"entries\" key");
    const Json& rows = j["entries"];
    if (!rows.is_array() || rows.empty()) fail("rational entries must be a non-empty array");
    RationalMatrix r;
    r.n = static_cast<int>(rows.size());
    for (const Json& row : rows) {
        if (!row.is_array() || row.size() != rows.size())
            fail("rational entries must form a square matrix");
        std::vector<RationalEntry> out_row;
        for (const Json& e : row) {
            if (!e.is_object() || !e.contains("num") || !e.contains("den"))
                fail("rational entries need \"num\" and \"den\" polynomials");
            out_row.push_back(
                RationalEntry{polynomial_from_json(e["num"]), polynomial_from_json(e["den"])});
        }
        r.entries.push_back(std::move(out_row));
    }
    return r;
}

Json series_to_json(const FactorialSeries& f) {
    Json coeffs = Json::array();
    for (const Matrix& m : f.coeffs) coeffs.push_back(matrix_to_json(m));
    Json out{{"h", f.h}, {"coeffs", std::move(coeffs)}};
    out["cert"] = f.cert ? Json::array({f.cert->C, f.cert->lambda}) : Json(nullptr);
    return out;
}

FactorialSeries series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("h") || !j.contains("coeffs"))
        fail("factorial series need \"h\" and \"coeffs\"");
    FactorialSeries f;
    f.h = number_at(j["h"], "series step h");
    if (!(f.h > 0.0)) fail("series step h must be positive");
    if (!j["coeffs"].is_array() || j["coeffs"].empty())
        fail("series coefficients must be a non-empty array of matrices");
    for (const Json& m : j["coeffs"]) {
        f.coeffs.push_back(matrix_from_json(m));
        if (f.coeffs.back().rows() != f.coeffs.front().rows() ||
            f.coeffs.back().rows() != f.coeffs.back().cols())
            fail("series coefficients must be square matrices of one size");
    }
    if (j.contains("cert") && !j["cert"].is_null()) {
        const Json& c = j["cert"];
        if (!c.is_array() || c.size() != 2) fail("series cert is [C, lambda] or null");
        Certificate cert{number_at(c[0], "cert C"), number_at(c[1], "cert lambda")};
        if (cert.C < 0.0 || cert.lambda < 0.0) fail("series cert entries must be non-negative");
        f.cert = cert;
    }
    return f;
}

Json system_to_json(const DifferenceSystem& s) {
    Json out{{"h", s.h},
             {"orientation", s.orientation == Orientation::Plus ? "plus" : "minus"}};
    if (s.rational)
        out["A"] = Json{{"rational", rational_to_json(*s.rational)}};
    else
        out["A"] = Json{{"factorial", series_to_json(*s.factorial)}};
    return out;
}

DifferenceSystem system_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("A")) fail("systems need an \"A\" coefficient");
    Orientation orientation = Orientation::Plus;
    if (j.contains("orientation")) {
        const std::string o = j["orientation"].is_string() ? j["orientation"].get<std::string>()
                                                           : std::string();
        if (o == "plus")
            orientation = Orientation::Plus;
        else if (o == "minus")
            orientation = Orientation::Minus;
        else
            fail("orientation must be \"plus\" or \"minus\"");
    }
    const Json& a = j["A"];
    if (!a.is_object() || (a.contains("rational") == a.contains("factorial")))
        fail("\"A\" must hold exactly one of \"rational\" or \"factorial\"");
    if (a.contains("rational")) {
        if (!j.contains("h")) fail("rational-backed systems need a step \"h\"");
        const double h = number_at(j["h"], "system step h");
        return make_system(rational_from_json(a["rational"]), h, orientation);
    }
    FactorialSeries f = series_from_json(a["factorial"]);
    if (j.contains("h") &&
        std::abs(number_at(j["h"], "system step h") - f.h) > 1e-12 * std::max(1.0, f.h))
        fail("system step h disagrees with the factorial series step");
    return make_system(std::move(f), orientation);
}

} // namespace conflux
