#include "kop/io.hpp"

#include <fstream>
#include <sstream>

namespace kop {

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::exception& e) {
        throw InputError(std::string("bad rational: ") + e.what());
    }
    throw InputError("expected a rational string, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rational_to_json(x));
    return a;
}

Vector vector_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals");
    Vector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
}

Json matrix_to_json(const Matrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
    return a;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected a matrix (array of rows)");
    std::vector<Vector> rows;
    for (const auto& r : j) rows.push_back(vector_from_json(r));
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InputError("ragged matrix rows");
        for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
    }
    return m;
}

Json phi_to_json(const PhiVector& a) {
    return Json{{"truncation", a.truncation()}, {"coeffs", vector_to_json(a.coeffs())}};
}

PhiVector phi_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("coeffs")) throw InputError("PhiVector needs \"coeffs\"");
    Vector c = vector_from_json(j.at("coeffs"));
    if (j.contains("truncation")) {
        const auto n = j.at("truncation").get<std::size_t>();
        if (n != c.size()) throw InputError("truncation does not match the coefficient count");
    }
    return PhiVector(std::move(c));
}

std::string structure_constants_csv(const OperationRing& ring, std::size_t truncation) {
    auto table = ring.structure_table(truncation);
    std::ostringstream out;
    out << "j,n,k,value\n";
    for (std::size_t j = 0; j < truncation; ++j)
        for (std::size_t n = 0; n < truncation; ++n)
            for (std::size_t k = std::max(j, n); k < truncation && k <= j + n; ++k)
                out << j << ',' << n << ',' << k << ',' << to_string(table->at(j, n, k)) << '\n';
    return out.str();
}

Json module_to_json(const FpModule& m) {
    std::string variant(to_string(m.config().variant));
    return Json{{"p", m.p()},
                {"q", m.config().q.get_si()},
                {"variant", variant},
                {"torsion_exponents", m.torsion_exponents()},
                {"free_rank", m.free_rank()},
                {"action", matrix_to_json(m.action())}};
}

FpModule module_from_json(const Json& j, const RingConfig* fallback) {
    if (!j.is_object()) throw InputError("module document must be a JSON object");
    try {
        RingConfig cfg = fallback ? *fallback : make_config(3);
        const unsigned long p = j.contains("p") ? j.at("p").get<unsigned long>() : cfg.p;
        const Variant v = j.contains("variant") ? parse_variant(j.at("variant").get<std::string>()) : cfg.variant;
        if (j.contains("q")) cfg = make_config(p, Integer(j.at("q").get<long>()), v, cfg.truncation);
        else if (p != cfg.p || v != cfg.variant) cfg = make_config(p, v, cfg.truncation);
        auto exps = j.value("torsion_exponents", std::vector<unsigned>{});
        auto r = j.value("free_rank", std::size_t{0});
        Matrix t = j.contains("action") ? matrix_from_json(j.at("action")) : Matrix(0, 0);
        return make_module(cfg, exps, r, t);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed module: ") + e.what());
    }
}

Json uelement_to_json(const UElement& f) {
    Json support = Json::array();
    for (const auto& [k, v] : f.entries) support.push_back(Json::array({k, vector_to_json(v)}));
    return Json{{"bound", f.bound}, {"support", support}};
}

UElement uelement_from_json(const Json& j, const FpModule& m) {
    if (!j.is_object() || !j.contains("support")) throw InputError("UElement needs \"support\"");
    UElement f;
    std::size_t max_k = 0;
    bool any = false;
    for (const auto& e : j.at("support")) {
        if (!e.is_array() || e.size() != 2) throw InputError("support entries are [k, [coords]]");
        const auto k = e[0].get<std::size_t>();
        f.entries[k] = vector_from_json(e[1]);
        max_k = std::max(max_k, k);
        any = true;
    }
    f.bound = j.contains("bound") ? j.at("bound").get<std::size_t>() : (any ? max_k + 1 : 0);
    return normalize(m, f);
}

Json report_to_json(const IdentityReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back(Json{{"instance", f.instance}, {"witness", f.witness}});
    return Json{{"kind", r.kind},   {"summary", r.summary},         {"checked", r.checked},
                {"pass", r.pass()}, {"failures", failures}};
}

Json report_to_json(const BousfieldReport& r) {
    Json b{{"verdict", std::string(to_string(r.diagonalisable))},
           {"eigenvalue_exponents", r.eigenvalue_exponents}};
    if (!r.diagonalisable_witness.empty()) b["witness"] = r.diagonalisable_witness;
    Json c{{"verdict", std::string(to_string(r.continuity))}};
    if (r.continuity_k) c["k"] = *r.continuity_k;
    if (!r.continuity_witness.empty()) c["witness"] = r.continuity_witness;
    return Json{{"pass", r.pass()},
                {"a_finitely_generated", {{"verdict", r.finitely_generated ? "pass" : "fail"}}},
                {"b_diagonalisable", b},
                {"c_continuity", c}};
}

Json report_to_json(const ExactnessReport& r) {
    Json clauses = Json::array();
    for (const auto& c : r.clauses)
        clauses.push_back(Json{{"name", c.name}, {"verdict", c.pass ? "pass" : "fail"}, {"witness", c.witness}});
    return Json{{"pass", r.pass()}, {"support", r.support}, {"annihilation_exponent", r.annihilation},
                {"clauses", clauses}};
}

Json abcong_to_json(const AbcongSolution& s) {
    Json b = Json::array();
    for (std::size_t j = 0; j < s.b.size(); ++j)
        b.push_back(s.determined[j] ? Json(s.b[j]) : Json(nullptr));
    return Json{{"n", s.n},
                {"window", s.window},
                {"rank", s.rank},
                {"triangular", s.triangular},
                {"consistent", s.consistent},
                {"pattern_holds", s.pattern_holds},
                {"b", b}};
}

Json hom_to_json(const HomGroup& h) {
    Json gens = Json::array();
    for (std::size_t i = 0; i < h.generators.size(); ++i) {
        Json g{{"matrix", matrix_to_json(h.generators[i])}};
        g["order_exponent"] = h.orders[i] ? Json(*h.orders[i]) : Json("infinite");
        gens.push_back(g);
    }
    return Json{{"generators", gens}};
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace kop
