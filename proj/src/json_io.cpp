#include "supercauchy/json_io.hpp"

#include <fstream>

namespace supercauchy {

namespace {

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<int64_t>());
    if (j.is_number_float()) return Rat(j.get<double>());
    throw Error("expected a number or rational string, got " + j.dump());
}

Json rat_to_json(const Rat& r) {
    if (boost::multiprecision::denominator(r) == 1) {
        const auto num = boost::multiprecision::numerator(r);
        if (num >= -(1ll << 53) && num <= (1ll << 53))
            return Json(num.convert_to<int64_t>());
    }
    return Json(rat_to_string(r));
}

}  // namespace

AlgebraPtr algebra_from_json(const Json& doc) {
    if (!doc.is_object()) throw Error("algebra document must be a JSON object");
    for (const char* key : {"p_plus_1", "q", "gamma"})
        if (!doc.contains(key))
            throw Error(std::string("algebra document missing '") + key + "'");

    const int p1 = doc.at("p_plus_1").get<int>();
    const int q = doc.at("q").get<int>();
    const std::string name = doc.value("name", std::string("unnamed"));
    const int d = p1 + q;
    if (p1 < 1 || q < 0) throw Error("invalid dimensions");

    const Json& g = doc.at("gamma");
    if (!g.is_array() || static_cast<int>(g.size()) != d)
        throw Error("gamma must be a " + std::to_string(d) + "^3 array");
    RatVec gamma(static_cast<size_t>(d) * d * d);
    for (int i = 0; i < d; ++i) {
        const Json& gi = g.at(i);
        if (!gi.is_array() || static_cast<int>(gi.size()) != d)
            throw Error("gamma[" + std::to_string(i) + "] has wrong length");
        for (int j = 0; j < d; ++j) {
            const Json& gij = gi.at(j);
            if (!gij.is_array() || static_cast<int>(gij.size()) != d)
                throw Error("gamma[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "] has wrong length");
            for (int k = 0; k < d; ++k)
                gamma[(static_cast<size_t>(i) * d + j) * d + k] = rat_from_json(gij.at(k));
        }
    }

    std::optional<A1Data> a1;
    if (doc.contains("a1") && !doc.at("a1").is_null()) {
        const Json& ja = doc.at("a1");
        A1Data w;
        w.s = ja.at("s").get<std::vector<int>>();
        for (const Json& row : ja.at("a")) {
            if (!row.is_array() ||
                (static_cast<int>(row.size()) != p1 && static_cast<int>(row.size()) != d))
                throw Error("a1 coefficient rows must have length p+1 or p+1+q");
            Element e(d);
            for (size_t k = 0; k < row.size(); ++k) e.c[k] = rat_from_json(row.at(k));
            w.a.push_back(std::move(e));
        }
        a1 = std::move(w);
    }
    return std::make_shared<Algebra>(name, p1, q, gamma, std::move(a1));
}

AlgebraPtr algebra_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open algebra file '" + path + "'");
    Json doc;
    try {
        in >> doc;
    } catch (const Json::parse_error& e) {
        throw Error("JSON parse error in '" + path + "': " + e.what());
    }
    return algebra_from_json(doc);
}

Json algebra_to_json(const Algebra& a) {
    const int d = a.dim();
    Json g = Json::array();
    for (int i = 0; i < d; ++i) {
        Json gi = Json::array();
        for (int j = 0; j < d; ++j) {
            Json gij = Json::array();
            for (int k = 0; k < d; ++k) gij.push_back(rat_to_json(a.gamma(i, j, k)));
            gi.push_back(std::move(gij));
        }
        g.push_back(std::move(gi));
    }
    Json doc{{"name", a.name()}, {"p_plus_1", a.p_plus_1()}, {"q", a.q()},
             {"gamma", std::move(g)}};
    if (a.a1()) {
        Json rows = Json::array();
        for (const auto& e : a.a1()->a) {
            Json row = Json::array();
            for (int k = 0; k < a.p_plus_1(); ++k) row.push_back(rat_to_json(e.c[k]));
            rows.push_back(std::move(row));
        }
        doc["a1"] = Json{{"s", a.a1()->s}, {"a", std::move(rows)}};
    }
    return doc;
}

PolyFunction poly_from_json(const Json& doc, const Shape& default_shape) {
    Shape shape = default_shape;
    const Json* terms = &doc;
    if (doc.is_object()) {
        shape = Shape(default_shape.algebra, doc.value("n", default_shape.n),
                      doc.value("m", default_shape.m));
        terms = &doc.at("terms");
    }
    if (!terms->is_array()) throw Error("polynomial must be a list of terms");
    PolyFunction f(shape);
    for (const Json& t : *terms) {
        const auto exp = t.at("exp").get<std::vector<int>>();
        if (static_cast<int>(exp.size()) != shape.coords())
            throw Error("term exponent length " + std::to_string(exp.size()) +
                             " does not match " + std::to_string(shape.coords()) +
                             " coordinates");
        for (int e : exp)
            if (e < 0) throw Error("negative exponent");
        f.add_term(exp, element_from_json(t.at("coeff"), shape.algebra->dim()));
    }
    return f;
}

Json poly_to_json(const PolyFunction& f) {
    Json terms = Json::array();
    for (const auto& [exp, coeff] : f.terms())
        terms.push_back(Json{{"exp", exp}, {"coeff", element_to_json(coeff)}});
    return terms;
}

Json element_to_json(const Element& e) {
    Json out = Json::array();
    for (const auto& r : e.c) out.push_back(rat_to_json(r));
    return out;
}

Element element_from_json(const Json& j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw Error("element must be a list of " + std::to_string(dim) +
                         " coefficients");
    Element e(dim);
    for (int k = 0; k < dim; ++k) e.c[k] = rat_from_json(j.at(k));
    return e;
}

Json series_to_json(const SuperSeries& s) {
    const int r = s.shape.m >= 1 ? s.shape.algebra->a1()->r() : 0;
    Json terms = Json::array();
    for (const auto& [key, coeff] : s.coeffs) {
        Json jk = Json::array();
        std::vector<int> I(key.begin(), key.begin() + s.shape.n);
        Json J = Json::array();
        for (int k = 0; k < r; ++k) {
            std::vector<int> row(key.begin() + s.shape.n + k * s.shape.m,
                                 key.begin() + s.shape.n + (k + 1) * s.shape.m);
            J.push_back(row);
        }
        terms.push_back(Json{{"I", I}, {"J", J}, {"coeff", element_to_json(coeff)}});
    }
    Json center = Json::array();
    for (const auto& v : s.center.x) center.push_back(rat_to_json(v));
    return Json{{"center", center}, {"terms", terms}};
}

Json report_to_json(const QuadReport& r) {
    Json out{{"experiment", r.experiment}, {"algebra", r.algebra},
             {"nodes", r.nodes},           {"seed", r.seed},
             {"value", r.value},           {"abs_err", r.abs_err},
             {"rel_err", r.rel_err},       {"runtime_ms", r.runtime_ms}};
    if (r.oracle) out["oracle"] = *r.oracle;
    for (const auto& [k, v] : r.extra) out[k] = v;
    return out;
}

Json validation_to_json(const ValidationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json jc{{"name", c.name}, {"pass", c.pass}};
        if (!c.witness.empty()) jc["witness"] = c.witness;
        checks.push_back(std::move(jc));
    }
    return Json{{"valid", r.valid()}, {"checks", checks}};
}

Json a1_report_to_json(const A1Report& r) {
    Json out{{"present", r.present}, {"pass", r.pass}};
    Json sums = Json::array();
    for (const auto& e : r.block_sums) sums.push_back(element_to_json(e));
    out["block_sums"] = sums;
    if (!r.relation_fails.empty()) out["relation_fails"] = r.relation_fails;
    if (!r.error.empty()) out["error"] = r.error;
    return out;
}

}  // namespace supercauchy
