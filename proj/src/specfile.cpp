#include "masseylab/specfile.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <utility>

namespace masseylab {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& origin, const std::string& msg) {
    throw ParseError(origin + ": " + msg, 0);
}

const json& require_field(const std::string& origin, const json& obj, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) schema_error(origin, "missing field '" + key + "'");
    return *it;
}

std::string require_string(const std::string& origin, const json& obj, const std::string& key) {
    const json& v = require_field(origin, obj, key);
    if (!v.is_string()) schema_error(origin, "field '" + key + "' must be a string");
    return v.get<std::string>();
}

int require_int(const std::string& origin, const json& obj, const std::string& key) {
    const json& v = require_field(origin, obj, key);
    if (!v.is_number_integer()) schema_error(origin, "field '" + key + "' must be an integer");
    return v.get<int>();
}

Rational coeff_from(const std::string& origin, const json& v) {
    if (!v.is_string())
        schema_error(origin, "coefficients must be rational strings like \"-3/2\"");
    auto r = rational_from_string(v.get<std::string>());
    if (!r) schema_error(origin, "bad rational '" + v.get<std::string>() + "'");
    return *r;
}

std::vector<std::pair<std::string, Rational>> combo_from(const std::string& origin,
                                                         const json& arr) {
    if (!arr.is_array()) schema_error(origin, "'result' must be an array of {basis, coeff}");
    std::vector<std::pair<std::string, Rational>> out;
    for (const json& term : arr) {
        if (!term.is_object()) schema_error(origin, "'result' entries must be {basis, coeff}");
        out.emplace_back(require_string(origin, term, "basis"),
                         coeff_from(origin, require_field(origin, term, "coeff")));
    }
    return out;
}

AlgebraHandle load_free(const std::string& origin, const json& doc, int degree_bound,
                        const std::string& label) {
    const json& gens = require_field(origin, doc, "generators");
    if (!gens.is_array()) schema_error(origin, "'generators' must be an array");
    std::vector<GeneratorSpec> generators;
    for (const json& g : gens) {
        if (!g.is_object()) schema_error(origin, "'generators' entries must be objects");
        generators.push_back({require_string(origin, g, "name"), require_int(origin, g, "degree")});
    }
    std::map<std::string, std::string> differential;
    if (doc.contains("differential")) {
        const json& d = doc["differential"];
        if (!d.is_object())
            schema_error(origin, "'differential' must map generator names to expressions");
        for (auto it = d.begin(); it != d.end(); ++it) {
            if (!it.value().is_string())
                schema_error(origin, "'differential' values must be expression strings");
            differential[it.key()] = it.value().get<std::string>();
        }
    }
    return build_free_cdga(generators, differential, degree_bound, label);
}

AlgebraHandle load_structure_constants(const std::string& origin, const json& doc,
                                       int degree_bound, const std::string& label) {
    ScAlgebraSpec spec;
    spec.degree_bound = degree_bound;
    spec.label = label;

    const json& basis = require_field(origin, doc, "basis");
    if (!basis.is_array()) schema_error(origin, "'basis' must be an array of per-degree lists");
    for (const json& row : basis) {
        if (!row.is_array()) schema_error(origin, "'basis' entries must be arrays of names");
        std::vector<std::string> names;
        for (const json& n : row) {
            if (!n.is_string()) schema_error(origin, "basis names must be strings");
            names.push_back(n.get<std::string>());
        }
        spec.basis_by_degree.push_back(std::move(names));
    }
    spec.unit = require_string(origin, doc, "unit");

    if (doc.contains("products")) {
        const json& prods = doc["products"];
        if (!prods.is_array()) schema_error(origin, "'products' must be an array");
        for (const json& p : prods) {
            if (!p.is_object()) schema_error(origin, "'products' entries must be objects");
            spec.products.push_back({require_string(origin, p, "left"),
                                     require_string(origin, p, "right"),
                                     combo_from(origin, require_field(origin, p, "result"))});
        }
    }
    if (doc.contains("differential")) {
        const json& diffs = doc["differential"];
        if (!diffs.is_array()) schema_error(origin, "'differential' must be an array");
        for (const json& d : diffs) {
            if (!d.is_object()) schema_error(origin, "'differential' entries must be objects");
            spec.differential.push_back({require_string(origin, d, "on"),
                                         combo_from(origin, require_field(origin, d, "result"))});
        }
    }
    return build_sc_algebra(spec);
}

} // namespace

AlgebraHandle load_algebra(std::istream& in, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(origin + ": " + e.what(), e.byte);
    }
    if (!doc.is_object()) schema_error(origin, "top level must be an object");
    const std::string format = require_string(origin, doc, "format");
    if (format != "masseylab-algebra")
        schema_error(origin, "unrecognized format '" + format + "'");
    if (require_int(origin, doc, "version") != 1)
        schema_error(origin, "unsupported version (expected 1)");
    const int degree_bound = require_int(origin, doc, "degree_bound");
    const std::string label =
        doc.contains("label") ? require_string(origin, doc, "label") : "";

    const std::string kind = require_string(origin, doc, "kind");
    if (kind == "free") return load_free(origin, doc, degree_bound, label);
    if (kind == "structure_constants")
        return load_structure_constants(origin, doc, degree_bound, label);
    schema_error(origin, "unknown kind '" + kind + "'");
}

AlgebraHandle load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open algebra file '" + path + "'", 0);
    return load_algebra(in, path);
}

std::string export_algebra(const AlgebraHandle& a) {
    if (!a) throw DomainError("export_algebra: null algebra");
    json doc;
    doc["format"] = "masseylab-algebra";
    doc["version"] = 1;
    doc["degree_bound"] = a->degree_bound();
    if (!a->label().empty()) doc["label"] = a->label();

    if (a->backend() == Algebra::Backend::free) {
        doc["kind"] = "free";
        const FreeStructure& fs = *a->free_structure();
        json gens = json::array();
        for (const GeneratorSpec& g : fs.generators)
            gens.push_back(json{{"degree", g.degree}, {"name", g.name}});
        doc["generators"] = std::move(gens);
        json diff = json::object();
        for (std::size_t g = 0; g < fs.generators.size(); ++g)
            if (fs.differential_sources[g] != "0")
                diff[fs.generators[g].name] = fs.differential_sources[g];
        doc["differential"] = std::move(diff);
        return doc.dump(2) + "\n";
    }

    doc["kind"] = "structure_constants";
    const int bound = a->degree_bound();
    json basis = json::array();
    for (int q = 0; q <= bound; ++q) basis.push_back(a->basis_names(q));
    doc["basis"] = std::move(basis);
    doc["unit"] = a->basis_name(0, a->unit_index());

    json prods = json::array();
    for (int di = 1; di <= bound; ++di)
        for (int dj = 1; di + dj <= bound; ++dj)
            for (std::size_t i = 0; i < a->dim(di); ++i)
                for (std::size_t j = 0; j < a->dim(dj); ++j) {
                    const Vec& coords = a->product_coords(di, i, dj, j);
                    json result = json::array();
                    for (std::size_t t = 0; t < coords.size(); ++t)
                        if (coords[t] != 0)
                            result.push_back(json{{"basis", a->basis_name(di + dj, t)},
                                                  {"coeff", rational_to_string(coords[t])}});
                    prods.push_back(json{{"left", a->basis_name(di, i)},
                                         {"right", a->basis_name(dj, j)},
                                         {"result", std::move(result)}});
                }
    doc["products"] = std::move(prods);

    json diffs = json::array();
    for (int k = 0; k < bound; ++k) {
        const Matrix& dk = a->differential_matrix(k);
        for (std::size_t col = 0; col < a->dim(k); ++col) {
            json result = json::array();
            for (std::size_t r = 0; r < dk.rows(); ++r)
                if (dk.at(r, col) != 0)
                    result.push_back(json{{"basis", a->basis_name(k + 1, r)},
                                          {"coeff", rational_to_string(dk.at(r, col))}});
            if (!result.empty())
                diffs.push_back(
                    json{{"on", a->basis_name(k, col)}, {"result", std::move(result)}});
        }
    }
    doc["differential"] = std::move(diffs);
    return doc.dump(2) + "\n";
}

void save_algebra_file(const AlgebraHandle& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write algebra file '" + path + "'");
    out << export_algebra(a);
    if (!out) throw DomainError("failed writing algebra file '" + path + "'");
}

} // namespace masseylab
