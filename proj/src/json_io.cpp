#include "wrad/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace wrad {

using nlohmann::json;

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError("malformed JSON in '" + path + "': " + e.what());
    }
}

namespace {

const json& require_field(const json& j, const char* name, const char* context) {
    if (!j.is_object() || !j.contains(name)) {
        throw SchemaError(std::string(context) + ": missing field '" + name + "'");
    }
    return j.at(name);
}

double number_field(const json& j, const char* name, const char* context) {
    const json& v = require_field(j, name, context);
    if (!v.is_number()) {
        throw SchemaError(std::string(context) + ": field '" + name + "' must be a number");
    }
    return v.get<double>();
}

int int_field(const json& j, const char* name, const char* context) {
    const json& v = require_field(j, name, context);
    if (!v.is_number_integer()) {
        throw SchemaError(std::string(context) + ": field '" + name + "' must be an integer");
    }
    return v.get<int>();
}

std::vector<double> real_list(const json& v, const char* name, const char* context) {
    if (!v.is_array()) {
        throw SchemaError(std::string(context) + ": field '" + name + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const json& x : v) {
        if (!x.is_number()) {
            throw SchemaError(std::string(context) + ": field '" + name +
                              "' must contain only numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

json cm_vector_to_json(const CmVector& h) {
    return json{{"n_steps", h.grid().n_steps()},
                {"deriv", std::vector<double>(h.deriv().begin(), h.deriv().end())}};
}

CmVector cm_vector_from_json(const json& j) {
    const int n = int_field(j, "n_steps", "cm_vector");
    std::vector<double> deriv = real_list(require_field(j, "deriv", "cm_vector"), "deriv",
                                          "cm_vector");
    if (static_cast<int>(deriv.size()) != n) {
        throw SchemaError("cm_vector: 'deriv' has " + std::to_string(deriv.size()) +
                          " cells but 'n_steps' is " + std::to_string(n));
    }
    return CmVector(Grid(n), std::move(deriv));
}

CmVector vector_spec_from_json(const json& j, Grid grid) {
    if (!j.is_object()) throw SchemaError("vector spec must be an object");
    std::string kind;
    if (j.contains("kind")) {
        kind = j.at("kind").get<std::string>();
    } else if (j.contains("deriv")) {
        kind = "deriv";
    } else {
        throw SchemaError("vector spec: missing 'kind'");
    }
    if (kind == "kernel" || kind == "kernel_deriv") {
        return kernel_vector(number_field(j, "s", "vector spec"), grid);
    }
    if (kind == "deriv") {
        std::vector<double> deriv = real_list(require_field(j, "deriv", "vector spec"),
                                              "deriv", "vector spec");
        if (static_cast<int>(deriv.size()) != grid.n_steps()) {
            throw SchemaError("vector spec: 'deriv' has " + std::to_string(deriv.size()) +
                              " cells, grid has " + std::to_string(grid.n_steps()));
        }
        return CmVector(grid, std::move(deriv));
    }
    throw SchemaError("vector spec: unknown kind '" + kind + "'");
}

AffineSubspace subspace_from_json(const json& j) {
    const Grid grid(int_field(j, "grid", "subspace"));
    const json& constraints = require_field(j, "constraints", "subspace");
    if (!constraints.is_array() || constraints.empty()) {
        throw SchemaError("subspace: 'constraints' must be a nonempty array");
    }
    std::vector<CmVector> vectors;
    vectors.reserve(constraints.size());
    for (const json& c : constraints) vectors.push_back(vector_spec_from_json(c, grid));
    const std::vector<double> levels = real_list(require_field(j, "levels", "subspace"),
                                                 "levels", "subspace");
    if (levels.size() != vectors.size()) {
        throw SchemaError("subspace: " + std::to_string(vectors.size()) +
                          " constraints but " + std::to_string(levels.size()) + " levels");
    }
    Eigen::VectorXd c(levels.size());
    for (size_t k = 0; k < levels.size(); ++k) c(k) = levels[k];
    return AffineSubspace(std::move(vectors), std::move(c));
}

ItoGrtSpec ito_spec_from_json(const json& j, Grid default_grid) {
    ItoGrtSpec spec;
    const Grid grid = j.contains("grid") ? Grid(int_field(j, "grid", "ito spec"))
                                         : default_grid;
    spec.T = number_field(j, "T", "ito spec");
    spec.c = number_field(j, "c", "ito spec");
    if (j.contains("factors")) {
        const json& factors = j.at("factors");
        if (!factors.is_array() || factors.empty()) {
            throw SchemaError("ito spec: 'factors' must be a nonempty array");
        }
        for (const json& f : factors) {
            spec.factors.push_back(vector_spec_from_json(f, grid));
        }
        spec.degree = static_cast<int>(spec.factors.size());
        if (j.contains("n") && int_field(j, "n", "ito spec") != spec.degree) {
            throw SchemaError("ito spec: 'n' disagrees with the number of factors");
        }
    } else if (j.contains("f")) {
        spec.factors.push_back(vector_spec_from_json(j.at("f"), grid));
        spec.degree = int_field(j, "n", "ito spec");
        spec.power_form = true;
    } else {
        throw SchemaError("ito spec: need 'factors' or 'f'");
    }
    return spec;
}

}  // namespace wrad
