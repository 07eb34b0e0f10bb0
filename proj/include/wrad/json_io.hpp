#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "wrad/affine.hpp"
#include "wrad/cm_space.hpp"

namespace wrad {

// Parses a file into JSON; IoError on filesystem failure, SchemaError with
// the parser diagnostic on malformed input.
nlohmann::json load_json_file(const std::string& path);

// {"n_steps": int, "deriv": [reals]}
nlohmann::json cm_vector_to_json(const CmVector& h);
CmVector cm_vector_from_json(const nlohmann::json& j);

// Vector spec used inside subspace and functional inputs:
//   {"kind":"kernel","s":t}        reproducing kernel at a knot
//   {"kind":"kernel_deriv","s":t}  same vector, named for its derivative
//   {"kind":"deriv","deriv":[..]}  explicit step derivative ("kind" optional)
CmVector vector_spec_from_json(const nlohmann::json& j, Grid grid);

// {"grid": int, "constraints": [vector specs], "levels": [reals]}
AffineSubspace subspace_from_json(const nlohmann::json& j);

// {"factors":[vector specs], "T":t, "c":v, "n":k} with either "factors"
// (degree = list size) or a single "f" raised to power "n".
struct ItoGrtSpec {
    std::vector<CmVector> factors;
    int degree = 0;
    bool power_form = false;  // single factor raised to degree
    double T = 0.0;
    double c = 0.0;
};
ItoGrtSpec ito_spec_from_json(const nlohmann::json& j, Grid default_grid);

}  // namespace wrad
