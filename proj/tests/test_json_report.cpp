#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "wrad/json_io.hpp"
#include "wrad/report.hpp"

using namespace wrad;

TEST_SUITE("json_report") {

TEST_CASE("cm vector round-trips through json") {
    const CmVector h(Grid(4), {0.1, -2.0, 0.0, 3.5});
    const nlohmann::json j = cm_vector_to_json(h);
    CHECK(j.at("n_steps") == 4);
    const CmVector back = cm_vector_from_json(j);
    CHECK(back.grid() == h.grid());
    for (int i = 0; i < 4; ++i) CHECK(back.deriv()[i] == h.deriv()[i]);

    CHECK_THROWS_AS(cm_vector_from_json(nlohmann::json{{"n_steps", 3}, {"deriv", {1.0}}}),
                    SchemaError);
}

TEST_CASE("vector specs") {
    const Grid g(4);
    const nlohmann::json kernel = {{"kind", "kernel"}, {"s", 0.5}};
    const CmVector k = vector_spec_from_json(kernel, g);
    CHECK(k.deriv()[0] == 1.0);
    CHECK(k.deriv()[2] == 0.0);

    const nlohmann::json kd = {{"kind", "kernel_deriv"}, {"s", 0.5}};
    const CmVector k2 = vector_spec_from_json(kd, g);
    CHECK(k2.deriv()[1] == 1.0);

    const nlohmann::json plain = {{"deriv", {1.0, 2.0, 3.0, 4.0}}};
    CHECK(vector_spec_from_json(plain, g).deriv()[3] == 4.0);

    CHECK_THROWS_AS(vector_spec_from_json(nlohmann::json{{"kind", "mystery"}}, g),
                    SchemaError);
    CHECK_THROWS_AS(vector_spec_from_json(nlohmann::json{{"deriv", {1.0}}}, g), SchemaError);
}

TEST_CASE("subspace spec") {
    const nlohmann::json spec = {
        {"grid", 8},
        {"constraints",
         {{{"kind", "kernel"}, {"s", 0.25}}, {{"kind", "kernel"}, {"s", 0.75}}}},
        {"levels", {1.0, -1.0}}};
    const AffineSubspace sub = subspace_from_json(spec);
    CHECK(sub.codim() == 2);
    CHECK(sub.grid().n_steps() == 8);
    CHECK(sub.levels(1) == -1.0);

    nlohmann::json bad = spec;
    bad["levels"] = {1.0};
    CHECK_THROWS_AS(subspace_from_json(bad), SchemaError);
}

TEST_CASE("ito spec in both forms") {
    const Grid g(8);
    const nlohmann::json factored = {
        {"factors", {{{"kind", "kernel_deriv"}, {"s", 0.5}}, {{"kind", "kernel_deriv"}, {"s", 1.0}}}},
        {"T", 0.5},
        {"c", 1.0}};
    const ItoGrtSpec a = ito_spec_from_json(factored, g);
    CHECK(a.degree == 2);
    CHECK_FALSE(a.power_form);

    const nlohmann::json powered = {
        {"f", {{"kind", "kernel_deriv"}, {"s", 1.0}}}, {"n", 3}, {"T", 1.0}, {"c", 0.0}};
    const ItoGrtSpec b = ito_spec_from_json(powered, g);
    CHECK(b.degree == 3);
    CHECK(b.power_form);

    nlohmann::json conflicted = factored;
    conflicted["n"] = 5;
    CHECK_THROWS_AS(ito_spec_from_json(conflicted, g), SchemaError);
}

TEST_CASE("report floats survive a json round trip") {
    std::vector<CompareReport> rows(1);
    rows[0].check = "demo";
    rows[0].closed_form = 0.1;
    rows[0].estimate = 1.0 / 3.0;
    rows[0].std_error = 1e-300;
    rows[0].z_score = -2.5;
    rows[0].pass = true;
    const std::string text = render(rows, ReportFormat::kJson);
    const nlohmann::json parsed = nlohmann::json::parse(text);
    CHECK(parsed.at("check") == "demo");
    CHECK(parsed.at("closed_form").get<double>() == 0.1);
    CHECK(parsed.at("estimate").get<double>() == 1.0 / 3.0);
    CHECK(parsed.at("std_error").get<double>() == 1e-300);
    CHECK(parsed.at("pass").get<bool>() == true);
}

TEST_CASE("csv column order is fixed") {
    std::vector<CompareReport> rows(1);
    rows[0].check = "demo";
    const std::string text = render(rows, ReportFormat::kCsv);
    CHECK(text.rfind("check,closed_form,estimate,std_error,z,pass\n", 0) == 0);
}

TEST_CASE("fock rows pick abs_err or z_score") {
    std::vector<FockCheck> rows(2);
    rows[0].check = "exact";
    rows[0].abs_err = 1e-14;
    rows[0].pass = true;
    rows[1].check = "mc";
    rows[1].is_mc = true;
    rows[1].z_score = 0.5;
    rows[1].pass = true;
    const std::string text = render(rows, ReportFormat::kJson);
    CHECK(text.find("\"abs_err\"") != std::string::npos);
    CHECK(text.find("\"z_score\"") != std::string::npos);
    const size_t newline = text.find('\n');
    CHECK(text.substr(0, newline).find("z_score") == std::string::npos);
}

TEST_CASE("file io errors are typed") {
    CHECK_THROWS_AS(load_json_file("/nonexistent/nope.json"), IoError);
    const char* path = "bad_input_test.json";
    {
        std::ofstream out(path);
        out << "{\"oops\": ";
    }
    CHECK_THROWS_AS(load_json_file(path), SchemaError);
    std::remove(path);
}

}  // TEST_SUITE
