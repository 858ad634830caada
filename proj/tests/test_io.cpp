#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "rsiss/beam.hpp"
#include "rsiss/report_io.hpp"
#include "rsiss/system_io.hpp"

using namespace rsiss;
using nlohmann::json;

TEST_CASE("system file round trip") {
    const SystemDefinition beam = beam::beam_system(2.0, 6);
    const SystemDefinition back = system_from_json_text(system_to_json_text(beam));
    CHECK(back.m == 2);
    CHECK((back.spectrum.eigenvalues - beam.spectrum.eigenvalues).norm() == 0.0);
    CHECK((back.b - beam.b).norm() == 0.0);
    CHECK(back.riesz.M_R == beam.riesz.M_R);
    CHECK(back.lift_norms.has_value());
    const ModalVector c = ModalVector::LinSpaced(12, 0.1, 1.2);
    CHECK(state_norm(back, c) == doctest::Approx(state_norm(beam, c)).epsilon(1e-14));
    CHECK(certificate_thm1(back).C1.value() == doctest::Approx(certificate_thm1(beam).C1.value()).epsilon(1e-14));

    const auto path = std::filesystem::temp_directory_path() / "rsiss_io_test_system.json";
    save_system(beam, path);
    CHECK(load_system(path).modes() == 12);
    std::filesystem::remove(path);
}

TEST_CASE("minimal system file") {
    const std::string text = R"({
        "eigenvalues": [[-1, 0], [-4, 1], [-9, -2]],
        "b": [[0.5, [0.2, 0.1], 0.1]],
        "m_R": 1, "M_R": 1, "m": 1, "c_E": 1
    })";
    const SystemDefinition s = system_from_json_text(text);
    CHECK(s.modes() == 3);
    CHECK(s.a.norm() == 0.0);
    CHECK(s.b(1, 0) == Complex(0.2, 0.1));
    CHECK(state_norm(s, ModalVector::Ones(3)) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("bad system files") {
    CHECK_THROWS_AS(system_from_json_text("{ not json"), InputError);
    CHECK_THROWS_AS(system_from_json_text(R"({"b": [[1]], "m_R": 1, "M_R": 1, "m": 1, "c_E": 1})"), InputError);
    // channel count mismatch
    CHECK_THROWS_AS(system_from_json_text(R"({"eigenvalues": [-1], "b": [[1], [2]],
        "m_R": 1, "M_R": 1, "m": 1, "c_E": 1})"),
                    InputError);
    // eigenvalue on the imaginary axis: no certificate applies
    CHECK_THROWS_AS(system_from_json_text(R"({"eigenvalues": [[0, 1], -1], "b": [[1, 1]],
        "m_R": 1, "M_R": 1, "m": 1, "c_E": 1})"),
                    InputError);
    CHECK_THROWS_AS(system_from_json_text(R"({"eigenvalues": [-1], "b": [[1]],
        "m_R": 2, "M_R": 1, "m": 1, "c_E": 1})"),
                    InputError);
    CHECK_THROWS_AS(load_system("/nonexistent/system.json"), InputError);
}

TEST_CASE("report JSON") {
    const json inf = certificate_to_json(beam_certificates_v1(1.0));
    CHECK(inf["C1"] == "inf");
    CHECK(inf["method"] == "beam-v1");
    const json fin = certificate_to_json(beam_v2_with_c2(2.0));
    CHECK(fin["C1"].is_number());
    CHECK(fin.contains("c2_source"));

    const SystemDefinition s = beam::beam_system(2.0, 4);
    const VerificationReport r =
        verify_iss(s, certificate_thm1(s), ModalVector::Ones(8), zero_disturbance(2), uniform_grid(0.3, 0.1));
    const json j = report_to_json(r, json{{"seed", 1}});
    CHECK(j["config"]["seed"] == 1);
    CHECK(j["n_violations"] == 0);
    REQUIRE(j["samples"].size() == 4);
    for (const auto& key : {"t", "lhs", "rhs", "margin"})
        CHECK(j["samples"][0].contains(key));
    CHECK(j["min_margin"].get<double>() == r.min_margin);
}
