#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "isacsense/config_file.hpp"
#include "isacsense/csv.hpp"
#include "isacsense/manifest.hpp"

using namespace isacsense;

TEST_CASE("config text parses into typed fields") {
    std::istringstream in(
        "# example\n"
        "\n"
        "lambda_B = 2.5e-5\n"
        "alpha_c = 3.2\n"
        "N_t = 8\n"
        "h_B = 30\n"
        "mc.trials = 50000\n"
        "mc.guard_mode = per_realization\n"
        "inversion.quad_rel_tol = 1e-9\n");
    const Config cfg = parse_config(in, "inline");
    CHECK(cfg.params.lambda_b == 2.5e-5);
    CHECK(cfg.params.alpha_c == 3.2);
    CHECK(cfg.params.n_t == 8);
    CHECK(cfg.params.h_b == 30.0);
    CHECK(cfg.mc.trials == 50000);
    CHECK(cfg.mc.guard_mode == GuardMode::PerRealization);
    CHECK(cfg.inversion.quad_rel_tol == 1e-9);
    // untouched keys keep their defaults
    CHECK(cfg.params.alpha_r == 2.0);
    CHECK(cfg.mc.chunk == 8192);
}

TEST_CASE("config errors carry the source line") {
    std::istringstream bad_key("alpha_c = 4\nbogus_key = 1\n");
    CHECK_THROWS_WITH(parse_config(bad_key, "f.cfg"), Catch::Matchers::ContainsSubstring("f.cfg:2"));

    std::istringstream bad_value("alpha_c = fast\n");
    CHECK_THROWS_WITH(parse_config(bad_value, "f.cfg"), Catch::Matchers::ContainsSubstring("alpha_c"));

    std::istringstream no_eq("alpha_c 4\n");
    CHECK_THROWS_AS(parse_config(no_eq, "f.cfg"), config_error);

    std::istringstream bad_mode("mc.guard_mode = sometimes\n");
    CHECK_THROWS_AS(parse_config(bad_mode, "f.cfg"), config_error);
}

TEST_CASE("later keys win and whitespace is forgiven") {
    std::istringstream in("  alpha_c=3\n\talpha_c =  5  \n");
    const Config cfg = parse_config(in);
    CHECK(cfg.params.alpha_c == 5.0);
}

TEST_CASE("serialized config round-trips exactly") {
    Config cfg;
    cfg.params.lambda_b = 1.2345678901234567e-5;
    cfg.params.f_c = 28.1e9;
    cfg.mc.trials = 123457;
    cfg.mc.window_factor = 317.77;
    cfg.inversion.quantile_rel_tol = 3e-12;

    std::ostringstream out;
    for (const auto& [k, v] : config_items(cfg)) out << k << " = " << v << "\n";
    std::istringstream in(out.str());
    const Config back = parse_config(in);

    CHECK(back.params.lambda_b == cfg.params.lambda_b);
    CHECK(back.params.f_c == cfg.params.f_c);
    CHECK(back.mc.trials == cfg.mc.trials);
    CHECK(back.mc.window_factor == cfg.mc.window_factor);
    CHECK(back.inversion.quantile_rel_tol == cfg.inversion.quantile_rel_tol);
}

TEST_CASE("full-precision double formatting survives a round trip") {
    for (double v : {1.0 / 3.0, 1.2304746836124378, 7.7529e-4, 1e-300, 123456789.123456789}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("csv writer quotes only what needs quoting") {
    std::ostringstream out;
    CsvWriter csv(out, "demo-v1");
    csv.header({"plain", "with,comma", "with\"quote", "multi\nline"});
    csv.row({0.5, 1.0 / 3.0});
    const std::string text = out.str();
    CHECK(text.find("# schema: demo-v1\n") == 0);
    CHECK(text.find("plain,\"with,comma\",\"with\"\"quote\",\"multi\nline\"") != std::string::npos);
    CHECK(text.find("0.5,0.33333333333333331") != std::string::npos);
}

TEST_CASE("manifest round-trips keys in order") {
    RunManifest m;
    m.add("command", "dist");
    m.add("arg.seed", "42");
    Config cfg;
    m.add_config(cfg);
    m.add("output.0", "draws.csv");
    m.add("output.1", "summary.csv");

    std::ostringstream out;
    m.write(out);
    const std::string path = "manifest_roundtrip_test.txt";
    m.save(path);
    const RunManifest back = RunManifest::load(path);
    std::remove(path.c_str());

    REQUIRE(back.items().size() == m.items().size());
    for (std::size_t i = 0; i < m.items().size(); ++i) {
        CHECK(back.items()[i] == m.items()[i]);
    }
    CHECK(back.require("command") == "dist");
    CHECK(back.values_with_prefix("output.") == std::vector<std::string>{"draws.csv", "summary.csv"});
    CHECK(back.find("missing") == nullptr);
    CHECK_THROWS_AS(back.require("missing"), config_error);

    // the config section reconstructs the exact configuration
    Config rebuilt;
    for (const auto& [k, v] : back.items()) {
        if (k.rfind("config.", 0) == 0) set_key(rebuilt, k.substr(7), v);
    }
    CHECK(rebuilt.params.lambda_b == cfg.params.lambda_b);
    CHECK(rebuilt.mc.trials == cfg.mc.trials);
}
