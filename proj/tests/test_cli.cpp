#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kWorkRoot = fs::temp_directory_path() / "szego_cli_test";

struct RunResult {
    int exit_code;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(SZEGO_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return {status >= 0 ? (status >> 8) & 0xff : -1};
}

/// The tool refuses to invent output directories; tests make them first.
std::string out_dir(const fs::path& p) {
    fs::create_directories(p);
    return p.string();
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) row.push_back(item);
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* kLebesgueConfig = R"({
  "measure": {"weight": {"kind": "uniform"}, "quadrature_points": 1024, "moments": 128},
  "n": 4, "seed": 1
})";

const char* kBsConfig = R"({
  "measure": {"weight": {"kind": "bernstein_szego", "alphas": [0.5]},
              "quadrature_points": 2048, "moments": 128},
  "n": 5, "seed": 3
})";

}  // namespace

TEST_CASE("compute writes the coefficient tables") {
    const fs::path dir = kWorkRoot / "compute";
    fs::remove_all(dir);
    write_file(dir / "cfg.json", kLebesgueConfig);
    const auto r = run_cli("compute --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "out"));
    CHECK(r.exit_code == 0);

    const auto coeff = read_csv(dir / "out" / "coefficients.csv");
    REQUIRE(coeff.size() >= 5);
    CHECK(coeff[0] == std::vector<std::string>{"n", "a", "b", "beta", "iota", "jmath", "varsigma",
                                               "zeta"});
    // Lebesgue rows: a = b = 1/sqrt(2) from level 1 on, everything else zero
    CHECK(std::stod(coeff[2][1]) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::stod(coeff[2][3]) == doctest::Approx(0.0).epsilon(1e-12));

    const auto opuc = read_csv(dir / "out" / "opuc.csv");
    CHECK(opuc[0][0] == "n");
    for (std::size_t r2 = 1; r2 < opuc.size(); ++r2) {
        CHECK(std::stod(opuc[r2][1]) == doctest::Approx(0.0).epsilon(1e-12));  // alpha_re
        CHECK(std::stod(opuc[r2][3]) == doctest::Approx(1.0).epsilon(1e-12));  // kappa
    }
}

TEST_CASE("verify: exit codes, determinism, id filter") {
    const fs::path dir = kWorkRoot / "verify";
    fs::remove_all(dir);
    write_file(dir / "cfg.json", kBsConfig);

    SUBCASE("all identities pass") {
        const auto r = run_cli("verify --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "a"));
        CHECK(r.exit_code == 0);
        const std::string rep = slurp(dir / "a" / "report.json");
        CHECK(rep.find("\"all_pass\": true") != std::string::npos);
    }
    SUBCASE("byte-identical reports for a fixed seed") {
        run_cli("verify --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "r1"));
        run_cli("verify --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "r2"));
        CHECK(slurp(dir / "r1" / "report.json") == slurp(dir / "r2" / "report.json"));
        CHECK(!slurp(dir / "r1" / "report.json").empty());
    }
    SUBCASE("absurd tolerance forces failures and exit 1") {
        const auto r = run_cli("verify --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "tight") + " --tol 1e-16");
        CHECK(r.exit_code == 1);
    }
    SUBCASE("identity selection") {
        const auto r = run_cli("verify --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "sel") + " --ids ORTHO-OPUC,SZ-REC-PHI");
        CHECK(r.exit_code == 0);
        const std::string rep = slurp(dir / "sel" / "report.json");
        CHECK(rep.find("ORTHO-OPUC") != std::string::npos);
        CHECK(rep.find("SZ-REC-PHI") != std::string::npos);
        CHECK(rep.find("MR-ODD") == std::string::npos);
        // a typo in the selection must not silently produce an empty pass
        CHECK(run_cli("verify --config " + (dir / "cfg.json").string() + " --out " +
                      out_dir(dir / "typo") + " --ids ORTHO-TYPO")
                  .exit_code == 2);
    }
    SUBCASE("missing config is a usage error") {
        CHECK(run_cli("verify").exit_code == 2);
        CHECK(run_cli("verify --config /nonexistent.json").exit_code == 2);
    }
    SUBCASE("missing output directory is an explicit error") {
        CHECK(run_cli("verify --config " + (dir / "cfg.json").string() + " --out " +
                      (dir / "does_not_exist").string())
                  .exit_code == 2);
    }
    SUBCASE("invalid measure parameters exit 2") {
        write_file(dir / "bad.json",
                   R"({"measure": {"weight": {"kind": "bernstein_szego", "alphas": [1.5]}}})");
        CHECK(run_cli("verify --config " + (dir / "bad.json").string()).exit_code == 2);
        write_file(dir / "badkind.json", R"({"measure": {"weight": {"kind": "cosine"}}})");
        CHECK(run_cli("verify --config " + (dir / "badkind.json").string()).exit_code == 2);
    }
    SUBCASE("fourier weight with atoms and complex pairs parse") {
        write_file(dir / "mix.json", R"({
          "measure": {"weight": {"kind": "fourier", "coeffs": [1.0, [0.2, 0.1]]},
                      "atoms": [{"theta": 1.0, "mass": 0.3}],
                      "quadrature_points": 2048, "moments": 128},
          "n": 4, "seed": 2})");
        CHECK(run_cli("verify --config " + (dir / "mix.json").string() + " --out " +
                      out_dir(dir / "mix"))
                  .exit_code == 0);
        // atomic measures skip the boundary-value catalogue with a reason
        const std::string rep = slurp(dir / "mix" / "report.json");
        CHECK(rep.find("requires a pure weight") != std::string::npos);
    }
}

TEST_CASE("favard subcommand") {
    const fs::path dir = kWorkRoot / "favard";
    fs::remove_all(dir);

    SUBCASE("seven-column file round trips") {
        // coefficients of the geometric-seed measure, generated by compute
        write_file(dir / "gen.json", R"({
          "measure": {"weight": {"kind": "bernstein_szego",
                                 "alphas": [0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625,
                                            0.0078125, 0.00390625, 0.001953125, 0.0009765625]},
                      "quadrature_points": 4096, "moments": 256}, "n": 5})");
        CHECK(run_cli("compute --config " + (dir / "gen.json").string() + " --out " +
                      out_dir(dir / "gen"))
                  .exit_code == 0);
        const auto r = run_cli("favard --coefficients " + (dir / "gen/coefficients.csv").string() +
                               " --mode closed --out " + out_dir(dir / "rec"));
        CHECK(r.exit_code == 0);
        const auto rows = read_csv(dir / "rec" / "alphas.csv");
        REQUIRE(rows.size() >= 9);
        CHECK(std::stod(rows[1][1]) == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(std::stod(rows[2][1]) == doctest::Approx(0.25).epsilon(1e-8));
        const std::string rep = slurp(dir / "rec" / "favard_report.json");
        CHECK(rep.find("\"form\": \"strong\"") != std::string::npos);
    }
    SUBCASE("lebesgue triple: strict rejected, closed recovers zero") {
        write_file(dir / "leb.csv",
                   "n,a,b,beta\n0,1,1,0\n1,0.70710678118654752,0.70710678118654752,0\n"
                   "2,0.70710678118654752,0.70710678118654752,0\n");
        CHECK(run_cli("favard --coefficients " + (dir / "leb.csv").string() +
                      " --mode strict --out " + out_dir(dir / "strict"))
                  .exit_code == 2);
        CHECK(run_cli("favard --coefficients " + (dir / "leb.csv").string() +
                      " --mode closed --out " + out_dir(dir / "closed"))
                  .exit_code == 0);
        const auto rows = read_csv(dir / "closed" / "alphas.csv");
        for (std::size_t r2 = 1; r2 < rows.size(); ++r2)
            CHECK(std::abs(std::stod(rows[r2][1])) < 1e-12);
    }
    SUBCASE("weak form honors the configured phase policy") {
        // triple data of a weight whose even coefficients are negative real:
        // the supplied-angle policy must restore the signs
        write_file(dir / "neg.json", R"({
          "measure": {"weight": {"kind": "bernstein_szego", "alphas": [-0.4, 0.2, -0.3]},
                      "quadrature_points": 2048, "moments": 128}, "n": 4})");
        CHECK(run_cli("compute --config " + (dir / "neg.json").string() + " --out " +
                      out_dir(dir / "neg"))
                  .exit_code == 0);
        // strip the seven-column file down to the triple columns
        const auto rows = read_csv(dir / "neg" / "coefficients.csv");
        std::string triple = "n,a,b,beta\n";
        for (std::size_t r2 = 1; r2 < rows.size(); ++r2)
            triple += rows[r2][0] + "," + rows[r2][1] + "," + rows[r2][2] + "," + rows[r2][3] + "\n";
        write_file(dir / "neg_triple.csv", triple);
        write_file(dir / "neg_cfg.json", R"({
          "coefficients": ")" + (dir / "neg_triple.csv").string() + R"(",
          "mode": "closed",
          "phase_policy": {"policy": "supplied",
                           "angles": [3.14159265358979324, 3.14159265358979324, 0.0, 0.0]}})");
        CHECK(run_cli("favard --config " + (dir / "neg_cfg.json").string() + " --out " +
                      out_dir(dir / "neg_rec"))
                  .exit_code == 0);
        const auto alphas = read_csv(dir / "neg_rec" / "alphas.csv");
        CHECK(std::stod(alphas[1][1]) == doctest::Approx(-0.4).epsilon(1e-7));
        CHECK(std::stod(alphas[3][1]) == doctest::Approx(-0.3).epsilon(1e-7));
    }
    SUBCASE("inline coefficient data in the config") {
        write_file(dir / "inline.json", R"({
          "mode": "closed",
          "coefficient_data": {
            "a": [1.0, 0.70710678118654752, 0.70710678118654752],
            "b": [1.0, 0.70710678118654752, 0.70710678118654752],
            "beta": [0.0, 0.0, 0.0]}})");
        CHECK(run_cli("favard --config " + (dir / "inline.json").string() + " --out " +
                      out_dir(dir / "inline"))
                  .exit_code == 0);
        const auto rows = read_csv(dir / "inline" / "alphas.csv");
        for (std::size_t r2 = 1; r2 < rows.size(); ++r2)
            CHECK(std::abs(std::stod(rows[r2][1])) < 1e-12);
    }
    SUBCASE("malformed coefficient file") {
        write_file(dir / "bad.csv", "x,y\n1,2\n");
        CHECK(run_cli("favard --coefficients " + (dir / "bad.csv").string()).exit_code == 2);
        CHECK(run_cli("favard").exit_code == 2);
    }
}

TEST_CASE("sampled weight through the JSON schema") {
    const fs::path dir = kWorkRoot / "sampled";
    fs::remove_all(dir);
    std::string values = "[";
    for (int k = 0; k < 1024; ++k) values += (k ? "," : "") + std::string("1.0");
    values += "]";
    write_file(dir / "cfg.json",
               R"({"measure": {"weight": {"kind": "sampled", "values": )" + values +
                   R"(}, "moments": 128}, "n": 3, "seed": 1})");
    CHECK(run_cli("verify --config " + (dir / "cfg.json").string() + " --out " +
                  out_dir(dir / "out"))
              .exit_code == 0);
}

TEST_CASE("report subcommand") {
    const fs::path dir = kWorkRoot / "report";
    fs::remove_all(dir);
    write_file(dir / "cfg.json", kLebesgueConfig);
    const auto r = run_cli("report --config " + (dir / "cfg.json").string() + " --out " + out_dir(dir / "out"));
    CHECK(r.exit_code == 0);
    const auto rows = read_csv(dir / "out" / "diagnostics.csv");
    REQUIRE(!rows.empty());
    CHECK(rows[0] == std::vector<std::string>{"n", "quantity-id", "value", "reference-value",
                                              "gap"});
    for (std::size_t r2 = 1; r2 < rows.size(); ++r2) {
        REQUIRE(rows[r2].size() == 5);
        CHECK(std::abs(std::stod(rows[r2][4])) < 1e-12);  // Lebesgue gaps vanish
    }
    CHECK(run_cli("report").exit_code == 2);
}
