// Command-line front end: ingest a measure or coefficient file, run the
// requested pipeline, emit coefficient tables and residual reports.
//
// Exit codes: 0 success (all gated identities pass), 1 identity failure,
// 2 configuration / validation / I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "szego/io.hpp"
#include "szego/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliState {
    std::string config_path;
    std::string out_dir = ".";
    int n = -1;
    double tol = -1.0;
    std::string ids;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::string coefficients;
    json config;

    void load() {
        if (config_path.empty()) return;
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open config '" + config_path + "'");
        in >> config;
    }

    int effective_n() const { return n > 0 ? n : config.value("n", 10); }
    double effective_tol() const { return tol > 0 ? tol : config.value("tol", -1.0); }
    std::uint64_t effective_seed() const {
        return seed ? *seed : config.value("seed", std::uint64_t{1});
    }
    std::string effective_mode() const {
        if (!mode.empty()) return mode;
        return config.value("mode", std::string("strict"));
    }
    std::string effective_coefficients() const {
        if (!coefficients.empty()) return coefficients;
        return config.value("coefficients", std::string());
    }

    szego::CircleMeasure measure() const {
        if (!config.contains("measure"))
            throw std::runtime_error("config must carry a \"measure\" object for this command");
        return szego::measure_from_json(config.at("measure"));
    }

    std::vector<std::string> id_list() const {
        std::string src = ids;
        if (src.empty() && config.contains("ids") && config["ids"].is_string())
            src = config["ids"].get<std::string>();
        std::vector<std::string> out;
        if (src.empty() || src == "all") {
            if (config.contains("ids") && config["ids"].is_array())
                for (const auto& v : config["ids"]) out.push_back(v.get<std::string>());
            return out;
        }
        std::stringstream ss(src);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
        return out;
    }

    szego::FavardMode favard_mode() const {
        const std::string m = effective_mode();
        if (m == "strict") return szego::FavardMode::Strict;
        if (m == "closed") return szego::FavardMode::Closed;
        throw std::runtime_error("mode must be 'strict' or 'closed'");
    }

    szego::PhasePolicy phase_policy() const {
        if (!config.contains("phase_policy")) return szego::PhasePolicy::positive_real();
        const auto& p = config.at("phase_policy");
        const std::string kind = p.value("policy", std::string("positive-real"));
        if (kind == "positive-real") return szego::PhasePolicy::positive_real();
        if (kind == "fixed-angle") return szego::PhasePolicy::fixed_angle(p.at("angle").get<double>());
        if (kind == "supplied") {
            std::vector<double> angles;
            for (const auto& a : p.at("angles")) angles.push_back(a.get<double>());
            return szego::PhasePolicy::supplied(std::move(angles));
        }
        throw std::runtime_error("phase_policy must be positive-real, fixed-angle or supplied");
    }
};

void ensure_out_dir(const std::string& dir) {
    if (!fs::is_directory(dir))
        throw std::runtime_error("output directory '" + dir + "' does not exist");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int cmd_compute(const CliState& st) {
    ensure_out_dir(st.out_dir);
    const szego::CircleMeasure m = st.measure();
    const int N = st.effective_n();
    const szego::OpucSystem opuc = szego::build_opuc(m, 2 * N + 2);
    const szego::OtpSystem otp = szego::build_otp(m, N);
    char buf[256];
    {
        std::string text = std::string(szego::kCsvSchemaLine) +
                           "n,alpha_re,alpha_im,kappa,sublead_re,sublead_im\n";
        for (int n = 0; n <= opuc.N; ++n) {
            const szego::cplx a =
                n < opuc.N ? opuc.alpha[static_cast<std::size_t>(n)] : szego::cplx(0.0);
            const szego::cplx s = opuc.sublead[static_cast<std::size_t>(n)];
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, a.real(),
                          a.imag(), opuc.kappa[static_cast<std::size_t>(n)], s.real(), s.imag());
            text += buf;
        }
        write_text(st.out_dir + "/opuc.csv", text);
    }
    szego::write_coefficient_csv(st.out_dir + "/coefficients.csv", szego::extract_seven(otp));
    std::printf("wrote %s/opuc.csv and %s/coefficients.csv (measure: %s, N = %d)\n",
                st.out_dir.c_str(), st.out_dir.c_str(), m.describe().c_str(), N);
    return 0;
}

int cmd_verify(const CliState& st) {
    ensure_out_dir(st.out_dir);
    const szego::CircleMeasure m = st.measure();
    szego::VerifyOptions opt;
    opt.n_max = st.effective_n();
    opt.tol_override = st.effective_tol();
    opt.seed = st.effective_seed();
    opt.ids = st.id_list();
    const szego::ResidualReport rep = szego::run_verify(m, opt);

    szego::ordered_json out = szego::report_to_json(rep);
    out["measure"] = st.config.at("measure");
    out["n"] = opt.n_max;
    out["seed"] = opt.seed;
    write_text(st.out_dir + "/report.json", out.dump(2) + "\n");

    int skipped_total = 0;
    for (const auto& c : rep.checks) {
        skipped_total += static_cast<int>(c.skipped.size());
        const char* tag = c.informational ? "INFO" : (c.pass() ? "PASS" : "FAIL");
        if (c.evaluated())
            std::printf("%-4s %-26s eq %-5s max %-11.3e tol %-9.1e n %d..%d skips %zu\n", tag,
                        c.id.c_str(), c.eq.c_str(), c.max_residual, c.tolerance, c.n_min, c.n_max,
                        c.skipped.size());
        else
            std::printf("SKIP %-26s eq %-5s (%s)\n", c.id.c_str(), c.eq.c_str(),
                        c.skipped.empty() ? "no admissible index" : c.skipped[0].reason.c_str());
    }
    std::printf("%s: %zu identities, %d guarded instances, report at %s/report.json\n",
                rep.all_pass() ? "ALL PASS" : "FAILURES PRESENT", rep.checks.size(), skipped_total,
                st.out_dir.c_str());
    return rep.all_pass() ? 0 : 1;
}

int cmd_favard(const CliState& st) {
    ensure_out_dir(st.out_dir);
    const std::string path = st.effective_coefficients();
    szego::CoefficientFile file;
    std::string source;
    if (!path.empty()) {
        file = szego::read_coefficient_csv(path);
        source = path;
    } else if (st.config.contains("coefficient_data")) {
        file = szego::coefficients_from_json(st.config.at("coefficient_data"));
        source = "config:coefficient_data";
    } else {
        throw std::runtime_error(
            "favard needs --coefficients <csv> or a coefficient_data object in the config");
    }
    const szego::FavardMode mode = st.favard_mode();

    std::vector<szego::cplx> alphas;
    szego::ordered_json rj;
    rj["schema_version"] = 1;
    rj["mode"] = szego::favard_mode_name(mode);
    rj["input"] = source;
    if (file.seven) {
        const szego::StrongFavardResult res = szego::strong_favard(file.seven_seq, mode);
        alphas = res.alphas;
        rj["form"] = "strong";
        rj["roundtrip_alpha_residual"] = res.roundtrip_alpha_residual;
        rj["roundtrip_seven_residual"] = res.roundtrip_seven_residual;
        szego::ordered_json val = szego::ordered_json::array();
        for (const auto& v : res.validation)
            val.push_back({{"n", v.n},
                           {"equality_residual", v.equality_residual},
                           {"uniqueness_ok", v.uniqueness_ok},
                           {"enabled_solves", v.enabled_solves}});
        rj["validation"] = std::move(val);
    } else {
        const szego::FavardResult res = szego::weak_favard(file.triple, st.phase_policy(), mode);
        alphas = res.alphas;
        rj["form"] = "weak";
        szego::ordered_json adm = szego::ordered_json::array();
        for (const auto& e : res.admissibility.entries)
            adm.push_back({{"n", e.n},
                           {"kappa_ratio_sq", e.kappa_ratio_sq},
                           {"boundary", e.boundary},
                           {"violated", e.violated},
                           {"clause", e.clause}});
        rj["admissibility"] = std::move(adm);
    }
    {
        std::string text = std::string(szego::kCsvSchemaLine) + "n,alpha_re,alpha_im\n";
        char buf[128];
        for (std::size_t k = 0; k < alphas.size(); ++k) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", k, alphas[k].real(),
                          alphas[k].imag());
            text += buf;
        }
        write_text(st.out_dir + "/alphas.csv", text);
    }
    write_text(st.out_dir + "/favard_report.json", rj.dump(2) + "\n");
    std::printf("recovered %zu recursion coefficients; wrote %s/alphas.csv and "
                "%s/favard_report.json\n",
                alphas.size(), st.out_dir.c_str(), st.out_dir.c_str());
    return 0;
}

int cmd_report(const CliState& st) {
    ensure_out_dir(st.out_dir);
    const szego::CircleMeasure m = st.measure();
    const int N = st.effective_n();
    const szego::OpucSystem opuc = szego::build_opuc(m, 2 * N + 2);
    const szego::OtpSystem otp = szego::build_otp(m, N);
    const szego::SzegoData sz = szego::szego_function(m);
    const auto rows = szego::asymptotic_diagnostics(opuc, otp, sz, N);
    std::string text = std::string(szego::kCsvSchemaLine) +
                       "n,quantity-id,value,reference-value,gap\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.17g,%.17g\n", r.n, r.id.c_str(), r.value,
                      r.reference, r.gap);
        text += buf;
    }
    write_text(st.out_dir + "/diagnostics.csv", text);
    std::printf("wrote %s/diagnostics.csv (%zu rows, szego integral %.12g)\n", st.out_dir.c_str(),
                rows.size(), sz.integral);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orthogonal polynomial systems on the unit circle: compute, verify, reconstruct"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand name
    CliState st;
    app.add_option("--config", st.config_path, "JSON config file");
    app.add_option("--out", st.out_dir, "output directory (default: .)");
    app.add_option("--n", st.n, "max level / degree");
    app.add_option("--tol", st.tol, "override every identity tolerance");
    app.add_option("--ids", st.ids, "comma-separated identity ids (default: all)");
    app.add_option("--mode", st.mode, "favard admissibility mode: strict | closed");
    std::uint64_t seed_opt = 0;
    auto* seed_flag = app.add_option("--seed", seed_opt, "sample-point seed");
    app.add_option("--coefficients", st.coefficients, "coefficient CSV for favard");

    auto* compute = app.add_subcommand("compute", "write OPUC/OTP coefficient tables");
    auto* verify = app.add_subcommand("verify", "run the identity catalogue, write report.json");
    auto* favard = app.add_subcommand("favard", "reconstruct recursion coefficients from a "
                                                "coefficient file");
    auto* report = app.add_subcommand("report", "write the asymptotic diagnostics table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        st.load();
        if (seed_flag->count() > 0) st.seed = seed_opt;
        if (compute->parsed()) return cmd_compute(st);
        if (verify->parsed()) return cmd_verify(st);
        if (favard->parsed()) return cmd_favard(st);
        if (report->parsed()) return cmd_report(st);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
