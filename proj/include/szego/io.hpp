#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/analytic.hpp"
#include "szego/favard.hpp"
#include "szego/measure.hpp"
#include "szego/report.hpp"

namespace szego {

using ordered_json = nlohmann::ordered_json;

inline cplx complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return cplx(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("expected a number or a [re, im] pair");
}

/// Measure schema:
/// {"weight": {"kind": "uniform" | "bernstein_szego" | "fourier" | "sampled",
///             "alphas": [...], "coeffs": [...], "values": [...]},
///  "atoms": [{"theta": 0.0, "mass": 0.5}],
///  "quadrature_points": 4096, "moments": 256}
inline CircleMeasure measure_from_json(const nlohmann::json& j) {
    const int M = j.value("quadrature_points", 4096);
    const int K = j.value("moments", 256);
    std::vector<Atom> atoms;
    if (j.contains("atoms"))
        for (const auto& a : j.at("atoms"))
            atoms.push_back({a.at("theta").get<double>(), a.at("mass").get<double>()});
    const auto& w = j.at("weight");
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "uniform") return CircleMeasure::uniform(M, K, std::move(atoms));
    if (kind == "bernstein_szego") {
        std::vector<cplx> alphas;
        for (const auto& a : w.at("alphas")) alphas.push_back(complex_from_json(a));
        return CircleMeasure::bernstein_szego(std::move(alphas), M, K, std::move(atoms));
    }
    if (kind == "fourier") {
        std::vector<cplx> coeffs;
        for (const auto& c : w.at("coeffs")) coeffs.push_back(complex_from_json(c));
        return CircleMeasure::fourier(std::move(coeffs), M, K, std::move(atoms));
    }
    if (kind == "sampled") {
        std::vector<double> values;
        for (const auto& v : w.at("values")) values.push_back(v.get<double>());
        return CircleMeasure::sampled(std::move(values), K, std::move(atoms));
    }
    throw std::invalid_argument("unknown weight kind '" + kind + "'");
}

inline ordered_json report_to_json(const ResidualReport& rep) {
    ordered_json out;
    out["schema_version"] = 1;
    ordered_json list = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json e;
        e["id"] = c.id;
        e["eq"] = c.eq;
        if (c.evaluated())
            e["n_range"] = {c.n_min, c.n_max};
        else
            e["n_range"] = nullptr;
        e["max_residual"] = c.max_residual;
        e["worst_n"] = c.worst_n;
        e["tolerance"] = c.tolerance;
        ordered_json skips = ordered_json::array();
        for (const auto& s : c.skipped) skips.push_back({{"n", s.n}, {"reason", s.reason}});
        e["skipped"] = std::move(skips);
        if (c.informational) e["informational"] = true;
        if (!c.note.empty()) e["note"] = c.note;
        e["pass"] = c.pass();
        list.push_back(std::move(e));
    }
    out["identities"] = std::move(list);
    out["all_pass"] = rep.all_pass();
    return out;
}

// ---------------------------------------------------------------------------
// Coefficient CSV: header n,a,b,beta[,iota,jmath,varsigma,zeta]
// ---------------------------------------------------------------------------

struct CoefficientFile {
    bool seven = false;
    TripleSeq triple;
    SevenSeq seven_seq;
};

inline constexpr const char* kCsvSchemaLine = "# szego-csv 1\n";

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) {
        while (!item.empty() && (item.back() == '\r' || item.back() == ' ')) item.pop_back();
        std::size_t b = 0;
        while (b < item.size() && item[b] == ' ') ++b;
        out.push_back(item.substr(b));
    }
    return out;
}

inline CoefficientFile read_coefficient_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coefficient file '" + path + "'");
    std::string line;
    do {
        if (!std::getline(in, line)) throw std::runtime_error("empty coefficient file");
    } while (!line.empty() && line[0] == '#');
    const auto header = split_csv_line(line);
    CoefficientFile out;
    if (header.size() == 4 && header[0] == "n")
        out.seven = false;
    else if (header.size() == 8 && header[0] == "n")
        out.seven = true;
    else
        throw std::runtime_error("coefficient header must be n,a,b,beta[,iota,jmath,varsigma,zeta]");
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        if (f.size() != header.size())
            throw std::runtime_error("coefficient row with wrong column count: " + line);
        std::vector<double> vals;
        for (const auto& s : f) vals.push_back(std::stod(s));
        rows.push_back(std::move(vals));
    }
    if (rows.size() < 2) throw std::runtime_error("coefficient file needs rows for n = 0 and n >= 1");
    TripleSeq t;
    SevenSeq s;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r][0]) != static_cast<int>(r))
            throw std::runtime_error("coefficient rows must be consecutive from n = 0");
        t.a.push_back(rows[r][1]);
        t.b.push_back(rows[r][2]);
        t.beta.push_back(rows[r][3]);
        if (out.seven) {
            s.iota.push_back(rows[r][4]);
            s.jmath.push_back(rows[r][5]);
            s.varsigma.push_back(rows[r][6]);
            s.zeta.push_back(rows[r][7]);
        }
    }
    out.triple = t;
    if (out.seven) {
        s.triple = std::move(t);
        out.seven_seq = std::move(s);
    }
    return out;
}

/// Inline JSON alternative to the CSV layout:
/// {"a": [...], "b": [...], "beta": [...]} with optional
/// "iota"/"jmath"/"varsigma"/"zeta" arrays of the same length.
inline CoefficientFile coefficients_from_json(const nlohmann::json& j) {
    CoefficientFile out;
    auto realseq = [&j](const char* key) {
        std::vector<double> v;
        for (const auto& x : j.at(key)) v.push_back(x.get<double>());
        return v;
    };
    out.triple.a = realseq("a");
    out.triple.b = realseq("b");
    out.triple.beta = realseq("beta");
    out.seven = j.contains("iota");
    if (out.seven) {
        out.seven_seq.triple = out.triple;
        out.seven_seq.iota = realseq("iota");
        out.seven_seq.jmath = realseq("jmath");
        out.seven_seq.varsigma = realseq("varsigma");
        out.seven_seq.zeta = realseq("zeta");
    }
    return out;
}

inline void write_coefficient_csv(const std::string& path, const SevenSeq& s) {
    std::ofstream outf(path);
    if (!outf) throw std::runtime_error("cannot write '" + path + "'");
    char buf[256];
    outf << kCsvSchemaLine;
    outf << "n,a,b,beta,iota,jmath,varsigma,zeta\n";
    for (int n = 0; n <= s.N(); ++n) {
        const auto i = static_cast<std::size_t>(n);
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", n,
                      s.triple.a[i], s.triple.b[i], s.triple.beta[i], s.iota[i], s.jmath[i],
                      s.varsigma[i], s.zeta[i]);
        outf << buf;
    }
}

}  // namespace szego
