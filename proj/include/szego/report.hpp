#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <string>
#include <vector>

namespace szego {

struct SkipEntry {
    int n;
    std::string reason;
};

/// Absolute residual for O(1) references, relative once the reference
/// magnitude exceeds 10 (determinant-type quantities grow like 1/alpha).
inline double scaled_residual(double diff, double reference_magnitude) {
    return reference_magnitude > 10.0 ? diff / reference_magnitude : diff;
}

/// One identity of the catalog: per-index maximal absolute residual plus
/// the metadata the report serializer needs (identity id, equation tag,
/// index range, tolerance, explicit skips).
struct IdentityCheck {
    std::string id;
    std::string eq;
    double tolerance = 1e-8;
    int n_min = std::numeric_limits<int>::max();
    int n_max = std::numeric_limits<int>::min();
    double max_residual = 0.0;
    int worst_n = -1;
    int evaluated_count = 0;
    std::vector<SkipEntry> skipped;
    bool informational = false;   // recorded but never gates pass/fail
    std::string note;

    void record(int n, double residual) {
        ++evaluated_count;
        n_min = std::min(n_min, n);
        n_max = std::max(n_max, n);
        if (residual > max_residual || worst_n < 0) {
            if (residual >= max_residual) {
                max_residual = residual;
                worst_n = n;
            }
        }
    }

    void skip(int n, std::string reason) { skipped.push_back({n, std::move(reason)}); }

    bool evaluated() const { return evaluated_count > 0; }

    bool pass() const {
        if (informational) return true;
        if (!evaluated()) return true;  // fully guarded instance: enumerated, not failing
        return max_residual <= tolerance;
    }
};

struct ResidualReport {
    // deque: references handed out by add() stay valid while more checks
    // are appended
    std::deque<IdentityCheck> checks;

    IdentityCheck& add(std::string id, std::string eq, double tolerance) {
        checks.emplace_back();
        IdentityCheck& c = checks.back();
        c.id = std::move(id);
        c.eq = std::move(eq);
        c.tolerance = tolerance;
        return c;
    }

    void append(ResidualReport other) {
        for (auto& c : other.checks) checks.push_back(std::move(c));
    }

    const IdentityCheck* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const IdentityCheck& c) { return c.pass(); });
    }

    double worst_margin() const {
        double w = 0.0;
        for (const auto& c : checks)
            if (c.evaluated() && !c.informational)
                w = std::max(w, c.max_residual / c.tolerance);
        return w;
    }
};

}  // namespace szego
