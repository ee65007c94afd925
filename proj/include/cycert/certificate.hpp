#pragma once

#include <json.hpp>

#include <string>

#include "cycert/admissibility.hpp"
#include "cycert/charts.hpp"
#include "cycert/quadext.hpp"
#include "cycert/smoothness.hpp"
#include "cycert/toric.hpp"
#include "cycert/transverse.hpp"

namespace cycert {

using Json = nlohmann::ordered_json;

constexpr const char* kCertificateSchema = "cy-cert/1";

inline Json json_of(const QuadExt& x) {
    Json j;
    j["str"] = x.str();
    j["rational"] = to_string(x.rational_part());
    j["surd"] = to_string(x.surd_part());
    j["radicand"] = x.radicand().str();
    j["approx"] = x.to_double();
    return j;
}

inline Json json_of(const ValidationReport& report) {
    Json j;
    j["pass"] = report.ok;
    j["checks"] = Json::array();
    for (const auto& c : report.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

inline Json json_of(const TransverseCone& tc, const std::vector<std::string>& names) {
    Json j;
    j["axis"] = tc.axis + 1;
    j["surface_polynomial_index"] = tc.surface_poly_index + 1;
    j["polynomial"] = tc.poly.str(omega_names(tc.axis, names.size()));
    Json vars = Json::array();
    for (std::size_t v : tc.scaled_vars) vars.push_back(v + 1);
    j["scaled_variables"] = vars;
    Json v = Json::array();
    for (std::size_t i = 0; i < tc.v.dim(); ++i) v.push_back(json_of(tc.v[i]));
    j["v"] = v;
    j["d_s"] = json_of(tc.d_s);
    j["inference"] = to_string(tc.status);
    return j;
}

inline Json json_of(const AdmissibilityCertificate& cert) {
    Json j;
    Json windows = Json::array();
    for (const auto& w : cert.windows)
        windows.push_back({{"ok", w.ok},
                           {"lower_margin", json_of(w.lower_margin)},
                           {"upper_margin", json_of(w.upper_margin)}});
    j["windows"] = windows;
    j["window_ok"] = cert.window_ok;
    if (cert.nu) j["nu"] = json_of(*cert.nu);
    if (cert.beta) j["beta"] = json_of(*cert.beta);
    if (cert.rate_threshold) j["two_over_one_minus_nu"] = json_of(*cert.rate_threshold);
    j["branch"] = to_string(cert.branch);
    Json flags;
    flags["axes_verified"] = cert.flags.axes_verified;
    flags["ds_uniform"] = cert.flags.ds_uniform;
    flags["fibers_smooth"] = cert.flags.fibers_smooth;
    flags["user_attested_orbifold"] = cert.flags.user_attested_orbifold;
    Json fibers = Json::array();
    for (const auto& f : cert.flags.fiber_details)
        fibers.push_back({{"axis", f.axis + 1}, {"smooth", f.smooth}, {"note", f.note}});
    flags["fiber_checks"] = fibers;
    j["assumption_flags"] = flags;
    j["verdict"] = cert.verdict == Verdict::certified ? "certified" : "rejected";
    if (!cert.reject_reason.empty()) j["reject_reason"] = cert.reject_reason;
    return j;
}

inline Json json_of(const Chart& chart, std::size_t ambient_dim) {
    Json j;
    j["axis"] = chart.center.axis + 1;
    Json retained = Json::array();
    for (std::size_t r : chart.center.retained) retained.push_back(r + 1);
    Json scaled = Json::array();
    for (std::size_t s : chart.center.scaled) scaled.push_back(s + 1);
    j["center"] = {{"retained", retained}, {"scaled", scaled}};
    j["xi_ratio"] = json_of(chart.center.xi_ratio);
    j["style"] = chart.style == XiStyle::tilde ? "xi-tilde" : "xi";
    Json eqs = Json::array();
    for (const auto& eq : chart.equations) eqs.push_back(equation_str(chart, eq, ambient_dim));
    j["equations"] = eqs;
    return j;
}

inline Json json_of(const FiberVariety& fv, const SmoothnessResult& res,
                    std::size_t ambient_dim) {
    Json j;
    j["axis"] = fv.axis + 1;
    auto names = chart_names(fv.center, ambient_dim);
    Json constraints = Json::array();
    for (std::size_t v : fv.constrained_to_zero) constraints.push_back(names[v] + " = 0");
    j["constraints"] = constraints;
    Json eqs = Json::array();
    for (const auto& eq : fv.equations)
        eqs.push_back(eq.lhs.str(names) + " = " + eq.rhs.str(names));
    j["equations"] = eqs;
    Json s;
    s["verdict"] = to_string(res.verdict);
    s["backend"] = res.backend;
    s["trace"] = res.trace;
    if (res.witness) {
        Json w;
        w["theta"] = res.witness->theta;
        Json pts = Json::array();
        for (const auto& z : res.witness->zeta)
            pts.push_back({{"re", z.real()}, {"im", z.imag()}});
        w["zeta"] = pts;
        w["residual"] = res.witness->residual;
        s["witness"] = w;
    }
    j["smoothness"] = s;
    return j;
}

/// Fixed-layout text block for the chart golden files.
inline std::string charts_text(const std::vector<Chart>& charts,
                               const std::vector<FiberVariety>& fibers,
                               std::size_t ambient_dim) {
    std::string out;
    for (std::size_t i = 0; i < charts.size(); ++i) {
        const Chart& chart = charts[i];
        out += "chart axis " + std::to_string(chart.center.axis + 1) + " [" +
               (chart.style == XiStyle::tilde ? "xi-tilde" : "xi") + "]\n";
        for (const auto& eq : chart.equations)
            out += "  " + equation_str(chart, eq, ambient_dim) + "\n";
        out += "fiber axis " + std::to_string(fibers[i].axis + 1) + "\n";
        std::string fiber = fiber_str(fibers[i], ambient_dim);
        std::istringstream lines(fiber);
        std::string line;
        while (std::getline(lines, line)) out += "  " + line + "\n";
    }
    return out;
}

/// Human-readable report of a certificate document.
inline std::string markdown_report(const Json& cert) {
    std::string md;
    md += "# " + cert["input"]["name"].get<std::string>() + "\n\n";
    md += "**Verdict:** " + cert["verdict"]["status"].get<std::string>();
    if (cert["verdict"].contains("reason"))
        md += " (" + cert["verdict"]["reason"].get<std::string>() + ")";
    md += "\n\n";
    if (cert.contains("validation")) {
        md += "## Validation\n\n";
        for (const auto& c : cert["validation"]["checks"])
            md += std::string("- ") + (c["pass"].get<bool>() ? "pass" : "FAIL") + ": " +
                  c["detail"].get<std::string>() + "\n";
        md += "\n";
    }
    if (cert.contains("transverse")) {
        md += "## Transverse cones\n\n";
        for (const auto& t : cert["transverse"]) {
            md += "- axis " + std::to_string(t["axis"].get<int>()) + ": `" +
                  t["polynomial"].get<std::string>() + "`, d_s = " +
                  t["d_s"]["str"].get<std::string>() + " (" +
                  t["inference"].get<std::string>() + ")\n";
        }
        md += "\n";
    }
    if (cert.contains("admissibility")) {
        const auto& adm = cert["admissibility"];
        md += "## Admissibility\n\n";
        md += std::string("- window: ") + (adm["window_ok"].get<bool>() ? "holds" : "fails") +
              "\n";
        if (adm.contains("nu"))
            md += "- nu = " + adm["nu"]["str"].get<std::string>() +
                  ", beta = " + adm["beta"]["str"].get<std::string>() + ", branch " +
                  adm["branch"].get<std::string>() + "\n";
        md += "\n";
    }
    if (cert.contains("charts")) {
        md += "## Charts at infinity\n\n";
        for (const auto& c : cert["charts"]) {
            md += "- axis " + std::to_string(c["axis"].get<int>()) + ":\n";
            for (const auto& eq : c["equations"])
                md += "  - `" + eq.get<std::string>() + "`\n";
        }
        md += "\n";
    }
    if (cert.contains("fibers")) {
        md += "## Fiber smoothness\n\n";
        for (const auto& f : cert["fibers"])
            md += "- axis " + std::to_string(f["axis"].get<int>()) + ": " +
                  f["smoothness"]["verdict"].get<std::string>() + " (" +
                  f["smoothness"]["backend"].get<std::string>() + ")\n";
        md += "\n";
    }
    return md;
}

}  // namespace cycert
