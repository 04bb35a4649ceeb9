#pragma once

#include "phull/core.hpp"
#include "phull/corpus.hpp"
#include "phull/extend.hpp"
#include "phull/extremal.hpp"
#include "phull/hull.hpp"
#include "phull/modconst.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace phull::cli {

// Bad flags, bad config, bad input values. Exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_compute = 1;
inline constexpr int exit_usage = 2;
inline constexpr const char* output_env = "PHULL_OUTPUT_DIR";

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"extremal", "module-constants", "classify", "extend",
                                            "hull-slice", "pole-order", "corpus"};
    return c;
}

// Parses "a+bi", "a-bi", "bi", "a", "i", "-i" (spaces ignored).
inline cplx parse_complex(std::string s) {
    std::erase(s, ' ');
    if (s.empty())
        throw UsageError("empty complex number");
    auto num = [&](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw UsageError("bad complex number '" + s + "'");
        }
        if (used != t.size())
            throw UsageError("bad complex number '" + s + "'");
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j')
        return {num(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    if (split == std::string::npos)
        return {0.0, num(body)};
    return {num(body.substr(0, split)), num(body.substr(split))};
}

inline std::vector<cplx> parse_complex_list(const std::vector<std::string>& items) {
    std::vector<cplx> out;
    for (const auto& item : items) {
        // Allow "a;b;c" as well as repeated flags.
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ';'))
            if (!part.empty())
                out.push_back(parse_complex(part));
    }
    return out;
}

inline std::string complex_str(cplx z) {
    return format_double(z.real()) + (z.imag() < 0 || std::signbit(z.imag()) ? "" : "+") + format_double(z.imag()) +
           "i";
}

struct Tolerances {
    double residual_rel = 1e-8;
    double stability_tol = 1e-3;
    double cluster_radius = 1e-4;
    double removable_tol = 1e-8;
    double growth_ratio = 1.5;
    double eps_div = 1e-10;
    double refine_tol = 1e-8;
    double null_tol = 1e-11;
    int phase_count = 64;
};

struct Points {
    std::vector<cplx> z;
    std::vector<cplx> w;
    std::vector<cplx> lambda;
    std::vector<double> radii;
    std::optional<cplx> z0;
    std::optional<cplx> h;
};

struct RunConfig {
    std::string command;
    std::string input;
    int N = 256;
    std::vector<int> degrees; // empty: command default
    Points points;
    std::string output;
    Tolerances tol;
    unsigned threads = 1;
    // command-specific knobs without a config key
    int npoints = 0;
    int n_neg = 0;
    int n_theta = 8;
    std::vector<int> dk_list{2, 4, 8};
    std::optional<std::array<double, 4>> annulus;
    bool allow_origin = false;
    std::uint64_t seed = 20240611;
    int instances = 20;

    // Degree for single-degree commands.
    int degree(int fallback) const { return degrees.empty() ? fallback : degrees.back(); }
    int dk() const { return degree(4); }
};

namespace detail {

using json = nlohmann::json;

inline cplx json_complex(const json& j, const std::string& where) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string())
        return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw UsageError(where + ": expected a complex number (number, \"a+bi\" string or [re, im])");
}

inline std::vector<cplx> json_complex_list(const json& j, const std::string& where) {
    std::vector<cplx> out;
    if (!j.is_array())
        return {json_complex(j, where)};
    for (const auto& v : j)
        out.push_back(json_complex(v, where));
    return out;
}

template <class T>
T json_get(const json& j, const std::string& where) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw UsageError(where + ": wrong type");
    }
}

} // namespace detail

// Strict JSON config: keys command, input, N, degrees, points, output,
// tolerances. Unknown keys anywhere are usage errors.
inline RunConfig parse_config_text(const std::string& text) {
    using detail::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw UsageError("config: top level must be an object");
    RunConfig c;
    for (const auto& [key, v] : j.items()) {
        if (key == "command") {
            c.command = detail::json_get<std::string>(v, "command");
        } else if (key == "input") {
            c.input = detail::json_get<std::string>(v, "input");
        } else if (key == "N") {
            c.N = detail::json_get<int>(v, "N");
        } else if (key == "degrees") {
            c.degrees = v.is_array() ? detail::json_get<std::vector<int>>(v, "degrees")
                                     : std::vector<int>{detail::json_get<int>(v, "degrees")};
        } else if (key == "points") {
            if (v.is_array()) {
                c.points.z = detail::json_complex_list(v, "points");
                continue;
            }
            if (!v.is_object())
                throw UsageError("config: points must be an array or an object");
            for (const auto& [pk, pv] : v.items()) {
                if (pk == "z")
                    c.points.z = detail::json_complex_list(pv, "points.z");
                else if (pk == "w")
                    c.points.w = detail::json_complex_list(pv, "points.w");
                else if (pk == "lambda")
                    c.points.lambda = detail::json_complex_list(pv, "points.lambda");
                else if (pk == "radii")
                    c.points.radii = detail::json_get<std::vector<double>>(pv, "points.radii");
                else if (pk == "z0")
                    c.points.z0 = detail::json_complex(pv, "points.z0");
                else if (pk == "h")
                    c.points.h = detail::json_complex(pv, "points.h");
                else
                    throw UsageError("config: unknown key 'points." + pk + "'");
            }
        } else if (key == "output") {
            c.output = detail::json_get<std::string>(v, "output");
        } else if (key == "tolerances") {
            if (!v.is_object())
                throw UsageError("config: tolerances must be an object");
            for (const auto& [tk, tv] : v.items()) {
                auto& t = c.tol;
                const std::string where = "tolerances." + tk;
                if (tk == "residual_rel") t.residual_rel = detail::json_get<double>(tv, where);
                else if (tk == "stability_tol") t.stability_tol = detail::json_get<double>(tv, where);
                else if (tk == "cluster_radius") t.cluster_radius = detail::json_get<double>(tv, where);
                else if (tk == "removable_tol") t.removable_tol = detail::json_get<double>(tv, where);
                else if (tk == "growth_ratio") t.growth_ratio = detail::json_get<double>(tv, where);
                else if (tk == "eps_div") t.eps_div = detail::json_get<double>(tv, where);
                else if (tk == "refine_tol") t.refine_tol = detail::json_get<double>(tv, where);
                else if (tk == "null_tol") t.null_tol = detail::json_get<double>(tv, where);
                else if (tk == "phase_count") t.phase_count = detail::json_get<int>(tv, where);
                else throw UsageError("config: unknown key '" + where + "'");
            }
        } else {
            throw UsageError("config: unknown key '" + key + "'");
        }
    }
    if (!c.command.empty() && std::find(commands().begin(), commands().end(), c.command) == commands().end())
        throw UsageError("config: unknown command '" + c.command + "'");
    return c;
}

inline RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace detail {

inline void check_ranges(const RunConfig& c) {
    if (c.N < 16 || !is_power_of_two(static_cast<std::size_t>(c.N)))
        throw UsageError("N must be a power of two >= 16");
    for (int d : c.degrees)
        if (d < 1)
            throw UsageError("degrees must be >= 1");
    if (c.threads < 1)
        throw UsageError("threads must be >= 1");
    if (c.tol.phase_count < 8 || c.tol.phase_count % 2)
        throw UsageError("phase count must be even and >= 8");
    for (double r : c.points.radii)
        if (!(r > 0.0 && r < 1.0))
            throw UsageError("radii must lie in (0, 1)");
}

// "builtin:name[:m]" or a CSV path.
inline BoundaryFunction load_phi(const RunConfig& c) {
    if (c.input.empty())
        throw UsageError("no input boundary function (use --phi builtin:<name> or a CSV path)");
    if (c.input.rfind("builtin:", 0) == 0) {
        try {
            return builtin_phi_spec(c.input.substr(8), static_cast<std::size_t>(c.N));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (!std::filesystem::exists(c.input))
        throw UsageError("input file does not exist: " + c.input);
    try {
        return load_boundary(c.input);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline MaxModulusOptions solver(const RunConfig& c) {
    MaxModulusOptions o;
    o.refine_tol = c.tol.refine_tol;
    o.null_tol = c.tol.null_tol;
    return o;
}

inline ExtremalOptions extremal_options(const RunConfig& c) {
    ExtremalOptions o;
    o.solver = solver(c);
    o.phase_count = c.tol.phase_count;
    o.threads = c.threads;
    return o;
}

inline ModuleOptions module_options(const RunConfig& c) {
    ModuleOptions o;
    o.solver = solver(c);
    o.phase_count = c.tol.phase_count;
    o.threads = c.threads;
    return o;
}

inline PoleOptions pole_options(const RunConfig& c) {
    PoleOptions p;
    p.cluster_radius = c.tol.cluster_radius;
    p.removable_tol = c.tol.removable_tol;
    return p;
}

inline std::filesystem::path output_dir(const RunConfig& c) {
    std::string dir = c.output;
    if (dir.empty()) {
        const char* env = std::getenv(output_env);
        dir = env && *env ? env : "phull_out";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + p.string());
    f << text;
}

inline nlohmann::ordered_json num(double v) {
    return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline QuotientModel quotient_for(const BoundaryFunction& phi, const RunConfig& c) {
    return interior_model(phi, 8, c.tol.residual_rel);
}

inline int cmd_extremal(const RunConfig& c, std::ostream& out) {
    std::string set = c.input.empty() ? "circle" : c.input;
    std::optional<SampledSet> k;
    int dim = 1;
    if (set == "circle") {
        k = SampledSet::circle(static_cast<std::size_t>(c.npoints > 0 ? c.npoints : 512));
    } else if (set == "interval") {
        k = SampledSet::chebyshev_interval(static_cast<std::size_t>(c.npoints > 0 ? c.npoints : 1024));
    } else if (set.rfind("graph:", 0) == 0) {
        RunConfig g = c;
        g.input = set.substr(6);
        k = graph_set(load_phi(g));
        dim = 2;
    } else {
        throw UsageError("unknown set '" + set + "' (circle, interval, graph:<phi>)");
    }
    const int d_max = c.degree(8);
    if (set == "circle" && k->size() < 8 * static_cast<std::size_t>(d_max))
        throw UsageError("circle set needs at least 8 * dmax points");
    std::vector<Point> grid;
    const auto& zs = c.points.z;
    if (zs.empty())
        throw UsageError("no query points (use --z)");
    if (dim == 2 && c.points.w.size() != zs.size())
        throw UsageError("graph sets need one --w per --z");
    for (std::size_t i = 0; i < zs.size(); ++i)
        grid.push_back(Point{zs[i], dim == 2 ? c.points.w[i] : cplx{}});
    const HullSlice s = extremal_grid(*k, grid, d_max, extremal_options(c));
    std::ostringstream csv;
    write_extremal_csv(csv, s, dim);
    const auto dir = output_dir(c);
    write_file(dir / "extremal.csv", csv.str());
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << "z = " << complex_str(grid[i].z);
        if (dim == 2)
            out << ", w = " << complex_str(grid[i].w);
        if (s.ok(i))
            out << ": value " << format_double(s.values[i].value) << '\n';
        else
            out << ": error " << s.errors[i] << '\n';
    }
    out << "wrote " << (dir / "extremal.csv").string() << '\n';
    return exit_ok;
}

inline void check_module_points(const BoundaryFunction& phi, const RunConfig& c, const std::vector<cplx>& zs,
                                const std::vector<int>& dl) {
    for (cplx z : zs)
        for (int d : dl) {
            try {
                validate(ModuleQuery{&phi, z, cplx{}, d, c.allow_origin});
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
}

inline std::vector<cplx> lambdas_for(const BoundaryFunction& phi, const RunConfig& c, const std::vector<cplx>& zs) {
    if (!c.points.lambda.empty()) {
        if (c.points.lambda.size() == 1)
            return std::vector<cplx>(zs.size(), c.points.lambda[0]);
        if (c.points.lambda.size() != zs.size())
            throw UsageError("give one --lambda, or one per --z");
        return c.points.lambda;
    }
    const QuotientModel m = quotient_for(phi, c);
    std::vector<cplx> out;
    for (cplx z : zs)
        out.push_back(evaluate_quotient(m, z, c.tol.eps_div));
    return out;
}

inline int cmd_module(const RunConfig& c, std::ostream& out) {
    const BoundaryFunction phi = load_phi(c);
    const std::vector<cplx> zs = c.points.z.empty() ? std::vector<cplx>{0.5} : c.points.z;
    const std::vector<int> dl = c.degrees.empty() ? std::vector<int>{4, 8, 16, 24} : c.degrees;
    check_module_points(phi, c, zs, dl);
    const std::vector<cplx> ls = lambdas_for(phi, c, zs);
    std::vector<ModuleClassification> rows;
    if (dl.size() >= 3) {
        ClassifyModuleOptions co;
        co.d_list = dl;
        co.growth_ratio = c.tol.growth_ratio;
        co.allow_origin = c.allow_origin;
        co.module = module_options(c);
        for (std::size_t i = 0; i < zs.size(); ++i) {
            const cplx l = ls[i];
            auto r = classify_module(phi, {zs[i]}, [l](cplx) { return l; }, co);
            rows.push_back(r[0]);
        }
    } else {
        for (std::size_t i = 0; i < zs.size(); ++i) {
            ModuleClassification r;
            r.z = zs[i];
            r.lambda = ls[i];
            for (int d : dl) {
                const Bracket b =
                    module_constant(ModuleQuery{&phi, zs[i], ls[i], d, c.allow_origin}, module_options(c)).bracket;
                r.curve.insert(d, CurveEntry{b.lb, b.ub, b.status});
            }
            r.error = "";
            rows.push_back(r);
        }
    }
    std::ostringstream csv;
    write_module_csv(csv, rows);
    const auto dir = output_dir(c);
    write_file(dir / "module_constants.csv", csv.str());
    for (const auto& r : rows) {
        out << "z = " << complex_str(r.z) << ", lambda = " << complex_str(r.lambda) << ":";
        for (const auto& [d, e] : r.curve.entries())
            out << " W(" << d << ") in [" << format_double(e.lb) << ", " << format_double(e.ub) << "]";
        if (dl.size() >= 3)
            out << " -> " << (r.error.empty() ? to_string(r.verdict) : r.error);
        out << '\n';
    }
    out << "wrote " << (dir / "module_constants.csv").string() << '\n';
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.error.empty(); }) ? exit_ok
                                                                                                 : exit_compute;
}

inline int cmd_classify(const RunConfig& c, std::ostream& out) {
    const BoundaryFunction phi = load_phi(c);
    ExtendOptions eo;
    eo.d_list = c.dk_list;
    eo.residual_rel = c.tol.residual_rel;
    eo.stability_tol = c.tol.stability_tol;
    eo.poles = pole_options(c);
    eo.threads = c.threads;
    const ExtendReport ext = extendability_score(phi, eo);

    const std::vector<cplx> zs = c.points.z.empty() ? std::vector<cplx>{0.2} : c.points.z;
    ClassifyModuleOptions co;
    if (!c.degrees.empty())
        co.d_list = c.degrees;
    co.growth_ratio = c.tol.growth_ratio;
    co.allow_origin = c.allow_origin;
    co.module = module_options(c);
    check_module_points(phi, c, zs, co.d_list);
    const std::vector<cplx> ls = lambdas_for(phi, c, zs);
    std::vector<ModuleClassification> rows;
    for (std::size_t i = 0; i < zs.size(); ++i) {
        const cplx l = ls[i];
        rows.push_back(classify_module(phi, {zs[i]}, [l](cplx) { return l; }, co)[0]);
    }

    const auto dir = output_dir(c);
    std::ostringstream csv;
    write_module_csv(csv, rows);
    write_file(dir / "classify_module.csv", csv.str());
    std::ostringstream res;
    res << "degree,residual,pole_count\n";
    for (std::size_t i = 0; i < ext.degrees.size(); ++i)
        res << ext.degrees[i] << ',' << format_double(ext.models[i].residual) << ','
            << total_multiplicity(ext.poles[i]) << '\n';
    write_file(dir / "extend_residuals.csv", res.str());

    nlohmann::ordered_json j;
    j["input"] = c.input;
    j["extend_verdict"] = to_string(ext.verdict);
    j["module"] = nlohmann::ordered_json::array();
    for (const auto& r : rows)
        j["module"].push_back({{"z", complex_str(r.z)},
                               {"lambda", complex_str(r.lambda)},
                               {"verdict", r.error.empty() ? to_string(r.verdict) : "error"},
                               {"unbounded", r.unbounded}});
    write_file(dir / "classify.json", j.dump(2) + "\n");

    out << "extend: " << to_string(ext.verdict) << '\n';
    for (const auto& r : rows)
        out << "module at z = " << complex_str(r.z) << ": " << (r.error.empty() ? to_string(r.verdict) : r.error)
            << (r.unbounded ? " (unbounded)" : "") << '\n';
    out << "wrote " << (dir / "classify.json").string() << '\n';
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.error.empty(); }) ? exit_ok
                                                                                                 : exit_compute;
}

inline int cmd_extend(const RunConfig& c, std::ostream& out) {
    const BoundaryFunction phi = load_phi(c);
    const int dk = c.dk();
    const int n_neg = c.n_neg > 0 ? c.n_neg : default_n_neg(phi.size(), dk);
    QuotientModel m;
    try {
        m = annihilator(phi, dk, n_neg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto poles = pole_candidates(m, pole_options(c));
    const auto dir = output_dir(c);
    std::ostringstream model, pcsv;
    write_model_csv(model, m);
    write_poles_csv(pcsv, poles);
    write_file(dir / "model.csv", model.str());
    write_file(dir / "poles.csv", pcsv.str());
    out << "residual " << format_double(m.residual) << (m.degenerate ? " (degenerate)" : "") << '\n';
    out << poles.size() << " pole(s) in the disk\n";
    for (const auto& p : poles)
        out << "  " << complex_str(p.location) << " multiplicity " << p.multiplicity << '\n';
    out << "wrote " << (dir / "poles.csv").string() << '\n';
    return exit_ok;
}

inline int cmd_hull_slice(const RunConfig& c, std::ostream& out) {
    const BoundaryFunction phi = load_phi(c);
    if (!c.points.z0)
        throw UsageError("hull-slice needs --z0");
    const cplx z0 = *c.points.z0;
    const cplx h = c.points.h ? *c.points.h : evaluate_quotient(quotient_for(phi, c), z0, c.tol.eps_div);
    // The on-graph point is always part of the slice.
    std::vector<cplx> ws = c.points.w;
    if (std::find(ws.begin(), ws.end(), h) == ws.end())
        ws.insert(ws.begin(), h);
    SliceOptions so;
    so.extremal = extremal_options(c);
    const HullSlice s = hull_slice(phi, z0, ws, c.degree(6), h, so);
    const auto dir = output_dir(c);
    std::ostringstream csv;
    write_slice_csv(csv, s);
    write_file(dir / "slice.csv", csv.str());
    nlohmann::ordered_json j;
    j["z0"] = complex_str(z0);
    j["h_z0"] = complex_str(h);
    j["summary"] = num(s.summary);
    write_file(dir / "slice.json", j.dump(2) + "\n");
    for (std::size_t i = 0; i < s.size(); ++i)
        out << "w = " << complex_str(ws[i]) << ": "
            << (s.ok(i) ? format_double(s.values[i].value) : s.errors[i]) << " (" << slice_status(s, i) << ")\n";
    out << "summary " << format_double(s.summary) << '\n';
    return exit_ok;
}

inline int cmd_pole_order(const RunConfig& c, std::ostream& out) {
    const BoundaryFunction phi = load_phi(c);
    const std::vector<double> radii =
        c.points.radii.empty() ? std::vector<double>{0.3, 0.4, 0.5, 0.6, 0.7} : c.points.radii;
    const QuotientModel m = quotient_for(phi, c);
    const double eps = c.tol.eps_div;
    const WRule w = [m, eps](cplx z) { return evaluate_quotient(m, z, eps); };
    const int d_max = c.degree(6);
    PoleOrderFit fit;
    try {
        fit = pole_order_fit(phi, radii, c.n_theta, d_max, w, extremal_options(c));
        if (c.annulus) {
            const auto& a = *c.annulus;
            const Annulus ann{a[0], a[1], static_cast<int>(a[2]), static_cast<int>(a[3])};
            fit.max_laplacian_residual = harmonicity_residual(phi, ann, d_max, w, extremal_options(c)).max_laplacian_residual;
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto dir = output_dir(c);
    std::ostringstream csv;
    write_fit_csv(csv, fit);
    write_file(dir / "fit.csv", csv.str());
    nlohmann::ordered_json j;
    j["m_hat"] = num(fit.m_hat);
    j["intercept"] = num(fit.intercept);
    j["order"] = fit.order;
    j["laplacian_residual"] = num(fit.max_laplacian_residual);
    write_file(dir / "fit.json", j.dump(2) + "\n");
    out << "m_hat " << format_double(fit.m_hat) << ", order " << fit.order << '\n';
    if (c.annulus)
        out << "laplacian residual " << format_double(fit.max_laplacian_residual) << '\n';
    return exit_ok;
}

inline int cmd_corpus(const RunConfig& c, std::ostream& out) {
    corpus::Options o;
    o.threads = c.threads;
    o.seed = c.seed;
    o.instances = c.instances;
    const auto rows = corpus::run_all(o);
    bool ok = true;
    for (const auto& r : rows) {
        out << corpus::line(r) << '\n';
        ok = ok && r.passed;
    }
    const auto dir = output_dir(c);
    std::ostringstream csv;
    corpus::write_table_csv(csv, rows);
    write_file(dir / "corpus.csv", csv.str());
    return ok ? exit_ok : exit_compute;
}

struct Flags {
    std::string config, phi, set, output, annulus;
    int N = 0, npoints = 0, dmax = 0, dk = 0, n_neg = 0, n_theta = 0, instances = 0;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    std::vector<int> degrees, dk_list;
    std::vector<std::string> z, w, lambda;
    std::vector<double> radii;
    std::string z0, h;
    bool origin = false;
    Tolerances tol;
};

} // namespace detail

// Full command-line entry point. Output goes to out, diagnostics to err.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Numerical workbench for extremal functions, projective hulls and module constants"};
    app.require_subcommand(0, 1);
    detail::Flags f;
    std::map<std::string, CLI::Option*> given;

    auto common = [&](CLI::App* a) {
        given["config"] = a->add_option("--config", f.config, "JSON run configuration");
        given["N"] = a->add_option("--N", f.N, "boundary sample count (power of two)");
        given["output"] = a->add_option("--output", f.output, "output directory");
        given["threads"] = a->add_option("--threads", f.threads, "worker threads for sweeps");
        given["phase_count"] = a->add_option("--phase-count", f.tol.phase_count, "polygon order for modulus constraints");
        given["refine_tol"] = a->add_option("--refine-tol", f.tol.refine_tol, "relative bracket gap that stops cutting planes");
        given["null_tol"] = a->add_option("--null-tol", f.tol.null_tol, "relative singular value treated as zero");
    };
    auto phi_opt = [&](CLI::App* a) {
        given["phi"] = a->add_option("--phi", f.phi, "builtin:<name>[:m] or CSV file with theta,re,im");
    };
    auto extend_tols = [&](CLI::App* a) {
        given["residual_rel"] = a->add_option("--residual-rel", f.tol.residual_rel, "residual threshold relative to |phi|");
        given["stability_tol"] = a->add_option("--stability-tol", f.tol.stability_tol, "pole agreement across top degrees");
        given["cluster_radius"] = a->add_option("--cluster-radius", f.tol.cluster_radius, "root clustering radius");
        given["removable_tol"] = a->add_option("--removable-tol", f.tol.removable_tol, "threshold for cancelled roots");
        given["eps_div"] = a->add_option("--eps-div", f.tol.eps_div, "near-pole threshold relative to |k|");
    };

    common(&app);
    auto* ex = app.add_subcommand("extremal", "truncated extremal function on a sampled set");
    common(ex);
    given["set"] = ex->add_option("--set", f.set, "circle, interval or graph:<phi>");
    given["npoints"] = ex->add_option("--npoints", f.npoints, "points in the sampled set");
    given["ex_z"] = ex->add_option("--z", f.z, "query point(s)");
    given["ex_w"] = ex->add_option("--w", f.w, "second coordinate(s) for graph sets");
    given["ex_dmax"] = ex->add_option("--dmax", f.dmax, "largest degree");

    auto* mc = app.add_subcommand("module-constants", "module constant sweep over degrees");
    common(mc);
    phi_opt(mc);
    extend_tols(mc);
    given["mc_z"] = mc->add_option("--z", f.z, "interior point(s)");
    given["mc_lambda"] = mc->add_option("--lambda", f.lambda, "interior value(s); default from the quotient model");
    given["mc_degrees"] = mc->add_option("--degrees", f.degrees, "degree list")->delimiter(',');
    given["mc_ratio"] = mc->add_option("--ratio,--growth-ratio", f.tol.growth_ratio, "growth ratio for the verdict");
    given["mc_origin"] = mc->add_flag("--origin", f.origin, "allow z = 0");

    auto* cl = app.add_subcommand("classify", "module verdict and extendability verdict");
    common(cl);
    phi_opt(cl);
    extend_tols(cl);
    given["cl_z"] = cl->add_option("--z", f.z, "interior point(s)");
    given["cl_lambda"] = cl->add_option("--lambda", f.lambda, "interior value(s); default from the quotient model");
    given["cl_degrees"] = cl->add_option("--degrees", f.degrees, "module degree list")->delimiter(',');
    given["cl_dk"] = cl->add_option("--dk-list", f.dk_list, "annihilator degree list")->delimiter(',');
    given["cl_ratio"] = cl->add_option("--ratio,--growth-ratio", f.tol.growth_ratio, "growth ratio for the verdict");
    given["cl_origin"] = cl->add_flag("--origin", f.origin, "allow z = 0");

    auto* et = app.add_subcommand("extend", "annihilating multiplier and pole report");
    common(et);
    phi_opt(et);
    extend_tols(et);
    given["et_dk"] = et->add_option("--dk", f.dk, "degree of k");
    given["et_nneg"] = et->add_option("--n-neg", f.n_neg, "negative frequencies enforced");

    auto* hs = app.add_subcommand("hull-slice", "extremal estimates along a vertical slice of the graph");
    common(hs);
    phi_opt(hs);
    extend_tols(hs);
    given["hs_z0"] = hs->add_option("--z0", f.z0, "base point in the punctured disk");
    given["hs_w"] = hs->add_option("--w", f.w, "w grid");
    given["hs_h"] = hs->add_option("--on-graph", f.h, "on-graph value at z0 (default from the quotient model)");
    given["hs_dmax"] = hs->add_option("--dmax", f.dmax, "largest degree");

    auto* po = app.add_subcommand("pole-order", "circle means of graph estimates and pole-order fit");
    common(po);
    phi_opt(po);
    extend_tols(po);
    given["po_radii"] = po->add_option("--radii", f.radii, "radii in (0, 1)")->delimiter(',');
    given["po_ntheta"] = po->add_option("--ntheta", f.n_theta, "angles per circle");
    given["po_dmax"] = po->add_option("--dmax", f.dmax, "largest degree");
    given["po_annulus"] = po->add_option("--annulus", f.annulus, "r0,r1,n_r,n_theta for the Laplacian residual");

    auto* co = app.add_subcommand("corpus", "run the acceptance corpus");
    common(co);
    given["co_seed"] = co->add_option("--seed", f.seed, "property-suite seed");
    given["co_instances"] = co->add_option("--instances", f.instances, "instances per property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }
    auto set = [&](const char* key) { return given.count(key) && given[key]->count() > 0; };
    // Options registered once per subcommand share a key; count() is per App.
    auto any = [&](const std::string& key) {
        for (auto* a : {&app, ex, mc, cl, et, hs, po, co})
            for (auto* o : a->get_options())
                if (o->check_lname(key) && o->count() > 0)
                    return true;
        return false;
    };

    try {
        RunConfig c;
        if (!f.config.empty())
            c = parse_config(f.config);
        std::string sub;
        for (auto* a : app.get_subcommands())
            sub = a->get_name();
        if (!sub.empty()) {
            if (!c.command.empty() && c.command != sub)
                throw UsageError("config command '" + c.command + "' conflicts with subcommand '" + sub + "'");
            c.command = sub;
        }
        if (c.command.empty())
            throw UsageError("no command given\n" + app.help());

        if (any("N")) c.N = f.N;
        if (any("output")) c.output = f.output;
        if (any("threads")) c.threads = f.threads;
        if (any("phase-count")) c.tol.phase_count = f.tol.phase_count;
        if (any("refine-tol")) c.tol.refine_tol = f.tol.refine_tol;
        if (any("null-tol")) c.tol.null_tol = f.tol.null_tol;
        if (any("residual-rel")) c.tol.residual_rel = f.tol.residual_rel;
        if (any("stability-tol")) c.tol.stability_tol = f.tol.stability_tol;
        if (any("cluster-radius")) c.tol.cluster_radius = f.tol.cluster_radius;
        if (any("removable-tol")) c.tol.removable_tol = f.tol.removable_tol;
        if (any("eps-div")) c.tol.eps_div = f.tol.eps_div;
        if (any("ratio")) c.tol.growth_ratio = f.tol.growth_ratio;
        if (any("phi")) c.input = f.phi;
        if (set("set")) c.input = f.set;
        if (set("npoints")) c.npoints = f.npoints;
        if (any("z")) c.points.z = parse_complex_list(f.z);
        if (any("w")) c.points.w = parse_complex_list(f.w);
        if (any("lambda")) c.points.lambda = parse_complex_list(f.lambda);
        if (any("degrees")) c.degrees = f.degrees;
        if (any("dmax")) c.degrees = {f.dmax};
        if (set("et_dk")) c.degrees = {f.dk};
        if (set("et_nneg")) c.n_neg = f.n_neg;
        if (any("dk-list")) c.dk_list = f.dk_list;
        if (any("origin")) c.allow_origin = f.origin;
        if (set("hs_z0")) c.points.z0 = parse_complex(f.z0);
        if (set("hs_h")) c.points.h = parse_complex(f.h);
        if (set("po_radii")) c.points.radii = f.radii;
        if (set("po_ntheta")) c.n_theta = f.n_theta;
        if (set("po_annulus")) {
            std::array<double, 4> a{};
            std::stringstream ss(f.annulus);
            std::string part;
            std::size_t i = 0;
            while (std::getline(ss, part, ',')) {
                if (i >= 4)
                    throw UsageError("--annulus takes r0,r1,n_r,n_theta");
                try {
                    a[i++] = std::stod(part);
                } catch (const std::exception&) {
                    throw UsageError("--annulus: bad number '" + part + "'");
                }
            }
            if (i != 4)
                throw UsageError("--annulus takes r0,r1,n_r,n_theta");
            c.annulus = a;
        }
        if (set("co_seed")) c.seed = f.seed;
        if (set("co_instances")) c.instances = f.instances;
        detail::check_ranges(c);

        if (c.command == "extremal") return detail::cmd_extremal(c, out);
        if (c.command == "module-constants") return detail::cmd_module(c, out);
        if (c.command == "classify") return detail::cmd_classify(c, out);
        if (c.command == "extend") return detail::cmd_extend(c, out);
        if (c.command == "hull-slice") return detail::cmd_hull_slice(c, out);
        if (c.command == "pole-order") return detail::cmd_pole_order(c, out);
        if (c.command == "corpus") return detail::cmd_corpus(c, out);
        throw UsageError("unknown command '" + c.command + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_compute;
    }
}

} // namespace phull::cli
