// Command-line front end: JSON problem ingestion, verification subcommands,
// certificate emission.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fracmom/problem_file.hpp"

using namespace fracmom;

namespace {

struct CommonOpts {
    std::string input;
    std::string mode_override;
    std::optional<double> tol_override;
    std::string window_override;
    std::string report = "json";
    std::string emit_delta_path;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_emit) {
    cmd->add_option("--input", o.input, "problem file (JSON)")->required();
    cmd->add_option("--mode", o.mode_override, "exact|float (overrides file)")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--tolerance", o.tol_override, "float-mode tolerance (overrides file)");
    cmd->add_option("--window", o.window_override, "D,N,B (overrides file)");
    cmd->add_option("--report", o.report, "json|text")->check(CLI::IsMember({"json", "text"}));
    if (with_emit)
        cmd->add_option("--emit-delta", o.emit_delta_path,
                        "write the computed delta family as a checkable problem file");
}

ProblemFile load_with_overrides(const CommonOpts& o) {
    ProblemFile pf = load_problem_file(o.input);
    if (!o.mode_override.empty()) pf.mode = o.mode_override;
    if (o.tol_override) pf.tolerance = *o.tol_override;
    if (!o.window_override.empty()) {
        unsigned long d, n, b;
        if (std::sscanf(o.window_override.c_str(), "%lu,%lu,%lu", &d, &n, &b) != 3 || d == 0)
            throw InputError("--window expects D,N,B with positive D");
        pf.window = {d, n, b};
    }
    return pf;
}

template <class M>
int emit_certificate(const Certificate<M>& cert, const std::string& report) {
    if (report == "text")
        std::cout << render_text(cert);
    else
        std::cout << certificate_json(cert).dump(2) << "\n";
    return cert.overall ? 0 : 1;
}

template <class M>
GammaSource<M> measure_gamma_source(const AtomicMeasure<M>& mu) {
    return [&mu](const ExponentVector& alpha) -> typename M::Real {
        if constexpr (M::is_exact) {
            return gamma_moment_exact(mu, alpha);
        } else {
            std::vector<double> a(alpha.dim());
            for (std::size_t j = 0; j < alpha.dim(); ++j) a[j] = to_double(alpha[j]);
            return gamma_moment(mu, a);
        }
    };
}

template <class M>
AtomicMeasure<M> forward_measure(const ProblemFile& pf) {
    if (!pf.measure.is_null()) return measure_from_json<M>(pf.measure, pf.n);
    if constexpr (!M::is_exact) {
        if (!pf.log_measure.is_null())
            return laplace_pushforward(log_measure_from_json(pf.log_measure, pf.n));
    }
    throw InputError("forward requires a measure or log_measure");
}

template <class M>
int run_forward(const ProblemFile& pf, const CommonOpts& o) {
    auto polys = parse_problem_polys<M>(pf);
    validate_window(pf, polys);
    AtomicMeasure<M> mu = forward_measure<M>(pf);
    if constexpr (M::is_exact) validate_exact_measure(pf, mu);
    auto P = make_problem<M>(pf.n, polys);
    ComputedDelta<M> delta(mu, P);
    RecordingDelta<M> recording(delta);
    const DeltaFamily<M>& used =
        o.emit_delta_path.empty() ? static_cast<const DeltaFamily<M>&>(delta) : recording;
    auto gamma_source = measure_gamma_source<M>(mu);
    auto cert = verify_all<M>(used, gamma_source, P, pf.window, pf.tolerance);

    double jump = gamma_continuity_max_jump(
        [&mu](const std::vector<double>& a) { return gamma_moment(mu, a); },
        window_alphas(pf.window, pf.n), 1e-6);
    std::cerr << "info: gamma continuity smoke test, max jump over 1e-6 refinement = " << jump
              << " (informational)\n";

    if (!o.emit_delta_path.empty()) {
        std::map<ExponentVector, typename M::Real> gamma;
        for (const auto& a : window_alphas(pf.window, pf.n)) gamma.emplace(a, gamma_source(a));
        std::ofstream out(o.emit_delta_path);
        if (!out) throw InputError("cannot write " + o.emit_delta_path);
        out << emit_delta_json<M>(pf, recording.seen(), gamma).dump(2) << "\n";
    }
    return emit_certificate(cert, o.report);
}

template <class M>
int run_check(const ProblemFile& pf, const CommonOpts& o) {
    if (pf.delta_table.is_null()) throw InputError("check requires delta_table");
    auto polys = parse_problem_polys<M>(pf);
    validate_window(pf, polys);
    auto P = make_problem<M>(pf.n, polys);
    auto table = delta_table_from_json<M>(pf.delta_table, pf.n);
    GammaSource<M> gamma_source;
    std::map<ExponentVector, typename M::Real> gamma;
    if (!pf.gamma_table.is_null()) {
        gamma = gamma_table_from_json<M>(pf.gamma_table, pf.n);
        gamma_source = [&gamma](const ExponentVector& alpha) -> typename M::Real {
            auto it = gamma.find(alpha);
            if (it == gamma.end())
                throw MissingEntry("gamma_table has no entry", alpha.str());
            return it->second;
        };
    }
    auto cert = verify_all<M>(table, gamma_source, P, pf.window, pf.tolerance);
    return emit_certificate(cert, o.report);
}

int run_kernel(const ProblemFile& pf, const CommonOpts& o, const std::string& expr) {
    if (pf.mode != "exact") throw InputError("kernel requires exact mode");
    auto polys = parse_problem_polys<ExactMode>(pf);
    auto P = make_problem<ExactMode>(pf.n, polys);
    ExtendedPoly<ExactMode> q = to_extended(parse_fracpoly_with_s<ExactMode>(expr, pf.n));
    KernelVerdict v = kernel_test(q, P);
    json wj(nullptr);
    std::string wtext;
    if (v.witness) {
        json arr = json::array();
        for (std::size_t j = 0; j < v.witness->dim(); ++j) {
            auto t = v.witness->component(j);
            arr.push_back(format_rational(t));
            wtext += (j ? "," : "") + format_rational(t);
        }
        wj = arr;
    }
    if (o.report == "text") {
        std::cout << (v.in_kernel ? "TRUE" : "FALSE") << "\n";
        if (!v.in_kernel)
            std::cout << (v.witness ? "witness t = (" + wtext + ")" : "no small witness found")
                      << "\n";
    } else {
        json j;
        j["result"] = v.in_kernel ? "TRUE" : "FALSE";
        j["witness"] = wj;
        std::cout << j.dump(2) << "\n";
    }
    return v.in_kernel ? 0 : 1;
}

template <class M>
json matrix_json(const SymMatrix<M>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.n; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.n; ++j) row.push_back(value_json<M>(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

template <class M>
int run_psd(const ProblemFile& pf, const CommonOpts& o) {
    auto polys = parse_problem_polys<M>(pf);
    validate_window(pf, polys);
    auto P = make_problem<M>(pf.n, polys);
    std::unique_ptr<DeltaFamily<M>> delta;
    if (!pf.delta_table.is_null()) {
        delta = std::make_unique<TabulatedDelta<M>>(delta_table_from_json<M>(pf.delta_table, pf.n));
    } else {
        AtomicMeasure<M> mu = forward_measure<M>(pf);
        if constexpr (M::is_exact) validate_exact_measure(pf, mu);
        delta = std::make_unique<ComputedDelta<M>>(std::move(mu), P);
    }
    auto basis = build_basis(pf.window, pf.n);
    bool all_psd = true;
    json out;
    json basis_j = json::array();
    for (const auto& ix : basis) basis_j.push_back(index_json(ix));
    out["basis"] = basis_j;
    auto base = gram(*delta, basis);
    auto base_v = psd_check(base, pf.tolerance);
    all_psd &= base_v.psd;
    out["base"] = verdict_json(base_v);
    out["base"]["matrix"] = matrix_json(base);
    json shifted = json::array();
    for (std::size_t k = 0; k < P.polys.size(); ++k) {
        auto m = shifted_gram(*delta, basis, P.polys[k]);
        auto v = psd_check(m, pf.tolerance);
        all_psd &= v.psd;
        json e = verdict_json(v);
        e["k"] = k + 1;
        e["matrix"] = matrix_json(m);
        shifted.push_back(e);
    }
    out["shifted"] = shifted;
    if (o.report == "text") {
        std::cout << "base gram: " << (base_v.psd ? "PSD" : "not PSD") << "\n";
        for (const auto& e : shifted)
            std::cout << "shifted gram k=" << e["k"] << ": "
                      << (e["pass"].get<bool>() ? "PSD" : "not PSD") << "\n";
    } else {
        std::cout << out.dump(2) << "\n";
    }
    return all_psd ? 0 : 1;
}

template <class F>
int dispatch_mode(const ProblemFile& pf, F&& f) {
    if (pf.mode == "exact") return f(ExactMode{});
    return f(FloatMode{});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for fractional moment families"};
    app.require_subcommand(1);

    CommonOpts fo, co, ko, po;
    std::string kernel_expr;
    auto* forward = app.add_subcommand("forward", "build delta from a measure and verify");
    add_common(forward, fo, true);
    auto* check = app.add_subcommand("check", "verify a tabulated delta family");
    add_common(check, co, false);
    auto* kernel = app.add_subcommand("kernel", "kernel-ideal membership for an expression in t,s");
    add_common(kernel, ko, false);
    kernel->add_option("expression", kernel_expr, "expression in t1..tn and s")->required();
    auto* psd = app.add_subcommand("psd", "print Gram matrices and PSD verdicts");
    add_common(psd, po, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (forward->parsed()) {
            ProblemFile pf = load_with_overrides(fo);
            return dispatch_mode(pf, [&](auto mode) {
                return run_forward<decltype(mode)>(pf, fo);
            });
        }
        if (check->parsed()) {
            ProblemFile pf = load_with_overrides(co);
            return dispatch_mode(pf, [&](auto mode) {
                return run_check<decltype(mode)>(pf, co);
            });
        }
        if (kernel->parsed()) {
            ProblemFile pf = load_with_overrides(ko);
            return run_kernel(pf, ko, kernel_expr);
        }
        ProblemFile pf = load_with_overrides(po);
        return dispatch_mode(pf, [&](auto mode) {
            return run_psd<decltype(mode)>(pf, po);
        });
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
