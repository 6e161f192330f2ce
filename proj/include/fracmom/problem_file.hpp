#ifndef FRACMOM_PROBLEM_FILE_HPP
#define FRACMOM_PROBLEM_FILE_HPP

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "fracmom/parser.hpp"
#include "fracmom/verifier.hpp"

namespace fracmom {

// Parsed problem file (JSON schema). Rational values travel as "p/q" strings
// so exact data never passes through binary floats.
struct ProblemFile {
    std::size_t n = 0;
    std::string mode = "exact"; // "exact" | "float"
    std::vector<std::string> polynomials;
    json measure;     // null or {atoms:[{point|roots, weight}]}
    json log_measure; // null or {atoms:[{point, weight}]}
    json delta_table; // null or [{alpha, beta, value}]
    json gamma_table; // null or [{alpha, value}]
    Window window;
    double tolerance = 1e-9;
};

inline ProblemFile load_problem(const json& j) {
    ProblemFile pf;
    if (!j.is_object()) throw InputError("problem file must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long>() < 1)
        throw InputError("field 'n' must be a positive integer");
    pf.n = j["n"].get<std::size_t>();
    if (j.contains("mode")) {
        pf.mode = j["mode"].get<std::string>();
        if (pf.mode != "exact" && pf.mode != "float")
            throw InputError("field 'mode' must be \"exact\" or \"float\"");
    }
    if (j.contains("polynomials")) {
        if (!j["polynomials"].is_array()) throw InputError("field 'polynomials' must be an array");
        for (const auto& p : j["polynomials"]) pf.polynomials.push_back(p.get<std::string>());
    }
    pf.measure = j.value("measure", json(nullptr));
    pf.log_measure = j.value("log_measure", json(nullptr));
    pf.delta_table = j.value("delta_table", json(nullptr));
    pf.gamma_table = j.value("gamma_table", json(nullptr));
    int sources = !pf.measure.is_null();
    sources += !pf.log_measure.is_null();
    sources += !pf.delta_table.is_null();
    if (sources != 1)
        throw InputError("exactly one of measure / log_measure / delta_table must be present");
    if (!pf.log_measure.is_null() && pf.mode == "exact")
        throw InputError("log_measure requires float mode (exp(-s) is not rational)");
    if (j.contains("window")) {
        const auto& w = j["window"];
        pf.window.D = w.at("D").get<unsigned long>();
        pf.window.N = w.at("N").get<unsigned long>();
        pf.window.B = w.at("B").get<unsigned long>();
        if (pf.window.D == 0) throw InputError("window.D must be positive");
    }
    if (j.contains("tolerance")) pf.tolerance = j["tolerance"].get<double>();
    return pf;
}

inline ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
    return load_problem(j);
}

namespace detail {

template <class M>
typename M::Real real_from_json(const json& v, const char* what) {
    if (v.is_string()) return M::real_from_rational(parse_rational(v.get<std::string>()));
    if constexpr (M::is_exact) {
        if (v.is_number_integer()) return typename M::Real(v.get<long>());
        throw InputError(std::string(what) +
                         ": exact mode needs rational strings or integers, not floats");
    } else {
        if (v.is_number()) return v.get<double>();
        throw InputError(std::string(what) + ": expected a number");
    }
}

inline ExponentVector alpha_from_json(const json& arr, std::size_t n) {
    if (!arr.is_array() || arr.size() != n)
        throw InputError("alpha must be an array of length n");
    std::vector<Rational> comps;
    for (const auto& c : arr)
        comps.push_back(c.is_string() ? parse_rational(c.get<std::string>())
                                      : parse_rational(c.dump()));
    return ExponentVector(std::move(comps));
}

} // namespace detail

template <class M>
std::vector<FracPoly<M>> parse_problem_polys(const ProblemFile& pf) {
    std::vector<FracPoly<M>> polys;
    for (const auto& s : pf.polynomials) {
        try {
            polys.push_back(parse_fracpoly<M>(s, pf.n));
        } catch (const ParseError& e) {
            throw InputError("polynomial \"" + s + "\": " + e.what());
        }
    }
    return polys;
}

template <class M>
AtomicMeasure<M> measure_from_json(const json& m, std::size_t n) {
    if (!m.is_object() || !m.contains("atoms") || !m["atoms"].is_array())
        throw InputError("measure must be {atoms: [...]}");
    unsigned long d = 1;
    bool d_set = false;
    std::vector<std::pair<std::vector<typename M::Real>, typename M::Real>> atoms;
    for (const auto& a : m["atoms"]) {
        auto weight = detail::real_from_json<M>(a.at("weight"), "atom weight");
        std::vector<typename M::Real> coords;
        if (a.contains("roots")) {
            const auto& r = a["roots"];
            unsigned long power = r.at("power").get<unsigned long>();
            if (power == 0) throw InputError("roots.power must be positive");
            if (d_set && power != d)
                throw InputError("all atoms must share one global root power");
            d = power;
            d_set = true;
            for (const auto& v : r.at("values"))
                coords.push_back(detail::real_from_json<M>(v, "root value"));
            if constexpr (!M::is_exact)
                for (auto& x : coords) x = std::pow(x, static_cast<double>(power));
        } else if (a.contains("point")) {
            if (d_set && d != 1)
                throw InputError("all atoms must share one global root power");
            d_set = true;
            for (const auto& v : a["point"])
                coords.push_back(detail::real_from_json<M>(v, "point component"));
        } else {
            throw InputError("atom needs 'point' or 'roots'");
        }
        if (coords.size() != n) throw InputError("atom dimension must equal n");
        atoms.emplace_back(std::move(coords), std::move(weight));
    }
    AtomicMeasure<M> mu(n, M::is_exact ? d : 1);
    for (auto& [c, w] : atoms) mu.add_atom(std::move(c), std::move(w));
    return mu;
}

inline LogAtomicMeasure log_measure_from_json(const json& m, std::size_t n) {
    if (!m.is_object() || !m.contains("atoms") || !m["atoms"].is_array())
        throw InputError("log_measure must be {atoms: [...]}");
    LogAtomicMeasure nu;
    nu.n = n;
    for (const auto& a : m["atoms"]) {
        std::vector<double> p;
        for (const auto& v : a.at("point")) p.push_back(v.get<double>());
        if (p.size() != n) throw InputError("log atom dimension must equal n");
        nu.add_atom(std::move(p), a.at("weight").get<double>());
    }
    return nu;
}

template <class M>
TabulatedDelta<M> delta_table_from_json(const json& t, std::size_t n) {
    if (!t.is_array()) throw InputError("delta_table must be an array");
    TabulatedDelta<M> table;
    for (const auto& e : t)
        table.insert(detail::alpha_from_json(e.at("alpha"), n),
                     e.at("beta").get<unsigned long>(),
                     detail::real_from_json<M>(e.at("value"), "delta value"));
    return table;
}

template <class M>
std::map<ExponentVector, typename M::Real> gamma_table_from_json(const json& t, std::size_t n) {
    if (!t.is_array()) throw InputError("gamma_table must be an array");
    std::map<ExponentVector, typename M::Real> table;
    for (const auto& e : t)
        table.insert_or_assign(detail::alpha_from_json(e.at("alpha"), n),
                               detail::real_from_json<M>(e.at("value"), "gamma value"));
    return table;
}

// window.D must clear the p_k exponent denominators; exact measures must be
// refinable to the window's fractions
template <class M>
void validate_window(const ProblemFile& pf, const std::vector<FracPoly<M>>& polys) {
    unsigned long p_lcm = 1;
    for (const auto& p : polys)
        for (unsigned long l : p.denominator_lcms()) p_lcm = lcm_ui(p_lcm, l);
    if (pf.window.D % p_lcm != 0)
        throw InputError("window.D = " + std::to_string(pf.window.D) +
                         " is not a multiple of the p-denominator lcm " + std::to_string(p_lcm));
}

inline void validate_exact_measure(const ProblemFile& pf, const AtomicMeasure<ExactMode>& mu) {
    if (mu.root_power() % pf.window.D != 0)
        throw InputError("exact measure root power " + std::to_string(mu.root_power()) +
                         " must be a multiple of window.D = " + std::to_string(pf.window.D));
}

// problem file emitted by --emit-delta: same problem, delta/gamma tabulated
template <class M>
json emit_delta_json(const ProblemFile& pf, const std::map<DeltaIndex, typename M::Real>& entries,
                     const std::map<ExponentVector, typename M::Real>& gamma) {
    json out;
    out["n"] = pf.n;
    out["mode"] = pf.mode;
    out["polynomials"] = pf.polynomials;
    json dt = json::array();
    for (const auto& [ix, v] : entries)
        dt.push_back({{"alpha", alpha_json(ix.first)},
                      {"beta", ix.second},
                      {"value", value_json<M>(v)}});
    out["delta_table"] = dt;
    json gt = json::array();
    for (const auto& [a, v] : gamma)
        gt.push_back({{"alpha", alpha_json(a)}, {"value", value_json<M>(v)}});
    out["gamma_table"] = gt;
    out["window"] = {{"D", pf.window.D}, {"N", pf.window.N}, {"B", pf.window.B}};
    out["tolerance"] = pf.tolerance;
    return out;
}

template <class M>
std::string render_text(const Certificate<M>& cert) {
    std::ostringstream os;
    os << "overall: " << (cert.overall ? "PASS" : "FAIL") << " (window D=" << cert.window.D
       << " N=" << cert.window.N << " B=" << cert.window.B << ", consistency at this window only)\n";
    os << "base PSD: " << (cert.base_psd.psd ? "PASS" : "FAIL") << "\n";
    os << "cond1 (delta(.,0) = gamma): "
       << (cert.cond1.checked ? (cert.cond1.pass ? "PASS" : "FAIL") : "not checked (no gamma)")
       << "\n";
    for (const auto& m : cert.cond1.mismatches)
        os << "  mismatch at alpha=" << m.alpha.str() << "\n";
    os << "cond2 (recurrence): " << (cert.cond2.pass ? "PASS" : "FAIL");
    if (cert.cond2.worst_index)
        os << ", worst residual at " << index_str(*cert.cond2.worst_index);
    os << "\n";
    for (const auto& e : cert.cond3)
        os << "cond3 k=" << e.k << ": " << (e.verdict.psd ? "PASS" : "FAIL") << "\n";
    for (const auto& r : cert.reasons) os << "reason: " << r << "\n";
    return os.str();
}

} // namespace fracmom

#endif
