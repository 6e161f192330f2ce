#ifndef FRACMOM_VERIFIER_HPP
#define FRACMOM_VERIFIER_HPP

#include <json.hpp>

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracmom/moments.hpp"

namespace fracmom {

using json = nlohmann::ordered_json;

template <class M>
struct Cond1Report {
    bool pass = true;
    bool checked = true; // false when no gamma source was supplied
    struct Mismatch {
        ExponentVector alpha;
        typename M::Real delta_value;
        typename M::Real gamma_value;
    };
    std::vector<Mismatch> mismatches;
};

template <class M>
struct Cond2Report {
    bool pass = true;
    typename M::Real worst_residual{};
    std::optional<DeltaIndex> worst_index;
};

template <class M>
struct Cond3Entry {
    std::size_t k = 0; // 1-based
    GramVerdict<M> verdict;
};

// Finite-window shadow of the representability conditions. A PASS means
// "consistent at this window", never a global representability proof;
// a FAIL is a definitive refutation.
template <class M>
struct Certificate {
    Window window;
    GramVerdict<M> base_psd;
    Cond1Report<M> cond1;
    Cond2Report<M> cond2;
    std::vector<Cond3Entry<M>> cond3;
    bool overall = true;
    std::vector<std::string> reasons;
};

template <class M>
using GammaSource = std::function<typename M::Real(const ExponentVector&)>;

namespace detail {

template <class M>
bool values_match(const typename M::Real& a, const typename M::Real& b, double tol) {
    if constexpr (M::is_exact) {
        (void)tol;
        return a == b;
    } else {
        return std::abs(a - b) <= tol * (1.0 + std::abs(a));
    }
}

} // namespace detail

// condition (1): delta_{(alpha,0)} = gamma_alpha on the window's alpha range
template <class M>
Cond1Report<M> check_condition1(const DeltaFamily<M>& delta, const GammaSource<M>& gamma_source,
                                const Window& w, std::size_t n, double tol) {
    Cond1Report<M> r;
    if (!gamma_source) {
        r.checked = false;
        return r;
    }
    for (const auto& alpha : window_alphas(w, n)) {
        auto d = delta.value(alpha, 0);
        auto g = gamma_source(alpha);
        if (!detail::values_match<M>(d, g, tol)) {
            r.pass = false;
            r.mismatches.push_back({alpha, d, g});
        }
    }
    return r;
}

// condition (2): the theta recurrence
// delta_{(a,b)} = delta_{(a,b+1)} + sum_j delta_{(a+2e_j,b+1)}
//               + sum_k sum_{xi,eta in I_k} a_{k,xi} a_{k,eta} delta_{(a+xi+eta,b+1)}
template <class M>
Cond2Report<M> check_condition2(const DeltaFamily<M>& delta, const ProblemPolys<M>& P,
                                const Window& w, double tol) {
    Cond2Report<M> r;
    auto abs_val = [](const typename M::Real& v) {
        if constexpr (M::is_exact) return v < 0 ? typename M::Real(-v) : v;
        else return std::abs(v);
    };
    for (const auto& alpha : window_alphas(w, P.n))
        for (unsigned long b = 0; b < w.B; ++b) {
            auto lhs = delta.value(alpha, b);
            auto rhs = delta.value(alpha, b + 1);
            for (std::size_t j = 1; j <= P.n; ++j)
                rhs += delta.value(alpha + ExponentVector::unit(P.n, j, Rational(2)), b + 1);
            for (const auto& pk : P.polys)
                for (const auto& [xi, cxi] : pk.terms())
                    for (const auto& [eta, ceta] : pk.terms())
                        rhs += M::real_part(cxi) * M::real_part(ceta) *
                               delta.value(alpha + xi + eta, b + 1);
            typename M::Real res = lhs - rhs;
            if (abs_val(res) > abs_val(r.worst_residual)) {
                r.worst_residual = res;
                r.worst_index = DeltaIndex{alpha, b};
            }
            bool ok;
            if constexpr (M::is_exact) ok = res == 0;
            else ok = std::abs(res) <= tol * (1.0 + std::abs(lhs));
            if (!ok) r.pass = false;
        }
    return r;
}

// condition (3): the localized Gram matrices are PSD for every p_k
template <class M>
std::vector<Cond3Entry<M>> check_condition3(const DeltaFamily<M>& delta, const ProblemPolys<M>& P,
                                            const Window& w, double tol) {
    auto basis = build_basis(w, P.n);
    std::vector<Cond3Entry<M>> out;
    for (std::size_t k = 0; k < P.polys.size(); ++k) {
        Cond3Entry<M> e;
        e.k = k + 1;
        e.verdict = psd_check(shifted_gram(delta, basis, P.polys[k]), tol);
        out.push_back(std::move(e));
    }
    return out;
}

template <class M>
Certificate<M> verify_all(const DeltaFamily<M>& delta, const GammaSource<M>& gamma_source,
                          const ProblemPolys<M>& P, const Window& w, double tol) {
    Certificate<M> cert;
    cert.window = w;
    auto basis = build_basis(w, P.n);
    cert.base_psd = psd_check(gram(delta, basis), tol);
    cert.cond1 = check_condition1(delta, gamma_source, w, P.n, tol);
    cert.cond2 = check_condition2(delta, P, w, tol);
    cert.cond3 = check_condition3(delta, P, w, tol);
    if (!cert.base_psd.psd) cert.reasons.push_back("base family not PSD at window");
    if (cert.cond1.checked && !cert.cond1.pass) cert.reasons.push_back("cond1: delta(.,0) != gamma");
    if (!cert.cond2.pass) cert.reasons.push_back("cond2: recurrence violated");
    for (const auto& e : cert.cond3)
        if (!e.verdict.psd) cert.reasons.push_back("cond3: k=" + std::to_string(e.k));
    cert.overall = cert.reasons.empty();
    return cert;
}

// informational only: max jump of gamma over a refinement grid around the
// window alphas (continuity of gamma is not decidable from finite data)
inline double gamma_continuity_max_jump(const std::function<double(const std::vector<double>&)>& g,
                                        const std::vector<ExponentVector>& alphas, double h) {
    double worst = 0.0;
    for (const auto& a : alphas) {
        std::vector<double> x(a.dim());
        for (std::size_t j = 0; j < a.dim(); ++j) x[j] = to_double(a[j]);
        double base = g(x);
        for (std::size_t j = 0; j < a.dim(); ++j) {
            auto y = x;
            y[j] += h;
            worst = std::max(worst, std::abs(g(y) - base));
        }
    }
    return worst;
}

// ---- JSON serialization ------------------------------------------------

template <class M>
json value_json(const typename M::Real& v) {
    if constexpr (M::is_exact) return format_rational(v);
    else return v;
}

inline json alpha_json(const ExponentVector& a) {
    json arr = json::array();
    for (const auto& c : a.components()) arr.push_back(format_rational(c));
    return arr;
}

inline json index_json(const DeltaIndex& ix) {
    return json{{"alpha", alpha_json(ix.first)}, {"beta", ix.second}};
}

template <class M>
json verdict_json(const GramVerdict<M>& v) {
    json j;
    j["pass"] = v.psd;
    if constexpr (M::is_exact) {
        json piv = json::array();
        for (const auto& p : v.pivots) piv.push_back(format_rational(p));
        j["pivots"] = piv;
    } else {
        j["min_eigenvalue"] = v.min_eigenvalue;
    }
    if (v.witness) {
        json w = json::array();
        for (const auto& x : *v.witness) w.push_back(value_json<M>(x));
        j["witness"] = w;
        j["witness_value"] = value_json<M>(v.witness_value);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

template <class M>
json certificate_json(const Certificate<M>& cert) {
    json j;
    j["overall"] = cert.overall ? "PASS" : "FAIL";
    j["window"] = {{"D", cert.window.D}, {"N", cert.window.N}, {"B", cert.window.B}};
    json c1;
    c1["pass"] = cert.cond1.pass;
    c1["checked"] = cert.cond1.checked;
    json mm = json::array();
    for (const auto& m : cert.cond1.mismatches)
        mm.push_back({{"alpha", alpha_json(m.alpha)},
                      {"delta", value_json<M>(m.delta_value)},
                      {"gamma", value_json<M>(m.gamma_value)}});
    c1["mismatches"] = mm;
    j["cond1"] = c1;
    json c2;
    c2["pass"] = cert.cond2.pass;
    c2["worst_residual"] = value_json<M>(cert.cond2.worst_residual);
    c2["index"] = cert.cond2.worst_index ? index_json(*cert.cond2.worst_index) : json(nullptr);
    j["cond2"] = c2;
    json c3 = json::array();
    for (const auto& e : cert.cond3) {
        json ek = verdict_json(e.verdict);
        json entry;
        entry["k"] = e.k;
        for (auto& [key, val] : ek.items()) entry[key] = val;
        c3.push_back(entry);
    }
    j["cond3"] = c3;
    j["base_psd"] = verdict_json(cert.base_psd);
    j["reasons"] = cert.reasons;
    return j;
}

} // namespace fracmom

#endif
