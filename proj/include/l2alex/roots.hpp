#pragma once

// One-variable root extraction: exact square-free split (Yun), then
// Aberth-Ehrlich simultaneous iteration with Newton polish in long double.
// Downstream only consumes root moduli with multiplicities.

#include <l2alex/laurent.hpp>

#include <complex>

namespace l2alex {

struct RootCluster {
    double modulus = 0;       // representative |root|
    std::int64_t mult = 0;    // total multiplicity in the cluster
    bool snapped_one = false; // set when the modulus was snapped to exactly 1
};

struct RootData {
    std::int64_t monomial_exp = 0; // p = z^monomial_exp * (c_0 + ... + c_d z^d), c_0 != 0
    Rat lead_abs;                  // |c_d|
    Rat trail_over_lead_abs;       // |c_0 / c_d|, equals the product of root moduli
    std::vector<RootCluster> clusters;
    double err = 0; // bound on the worst root-modulus error
};

namespace detail {

using UPoly = std::vector<Rat>; // dense c_0..c_d, zero poly = empty

inline void u_trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int u_deg(const UPoly& p) { return (int)p.size() - 1; }

inline UPoly u_deriv(const UPoly& p) {
    UPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat((std::int64_t)i));
    u_trim(d);
    return d;
}

inline UPoly u_monic(UPoly p) {
    u_trim(p);
    if (p.empty()) return p;
    Rat lead = p.back();
    for (auto& c : p) c /= lead;
    return p;
}

inline UPoly u_mod(UPoly a, const UPoly& b) {
    u_trim(a);
    if (b.empty()) throw std::logic_error("u_mod: zero divisor");
    while ((int)a.size() >= (int)b.size() && !a.empty()) {
        Rat q = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        a.pop_back();
        u_trim(a);
    }
    return a;
}

inline UPoly u_div_exact(UPoly a, const UPoly& b) {
    u_trim(a);
    if (b.empty()) throw std::logic_error("u_div_exact: zero divisor");
    UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while ((int)a.size() >= (int)b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        q[off] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
        a.pop_back();
        u_trim(a);
    }
    if (!a.empty()) throw std::logic_error("u_div_exact: remainder nonzero");
    u_trim(q);
    return q;
}

inline UPoly u_gcd(UPoly a, UPoly b) {
    u_trim(a);
    u_trim(b);
    while (!b.empty()) {
        UPoly r = u_mod(a, b);
        a = std::move(b);
        b = u_monic(std::move(r));
    }
    return u_monic(std::move(a));
}

// Yun square-free decomposition: returns (factor, multiplicity) pairs.
inline std::vector<std::pair<UPoly, int>> u_squarefree(const UPoly& f) {
    std::vector<std::pair<UPoly, int>> out;
    UPoly fp = u_deriv(f);
    UPoly g = u_gcd(f, fp);
    if (u_deg(g) == 0) {
        out.emplace_back(u_monic(f), 1);
        return out;
    }
    UPoly c = u_div_exact(u_monic(f), g);
    UPoly d = [&] {
        UPoly t = u_div_exact(fp, g);
        Rat lead = f.back();
        for (auto& x : t) x /= lead; // keep scale consistent with monic f
        UPoly cp = u_deriv(c);
        UPoly r(std::max(t.size(), cp.size()), Rat(0));
        for (std::size_t i = 0; i < t.size(); ++i) r[i] += t[i];
        for (std::size_t i = 0; i < cp.size(); ++i) r[i] -= cp[i];
        u_trim(r);
        return r;
    }();
    int i = 1;
    while (u_deg(c) > 0) {
        UPoly a = u_gcd(c, d);
        if (u_deg(a) > 0) out.emplace_back(a, i);
        c = u_div_exact(c, a);
        UPoly t = d.empty() ? UPoly{} : u_div_exact(d, a);
        UPoly cp = u_deriv(c);
        UPoly r(std::max(t.size(), cp.size()), Rat(0));
        for (std::size_t k = 0; k < t.size(); ++k) r[k] += t[k];
        for (std::size_t k = 0; k < cp.size(); ++k) r[k] -= cp[k];
        u_trim(r);
        d = std::move(r);
        ++i;
    }
    return out;
}

using CLD = std::complex<long double>;

inline CLD horner(const std::vector<CLD>& c, CLD x) {
    CLD v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

struct AberthResult {
    std::vector<CLD> roots;
    long double err = 0; // worst |p/p'| over the returned roots
};

// Simple roots assumed (callers pass square-free factors).
inline AberthResult aberth(const UPoly& p) {
    const int d = u_deg(p);
    AberthResult res;
    if (d < 1) return res;

    std::vector<CLD> c(p.size());
    {
        double mx = 0;
        for (auto& x : p) mx = std::max(mx, std::fabs(rat_to_double(x)));
        for (std::size_t i = 0; i < p.size(); ++i)
            c[i] = CLD((long double)(rat_to_double(p[i]) / mx), 0.0L);
    }
    std::vector<CLD> dc(d);
    for (int i = 1; i <= d; ++i) dc[i - 1] = c[i] * (long double)i;

    long double radius = 0;
    for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(c[i] / c[d]));
    radius = 1 + radius;
    std::vector<CLD> x(d);
    for (int k = 0; k < d; ++k) {
        long double ang = 2.0L * 3.141592653589793238L * k / d + 0.4L;
        long double r = radius * (0.5L + 0.5L * (k + 1) / d);
        x[k] = CLD(r * std::cos(ang), r * std::sin(ang));
    }

    for (int iter = 0; iter < 400; ++iter) {
        long double worst = 0;
        for (int k = 0; k < d; ++k) {
            CLD pv = horner(c, x[k]);
            CLD dv = horner(dc, x[k]);
            if (pv == CLD(0)) continue;
            CLD w = dv == CLD(0) ? CLD(1) : pv / dv;
            CLD s(0);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                CLD dxy = x[k] - x[j];
                if (std::abs(dxy) < 1e-30L) dxy = CLD(1e-30L, 0.0L);
                s += CLD(1) / dxy;
            }
            CLD corr = w / (CLD(1) - w * s);
            x[k] -= corr;
            worst = std::max(worst, std::abs(corr) / std::max((long double)1e-30, std::abs(x[k])));
        }
        if (worst < 1e-20L) break;
    }
    // Newton polish, then first-order error bound per root
    long double err = 0;
    for (int k = 0; k < d; ++k) {
        for (int it = 0; it < 8; ++it) {
            CLD pv = horner(c, x[k]);
            CLD dv = horner(dc, x[k]);
            if (dv == CLD(0) || pv == CLD(0)) break;
            CLD corr = pv / dv;
            if (std::abs(corr) > 0.5L * std::max((long double)1.0, std::abs(x[k]))) break;
            x[k] -= corr;
        }
        CLD pv = horner(c, x[k]);
        CLD dv = horner(dc, x[k]);
        long double e = dv == CLD(0) ? std::abs(pv) : std::abs(pv / dv);
        err = std::max(err, e);
    }
    res.roots = std::move(x);
    res.err = err;
    return res;
}

} // namespace detail

// root_tol: residual budget per root modulus and the snap-to-1 threshold.
inline RootData one_var_roots(const QPoly& p, double root_tol = 1e-12) {
    if (p.nvars != 1) throw std::invalid_argument("one_var_roots: one-variable input required");
    if (p.is_zero()) throw std::invalid_argument("one_var_roots: zero polynomial");

    RootData rd;
    std::int64_t lo = p.terms.begin()->first[0];
    std::int64_t hi = p.terms.rbegin()->first[0];
    rd.monomial_exp = lo;
    detail::UPoly dense((std::size_t)(hi - lo + 1), Rat(0));
    for (auto& [e, c] : p.terms) dense[(std::size_t)(e[0] - lo)] = c;

    rd.lead_abs = rat_abs(dense.back());
    rd.trail_over_lead_abs = rat_abs(dense.front() / dense.back());

    const int d = detail::u_deg(dense);
    if (d == 0) return rd;

    struct RawRoot { double modulus; std::int64_t mult; bool exact; double err; };
    std::vector<RawRoot> raw;

    auto factors = detail::u_squarefree(dense);
    for (auto& [f, mult] : factors) {
        int fd = detail::u_deg(f);
        if (fd == 1) {
            Rat root = -f[0] / f[1];
            raw.push_back({std::fabs(rat_to_double(root)), mult, true, 0.0});
            continue;
        }
        auto ab = detail::aberth(f);
        double e = (double)ab.err;
        for (auto& z : ab.roots) raw.push_back({(double)std::abs(z), mult, false, e});
    }

    std::sort(raw.begin(), raw.end(),
              [](const RawRoot& a, const RawRoot& b) { return a.modulus < b.modulus; });

    // cluster radius 1e-8 (relative above modulus 1), then snap near-1 reps
    double err_total = 0;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i + 1;
        double sum = raw[i].modulus * (double)raw[i].mult;
        std::int64_t mult = raw[i].mult;
        double err = raw[i].err;
        bool all_exact = raw[i].exact;
        while (j < raw.size() &&
               raw[j].modulus - raw[j - 1].modulus <= 1e-8 * std::max(1.0, raw[j].modulus)) {
            sum += raw[j].modulus * (double)raw[j].mult;
            mult += raw[j].mult;
            err = std::max(err, raw[j].err);
            all_exact = all_exact && raw[j].exact;
            ++j;
        }
        RootCluster cl;
        cl.modulus = sum / (double)mult;
        cl.mult = mult;
        if (std::fabs(cl.modulus - 1.0) <= root_tol) {
            cl.modulus = 1.0;
            cl.snapped_one = true;
        }
        rd.clusters.push_back(cl);
        if (!all_exact) err_total = std::max(err_total, err);
        i = j;
    }
    rd.err = err_total;

    // invariant: product of all root moduli equals |c_0/c_d| exactly
    double log_prod = 0;
    for (auto& cl : rd.clusters) log_prod += (double)cl.mult * std::log(cl.modulus);
    double log_exact = rat_log(rd.trail_over_lead_abs);
    if (std::fabs(log_prod - log_exact) > 1e-9 * std::max(1.0, std::fabs(log_exact)) + 1e-9)
        throw std::runtime_error("one_var_roots: modulus product check failed");
    return rd;
}

} // namespace l2alex
