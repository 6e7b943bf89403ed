#pragma once

// Value class for torsion functions of the form C * t^r * prod max(c_i, t)^{e_i}
// together with sampled fallbacks and the degree calculus. Functions are
// compared up to monomial shift t^r (the natural equivalence for torsions).

#include <l2alex/roots.hpp>

#include <limits>

namespace l2alex {

struct MMFactor {
    double c = 1;                // breakpoint, > 0
    double e = 0;                // real exponent
    std::optional<Rat> c_exact;  // set when the breakpoint is exactly known
};

struct MaxMonomialFn {
    bool zero = false;
    double C = 1;
    double r = 0;
    std::vector<MMFactor> factors;       // canonical: sorted by c, merged, e != 0
    std::optional<Rat> C_exact;          // |leading coefficient| when known
    std::optional<Rat> prod_exact;       // C * prod c_i^{e_i} when known (t->0 constant past t^r)
};

struct DegreeReport {
    double deg0 = 0;
    double deg_inf = 0;
    double deg = 0;
    bool exact = true;
    bool is_zero_fn = false;
    double stderr0 = 0;
    double stderr_inf = 0;
};

namespace detail {

constexpr double kBreakpointLogTol = 1e-9;

inline bool same_breakpoint(const MMFactor& a, const MMFactor& b) {
    if (a.c_exact && b.c_exact) return *a.c_exact == *b.c_exact;
    if (a.c == b.c) return true;
    return std::fabs(std::log(a.c) - std::log(b.c)) <= kBreakpointLogTol;
}

} // namespace detail

inline void mm_canonicalize(MaxMonomialFn& f) {
    if (f.zero) {
        f.factors.clear();
        f.C = 0;
        f.r = 0;
        f.C_exact.reset();
        f.prod_exact = Rat(0);
        return;
    }
    for (auto& fa : f.factors)
        if (!(fa.c > 0)) throw std::invalid_argument("MaxMonomialFn: breakpoints must be positive");
    std::sort(f.factors.begin(), f.factors.end(),
              [](const MMFactor& a, const MMFactor& b) { return a.c < b.c; });
    std::vector<MMFactor> merged;
    for (auto& fa : f.factors) {
        if (fa.e == 0) continue;
        if (!merged.empty() && detail::same_breakpoint(merged.back(), fa)) {
            MMFactor& m = merged.back();
            // prefer exactly-known representatives, then the dominant exponent
            if (!m.c_exact && fa.c_exact) {
                m.c = fa.c;
                m.c_exact = fa.c_exact;
            } else if (!m.c_exact && !fa.c_exact && std::fabs(fa.e) > std::fabs(m.e)) {
                m.c = fa.c;
            }
            m.e += fa.e;
            if (m.e == 0) merged.pop_back();
        } else {
            merged.push_back(fa);
        }
    }
    f.factors = std::move(merged);
}

inline MaxMonomialFn mm_zero() {
    MaxMonomialFn f;
    f.zero = true;
    mm_canonicalize(f);
    return f;
}

inline MaxMonomialFn mm_one() {
    MaxMonomialFn f;
    f.C_exact = Rat(1);
    f.prod_exact = Rat(1);
    return f;
}

inline MaxMonomialFn mm_monomial(double C, double r) {
    MaxMonomialFn f;
    if (!(C > 0)) throw std::invalid_argument("mm_monomial: C must be positive");
    f.C = C;
    f.r = r;
    return f;
}

// max(1, t)^e with the breakpoint pinned exactly at 1
inline MaxMonomialFn mm_max_one_pow(double e) {
    MaxMonomialFn f = mm_one();
    if (e != 0) f.factors.push_back({1.0, e, Rat(1)});
    return f;
}

// max(1, t^s) for real s (= t^s * max(1,t)^{-s} when s < 0)
inline MaxMonomialFn mm_max_one_power_scale(double s) {
    if (s >= 0) return mm_max_one_pow(s);
    MaxMonomialFn f = mm_max_one_pow(-s);
    f.r = s;
    return f;
}

inline double mm_eval(const MaxMonomialFn& f, double t) {
    if (!(t > 0)) throw std::invalid_argument("mm_eval: t must be positive");
    if (f.zero) return 0.0;
    double lg = std::log(f.C) + f.r * std::log(t);
    for (auto& fa : f.factors) lg += fa.e * std::log(std::max(fa.c, t));
    return std::exp(lg);
}

inline MaxMonomialFn mm_multiply(const MaxMonomialFn& a, const MaxMonomialFn& b) {
    if (a.zero || b.zero) return mm_zero();
    MaxMonomialFn f;
    f.C = a.C * b.C;
    f.r = a.r + b.r;
    f.factors = a.factors;
    f.factors.insert(f.factors.end(), b.factors.begin(), b.factors.end());
    if (a.C_exact && b.C_exact) f.C_exact = *a.C_exact * *b.C_exact;
    if (a.prod_exact && b.prod_exact) f.prod_exact = *a.prod_exact * *b.prod_exact;
    mm_canonicalize(f);
    return f;
}

inline MaxMonomialFn mm_inverse(const MaxMonomialFn& f) {
    if (f.zero) throw std::domain_error("mm_inverse: zero function");
    MaxMonomialFn g = f;
    g.C = 1.0 / f.C;
    g.r = -f.r;
    for (auto& fa : g.factors) fa.e = -fa.e;
    if (f.C_exact) g.C_exact = Rat(1) / *f.C_exact;
    if (f.prod_exact && *f.prod_exact != 0) g.prod_exact = Rat(1) / *f.prod_exact;
    mm_canonicalize(g);
    return g;
}

// f(t^rho); rho = 0 would collapse the parameter and is rejected.
inline MaxMonomialFn mm_reparam_power(const MaxMonomialFn& f, double rho) {
    if (rho == 0) throw std::invalid_argument("reparam_power: rho must be nonzero");
    if (f.zero) return mm_zero();
    MaxMonomialFn g;
    g.C = f.C;
    g.r = f.r * rho;
    if (rho > 0) {
        for (auto& fa : f.factors) {
            MMFactor nf;
            nf.c = std::pow(fa.c, 1.0 / rho);
            nf.e = fa.e * rho;
            if (fa.c_exact && *fa.c_exact == 1) {
                nf.c = 1.0;
                nf.c_exact = Rat(1);
            }
            g.factors.push_back(nf);
        }
        g.C_exact = f.C_exact;
        g.prod_exact = f.prod_exact;
    } else {
        // max(c, t^rho) = c * t^rho * max(1/c^(1/sigma), t)^sigma with sigma = -rho
        double sigma = -rho;
        double logC = std::log(f.C);
        for (auto& fa : f.factors) {
            logC += fa.e * std::log(fa.c);
            g.r += rho * fa.e;
            MMFactor nf;
            nf.c = std::pow(fa.c, -1.0 / sigma);
            nf.e = fa.e * sigma;
            if (fa.c_exact && *fa.c_exact == 1) {
                nf.c = 1.0;
                nf.c_exact = Rat(1);
            }
            g.factors.push_back(nf);
        }
        g.C = std::exp(logC);
        // constants swap roles: the t->0 constant becomes the leading one
        g.C_exact = f.prod_exact;
        g.prod_exact = f.C_exact;
        if (g.C_exact) g.C = rat_to_double(*g.C_exact);
    }
    mm_canonicalize(g);
    return g;
}

inline DegreeReport mm_degree(const MaxMonomialFn& f) {
    DegreeReport d;
    if (f.zero) {
        d.is_zero_fn = true;
        d.deg0 = d.deg_inf = d.deg = -std::numeric_limits<double>::infinity();
        return d;
    }
    double sum_e = 0;
    for (auto& fa : f.factors) sum_e += fa.e;
    d.deg0 = f.r;
    d.deg_inf = f.r + sum_e;
    d.deg = sum_e;
    d.exact = true;
    return d;
}

// Equality of the canonical data after dropping the monomial shift t^r.
inline bool mm_equivalent(const MaxMonomialFn& a, const MaxMonomialFn& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    if (a.C != b.C) return false;
    if (a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (a.factors[i].c != b.factors[i].c || a.factors[i].e != b.factors[i].e) return false;
    return true;
}

inline bool mm_is_monic(const MaxMonomialFn& f) {
    if (f.zero) return false;
    if (f.C_exact && f.prod_exact) return *f.C_exact == 1 && *f.prod_exact == 1;
    double prod = std::log(f.C);
    for (auto& fa : f.factors) prod += fa.e * std::log(fa.c);
    return std::fabs(f.C - 1.0) <= 1e-9 && std::fabs(prod) <= 1e-9;
}

// k with f(1/t) = t^k f(t), when the breakpoint multiset is inversion
// symmetric; the representative-dependent part of k is even, so k mod 2 is
// the invariant callers should consume.
inline std::optional<double> mm_symmetry_exponent(const MaxMonomialFn& f) {
    if (f.zero) return std::nullopt;
    const auto& fs = f.factors; // canonical, sorted by c
    std::size_t i = 0, j = fs.size();
    while (i < j) {
        if (j - i == 1) { // middle factor must be self-inverse
            if (std::fabs(std::log(fs[i].c)) > detail::kBreakpointLogTol) return std::nullopt;
            ++i;
            break;
        }
        const MMFactor& lo = fs[i];
        const MMFactor& hi_f = fs[j - 1];
        if (std::fabs(std::log(lo.c) + std::log(hi_f.c)) > detail::kBreakpointLogTol)
            return std::nullopt;
        if (lo.e != hi_f.e) return std::nullopt;
        ++i;
        --j;
    }
    double sum_e = 0;
    for (auto& fa : fs) sum_e += fa.e;
    return -2.0 * f.r - sum_e;
}

// ---- sampled representation ----

struct SampledFn {
    struct Row {
        double t = 0, value = 0, err = 0;
    };
    std::vector<Row> rows;
};

inline std::vector<double> log_grid(double tmin, double tmax, int n) {
    if (!(tmin > 0) || !(tmax > tmin) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < tmin < tmax and n >= 2");
    std::vector<double> g(n);
    double la = std::log(tmin), lb = std::log(tmax);
    for (int i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * i / (n - 1));
    return g;
}

inline SampledFn mm_sample(const MaxMonomialFn& f, double tmin, double tmax, int n) {
    SampledFn s;
    for (double t : log_grid(tmin, tmax, n)) s.rows.push_back({t, mm_eval(f, t), 0.0});
    return s;
}

// Least-squares slope of ln v against ln t over the first and last quartiles.
inline DegreeReport sampled_degree(const SampledFn& s) {
    const std::size_t n = s.rows.size();
    if (n < 8) throw std::invalid_argument("sampled_degree: need at least 8 samples");
    bool all_zero = std::all_of(s.rows.begin(), s.rows.end(),
                                [](const SampledFn::Row& r) { return r.value == 0; });
    DegreeReport d;
    if (all_zero) {
        d.is_zero_fn = true;
        d.exact = false;
        d.deg0 = d.deg_inf = d.deg = -std::numeric_limits<double>::infinity();
        return d;
    }
    auto slope = [&](std::size_t lo, std::size_t hi, double& stderr_out) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = hi - lo;
        for (std::size_t i = lo; i < hi; ++i) {
            if (!(s.rows[i].value > 0))
                throw std::domain_error("sampled_degree: nonpositive sample in window");
            double x = std::log(s.rows[i].t), y = std::log(s.rows[i].value);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        double denom = sxx - sx * sx / m;
        double b = (sxy - sx * sy / m) / denom;
        double ss = 0;
        double a = (sy - b * sx) / m;
        for (std::size_t i = lo; i < hi; ++i) {
            double x = std::log(s.rows[i].t), y = std::log(s.rows[i].value);
            double rsd = y - (a + b * x);
            ss += rsd * rsd;
        }
        stderr_out = m > 2 ? std::sqrt(ss / (double)(m - 2) / denom) : 0.0;
        return b;
    };
    std::size_t q = n / 4;
    d.deg0 = slope(0, q, d.stderr0);
    d.deg_inf = slope(n - q, n, d.stderr_inf);
    d.deg = d.deg_inf - d.deg0;
    d.exact = false;
    return d;
}

// Torsion built from one-variable root data: the measure of
// det(kappa(psi_1, t)) as a function of t, i.e. the s = psi_1 reparametrized
// base function |c_d| * u^m * prod max(u, |a_i|)^mult at u = t^s.
inline MaxMonomialFn mm_from_root_data(const RootData& rd, double s) {
    MaxMonomialFn base;
    base.C = rat_to_double(rd.lead_abs);
    base.C_exact = rd.lead_abs;
    base.r = (double)rd.monomial_exp;
    for (auto& cl : rd.clusters) {
        MMFactor fa;
        fa.c = cl.modulus;
        fa.e = (double)cl.mult;
        if (cl.snapped_one) fa.c_exact = Rat(1);
        base.factors.push_back(fa);
    }
    base.prod_exact = rd.lead_abs * rd.trail_over_lead_abs; // = |c_0|
    mm_canonicalize(base);
    if (s == 1.0) return base;
    return mm_reparam_power(base, s);
}

} // namespace l2alex
