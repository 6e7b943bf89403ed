#pragma once

// Mahler measures: Jensen closed form in one variable, trapezoidal torus
// quadrature in several, and the abelian Fuglede-Kadison determinant built
// from an exact symbolic matrix determinant.

#include <l2alex/roots.hpp>

#include <atomic>
#include <thread>

namespace l2alex {

enum class MahlerMethod { exact, jensen, quadrature };

struct MahlerValue {
    double value = 0;
    double err = 0;
    MahlerMethod method = MahlerMethod::exact;
    bool low_confidence = false;
};

inline const char* mahler_method_name(MahlerMethod m) {
    switch (m) {
        case MahlerMethod::exact: return "exact";
        case MahlerMethod::jensen: return "jensen";
        case MahlerMethod::quadrature: return "quadrature";
    }
    return "?";
}

// m(p(t^s z)) from precomputed root data:
//   |c_d| * u^(m+d) * prod max(1, |a_i|/u) = |c_d| * u^m * prod max(u, |a_i|)
// with u = t^s. err propagates the root-modulus bound through the maxima.
inline MahlerValue mahler_jensen_scaled(const RootData& rd, double s, double t) {
    if (!(t > 0)) throw std::invalid_argument("mahler_jensen_scaled: t must be positive");
    double u = std::pow(t, s);
    double val = rat_to_double(rd.lead_abs) * std::pow(u, (double)rd.monomial_exp);
    double rel_err = 0;
    for (auto& cl : rd.clusters) {
        val *= std::pow(std::max(u, cl.modulus), (double)cl.mult);
        if (!cl.snapped_one && cl.modulus >= u && cl.modulus > 0)
            rel_err += (double)cl.mult * (rd.err / cl.modulus);
    }
    if (!std::isfinite(val)) {
        // product left double range; redo it in log space
        double lg = rat_log(rd.lead_abs) + (double)rd.monomial_exp * std::log(u);
        for (auto& cl : rd.clusters) lg += (double)cl.mult * std::log(std::max(u, cl.modulus));
        val = std::exp(lg);
    }
    MahlerValue v;
    v.value = val;
    v.err = v.value * rel_err;
    v.method = MahlerMethod::jensen;
    return v;
}

inline MahlerValue mahler_jensen(const QPoly& p, double root_tol = 1e-12) {
    if (p.is_zero()) return {0.0, 0.0, MahlerMethod::exact, false};
    RootData rd = one_var_roots(p, root_tol);
    return mahler_jensen_scaled(rd, 0.0, 1.0); // u = 1
}

namespace detail {

inline double coeff_to_double(const Rat& c) { return rat_to_double(c); }
inline double coeff_to_double(double c) { return c; }

} // namespace detail

// Trapezoidal rule on the k-torus with points_per_dim nodes per dimension.
// err compares against the nested half-resolution grid (even indices); grid
// points with |p| < 1e-300 are skipped, >0.1% skips flag low confidence.
template <class C>
MahlerValue mahler_quadrature(const LPoly<C>& p, int points_per_dim = 1024) {
    if (p.is_zero()) return {0.0, 0.0, MahlerMethod::exact, false};
    const int k = p.nvars;
    if (k == 0) {
        double c = detail::coeff_to_double(p.terms.begin()->second);
        return {std::fabs(c), 0.0, MahlerMethod::exact, false};
    }
    if (points_per_dim < 4) throw std::invalid_argument("mahler_quadrature: grid too small");
    if (points_per_dim & 1) ++points_per_dim; // nested half grid needs even N

    const std::size_t nterms = p.terms.size();
    std::vector<double> coeff(nterms);
    std::vector<std::int64_t> expo(nterms * (std::size_t)k);
    {
        std::size_t idx = 0;
        for (auto& [e, c] : p.terms) {
            coeff[idx] = detail::coeff_to_double(c);
            for (int i = 0; i < k; ++i) expo[idx * k + i] = e[i];
            ++idx;
        }
    }

    const std::int64_t N = points_per_dim;
    double total_d = std::pow((double)N, k);
    if (total_d > 1.2e9) throw std::invalid_argument("mahler_quadrature: grid exceeds desk scale");
    const std::size_t total = (std::size_t)total_d;
    const double step = 2.0 * 3.14159265358979323846 / (double)N;

    struct ChunkSum { double fine = 0, coarse = 0; std::size_t fine_n = 0, coarse_n = 0, skipped = 0; };
    const std::size_t chunk = 8192;
    std::size_t nchunks = (total + chunk - 1) / chunk;
    std::vector<ChunkSum> sums(nchunks);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<std::int64_t> digits(k);
        while (true) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) break;
            ChunkSum s;
            std::size_t lo = c * chunk, hi = std::min(total, lo + chunk);
            for (std::size_t flat = lo; flat < hi; ++flat) {
                std::size_t rem = flat;
                bool coarse_pt = true;
                for (int i = 0; i < k; ++i) {
                    digits[i] = (std::int64_t)(rem % (std::size_t)N);
                    rem /= (std::size_t)N;
                    coarse_pt = coarse_pt && (digits[i] % 2 == 0);
                }
                double re = 0, im = 0;
                for (std::size_t tix = 0; tix < nterms; ++tix) {
                    double ang = 0;
                    for (int i = 0; i < k; ++i)
                        ang += step * (double)digits[i] * (double)expo[tix * k + i];
                    re += coeff[tix] * std::cos(ang);
                    im += coeff[tix] * std::sin(ang);
                }
                double amod = std::sqrt(re * re + im * im);
                if (amod < 1e-300) {
                    ++s.skipped;
                    continue;
                }
                double lg = std::log(amod);
                s.fine += lg;
                ++s.fine_n;
                if (coarse_pt) {
                    s.coarse += lg;
                    ++s.coarse_n;
                }
            }
            sums[c] = s;
        }
    };
    unsigned nt = std::max(1u, std::min((unsigned)nchunks, std::thread::hardware_concurrency()));
    if (nt <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < nt; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    while (sums.size() > 1) {
        std::vector<ChunkSum> merged((sums.size() + 1) / 2);
        for (std::size_t q = 0; q + 1 < sums.size(); q += 2) {
            merged[q / 2].fine = sums[q].fine + sums[q + 1].fine;
            merged[q / 2].coarse = sums[q].coarse + sums[q + 1].coarse;
            merged[q / 2].fine_n = sums[q].fine_n + sums[q + 1].fine_n;
            merged[q / 2].coarse_n = sums[q].coarse_n + sums[q + 1].coarse_n;
            merged[q / 2].skipped = sums[q].skipped + sums[q + 1].skipped;
        }
        if (sums.size() & 1) merged.back() = sums.back();
        sums = std::move(merged);
    }
    const ChunkSum& s = sums[0];

    MahlerValue v;
    v.method = MahlerMethod::quadrature;
    double fine_mean = s.fine_n ? s.fine / (double)s.fine_n : 0.0;
    double coarse_mean = s.coarse_n ? s.coarse / (double)s.coarse_n : fine_mean;
    v.value = std::exp(fine_mean);
    v.err = std::fabs(v.value - std::exp(coarse_mean)) + 1e-15 * std::fabs(v.value);
    double skipped_frac = total ? (double)s.skipped / (double)total : 0.0;
    v.low_confidence = skipped_frac > 0.001;
    return v;
}

struct FkConfig {
    int quad_points = 1024;   // per dimension
    double root_tol = 1e-12;
};

// det_N(kappa(psi,t)(M)) for the free-abelian coefficient system: the exact
// symbolic determinant is computed once, then measured. kappa commutes with
// det (it is a ring homomorphism), so in one variable the unscaled roots give
// the scaled measure in closed form.
inline MahlerValue fk_det_abelian(const QMat& M, const std::vector<double>& psi, double t,
                                  const FkConfig& cfg = {}) {
    QPoly D = lp_det(M);
    if (D.is_zero()) return {0.0, 0.0, MahlerMethod::exact, false};
    if ((int)psi.size() != M.nvars) throw std::invalid_argument("fk_det_abelian: psi arity mismatch");
    if (M.nvars == 1) {
        RootData rd = one_var_roots(D, cfg.root_tol);
        return mahler_jensen_scaled(rd, psi[0], t);
    }
    bool scaled = t != 1.0 && std::any_of(psi.begin(), psi.end(), [](double x) { return x != 0; });
    if (!scaled && M.nvars == 0) {
        double c = rat_to_double(D.terms.begin()->second);
        return {std::fabs(c), 0.0, MahlerMethod::exact, false};
    }
    DPoly Dt = kappa_scale(D, psi, t);
    return mahler_quadrature(Dt, cfg.quad_points);
}

// Restriction-of-scalars matrix of multiplication by p under Z <- dZ:
// basis 1, z, ..., z^(d-1) over w = z^d; rows are output cosets, columns
// input cosets, so p = z, d = 2 yields [[0, w],[1, 0]].
inline QMat induce_index_d(const QPoly& p, int d) {
    if (p.nvars != 1) throw std::invalid_argument("induce_index_d: one-variable input required");
    if (d < 1) throw std::invalid_argument("induce_index_d: index must be >= 1");
    QMat M(d, d, 1);
    for (auto& [e, c] : p.terms) {
        std::int64_t a = e[0];
        for (int j = 0; j < d; ++j) {
            std::int64_t s = a + j;
            std::int64_t q = s >= 0 ? s / d : -(((-s) + d - 1) / d);
            int r = (int)(s - q * (std::int64_t)d);
            M.at(r, j).add_term(Expo{q}, c);
        }
    }
    return M;
}

} // namespace l2alex
