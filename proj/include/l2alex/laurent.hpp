#pragma once

// Multivariable Laurent polynomials over exact rationals (or doubles for
// t-scaled images), matrices of them, and the fraction-free determinant.

#include <l2alex/groupring.hpp>

#include <cctype>
#include <cstdlib>
#include <functional>
#include <optional>

namespace l2alex {

using Expo = std::vector<std::int64_t>;

// Exponent guard: keeps runaway symbolic blowup from looking like hangs.
constexpr std::int64_t kMaxExponent = 1000000;

template <class C>
struct LPoly {
    int nvars = 0;
    std::map<Expo, C> terms; // zero coefficients never stored

    LPoly() = default;
    explicit LPoly(int nv) : nvars(nv) {}

    bool is_zero() const { return terms.empty(); }

    void add_term(const Expo& e, const C& c) {
        if (c == C(0)) return;
        if ((int)e.size() != nvars) throw std::invalid_argument("LPoly: exponent arity mismatch");
        for (auto x : e)
            if (x > kMaxExponent || x < -kMaxExponent)
                throw std::overflow_error("LPoly: exponent exceeds 10^6 guard");
        auto [it, fresh] = terms.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == C(0)) terms.erase(it);
        }
    }

    bool operator==(const LPoly& o) const { return nvars == o.nvars && terms == o.terms; }
};

using QPoly = LPoly<Rat>;
using DPoly = LPoly<double>;

template <class C>
LPoly<C> lp_const(int nvars, const C& c) {
    LPoly<C> p(nvars);
    p.add_term(Expo(nvars, 0), c);
    return p;
}

template <class C>
LPoly<C> lp_monomial(int nvars, const Expo& e, const C& c) {
    LPoly<C> p(nvars);
    p.add_term(e, c);
    return p;
}

template <class C>
LPoly<C> lp_add(const LPoly<C>& a, const LPoly<C>& b) {
    LPoly<C> r = a;
    for (auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

template <class C>
LPoly<C> lp_sub(const LPoly<C>& a, const LPoly<C>& b) {
    LPoly<C> r = a;
    for (auto& [e, c] : b.terms) r.add_term(e, C(0) - c);
    return r;
}

template <class C>
LPoly<C> lp_neg(const LPoly<C>& a) {
    LPoly<C> r(a.nvars);
    for (auto& [e, c] : a.terms) r.terms.emplace(e, C(0) - c);
    return r;
}

template <class C>
LPoly<C> lp_scale(const LPoly<C>& a, const C& s) {
    LPoly<C> r(a.nvars);
    if (s == C(0)) return r;
    for (auto& [e, c] : a.terms) r.add_term(e, c * s);
    return r;
}

template <class C>
LPoly<C> lp_mul(const LPoly<C>& a, const LPoly<C>& b) {
    if (a.nvars != b.nvars) throw std::invalid_argument("lp_mul: arity mismatch");
    LPoly<C> r(a.nvars);
    Expo e(a.nvars);
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

template <class C>
LPoly<C> lp_pow(const LPoly<C>& a, std::int64_t n) {
    if (n < 0) throw std::invalid_argument("lp_pow: negative power");
    LPoly<C> acc = lp_const(a.nvars, C(1));
    LPoly<C> base = a;
    while (n) {
        if (n & 1) acc = lp_mul(acc, base);
        base = lp_mul(base, base);
        n >>= 1;
    }
    return acc;
}

// Shift all exponents by -shift (divide by the monomial z^shift).
template <class C>
LPoly<C> lp_shift(const LPoly<C>& a, const Expo& shift) {
    LPoly<C> r(a.nvars);
    Expo e(a.nvars);
    for (auto& [ea, c] : a.terms) {
        for (int i = 0; i < a.nvars; ++i) e[i] = ea[i] - shift[i];
        r.add_term(e, c);
    }
    return r;
}

// Pushes a group-ring element through h: words become monomials z^h(w).
inline QPoly abelianize(const GroupRingElem& x, const HomToZk& h) {
    QPoly p(h.rank);
    for (auto& [w, c] : x.terms) p.add_term(h.of_word(w), c);
    return p;
}

// kappa twist at scale t in the direction psi: c*z^a -> c*t^(psi.a)*z^a.
inline DPoly kappa_scale(const QPoly& p, const std::vector<double>& psi, double t) {
    if ((int)psi.size() != p.nvars) throw std::invalid_argument("kappa_scale: psi arity mismatch");
    if (!(t > 0)) throw std::invalid_argument("kappa_scale: t must be positive");
    DPoly r(p.nvars);
    for (auto& [e, c] : p.terms) {
        double dot = 0;
        for (int i = 0; i < p.nvars; ++i) dot += psi[i] * (double)e[i];
        r.add_term(e, rat_to_double(c) * std::pow(t, dot));
    }
    return r;
}

// Directional width of the Newton polytope: max psi.(a - b) over the support.
inline double newton_width(const QPoly& p, const std::vector<double>& psi) {
    if ((int)psi.size() != p.nvars) throw std::invalid_argument("newton_width: psi arity mismatch");
    if (p.is_zero()) return 0.0;
    double lo = 0, hi = 0;
    bool first = true;
    for (auto& [e, c] : p.terms) {
        double dot = 0;
        for (int i = 0; i < p.nvars; ++i) dot += psi[i] * (double)e[i];
        if (first) {
            lo = hi = dot;
            first = false;
        } else {
            lo = std::min(lo, dot);
            hi = std::max(hi, dot);
        }
    }
    return hi - lo;
}

inline std::pair<double, double> newton_range(const QPoly& p, const std::vector<double>& psi) {
    double lo = 0, hi = 0;
    bool first = true;
    for (auto& [e, c] : p.terms) {
        double dot = 0;
        for (int i = 0; i < p.nvars; ++i) dot += psi[i] * (double)e[i];
        if (first) { lo = hi = dot; first = false; }
        else { lo = std::min(lo, dot); hi = std::max(hi, dot); }
    }
    return {lo, hi};
}

template <class C>
struct LMat {
    int rows = 0, cols = 0, nvars = 0;
    std::vector<LPoly<C>> a;

    LMat() = default;
    LMat(int r, int c, int nv) : rows(r), cols(c), nvars(nv), a((std::size_t)r * c, LPoly<C>(nv)) {}

    LPoly<C>& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
    const LPoly<C>& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }
};

using QMat = LMat<Rat>;

inline QMat abelianize(const GroupRingMatrix& A, const HomToZk& h) {
    QMat M(A.rows, A.cols, h.rank);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) M.at(i, j) = abelianize(A.at(i, j), h);
    return M;
}

inline QMat submatrix_delete_col(const QMat& M, int col) {
    QMat R(M.rows, M.cols - 1, M.nvars);
    for (int i = 0; i < M.rows; ++i) {
        int jj = 0;
        for (int j = 0; j < M.cols; ++j) {
            if (j == col) continue;
            R.at(i, jj++) = M.at(i, j);
        }
    }
    return R;
}

namespace detail {

// lex order on exponent vectors; any monomial total order works for the
// exact divisions below because leading terms are multiplicative.
inline bool expo_less(const Expo& a, const Expo& b) { return a < b; }

inline const std::pair<const Expo, Rat>* leading(const QPoly& p) {
    return p.terms.empty() ? nullptr : &*p.terms.rbegin();
}

// Exact division a / b; Bareiss guarantees divisibility, anything else is a bug.
inline QPoly lp_divide_exact(QPoly a, const QPoly& b) {
    if (b.is_zero()) throw std::logic_error("lp_divide_exact: division by zero");
    QPoly q(a.nvars);
    const auto* lb = leading(b);
    Expo e(a.nvars);
    while (!a.is_zero()) {
        const auto* la = leading(a);
        for (int i = 0; i < a.nvars; ++i) e[i] = la->first[i] - lb->first[i];
        Rat c = la->second / lb->second;
        q.add_term(e, c);
        // a -= (c z^e) * b
        Expo f(a.nvars);
        for (auto& [eb, cb] : b.terms) {
            for (int i = 0; i < a.nvars; ++i) f[i] = eb[i] + e[i];
            a.add_term(f, -c * cb);
        }
    }
    return q;
}

} // namespace detail

// Exact determinant by fraction-free (Bareiss) elimination. Monomial content
// is pulled out of rows and columns first so exponents stay small; the
// accumulated monomial multiplies the result back.
inline QPoly lp_det(const QMat& M) {
    if (M.rows != M.cols) throw std::invalid_argument("lp_det: square matrix required");
    const int n = M.rows;
    if (n == 0) return lp_const(M.nvars, Rat(1));

    std::vector<QPoly> w(M.a);
    Expo unit(M.nvars, 0);

    auto extract_content = [&](bool by_rows) {
        for (int r = 0; r < n; ++r) {
            Expo mn;
            bool any = false;
            for (int c = 0; c < n; ++c) {
                const QPoly& p = by_rows ? w[(std::size_t)r * n + c] : w[(std::size_t)c * n + r];
                for (auto& [e, coef] : p.terms) {
                    if (!any) { mn = e; any = true; }
                    else
                        for (int i = 0; i < M.nvars; ++i) mn[i] = std::min(mn[i], e[i]);
                }
            }
            if (!any) continue; // zero row/column; elimination reports 0
            bool nontrivial = std::any_of(mn.begin(), mn.end(), [](std::int64_t x) { return x != 0; });
            if (!nontrivial) continue;
            for (int c = 0; c < n; ++c) {
                QPoly& p = by_rows ? w[(std::size_t)r * n + c] : w[(std::size_t)c * n + r];
                p = lp_shift(p, mn);
            }
            for (int i = 0; i < M.nvars; ++i) unit[i] += mn[i];
        }
    };
    extract_content(true);
    extract_content(false);

    int sign = 1;
    QPoly prev = lp_const(M.nvars, Rat(1));
    for (int k = 0; k < n - 1; ++k) {
        int piv = -1;
        for (int r = k; r < n; ++r)
            if (!w[(std::size_t)r * n + k].is_zero()) { piv = r; break; }
        if (piv < 0) return QPoly(M.nvars); // symbolically zero
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(w[(std::size_t)k * n + c], w[(std::size_t)piv * n + c]);
            sign = -sign;
        }
        const QPoly pkk = w[(std::size_t)k * n + k];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                QPoly num = lp_sub(lp_mul(pkk, w[(std::size_t)i * n + j]),
                                   lp_mul(w[(std::size_t)i * n + k], w[(std::size_t)k * n + j]));
                w[(std::size_t)i * n + j] =
                    num.is_zero() ? QPoly(M.nvars) : detail::lp_divide_exact(std::move(num), prev);
            }
            w[(std::size_t)i * n + k] = QPoly(M.nvars);
        }
        prev = pkk;
    }

    QPoly det = w[(std::size_t)(n - 1) * n + (n - 1)];
    if (det.is_zero()) return det;
    if (sign < 0) det = lp_neg(det);
    bool shift_back = std::any_of(unit.begin(), unit.end(), [](std::int64_t x) { return x != 0; });
    if (shift_back) {
        Expo neg(M.nvars);
        for (int i = 0; i < M.nvars; ++i) neg[i] = -unit[i];
        det = lp_shift(det, neg);
    }
    return det;
}

// Substitute an exact rational value for one variable (arity drops by one).
inline QPoly lp_eval_var(const QPoly& p, int var, const Rat& value) {
    if (var < 0 || var >= p.nvars) throw std::invalid_argument("lp_eval_var: bad variable index");
    if (value == 0) throw std::invalid_argument("lp_eval_var: Laurent substitution needs value != 0");
    QPoly r(p.nvars - 1);
    Expo e(p.nvars - 1);
    for (auto& [ep, c] : p.terms) {
        int k = 0;
        for (int i = 0; i < p.nvars; ++i)
            if (i != var) e[k++] = ep[i];
        r.add_term(e, c * rat_pow(value, ep[var]));
    }
    return r;
}

// ---- text format: "3*x^2*y^-1 - 2 + x", names resolved via a fixed table ----

struct PolyText {
    QPoly poly;
    std::vector<std::string> vars; // index order used by the exponent vectors
};

inline PolyText parse_poly(const std::string& text,
                           std::optional<std::vector<std::string>> fixed_vars = std::nullopt) {
    // collect variable names first so exponent arity is known up front
    std::vector<std::string> vars;
    std::map<std::string, int> index;
    auto intern = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        if (fixed_vars) throw ParseError("unknown variable '" + name + "'");
        index.emplace(name, (int)vars.size());
        vars.push_back(name);
        return (int)vars.size() - 1;
    };

    struct Tok { char kind; std::string text; }; // kind: n(umber) v(ar) or operator char
    std::vector<Tok> toks;
    std::size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (std::isspace((unsigned char)ch)) { ++i; continue; }
        if (std::isdigit((unsigned char)ch)) {
            std::string num;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) num += text[i++];
            toks.push_back({'n', num});
        } else if (std::isalpha((unsigned char)ch) || ch == '_') {
            std::string name;
            while (i < text.size() &&
                   (std::isalnum((unsigned char)text[i]) || text[i] == '_'))
                name += text[i++];
            toks.push_back({'v', name});
        } else if (ch == '+' || ch == '-' || ch == '*' || ch == '^' || ch == '/') {
            toks.push_back({ch, std::string(1, ch)});
            ++i;
        } else {
            throw ParseError(std::string("unexpected character '") + ch + "' in polynomial");
        }
    }

    if (fixed_vars) {
        vars = *fixed_vars;
        for (int k = 0; k < (int)vars.size(); ++k) index.emplace(vars[k], k);
    } else {
        // first pass just to discover names in order of appearance, then sort
        for (auto& t : toks)
            if (t.kind == 'v' && t.text != "t" && !index.count(t.text)) {
                index.emplace(t.text, 0);
                vars.push_back(t.text);
            }
        std::sort(vars.begin(), vars.end());
        index.clear();
        for (int k = 0; k < (int)vars.size(); ++k) index.emplace(vars[k], k);
    }

    QPoly p((int)vars.size());
    std::size_t pos = 0;
    auto peek = [&]() -> int { return pos < toks.size() ? toks[pos].kind : 0; };

    auto parse_int_tok = [&](const std::string& role) -> Int {
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos; }
        else if (peek() == '+') ++pos;
        if (peek() != 'n') throw ParseError("expected integer " + role);
        Int v(toks[pos++].text);
        return neg ? Int(-v) : v;
    };

    bool first_term = true;
    while (pos < toks.size()) {
        int sign = 1;
        if (peek() == '+') { ++pos; }
        else if (peek() == '-') { sign = -1; ++pos; }
        else if (!first_term) throw ParseError("expected '+' or '-' between terms");
        first_term = false;

        Rat coef(sign);
        bool saw_factor = false;
        Expo e((int)vars.size(), 0);
        bool expect_factor = true;
        while (expect_factor) {
            if (peek() == 'n') {
                Int num(toks[pos++].text);
                if (peek() == '/') {
                    ++pos;
                    Int den = parse_int_tok("denominator");
                    if (den == 0) throw ParseError("zero denominator");
                    coef *= Rat(num, den);
                } else {
                    coef *= Rat(num);
                }
                saw_factor = true;
            } else if (peek() == 'v') {
                std::string name = toks[pos++].text;
                if (name == "t") throw ParseError("'t' is reserved for the torsion parameter");
                int vi = intern(name);
                std::int64_t ex = 1;
                if (peek() == '^') {
                    ++pos;
                    Int v = parse_int_tok("exponent");
                    ex = v.convert_to<std::int64_t>();
                }
                e[vi] += ex;
                saw_factor = true;
            } else {
                throw ParseError("expected a factor in polynomial term");
            }
            if (peek() == '*') { ++pos; continue; }
            expect_factor = false;
        }
        if (!saw_factor) throw ParseError("empty polynomial term");
        if ((int)e.size() != p.nvars) e.resize(p.nvars, 0); // new var interned mid-parse
        p.nvars = (int)vars.size();
        for (auto& [ee, cc] : p.terms)
            if ((int)ee.size() != p.nvars) throw ParseError("inconsistent variable set");
        p.add_term(e, coef);
    }
    return {p, vars};
}

inline std::string format_poly(const QPoly& p, const std::vector<std::string>& vars) {
    if (p.is_zero()) return "0";
    std::string out;
    // highest lex term first reads like handwritten polynomials
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const Expo& e = it->first;
        Rat c = it->second;
        bool neg = c < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        Rat ac = rat_abs(c);
        bool has_var = std::any_of(e.begin(), e.end(), [](std::int64_t x) { return x != 0; });
        bool coef_shown = (ac != 1) || !has_var;
        if (coef_shown) out += format_rat(ac);
        if (has_var) {
            bool first = !coef_shown;
            for (int i = 0; i < p.nvars; ++i) {
                if (e[i] == 0) continue;
                if (!first) out += "*";
                first = false;
                out += vars.at(i);
                if (e[i] != 1) out += "^" + std::to_string(e[i]);
            }
        }
    }
    return out;
}

// Normal form for reporting: trailing exponents shifted to zero in each
// variable and the lex-leading coefficient made positive.
inline QPoly lp_normalize_unit(const QPoly& p) {
    if (p.is_zero()) return p;
    Expo mn = p.terms.begin()->first;
    for (auto& [e, c] : p.terms)
        for (int i = 0; i < p.nvars; ++i) mn[i] = std::min(mn[i], e[i]);
    QPoly q = lp_shift(p, mn);
    if (q.terms.rbegin()->second < 0) q = lp_neg(q);
    return q;
}

} // namespace l2alex
