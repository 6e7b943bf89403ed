#pragma once

// Free-group words, rational group-ring elements and matrices, and the
// submultiplicative l1 growth-rate bound used by fibering certificates.

#include <l2alex/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

namespace l2alex {

// Freely reduced word in generators 0..n-1, run-length encoded as
// (generator, nonzero exponent) syllables with distinct adjacent generators.
struct Word {
    std::vector<std::pair<int, std::int64_t>> syl;

    bool operator==(const Word& o) const { return syl == o.syl; }
    bool operator<(const Word& o) const { return syl < o.syl; }
    bool is_identity() const { return syl.empty(); }

    std::int64_t length() const {
        std::int64_t n = 0;
        for (auto& [g, e] : syl) n += e < 0 ? -e : e;
        return n;
    }

    void push_syllable(int g, std::int64_t e) {
        if (e == 0) return;
        if (!syl.empty() && syl.back().first == g) {
            syl.back().second += e;
            if (syl.back().second == 0) syl.pop_back();
        } else {
            syl.emplace_back(g, e);
        }
    }
};

inline Word word_one() { return {}; }

inline Word word_gen(int g, std::int64_t e = 1) {
    Word w;
    w.push_syllable(g, e);
    return w;
}

inline Word word_from_syllables(const std::vector<std::pair<int, std::int64_t>>& raw) {
    Word w;
    for (auto& [g, e] : raw) w.push_syllable(g, e);
    return w;
}

inline Word word_mul(const Word& a, const Word& b) {
    Word w = a;
    for (auto& [g, e] : b.syl) w.push_syllable(g, e);
    return w;
}

inline Word word_inv(const Word& a) {
    Word w;
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it)
        w.push_syllable(it->first, -it->second);
    return w;
}

inline Word word_pow(const Word& a, std::int64_t n) {
    Word acc;
    Word base = n >= 0 ? a : word_inv(a);
    std::int64_t m = n >= 0 ? n : -n;
    for (std::int64_t i = 0; i < m; ++i) acc = word_mul(acc, base);
    return acc;
}

// Parses "x y^-1 x^2" against a generator-name table.
inline Word parse_word(const std::string& text, const std::map<std::string, int>& names) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::string name = tok;
        std::int64_t e = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            std::string es = tok.substr(caret + 1);
            try {
                std::size_t pos = 0;
                e = std::stoll(es, &pos);
                if (pos != es.size()) throw std::invalid_argument(es);
            } catch (const std::exception&) {
                throw ParseError("bad exponent in word token '" + tok + "'");
            }
        }
        auto it = names.find(name);
        if (it == names.end()) throw ParseError("unknown generator '" + name + "'");
        w.push_syllable(it->second, e);
    }
    return w;
}

inline std::string format_word(const Word& w, const std::vector<std::string>& names) {
    if (w.syl.empty()) return "1";
    std::string s;
    for (auto& [g, e] : w.syl) {
        if (!s.empty()) s += ' ';
        s += names.at(g);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

// Finite formal sum of words with exact rational coefficients.
struct GroupRingElem {
    std::map<Word, Rat> terms;

    bool is_zero() const { return terms.empty(); }
    std::size_t term_count() const { return terms.size(); }

    void add_term(const Word& w, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms.emplace(w, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    Rat l1_norm() const {
        Rat s(0);
        for (auto& [w, c] : terms) s += rat_abs(c);
        return s;
    }

    bool operator==(const GroupRingElem& o) const { return terms == o.terms; }
};

inline GroupRingElem gr_zero() { return {}; }

inline GroupRingElem gr_of(const Word& w, const Rat& c = Rat(1)) {
    GroupRingElem r;
    r.add_term(w, c);
    return r;
}

inline GroupRingElem gr_one() { return gr_of(word_one()); }

inline GroupRingElem gr_neg(const GroupRingElem& a) {
    GroupRingElem r;
    for (auto& [w, c] : a.terms) r.terms.emplace(w, -c);
    return r;
}

inline GroupRingElem gr_add(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, c);
    return r;
}

inline GroupRingElem gr_sub(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem r = a;
    for (auto& [w, c] : b.terms) r.add_term(w, -c);
    return r;
}

inline GroupRingElem gr_scale(const GroupRingElem& a, const Rat& s) {
    GroupRingElem r;
    if (s == 0) return r;
    for (auto& [w, c] : a.terms) r.terms.emplace(w, c * s);
    return r;
}

inline GroupRingElem ring_mul(const GroupRingElem& a, const GroupRingElem& b) {
    GroupRingElem r;
    for (auto& [wa, ca] : a.terms)
        for (auto& [wb, cb] : b.terms) r.add_term(word_mul(wa, wb), ca * cb);
    return r;
}

// Left multiplication by a single word, cheaper than a full ring_mul.
inline GroupRingElem gr_word_mul(const Word& w, const GroupRingElem& a) {
    GroupRingElem r;
    for (auto& [wa, c] : a.terms) r.add_term(word_mul(w, wa), c);
    return r;
}

struct GroupRingMatrix {
    int rows = 0, cols = 0;
    std::vector<GroupRingElem> a; // row-major

    GroupRingMatrix() = default;
    GroupRingMatrix(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}

    GroupRingElem& at(int i, int j) { return a[(std::size_t)i * cols + j]; }
    const GroupRingElem& at(int i, int j) const { return a[(std::size_t)i * cols + j]; }

    std::size_t term_count() const {
        std::size_t n = 0;
        for (auto& e : a) n += e.term_count();
        return n;
    }
};

inline GroupRingMatrix gr_mat_mul(const GroupRingMatrix& A, const GroupRingMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("gr_mat_mul: shape mismatch");
    GroupRingMatrix C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            const GroupRingElem& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < B.cols; ++j) {
                const GroupRingElem& bkj = B.at(k, j);
                if (bkj.is_zero()) continue;
                for (auto& [wa, ca] : aik.terms)
                    for (auto& [wb, cb] : bkj.terms)
                        C.at(i, j).add_term(word_mul(wa, wb), ca * cb);
            }
        }
    return C;
}

// Operator-norm surrogate ||A||_1 = n * max_ij |a_ij|_1 for square A.
inline Rat gr_mat_norm1(const GroupRingMatrix& A) {
    if (A.rows != A.cols) throw std::invalid_argument("gr_mat_norm1: square matrix required");
    Rat mx(0);
    for (auto& e : A.a) {
        Rat n = e.l1_norm();
        if (n > mx) mx = n;
    }
    return Rat(A.rows) * mx;
}

struct GrowthReport {
    // bound[k-1] = upper bound for (||A^k||_1)^(1/k); materialized[k-1] marks
    // values taken from an actually computed power rather than a norm product.
    std::vector<double> bound;
    std::vector<double> running_min;
    std::vector<bool> materialized;
    double t_upper = 0.0;
};

// Upper bounds for the l1 growth rate h(A) = lim_k (||A^k||_1)^(1/k).
// Powers of two are materialized while the predicted term count stays within
// budget; every other exponent is filled with the submultiplicative product
// of materialized norms, so each entry still dominates h(A).
inline GrowthReport growth_rate_upper(const GroupRingMatrix& A, int k_max,
                                      std::size_t term_budget = 500000) {
    if (A.rows != A.cols) throw std::invalid_argument("growth_rate_upper: square matrix required");
    if (k_max < 1) throw std::invalid_argument("growth_rate_upper: k_max must be >= 1");
    GrowthReport rep;

    std::vector<std::pair<int, double>> pow_log; // (k = 2^j, log ||A^k||_1)
    {
        GroupRingMatrix cur = A;
        int k = 1;
        while (true) {
            Rat n = gr_mat_norm1(cur);
            if (n == 0) { // nilpotent-at-once: zero matrix
                rep.bound.assign(k_max, 0.0);
                rep.running_min.assign(k_max, 0.0);
                rep.materialized.assign(k_max, true);
                rep.t_upper = 0.0;
                return rep;
            }
            pow_log.emplace_back(k, rat_log(n));
            if (2LL * k > k_max) break;
            // predicted term count of cur^2 from per-entry counts
            const int m = cur.rows;
            std::vector<double> cnt((std::size_t)m * m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    cnt[(std::size_t)i * m + j] = (double)cur.at(i, j).term_count();
            double total = 0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    double s = 0;
                    for (int t = 0; t < m; ++t)
                        s += cnt[(std::size_t)i * m + t] * cnt[(std::size_t)t * m + j];
                    total += s;
                }
            if (total > (double)term_budget) break;
            cur = gr_mat_mul(cur, cur);
            k *= 2;
        }
    }

    rep.bound.resize(k_max);
    rep.materialized.assign(k_max, false);
    for (int k = 1; k <= k_max; ++k) {
        double logsum = 0;
        int rem = k;
        for (auto it = pow_log.rbegin(); it != pow_log.rend(); ++it)
            while (rem >= it->first) {
                rem -= it->first;
                logsum += it->second;
            }
        rep.bound[k - 1] = std::exp(logsum / k);
        for (auto& [pk, lg] : pow_log)
            if (pk == k) rep.materialized[k - 1] = true;
    }
    rep.running_min.resize(k_max);
    double mn = rep.bound[0];
    for (int k = 1; k <= k_max; ++k) {
        mn = std::min(mn, rep.bound[k - 1]);
        rep.running_min[k - 1] = mn;
    }
    rep.t_upper = mn;
    return rep;
}

// Homomorphism from a marked group to Z^k, given on free generators.
struct HomToZk {
    int rank = 0;
    std::vector<std::vector<std::int64_t>> images; // one vector per generator

    std::vector<std::int64_t> of_word(const Word& w) const {
        std::vector<std::int64_t> v(rank, 0);
        for (auto& [g, e] : w.syl) {
            const auto& img = images.at(g);
            for (int i = 0; i < rank; ++i) v[i] += e * img[i];
        }
        return v;
    }

    bool kills(const Word& w) const {
        auto v = of_word(w);
        return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
    }
};

// Relators must die in Z^k for the hom to descend to the presented group.
inline void check_hom(const HomToZk& h, const std::vector<Word>& relators) {
    for (std::size_t i = 0; i < relators.size(); ++i)
        if (!h.kills(relators[i]))
            throw ParseError("phi does not vanish on relator #" + std::to_string(i + 1));
}

} // namespace l2alex
